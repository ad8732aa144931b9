#include "exemplar/server.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

#include <httplib.h>
#include <json.hpp>

#include "exemplar/error.hpp"

namespace exemplar {

using json = nlohmann::ordered_json;

namespace {

struct ApiSession {
  std::mutex mutex;
  Session session;
  std::chrono::system_clock::time_point created;
  explicit ApiSession(Session s) : session(std::move(s)), created(std::chrono::system_clock::now()) {}
};

int statusFor(Errc code) {
  switch (code) {
    case Errc::NoSuchSession:
    case Errc::FileNotFound: return 404;
    case Errc::SessionBusy:
    case Errc::DuplicateLibrary:
    case Errc::DuplicateCustom:
    case Errc::AlreadyDefined:
    case Errc::WouldBeAmbiguous:
    case Errc::ProofAlreadyComplete: return 409;
    case Errc::IoError:
    case Errc::BindError:
    case Errc::JustificationInvalid: return 500;
    default: return 422;
  }
}

json errorBody(const Error& e) {
  json j;
  j["error"] = std::string(errcName(e.code()));
  j["message"] = e.what();
  if (e.code() == Errc::NotUnderstood) {
    j["sentence"] = e.details().empty() ? "" : e.details()[0];
    j["diagnostic"] = e.details().size() > 1 ? e.details()[1] : e.what();
  }
  if (!e.details().empty()) j["details"] = e.details();
  return j;
}

json stateJson(const Session& s) {
  const SessionView v = s.view();
  json goals = json::array();
  for (const GoalView& g : v.goals)
    goals.push_back({{"assumptions", g.assumptions}, {"conclusion", g.conclusion}, {"focused", g.focused}});
  return {{"goals", goals}, {"closed", v.closed}, {"active", v.active}, {"transcript", v.transcript}};
}

json parseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) fail(Errc::FormatError, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    fail(Errc::FormatError, std::string("invalid JSON body: ") + e.what());
  }
}

std::string field(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string())
    fail(Errc::FormatError, std::string("missing string field '") + key + "'");
  return body[key].get<std::string>();
}

json reportJson(const LoadReport& r) {
  json skipped = json::array();
  for (const SkippedEntry& s : r.skipped)
    skipped.push_back({{"library", s.library}, {"item", s.item}, {"error", s.code}, {"message", s.reason}});
  return {{"loaded", r.loaded}, {"rulesAdded", r.rulesAdded}, {"skipped", skipped}};
}

}  // namespace

struct Server::Impl {
  httplib::Server http;
  mutable std::shared_mutex mapMutex;
  std::map<std::string, std::shared_ptr<ApiSession>> sessions;
  std::mutex libMutex;
  LibraryStore libraries;
  std::mt19937_64 rng{std::random_device{}()};

  std::string newId() {
    static const char* hex = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 16; ++i) id += hex[rng() % 16];
    return id;
  }

  std::shared_ptr<ApiSession> find(const std::string& id) const {
    std::shared_lock lock(mapMutex);
    auto it = sessions.find(id);
    if (it == sessions.end()) fail(Errc::NoSuchSession, "no session '" + id + "'");
    return it->second;
  }

  using Handler = std::function<json(const httplib::Request&, const json&)>;

  void route(const std::string& method, const std::string& pattern, Handler h) {
    auto wrapped = [h](const httplib::Request& req, httplib::Response& res) {
      try {
        const json body = parseBody(req);
        res.set_content(h(req, body).dump(), "application/json");
      } catch (const Error& e) {
        res.status = statusFor(e.code());
        res.set_content(errorBody(e).dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 500;
        res.set_content(json{{"error", "internal"}, {"message", e.what()}}.dump(), "application/json");
      }
    };
    if (method == "GET") http.Get(pattern, wrapped);
    else if (method == "POST") http.Post(pattern, wrapped);
    else http.Delete(pattern, wrapped);
  }

  // Runs `f` on the session with its lock held.
  template <class F>
  json withSession(const httplib::Request& req, F f) {
    auto entry = find(req.path_params.at("id"));
    std::lock_guard lock(entry->mutex);
    return f(entry->session);
  }

  json registerLibrary(Library lib) {
    std::lock_guard lock(libMutex);
    const Library& stored = libraries.registerLibrary(std::move(lib));
    return {{"name", stored.name}, {"customs", stored.customs.size()}, {"entries", stored.entries.size()}};
  }

  void install() {
    route("POST", "/sessions", [this](const httplib::Request&, const json& body) {
      std::vector<Library> libs;
      if (body.contains("libraries")) {
        if (!body["libraries"].is_array()) fail(Errc::FormatError, "'libraries' must be an array of names");
        std::lock_guard lock(libMutex);
        for (const json& n : body["libraries"]) {
          if (!n.is_string()) fail(Errc::FormatError, "'libraries' must be an array of names");
          libs.push_back(libraries.get(n.get<std::string>()));
        }
      }
      auto entry = std::make_shared<ApiSession>(Session::standard());
      const LoadReport report = loadLibraries(entry->session, libs);
      std::unique_lock lock(mapMutex);
      std::string id = newId();
      while (sessions.count(id)) id = newId();
      sessions.emplace(id, entry);
      return json{{"id", id}, {"libraries", reportJson(report)}};
    });
    route("DELETE", "/sessions/:id", [this](const httplib::Request& req, const json&) {
      std::unique_lock lock(mapMutex);
      if (!sessions.erase(req.path_params.at("id")))
        fail(Errc::NoSuchSession, "no session '" + req.path_params.at("id") + "'");
      return json{{"ok", true}};
    });
    route("POST", "/sessions/:id/start", [this](const httplib::Request& req, const json& body) {
      const std::string goal = field(body, "goal");
      return withSession(req, [&](Session& s) {
        s.startProof(goal);
        return stateJson(s);
      });
    });
    route("POST", "/sessions/:id/step", [this](const httplib::Request& req, const json& body) {
      const std::string sentence = field(body, "sentence");
      const std::string mode = body.contains("mode") ? field(body, "mode") : "nltac";
      if (mode != "nltac" && mode != "nlexplain") fail(Errc::FormatError, "mode must be 'nltac' or 'nlexplain'");
      return withSession(req, [&](Session& s) {
        json out;
        if (mode == "nlexplain") {
          const Explained e = s.nlexplain(sentence);
          out = stateJson(s);
          out["fragment"] = e.fragment;
          out["goal"] = e.goal;
        } else {
          const std::size_t before = s.transcript().size();
          s.nltac(sentence);
          out = stateJson(s);
          std::string fragment;
          for (std::size_t i = before; i < s.transcript().size(); ++i)
            fragment += (fragment.empty() ? "" : std::string(kScriptJoin)) + s.transcript()[i];
          out["fragment"] = fragment;
        }
        out["ok"] = true;
        return out;
      });
    });
    route("POST", "/sessions/:id/undo", [this](const httplib::Request& req, const json&) {
      return withSession(req, [&](Session& s) {
        s.undo();
        return stateJson(s);
      });
    });
    route("POST", "/sessions/:id/def", [this](const httplib::Request& req, const json& body) {
      const std::string utterance = field(body, "utterance");
      const std::string definition = field(body, "definition");
      return withSession(req, [&](Session& s) {
        const DefResult r = s.define(utterance, definition);
        json rules = json::array();
        if (r.literalRule) rules.push_back(r.literalRule->str());
        if (r.generalizedRule) rules.push_back(r.generalizedRule->str());
        return json{{"rulesAdded", r.rulesAdded()}, {"rules", rules}};
      });
    });
    route("POST", "/sessions/:id/custom", [this](const httplib::Request& req, const json& body) {
      const std::string name = field(body, "name");
      const auto kind = customKindByName(field(body, "kind"));
      if (!kind) fail(Errc::FormatError, "kind must be tactic, thm_tactic or thmlist_tactic");
      return withSession(req, [&](Session& s) {
        s.addCustom(name, *kind);
        return json{{"ok", true}, {"name", name}, {"opaque", !s.registry().find(name)->impl.has_value()}};
      });
    });
    route("POST", "/sessions/:id/qed", [this](const httplib::Request& req, const json& body) {
      const std::string name = body.contains("name") ? field(body, "name") : "";
      return withSession(req, [&](Session& s) {
        const Thm th = s.qed(name);
        return json{{"theorem", render(th.concl())}, {"script", s.exportScript()}};
      });
    });
    route("GET", "/sessions/:id/state", [this](const httplib::Request& req, const json&) {
      return withSession(req, [&](Session& s) { return stateJson(s); });
    });
    route("GET", "/sessions/:id/script", [this](const httplib::Request& req, const json&) {
      return withSession(req, [&](Session& s) { return json{{"script", s.exportScript()}}; });
    });
    route("POST", "/libraries/load", [this](const httplib::Request&, const json& body) {
      if (body.contains("path")) return registerLibrary(readLibrary(field(body, "path")));
      if (body.contains("library")) return registerLibrary(libraryFromJson(body["library"].dump()));
      fail(Errc::FormatError, "expected 'path' or 'library'");
    });
    route("GET", "/libraries", [this](const httplib::Request&, const json&) {
      std::lock_guard lock(libMutex);
      json out = json::array();
      for (const std::string& n : libraries.names()) {
        const Library& l = libraries.get(n);
        out.push_back({{"name", n}, {"customs", l.customs.size()}, {"entries", l.entries.size()}});
      }
      return json{{"libraries", out}};
    });
    http.Get("/grammar", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        if (req.has_param("session")) {
          auto entry = find(req.get_param_value("session"));
          std::lock_guard lock(entry->mutex);
          res.set_content(entry->session.grammar().dump(), "text/plain");
        } else {
          res.set_content(Session::standard().grammar().dump(), "text/plain");
        }
      } catch (const Error& e) {
        res.status = statusFor(e.code());
        res.set_content(errorBody(e).dump(), "application/json");
      }
    });
  }
};

Server::Server(const ServerOptions& options) : impl_(std::make_unique<Impl>()) {
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  for (const auto& p : options.libraries) impl_->registerLibrary(readLibrary(p));
  impl_->install();
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) fail(Errc::BindError, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

std::size_t Server::sessionCount() const {
  std::shared_lock lock(impl_->mapMutex);
  return impl_->sessions.size();
}

}  // namespace exemplar
