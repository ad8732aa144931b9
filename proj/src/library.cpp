#include "exemplar/library.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "exemplar/error.hpp"

namespace exemplar {

using json = nlohmann::ordered_json;

std::string toJson(const Library& lib) {
  json j;
  j["name"] = lib.name;
  j["version"] = 1;
  j["customs"] = json::array();
  for (const LearnedCustom& c : lib.customs)
    j["customs"].push_back({{"name", c.name}, {"kind", std::string(customKindName(c.kind))}});
  j["entries"] = json::array();
  for (const LearnedDef& e : lib.entries)
    j["entries"].push_back({{"utterance", e.utterance}, {"definition", e.definition}});
  return j.dump(2) + "\n";
}

namespace {

void onlyKeys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) fail(Errc::FormatError, where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* want : keys) ok = ok || k == want;
    if (!ok) fail(Errc::FormatError, "unknown field '" + k + "' in " + where);
  }
  for (const char* want : keys)
    if (!j.contains(want)) fail(Errc::FormatError, where + " is missing '" + want + "'");
}

std::string str(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_string()) fail(Errc::FormatError, std::string("'") + key + "' in " + where + " must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

Library libraryFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::FormatError, std::string("invalid JSON: ") + e.what());
  }
  onlyKeys(j, {"name", "version", "customs", "entries"}, "library");
  Library lib;
  lib.name = str(j, "name", "library");
  if (lib.name.empty()) fail(Errc::FormatError, "library name is empty");
  if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
    fail(Errc::FormatError, "unsupported library version");
  if (!j["customs"].is_array() || !j["entries"].is_array())
    fail(Errc::FormatError, "'customs' and 'entries' must be arrays");
  for (std::size_t i = 0; i < j["customs"].size(); ++i) {
    const json& c = j["customs"][i];
    const std::string where = "custom " + std::to_string(i);
    onlyKeys(c, {"name", "kind"}, where);
    const auto kind = customKindByName(str(c, "kind", where));
    if (!kind) fail(Errc::FormatError, "unknown kind in " + where);
    lib.customs.push_back({str(c, "name", where), *kind});
  }
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const json& e = j["entries"][i];
    const std::string where = "entry " + std::to_string(i);
    onlyKeys(e, {"utterance", "definition"}, where);
    lib.entries.push_back({str(e, "utterance", where), str(e, "definition", where)});
  }
  return lib;
}

Library readLibrary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::FileNotFound, "cannot open library " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return libraryFromJson(buf.str());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

void saveLibrary(const Library& lib, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out << toJson(lib);
  out.flush();
  if (!out) fail(Errc::IoError, "write to " + path.string() + " failed");
}

Library captureLibrary(const Session& s, const std::string& name) {
  return Library{name, s.learnedCustoms(), s.learnedDefs()};
}

LoadReport loadLibraries(Session& s, const std::vector<Library>& libs) {
  LoadReport report;
  Grammar g = s.grammar();
  Registry reg = s.registry();
  for (const Library& lib : libs) {
    const DefOptions options{RuleSource::Library, lib.name};
    for (const LearnedCustom& c : lib.customs) {
      try {
        CustomResult r = addCustom(g, reg, c.name, c.kind, knownCustom(c.name, customKindType(c.kind), s.store()), options);
        g = std::move(r.grammar);
        reg = std::move(r.registry);
        ++report.rulesAdded;
      } catch (const Error& e) {
        report.skipped.push_back({lib.name, c.name, std::string(errcName(e.code())), e.what()});
      }
    }
    for (const LearnedDef& d : lib.entries) {
      try {
        DefResult r = def(g, d.utterance, d.definition, options);
        g = std::move(r.grammar);
        report.rulesAdded += r.rulesAdded();
      } catch (const Error& e) {
        report.skipped.push_back({lib.name, d.utterance, std::string(errcName(e.code())), e.what()});
      }
    }
    report.loaded.push_back(lib.name);
  }
  if (!libs.empty()) s.setLanguage(std::move(g), std::move(reg));
  return report;
}

const Library& LibraryStore::registerLibrary(Library lib) {
  if (libs_.count(lib.name)) fail(Errc::DuplicateLibrary, "a library named '" + lib.name + "' already exists");
  Session scratch = Session::standard();
  Grammar g = scratch.grammar();
  Registry reg = scratch.registry();
  const DefOptions options{RuleSource::Library, lib.name};
  std::size_t index = 0;
  auto failAt = [&](const Error& e, const std::string& what) {
    fail(Errc::ReplayFailure,
         "entry " + std::to_string(index) + " (" + what + ") failed: " + std::string(errcName(e.code())) + ": " + e.what(),
         {std::to_string(index), std::string(errcName(e.code()))});
  };
  for (const LearnedCustom& c : lib.customs) {
    try {
      CustomResult r = addCustom(g, reg, c.name, c.kind, std::nullopt, options);
      g = std::move(r.grammar);
      reg = std::move(r.registry);
    } catch (const Error& e) {
      failAt(e, c.name);
    }
    ++index;
  }
  for (const LearnedDef& d : lib.entries) {
    try {
      g = def(g, d.utterance, d.definition, options).grammar;
    } catch (const Error& e) {
      failAt(e, d.utterance);
    }
    ++index;
  }
  const std::string name = lib.name;
  return libs_.emplace(name, std::move(lib)).first->second;
}

const Library& LibraryStore::get(const std::string& name) const {
  auto it = libs_.find(name);
  if (it == libs_.end()) fail(Errc::FileNotFound, "no library named '" + name + "'");
  return it->second;
}

std::vector<std::string> LibraryStore::names() const {
  std::vector<std::string> out;
  for (const auto& [n, l] : libs_) out.push_back(n);
  return out;
}

}  // namespace exemplar
