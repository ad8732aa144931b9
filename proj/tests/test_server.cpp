#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "exemplar/error.hpp"
#include "exemplar/server.hpp"

using namespace exemplar;
using json = nlohmann::json;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ServerOptions options;
    options.libraries.push_back(EXEMPLAR_DATA_DIR "/tutorial_library.json");
    server_ = std::make_unique<Server>(options);
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  std::pair<int, json> post(const std::string& path, const json& body = json::object()) {
    auto res = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res) << path;
    if (!res) return {0, {}};
    return {res->status, json::parse(res->body)};
  }

  std::pair<int, json> get(const std::string& path) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res) << path;
    if (!res) return {0, {}};
    return {res->status, json::parse(res->body)};
  }

  std::string newSession(const json& libs = json::array({"tutorial"})) {
    auto [status, body] = post("/sessions", {{"libraries", libs}});
    EXPECT_EQ(status, 200);
    return body["id"].get<std::string>();
  }

  std::unique_ptr<Server> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST_F(ServerTest, StepThroughProof) {
  const std::string id = newSession();
  const std::string base = "/sessions/" + id;
  auto [s0, state] = post(base + "/start", {{"goal", "!a b c. a <= b /\\ b <= c ==> a <= c /\\ (c + 0 = 0 + c \\/ F)"}});
  ASSERT_EQ(s0, 200);
  ASSERT_EQ(state["goals"].size(), 1u);
  EXPECT_TRUE(state["goals"][0]["focused"].get<bool>());
  EXPECT_FALSE(state["closed"].get<bool>());

  auto [s1, step] = post(base + "/step", {{"sentence", "introduce assumptions."}, {"mode", "nlexplain"}});
  ASSERT_EQ(s1, 200);
  EXPECT_TRUE(step["ok"].get<bool>());
  EXPECT_EQ(step["fragment"], "rpt strip_tac");
  EXPECT_EQ(step["goals"].size(), 2u);
  EXPECT_EQ(step["goals"][0]["assumptions"].size(), 2u);

  auto [s2, bad] = post(base + "/step", {{"sentence", "chain the bounds."}});
  EXPECT_EQ(s2, 422);
  EXPECT_EQ(bad["error"], "not_understood");
  EXPECT_TRUE(bad.contains("diagnostic"));

  auto [s3, def] = post(base + "/def", {{"utterance", "chain the bounds with LESS_EQ_TRANS"},
                                        {"definition", "metis_tac [LESS_EQ_TRANS]"}});
  ASSERT_EQ(s3, 200) << def.dump();
  EXPECT_EQ(def["rulesAdded"], 2);

  auto [s4, retry] = post(base + "/step", {{"sentence", "chain the bounds with LESS_EQ_TRANS."}});
  ASSERT_EQ(s4, 200) << retry.dump();
  EXPECT_EQ(retry["fragment"], "metis_tac [ LESS_EQ_TRANS ]");
  EXPECT_EQ(retry["goals"].size(), 1u);

  auto [s5, rest] = post(base + "/step", {{"sentence", "left. rewrite with [ADD_0]. simplify."}});
  ASSERT_EQ(s5, 200) << rest.dump();
  EXPECT_TRUE(rest["closed"].get<bool>());
  EXPECT_EQ(rest["transcript"].size(), 5u);

  auto [s6, script] = get(base + "/script");
  EXPECT_EQ(s6, 200);
  EXPECT_EQ(script["script"],
            "rpt strip_tac \\\\ metis_tac [ LESS_EQ_TRANS ] \\\\ disj1_tac \\\\ rewrite_tac [ ADD_0 ] \\\\ fs [ ]");

  auto [s7, done] = post(base + "/step", {{"sentence", "simplify."}});
  EXPECT_EQ(s7, 409);
  EXPECT_EQ(done["error"], "proof_already_complete");

  auto [s8, qed] = post(base + "/qed", {{"name", "le_example"}});
  ASSERT_EQ(s8, 200);
  EXPECT_EQ(qed["theorem"], "!a b c. a <= b /\\ b <= c ==> a <= c /\\ (c + 0 = 0 + c \\/ F)");
}

TEST_F(ServerTest, UndoStateAndCustom) {
  const std::string base = "/sessions/" + newSession();
  auto [s0, u0] = post(base + "/undo");
  EXPECT_EQ(s0, 422);
  EXPECT_EQ(u0["error"], "nothing_to_undo");
  auto [sx, idle] = get(base + "/state");
  EXPECT_FALSE(idle["active"].get<bool>());

  post(base + "/start", {{"goal", "p ==> p"}});
  post(base + "/step", {{"sentence", "introduce assumptions."}});
  auto [s1, st] = get(base + "/state");
  EXPECT_EQ(st["transcript"].size(), 1u);
  auto [s2, undone] = post(base + "/undo");
  EXPECT_EQ(s2, 200);
  EXPECT_TRUE(undone["transcript"].empty());
  EXPECT_EQ(undone["goals"][0]["conclusion"], "p ==> p");

  auto [s3, c] = post(base + "/custom", {{"name", "MY_TAC"}, {"kind", "tactic"}});
  EXPECT_EQ(s3, 200);
  EXPECT_TRUE(c["opaque"].get<bool>());
  auto [s4, dup] = post(base + "/custom", {{"name", "MY_TAC"}, {"kind", "tactic"}});
  EXPECT_EQ(s4, 409);
  EXPECT_EQ(dup["error"], "duplicate_custom");
  auto [s5, kind] = post(base + "/custom", {{"name", "X"}, {"kind", "nope"}});
  EXPECT_EQ(s5, 422);
  EXPECT_EQ(kind["error"], "format_error");
  auto [s6, nav] = post(base + "/step", {{"sentence", "Next Goal."}, {"mode", "nlexplain"}});
  EXPECT_EQ(nav["error"], "directive_not_supported");
  auto [s7, busy] = post(base + "/start", {{"goal", "q"}});
  EXPECT_EQ(s7, 409);
  EXPECT_EQ(busy["error"], "session_busy");
  auto [s8, syn] = post(base + "/def", {{"utterance", "x"}, {"definition", "fs ["}});
  EXPECT_EQ(syn["error"], "definition_unparsable");
}

TEST_F(ServerTest, SessionsAndLibraries) {
  auto [s0, libs] = get("/libraries");
  ASSERT_EQ(libs["libraries"].size(), 1u);
  EXPECT_EQ(libs["libraries"][0]["name"], "tutorial");

  const json logic = {{"name", "logic"},
                      {"version", 1},
                      {"customs", json::array()},
                      {"entries", {{{"utterance", "split the iff"}, {"definition", "EQ_TAC"}}}}};
  auto [s1, reg] = post("/libraries/load", {{"library", logic}});
  ASSERT_EQ(s1, 200) << reg.dump();
  auto [s2, dup] = post("/libraries/load", {{"library", logic}});
  EXPECT_EQ(s2, 409);
  EXPECT_EQ(dup["error"], "duplicate_library");
  auto [s3, missing] = post("/libraries/load", {{"path", "/no/such/lib.json"}});
  EXPECT_EQ(s3, 404);
  EXPECT_EQ(missing["error"], "file_not_found");

  auto [s4, created] = post("/sessions", {{"libraries", {"tutorial", "logic"}}});
  ASSERT_EQ(s4, 200);
  EXPECT_TRUE(created["libraries"]["skipped"].empty());
  const std::string id = created["id"];
  EXPECT_EQ(server_->sessionCount(), 1u);

  auto res = client_->Get("/grammar?session=" + id);
  ASSERT_TRUE(res);
  EXPECT_NE(res->body.find("library(logic)"), std::string::npos);
  auto core = client_->Get("/grammar");
  ASSERT_TRUE(core);
  EXPECT_EQ(core->body.find("library("), std::string::npos);
  EXPECT_NE(core->body.find("ROOT -> TACTIC"), std::string::npos);

  auto [s5, unknown] = post("/sessions", {{"libraries", {"nope"}}});
  EXPECT_EQ(s5, 404);

  auto del = client_->Delete("/sessions/" + id);
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 200);
  auto [s6, gone] = get("/sessions/" + id + "/state");
  EXPECT_EQ(s6, 404);
  EXPECT_EQ(gone["error"], "no_such_session");

  auto bad = client_->Post("/sessions", "{not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(json::parse(bad->body)["error"], "format_error");
}

TEST_F(ServerTest, ConcurrentSessionsAgree) {
  constexpr int kSessions = 6;
  std::vector<std::string> ids;
  for (int i = 0; i < kSessions; ++i) ids.push_back(newSession());
  std::vector<json> finals(kSessions);
  std::vector<std::thread> workers;
  for (int i = 0; i < kSessions; ++i) {
    workers.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port_);
      const std::string base = "/sessions/" + ids[i];
      auto send = [&](const std::string& path, const json& body) {
        auto r = c.Post(path, body.dump(), "application/json");
        return r ? json::parse(r->body) : json();
      };
      send(base + "/start", {{"goal", "!n. 2 * sum n = n * (n + 1)"}});
      for (const char* s : {"induction on 'n'.", "simplify with [sum_def].", "rewrite with [sum_def].",
                            "simplify with [LEFT_ADD_DISTRIB]."})
        send(base + "/step", {{"sentence", s}});
      auto r = c.Get(base + "/state");
      finals[i] = r ? json::parse(r->body) : json();
    });
  }
  for (auto& w : workers) w.join();
  for (int i = 0; i < kSessions; ++i) {
    EXPECT_TRUE(finals[i]["closed"].get<bool>()) << finals[i].dump();
    EXPECT_EQ(finals[i], finals[0]);
  }
}

TEST(ServerBind, PortInUse) {
  Server a;
  const int port = a.bind("127.0.0.1", 0);
  Server b;
  try {
    b.bind("127.0.0.1", port);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BindError);
  }
}
