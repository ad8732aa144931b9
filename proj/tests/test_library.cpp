#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "exemplar/error.hpp"
#include "exemplar/library.hpp"
#include "exemplar/proof_file.hpp"

using namespace exemplar;
namespace fs = std::filesystem;

namespace {

Errc codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Syntax;
}

fs::path tempFile(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "exemplar_tests";
  fs::create_directories(dir);
  return dir / name;
}

Library logic() {
  return Library{"logic", {}, {{"case split", "EQ_TAC"}, {"suppose not", "CCONTR_TAC THEN fs [ ]"}}};
}

}  // namespace

TEST(Library, RegisterValidates) {
  LibraryStore store;
  const Library& lib = store.registerLibrary(logic());
  EXPECT_EQ(lib.entries.size(), 2u);
  EXPECT_EQ(codeOf([&] { store.registerLibrary(logic()); }), Errc::DuplicateLibrary);
  try {
    store.registerLibrary(Library{"broken", {}, {{"fine", "fs [ ]"}, {"bad", "fs [ ADD_COMM"}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ReplayFailure);
    ASSERT_EQ(e.details().size(), 2u);
    EXPECT_EQ(e.details()[0], "1");
  }
  EXPECT_FALSE(store.contains("broken"));
  EXPECT_EQ(store.names(), (std::vector<std::string>{"logic"}));
}

TEST(Library, JsonRoundTrip) {
  Library lib = logic();
  lib.customs.push_back({"MY_TAC", CustomKind::ThmListTactic});
  const fs::path p = tempFile("logic.json");
  saveLibrary(lib, p);
  EXPECT_EQ(readLibrary(p), lib);
  std::ifstream in(p);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "{");
  EXPECT_EQ(codeOf([&] { saveLibrary(lib, "/nonexistent-dir/x/lib.json"); }), Errc::IoError);
  EXPECT_EQ(codeOf([&] { readLibrary(tempFile("missing.json")); }), Errc::FileNotFound);
}

TEST(Library, RejectsMalformed) {
  EXPECT_EQ(codeOf([] { libraryFromJson("{"); }), Errc::FormatError);
  EXPECT_EQ(codeOf([] { libraryFromJson(R"({"name":"x","version":1,"customs":[],"entries":[],"extra":1})"); }),
            Errc::FormatError);
  EXPECT_EQ(codeOf([] { libraryFromJson(R"({"name":"x","version":2,"customs":[],"entries":[]})"); }),
            Errc::FormatError);
  EXPECT_EQ(codeOf([] {
              libraryFromJson(R"({"name":"x","version":1,"customs":[{"name":"A","kind":"tac"}],"entries":[]})");
            }),
            Errc::FormatError);
  EXPECT_EQ(codeOf([] {
              libraryFromJson(R"({"name":"x","version":1,"customs":[],"entries":[{"utterance":"a"}]})");
            }),
            Errc::FormatError);
}

TEST(Library, LoadIntoSession) {
  Session s = Session::standard();
  const std::string before = s.grammar().dump();
  const LoadReport none = loadLibraries(s, {});
  EXPECT_EQ(none.rulesAdded, 0);
  EXPECT_EQ(s.grammar().dump(), before);

  const LoadReport r = loadLibraries(s, {readLibrary(EXEMPLAR_DATA_DIR "/tutorial_library.json")});
  EXPECT_TRUE(r.skipped.empty());
  EXPECT_GT(r.rulesAdded, 20);
  s.startProof("p ==> p");
  s.nltac("introduce assumptions.");
  EXPECT_EQ(s.transcript(), (std::vector<std::string>{"rpt strip_tac"}));
  EXPECT_NE(s.grammar().dump().find(":: library(tutorial)"), std::string::npos);
}

TEST(Library, CollisionSkippedAndReported) {
  const Library a{"a", {}, {{"finish", "fs [ ]"}, {"tidy up", "rpt strip_tac"}}};
  const Library b{"b", {}, {{"finish", "metis_tac [ ]"}, {"split", "conj_tac"}}};
  Session s = Session::standard();
  const LoadReport r = loadLibraries(s, {a, b});
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].library, "b");
  EXPECT_EQ(r.skipped[0].item, "finish");
  EXPECT_EQ(r.skipped[0].code, "already_defined");

  Session only = Session::standard();
  loadLibraries(only, {a, Library{"b", {}, {{"split", "conj_tac"}}}});
  EXPECT_EQ(s.grammar().dump(), only.grammar().dump());
}

TEST(Library, ReplayIsDeterministic) {
  const Library lib = readLibrary(EXEMPLAR_DATA_DIR "/tutorial_library.json");
  Session a = Session::standard();
  Session b = Session::standard();
  loadLibraries(a, {lib});
  loadLibraries(b, {lib});
  EXPECT_EQ(a.grammar().dump(), b.grammar().dump());
}

TEST(Library, CaptureFromSession) {
  Session s = Session::standard();
  s.addCustom("NAT_ASM_ARITH_TAC", CustomKind::Tactic);
  s.define("simplify with ADD_ASSOC", "fs [ADD_ASSOC]");
  s.define("arith", "NAT_ASM_ARITH_TAC");
  s.define("tidy", "rpt strip_tac");
  const Library lib = captureLibrary(s, "captured");
  ASSERT_EQ(lib.entries.size(), 3u);
  EXPECT_EQ(lib.entries[0].utterance, "simplify with ADD_ASSOC");
  EXPECT_EQ(lib.entries[2].utterance, "tidy");
  ASSERT_EQ(lib.customs.size(), 1u);

  const fs::path p = tempFile("captured.json");
  saveLibrary(lib, p);
  Session fresh = Session::standard();
  loadLibraries(fresh, {readLibrary(p)});
  Session again = Session::standard();
  loadLibraries(again, {lib});
  EXPECT_EQ(fresh.grammar().dump(), again.grammar().dump());
  fresh.startProof("!x. x < x + 1");
  fresh.nltac("arith.");
  EXPECT_TRUE(fresh.tree()->closed());
}

TEST(ProofFile, Parse) {
  const auto items = parseProofFile(
      "# comment\n"
      "custom tactic MY_TAC\n"
      "def \"tidy\" = \"rpt strip_tac\"\n"
      "theorem t: \"p ==> p\"\n"
      "proof\n"
      "  `tidy.\n"
      "   simplify.`\n"
      "qed\n");
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(std::get<CustomStatement>(items[0]).name, "MY_TAC");
  EXPECT_EQ(std::get<DefStatement>(items[1]).definition, "rpt strip_tac");
  const auto& t = std::get<TheoremBlock>(items[2]);
  EXPECT_EQ(t.name, "t");
  EXPECT_EQ(t.goal, "p ==> p");
  EXPECT_EQ(t.script, "tidy.\n   simplify.");
  EXPECT_TRUE(parseProofFile("").empty());
  try {
    parseProofFile("theorem t: \"p\"\nproof\nsimplify.\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FormatError);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  EXPECT_EQ(codeOf([] { parseProofFile("lemma x\n"); }), Errc::FormatError);
}

TEST(ProofFile, RunTutorial) {
  const FileReport r = runFile(EXEMPLAR_SOURCE_DIR "/proofs/tutorial.proof", {EXEMPLAR_DATA_DIR "/tutorial_library.json"});
  EXPECT_TRUE(r.ok()) << r.str();
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].conclusion, "!n. 2 * sum n = n * (n + 1)");
  const FileReport logic = runFile(EXEMPLAR_SOURCE_DIR "/proofs/logic.proof", {});
  EXPECT_TRUE(logic.ok()) << logic.str();
}

TEST(ProofFile, FailureNamesSentence) {
  Session s = Session::standard();
  const FileReport r = runProofs(s, parseProofFile("theorem t: \"p ==> p\"\nproof\n  frobnicate the goal.\nqed\n"
                                                   "theorem u: \"q ==> q\"\nproof\n  strip_tac THEN fs [ ].\nqed\n"));
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.items[0].ok);
  EXPECT_EQ(r.items[0].code, "not_understood");
  EXPECT_EQ(r.items[0].sentence, "frobnicate the goal");
  EXPECT_TRUE(r.items[1].ok);
  EXPECT_NE(r.str().find("FAIL theorem t"), std::string::npos);
  EXPECT_TRUE(runProofs(s, {}).ok());
}
