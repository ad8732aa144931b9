#include "exemplar/proof_file.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "exemplar/error.hpp"
#include "exemplar/library.hpp"

namespace exemplar {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void formatError(int line, const std::string& what) {
  fail(Errc::FormatError, "line " + std::to_string(line) + ": " + what);
}

std::string stripBackquotes(std::string script) {
  script = trim(script);
  if (script.size() >= 2 && script.front() == '`' && script.back() == '`') {
    const std::string inner = script.substr(1, script.size() - 2);
    if (inner.find('`') == std::string::npos) return trim(inner);
  }
  return script;
}

}  // namespace

std::vector<ProofItem> parseProofFile(const std::string& text) {
  static const std::regex theoremRe(R"re(^theorem\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*"([^"]*)"$)re");
  static const std::regex defRe(R"re(^def\s+"([^"]*)"\s*=\s*"([^"]*)"$)re");
  static const std::regex customRe(R"re(^custom\s+(\S+)\s+(\S+)$)re");
  std::vector<ProofItem> items;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  std::optional<TheoremBlock> open;
  bool inProof = false;
  std::string body;
  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string line = trim(raw);
    if (inProof) {
      if (line == "qed") {
        open->script = stripBackquotes(body);
        items.push_back(*open);
        open.reset();
        inProof = false;
        body.clear();
      } else {
        body += raw + "\n";
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::smatch m;
    if (open) {
      if (line != "proof") formatError(lineNo, "expected 'proof' after the theorem header");
      inProof = true;
    } else if (std::regex_match(line, m, theoremRe)) {
      open = TheoremBlock{m[1], m[2], {}, lineNo};
    } else if (std::regex_match(line, m, defRe)) {
      items.push_back(DefStatement{m[1], m[2], lineNo});
    } else if (std::regex_match(line, m, customRe)) {
      const auto kind = customKindByName(m[1].str());
      if (!kind) formatError(lineNo, "unknown custom kind '" + m[1].str() + "'");
      items.push_back(CustomStatement{m[2], *kind, lineNo});
    } else {
      formatError(lineNo, "unrecognised statement '" + line + "'");
    }
  }
  if (open) formatError(open->line, "theorem '" + open->name + "' has no " + (inProof ? "qed" : "proof"));
  return items;
}

bool FileReport::ok() const {
  for (const ItemReport& r : items)
    if (!r.ok) return false;
  return true;
}

std::string FileReport::str() const {
  std::string out;
  int passed = 0;
  for (const ItemReport& r : items) {
    if (r.ok) ++passed;
    out += (r.ok ? "PASS " : "FAIL ") + r.kind + " " + r.name;
    if (!r.ok) {
      out += ": " + r.code + ": " + r.message;
      if (!r.sentence.empty()) out += " [sentence: " + r.sentence + "]";
    }
    out += "\n";
  }
  out += std::to_string(passed) + "/" + std::to_string(items.size()) + " passed\n";
  return out;
}

FileReport runProofs(Session& session, const std::vector<ProofItem>& items) {
  FileReport report;
  for (const ProofItem& item : items) {
    ItemReport r;
    try {
      if (const auto* d = std::get_if<DefStatement>(&item)) {
        r.kind = "def";
        r.name = d->utterance;
        session.define(d->utterance, d->definition);
      } else if (const auto* c = std::get_if<CustomStatement>(&item)) {
        r.kind = "custom";
        r.name = c->name;
        session.addCustom(c->name, c->kind);
      } else {
        const auto& t = std::get<TheoremBlock>(item);
        r.kind = "theorem";
        r.name = t.name;
        session.abandon();
        session.startProof(t.goal);
        try {
          session.nltac(t.script);
          r.script = session.exportScript();
          r.conclusion = render(session.qed(t.name).concl());
        } catch (...) {
          r.script = session.exportScript();
          session.abandon();
          throw;
        }
        session.abandon();
      }
      r.ok = true;
    } catch (const Error& e) {
      r.code = std::string(errcName(e.code()));
      r.message = e.what();
      if ((e.code() == Errc::NotUnderstood || e.code() == Errc::TacticFails) && !e.details().empty())
        r.sentence = e.details().front();
    }
    report.items.push_back(std::move(r));
  }
  return report;
}

FileReport runFile(const std::filesystem::path& path, const std::vector<std::filesystem::path>& libraries) {
  std::ifstream in(path);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::vector<ProofItem> items = parseProofFile(buf.str());
  Session session = Session::standard();
  std::vector<Library> libs;
  for (const auto& p : libraries) libs.push_back(readLibrary(p));
  loadLibraries(session, libs);
  return runProofs(session, items);
}

}  // namespace exemplar
