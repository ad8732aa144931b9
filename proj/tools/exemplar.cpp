#include <csignal>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "exemplar/error.hpp"
#include "exemplar/library.hpp"
#include "exemplar/proof_file.hpp"
#include "exemplar/server.hpp"

using namespace exemplar;

namespace {

Server* gServer = nullptr;

void onSignal(int) {
  if (gServer) gServer->stop();
}

Session sessionWith(const std::vector<std::string>& libs, std::ostream& log) {
  Session s = Session::standard();
  std::vector<Library> loaded;
  for (const auto& p : libs) loaded.push_back(readLibrary(p));
  const LoadReport r = loadLibraries(s, loaded);
  for (const SkippedEntry& k : r.skipped)
    log << "skipped " << k.library << ": '" << k.item << "' (" << k.code << ")\n";
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

void printError(const Error& e) {
  std::cout << "error: " << errcName(e.code()) << ": " << e.what() << "\n";
}

const char* kReplHelp =
    "Sentences are run on the focused goal, e.g. `introduce assumptions. simplify.`\n"
    "Commands:\n"
    "  :start <term>                 begin a proof\n"
    "  :explain <sentence>           run one sentence and show its tactic\n"
    "  :undo                         undo the last step\n"
    "  :script                       print the tactic script so far\n"
    "  :qed [name]                   finish the proof\n"
    "  :def \"<utterance>\" = \"<definition>\"\n"
    "  :custom <kind> <name>         kind is tactic, thm_tactic or thmlist_tactic\n"
    "  :goals  :grammar  :help  :quit\n";

int repl(const std::vector<std::string>& libs) {
  Session s = sessionWith(libs, std::cout);
  std::cout << "Type :help for commands.\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line[0] != ':') {
        s.nltac(line);
        std::cout << s.renderGoals();
        continue;
      }
      const auto space = line.find(' ');
      const std::string cmd = line.substr(0, space);
      const std::string arg = space == std::string::npos ? "" : trim(line.substr(space + 1));
      if (cmd == ":quit" || cmd == ":q") break;
      if (cmd == ":help") {
        std::cout << kReplHelp;
      } else if (cmd == ":start") {
        s.abandon();
        s.startProof(arg);
        std::cout << s.renderGoals();
      } else if (cmd == ":explain") {
        const Explained e = s.nlexplain(arg);
        std::cout << "  " << e.fragment << "\n" << s.renderGoals();
      } else if (cmd == ":undo") {
        s.undo();
        std::cout << s.renderGoals();
      } else if (cmd == ":script") {
        std::cout << s.exportScript() << "\n";
      } else if (cmd == ":qed") {
        const Thm th = s.qed(arg);
        std::cout << "|- " << render(th.concl()) << "\n";
      } else if (cmd == ":goals") {
        std::cout << s.renderGoals();
      } else if (cmd == ":grammar") {
        std::cout << s.grammar().dump();
      } else if (cmd == ":def") {
        const auto items = parseProofFile("def " + arg);
        const auto& d = std::get<DefStatement>(items.at(0));
        std::cout << s.define(d.utterance, d.definition).rulesAdded() << " rule(s) added\n";
      } else if (cmd == ":custom") {
        const auto items = parseProofFile("custom " + arg);
        const auto& c = std::get<CustomStatement>(items.at(0));
        s.addCustom(c.name, c.kind);
        std::cout << "added " << c.name << "\n";
      } else {
        std::cout << "unknown command " << cmd << "; type :help\n";
      }
    } catch (const Error& e) {
      printError(e);
    }
  }
  return 0;
}

int run(const std::string& file, const std::vector<std::string>& libs) {
  const FileReport r = runFile(file, {libs.begin(), libs.end()});
  std::cout << r.str();
  return r.ok() ? 0 : 1;
}

int exportFile(const std::string& file, const std::string& out, const std::vector<std::string>& libs) {
  std::ifstream in(file);
  if (!in) fail(Errc::FileNotFound, "cannot open " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto items = parseProofFile(buf.str());
  Session s = sessionWith(libs, std::cerr);
  const FileReport r = runProofs(s, items);
  std::ofstream os(out);
  if (!os) fail(Errc::IoError, "cannot write " + out);
  std::size_t k = 0;
  for (const ProofItem& item : items) {
    const ItemReport& rep = r.items[k++];
    const auto* t = std::get_if<TheoremBlock>(&item);
    if (!t) continue;
    if (!rep.ok) os << "(* incomplete: " << rep.code << " *)\n";
    os << "Theorem " << t->name << ":\n  " << t->goal << "\nProof\n  " << rep.script << "\nQED\n\n";
  }
  std::cerr << r.str();
  return r.ok() ? 0 : 1;
}

int serve(const std::string& host, int port, const std::vector<std::string>& libs) {
  ServerOptions options;
  options.libraries.assign(libs.begin(), libs.end());
  Server server(options);
  const int bound = server.bind(host, port);
  gServer = &server;
  std::signal(SIGINT, onSignal);
  std::signal(SIGTERM, onSignal);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  server.listen();
  gServer = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural-language tactic sessions over a small LCF prover"};
  app.require_subcommand(0, 1);
  bool grammarDump = false;
  std::vector<std::string> libs;
  app.add_flag("--grammar-dump", grammarDump, "Print the grammar (with any --lib libraries) and exit");
  app.add_option("--lib", libs, "Library file to load")->check(CLI::ExistingFile);

  auto* replCmd = app.add_subcommand("repl", "Interactive proof session");
  replCmd->add_option("--lib", libs, "Library file to load")->check(CLI::ExistingFile);

  std::string file, out;
  auto* runCmd = app.add_subcommand("run", "Check every theorem in a proof file");
  runCmd->add_option("file", file, "Proof file")->required();
  runCmd->add_option("--lib", libs, "Library file to load")->check(CLI::ExistingFile);

  auto* exportCmd = app.add_subcommand("export", "Write the low-level tactic scripts of a proof file");
  exportCmd->add_option("file", file, "Proof file")->required();
  exportCmd->add_option("-o,--output", out, "Output file")->required();
  exportCmd->add_option("--lib", libs, "Library file to load")->check(CLI::ExistingFile);

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serveCmd = app.add_subcommand("serve", "Serve proof sessions over HTTP");
  serveCmd->add_option("--port", port, "Port (0 picks a free one)");
  serveCmd->add_option("--host", host, "Interface to bind");
  serveCmd->add_option("--lib", libs, "Library file to register")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (grammarDump) {
      std::cout << sessionWith(libs, std::cerr).grammar().dump();
      return 0;
    }
    if (*runCmd) return run(file, libs);
    if (*exportCmd) return exportFile(file, out, libs);
    if (*serveCmd) return serve(host, port, libs);
    return repl(libs);
  } catch (const Error& e) {
    std::cerr << "error: " << errcName(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
}
