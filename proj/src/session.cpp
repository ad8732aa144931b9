#include "exemplar/session.hpp"

#include <algorithm>
#include <cctype>

#include "exemplar/error.hpp"
#include "exemplar/parser.hpp"

namespace exemplar {

GoalTree::GoalTree(Goal root) {
  auto n = std::make_shared<Node>();
  n->goal = std::move(root);
  root_ = n;
}

void GoalTree::leaves(const NodePtr& n, std::vector<Goal>& out) {
  if (!n->expanded) {
    out.push_back(n->goal);
    return;
  }
  for (const NodePtr& k : n->kids) leaves(k, out);
}

std::vector<Goal> GoalTree::openGoals() const {
  std::vector<Goal> out;
  leaves(root_, out);
  return out;
}

GoalTree GoalTree::withFocus(std::size_t i) const {
  return GoalTree(root_, root_->open == 0 ? 0 : std::min(i, root_->open - 1));
}

GoalTree::NodePtr GoalTree::replaceLeaf(const NodePtr& n, std::size_t i, const TacticResult& r,
                                        const std::string& fragment) {
  if (!n->expanded) {
    auto out = std::make_shared<Node>(*n);
    out->expanded = true;
    out->fragment = fragment;
    out->just = r.just;
    out->kids.clear();
    for (const Goal& g : r.subgoals) {
      auto leaf = std::make_shared<Node>();
      leaf->goal = g;
      out->kids.push_back(leaf);
    }
    out->open = r.subgoals.size();
    return out;
  }
  auto out = std::make_shared<Node>(*n);
  for (auto& k : out->kids) {
    if (i < k->open) {
      k = replaceLeaf(k, i, r, fragment);
      break;
    }
    i -= k->open;
  }
  out->open = 0;
  for (const auto& k : out->kids) out->open += k->open;
  return out;
}

GoalTree GoalTree::expand(std::size_t i, const TacticResult& r, std::string fragment) const {
  if (i >= root_->open) fail(Errc::NoSuchSubgoal, "no open goal number " + std::to_string(i));
  GoalTree t(replaceLeaf(root_, i, r, fragment), focus_);
  return t.withFocus(i);
}

std::vector<std::string> GoalTree::script() const {
  std::vector<std::string> out;
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!n->expanded) continue;
    out.push_back(n->fragment);
    for (auto it = n->kids.rbegin(); it != n->kids.rend(); ++it) stack.push_back(it->get());
  }
  return out;
}

Thm GoalTree::prove(const NodePtr& n) {
  std::vector<Thm> kids;
  for (const NodePtr& k : n->kids) kids.push_back(prove(k));
  Thm th = [&] {
    try {
      return n->just(kids);
    } catch (const Error& e) {
      fail(Errc::JustificationInvalid, std::string("justification failed: ") + e.what());
    }
  }();
  if (!achieves(th, n->goal)) fail(Errc::JustificationInvalid, "justification proved the wrong goal");
  return th;
}

Thm GoalTree::collapse() const {
  if (!closed()) fail(Errc::ProofIncomplete, std::to_string(root_->open) + " goal(s) remain open");
  return prove(root_);
}

std::vector<std::string> splitSentences(std::string_view script) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  char quote = 0;
  std::size_t quoteStart = 0;
  auto flush = [&] {
    auto b = cur.find_first_not_of(" \t\r\n");
    auto e = cur.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (std::size_t i = 0; i < script.size(); ++i) {
    const char c = script[i];
    if (quote) {
      if (c == quote) quote = 0;
      cur += c;
      continue;
    }
    if (c == '\'' || c == '`') {
      quote = c;
      quoteStart = i;
    } else if (c == '[' || c == '(') {
      ++depth;
    } else if ((c == ']' || c == ')') && depth > 0) {
      --depth;
    } else if (c == '.' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  if (quote) fail(Errc::UnbalancedQuotation, "unbalanced quotation starting at position " + std::to_string(quoteStart));
  flush();
  return out;
}

Session::Session(Grammar grammar, Registry registry, TheoremStore store)
    : cur_{std::move(grammar), std::move(registry), std::nullopt, {}}, store_(std::move(store)) {}

Session Session::standard() {
  TheoremStore store = TheoremStore::bundled();
  Registry registry = builtinRegistry(store);
  Grammar grammar = coreGrammar(registry);
  return Session(std::move(grammar), std::move(registry), std::move(store));
}

void Session::startProof(std::string_view goal) {
  if (cur_.tree && !cur_.tree->closed()) fail(Errc::SessionBusy, "a proof is already in progress");
  const Term t = parseTerm(goal, Sort::Bool);
  cur_.tree = GoalTree(Goal{{}, t});
  cur_.transcript.clear();
  history_.erase(std::remove_if(history_.begin(), history_.end(), [](const State& s) { return s.tree.has_value(); }),
                 history_.end());
}

void Session::abandon() {
  cur_.tree.reset();
  cur_.transcript.clear();
  history_.erase(std::remove_if(history_.begin(), history_.end(), [](const State& s) { return s.tree.has_value(); }),
                 history_.end());
}

void Session::requireProof() const {
  if (!cur_.tree) fail(Errc::NoProof, "no proof in progress");
}

namespace {

enum class Directive { None, NextGoal, FocusGoal, End };

Directive directiveOf(const std::vector<Token>& toks) {
  if (toks.size() == 2 && toks[0].text == "Next" && toks[1].text == "Goal") return Directive::NextGoal;
  if (toks.size() == 2 && toks[0].kind == Token::Kind::Word && toks[0].text == "Goal" &&
      toks[1].kind == Token::Kind::Quotation)
    return Directive::FocusGoal;
  if (toks.size() == 1 && toks[0].kind == Token::Kind::Word && toks[0].text == "End") return Directive::End;
  return Directive::None;
}

}  // namespace

void Session::runSentence(const std::string& sentence, bool allowDirectives) {
  requireProof();
  const std::vector<Token> toks = tokenize(sentence);
  const Directive dir = directiveOf(toks);
  GoalTree& tree = *cur_.tree;
  if (dir != Directive::None) {
    if (!allowDirectives) fail(Errc::DirectiveNotSupported, "'" + sentence + "' selects subgoals, which is not supported here");
    if (tree.closed() && dir == Directive::FocusGoal) fail(Errc::NoSuchSubgoal, "the proof has no open goals");
    if (tree.closed()) return;
    switch (dir) {
      case Directive::NextGoal: tree = tree.withFocus((tree.focus() + 1) % tree.openCount()); break;
      case Directive::End: tree = tree.withFocus(0); break;
      case Directive::FocusGoal: {
        const Term want = parseTerm(toks[1].text, Sort::Bool);
        const std::vector<Goal> open = tree.openGoals();
        auto hit = std::find_if(open.begin(), open.end(), [&](const Goal& g) { return alphaEqual(g.concl, want); });
        if (hit == open.end()) {
          hit = std::find_if(open.begin(), open.end(), [&](const Goal& g) {
            std::vector<Term> fixed;
            for (const Term& v : freeVars(want))
              if (v.sort() != Sort::Nat || occursFree(v, g.concl)) fixed.push_back(v);
            return matchTerm(want, g.concl, fixed).has_value();
          });
        }
        if (hit == open.end()) fail(Errc::NoSuchSubgoal, "no open goal matches '" + render(want) + "'");
        tree = tree.withFocus(static_cast<std::size_t>(hit - open.begin()));
        break;
      }
      case Directive::None: break;
    }
    return;
  }

  if (tree.closed()) fail(Errc::ProofAlreadyComplete, "the proof is already complete; '" + sentence + "' was not run");
  TacticExpr expr;
  try {
    expr = std::get<TacticExpr>(parseUnique(cur_.grammar, toks).value);
  } catch (const Error& e) {
    if (e.code() == Errc::NoParse) fail(Errc::NotUnderstood, e.what(), {sentence, e.what()});
    throw;
  }
  const Tactic tac = evalTacticExpr(expr, cur_.registry, store_).tactic();
  const std::size_t at = tree.focus();
  TacticResult r;
  try {
    r = applyTactic(tac, tree.openGoals().at(at));
  } catch (const Error& e) {
    if (e.code() == Errc::TacticFails) fail(Errc::TacticFails, "'" + sentence + "' failed: " + e.what(), {sentence});
    throw;
  }
  std::string fragment = renderExpr(expr);
  tree = tree.expand(at, r, fragment);
  cur_.transcript.push_back(std::move(fragment));
}

void Session::nltac(std::string_view script) {
  requireProof();
  const std::vector<std::string> sentences = splitSentences(script);
  const State before = cur_;
  std::vector<State> frames;
  try {
    for (const std::string& s : sentences) {
      frames.push_back(cur_);
      runSentence(s, true);
    }
  } catch (...) {
    cur_ = before;
    throw;
  }
  for (State& f : frames) history_.push_back(std::move(f));
}

Explained Session::nlexplain(std::string_view sentence) {
  requireProof();
  const std::vector<std::string> sentences = splitSentences(sentence);
  if (sentences.size() != 1) fail(Errc::NotUnderstood, "expected exactly one sentence", {std::string(sentence)});
  const State before = cur_;
  try {
    if (cur_.tree->openCount() > 0) cur_.tree = cur_.tree->withFocus(0);
    runSentence(sentences[0], false);
  } catch (...) {
    cur_ = before;
    throw;
  }
  history_.push_back(before);
  Explained out{cur_.transcript.back(), {}};
  if (!cur_.tree->closed()) out.goal = render(cur_.tree->openGoals().at(cur_.tree->focus()));
  return out;
}

void Session::undo() {
  if (history_.empty()) fail(Errc::NothingToUndo, "nothing to undo");
  cur_ = std::move(history_.back());
  history_.pop_back();
}

std::string Session::exportScript() const {
  std::string out;
  if (!cur_.tree) return out;
  for (const std::string& f : cur_.tree->script()) {
    if (!out.empty()) out += kScriptJoin;
    out += f;
  }
  return out;
}

Thm Session::qed(const std::string& name) {
  requireProof();
  const Thm th = cur_.tree->collapse();
  if (!name.empty()) store_.add(name, th);
  return th;
}

DefResult Session::define(std::string_view utterance, std::string_view definition, const DefOptions& options) {
  DefResult r = def(cur_.grammar, utterance, definition, options);
  if (r.rulesAdded() > 0) {
    history_.push_back(cur_);
    cur_.grammar = r.grammar;
    cur_.defs.push_back({std::string(utterance), std::string(definition)});
  }
  return r;
}

void Session::addCustom(const std::string& name, CustomKind kind, const DefOptions& options) {
  CustomResult r = exemplar::addCustom(cur_.grammar, cur_.registry, name, kind,
                                       knownCustom(name, customKindType(kind), store_), options);
  history_.push_back(cur_);
  cur_.grammar = std::move(r.grammar);
  cur_.registry = std::move(r.registry);
  cur_.customs.push_back({name, kind});
}

void Session::setLanguage(Grammar grammar, Registry registry) {
  cur_.grammar = std::move(grammar);
  cur_.registry = std::move(registry);
}

SessionView Session::view() const {
  SessionView v;
  v.transcript = cur_.transcript;
  if (!cur_.tree) return v;
  v.active = true;
  v.closed = cur_.tree->closed();
  const auto goals = cur_.tree->openGoals();
  for (std::size_t i = 0; i < goals.size(); ++i) {
    GoalView g;
    for (const Term& a : goals[i].asl) g.assumptions.push_back(render(a));
    g.conclusion = render(goals[i].concl);
    g.focused = i == cur_.tree->focus();
    v.goals.push_back(std::move(g));
  }
  return v;
}

std::string Session::renderGoals() const {
  if (!cur_.tree) return "No proof in progress.\n";
  if (cur_.tree->closed()) return "Proof complete.\n";
  const auto goals = cur_.tree->openGoals();
  std::string out = std::to_string(goals.size()) + " goal(s), focus on goal " + std::to_string(cur_.tree->focus() + 1) + "\n\n";
  for (std::size_t i = 0; i < goals.size(); ++i) {
    out += (i == cur_.tree->focus() ? "> " : "  ") + std::string("Goal ") + std::to_string(i + 1) + ":\n";
    out += render(goals[i]) + "\n";
  }
  return out;
}

}  // namespace exemplar
