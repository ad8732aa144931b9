#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exemplar/grammar.hpp"
#include "exemplar/induction.hpp"
#include "exemplar/registry.hpp"
#include "exemplar/tactic.hpp"
#include "exemplar/theorem_store.hpp"

namespace exemplar {

/// Persistent tree of goals. Internal nodes remember how they were split;
/// leaves are the open goals, numbered left to right.
class GoalTree {
 public:
  explicit GoalTree(Goal root);

  const Goal& root() const { return root_->goal; }
  std::vector<Goal> openGoals() const;
  std::size_t openCount() const { return root_->open; }
  bool closed() const { return root_->open == 0; }
  std::size_t focus() const { return focus_; }

  GoalTree withFocus(std::size_t i) const;
  // Replaces open goal `i` by the result of a tactic rendered as `fragment`.
  GoalTree expand(std::size_t i, const TacticResult& r, std::string fragment = {}) const;
  // Fragments of the expanded nodes in depth-first order.
  std::vector<std::string> script() const;
  // Runs the justifications bottom-up. Throws Errc::ProofIncomplete or
  // Errc::JustificationInvalid.
  Thm collapse() const;

 private:
  struct Node {
    Goal goal;
    bool expanded = false;
    std::string fragment;
    Justification just;
    std::vector<std::shared_ptr<const Node>> kids;
    std::size_t open = 1;
  };
  using NodePtr = std::shared_ptr<const Node>;
  GoalTree(NodePtr root, std::size_t focus) : root_(std::move(root)), focus_(focus) {}
  static NodePtr replaceLeaf(const NodePtr& n, std::size_t i, const TacticResult& r, const std::string& fragment);
  static void leaves(const NodePtr& n, std::vector<Goal>& out);
  static Thm prove(const NodePtr& n);

  NodePtr root_;
  std::size_t focus_ = 0;
};

// Splits on "." outside quotations, brackets and parentheses; trims and
// drops empty sentences. Throws Errc::UnbalancedQuotation.
std::vector<std::string> splitSentences(std::string_view script);

constexpr std::string_view kScriptJoin = " \\\\ ";

struct GoalView {
  std::vector<std::string> assumptions;
  std::string conclusion;
  bool focused = false;
};

struct SessionView {
  std::vector<GoalView> goals;
  bool active = false;
  bool closed = false;
  std::vector<std::string> transcript;
};

struct LearnedDef {
  std::string utterance;
  std::string definition;
  bool operator==(const LearnedDef&) const = default;
};

struct LearnedCustom {
  std::string name;
  CustomKind kind = CustomKind::Tactic;
  bool operator==(const LearnedCustom&) const = default;
};

struct Explained {
  std::string fragment;
  std::string goal;  // focused goal after the step, empty when closed
};

class Session {
 public:
  Session(Grammar grammar, Registry registry, TheoremStore store);
  // Core grammar over the built-in registry and the bundled theorems.
  static Session standard();

  const Grammar& grammar() const { return cur_.grammar; }
  const Registry& registry() const { return cur_.registry; }
  const TheoremStore& store() const { return store_; }
  const std::optional<GoalTree>& tree() const { return cur_.tree; }
  const std::vector<std::string>& transcript() const { return cur_.transcript; }
  bool idle() const { return !cur_.tree; }
  std::size_t historySize() const { return history_.size(); }
  // Definitions and customs taught in this session, in order.
  const std::vector<LearnedDef>& learnedDefs() const { return cur_.defs; }
  const std::vector<LearnedCustom>& learnedCustoms() const { return cur_.customs; }

  // Throws Errc::Syntax / Errc::Sort / Errc::SessionBusy.
  void startProof(std::string_view goal);
  // Discards the current proof, keeping the learned grammar.
  void abandon();

  // Runs every sentence of the script; all-or-nothing.
  void nltac(std::string_view script);
  Explained nlexplain(std::string_view sentence);
  void undo();
  // Replays under the core grammar alone from the root goal.
  std::string exportScript() const;
  // Collapses the closed tree; stores the theorem when a name is given.
  Thm qed(const std::string& name = {});

  DefResult define(std::string_view utterance, std::string_view definition, const DefOptions& options = {});
  void addCustom(const std::string& name, CustomKind kind, const DefOptions& options = {RuleSource::Custom, {}});
  // Replaces grammar and registry without recording history.
  void setLanguage(Grammar grammar, Registry registry);

  SessionView view() const;
  std::string renderGoals() const;

 private:
  struct State {
    Grammar grammar;
    Registry registry;
    std::optional<GoalTree> tree;
    std::vector<std::string> transcript;
    std::vector<LearnedDef> defs;
    std::vector<LearnedCustom> customs;
  };

  void runSentence(const std::string& sentence, bool allowDirectives);
  void requireProof() const;

  State cur_;
  std::vector<State> history_;
  TheoremStore store_;
};

}  // namespace exemplar
