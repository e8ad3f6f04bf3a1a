// Abstract and concrete syntax of deontic action logic: action terms,
// formulas, normal defaults and theories.
//
// Action terms and formulas are immutable trees with shared structure, so
// copies are cheap and values can be passed around freely between threads.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// Vocabulary exceeds what an engine can enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class InconsistentTheoryError : public Error {
 public:
  InconsistentTheoryError() : Error("theory is inconsistent") {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Ordered, duplicate-free list of basic action symbols. Position i of a
// symbol is bit i of every atom index downstream.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> symbols_;
};

bool is_valid_identifier(std::string_view name);
bool is_reserved_word(std::string_view name);

enum class ActionKind { kBasic, kJoin, kMeet, kComplement, kZero, kOne };

class Action {
 public:
  static Action basic(std::string symbol);
  static Action zero();
  static Action one();

  ActionKind kind() const { return node_->kind; }
  const std::string& symbol() const { return node_->symbol; }
  const Action& left() const { return node_->children.at(0); }
  const Action& right() const { return node_->children.at(1); }
  const Action& child() const { return node_->children.at(0); }

  friend bool operator==(const Action& a, const Action& b);

 private:
  struct Node {
    ActionKind kind;
    std::string symbol;
    std::vector<Action> children;
  };
  explicit Action(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Action join(Action, Action);
  friend Action meet(Action, Action);
  friend Action complement(Action);

  std::shared_ptr<const Node> node_;
};

Action join(Action a, Action b);
Action meet(Action a, Action b);
Action complement(Action a);

// (a * b) + (!a * !b) and (a * !b) + (!a * b).
Action desugar_equiv(const Action& a, const Action& b);
Action desugar_nequiv(const Action& a, const Action& b);

enum class FormulaKind {
  kNot,
  kOr,
  kAnd,
  kImplies,
  kIff,
  kEq,
  kPerm,
  kForb,
  kTop,
  kBottom
};

class Formula {
 public:
  static Formula top();
  static Formula bottom();
  static Formula eq(Action a, Action b);
  static Formula perm(Action a);
  static Formula forb(Action a);

  FormulaKind kind() const { return node_->kind; }
  // Operands of a binary connective, or the negated formula (left()).
  const Formula& left() const { return node_->formulas.at(0); }
  const Formula& right() const { return node_->formulas.at(1); }
  const Formula& child() const { return node_->formulas.at(0); }
  // Action arguments of Eq (both) and Perm/Forb (first only).
  const Action& action() const { return node_->actions.at(0); }
  const Action& lhs() const { return node_->actions.at(0); }
  const Action& rhs() const { return node_->actions.at(1); }

  bool is_deontic_atom() const {
    return kind() == FormulaKind::kEq || kind() == FormulaKind::kPerm ||
           kind() == FormulaKind::kForb;
  }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::vector<Formula> formulas;
    std::vector<Action> actions;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::vector<Formula> formulas,
                      std::vector<Action> actions);
  friend Formula negation(Formula);
  friend Formula disjunction(Formula, Formula);
  friend Formula conjunction(Formula, Formula);
  friend Formula implication(Formula, Formula);
  friend Formula biconditional(Formula, Formula);

  std::shared_ptr<const Node> node_;
};

Formula negation(Formula f);
Formula disjunction(Formula a, Formula b);
Formula conjunction(Formula a, Formula b);
Formula implication(Formula a, Formula b);
Formula biconditional(Formula a, Formula b);

// Left-nested conjunction; the empty conjunction is `true`.
Formula conjunction_of(const std::vector<Formula>& fs);

// Rewrites And/Implies/Iff/Top/Bottom into Not/Or. Top becomes `0 = 0`
// and Bottom its negation.
Formula desugar_derived(const Formula& f);

// Negation normal form over Not/Or/And. Not appears only directly above
// Eq/Perm/Forb; Top and Bottom survive as constants.
Formula to_nnf(const Formula& f);

enum class Modality { kPerm, kForb };

// prerequisite : consequent / consequent
struct NormalDefault {
  Formula prerequisite;
  Formula consequent;

  friend bool operator==(const NormalDefault&, const NormalDefault&) = default;
};

// P: antecedent ~> consequent, or the F counterpart.
struct BasicDeonticDefault {
  Modality modality;
  Action antecedent;
  Action consequent;

  NormalDefault as_normal() const;
  friend bool operator==(const BasicDeonticDefault&,
                         const BasicDeonticDefault&) = default;
};

std::optional<BasicDeonticDefault> classify(const NormalDefault& d);

struct Theory {
  Vocabulary vocabulary;
  std::vector<Formula> facts;
  std::vector<NormalDefault> defaults;

  Theory with_fact(Formula f) const;
  Theory with_facts(const std::vector<Formula>& fs) const;
  bool all_defaults_basic() const;
  // Throws PreconditionError when some default is not basic deontic.
  std::vector<BasicDeonticDefault> basic_defaults() const;
};

bool well_formed(const Action& a, const Vocabulary& vocab);
bool well_formed(const Formula& f, const Vocabulary& vocab);

std::string render(const Action& a);
std::string render(const Formula& f);
// "P: a ~> b" for basic deontic defaults, "f => g" otherwise.
std::string render(const NormalDefault& d);
std::string render(const BasicDeonticDefault& d);
std::string render(const Theory& t);

// Theory file format, see README.
Theory parse_theory(std::string_view text);
Formula parse_formula(std::string_view text, const Vocabulary& vocab);
Action parse_action(std::string_view text, const Vocabulary& vocab);
NormalDefault parse_default(std::string_view text, const Vocabulary& vocab);

}  // namespace ddal
