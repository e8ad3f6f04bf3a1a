#include "ddal/syntax.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ddal {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
            message),
      detail_(message),
      line_(line),
      column_(column) {}

bool is_reserved_word(std::string_view name) {
  return name == "P" || name == "F" || name == "true" || name == "false" ||
         name == "0" || name == "1";
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) {
    return alpha(c) || digit(c) || c == '_';
  });
}

Vocabulary::Vocabulary(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw PreconditionError("empty vocabulary");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (is_reserved_word(s))
      throw PreconditionError("reserved word used as action: " + s);
    if (!is_valid_identifier(s))
      throw PreconditionError("invalid action identifier: " + s);
    if (!seen.insert(s).second)
      throw PreconditionError("duplicate action: " + s);
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Actions

Action Action::basic(std::string symbol) {
  return Action(std::make_shared<const Node>(
      Node{ActionKind::kBasic, std::move(symbol), {}}));
}

Action Action::zero() {
  static const Action z(
      std::make_shared<const Node>(Node{ActionKind::kZero, "", {}}));
  return z;
}

Action Action::one() {
  static const Action o(
      std::make_shared<const Node>(Node{ActionKind::kOne, "", {}}));
  return o;
}

Action join(Action a, Action b) {
  return Action(std::make_shared<const Action::Node>(Action::Node{
      ActionKind::kJoin, "", {std::move(a), std::move(b)}}));
}

Action meet(Action a, Action b) {
  return Action(std::make_shared<const Action::Node>(Action::Node{
      ActionKind::kMeet, "", {std::move(a), std::move(b)}}));
}

Action complement(Action a) {
  return Action(std::make_shared<const Action::Node>(
      Action::Node{ActionKind::kComplement, "", {std::move(a)}}));
}

bool operator==(const Action& a, const Action& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->symbol == b.node_->symbol &&
         a.node_->children == b.node_->children;
}

Action desugar_equiv(const Action& a, const Action& b) {
  return join(meet(a, b), meet(complement(a), complement(b)));
}

Action desugar_nequiv(const Action& a, const Action& b) {
  return join(meet(a, complement(b)), meet(complement(a), b));
}

// ---------------------------------------------------------------------------
// Formulas

Formula Formula::make(FormulaKind kind, std::vector<Formula> formulas,
                      std::vector<Action> actions) {
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(formulas), std::move(actions)}));
}

Formula Formula::top() {
  static const Formula t = make(FormulaKind::kTop, {}, {});
  return t;
}

Formula Formula::bottom() {
  static const Formula f = make(FormulaKind::kBottom, {}, {});
  return f;
}

Formula Formula::eq(Action a, Action b) {
  return make(FormulaKind::kEq, {}, {std::move(a), std::move(b)});
}

Formula Formula::perm(Action a) {
  return make(FormulaKind::kPerm, {}, {std::move(a)});
}

Formula Formula::forb(Action a) {
  return make(FormulaKind::kForb, {}, {std::move(a)});
}

Formula negation(Formula f) {
  return Formula::make(FormulaKind::kNot, {std::move(f)}, {});
}

Formula disjunction(Formula a, Formula b) {
  return Formula::make(FormulaKind::kOr, {std::move(a), std::move(b)}, {});
}

Formula conjunction(Formula a, Formula b) {
  return Formula::make(FormulaKind::kAnd, {std::move(a), std::move(b)}, {});
}

Formula implication(Formula a, Formula b) {
  return Formula::make(FormulaKind::kImplies, {std::move(a), std::move(b)},
                       {});
}

Formula biconditional(Formula a, Formula b) {
  return Formula::make(FormulaKind::kIff, {std::move(a), std::move(b)}, {});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind &&
         a.node_->formulas == b.node_->formulas &&
         a.node_->actions == b.node_->actions;
}

Formula conjunction_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

Formula desugar_derived(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kTop:
      return Formula::eq(Action::zero(), Action::zero());
    case FormulaKind::kBottom:
      return negation(Formula::eq(Action::zero(), Action::zero()));
    case FormulaKind::kEq:
    case FormulaKind::kPerm:
    case FormulaKind::kForb:
      return f;
    case FormulaKind::kNot:
      return negation(desugar_derived(f.child()));
    case FormulaKind::kOr:
      return disjunction(desugar_derived(f.left()), desugar_derived(f.right()));
    case FormulaKind::kAnd:
      return negation(disjunction(negation(desugar_derived(f.left())),
                                  negation(desugar_derived(f.right()))));
    case FormulaKind::kImplies:
      return disjunction(negation(desugar_derived(f.left())),
                         desugar_derived(f.right()));
    case FormulaKind::kIff: {
      Formula l = desugar_derived(f.left());
      Formula r = desugar_derived(f.right());
      // (l -> r) /\ (r -> l)
      return negation(disjunction(negation(disjunction(negation(l), r)),
                                  negation(disjunction(negation(r), l))));
    }
  }
  return f;
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::kTop:
      return negate ? Formula::bottom() : Formula::top();
    case FormulaKind::kBottom:
      return negate ? Formula::top() : Formula::bottom();
    case FormulaKind::kEq:
    case FormulaKind::kPerm:
    case FormulaKind::kForb:
      return negate ? negation(f) : f;
    case FormulaKind::kNot:
      return nnf(f.child(), !negate);
    case FormulaKind::kOr:
      return negate ? conjunction(nnf(f.left(), true), nnf(f.right(), true))
                    : disjunction(nnf(f.left(), false), nnf(f.right(), false));
    case FormulaKind::kAnd:
      return negate ? disjunction(nnf(f.left(), true), nnf(f.right(), true))
                    : conjunction(nnf(f.left(), false), nnf(f.right(), false));
    case FormulaKind::kImplies:
      return negate ? conjunction(nnf(f.left(), false), nnf(f.right(), true))
                    : disjunction(nnf(f.left(), true), nnf(f.right(), false));
    case FormulaKind::kIff: {
      // l <-> r  ==  (l /\ r) \/ (~l /\ ~r);  its negation swaps one side.
      const Formula& l = f.left();
      const Formula& r = f.right();
      if (negate)
        return disjunction(conjunction(nnf(l, false), nnf(r, true)),
                           conjunction(nnf(l, true), nnf(r, false)));
      return disjunction(conjunction(nnf(l, false), nnf(r, false)),
                         conjunction(nnf(l, true), nnf(r, true)));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

// ---------------------------------------------------------------------------
// Defaults and theories

NormalDefault BasicDeonticDefault::as_normal() const {
  if (modality == Modality::kPerm)
    return {Formula::perm(antecedent), Formula::perm(consequent)};
  return {Formula::forb(antecedent), Formula::forb(consequent)};
}

std::optional<BasicDeonticDefault> classify(const NormalDefault& d) {
  const auto pk = d.prerequisite.kind();
  const auto ck = d.consequent.kind();
  if (pk == FormulaKind::kPerm && ck == FormulaKind::kPerm)
    return BasicDeonticDefault{Modality::kPerm, d.prerequisite.action(),
                               d.consequent.action()};
  if (pk == FormulaKind::kForb && ck == FormulaKind::kForb)
    return BasicDeonticDefault{Modality::kForb, d.prerequisite.action(),
                               d.consequent.action()};
  return std::nullopt;
}

Theory Theory::with_fact(Formula f) const {
  Theory t = *this;
  t.facts.push_back(std::move(f));
  return t;
}

Theory Theory::with_facts(const std::vector<Formula>& fs) const {
  Theory t = *this;
  t.facts.insert(t.facts.end(), fs.begin(), fs.end());
  return t;
}

bool Theory::all_defaults_basic() const {
  return std::all_of(defaults.begin(), defaults.end(),
                     [](const NormalDefault& d) { return classify(d).has_value(); });
}

std::vector<BasicDeonticDefault> Theory::basic_defaults() const {
  std::vector<BasicDeonticDefault> out;
  for (const auto& d : defaults) {
    auto b = classify(d);
    if (!b)
      throw PreconditionError("default is not basic deontic: " + render(d));
    out.push_back(*b);
  }
  return out;
}

bool well_formed(const Action& a, const Vocabulary& vocab) {
  switch (a.kind()) {
    case ActionKind::kBasic:
      return vocab.index_of(a.symbol()).has_value();
    case ActionKind::kZero:
    case ActionKind::kOne:
      return true;
    case ActionKind::kComplement:
      return well_formed(a.child(), vocab);
    case ActionKind::kJoin:
    case ActionKind::kMeet:
      return well_formed(a.left(), vocab) && well_formed(a.right(), vocab);
  }
  return false;
}

bool well_formed(const Formula& f, const Vocabulary& vocab) {
  switch (f.kind()) {
    case FormulaKind::kTop:
    case FormulaKind::kBottom:
      return true;
    case FormulaKind::kEq:
      return well_formed(f.lhs(), vocab) && well_formed(f.rhs(), vocab);
    case FormulaKind::kPerm:
    case FormulaKind::kForb:
      return well_formed(f.action(), vocab);
    case FormulaKind::kNot:
      return well_formed(f.child(), vocab);
    default:
      return well_formed(f.left(), vocab) && well_formed(f.right(), vocab);
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence, loosest first: action + < * < !; formula <-> < -> <
// \/ < /\ < ~. Binary operators associate to the left except ->.

namespace {

int action_prec(const Action& a) {
  switch (a.kind()) {
    case ActionKind::kJoin:
      return 1;
    case ActionKind::kMeet:
      return 2;
    case ActionKind::kComplement:
      return 3;
    default:
      return 4;
  }
}

void print_action(const Action& a, std::ostream& os) {
  auto sub = [&os](const Action& c, bool paren) {
    if (paren) os << '(';
    print_action(c, os);
    if (paren) os << ')';
  };
  const int p = action_prec(a);
  switch (a.kind()) {
    case ActionKind::kBasic:
      os << a.symbol();
      break;
    case ActionKind::kZero:
      os << '0';
      break;
    case ActionKind::kOne:
      os << '1';
      break;
    case ActionKind::kComplement:
      os << '!';
      sub(a.child(), action_prec(a.child()) < p);
      break;
    case ActionKind::kJoin:
    case ActionKind::kMeet:
      sub(a.left(), action_prec(a.left()) < p);
      os << (a.kind() == ActionKind::kJoin ? " + " : " * ");
      sub(a.right(), action_prec(a.right()) <= p);
      break;
  }
}

int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kIff:
      return 1;
    case FormulaKind::kImplies:
      return 2;
    case FormulaKind::kOr:
      return 3;
    case FormulaKind::kAnd:
      return 4;
    case FormulaKind::kNot:
      return 5;
    default:
      return 6;
  }
}

void print_formula(const Formula& f, std::ostream& os) {
  auto sub = [&os](const Formula& c, bool paren) {
    if (paren) os << '(';
    print_formula(c, os);
    if (paren) os << ')';
  };
  const int p = formula_prec(f);
  switch (f.kind()) {
    case FormulaKind::kTop:
      os << "true";
      break;
    case FormulaKind::kBottom:
      os << "false";
      break;
    case FormulaKind::kEq:
      print_action(f.lhs(), os);
      os << " = ";
      print_action(f.rhs(), os);
      break;
    case FormulaKind::kPerm:
    case FormulaKind::kForb:
      os << (f.kind() == FormulaKind::kPerm ? "P(" : "F(");
      print_action(f.action(), os);
      os << ')';
      break;
    case FormulaKind::kNot:
      os << '~';
      sub(f.child(), formula_prec(f.child()) < p || f.child().kind() == FormulaKind::kEq);
      break;
    case FormulaKind::kImplies:
      sub(f.left(), formula_prec(f.left()) <= p);
      os << " -> ";
      sub(f.right(), formula_prec(f.right()) < p);
      break;
    default: {
      const char* op = f.kind() == FormulaKind::kIff  ? " <-> "
                       : f.kind() == FormulaKind::kOr ? " \\/ "
                                                      : " /\\ ";
      sub(f.left(), formula_prec(f.left()) < p);
      os << op;
      sub(f.right(), formula_prec(f.right()) <= p);
    }
  }
}

}  // namespace

std::string render(const Action& a) {
  std::ostringstream os;
  print_action(a, os);
  return os.str();
}

std::string render(const Formula& f) {
  std::ostringstream os;
  print_formula(f, os);
  return os.str();
}

std::string render(const BasicDeonticDefault& d) {
  return std::string(d.modality == Modality::kPerm ? "P: " : "F: ") +
         render(d.antecedent) + " ~> " + render(d.consequent);
}

std::string render(const NormalDefault& d) {
  if (auto b = classify(d)) return render(*b);
  return render(d.prerequisite) + " => " + render(d.consequent);
}

std::string render(const Theory& t) {
  std::ostringstream os;
  os << "actions";
  for (const auto& s : t.vocabulary.symbols()) os << ' ' << s;
  os << '\n';
  for (const auto& f : t.facts) os << "fact " << render(f) << '\n';
  for (const auto& d : t.defaults) os << "default " << render(d) << '\n';
  return os.str();
}

}  // namespace ddal
