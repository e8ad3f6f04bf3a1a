#include "ddal/entailment.hpp"

#include <bit>
#include <map>
#include <sstream>

namespace ddal {

const char* to_string(Status s) {
  switch (s) {
    case Status::kDead: return "dead";
    case Status::kPermitted: return "permitted";
    case Status::kForbidden: return "forbidden";
    case Status::kNeutral: return "neutral";
  }
  return "?";
}

StatusModel::StatusModel(Vocabulary vocab, std::vector<Status> status)
    : vocab_(std::move(vocab)), status_(std::move(status)) {
  if (status_.size() != atom_count(vocab_))
    throw PreconditionError("status model must assign every atom");
  bool any_alive = false;
  for (Status s : status_) any_alive |= s != Status::kDead;
  if (!any_alive) throw PreconditionError("status model has no alive atom");
}

AtomSet StatusModel::with_status(Status s) const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < status_.size(); ++i)
    if (status_[i] == s) bits |= std::uint64_t{1} << i;
  return AtomSet::from_bits(status_.size(), bits);
}

AtomSet StatusModel::with_status_other_than(Status s) const {
  return with_status(s).complement();
}

std::string render(const StatusModel& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.statuses().size(); ++i)
    os << render(atom_term(i, m.vocabulary())) << " : "
       << to_string(m.status(i)) << '\n';
  return os.str();
}

namespace {

bool holds_in(const Formula& f, const Vocabulary& vocab, const AtomSet& alive,
              const AtomSet& perm, const AtomSet& forb) {
  switch (f.kind()) {
    case FormulaKind::kTop:
      return true;
    case FormulaKind::kBottom:
      return false;
    case FormulaKind::kEq:
      return (denote(f.lhs(), vocab) & alive) == (denote(f.rhs(), vocab) & alive);
    case FormulaKind::kPerm:
      return (denote(f.action(), vocab) & alive).subset_of(perm);
    case FormulaKind::kForb:
      return (denote(f.action(), vocab) & alive).subset_of(forb);
    case FormulaKind::kNot:
      return !holds_in(f.child(), vocab, alive, perm, forb);
    case FormulaKind::kOr:
      return holds_in(f.left(), vocab, alive, perm, forb) ||
             holds_in(f.right(), vocab, alive, perm, forb);
    case FormulaKind::kAnd:
      return holds_in(f.left(), vocab, alive, perm, forb) &&
             holds_in(f.right(), vocab, alive, perm, forb);
    case FormulaKind::kImplies:
      return !holds_in(f.left(), vocab, alive, perm, forb) ||
             holds_in(f.right(), vocab, alive, perm, forb);
    case FormulaKind::kIff:
      return holds_in(f.left(), vocab, alive, perm, forb) ==
             holds_in(f.right(), vocab, alive, perm, forb);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Model search.
//
// Every atomic formula says "all atoms of S have a status in A" for
// A ∈ {{Dead}, {Dead, Permitted}, {Dead, Forbidden}}. Atoms that fall in
// exactly the same sets S are interchangeable, and giving a whole class one
// status never changes the truth of those constraints, so the search runs
// over classes. Each class carries a domain of still-possible statuses.

using Domain = std::uint8_t;  // bit per Status
constexpr Domain kAll = 0xF;
constexpr Domain bit(Status s) { return Domain(1u << static_cast<unsigned>(s)); }
constexpr Domain kDeadOnly = bit(Status::kDead);
constexpr Domain kDeadOrPermitted = bit(Status::kDead) | bit(Status::kPermitted);
constexpr Domain kDeadOrForbidden = bit(Status::kDead) | bit(Status::kForbidden);

enum class Truth { kFalse, kTrue, kUnknown };

struct Node {
  enum Type { kAnd, kOr, kLit, kConst } type;
  bool value = false;       // kConst
  bool negated = false;     // kLit
  Domain allowed = 0;       // kLit
  AtomSet atoms = {};       // kLit, before class assignment
  std::uint64_t classes = 0;
  std::vector<int> children = {};
};

class Search {
 public:
  Search(const Vocabulary& vocab, std::span<const Formula> formulas)
      : vocab_(vocab), width_(atom_count(vocab)) {
    root_ = add({Node::kAnd});
    for (const Formula& f : formulas) {
      const int child = compile(to_nnf(f));
      nodes_[root_].children.push_back(child);
    }
    // Non-degenerate algebra: some atom is alive, i.e. ~(0 = 1).
    Node alive{Node::kLit};
    alive.negated = true;
    alive.allowed = kDeadOnly;
    alive.atoms = AtomSet::full(width_);
    const int a = add(alive);
    nodes_[root_].children.push_back(a);
    build_classes();
  }

  std::optional<StatusModel> run() {
    domains_.assign(class_count_, kAll);
    if (!dfs()) return std::nullopt;
    std::vector<Status> status(width_);
    for (std::size_t i = 0; i < width_; ++i)
      status[i] = static_cast<Status>(std::countr_zero(domains_[class_of_[i]]));
    return StatusModel(vocab_, std::move(status));
  }

 private:
  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  int literal(const AtomSet& atoms, Domain allowed, bool negated) {
    Node n{Node::kLit};
    n.atoms = atoms;
    n.allowed = allowed;
    n.negated = negated;
    return add(n);
  }

  int compile(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::kTop:
      case FormulaKind::kBottom: {
        Node n{Node::kConst};
        n.value = f.kind() == FormulaKind::kTop;
        return add(n);
      }
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        const int l = compile(f.left());
        const int r = compile(f.right());
        const int n = add({f.kind() == FormulaKind::kAnd ? Node::kAnd : Node::kOr});
        nodes_[n].children = {l, r};
        return n;
      }
      case FormulaKind::kNot:
        return compile_atom(f.child(), true);
      default:
        return compile_atom(f, false);
    }
  }

  int compile_atom(const Formula& f, bool negated) {
    switch (f.kind()) {
      case FormulaKind::kEq:
        return literal(denote(f.lhs(), vocab_) ^ denote(f.rhs(), vocab_),
                       kDeadOnly, negated);
      case FormulaKind::kPerm:
        return literal(denote(f.action(), vocab_), kDeadOrPermitted, negated);
      case FormulaKind::kForb:
        return literal(denote(f.action(), vocab_), kDeadOrForbidden, negated);
      default:
        throw PreconditionError("formula is not in negation normal form");
    }
  }

  void build_classes() {
    std::vector<int> lits;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].type == Node::kLit) lits.push_back(static_cast<int>(i));
    std::map<std::vector<bool>, std::size_t> signature_to_class;
    class_of_.resize(width_);
    for (std::size_t atom = 0; atom < width_; ++atom) {
      std::vector<bool> sig;
      sig.reserve(lits.size());
      for (int l : lits) sig.push_back(nodes_[l].atoms.contains(atom));
      auto [it, inserted] = signature_to_class.emplace(sig, signature_to_class.size());
      class_of_[atom] = it->second;
    }
    class_count_ = signature_to_class.size();
    for (int l : lits) {
      std::uint64_t mask = 0;
      for (std::size_t atom : nodes_[l].atoms.indices())
        mask |= std::uint64_t{1} << class_of_[atom];
      nodes_[l].classes = mask;
    }
  }

  Truth eval(int id) const {
    const Node& n = nodes_[id];
    switch (n.type) {
      case Node::kConst:
        return n.value ? Truth::kTrue : Truth::kFalse;
      case Node::kLit: {
        bool all_inside = true;
        bool some_outside = false;
        for (std::uint64_t m = n.classes; m; m &= m - 1) {
          const Domain d = domains_[std::countr_zero(m)];
          if ((d & n.allowed) == 0) some_outside = true;
          if (d & ~n.allowed & kAll) all_inside = false;
        }
        Truth t = some_outside ? Truth::kFalse
                  : all_inside ? Truth::kTrue
                               : Truth::kUnknown;
        if (n.negated && t != Truth::kUnknown)
          t = t == Truth::kTrue ? Truth::kFalse : Truth::kTrue;
        return t;
      }
      case Node::kAnd: {
        Truth acc = Truth::kTrue;
        for (int c : n.children) {
          const Truth t = eval(c);
          if (t == Truth::kFalse) return Truth::kFalse;
          if (t == Truth::kUnknown) acc = Truth::kUnknown;
        }
        return acc;
      }
      case Node::kOr: {
        Truth acc = Truth::kFalse;
        for (int c : n.children) {
          const Truth t = eval(c);
          if (t == Truth::kTrue) return Truth::kTrue;
          if (t == Truth::kUnknown) acc = Truth::kUnknown;
        }
        return acc;
      }
    }
    return Truth::kUnknown;
  }

  bool narrow(std::size_t cls, Domain keep) {
    const Domain d = domains_[cls] & keep;
    if (d != domains_[cls]) {
      domains_[cls] = d;
      changed_ = true;
    }
    return d != 0;
  }

  // Forces node `id` true. Returns false on conflict.
  bool propagate(int id) {
    const Node& n = nodes_[id];
    switch (n.type) {
      case Node::kConst:
        return n.value;
      case Node::kAnd:
        for (int c : n.children)
          if (!propagate(c)) return false;
        return true;
      case Node::kOr: {
        int open = -1;
        int open_count = 0;
        for (int c : n.children) {
          const Truth t = eval(c);
          if (t == Truth::kTrue) return true;
          if (t == Truth::kUnknown) {
            open = c;
            ++open_count;
          }
        }
        if (open_count == 0) return false;
        if (open_count == 1) return propagate(open);
        return true;
      }
      case Node::kLit: {
        if (!n.negated) {
          for (std::uint64_t m = n.classes; m; m &= m - 1)
            if (!narrow(std::countr_zero(m), n.allowed)) return false;
          return true;
        }
        const Domain outside = ~n.allowed & kAll;
        int candidate = -1;
        int candidates = 0;
        for (std::uint64_t m = n.classes; m; m &= m - 1) {
          const int c = std::countr_zero(m);
          const Domain d = domains_[c];
          if ((d & n.allowed) == 0) return true;  // already witnessed
          if (d & outside) {
            candidate = c;
            ++candidates;
          }
        }
        if (candidates == 0) return false;
        if (candidates == 1) return narrow(candidate, outside);
        return true;
      }
    }
    return false;
  }

  bool dfs() {
    do {
      changed_ = false;
      if (!propagate(root_)) return false;
    } while (changed_);

    std::size_t branch = class_count_;
    for (std::size_t c = 0; c < class_count_; ++c) {
      if (std::popcount(domains_[c]) > 1) {
        branch = c;
        break;
      }
    }
    if (branch == class_count_) return eval(root_) == Truth::kTrue;

    const std::vector<Domain> saved = domains_;
    for (unsigned s = 0; s < 4; ++s) {
      if (!(saved[branch] & (1u << s))) continue;
      domains_[branch] = Domain(1u << s);
      if (dfs()) return true;
      domains_ = saved;
    }
    return false;
  }

  const Vocabulary& vocab_;
  std::size_t width_;
  std::vector<Node> nodes_;
  int root_ = 0;
  std::vector<std::size_t> class_of_;
  std::size_t class_count_ = 0;
  std::vector<Domain> domains_;
  bool changed_ = false;
};

}  // namespace

bool satisfies(const StatusModel& m, const Formula& f) {
  return holds_in(f, m.vocabulary(), m.alive(), m.permitted(), m.forbidden());
}

std::optional<StatusModel> find_model(const Vocabulary& vocab,
                                      std::span<const Formula> formulas) {
  return Search(vocab, formulas).run();
}

EntailmentVerdict entails(const Vocabulary& vocab,
                          std::span<const Formula> facts, const Formula& query) {
  std::vector<Formula> goal(facts.begin(), facts.end());
  goal.push_back(negation(query));
  auto model = find_model(vocab, goal);
  if (!model) return {true, std::nullopt};
  return {false, std::move(model)};
}

EntailmentVerdict entails(const Theory& t, const Formula& query) {
  return entails(t.vocabulary, t.facts, query);
}

bool consistent(const Vocabulary& vocab, std::span<const Formula> facts) {
  return find_model(vocab, facts).has_value();
}

bool consistent(const Theory& t) { return consistent(t.vocabulary, t.facts); }

}  // namespace ddal
