#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

#include "compiled_formula.hpp"
#include "ddal/defaults.hpp"

namespace ddal {
namespace {

struct Rule {
  Modality modality;
  AtomSet antecedent;  // [α]
  AtomSet consequent;  // [β]
};

std::vector<Rule> rules_of(const LindenbaumStructure& s,
                           const std::vector<BasicDeonticDefault>& ds) {
  std::vector<Rule> out;
  for (const BasicDeonticDefault& d : ds)
    out.push_back({d.modality, s.algebra.class_of(d.antecedent),
                   s.algebra.class_of(d.consequent)});
  return out;
}

// Generators of the P and F ideals.
using Pair = std::pair<AtomSet, AtomSet>;

// Whether `r` may add its consequent to `own` (the ideal of its modality)
// given `other` (the opposite ideal).
bool admissible(const LindenbaumStructure& s, const Rule& r, const AtomSet& own,
                const AtomSet& other, bool check_duals) {
  if (!((own | r.consequent) & other).is_empty()) return false;
  return !(check_duals && dual_below(r.consequent, s.dual(r.modality)));
}

class ExtensionSearch {
 public:
  ExtensionSearch(const LindenbaumStructure& s, std::vector<BasicDeonticDefault> ds,
                  const AlgebraicOptions& opts)
      : s_(s), defaults_(std::move(ds)), rules_(rules_of(s, defaults_)), opts_(opts) {}

  std::vector<ExtensionPair> run() {
    std::vector<BasicDeonticDefault> path;
    visit({s_.permitted.generator(), s_.forbidden.generator()}, path);
    std::vector<ExtensionPair> out;
    for (auto& [pair, provenance] : terminals_)
      out.push_back({Ideal(pair.first, s_.algebra.alive()),
                     Ideal(pair.second, s_.algebra.alive()), provenance});
    return out;
  }

 private:
  void visit(const Pair& state, std::vector<BasicDeonticDefault>& path) {
    if (!seen_.insert(state).second) return;
    bool moved = false;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const Rule& r = rules_[i];
      const bool perm = r.modality == Modality::kPerm;
      const AtomSet& own = perm ? state.first : state.second;
      const AtomSet& other = perm ? state.second : state.first;
      if (!r.antecedent.subset_of(own) || r.consequent.subset_of(own)) continue;
      if (!admissible(s_, r, own, other, opts_.check_duals)) continue;
      moved = true;
      Pair next = state;
      (perm ? next.first : next.second) = own | r.consequent;
      path.push_back(defaults_[i]);
      visit(next, path);
      path.pop_back();
    }
    if (!moved) terminals_.emplace(state, path);
  }

  const LindenbaumStructure& s_;
  std::vector<BasicDeonticDefault> defaults_;
  std::vector<Rule> rules_;
  AlgebraicOptions opts_;
  std::set<Pair> seen_;
  std::map<Pair, std::vector<BasicDeonticDefault>> terminals_;
};

void require_over(const QuotientAlgebra& q, const Ideal& i) {
  if (!(i.universe() == q.alive()) || !q.is_element(i.generator()))
    throw PreconditionError("ideal is not over this quotient");
}

}  // namespace

std::vector<ExtensionPair> algebraic_extensions(const LindenbaumStructure& s,
                                                const AlgebraicOptions& opts) {
  const Theory& t = s.algebra.theory();
  if (t.defaults.size() > kMaxDefaults)
    throw CapacityError("at most " + std::to_string(kMaxDefaults) +
                        " defaults are supported");
  return ExtensionSearch(s, t.basic_defaults(), opts).run();
}

std::vector<ExtensionPair> algebraic_extensions(const Theory& t,
                                                const AlgebraicOptions& opts) {
  (void)t.basic_defaults();
  return algebraic_extensions(lindenbaum(t), opts);
}

bool is_fixpoint(const LindenbaumStructure& s, const Ideal& permitted,
                 const Ideal& forbidden, const AlgebraicOptions& opts) {
  require_over(s.algebra, permitted);
  require_over(s.algebra, forbidden);
  const AtomSet& p = permitted.generator();
  const AtomSet& f = forbidden.generator();
  const auto rules = rules_of(s, s.algebra.theory().basic_defaults());
  AtomSet least_p = s.permitted.generator();
  AtomSet least_f = s.forbidden.generator();
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : rules) {
      const bool perm = r.modality == Modality::kPerm;
      AtomSet& grown = perm ? least_p : least_f;
      if (!r.antecedent.subset_of(grown) || r.consequent.subset_of(grown)) continue;
      if (!admissible(s, r, perm ? p : f, perm ? f : p, opts.check_duals)) continue;
      grown = grown | r.consequent;
      changed = true;
    }
  }
  return least_p == p && least_f == f;
}

bool satisfies_in_algebra(const QuotientAlgebra& q, const Ideal& permitted,
                          const Ideal& forbidden, const Formula& f) {
  require_over(q, permitted);
  require_over(q, forbidden);
  if (!ideal_meet_trivial(permitted, forbidden))
    throw PreconditionError("permitted and forbidden ideals overlap");
  const auto c = detail::compile_formula(f, q.vocabulary());
  return detail::evaluate(c, q.alive().bits(), permitted.generator().bits(),
                          forbidden.generator().bits());
}

bool algebraic_entails(const LindenbaumStructure& s,
                       const std::vector<ExtensionPair>& extensions,
                       const Formula& f) {
  const std::uint64_t alive = s.algebra.alive().bits();
  const auto c = detail::compile_formula(f, s.algebra.vocabulary());
  for (const ExtensionPair& e : extensions) {
    const std::uint64_t p = e.permitted.generator().bits();
    const std::uint64_t q = e.forbidden.generator().bits();
    const auto free_atoms = s.algebra.alive().minus(e.permitted.generator())
                                .minus(e.forbidden.generator())
                                .indices();
    // Each free atom joins P', joins F', or stays out of both.
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free_atoms.size(); ++i) combos *= 3;
    bool robust = true;
    for (std::size_t code = 0; code < combos && robust; ++code) {
      std::uint64_t pp = p, qq = q;
      std::size_t rest = code;
      for (std::size_t atom : free_atoms) {
        const std::size_t choice = rest % 3;
        rest /= 3;
        if (choice == 1) pp |= std::uint64_t{1} << atom;
        if (choice == 2) qq |= std::uint64_t{1} << atom;
      }
      robust = detail::evaluate(c, alive, pp, qq);
    }
    if (robust) return true;
  }
  return false;
}

bool algebraic_entails(const Theory& t, const Formula& f,
                       const AlgebraicOptions& opts) {
  const LindenbaumStructure s = lindenbaum(t);
  return algebraic_entails(s, algebraic_extensions(s, opts), f);
}

}  // namespace ddal
