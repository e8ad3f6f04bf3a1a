#include "ddal/lindenbaum.hpp"

#include <algorithm>

#include "ddal/entailment.hpp"

namespace ddal {

AtomSet dead_atoms(const Theory& t) {
  if (!consistent(t)) throw InconsistentTheoryError();
  const std::size_t width = atom_count(t.vocabulary);
  AtomSet dead = AtomSet::empty(width);
  for (std::size_t a = 0; a < width; ++a) {
    const Formula is_zero = Formula::eq(atom_term(a, t.vocabulary), Action::zero());
    if (entails(t, is_zero).holds) dead = dead | AtomSet::singleton(width, a);
  }
  return dead;
}

QuotientAlgebra::QuotientAlgebra(Theory theory, AtomSet alive)
    : theory_(std::move(theory)), alive_(alive) {}

AtomSet QuotientAlgebra::class_of(const Action& a) const {
  return denote(a, theory_.vocabulary) & alive_;
}

Action QuotientAlgebra::canonical_term(const AtomSet& e) const {
  if (!is_element(e)) throw PreconditionError("not an element of the quotient");
  if (e.is_empty()) return Action::zero();
  if (e == alive_) return Action::one();
  return ddal::canonical_term(e, theory_.vocabulary);
}

QuotientAlgebra quotient(const Theory& t) {
  return QuotientAlgebra(t, dead_atoms(t).complement());
}

Ideal deontic_ideal(const Theory& t, const QuotientAlgebra& q, Modality m) {
  AtomSet gen = q.zero();
  for (std::size_t a : q.alive().indices()) {
    const Action term = atom_term(a, t.vocabulary);
    const Formula f = m == Modality::kPerm ? Formula::perm(term) : Formula::forb(term);
    if (entails(t, f).holds) gen = gen | AtomSet::singleton(gen.width(), a);
  }
  return Ideal(gen, q.alive());
}

Ideal p_lt(const Theory& t, const QuotientAlgebra& q) {
  return deontic_ideal(t, q, Modality::kPerm);
}

Ideal f_lt(const Theory& t, const QuotientAlgebra& q) {
  return deontic_ideal(t, q, Modality::kForb);
}

bool DeonticDual::contains(const AtomSet& e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

DeonticDual deontic_dual(const Theory& t, const QuotientAlgebra& q, Modality m) {
  const Ideal ideal = deontic_ideal(t, q, m);
  const auto elements = q.elements();
  std::vector<AtomSet> refuted;  // x with T ⊢ ~P(x)
  for (const AtomSet& x : elements) {
    const Action term = q.canonical_term(x);
    const Formula f = m == Modality::kPerm ? Formula::perm(term) : Formula::forb(term);
    if (entails(t, negation(f)).holds) refuted.push_back(x);
  }
  DeonticDual dual{m, {}};
  for (const AtomSet& e : elements) {
    if (ideal.contains(e)) continue;
    const bool below = std::any_of(refuted.begin(), refuted.end(),
                                   [&](const AtomSet& x) { return leq(e, x); });
    if (below) dual.members.push_back(e);
  }
  std::sort(dual.members.begin(), dual.members.end());
  return dual;
}

bool dual_below(const AtomSet& e, const DeonticDual& d) {
  return std::any_of(d.members.begin(), d.members.end(),
                     [&](const AtomSet& m) { return leq(m, e); });
}

LindenbaumStructure lindenbaum(const Theory& t) {
  QuotientAlgebra q = quotient(t);
  Ideal p = p_lt(t, q);
  Ideal f = f_lt(t, q);
  DeonticDual pd = deontic_dual(t, q, Modality::kPerm);
  DeonticDual fd = deontic_dual(t, q, Modality::kForb);
  return {std::move(q), p, f, std::move(pd), std::move(fd)};
}

std::string quotient_dot(const LindenbaumStructure& s) {
  const QuotientAlgebra& q = s.algebra;
  auto label = [&](const AtomSet& e) {
    return "[" + render(q.canonical_term(e)) + "]";
  };
  auto attributes = [&](const AtomSet& e) {
    std::string out;
    const bool in_p = s.permitted.contains(e);
    const bool in_f = s.forbidden.contains(e);
    if (in_p && in_f)
      out = "style=filled, fillcolor=\"lightgray:lightpink\"";
    else if (in_p)
      out = "style=filled, fillcolor=\"lightgray\"";
    else if (in_f)
      out = "style=filled, fillcolor=\"lightpink\"";
    const bool in_pd = s.permitted_dual.contains(e);
    const bool in_fd = s.forbidden_dual.contains(e);
    if (in_pd || in_fd) {
      if (!out.empty()) out += ", ";
      out += std::string("penwidth=2, color=\"") +
             (in_pd && in_fd ? "purple" : in_pd ? "blue" : "red") + "\"";
    }
    return out;
  };
  return hasse_dot(q.alive(), label, attributes, "quotient");
}

}  // namespace ddal
