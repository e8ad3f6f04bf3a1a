// Lindenbaum-Tarski quotient of the action terms under a consistent theory.
//
// Two terms are identified when the theory proves them equal. A join of
// atoms is provably 0 iff each of its atoms is, so the class of a term is
// its set of alive (not provably 0) atoms and the quotient is the algebra of
// subsets of the alive atoms.
#pragma once

#include <string>
#include <vector>

#include "ddal/algebra.hpp"
#include "ddal/syntax.hpp"

namespace ddal {

// Atoms a with T ⊢ a = 0. Throws InconsistentTheoryError.
AtomSet dead_atoms(const Theory& t);

class QuotientAlgebra {
 public:
  QuotientAlgebra(Theory theory, AtomSet alive);

  const Theory& theory() const { return theory_; }
  const Vocabulary& vocabulary() const { return theory_.vocabulary; }
  const AtomSet& alive() const { return alive_; }
  AtomSet dead() const { return alive_.complement(); }

  AtomSet zero() const { return AtomSet::empty(alive_.width()); }
  const AtomSet& one() const { return alive_; }

  // [α]: the alive atoms below α.
  AtomSet class_of(const Action& a) const;
  bool is_element(const AtomSet& e) const { return e.subset_of(alive_); }
  // All elements, [0] first.
  std::vector<AtomSet> elements() const { return subsets_of(alive_); }
  std::size_t size() const { return std::size_t{1} << alive_.count(); }

  // 0, 1, or the join of the element's atom terms.
  Action canonical_term(const AtomSet& e) const;

 private:
  Theory theory_;
  AtomSet alive_;
};

QuotientAlgebra quotient(const Theory& t);

// Smallest ideal containing [α] for every provably permitted (forbidden) α.
Ideal p_lt(const Theory& t, const QuotientAlgebra& q);
Ideal f_lt(const Theory& t, const QuotientAlgebra& q);
Ideal deontic_ideal(const Theory& t, const QuotientAlgebra& q, Modality m);

// Elements below some [α] with T ⊢ ~P(α) (resp. ~F(α)), minus the
// corresponding Lindenbaum ideal.
struct DeonticDual {
  Modality modality;
  std::vector<AtomSet> members;  // ascending bit order

  bool contains(const AtomSet& e) const;
  bool empty() const { return members.empty(); }
};

DeonticDual deontic_dual(const Theory& t, const QuotientAlgebra& q, Modality m);

// e ≼ D: some e' ⊑ e belongs to D.
bool dual_below(const AtomSet& e, const DeonticDual& d);

// Everything the algebraic default semantics needs about one theory.
struct LindenbaumStructure {
  QuotientAlgebra algebra;
  Ideal permitted;
  Ideal forbidden;
  DeonticDual permitted_dual;
  DeonticDual forbidden_dual;

  const Ideal& ideal(Modality m) const {
    return m == Modality::kPerm ? permitted : forbidden;
  }
  const DeonticDual& dual(Modality m) const {
    return m == Modality::kPerm ? permitted_dual : forbidden_dual;
  }
};

LindenbaumStructure lindenbaum(const Theory& t);

// Hasse diagram of the quotient: permitted ideal filled grey, forbidden
// ideal filled pink, dual members outlined (blue for P, red for F).
std::string quotient_dot(const LindenbaumStructure& s);

}  // namespace ddal
