// Finite Boolean algebras as sets of atoms.
//
// The free Boolean algebra over n basic actions has 2^n atoms; atom i is the
// meet of literals whose polarity is read from the bits of i (bit k set means
// vocabulary symbol k occurs positively). Every element is the join of the
// atoms below it, so an element is just a bit vector over atom indices.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ddal/syntax.hpp"

namespace ddal {

// One machine word per element.
inline constexpr std::size_t kMaxActions = 6;
// Exhaustive model enumeration is 4^(2^n); keep it at 65536 models.
inline constexpr std::size_t kMaxOracleActions = 3;

struct Atom {
  std::size_t index;
  friend bool operator==(Atom, Atom) = default;
};

class AtomSet {
 public:
  AtomSet() = default;

  static AtomSet empty(std::size_t width) { return AtomSet(width, 0); }
  static AtomSet full(std::size_t width) { return AtomSet(width, mask(width)); }
  static AtomSet singleton(std::size_t width, std::size_t atom);
  static AtomSet from_bits(std::size_t width, std::uint64_t bits);

  std::size_t width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t atom) const {
    return atom < width_ && ((bits_ >> atom) & 1u);
  }
  bool is_empty() const { return bits_ == 0; }
  std::size_t count() const;
  std::vector<std::size_t> indices() const;

  AtomSet operator|(const AtomSet& o) const;
  AtomSet operator&(const AtomSet& o) const;
  AtomSet operator^(const AtomSet& o) const;
  AtomSet minus(const AtomSet& o) const;
  AtomSet complement() const { return AtomSet(width_, ~bits_ & mask(width_)); }
  bool subset_of(const AtomSet& o) const;

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
  friend auto operator<=>(const AtomSet& a, const AtomSet& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  AtomSet(std::size_t width, std::uint64_t bits) : width_(width), bits_(bits) {}
  static std::uint64_t mask(std::size_t width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }
  void check_width(const AtomSet& o) const;

  std::size_t width_ = 0;
  std::uint64_t bits_ = 0;
};

// 2^n; throws CapacityError beyond kMaxActions.
std::size_t atom_count(const Vocabulary& vocab);
std::vector<Atom> atoms(const Vocabulary& vocab);

AtomSet denote(const Action& a, const Vocabulary& vocab);

// e1 ⊑ e2, i.e. e1 = e1 · e2.
bool leq(const AtomSet& e1, const AtomSet& e2);

// Meet of literals in vocabulary order, e.g. `d * !o`.
Action atom_term(std::size_t atom, const Vocabulary& vocab);
// 0 for the empty set, 1 for the full set, otherwise the join of atom
// terms in increasing index order.
Action canonical_term(const AtomSet& e, const Vocabulary& vocab);

// All subsets of `e`, in increasing bit order (starting with the empty set).
std::vector<AtomSet> subsets_of(const AtomSet& e);

// Principal ideal of the algebra of subsets of `universe`.
class Ideal {
 public:
  Ideal(AtomSet generator, AtomSet universe);

  const AtomSet& generator() const { return generator_; }
  const AtomSet& universe() const { return universe_; }
  bool contains(const AtomSet& e) const { return leq(e, generator_); }
  std::vector<AtomSet> members() const { return subsets_of(generator_); }

  friend bool operator==(const Ideal&, const Ideal&) = default;

 private:
  AtomSet generator_;
  AtomSet universe_;
};

// Smallest ideal containing every element of `base`: the principal ideal of
// their join. Throws PreconditionError for elements outside `universe`.
Ideal generated_ideal(std::span<const AtomSet> base, const AtomSet& universe);

// I ∩ J = {0}.
bool ideal_meet_trivial(const Ideal& i, const Ideal& j);

// Hasse diagram of the subsets of `universe` in DOT syntax. `attributes`
// returns extra node attributes (without brackets), may be empty.
std::string hasse_dot(const AtomSet& universe,
                      const std::function<std::string(const AtomSet&)>& label,
                      const std::function<std::string(const AtomSet&)>& attributes,
                      const std::string& graph_name = "algebra");

}  // namespace ddal
