#include <doctest.h>

#include <set>

#include "ddal/algebra.hpp"
#include "ddal/crosscheck.hpp"

using namespace ddal;

namespace {

const Vocabulary kDO({"d", "o"});

// Truth of term `a` under the assignment encoded by atom index `atom`.
bool holds_at(const Action& a, const Vocabulary& v, std::size_t atom) {
  switch (a.kind()) {
    case ActionKind::kBasic: return (atom >> *v.index_of(a.symbol())) & 1u;
    case ActionKind::kZero: return false;
    case ActionKind::kOne: return true;
    case ActionKind::kJoin: return holds_at(a.left(), v, atom) || holds_at(a.right(), v, atom);
    case ActionKind::kMeet: return holds_at(a.left(), v, atom) && holds_at(a.right(), v, atom);
    case ActionKind::kComplement: return !holds_at(a.child(), v, atom);
  }
  return false;
}

}  // namespace

TEST_CASE("atoms of the free algebra") {
  CHECK(atom_count(kDO) == 4);
  CHECK(atoms(kDO).size() == 4);
  CHECK(render(atom_term(0, kDO)) == "!d * !o");
  CHECK(render(atom_term(1, kDO)) == "d * !o");
  CHECK(render(atom_term(2, kDO)) == "!d * o");
  CHECK(render(atom_term(3, kDO)) == "d * o");
  CHECK_THROWS_AS(atom_count(Vocabulary({"a", "b", "c", "d", "e", "f", "g"})), CapacityError);
}

TEST_CASE("denotation") {
  const Action d = Action::basic("d");
  const Action o = Action::basic("o");
  CHECK(denote(d, kDO).bits() == 0b1010);
  CHECK(denote(o, kDO).bits() == 0b1100);
  CHECK(denote(join(d, o), kDO).bits() == 0b1110);
  CHECK(denote(meet(d, o), kDO).bits() == 0b1000);
  CHECK(denote(complement(d), kDO).bits() == 0b0101);
  CHECK(denote(Action::zero(), kDO).is_empty());
  CHECK(denote(Action::one(), kDO) == AtomSet::full(4));
  CHECK(denote(desugar_equiv(d, o), kDO).bits() == 0b1001);
  CHECK(denote(desugar_nequiv(d, o), kDO).bits() == 0b0110);
}

TEST_CASE("denotation agrees with pointwise evaluation on random terms") {
  const Vocabulary v({"a", "b", "c"});
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    InstanceGenerator g(seed, v);
    const Action a = g.action(3);
    const AtomSet s = denote(a, v);
    for (std::size_t atom = 0; atom < 8; ++atom) CHECK(s.contains(atom) == holds_at(a, v, atom));
  }
}

TEST_CASE("canonical terms denote their element") {
  const Vocabulary v({"a", "b", "c"});
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    const AtomSet e = AtomSet::from_bits(8, bits);
    CHECK(denote(canonical_term(e, v), v) == e);
  }
  CHECK(render(canonical_term(AtomSet::from_bits(4, 0b0110), kDO)) == "d * !o + !d * o");
  CHECK(canonical_term(AtomSet::empty(4), kDO) == Action::zero());
  CHECK(canonical_term(AtomSet::full(4), kDO) == Action::one());
}

TEST_CASE("atom sets") {
  const AtomSet a = AtomSet::from_bits(4, 0b0011);
  const AtomSet b = AtomSet::from_bits(4, 0b0110);
  CHECK((a | b).bits() == 0b0111);
  CHECK((a & b).bits() == 0b0010);
  CHECK((a ^ b).bits() == 0b0101);
  CHECK(a.minus(b).bits() == 0b0001);
  CHECK(a.complement().bits() == 0b1100);
  CHECK(a.count() == 2);
  CHECK(a.indices() == std::vector<std::size_t>{0, 1});
  CHECK(leq(AtomSet::from_bits(4, 0b0001), a));
  CHECK_FALSE(leq(a, b));
  CHECK_THROWS_AS(a | AtomSet::empty(8), PreconditionError);
}

TEST_CASE("subsets and ideals") {
  const AtomSet u = AtomSet::from_bits(8, 0b10110);
  const auto subs = subsets_of(u);
  CHECK(subs.size() == 8);
  CHECK(subs.front().is_empty());
  CHECK(subs.back() == u);
  CHECK(std::is_sorted(subs.begin(), subs.end()));
  CHECK(std::set<AtomSet>(subs.begin(), subs.end()).size() == 8);

  const std::vector<AtomSet> base = {AtomSet::from_bits(8, 0b00010),
                                     AtomSet::from_bits(8, 0b00100)};
  const Ideal i = generated_ideal(base, u);
  CHECK(i.generator().bits() == 0b00110);
  CHECK(i.members().size() == 4);
  CHECK(i.contains(AtomSet::from_bits(8, 0b00100)));
  CHECK_FALSE(i.contains(AtomSet::from_bits(8, 0b10000)));
  CHECK(ideal_meet_trivial(i, Ideal(AtomSet::from_bits(8, 0b10000), u)));
  CHECK_FALSE(ideal_meet_trivial(i, Ideal(AtomSet::from_bits(8, 0b10100), u)));
  const std::vector<AtomSet> outside = {AtomSet::from_bits(8, 0b1)};
  CHECK_THROWS_AS(generated_ideal(outside, u), PreconditionError);
}

TEST_CASE("Hasse diagram") {
  const std::string dot = hasse_dot(
      AtomSet::full(2), [](const AtomSet& e) { return std::to_string(e.bits()); },
      [](const AtomSet&) { return std::string(); }, "g");
  CHECK(dot.rfind("digraph \"g\" {", 0) == 0);
  // Four elements, four cover edges.
  std::size_t nodes = 0, edges = 0;
  for (std::size_t p = dot.find("label="); p != std::string::npos; p = dot.find("label=", p + 1))
    ++nodes;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1))
    ++edges;
  CHECK(nodes == 4);
  CHECK(edges == 4);
}
