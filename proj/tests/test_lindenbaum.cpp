#include <doctest.h>

#include "ddal/crosscheck.hpp"
#include "ddal/entailment.hpp"
#include "ddal/lindenbaum.hpp"
#include "oracles.hpp"

using namespace ddal;

namespace {

const char* kRoad = "actions d o\nfact (d == o) = 0\nfact P(d)\n";

AtomSet bits(std::uint64_t b) { return AtomSet::from_bits(4, b); }

}  // namespace

TEST_CASE("road quotient") {
  const Theory t = parse_theory(kRoad);
  const LindenbaumStructure s = lindenbaum(t);
  const QuotientAlgebra& q = s.algebra;
  // d * o and !d * !o are provably 0.
  CHECK(q.dead() == bits(0b1001));
  CHECK(q.alive() == bits(0b0110));
  CHECK(q.size() == 4);
  CHECK(q.class_of(Action::basic("d")) == bits(0b0010));
  CHECK(q.class_of(Action::basic("o")) == bits(0b0100));
  CHECK(q.class_of(parse_action("d + o", t.vocabulary)) == q.one());
  CHECK(q.class_of(parse_action("!d", t.vocabulary)) == q.class_of(Action::basic("o")));
  CHECK(render(q.canonical_term(bits(0b0010))) == "d * !o");
  CHECK(q.canonical_term(q.one()) == Action::one());
  CHECK_THROWS_AS(q.canonical_term(bits(0b0001)), PreconditionError);

  CHECK(s.permitted.generator() == bits(0b0010));
  CHECK(s.forbidden.generator().is_empty());
  CHECK(s.permitted_dual.empty());
  CHECK(s.forbidden_dual.empty());
}

TEST_CASE("road quotient with overtaking not permitted") {
  const Theory t = parse_theory(std::string(kRoad) + "fact ~P(o)\n");
  const LindenbaumStructure s = lindenbaum(t);
  CHECK(s.algebra.alive() == bits(0b0110));
  CHECK(s.permitted.generator() == bits(0b0010));
  CHECK(s.forbidden.generator().is_empty());
  // Below [o] or [1], outside P_LT.
  CHECK(s.permitted_dual.members == std::vector<AtomSet>{bits(0b0100), bits(0b0110)});
  CHECK(s.forbidden_dual.empty());
  CHECK(dual_below(bits(0b0100), s.permitted_dual));
  CHECK(dual_below(bits(0b0110), s.permitted_dual));
  CHECK_FALSE(dual_below(bits(0b0010), s.permitted_dual));
}

TEST_CASE("quotient of an inconsistent theory") {
  CHECK_THROWS_AS(lindenbaum(parse_theory("actions a\nfact P(a)\nfact ~P(a)\n")),
                  InconsistentTheoryError);
}

TEST_CASE("free algebra on one generator") {
  const Theory t = parse_theory("actions a\n");
  const LindenbaumStructure s = lindenbaum(t);
  CHECK(s.algebra.size() == 4);
  CHECK(s.permitted.generator().is_empty());
  CHECK(s.forbidden.generator().is_empty());
  const std::string dot = quotient_dot(s);
  CHECK(dot.find("[label=\"[0]\"") != std::string::npos);
  CHECK(dot.find("[label=\"[1]\"") != std::string::npos);
  CHECK(dot.find("[label=\"[a]\"") != std::string::npos);
  CHECK(dot.find("[label=\"[!a]\"") != std::string::npos);
}

TEST_CASE("road DOT marks the ideals") {
  const std::string dot = quotient_dot(lindenbaum(parse_theory(kRoad)));
  CHECK(dot.find("n0 [label=\"[0]\", style=filled, fillcolor=\"lightgray:lightpink\"]") !=
        std::string::npos);
  CHECK(dot.find("n2 [label=\"[d * !o]\", style=filled, fillcolor=\"lightgray\"]") !=
        std::string::npos);
  CHECK(dot.find("n6 [label=\"[1]\"]") != std::string::npos);
}

TEST_CASE("quotient laws against the brute force") {
  CrosscheckConfig cfg;
  cfg.max_actions = 2;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const Instance inst = random_instance(seed, cfg);
    const Theory& t = inst.theory;
    const testing::BruteForce bf(t.vocabulary);
    const LindenbaumStructure s = lindenbaum(t);
    CAPTURE(render(t));
    InstanceGenerator g(seed, t.vocabulary);
    const Action a = g.action();
    const Action b = g.action();
    CHECK(bf.entails(t.facts, Formula::eq(a, b)) ==
          (s.algebra.class_of(a) == s.algebra.class_of(b)));
    for (const AtomSet& e : s.algebra.elements()) {
      const Action term = s.algebra.canonical_term(e);
      CHECK(s.permitted.contains(e) == bf.entails(t.facts, Formula::perm(term)));
      CHECK(s.forbidden.contains(e) == bf.entails(t.facts, Formula::forb(term)));
      const bool below_refuted = [&] {
        for (const AtomSet& x : s.algebra.elements())
          if (leq(e, x) &&
              bf.entails(t.facts, negation(Formula::perm(s.algebra.canonical_term(x)))))
            return true;
        return false;
      }();
      CHECK(s.permitted_dual.contains(e) == (below_refuted && !s.permitted.contains(e)));
    }
    CHECK(ideal_meet_trivial(s.permitted, s.forbidden));
  }
}
