#include <doctest.h>

#include "ddal/crosscheck.hpp"
#include "ddal/defaults.hpp"
#include "ddal/entailment.hpp"
#include "oracles.hpp"

using namespace ddal;

namespace {

const char* kRoad =
    "actions d o\n"
    "fact (d == o) = 0\n"
    "fact P(d)\n"
    "default P: d ~> o\n";

const char* kChoice =
    "actions a b c\n"
    "fact P(a)\n"
    "fact ~P(b) \\/ ~P(c)\n"
    "default P(a) => P(b)\n"
    "default P(a) => P(c)\n";

const char* kRoadProof =
    "1. P(d) ; premise\n"
    "2. P(o) ; detach 1 by P: d ~> o\n"
    "3. P(d) ; premise\n"
    "4. P(d) /\\ P(o) ; entailed from 2 3\n"
    "5. P(d) /\\ P(o) -> P(d + o) ; axiom D1\n"
    "6. P(d + o) ; mp 4 5\n";

Theory road(bool not_overtaking = false) {
  return parse_theory(std::string(kRoad) + (not_overtaking ? "fact ~P(o)\n" : ""));
}

Formula fml(const Theory& t, const char* text) { return parse_formula(text, t.vocabulary); }

// Same generator set up to equivalence.
bool same_extensions(const Vocabulary& v, const std::vector<std::vector<Formula>>& a,
                     const std::vector<std::vector<Formula>>& b) {
  const testing::BruteForce bf(v);
  auto covered = [&](const auto& xs, const auto& ys) {
    return std::all_of(xs.begin(), xs.end(), [&](const auto& x) {
      return std::any_of(ys.begin(), ys.end(),
                         [&](const auto& y) { return bf.equivalent(x, y); });
    });
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

// Random theory over at most two actions with a mix of basic and general
// defaults.
Theory mixed_theory(std::uint64_t seed) {
  CrosscheckConfig cfg;
  cfg.max_actions = 2;
  cfg.max_defaults = 0;
  Theory t = random_instance(seed, cfg).theory;
  InstanceGenerator g(seed * 7919, t.vocabulary);
  const std::size_t n = g.below(5);
  for (std::size_t i = 0; i < n; ++i)
    t.defaults.push_back(g.below(2) ? g.normal_default() : g.basic_default().as_normal());
  return t;
}

}  // namespace

TEST_CASE("road: generating sequences and Reiter extensions") {
  const Theory t = road();
  const auto seqs = generating_sequences(t);
  REQUIRE(seqs.size() == 1);
  CHECK(seqs[0].steps == std::vector<std::size_t>{0});
  CHECK(seqs[0].closed);
  CHECK(is_generating_sequence(t, seqs[0]));
  const auto exts = reiter_extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].generators.back() == fml(t, "P(o)"));
  CHECK(credulous_entails(t, fml(t, "P(d + o)")));
  CHECK(credulous_entails(t, fml(t, "P(d)")));
  CHECK_FALSE(credulous_entails(t, fml(t, "F(o)")));
}

TEST_CASE("road: overtaking not permitted blocks the default") {
  const Theory t = road(true);
  const auto exts = reiter_extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].witness.steps.empty());
  CHECK_FALSE(credulous_entails(t, fml(t, "P(d + o)")));
}

TEST_CASE("no defaults: the empty sequence") {
  const Theory t = parse_theory("actions a\nfact P(a)\n");
  const auto seqs = generating_sequences(t);
  REQUIRE(seqs.size() == 1);
  CHECK(seqs[0].steps.empty());
  CHECK(seqs[0].closed);
}

TEST_CASE("choice: two extensions") {
  const Theory t = parse_theory(kChoice);
  const auto exts = reiter_extensions(t);
  REQUIRE(exts.size() == 2);
  CHECK(exts[0].generators.back() == fml(t, "P(b)"));
  CHECK(exts[1].generators.back() == fml(t, "P(c)"));
  CHECK(credulous_entails(t, fml(t, "P(b)")));
  CHECK(credulous_entails(t, fml(t, "P(c)")));
  CHECK_FALSE(credulous_entails(t, fml(t, "P(b) /\\ P(c)")));
  CHECK(same_extensions(t.vocabulary,
                        {exts[0].generators, exts[1].generators},
                        testing::reiter_oracle(t)));

  const DefaultProof proof = build_default_proof(t, fml(t, "P(b)"));
  CHECK(render(proof) == "1. P(a) ; premise\n2. P(b) ; detach 1 by P: a ~> b\n");
  CHECK(check_default_proof(t, proof, fml(t, "P(b)")));
}

TEST_CASE("inconsistent base theory") {
  const Theory t = parse_theory("actions a\nfact P(a)\nfact ~P(a)\ndefault P: a ~> a\n");
  CHECK_THROWS_AS(reiter_extensions(t), InconsistentTheoryError);
  CHECK_THROWS_AS(credulous_entails(t, Formula::top()), InconsistentTheoryError);
  CHECK_THROWS_AS(algebraic_extensions(t), InconsistentTheoryError);
}

TEST_CASE("road certificate") {
  const Theory t = road();
  const Formula goal = fml(t, "P(d + o)");
  const DefaultProof proof = build_default_proof(t, goal);
  CHECK(render(proof) == kRoadProof);
  CHECK(check_default_proof(t, proof, goal));
  CHECK(render(parse_default_proof(kRoadProof, t.vocabulary)) == kRoadProof);

  // A fact proves itself in one line.
  const DefaultProof trivial = build_default_proof(t, fml(t, "P(d)"));
  CHECK(render(trivial) == "1. P(d) ; premise\n");
  CHECK_THROWS_AS(build_default_proof(t, fml(t, "F(o)")), PreconditionError);
}

TEST_CASE("road certificate mutations are rejected") {
  const Theory t = road();
  const Formula goal = fml(t, "P(d + o)");
  auto rejected = [&](const std::string& text) {
    return !check_default_proof(t, parse_default_proof(text, t.vocabulary), goal);
  };
  auto replace_line = [](std::string text, int k, const std::string& line) {
    std::size_t begin = 0;
    for (int i = 1; i < k; ++i) begin = text.find('\n', begin) + 1;
    const std::size_t end = text.find('\n', begin);
    return text.replace(begin, end - begin, line);
  };
  const std::string base = kRoadProof;
  CHECK_FALSE(rejected(base));
  CHECK(rejected(replace_line(base, 2, "2. P(o) ; detach 1 by P: o ~> d")));
  CHECK(rejected(replace_line(base, 2, "2. P(o) ; detach 1 by F: d ~> o")));
  CHECK(rejected(replace_line(replace_line(base, 1, "1. P(o) ; detach 2 by P: d ~> o"), 2,
                              "2. P(d) ; premise")));
  CHECK(rejected(replace_line(base, 3, "3. ~P(o) ; entailed")));
  CHECK(rejected(replace_line(base, 3, "3. F(o) ; premise")));
  CHECK(rejected(replace_line(base, 5, "5. P(d) /\\ P(o) -> P(d + o) ; axiom D2")));
  CHECK(rejected(replace_line(base, 6, "6. P(d + o) ; mp 5 4")));
  CHECK(rejected(replace_line(base, 6, "6. P(d + o) ; entailed from 3")));
  CHECK(rejected(base + "7. P(o) ; premise\n"));
  CHECK(rejected("1. P(d + o) ; entailed from 1\n"));

  // Valid line by line, but inconsistent with the facts once ~P(o) holds.
  const Theory t2 = road(true);
  CHECK_FALSE(check_default_proof(t2, parse_default_proof(kRoadProof, t2.vocabulary), goal));
  const auto why = default_proof_error(t2, parse_default_proof(kRoadProof, t2.vocabulary), goal);
  REQUIRE(why.has_value());
  CHECK(why->find("inconsistent") != std::string::npos);
}

TEST_CASE("certificate syntax errors") {
  const Vocabulary v({"d", "o"});
  CHECK_THROWS_AS(parse_default_proof("P(d) ; premise\n", v), ParseError);
  CHECK_THROWS_AS(parse_default_proof("2. P(d) ; premise\n", v), ParseError);
  CHECK_THROWS_AS(parse_default_proof("1. P(d)\n", v), ParseError);
  CHECK_THROWS_AS(parse_default_proof("1. P(d) ; because\n", v), ParseError);
  CHECK_THROWS_AS(parse_default_proof("1. P(d) ; mp one 2\n", v), ParseError);
  try {
    parse_default_proof("# header\n1. P(x) ; premise\n", v);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
  }
  CHECK(parse_default_proof("", v).lines.empty());
}

TEST_CASE("axiom instances") {
  const Vocabulary v({"a", "b"});
  auto name = [&](const char* text) { return axiom_instance(parse_formula(text, v)); };
  CHECK(name("P(a + b) <-> P(a) /\\ P(b)") == "D1");
  CHECK(name("P(a + b) -> P(a) /\\ P(b)") == "D1");
  CHECK(name("F(a) /\\ F(b) -> F(a + b)") == "D2");
  CHECK(name("a = 0 <-> P(a) /\\ F(a)") == "D3");
  CHECK(name("~(0 = 1)") == "zero-neq-one");
  CHECK_FALSE(name("P(a + b) -> P(a) /\\ F(b)").has_value());
  CHECK_FALSE(name("P(a + b) -> P(b) /\\ P(a)").has_value());
}

TEST_CASE("Reiter extensions agree with the fixed-point oracle") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Theory t = mixed_theory(seed);
    CAPTURE(render(t));
    std::vector<std::vector<Formula>> ours;
    for (const SyntacticExtension& e : reiter_extensions(t)) ours.push_back(e.generators);
    CHECK(same_extensions(t.vocabulary, ours, testing::reiter_oracle(t)));
    for (const GeneratingSequence& s : generating_sequences(t))
      CHECK(is_generating_sequence(t, s));
  }
}

TEST_CASE("certificates exist exactly for credulous consequences") {
  for (std::uint64_t seed = 100; seed < 260; ++seed) {
    const Theory t = mixed_theory(seed);
    InstanceGenerator g(seed, t.vocabulary);
    const Formula q = g.query();
    CAPTURE(render(t));
    CAPTURE(render(q));
    if (credulous_entails(t, q)) {
      const DefaultProof p = build_default_proof(t, q);
      CHECK(check_default_proof(t, p, q));
      CHECK(check_default_proof(t, parse_default_proof(render(p), t.vocabulary), q));
    } else {
      CHECK_THROWS_AS(build_default_proof(t, q), PreconditionError);
      CHECK_FALSE(check_default_proof(t, naive_default_proof(t, q), q));
    }
  }
}

TEST_CASE("road: algebraic extension") {
  const Theory t = road();
  const LindenbaumStructure s = lindenbaum(t);
  const auto pairs = algebraic_extensions(s);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].permitted.generator() == s.algebra.one());
  CHECK(pairs[0].forbidden.generator().is_empty());
  REQUIRE(pairs[0].provenance.size() == 1);
  CHECK(render(pairs[0].provenance[0]) == "P: d ~> o");
  CHECK(is_fixpoint(s, pairs[0].permitted, pairs[0].forbidden));
  CHECK_FALSE(is_fixpoint(s, s.permitted, s.forbidden));
  const Ideal bottom(s.algebra.zero(), s.algebra.alive());
  CHECK_FALSE(is_fixpoint(s, bottom, bottom));
  CHECK(satisfies_in_algebra(s.algebra, pairs[0].permitted, pairs[0].forbidden,
                             fml(t, "P(d + o)")));
  CHECK(algebraic_entails(t, fml(t, "P(d + o)")));
  CHECK(algebraic_entails(t, fml(t, "P(0)")));
  CHECK_FALSE(algebraic_entails(t, fml(t, "F(o)")));
}

TEST_CASE("road with overtaking not permitted: algebraic extension") {
  const Theory t = road(true);
  const LindenbaumStructure s = lindenbaum(t);
  const auto pairs = algebraic_extensions(s);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].permitted == s.permitted);
  CHECK(pairs[0].forbidden == s.forbidden);
  CHECK(pairs[0].provenance.empty());
  CHECK(is_fixpoint(s, s.permitted, s.forbidden));
  CHECK_FALSE(algebraic_entails(t, fml(t, "P(d + o)")));

  // Adding [o] to P falsifies ~P(o): the robustness check fails.
  const Ideal wider(s.permitted.generator() | s.algebra.class_of(Action::basic("o")),
                    s.algebra.alive());
  CHECK_FALSE(satisfies_in_algebra(s.algebra, wider, s.forbidden, fml(t, "~P(o)")));
  CHECK(satisfies_in_algebra(s.algebra, s.permitted, s.forbidden, fml(t, "0 = 0")));

  // Without the dual check the default fires regardless.
  AlgebraicOptions loose;
  loose.check_duals = false;
  const auto mutant = algebraic_extensions(s, loose);
  REQUIRE(mutant.size() == 1);
  CHECK(mutant[0].permitted.generator() == s.algebra.one());
}

TEST_CASE("algebraic extensions without defaults") {
  const Theory t = parse_theory("actions a b\nfact P(a)\nfact F(b) \\/ F(a * b)\n");
  const LindenbaumStructure s = lindenbaum(t);
  const auto pairs = algebraic_extensions(s);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].permitted == s.permitted);
  CHECK(pairs[0].forbidden == s.forbidden);
}

TEST_CASE("algebraic semantics preconditions") {
  const Theory general = parse_theory("actions a b\nfact P(a)\ndefault P(a) => ~P(b)\n");
  CHECK_THROWS_AS(algebraic_extensions(general), PreconditionError);
  CHECK_THROWS_AS(algebraic_entails(general, Formula::top()), PreconditionError);
  const LindenbaumStructure s = lindenbaum(road());
  const Ideal whole(s.algebra.one(), s.algebra.alive());
  CHECK_THROWS_AS(satisfies_in_algebra(s.algebra, whole, whole, Formula::top()),
                  PreconditionError);
}

TEST_CASE("conflicting defaults give one algebraic extension per winner") {
  const Theory t = parse_theory(
      "actions a\n"
      "default P: 0 ~> a\n"
      "default F: 0 ~> a\n");
  const LindenbaumStructure s = lindenbaum(t);
  const auto pairs = algebraic_extensions(s);
  REQUIRE(pairs.size() == 2);
  const AtomSet a = s.algebra.class_of(Action::basic("a"));
  CHECK(pairs[0].permitted.generator().is_empty());
  CHECK(pairs[0].forbidden.generator() == a);
  CHECK(pairs[1].permitted.generator() == a);
  CHECK(pairs[1].forbidden.generator().is_empty());
  for (const ExtensionPair& p : pairs) CHECK(is_fixpoint(s, p.permitted, p.forbidden));
  CHECK(algebraic_entails(t, parse_formula("P(a) \\/ F(a)", t.vocabulary)));
  CHECK(credulous_entails(t, parse_formula("P(a)", t.vocabulary)));
  CHECK(credulous_entails(t, parse_formula("F(a)", t.vocabulary)));
}
