// Randomized property harness over small theories.
//
// Each case draws a consistent theory with basic deontic defaults and a
// query from a fixed template grammar, then checks the properties of the
// entailment, Lindenbaum and default modules against each other and against
// the brute-force oracle. Cases are independent and seeded individually, so
// the parallel run and the serial reference give identical reports.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ddal/defaults.hpp"
#include "ddal/syntax.hpp"

namespace ddal {

struct CrosscheckConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 100;
  std::size_t max_actions = 3;
  std::size_t max_defaults = 4;
  std::size_t max_facts = 4;
  // Disables the deontic dual check of the algebraic extension operator.
  bool drop_dual_check = false;

  // Throws PreconditionError when a bound exceeds what the oracle supports.
  void validate() const;
};

// Template grammar for random instances.
class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, Vocabulary vocab);

  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t below(std::size_t n);

  // Depth at most `depth`; leaves are basic actions, occasionally 0 or 1.
  Action action(std::size_t depth = 2);
  // P(t), F(t), ~P(t), ~F(t) or t = t'.
  Formula literal();
  // A literal or a disjunction of two.
  Formula fact();
  // A literal, a disjunction or a conjunction of two.
  Formula query();
  BasicDeonticDefault basic_default();
  // `P(t)`/`F(t)` literal prerequisite and consequent.
  NormalDefault normal_default();

 private:
  std::mt19937_64 rng_;
  Vocabulary vocab_;
};

struct Instance {
  std::uint64_t seed;
  Theory theory;
  Formula query;
};

// Per-case seed derived from the run seed and the case index.
std::uint64_t case_seed(std::uint64_t run_seed, std::size_t index);

// Consistent theory over 1..max_actions actions with basic defaults.
Instance random_instance(std::uint64_t seed, const CrosscheckConfig& cfg);

struct InvariantTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<std::size_t> first_failing_case = {};
  std::optional<std::uint64_t> first_failing_seed = {};
  std::string first_failure = {};
};

struct GoldenResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct CrosscheckReport {
  CrosscheckConfig config;
  std::vector<GoldenResult> goldens;
  std::vector<InvariantTally> invariants;
  // Credulous but not algebraic consequences; allowed, counted for reference.
  std::size_t non_converse_witnesses = 0;

  bool passed() const;
  const InvariantTally* find(const std::string& name) const;
  std::string render() const;
};

// Outcome of one invariant check on one case.
struct Observation {
  std::string invariant;
  bool ok;
  std::string detail;
};

struct CaseOutcome {
  std::vector<Observation> observations;
  bool non_converse_witness = false;
};

CaseOutcome check_instance(const Instance& inst, const CrosscheckConfig& cfg);

// The worked road example, with and without the fact that overtaking is
// not permitted, checked against its known extensions and consequences.
std::vector<GoldenResult> golden_regressions(const AlgebraicOptions& opts);

// Cases run across OpenMP threads; the report is assembled in case order.
CrosscheckReport run_crosscheck(const CrosscheckConfig& cfg);
CrosscheckReport run_crosscheck_serial(const CrosscheckConfig& cfg);

// Applies every default whose prerequisite is derivable, ignoring
// consistency, then closes with one `entailed` step citing all lines. Only
// valid when that detachment order happens to stay consistent; used to
// probe the checker from outside the builder.
DefaultProof naive_default_proof(const Theory& t, const Formula& f);

}  // namespace ddal
