// Brute-force entailment by enumerating every status assignment.
#include <atomic>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "compiled_formula.hpp"
#include "ddal/entailment.hpp"

namespace ddal {
namespace {

using detail::CompiledFormula;
using detail::compile_formula;
using detail::evaluate;

struct Problem {
  std::vector<CompiledFormula> facts;
  CompiledFormula query;
  std::size_t width;
  std::uint64_t models;
};

Problem prepare(const Theory& t, const Formula& query) {
  if (t.vocabulary.size() > kMaxOracleActions)
    throw CapacityError("oracle supports at most " +
                        std::to_string(kMaxOracleActions) + " actions");
  Problem p{{}, compile_formula(query, t.vocabulary), atom_count(t.vocabulary), 0};
  for (const Formula& f : t.facts) p.facts.push_back(compile_formula(f, t.vocabulary));
  p.models = std::uint64_t{1} << (2 * p.width);
  return p;
}

// Model `index` read as base-4 digits, digit i being the status of atom i.
bool is_countermodel(const Problem& p, std::uint64_t index) {
  std::uint64_t alive = 0, perm = 0, forb = 0;
  for (std::size_t atom = 0; atom < p.width; ++atom) {
    const auto s = static_cast<Status>((index >> (2 * atom)) & 3u);
    const std::uint64_t b = std::uint64_t{1} << atom;
    if (s != Status::kDead) alive |= b;
    if (s == Status::kPermitted) perm |= b;
    if (s == Status::kForbidden) forb |= b;
  }
  if (alive == 0) return false;
  for (const CompiledFormula& f : p.facts)
    if (!evaluate(f, alive, perm, forb)) return false;
  return !evaluate(p.query, alive, perm, forb);
}

}  // namespace

bool oracle_entails_serial(const Theory& t, const Formula& query) {
  const Problem p = prepare(t, query);
  for (std::uint64_t m = 0; m < p.models; ++m)
    if (is_countermodel(p, m)) return false;
  return true;
}

bool oracle_entails(const Theory& t, const Formula& query) {
  const Problem p = prepare(t, query);
  std::atomic<bool> refuted{false};
  const auto models = static_cast<std::int64_t>(p.models);
#pragma omp parallel for schedule(static, 1024)
  for (std::int64_t m = 0; m < models; ++m) {
    if (refuted.load(std::memory_order_relaxed)) continue;
    if (is_countermodel(p, static_cast<std::uint64_t>(m)))
      refuted.store(true, std::memory_order_relaxed);
  }
  return !refuted.load();
}

}  // namespace ddal
