// Reference implementations used only by tests. They share no search code
// with the library: entailment enumerates StatusModels and evaluates with
// `satisfies`, Reiter extensions are found by testing every subset of the
// defaults against the fixed-point condition directly.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ddal/entailment.hpp"

namespace ddal::testing {

// All 4^(2^n) status assignments with at least one alive atom.
inline std::vector<StatusModel> all_models(const Vocabulary& v) {
  const std::size_t width = atom_count(v);
  std::vector<StatusModel> out;
  const std::uint64_t total = std::uint64_t{1} << (2 * width);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Status> s(width);
    bool alive = false;
    for (std::size_t a = 0; a < width; ++a) {
      s[a] = static_cast<Status>((code >> (2 * a)) & 3u);
      alive = alive || s[a] != Status::kDead;
    }
    if (alive) out.emplace_back(v, std::move(s));
  }
  return out;
}

class BruteForce {
 public:
  explicit BruteForce(const Vocabulary& v) : models_(all_models(v)) {}

  bool entails(const std::vector<Formula>& facts, const Formula& q) const {
    for (const StatusModel& m : models_) {
      const bool model_of_facts = std::all_of(
          facts.begin(), facts.end(), [&](const Formula& f) { return satisfies(m, f); });
      if (model_of_facts && !satisfies(m, q)) return false;
    }
    return true;
  }

  bool consistent(const std::vector<Formula>& facts) const {
    return !entails(facts, Formula::bottom());
  }

  bool equivalent(const std::vector<Formula>& a, const std::vector<Formula>& b) const {
    auto all = [&](const std::vector<Formula>& from, const std::vector<Formula>& to) {
      return std::all_of(to.begin(), to.end(),
                         [&](const Formula& f) { return entails(from, f); });
    };
    return all(a, b) && all(b, a);
  }

 private:
  std::vector<StatusModel> models_;
};

// Generator sets of Reiter extensions: E = Φ ∪ consequents(S) for some
// subset S, kept when the least set closed under Φ and under every default
// whose consequent is consistent with E is equivalent to E. Deduplicated up
// to equivalence.
inline std::vector<std::vector<Formula>> reiter_oracle(const Theory& t) {
  const BruteForce bf(t.vocabulary);
  std::vector<std::vector<Formula>> out;
  const std::size_t n = t.defaults.size();
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    std::vector<Formula> e = t.facts;
    for (std::size_t i = 0; i < n; ++i)
      if (subset & (1u << i)) e.push_back(t.defaults[i].consequent);
    if (!bf.consistent(e)) continue;
    std::vector<Formula> gamma = t.facts;
    std::vector<bool> used(n, false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i] || !bf.entails(gamma, t.defaults[i].prerequisite)) continue;
        if (bf.entails(e, negation(t.defaults[i].consequent))) continue;
        gamma.push_back(t.defaults[i].consequent);
        used[i] = changed = true;
      }
    }
    if (!bf.equivalent(gamma, e)) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& other) {
      return bf.equivalent(other, e);
    });
    if (!seen) out.push_back(e);
  }
  return out;
}

}  // namespace ddal::testing
