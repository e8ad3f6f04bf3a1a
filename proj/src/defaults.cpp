#include "ddal/defaults.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "ddal/entailment.hpp"

namespace ddal {
namespace {

void require_consistent(const Theory& t) {
  if (!consistent(t)) throw InconsistentTheoryError();
}

void require_default_bound(const Theory& t) {
  if (t.defaults.size() > kMaxDefaults)
    throw CapacityError("at most " + std::to_string(kMaxDefaults) +
                        " defaults are supported");
}

class SequenceSearch {
 public:
  explicit SequenceSearch(const Theory& t) : t_(t) {}

  std::vector<GeneratingSequence> run() {
    std::vector<std::size_t> order;
    std::vector<Formula> known = t_.facts;
    visit(order, 0, known);
    std::sort(found_.begin(), found_.end(),
              [](const auto& a, const auto& b) { return a.steps < b.steps; });
    return found_;
  }

 private:
  // Depth first over application orders. A set of applied defaults is
  // explored once: its consequent set, and hence every continuation, is the
  // same whichever order reached it.
  void visit(std::vector<std::size_t>& order, std::uint32_t applied,
             std::vector<Formula>& known) {
    if (!seen_.insert(applied).second) return;
    bool extended = false;
    for (std::size_t i = 0; i < t_.defaults.size(); ++i) {
      if (applied & (std::uint32_t{1} << i)) continue;
      const NormalDefault& d = t_.defaults[i];
      if (!entails(t_.vocabulary, known, d.prerequisite).holds) continue;
      if (entails(t_.vocabulary, known, d.consequent).holds) continue;
      known.push_back(d.consequent);
      if (consistent(t_.vocabulary, known)) {
        extended = true;
        order.push_back(i);
        visit(order, applied | (std::uint32_t{1} << i), known);
        order.pop_back();
      }
      known.pop_back();
    }
    if (!extended) found_.push_back({order, true});
  }

  const Theory& t_;
  std::unordered_set<std::uint32_t> seen_;
  std::vector<GeneratingSequence> found_;
};

bool entails_all(const Vocabulary& v, const std::vector<Formula>& from,
                 const std::vector<Formula>& to) {
  return std::all_of(to.begin(), to.end(), [&](const Formula& f) {
    return entails(v, from, f).holds;
  });
}

}  // namespace

std::vector<NormalDefault> sequence_defaults(const Theory& t,
                                             const GeneratingSequence& s) {
  std::vector<NormalDefault> out;
  for (std::size_t i : s.steps) out.push_back(t.defaults.at(i));
  return out;
}

std::vector<Formula> sequence_generators(const Theory& t,
                                         const GeneratingSequence& s) {
  std::vector<Formula> out = t.facts;
  for (std::size_t i : s.steps) out.push_back(t.defaults.at(i).consequent);
  return out;
}

bool is_generating_sequence(const Theory& t, const GeneratingSequence& s) {
  std::vector<Formula> known = t.facts;
  std::vector<bool> used(t.defaults.size(), false);
  for (std::size_t i : s.steps) {
    if (i >= t.defaults.size() || used[i]) return false;
    used[i] = true;
    const NormalDefault& d = t.defaults[i];
    if (!entails(t.vocabulary, known, d.prerequisite).holds) return false;
    known.push_back(d.consequent);
    if (!consistent(t.vocabulary, known)) return false;
  }
  bool extendable = false;
  for (std::size_t i = 0; i < t.defaults.size() && !extendable; ++i) {
    if (used[i]) continue;
    const NormalDefault& d = t.defaults[i];
    if (!entails(t.vocabulary, known, d.prerequisite).holds) continue;
    if (entails(t.vocabulary, known, d.consequent).holds) continue;
    known.push_back(d.consequent);
    extendable = consistent(t.vocabulary, known);
    known.pop_back();
  }
  return s.closed == !extendable;
}

std::vector<GeneratingSequence> generating_sequences(const Theory& t) {
  require_consistent(t);
  require_default_bound(t);
  return SequenceSearch(t).run();
}

std::vector<SyntacticExtension> reiter_extensions(const Theory& t) {
  std::vector<SyntacticExtension> out;
  for (GeneratingSequence& s : generating_sequences(t)) {
    std::vector<Formula> gens = sequence_generators(t, s);
    const bool duplicate =
        std::any_of(out.begin(), out.end(), [&](const SyntacticExtension& e) {
          return entails_all(t.vocabulary, e.generators, gens) &&
                 entails_all(t.vocabulary, gens, e.generators);
        });
    if (!duplicate) out.push_back({std::move(gens), std::move(s)});
  }
  return out;
}

bool extension_entails(const Theory& t, const SyntacticExtension& e,
                       const Formula& f) {
  return entails(t.vocabulary, e.generators, f).holds;
}

bool credulous_entails(const Theory& t, const Formula& f) {
  for (const SyntacticExtension& e : reiter_extensions(t))
    if (extension_entails(t, e, f)) return true;
  return false;
}

}  // namespace ddal
