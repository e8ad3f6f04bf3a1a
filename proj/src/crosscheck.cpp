#include "ddal/crosscheck.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ddal/entailment.hpp"
#include "ddal/lindenbaum.hpp"

namespace ddal {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Vocabulary vocabulary_of_size(std::size_t n) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> symbols(names, names + n);
  return Vocabulary(std::move(symbols));
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

// Collects observations for one case.
class Recorder {
 public:
  void expect(const std::string& invariant, bool ok, const std::string& detail = {}) {
    out.observations.push_back({invariant, ok, ok ? std::string() : detail});
  }
  CaseOutcome out;
};

// `hole` plugged into a literal shape drawn once, so the same shape can be
// instantiated with two different terms.
struct LiteralShape {
  std::size_t kind;
  Action other;

  Formula with(const Action& hole) const {
    switch (kind) {
      case 0: return Formula::perm(hole);
      case 1: return Formula::forb(hole);
      case 2: return negation(Formula::perm(hole));
      case 3: return negation(Formula::forb(hole));
      default: return Formula::eq(hole, other);
    }
  }
};

void check_entailment(const Instance& inst, InstanceGenerator& g, Recorder& r) {
  const Theory& t = inst.theory;
  const Vocabulary& v = t.vocabulary;
  const EntailmentVerdict verdict = entails(t, inst.query);
  r.expect("entails-vs-oracle", verdict.holds == oracle_entails(t, inst.query),
           "entails says " + std::string(verdict.holds ? "yes" : "no") + " for " +
               render(inst.query));
  if (!verdict.holds) {
    bool sound = verdict.countermodel.has_value() &&
                 !satisfies(*verdict.countermodel, inst.query);
    if (sound)
      for (const Formula& f : t.facts)
        sound = sound && satisfies(*verdict.countermodel, f);
    r.expect("countermodel-sound", sound, "countermodel for " + render(inst.query));
  }

  const Action a = g.action();
  const Action b = g.action();
  const std::vector<Formula> none;
  auto valid = [&](const std::string& name, const Formula& f) {
    r.expect(name, entails(v, none, f).holds, render(f));
  };
  valid("axiom-D1", biconditional(Formula::perm(join(a, b)),
                                  conjunction(Formula::perm(a), Formula::perm(b))));
  valid("axiom-D2", biconditional(Formula::forb(join(a, b)),
                                  conjunction(Formula::forb(a), Formula::forb(b))));
  valid("axiom-D3", biconditional(Formula::eq(a, Action::zero()),
                                  conjunction(Formula::perm(a), Formula::forb(a))));
  valid("axiom-zero-neq-one", negation(Formula::eq(Action::zero(), Action::one())));

  // Substitution, on a pair the theory is likely to identify: pad `a` with
  // atoms the theory kills.
  const AtomSet dead = dead_atoms(t);
  const Action padded =
      g.below(2) == 0 ? join(a, canonical_term(dead, v)) : complement(complement(a));
  const LiteralShape shape{g.below(5), g.action()};
  const Formula side = g.literal();
  const bool disjoin = g.below(2) == 0;
  auto plug = [&](const Action& hole) {
    return disjoin ? disjunction(shape.with(hole), side)
                   : conjunction(shape.with(hole), side);
  };
  valid("substitution-axiom",
        implication(Formula::eq(a, padded), implication(plug(a), plug(padded))));
  if (entails(t, Formula::eq(a, padded)).holds) {
    const bool same = entails(t, plug(a)).holds == entails(t, plug(padded)).holds;
    r.expect("substitution", same, render(plug(a)) + " vs " + render(plug(padded)));
  }

  if (verdict.holds) {
    const Theory more = t.with_fact(g.fact());
    if (consistent(more))
      r.expect("monotonicity", entails(more, inst.query).holds,
               render(inst.query) + " lost after adding " + render(more.facts.back()));
  }
}

void check_lindenbaum(const Instance& inst, const LindenbaumStructure& s,
                      InstanceGenerator& g, Recorder& r) {
  const Theory& t = inst.theory;
  const QuotientAlgebra& q = s.algebra;
  const Action a = g.action();
  const Action b = g.action();
  r.expect("quotient-faithful",
           entails(t, Formula::eq(a, b)).holds == (q.class_of(a) == q.class_of(b)),
           render(a) + " vs " + render(b));

  const auto elements = q.elements();
  const AtomSet e = elements[g.below(elements.size())];
  const Action term = q.canonical_term(e);
  r.expect("lt-permitted-membership",
           s.permitted.contains(e) == entails(t, Formula::perm(term)).holds,
           render(term));
  r.expect("lt-forbidden-membership",
           s.forbidden.contains(e) == entails(t, Formula::forb(term)).holds,
           render(term));
  r.expect("lt-meet-trivial", ideal_meet_trivial(s.permitted, s.forbidden));
  auto disjoint = [](const DeonticDual& d, const Ideal& i) {
    return std::none_of(d.members.begin(), d.members.end(),
                        [&](const AtomSet& m) { return i.contains(m); });
  };
  r.expect("dual-disjoint", disjoint(s.permitted_dual, s.permitted) &&
                                disjoint(s.forbidden_dual, s.forbidden));

  const Action above = join(a, b);
  if (entails(t, negation(Formula::perm(a))).holds)
    r.expect("non-permission-upward",
             entails(t, negation(Formula::perm(above))).holds, render(above));
}

void check_defaults(const Instance& inst, const LindenbaumStructure& s,
                    const CrosscheckConfig& cfg, Recorder& r) {
  const Theory& t = inst.theory;
  const Formula& phi = inst.query;

  for (const GeneratingSequence& seq : generating_sequences(t))
    r.expect("closed-sequence", seq.closed && is_generating_sequence(t, seq));
  const auto exts = reiter_extensions(t);
  for (const SyntacticExtension& e : exts)
    r.expect("extension-consistent", consistent(t.vocabulary, e.generators));

  const bool credulous = credulous_entails(t, phi);
  if (credulous) {
    std::string why;
    bool ok = false;
    try {
      const DefaultProof proof = build_default_proof(t, phi);
      const auto err = default_proof_error(t, proof, phi);
      ok = !err.has_value();
      if (err) why = *err + "\n" + render(proof);
    } catch (const Error& e) {
      why = e.what();
    }
    r.expect("thm1-certificate", ok, why);
  } else {
    bool refused = false;
    try {
      (void)build_default_proof(t, phi);
    } catch (const PreconditionError&) {
      refused = true;
    }
    r.expect("thm1-certificate", refused, "built a proof of a non-consequence");
  }
  const DefaultProof naive = naive_default_proof(t, phi);
  if (check_default_proof(t, naive, phi))
    r.expect("thm1-accepted-is-consequence", credulous, render(naive));

  r.expect("property2-consistency", !credulous_entails(t, Formula::bottom()));
  if (entails(t, phi).holds)
    r.expect("interpretation", credulous, render(phi));

  AlgebraicOptions opts;
  opts.check_duals = !cfg.drop_dual_check;
  const auto pairs = algebraic_extensions(s, opts);
  r.expect("property3-existence", !pairs.empty());
  for (const ExtensionPair& p : pairs) {
    r.expect("property4-meet-trivial", ideal_meet_trivial(p.permitted, p.forbidden));
    r.expect("extension-fixpoint", is_fixpoint(s, p.permitted, p.forbidden, opts));
    AtomSet gp = s.permitted.generator();
    AtomSet gf = s.forbidden.generator();
    bool grows = true;
    for (const BasicDeonticDefault& d : p.provenance) {
      AtomSet& own = d.modality == Modality::kPerm ? gp : gf;
      const AtomSet next = own | s.algebra.class_of(d.consequent);
      grows = grows && !(next == own);
      own = next;
    }
    grows = grows && gp == p.permitted.generator() && gf == p.forbidden.generator();
    r.expect("extension-growth", grows);
  }

  const bool algebraic = algebraic_entails(s, pairs, phi);
  if (algebraic)
    r.expect("thm2-algebraic-implies-credulous", credulous, render(phi));
  r.out.non_converse_witness = credulous && !algebraic;
}

CaseOutcome run_case(const CrosscheckConfig& cfg, std::size_t index) {
  const std::uint64_t seed = case_seed(cfg.seed, index);
  Recorder r;
  try {
    const Instance inst = random_instance(seed, cfg);
    InstanceGenerator g(splitmix64(seed ^ 0x5151), inst.theory.vocabulary);
    check_entailment(inst, g, r);
    const LindenbaumStructure s = lindenbaum(inst.theory);
    check_lindenbaum(inst, s, g, r);
    check_defaults(inst, s, cfg, r);
  } catch (const std::exception& e) {
    r.expect("no-exception", false, e.what());
  }
  return r.out;
}

CrosscheckReport assemble(const CrosscheckConfig& cfg,
                          const std::vector<CaseOutcome>& outcomes) {
  CrosscheckReport report;
  report.config = cfg;
  AlgebraicOptions opts;
  opts.check_duals = !cfg.drop_dual_check;
  report.goldens = golden_regressions(opts);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const CaseOutcome& o = outcomes[i];
    if (o.non_converse_witness) ++report.non_converse_witnesses;
    for (const Observation& obs : o.observations) {
      auto it = std::find_if(report.invariants.begin(), report.invariants.end(),
                             [&](const InvariantTally& t) { return t.name == obs.invariant; });
      if (it == report.invariants.end()) {
        report.invariants.push_back({obs.invariant});
        it = report.invariants.end() - 1;
      }
      ++it->checked;
      if (obs.ok) continue;
      if (it->failed++ == 0) {
        it->first_failing_case = i;
        it->first_failing_seed = case_seed(cfg.seed, i);
        const Instance inst = random_instance(case_seed(cfg.seed, i), cfg);
        it->first_failure = render(inst.theory) + "query " + render(inst.query) +
                            "\n" + obs.detail;
      }
    }
  }
  std::sort(report.invariants.begin(), report.invariants.end(),
            [](const InvariantTally& a, const InvariantTally& b) { return a.name < b.name; });
  return report;
}

Theory road_theory(bool overtaking_forbidden_fact) {
  std::string text =
      "actions d o\n"
      "fact (d == o) = 0\n"
      "fact P(d)\n"
      "default P: d ~> o\n";
  if (overtaking_forbidden_fact) text += "fact ~P(o)\n";
  return parse_theory(text);
}

}  // namespace

void CrosscheckConfig::validate() const {
  if (max_actions < 1 || max_actions > kMaxOracleActions)
    throw PreconditionError("max-actions must be between 1 and " +
                            std::to_string(kMaxOracleActions));
  if (max_defaults > 4) throw PreconditionError("max-defaults must be at most 4");
  if (max_facts > 4) throw PreconditionError("max-facts must be at most 4");
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, Vocabulary vocab)
    : rng_(seed), vocab_(std::move(vocab)) {}

std::size_t InstanceGenerator::below(std::size_t n) {
  return static_cast<std::size_t>(rng_() % n);
}

Action InstanceGenerator::action(std::size_t depth) {
  if (depth == 0 || below(3) == 0) {
    if (below(10) == 0) return below(2) == 0 ? Action::zero() : Action::one();
    return Action::basic(vocab_.symbol(below(vocab_.size())));
  }
  switch (below(3)) {
    case 0: {
      Action l = action(depth - 1);
      return join(std::move(l), action(depth - 1));
    }
    case 1: {
      Action l = action(depth - 1);
      return meet(std::move(l), action(depth - 1));
    }
    default:
      return complement(action(depth - 1));
  }
}

Formula InstanceGenerator::literal() {
  const std::size_t kind = below(5);
  Action t = action();
  if (kind < 4) return LiteralShape{kind, t}.with(t);
  Action u = action();
  return Formula::eq(std::move(t), std::move(u));
}

Formula InstanceGenerator::fact() {
  if (below(4) != 0) return literal();
  Formula l = literal();
  return disjunction(std::move(l), literal());
}

Formula InstanceGenerator::query() {
  const std::size_t kind = below(5);
  if (kind < 3) return literal();
  Formula l = literal();
  Formula rhs = literal();
  return kind == 3 ? disjunction(std::move(l), std::move(rhs))
                   : conjunction(std::move(l), std::move(rhs));
}

BasicDeonticDefault InstanceGenerator::basic_default() {
  const Modality m = below(2) == 0 ? Modality::kPerm : Modality::kForb;
  Action pre = action();
  return {m, std::move(pre), action()};
}

NormalDefault InstanceGenerator::normal_default() {
  Formula pre = literal();
  return {std::move(pre), literal()};
}

std::uint64_t case_seed(std::uint64_t run_seed, std::size_t index) {
  return splitmix64(run_seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

Instance random_instance(std::uint64_t seed, const CrosscheckConfig& cfg) {
  const std::size_t n = 1 + static_cast<std::size_t>(splitmix64(seed) % cfg.max_actions);
  InstanceGenerator g(seed, vocabulary_of_size(n));
  Theory t{g.vocabulary(), {}, {}};
  // Redraw until consistent; the empty fact set always is.
  for (int attempt = 0; attempt < 64; ++attempt) {
    t.facts.clear();
    const std::size_t count = g.below(cfg.max_facts + 1);
    for (std::size_t i = 0; i < count; ++i) t.facts.push_back(g.fact());
    if (consistent(t)) break;
    t.facts.clear();
  }
  const std::size_t defaults = g.below(cfg.max_defaults + 1);
  for (std::size_t i = 0; i < defaults; ++i)
    t.defaults.push_back(g.basic_default().as_normal());
  Formula q = g.query();
  return {seed, std::move(t), std::move(q)};
}

DefaultProof naive_default_proof(const Theory& t, const Formula& f) {
  DefaultProof proof;
  auto all_refs = [&] {
    std::vector<std::size_t> refs(proof.lines.size());
    for (std::size_t i = 0; i < refs.size(); ++i) refs[i] = i + 1;
    return refs;
  };
  auto line_formulas = [&] {
    std::vector<Formula> fs;
    for (const ProofLine& l : proof.lines) fs.push_back(l.formula);
    return fs;
  };
  for (const Formula& fact : t.facts)
    proof.lines.push_back({fact, Justification::kPremise, {}, {}, {}});
  std::vector<bool> used(t.defaults.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < t.defaults.size(); ++i) {
      if (used[i]) continue;
      const NormalDefault& d = t.defaults[i];
      if (!entails(t.vocabulary, line_formulas(), d.prerequisite).holds) continue;
      proof.lines.push_back({d.prerequisite, Justification::kEntailed, {}, all_refs(), {}});
      const std::size_t pre = proof.lines.size();
      proof.lines.push_back({d.consequent, Justification::kDetachment, {}, {pre}, d});
      used[i] = true;
      changed = true;
    }
  }
  proof.lines.push_back({f, Justification::kEntailed, {}, all_refs(), {}});
  return proof;
}

std::vector<GoldenResult> golden_regressions(const AlgebraicOptions& opts) {
  std::vector<GoldenResult> out;
  const Formula target = parse_formula("P(d + o)", road_theory(false).vocabulary);
  for (const bool second : {false, true}) {
    GoldenResult g{second ? "road-with-not-permitted-overtaking" : "road", true, {}};
    auto expect = [&](bool ok, const std::string& what) {
      if (!ok && g.passed) {
        g.passed = false;
        g.detail = what;
      }
    };
    try {
      const Theory t = road_theory(second);
      const LindenbaumStructure s = lindenbaum(t);
      const QuotientAlgebra& q = s.algebra;
      const AtomSet d = q.class_of(Action::basic("d"));
      const AtomSet o = q.class_of(Action::basic("o"));
      expect(q.alive().count() == 2, "quotient should have two alive atoms");
      expect(s.permitted.generator() == d, "P_LT should be generated by [d]");
      expect(s.forbidden.generator().is_empty(), "F_LT should be {[0]}");
      expect(s.forbidden_dual.empty(), "forbidden dual should be empty");
      if (second)
        expect(s.permitted_dual.contains(o), "[o] should be in the permitted dual");
      else
        expect(s.permitted_dual.empty(), "permitted dual should be empty");
      const auto pairs = algebraic_extensions(s, opts);
      const AtomSet expected_p = second ? d : q.alive();
      expect(pairs.size() == 1 && pairs[0].permitted.generator() == expected_p &&
                 pairs[0].forbidden.generator().is_empty(),
             second ? "sole algebraic extension should be (P_LT, F_LT)"
                    : "sole algebraic extension should be (whole algebra, {[0]})");
      expect(algebraic_entails(s, pairs, target) == !second,
             "algebraic consequence of P(d + o)");
      expect(credulous_entails(t, target) == !second,
             "credulous consequence of P(d + o)");
      expect(!entails(t, target).holds, "classical consequence of P(d + o)");
    } catch (const std::exception& e) {
      expect(false, e.what());
    }
    out.push_back(std::move(g));
  }
  return out;
}

CrosscheckReport run_crosscheck(const CrosscheckConfig& cfg) {
  cfg.validate();
  std::vector<CaseOutcome> outcomes(cfg.cases);
  const auto cases = static_cast<std::int64_t>(cfg.cases);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < cases; ++i)
    outcomes[static_cast<std::size_t>(i)] = run_case(cfg, static_cast<std::size_t>(i));
  return assemble(cfg, outcomes);
}

CrosscheckReport run_crosscheck_serial(const CrosscheckConfig& cfg) {
  cfg.validate();
  std::vector<CaseOutcome> outcomes;
  for (std::size_t i = 0; i < cfg.cases; ++i) outcomes.push_back(run_case(cfg, i));
  return assemble(cfg, outcomes);
}

bool CrosscheckReport::passed() const {
  return std::all_of(goldens.begin(), goldens.end(),
                     [](const GoldenResult& g) { return g.passed; }) &&
         std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantTally& t) { return t.failed == 0; });
}

const InvariantTally* CrosscheckReport::find(const std::string& name) const {
  for (const InvariantTally& t : invariants)
    if (t.name == name) return &t;
  return nullptr;
}

std::string CrosscheckReport::render() const {
  std::ostringstream out;
  out << "crosscheck seed=" << config.seed << " cases=" << config.cases
      << " max-actions=" << config.max_actions
      << " max-defaults=" << config.max_defaults
      << " max-facts=" << config.max_facts
      << " mutant=" << (config.drop_dual_check ? "drop-dual-check" : "none") << "\n";
  for (const GoldenResult& g : goldens) {
    out << "golden " << g.name << ": " << (g.passed ? "PASS" : "FAIL");
    if (!g.passed) out << " (" << g.detail << ")";
    out << "\n";
  }
  out << std::left << std::setw(36) << "invariant" << std::right << std::setw(8)
      << "checked" << std::setw(8) << "failed" << "  first failing case\n";
  for (const InvariantTally& t : invariants) {
    out << std::left << std::setw(36) << t.name << std::right << std::setw(8)
        << t.checked << std::setw(8) << t.failed << "  ";
    if (t.first_failing_case)
      out << "#" << *t.first_failing_case << " seed " << hex(*t.first_failing_seed);
    else
      out << "-";
    out << "\n";
  }
  for (const InvariantTally& t : invariants) {
    if (t.failed == 0) continue;
    out << "\nfirst failure of " << t.name << " (case #" << *t.first_failing_case
        << "):\n" << t.first_failure << "\n";
  }
  out << "non-converse witnesses (credulous, not algebraic): "
      << non_converse_witnesses << "\n";
  out << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace ddal
