#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "ddal/defaults.hpp"
#include "ddal/entailment.hpp"

namespace ddal {
namespace {

bool is_pair_meet(const Formula& f, FormulaKind modal, const Action& a,
                  const Action& b) {
  return f.kind() == FormulaKind::kAnd && f.left().kind() == modal &&
         f.right().kind() == modal && f.left().action() == a &&
         f.right().action() == b;
}

// `whole` is modal(α + β) and `parts` is modal(α) /\ modal(β).
bool is_join_split(const Formula& whole, const Formula& parts, FormulaKind modal) {
  if (whole.kind() != modal || whole.action().kind() != ActionKind::kJoin)
    return false;
  const Action& j = whole.action();
  return is_pair_meet(parts, modal, j.left(), j.right());
}

// `lhs` is α = 0 and `rhs` is P(α) /\ F(α).
bool is_zero_split(const Formula& lhs, const Formula& rhs) {
  if (lhs.kind() != FormulaKind::kEq || lhs.rhs().kind() != ActionKind::kZero)
    return false;
  const Action& a = lhs.lhs();
  return rhs.kind() == FormulaKind::kAnd &&
         rhs.left() == Formula::perm(a) && rhs.right() == Formula::forb(a);
}

bool either_direction(const Formula& f, auto&& related) {
  switch (f.kind()) {
    case FormulaKind::kIff:
    case FormulaKind::kImplies:
      if (related(f.left(), f.right())) return true;
      if (related(f.right(), f.left())) return true;
      return false;
    default:
      return false;
  }
}

std::string tag_text(const ProofLine& l) {
  std::string out;
  switch (l.tag) {
    case Justification::kPremise:
      return "premise";
    case Justification::kAxiom:
      return "axiom " + l.axiom;
    case Justification::kModusPonens:
      return "mp " + std::to_string(l.refs.at(0)) + " " + std::to_string(l.refs.at(1));
    case Justification::kDetachment:
      return "detach " + std::to_string(l.refs.at(0)) + " by " + render(*l.rule);
    case Justification::kEntailed:
      out = "entailed";
      if (!l.refs.empty()) {
        out += " from";
        for (std::size_t r : l.refs) out += " " + std::to_string(r);
      }
      return out;
  }
  return out;
}

// Splice construction over the shortest prefix of a closed generating
// sequence whose generators entail the target.
class ProofBuilder {
 public:
  ProofBuilder(const Theory& t, std::vector<std::size_t> steps)
      : t_(t), steps_(std::move(steps)), derived_(steps_.size(), 0) {}

  DefaultProof build(const Formula& goal) {
    prove(goal, steps_.size());
    return std::move(proof_);
  }

 private:
  struct Source {
    Formula formula;
    bool is_consequent;
    std::size_t index;  // position in steps_ or in t_.facts
  };

  std::size_t emit(ProofLine line) {
    proof_.lines.push_back(std::move(line));
    return proof_.lines.size();
  }

  std::size_t premise(const Formula& f) {
    return emit({f, Justification::kPremise, {}, {}, {}});
  }

  std::size_t derive_consequent(std::size_t m) {
    if (derived_[m] != 0) return derived_[m];
    const NormalDefault& d = t_.defaults[steps_[m]];
    const std::size_t pre = prove(d.prerequisite, m);
    derived_[m] = emit({d.consequent, Justification::kDetachment, {}, {pre}, d});
    return derived_[m];
  }

  std::size_t valid_line(const Formula& f, std::vector<std::size_t> refs = {}) {
    if (refs.empty()) {
      if (auto ax = axiom_instance(f))
        return emit({f, Justification::kAxiom, *ax, {}, {}});
    }
    return emit({f, Justification::kEntailed, {}, std::move(refs), {}});
  }

  // Line number of `goal`, derived from the facts and the consequents of
  // the first `limit` steps.
  std::size_t prove(const Formula& goal, std::size_t limit) {
    if (std::find(t_.facts.begin(), t_.facts.end(), goal) != t_.facts.end())
      return premise(goal);
    for (std::size_t m = 0; m < limit; ++m)
      if (t_.defaults[steps_[m]].consequent == goal) return derive_consequent(m);

    std::vector<Source> sources;
    for (std::size_t m = 0; m < limit; ++m)
      sources.push_back({t_.defaults[steps_[m]].consequent, true, m});
    for (std::size_t i = 0; i < t_.facts.size(); ++i)
      sources.push_back({t_.facts[i], false, i});
    const std::vector<Source> support = minimal_support(sources, goal);

    if (support.empty()) return valid_line(goal);
    std::vector<std::pair<Formula, std::size_t>> cited;
    for (const Source& s : support) {
      const std::size_t line =
          s.is_consequent ? derive_consequent(s.index) : premise(s.formula);
      cited.emplace_back(s.formula, line);
    }
    std::sort(cited.begin(), cited.end(), [](const auto& a, const auto& b) {
      return render(a.first) < render(b.first);
    });
    std::vector<Formula> conjuncts;
    std::vector<std::size_t> refs;
    for (const auto& [f, line] : cited) {
      conjuncts.push_back(f);
      refs.push_back(line);
    }
    std::sort(refs.begin(), refs.end());
    const Formula conj = conjunction_of(conjuncts);
    const std::size_t conj_line =
        conjuncts.size() == 1 ? refs[0] : valid_line(conj, refs);
    const std::size_t imp_line = valid_line(implication(conj, goal));
    return emit({goal, Justification::kModusPonens, {}, {conj_line, imp_line}, {}});
  }

  // Drops sources greedily in order while the rest still entail the goal.
  std::vector<Source> minimal_support(const std::vector<Source>& sources,
                                      const Formula& goal) const {
    std::vector<bool> keep(sources.size(), true);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      keep[i] = false;
      std::vector<Formula> rest;
      for (std::size_t j = 0; j < sources.size(); ++j)
        if (keep[j]) rest.push_back(sources[j].formula);
      if (!entails(t_.vocabulary, rest, goal).holds) keep[i] = true;
    }
    std::vector<Source> out;
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (keep[i]) out.push_back(sources[i]);
    return out;
  }

  const Theory& t_;
  std::vector<std::size_t> steps_;
  std::vector<std::size_t> derived_;  // line of each step's consequent, 0 if none
  DefaultProof proof_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> to_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    s = trim(s);
    if (s.empty()) return out;
    std::size_t end = s.find_first_of(" \t");
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(0, end));
    s.remove_prefix(end);
  }
}

std::optional<std::string> line_error(const Theory& t, const DefaultProof& proof,
                                      std::size_t k) {
  const ProofLine& line = proof.lines[k - 1];
  for (std::size_t r : line.refs)
    if (r == 0 || r >= k) return "refers to line " + std::to_string(r) + ", not an earlier line";
  const Formula& f = line.formula;
  switch (line.tag) {
    case Justification::kPremise:
      if (std::find(t.facts.begin(), t.facts.end(), f) == t.facts.end())
        return std::string("not a fact of the theory");
      return std::nullopt;
    case Justification::kAxiom: {
      const auto name = axiom_instance(f);
      if (!name || *name != line.axiom)
        return "not an instance of axiom " + line.axiom;
      return std::nullopt;
    }
    case Justification::kModusPonens: {
      if (line.refs.size() != 2) return std::string("modus ponens needs two lines");
      const Formula& antecedent = proof.lines[line.refs[0] - 1].formula;
      const Formula& conditional = proof.lines[line.refs[1] - 1].formula;
      if (!(conditional == implication(antecedent, f)))
        return "line " + std::to_string(line.refs[1]) + " is not line " +
               std::to_string(line.refs[0]) + " -> this line";
      return std::nullopt;
    }
    case Justification::kDetachment: {
      if (line.refs.size() != 1 || !line.rule)
        return std::string("detachment needs one line and a default");
      const NormalDefault& d = *line.rule;
      if (std::find(t.defaults.begin(), t.defaults.end(), d) == t.defaults.end())
        return "default " + render(d) + " is not in the theory";
      if (!(proof.lines[line.refs[0] - 1].formula == d.prerequisite))
        return "line " + std::to_string(line.refs[0]) +
               " is not the prerequisite of " + render(d);
      if (!(f == d.consequent))
        return "not the consequent of " + render(d);
      return std::nullopt;
    }
    case Justification::kEntailed: {
      std::vector<Formula> cited;
      for (std::size_t r : line.refs) cited.push_back(proof.lines[r - 1].formula);
      if (!entails(t.vocabulary, cited, f).holds)
        return std::string("not entailed by the cited lines");
      return std::nullopt;
    }
  }
  return std::string("unknown justification");
}

}  // namespace

std::optional<std::string> axiom_instance(const Formula& f) {
  if (f.kind() == FormulaKind::kNot && f.child() ==
                                           Formula::eq(Action::zero(), Action::one()))
    return std::string(kAxiomNonDegenerate);
  auto split = [](FormulaKind modal) {
    return [modal](const Formula& a, const Formula& b) {
      return is_join_split(a, b, modal);
    };
  };
  if (either_direction(f, split(FormulaKind::kPerm))) return std::string(kAxiomD1);
  if (either_direction(f, split(FormulaKind::kForb))) return std::string(kAxiomD2);
  if (either_direction(f, is_zero_split)) return std::string(kAxiomD3);
  return std::nullopt;
}

DefaultProof build_default_proof(const Theory& t, const Formula& f) {
  for (const SyntacticExtension& e : reiter_extensions(t)) {
    if (!extension_entails(t, e, f)) continue;
    std::vector<Formula> known = t.facts;
    std::size_t n = 0;
    while (!entails(t.vocabulary, known, f).holds) {
      known.push_back(t.defaults[e.witness.steps[n]].consequent);
      ++n;
    }
    std::vector<std::size_t> prefix(e.witness.steps.begin(),
                                    e.witness.steps.begin() + n);
    return ProofBuilder(t, std::move(prefix)).build(f);
  }
  throw PreconditionError("not a credulous consequence: " + render(f));
}

std::optional<std::string> default_proof_error(const Theory& t,
                                               const DefaultProof& proof,
                                               const Formula& f) {
  try {
    if (proof.lines.empty()) return std::string("empty proof");
    for (const ProofLine& line : proof.lines) {
      if (!well_formed(line.formula, t.vocabulary))
        return "line mentions an undeclared action: " + render(line.formula);
    }
    for (std::size_t k = 1; k <= proof.lines.size(); ++k)
      if (auto err = line_error(t, proof, k))
        return "line " + std::to_string(k) + ": " + *err;
    if (!(proof.lines.back().formula == f))
      return "last line is not " + render(f);
    std::vector<Formula> all = t.facts;
    for (const ProofLine& line : proof.lines) all.push_back(line.formula);
    if (!consistent(t.vocabulary, all))
      return std::string("the facts and the proof lines are inconsistent");
    return std::nullopt;
  } catch (const std::exception& e) {
    return std::string("malformed proof: ") + e.what();
  }
}

bool check_default_proof(const Theory& t, const DefaultProof& proof,
                         const Formula& f) {
  return !default_proof_error(t, proof, f).has_value();
}

std::string render(const DefaultProof& proof) {
  std::ostringstream out;
  for (std::size_t k = 0; k < proof.lines.size(); ++k)
    out << k + 1 << ". " << render(proof.lines[k].formula) << " ; "
        << tag_text(proof.lines[k]) << "\n";
  return out.str();
}

DefaultProof parse_default_proof(std::string_view text, const Vocabulary& vocab) {
  DefaultProof proof;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    const std::size_t base = pos;
    pos = eol + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto column = [&](std::string_view part) {
      return static_cast<std::size_t>(part.data() - text.data()) - base + 1;
    };

    const std::size_t dot = line.find('.');
    const auto index = dot == std::string_view::npos
                           ? std::nullopt
                           : to_index(trim(line.substr(0, dot)));
    if (!index) throw ParseError("expected '<index>.'", line_no, column(line));
    if (*index != proof.lines.size() + 1)
      throw ParseError("expected line number " + std::to_string(proof.lines.size() + 1),
                       line_no, column(line));
    const std::size_t semi = line.find(';', dot);
    if (semi == std::string_view::npos)
      throw ParseError("expected ';' before the justification", line_no,
                       column(line) + line.size());

    const std::string_view formula_text = trim(line.substr(dot + 1, semi - dot - 1));
    ProofLine entry{Formula::top(), Justification::kPremise, {}, {}, {}};
    auto parse_part = [&](std::string_view part, auto&& parser) {
      try {
        return parser(part);
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no, column(part) + e.column() - 1);
      }
    };
    entry.formula = parse_part(formula_text, [&](std::string_view s) {
      return parse_formula(s, vocab);
    });

    const std::string_view tag = trim(line.substr(semi + 1));
    const auto w = words(tag);
    auto bad_tag = [&](const std::string& why) {
      return ParseError(why, line_no, column(tag));
    };
    auto ref = [&](std::string_view s) {
      const auto v = to_index(s);
      if (!v) throw bad_tag("expected a line number, got '" + std::string(s) + "'");
      return *v;
    };
    if (w.empty()) throw bad_tag("missing justification");
    if (w[0] == "premise" && w.size() == 1) {
      entry.tag = Justification::kPremise;
    } else if (w[0] == "axiom" && w.size() == 2) {
      entry.tag = Justification::kAxiom;
      entry.axiom = std::string(w[1]);
    } else if (w[0] == "mp" && w.size() == 3) {
      entry.tag = Justification::kModusPonens;
      entry.refs = {ref(w[1]), ref(w[2])};
    } else if (w[0] == "detach" && w.size() >= 4 && w[2] == "by") {
      entry.tag = Justification::kDetachment;
      entry.refs = {ref(w[1])};
      const std::string_view rule_text =
          trim(tag.substr(static_cast<std::size_t>(w[3].data() - tag.data())));
      entry.rule = parse_part(rule_text, [&](std::string_view s) {
        return parse_default(s, vocab);
      });
    } else if (w[0] == "entailed" && (w.size() == 1 || w[1] == "from")) {
      entry.tag = Justification::kEntailed;
      for (std::size_t i = 2; i < w.size(); ++i) entry.refs.push_back(ref(w[i]));
    } else {
      throw bad_tag("unknown justification '" + std::string(tag) + "'");
    }
    proof.lines.push_back(std::move(entry));
  }
  return proof;
}

}  // namespace ddal
