#include "ddal/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ddal/crosscheck.hpp"
#include "ddal/defaults.hpp"
#include "ddal/entailment.hpp"
#include "ddal/lindenbaum.hpp"

namespace ddal {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string indent(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += "  " + line + "\n";
  return out;
}

Theory load_consistent(const std::string& path) {
  Theory t = parse_theory(read_file(path));
  if (!consistent(t)) throw InconsistentTheoryError();
  return t;
}

void require_basic(const Theory& t) {
  if (!t.all_defaults_basic())
    throw PreconditionError("algebraic semantics needs basic deontic defaults (P: a ~> b)");
}

struct Options {
  std::string theory;
  std::string query;
  std::string mode = "classical";
  std::string kind = "reiter";
  std::string format = "dot";
  std::string certificate;
  std::string mutant = "none";
  bool serial = false;
  CrosscheckConfig crosscheck;
};

int verify(const Options& o, std::ostream& out) {
  const Theory t = parse_theory(read_file(o.theory));
  const DefaultProof proof = parse_default_proof(read_file(o.certificate), t.vocabulary);
  if (proof.lines.empty()) throw Error("certificate has no lines");
  const Formula target =
      o.query.empty() ? proof.lines.back().formula : parse_formula(o.query, t.vocabulary);
  if (const auto err = default_proof_error(t, proof, target)) {
    out << "REJECTED: " << *err << "\n";
    return kExitNo;
  }
  out << "ACCEPTED: default proof of " << render(target) << "\n";
  return kExitYes;
}

int check(const Options& o, std::ostream& out) {
  if (!o.certificate.empty()) return verify(o, out);
  if (o.query.empty()) throw PreconditionError("--query is required");
  const Theory t = load_consistent(o.theory);
  const Formula q = parse_formula(o.query, t.vocabulary);
  if (o.mode == "classical") {
    const EntailmentVerdict v = entails(t, q);
    if (v.holds) {
      out << "YES\n";
      return kExitYes;
    }
    out << "NO\ncountermodel:\n" << indent(render(*v.countermodel));
    return kExitNo;
  }
  if (o.mode == "default-syntactic") {
    if (!credulous_entails(t, q)) {
      out << "NO\n";
      return kExitNo;
    }
    out << "YES\ncertificate:\n" << indent(render(build_default_proof(t, q)));
    return kExitYes;
  }
  require_basic(t);
  const bool yes = algebraic_entails(t, q);
  out << (yes ? "YES\n" : "NO\n");
  return yes ? kExitYes : kExitNo;
}

int prove(const Options& o, std::ostream& out, std::ostream& err) {
  const Theory t = load_consistent(o.theory);
  const Formula q = parse_formula(o.query, t.vocabulary);
  if (!credulous_entails(t, q)) {
    err << "not a credulous consequence: " << render(q) << "\n";
    return kExitNo;
  }
  out << render(build_default_proof(t, q));
  return kExitYes;
}

int extensions(const Options& o, std::ostream& out) {
  const Theory t = load_consistent(o.theory);
  if (o.kind == "reiter") {
    const auto exts = reiter_extensions(t);
    for (std::size_t i = 0; i < exts.size(); ++i) {
      out << "extension " << i + 1 << "\n  sequence:";
      if (exts[i].witness.steps.empty()) out << " (empty)";
      out << "\n";
      for (const NormalDefault& d : sequence_defaults(t, exts[i].witness))
        out << "    " << render(d) << "\n";
      out << "  generators:\n";
      for (const Formula& f : exts[i].generators) out << "    " << render(f) << "\n";
    }
    return kExitYes;
  }
  require_basic(t);
  const LindenbaumStructure s = lindenbaum(t);
  const auto pairs = algebraic_extensions(s);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    out << "extension " << i + 1 << "\n"
        << "  P generator: [" << render(s.algebra.canonical_term(p.permitted.generator()))
        << "]\n"
        << "  F generator: [" << render(s.algebra.canonical_term(p.forbidden.generator()))
        << "]\n  provenance:";
    if (p.provenance.empty()) out << " (none)";
    out << "\n";
    for (const BasicDeonticDefault& d : p.provenance) out << "    " << render(d) << "\n";
  }
  return kExitYes;
}

int dump_algebra(const Options& o, std::ostream& out) {
  const Theory t = load_consistent(o.theory);
  out << quotient_dot(lindenbaum(t));
  return kExitYes;
}

int crosscheck(const Options& o, std::ostream& out) {
  CrosscheckConfig cfg = o.crosscheck;
  cfg.drop_dual_check = o.mutant == "drop-dual-check";
  cfg.validate();
  const CrosscheckReport report =
      o.serial ? run_crosscheck_serial(cfg) : run_crosscheck(cfg);
  out << report.render();
  return report.passed() ? kExitYes : kExitNo;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Default reasoning over deontic action logic"};
  app.name("ddal");
  app.require_subcommand(1);

  auto add_theory = [&](CLI::App* cmd) {
    cmd->add_option("--theory", o.theory, "Theory file")->required();
  };
  const std::vector<std::string> modes = {"classical", "default-syntactic",
                                          "default-algebraic"};

  CLI::App* check_cmd = app.add_subcommand("check", "Decide a query");
  add_theory(check_cmd);
  check_cmd->add_option("--query", o.query, "Formula to decide");
  check_cmd->add_option("--mode", o.mode, "Consequence relation")
      ->check(CLI::IsMember(modes));
  check_cmd->add_option("--certificate", o.certificate,
                        "Verify this default-proof certificate instead");

  CLI::App* ext_cmd = app.add_subcommand("extensions", "List extensions");
  add_theory(ext_cmd);
  ext_cmd->add_option("--kind", o.kind, "reiter or algebraic")
      ->check(CLI::IsMember({"reiter", "algebraic"}));

  CLI::App* dump_cmd = app.add_subcommand("dump-algebra", "Hasse diagram of the quotient");
  add_theory(dump_cmd);
  dump_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"dot"}));

  CLI::App* prove_cmd = app.add_subcommand("prove", "Emit a default-proof certificate");
  add_theory(prove_cmd);
  prove_cmd->add_option("--query", o.query, "Formula to prove")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a default-proof certificate");
  add_theory(verify_cmd);
  verify_cmd->add_option("--certificate", o.certificate, "Certificate file")->required();
  verify_cmd->add_option("--query", o.query, "Expected conclusion (default: last line)");

  CLI::App* cross_cmd = app.add_subcommand("crosscheck", "Randomized property checks");
  cross_cmd->add_option("--seed", o.crosscheck.seed, "Run seed");
  cross_cmd->add_option("--cases", o.crosscheck.cases, "Number of random cases");
  cross_cmd->add_option("--max-actions", o.crosscheck.max_actions, "At most 3");
  cross_cmd->add_option("--max-defaults", o.crosscheck.max_defaults, "At most 4");
  cross_cmd->add_option("--max-facts", o.crosscheck.max_facts, "At most 4");
  cross_cmd->add_option("--mutant", o.mutant, "Inject a known defect")
      ->check(CLI::IsMember({"none", "drop-dual-check"}));
  cross_cmd->add_flag("--serial", o.serial, "Use the serial reference runner");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitYes : kExitError;
  }

  try {
    if (check_cmd->parsed()) return check(o, out);
    if (ext_cmd->parsed()) return extensions(o, out);
    if (dump_cmd->parsed()) return dump_algebra(o, out);
    if (prove_cmd->parsed()) return prove(o, out, err);
    if (verify_cmd->parsed()) return verify(o, out);
    if (cross_cmd->parsed()) return crosscheck(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ddal
