// Normal default theories over deontic action logic.
//
// Two semantics are provided. The syntactic one computes Reiter extensions
// through closed generating sequences and backs credulous consequence with
// checkable default-proof certificates. The algebraic one works on the
// Lindenbaum quotient and extends the provable permission and prohibition
// ideals with basic deontic defaults.
//
// The defaults of a theory are `Theory::defaults`; every operation here
// requires the facts of the theory to be consistent and throws
// InconsistentTheoryError otherwise, except check_default_proof.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddal/algebra.hpp"
#include "ddal/lindenbaum.hpp"
#include "ddal/syntax.hpp"

namespace ddal {

// Exhaustive search over application orders is bounded by this many defaults.
inline constexpr std::size_t kMaxDefaults = 8;

// ---------------------------------------------------------------------------
// Syntactic extensions

struct GeneratingSequence {
  std::vector<std::size_t> steps;  // indices into Theory::defaults
  bool closed = false;

  friend bool operator==(const GeneratingSequence&,
                         const GeneratingSequence&) = default;
};

// The defaults named by `s`, in order.
std::vector<NormalDefault> sequence_defaults(const Theory& t,
                                             const GeneratingSequence& s);

// Φ together with the consequents of `s`.
std::vector<Formula> sequence_generators(const Theory& t,
                                         const GeneratingSequence& s);

// Checks that every step's prerequisite follows from the facts and the
// earlier consequents, that the cumulative consequents stay consistent, and
// that the `closed` flag is accurate.
bool is_generating_sequence(const Theory& t, const GeneratingSequence& s);

// Closed sequences, one per reachable set of applied defaults. Every step
// adds a consequent not already entailed. Sorted by step list.
std::vector<GeneratingSequence> generating_sequences(const Theory& t);

struct SyntacticExtension {
  std::vector<Formula> generators;  // Φ followed by the added consequents
  GeneratingSequence witness;
};

// Closed sequences with mutually entailing generator sets are merged; the
// first witness in sequence order is kept.
std::vector<SyntacticExtension> reiter_extensions(const Theory& t);

bool extension_entails(const Theory& t, const SyntacticExtension& e,
                       const Formula& f);

// Some Reiter extension entails `f`.
bool credulous_entails(const Theory& t, const Formula& f);

// ---------------------------------------------------------------------------
// Default proofs

enum class Justification {
  kPremise,
  kAxiom,
  kModusPonens,
  kDetachment,
  kEntailed,
};

// Axiom names accepted in certificates.
inline constexpr std::string_view kAxiomD1 = "D1";
inline constexpr std::string_view kAxiomD2 = "D2";
inline constexpr std::string_view kAxiomD3 = "D3";
inline constexpr std::string_view kAxiomNonDegenerate = "zero-neq-one";

struct ProofLine {
  Formula formula;
  Justification tag;
  // Axiom name for kAxiom.
  std::string axiom;
  // 1-based line references: (antecedent, implication) for kModusPonens,
  // (prerequisite) for kDetachment, cited lines for kEntailed.
  std::vector<std::size_t> refs;
  // The detached default for kDetachment.
  std::optional<NormalDefault> rule;
};

struct DefaultProof {
  std::vector<ProofLine> lines;
};

// Name of the axiom scheme `f` instantiates, if any. Both directions of
// D1-D3 and the biconditionals themselves count.
std::optional<std::string> axiom_instance(const Formula& f);

// Certificate for a credulous consequence, following the splice
// construction: each detached consequent is preceded by a derivation of its
// prerequisite, and the target is closed off by a conjunction, an
// implication and modus ponens. Throws PreconditionError when `f` is not a
// credulous consequence.
DefaultProof build_default_proof(const Theory& t, const Formula& f);

// Why `proof` is not a default proof of `f`, or nullopt if it is. Besides
// the per-line checks, the facts together with all line formulas must be
// consistent. Never throws on malformed proofs.
std::optional<std::string> default_proof_error(const Theory& t,
                                               const DefaultProof& proof,
                                               const Formula& f);
bool check_default_proof(const Theory& t, const DefaultProof& proof,
                         const Formula& f);

// One line per step: `<index>. <formula> ; <tag>` with tags
// `premise`, `axiom <name>`, `mp <i> <j>`, `detach <j> by <default>` and
// `entailed` optionally followed by `from <i> ...`.
std::string render(const DefaultProof& proof);
// Inverse of render. Throws ParseError.
DefaultProof parse_default_proof(std::string_view text, const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Algebraic extensions

struct ExtensionPair {
  Ideal permitted;
  Ideal forbidden;
  // Defaults applied on the path that first reached this pair.
  std::vector<BasicDeonticDefault> provenance;
};

struct AlgebraicOptions {
  // Block defaults whose consequent lies above a deontic dual member.
  bool check_duals = true;
};

// Terminal pairs of the iteration from (P_LT, F_LT) over all application
// orders, sorted by generator bits. Throws PreconditionError unless every
// default is basic deontic.
std::vector<ExtensionPair> algebraic_extensions(const Theory& t,
                                                const AlgebraicOptions& opts = {});
std::vector<ExtensionPair> algebraic_extensions(const LindenbaumStructure& s,
                                                const AlgebraicOptions& opts = {});

// (P, F) extends (P_LT, F_LT), is closed under every default whose
// conditions hold with respect to (P, F), and is the least such pair:
// closing (P_LT, F_LT) under those defaults gives back exactly (P, F).
bool is_fixpoint(const LindenbaumStructure& s, const Ideal& permitted,
                 const Ideal& forbidden, const AlgebraicOptions& opts = {});

// Truth of `f` in the quotient with the given ideals, each term denoting
// its class. Throws PreconditionError unless P ∩ F = {[0]}.
bool satisfies_in_algebra(const QuotientAlgebra& q, const Ideal& permitted,
                          const Ideal& forbidden, const Formula& f);

// Some extension pair (P, F) such that `f` holds for every pair of ideals
// P' ⊇ P, F' ⊇ F with P' ∩ F' = {[0]}.
bool algebraic_entails(const Theory& t, const Formula& f,
                       const AlgebraicOptions& opts = {});
bool algebraic_entails(const LindenbaumStructure& s,
                       const std::vector<ExtensionPair>& extensions,
                       const Formula& f);

}  // namespace ddal
