// Verification harness: windowed, exhaustive or seeded checks of the Galois
// correspondences and their generation theorems, each producing a report.

#pragma once

#include "semiclones/core.hpp"

#include <json.hpp>

namespace semiclones {

enum class Verdict { pass, fail, refused, incomplete };

std::string verdict_name(Verdict v);

struct Report {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::pass;
  nlohmann::json counterexample;  // null unless the check failed
  nlohmann::json stats = nlohmann::json::object();
  std::string note;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;

  bool passed() const { return verdict == Verdict::pass; }
};

// Runtime is left out unless asked for, so that output is reproducible.
nlohmann::json to_json(const Report& r, bool with_runtime = false);

// Records the first failure; later ones only bump the failure count.
void record_failure(Report& r, nlohmann::json counterexample);

// ---------------------------------------------------------------------------

// Extensivity, antitonicity and the triple identities for Polp/Invp, plus the
// statements that Polp Invp contains the generated semiclone and Invp Polp
// the generated pair clone, on singleton and two-element families of
// operations of arity ≤ op_cap and pairs of arity ≤ pair_cap, with every
// image restricted to arities ≤ window.  The mutant negates preservation on
// the Polp side only, which must be detected.
Report check_galois_axioms(Carrier carrier, std::size_t op_cap,
                           std::size_t pair_cap, std::size_t window,
                           const Caps& caps, bool mutant = false);

// Polp^(n) Invp^{≤s} F = sLoc_s ⟨F⟩_s^(n), the single-arity version with
// Invp^(s) for a non-empty carrier, and the fixpoint step bound.
Report check_polp_invp_sloc(Carrier carrier, const OpFamily& f,
                            std::size_t s_max, std::size_t n_max,
                            const Caps& caps);
// The same over every singleton and two-element family of operations of
// arity ≤ op_cap.
Report check_polp_invp_sloc_universe(Carrier carrier, std::size_t op_cap,
                                     std::size_t s_max, std::size_t n_max,
                                     const Caps& caps);

// Γ over K = A yields the ≤-least invariant pair containing B, for every
// B ⊆ A^K and every singleton family of operations of arity ≤ op_cap.
Report check_gamma_minimality(Carrier carrier, std::size_t op_cap,
                              const Caps& caps);

// Invp^(m) Polp^{≤s} Q = sLOC_s ⟨Q⟩^(m) with ⟨Q⟩ generated at increasing
// intermediate caps, plus the Polp^{0,s} and Polp^(s) variants.  A right side
// strictly inside an agreeing left side is reported as incomplete.
Report check_invp_polp_sloc(Carrier carrier, const PairFamily& q,
                            std::size_t s_max, std::size_t m_max,
                            const Caps& caps, std::size_t c_start = 4,
                            std::size_t c_max = 6);
// A fixed suite of pair families on the two-element carrier.
Report check_invp_polp_sloc_suite(const Caps& caps, std::size_t s_max = 2,
                                  std::size_t m_max = 2);
std::vector<PairFamily> invp_polp_suite();

// LOC(Q)^(m) = enc(Q)^(m): every subset of Rp^(1) and `samples` seeded
// families at arity 2, on the two-element carrier.
Report check_finite_collapse(std::size_t samples, std::uint64_t seed,
                             const Caps& caps);

// Unions of s-directed families inside sLOC_s(Q)^(m) stay inside.
Report check_directed_unions(std::size_t samples, std::uint64_t seed,
                             const Caps& caps);

// Structure of generated semiclones: projections alone give Triv, adding a
// projection gives the clone, intersection with Triv is ∅ or Triv, Polp Q is
// a semiclone (a clone iff Q is identical), and the fixed-point closures.
Report check_semiclone_lemmas(Carrier carrier, const OpFamily& f,
                              std::size_t window, const Caps& caps);

// ⟨F⟩_clone ∖ Triv is a semiclone exactly when decide_projections says so,
// checked by composing inside the window.
Report check_decidability(Carrier carrier, const OpFamily& f,
                          std::size_t window, const Caps& caps);

// Classical Pol/Inv consequences over every singleton and two-element family
// of operations of arity ≤ 2, and a suite of relation families.
Report check_classical(const Caps& caps);

// Transformation semigroups on the two-element carrier: closure, the
// Polp Invp fixpoint characterisation and strict pairs versus identity.
Report check_transformation_semigroups(std::size_t samples,
                                       std::uint64_t seed, const Caps& caps);

// Every check above at its default parameters.
std::vector<Report> run_all(std::uint64_t seed, const Caps& caps);
std::vector<std::string> check_names();
// Runs one named check at default parameters; throws DomainError if unknown.
Report run_check(const std::string& name, std::uint64_t seed,
                 const Caps& caps);

}  // namespace semiclones
