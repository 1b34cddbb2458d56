// Relation pair clones: general superposition and its elementary instances,
// bounded generation of ⟨Q⟩, the pair-side closures sLOC/LOC and s-directed
// families.

#pragma once

#include "semiclones/core.hpp"

namespace semiclones {

// One superposition scheme ⟨β; (α_i)⟩ over the variable set μ = {0..mu-1}.
// beta : m → μ, alphas[i] : m_i → μ.
struct SuperpositionSpec {
  std::size_t mu = 0;
  std::size_t m = 0;
  std::vector<std::size_t> beta;
  std::vector<std::vector<std::size_t>> alphas;
};

// {a∘β : a ∈ A^μ, a∘α_i ∈ ρ_i for all i}.
Relation superpose(Carrier carrier, const SuperpositionSpec& spec,
                   const std::vector<Relation>& rels,
                   const Caps& caps = Caps::defaults());
// The same scheme applied to both components.
RelationPair general_superposition(Carrier carrier,
                                   const SuperpositionSpec& spec,
                                   const std::vector<RelationPair>& pairs,
                                   const Caps& caps = Caps::defaults());

// Elementary operations, each a fixed superposition scheme.
// permute: tuples x ↦ x∘π for a permutation π of the coordinates.
RelationPair permute(const RelationPair& p, const std::vector<std::size_t>& pi);
// identify: {y ∈ A^{m'} : y∘φ ∈ ρ} for φ : m → m'.
RelationPair identify(const RelationPair& p, const std::vector<std::size_t>& phi,
                      std::size_t target_arity);
// add_fictitious: new unconstrained coordinates at the given positions of the
// result (ascending, distinct, below the result arity).
RelationPair add_fictitious(const RelationPair& p,
                            const std::vector<std::size_t>& positions);
// project_onto: x ↦ (x_{c_0}, ..., x_{c_{r-1}}), repetitions allowed.
RelationPair project_onto(const RelationPair& p,
                          const std::vector<std::size_t>& coords);
RelationPair intersect(const RelationPair& p, const RelationPair& q);
// ({x ∈ A^m : x_i = x_j}, same); i = j gives the full pair.
RelationPair diagonal(Carrier carrier, std::size_t m, std::size_t i,
                      std::size_t j);
// (A^m, A^m).
RelationPair full_pair(Carrier carrier, std::size_t m);

// The same operations computed directly on tuple sets.
namespace direct {
Relation map_coords(const Relation& r, const std::vector<std::size_t>& coords);
Relation preimage(const Relation& r, const std::vector<std::size_t>& phi,
                  std::size_t target_arity);
RelationPair permute(const RelationPair& p, const std::vector<std::size_t>& pi);
RelationPair identify(const RelationPair& p, const std::vector<std::size_t>& phi,
                      std::size_t target_arity);
RelationPair add_fictitious(const RelationPair& p,
                            const std::vector<std::size_t>& positions);
RelationPair project_onto(const RelationPair& p,
                          const std::vector<std::size_t>& coords);
RelationPair intersect(const RelationPair& p, const RelationPair& q);
RelationPair diagonal(Carrier carrier, std::size_t m, std::size_t i,
                      std::size_t j);
}  // namespace direct

struct RpCloneResult {
  PairFamily pairs;                // ⟨Q⟩ restricted to arities ≤ m*
  std::size_t intermediate_cap = 0;
  bool changed_by_last_increment = false;
  bool size_capped = false;        // closure stopped at Caps::max_generated
  std::size_t generated = 0;       // pairs held at the final cap
};

// Closure of Q^{≤c} (plus the input-free pairs) under the elementary basis,
// all intermediates of arity ≤ c, reported up to arity m*.  The flag compares
// against the run at c - 1 when c > m*.
RpCloneResult rpclone_generate(Carrier carrier, const PairFamily& q,
                               std::size_t m_star, std::size_t c,
                               const Caps& caps = Caps::defaults());

// Raises c from c_start until the ≤ m* slice is unchanged over two
// consecutive increments, the size cap is hit, or c_max is passed.
RpCloneResult rpclone_stabilised(Carrier carrier, const PairFamily& q,
                                 std::size_t m_star, std::size_t c_start,
                                 std::size_t c_max,
                                 const Caps& caps = Caps::defaults());

// Raw closure up to arity c; `capped` reports a size-cap stop.
PairFamily rp_closure(Carrier carrier, const PairFamily& q, std::size_t c,
                      const Caps& caps, bool* capped = nullptr);

// sLOC_s(Q)^(m): (σ, σ') such that every B ⊆ σ with |B| ≤ s lies in the ρ
// of some (ρ, ρ') ∈ Q^(m) with ρ' ⊆ σ'.
PairFamily sloc_pairs(Carrier carrier, const PairFamily& q, std::size_t s,
                      std::size_t m, const Caps& caps = Caps::defaults());
// LOC(Q)^(m), i.e. sLOC at s = k^m.
PairFamily loc_pairs(Carrier carrier, const PairFamily& q, std::size_t m,
                     const Caps& caps = Caps::defaults());

// The relational sLOC_s(Q)^(m): σ such that every B ⊆ σ with |B| ≤ s lies
// in some ρ ∈ Q^(m) with ρ ⊆ σ.
RelFamily sloc_relations(Carrier carrier, const RelFamily& q, std::size_t s,
                         std::size_t m, const Caps& caps = Caps::defaults());

// Every C ⊆ ⋃ first components with |C| ≤ s lies in a single first
// component; implies T ≠ ∅.
bool is_s_directed(const PairFamily& t, std::size_t s);
// Componentwise union of a non-empty single-arity family.
RelationPair union_family(const PairFamily& t);

RelFamily first_components(const PairFamily& q);
RelFamily second_components(const PairFamily& q);

}  // namespace semiclones
