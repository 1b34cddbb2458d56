// Generated semiclones and clones: the iterative Post algebra, the R_j/S_j
// fixpoint over a finite index set, n-ary parts of generated structures,
// transformation semigroups and the projection decision procedure.

#pragma once

#include "semiclones/core.hpp"

namespace semiclones {

enum class IterativeSymbol { zeta, tau, delta, nabla };

// ζ cycles the arguments, τ swaps the first two, Δ identifies the first two,
// ∇ adds a fictitious first argument.  Low arities follow the identity
// conventions (ζ on arity 0, τ and Δ on arities 0 and 1).
Operation iterative_op(IterativeSymbol symbol, const Operation& f);

// f ∗ g, of arity max(0, ar(f) + ar(g) - 1).
Operation star(const Operation& f, const Operation& g);

// Relations over a finite index set K = {0, ..., |K|-1} are relations of
// arity |K|.
struct GammaResult {
  Relation r;
  Relation s;
  std::size_t steps = 0;
};

// R_0 = B, S_j = ⋃_f f(R_j), R_{j+1} = R_j ∪ S_j until S_j ⊆ R_j.  Nullary
// members of F contribute their constant K-tuple.
GammaResult gamma_fixpoint(Carrier carrier, const OpFamily& f,
                           const Relation& b,
                           const Caps& caps = Caps::defaults());

// An n-ary operation read as its A^n-indexed value tuple, and back.
Index table_code(const Operation& f);
Operation from_table_code(Carrier carrier, std::size_t n, Index code);

// The fixpoint behind ⟨F⟩_s^(n) for n ≥ 1: K = A^n and B the projection
// tables read as K-tuples.  S decodes to ⟨F⟩_s^(n), R to ⟨F⟩_clone^(n).
GammaResult semiclone_gamma(Carrier carrier, const OpFamily& f, std::size_t n,
                            const Caps& caps = Caps::defaults());

// ⟨F⟩_s^(n).  For n = 0 the constants are closed directly under F.
OpFamily semiclone_nary_part(Carrier carrier, const OpFamily& f,
                             std::size_t n,
                             const Caps& caps = Caps::defaults());
// ⟨F⟩_clone^(n) = ⟨F⟩_s^(n) ∪ Triv^(n).
OpFamily clone_nary_part(Carrier carrier, const OpFamily& f, std::size_t n,
                         const Caps& caps = Caps::defaults());
// The clone part as read off the R component of the same fixpoint.
OpFamily clone_nary_part_from_gamma(Carrier carrier, const OpFamily& f,
                                    std::size_t n,
                                    const Caps& caps = Caps::defaults());
OpFamily semiclone_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                        std::size_t hi, const Caps& caps = Caps::defaults());
OpFamily clone_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                    std::size_t hi, const Caps& caps = Caps::defaults());

// Closure of unary maps under composition.
OpFamily semigroup_generate(const OpFamily& g);
// {h∘e^n_i : h ∈ S, i < n}, the n-ary part of the semiclone generated by a
// transformation semigroup S.
OpFamily semigroup_semiclone_part(const OpFamily& s, std::size_t n);

// Whether ⟨F⟩_clone ∖ Triv is a semiclone, i.e. whether id stays outside
// ⟨F ∖ Triv⟩_s.
bool decide_projections(Carrier carrier, const OpFamily& f,
                        const Caps& caps = Caps::defaults());

// The identity on A as a K-tuple with K = A.
Relation identity_tuple(Carrier carrier);

}  // namespace semiclones
