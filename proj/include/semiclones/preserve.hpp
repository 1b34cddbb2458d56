// Preservation, the Polp/Invp Galois maps and the operation-side local
// closures.  Everything here is brute force over dense encodings; the caps in
// Caps decide what is refused.

#pragma once

#include "semiclones/core.hpp"

namespace semiclones {

using PreservesFn =
    std::function<bool(const Operation&, const RelationPair&)>;

// f preserves (ρ, ρ') iff f applied row-wise to every n-tuple of members of ρ
// lands in ρ'.  Nullary f contributes the constant tuple (f(), ..., f()).
bool preserves(const Operation& f, const RelationPair& p);

// Polp(Q)^(n): every n-ary operation preserving every pair of Q.
OpFamily polp(Carrier carrier, const PairFamily& q, std::size_t n,
              const Caps& caps = Caps::defaults());
// Same enumeration with an arbitrary preservation predicate.
OpFamily polp_by(Carrier carrier, const PairFamily& q, std::size_t n,
                 const Caps& caps, const PreservesFn& pred);
// Union of the slices lo..hi.
OpFamily polp_upto(Carrier carrier, const PairFamily& q, std::size_t lo,
                   std::size_t hi, const Caps& caps = Caps::defaults());

// Invp(F)^(m): every m-ary pair preserved by every member of F.
PairFamily invp(Carrier carrier, const OpFamily& f, std::size_t m,
                const Caps& caps = Caps::defaults());
PairFamily invp_by(Carrier carrier, const OpFamily& f, std::size_t m,
                   const Caps& caps, const PreservesFn& pred);
PairFamily invp_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                     std::size_t hi, const Caps& caps = Caps::defaults());

// Identical pairs (ρ, ρ) for every ρ in the family.
PairFamily identical_pairs(const RelFamily& rels);

// Classical maps: Pol = Polp of identical pairs, Inv = relations ρ with
// (ρ, ρ) invariant, enumerated over the 2^(k^m) relations.
OpFamily pol(Carrier carrier, const RelFamily& rels, std::size_t n,
             const Caps& caps = Caps::defaults());
RelFamily inv(Carrier carrier, const OpFamily& f, std::size_t m,
              const Caps& caps = Caps::defaults());
RelFamily inv_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                   std::size_t hi, const Caps& caps = Caps::defaults());

// sLoc_s(F)^(n): operations interpolating a member of F^(n) on every subset
// of A^n with at most s elements.
OpFamily sloc_ops(Carrier carrier, const OpFamily& f, std::size_t s,
                  std::size_t n, const Caps& caps = Caps::defaults());
// Loc(F)^(n), i.e. sLoc at s = k^n.
OpFamily loc_ops(Carrier carrier, const OpFamily& f, std::size_t n,
                 const Caps& caps = Caps::defaults());

}  // namespace semiclones
