// Shared fixtures and brute-force oracles for the test suites.  The oracles
// deliberately avoid the library's encoded fast paths: they decode tuples and
// evaluate definitions literally.

#pragma once

#include "semiclones/core.hpp"

#include <random>

namespace fx {

using namespace semiclones;

inline const Carrier B2{2};

inline Operation op(std::size_t n, std::vector<Value> t) {
  return Operation(B2, n, std::move(t));
}
inline Relation rel(std::size_t m, std::initializer_list<Tuple> ts) {
  return Relation(B2, m, ts);
}

inline Operation AND() { return op(2, {0, 0, 0, 1}); }
inline Operation OR() { return op(2, {0, 1, 1, 1}); }
inline Operation NOT() { return op(1, {1, 0}); }
inline Operation ID() { return op(1, {0, 1}); }
inline Operation c0(std::size_t n) { return Operation::constant(B2, n, 0); }
inline Operation c1(std::size_t n) { return Operation::constant(B2, n, 1); }
inline Relation LEQ() { return rel(2, {{0, 0}, {0, 1}, {1, 1}}); }

// Every tuple of `arity` elements drawn from `rows`.
inline std::vector<std::vector<Tuple>> matrices(const std::vector<Tuple>& rows,
                                                std::size_t arity) {
  std::vector<std::vector<Tuple>> out{{}};
  for (std::size_t j = 0; j < arity; ++j) {
    std::vector<std::vector<Tuple>> next;
    for (const auto& partial : out) {
      for (const auto& r : rows) {
        auto v = partial;
        v.push_back(r);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Literal preservation: every matrix with columns in ρ maps row-wise into ρ'.
inline bool naive_preserves(const Operation& f, const RelationPair& p) {
  const std::size_t m = p.arity();
  for (const auto& cols : matrices(p.rho().tuples(), f.arity())) {
    Tuple out(m);
    for (std::size_t i = 0; i < m; ++i) {
      Tuple args;
      for (const auto& c : cols) args.push_back(c[i]);
      out[i] = f.apply(args);
    }
    if (!p.rho_prime().contains(out)) return false;
  }
  return true;
}

inline OpFamily naive_polp(Carrier c, const PairFamily& q, std::size_t n) {
  OpFamily out;
  for (const auto& f : all_operations(c, n)) {
    bool ok = true;
    for (const auto& p : q) ok = ok && naive_preserves(f, p);
    if (ok) out.insert(f);
  }
  return out;
}

inline PairFamily naive_invp(Carrier c, const OpFamily& fs, std::size_t m) {
  PairFamily out;
  for (const auto& p : all_pairs(c, m)) {
    bool ok = true;
    for (const auto& f : fs) ok = ok && naive_preserves(f, p);
    if (ok) out.insert(p);
  }
  return out;
}

inline Operation random_op(std::mt19937& rng, Carrier c, std::size_t n) {
  std::vector<Value> t(c.tuples(n));
  for (auto& v : t) v = static_cast<Value>(rng() % c.k());
  return Operation(c, n, t);
}

inline RelationPair random_pair(std::mt19937& rng, Carrier c, std::size_t m) {
  Relation rho(c, m), rho_prime(c, m);
  for (Index i = 0; i < c.tuples(m); ++i) {
    const auto r = rng() % 3;
    if (r >= 1) rho.insert(i);
    if (r == 2) rho_prime.insert(i);
  }
  return RelationPair(rho, rho_prime);
}

// O^(≤2) at k = 2 including the two nullary constants.
inline OpFamily ops_upto2() {
  OpFamily out;
  for (std::size_t n = 0; n <= 2; ++n) out.insert_all(all_operations(B2, n));
  return out;
}

}  // namespace fx
