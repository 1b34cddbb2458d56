#include "doctest.h"
#include "fixtures.hpp"
#include "semiclones/preserve.hpp"

using namespace fx;

namespace {

const RelationPair A0_EMPTY(Relation::full(B2, 0), Relation(B2, 0));

// Literal sLoc: for every B ⊆ A^n with |B| ≤ s some f ∈ F^(n) agrees with g.
OpFamily naive_sloc(Carrier c, const OpFamily& f, std::size_t s,
                    std::size_t n) {
  OpFamily out;
  const Index points = c.tuples(n);
  for (const auto& g : all_operations(c, n)) {
    bool ok = true;
    for (std::uint64_t mask = 0; ok && mask < (std::uint64_t{1} << points);
         ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > s) continue;
      bool found = false;
      for (const auto& h : f.arity(n)) {
        bool agree = true;
        for (Index x = 0; x < points; ++x) {
          if (((mask >> x) & 1u) && g(x) != h(x)) agree = false;
        }
        found = found || agree;
      }
      ok = found;
    }
    if (ok) out.insert(g);
  }
  return out;
}

}  // namespace

TEST_CASE("preserves edge semantics") {
  for (const auto& p : all_pairs(B2, 2)) {
    if (p.is_identical()) CHECK(preserves(ID(), p));
  }
  for (const auto& f : ops_upto2()) CHECK_FALSE(preserves(f, A0_EMPTY));
  CHECK_FALSE(preserves(NOT(), RelationPair::identical(LEQ())));
  CHECK(preserves(c1(0), RelationPair(rel(1, {{0}, {1}}), rel(1, {{1}}))));
  CHECK_FALSE(preserves(c0(0), RelationPair(rel(1, {{0}, {1}}), rel(1, {{1}}))));
  // Positive arity preserves empty pairs; nullary ones never do.
  for (std::size_t m = 0; m <= 2; ++m) {
    const RelationPair e(Relation(B2, m), Relation(B2, m));
    CHECK(preserves(AND(), e));
    CHECK_FALSE(preserves(c0(0), e));
  }
  // Nullary ops and the arity-0 pairs.
  const RelationPair full0 = RelationPair::identical(Relation::full(B2, 0));
  CHECK(preserves(c0(0), full0));
  CHECK_THROWS_AS(preserves(Operation::constant(Carrier(3), 1, 0), full0),
                  DomainError);
}

TEST_CASE("preserves agrees with the literal definition") {
  for (const auto& f : ops_upto2()) {
    for (std::size_t m = 0; m <= 2; ++m) {
      for (const auto& p : all_pairs(B2, m)) {
        CHECK(preserves(f, p) == naive_preserves(f, p));
      }
    }
  }
  std::mt19937 rng(3);
  const Carrier c3(3);
  for (int t = 0; t < 300; ++t) {
    const auto f = random_op(rng, c3, rng() % 3);
    const auto p = random_pair(rng, c3, rng() % 3);
    CHECK(preserves(f, p) == naive_preserves(f, p));
  }
}

TEST_CASE("polp examples") {
  CHECK(polp(B2, {}, 1).size() == 4);
  for (std::size_t n = 0; n <= 3; ++n) {
    CHECK(polp(B2, {A0_EMPTY}, n).empty());
  }
  const PairFamily leq{RelationPair::identical(LEQ())};
  CHECK(polp(B2, leq, 1) == OpFamily{c0(1), ID(), c1(1)});
  CHECK(pol(B2, RelFamily{LEQ()}, 1) == OpFamily{c0(1), ID(), c1(1)});
  Caps tiny;
  tiny.max_table_candidates = 1000;
  CHECK_THROWS_AS(polp(B2, leq, 4, tiny), CapExceeded);
}

TEST_CASE("invp examples") {
  CHECK(invp(B2, {}, 1).size() == 9);
  CHECK(inv(B2, {}, 1).size() == 4);
  CHECK(invp(B2, OpFamily{NOT()}, 1) ==
        PairFamily{RelationPair(Relation(B2, 1), Relation(B2, 1)),
                   RelationPair::identical(Relation::full(B2, 1))});
  for (const auto& f : ops_upto2()) {
    for (std::size_t m = 0; m <= 2; ++m) {
      const RelationPair e(Relation(B2, m), Relation(B2, m));
      CHECK(invp(B2, OpFamily{f}, m).contains(e) == (f.arity() > 0));
    }
  }
  Caps tiny;
  tiny.max_pair_candidates = 50;
  CHECK_THROWS_AS(invp(B2, {}, 2, tiny), CapExceeded);
}

TEST_CASE("polp and invp agree with literal oracles") {
  std::mt19937 rng(11);
  const auto universe = ops_upto2().to_vector();
  for (int t = 0; t < 60; ++t) {
    OpFamily f;
    const auto count = rng() % 3;
    for (std::size_t i = 0; i < count; ++i)
      f.insert(universe[rng() % universe.size()]);
    for (std::size_t m = 0; m <= 2; ++m) {
      const PairFamily got = invp(B2, f, m);
      CHECK(got == naive_invp(B2, f, m));
      CHECK(got == invp_by(B2, f, m, Caps::defaults(), preserves));
      // Definitional link between inv and invp.
      RelFamily identical;
      for (const auto& p : got)
        if (p.is_identical()) identical.insert(p.rho());
      CHECK(inv(B2, f, m) == identical);
    }
    PairFamily q;
    for (int i = 0; i < 3; ++i) q.insert(random_pair(rng, B2, rng() % 3));
    for (std::size_t n = 0; n <= 2; ++n) {
      CHECK(polp(B2, q, n) == naive_polp(B2, q, n));
      CHECK(polp(B2, q, n) == polp_by(B2, q, n, Caps::defaults(), preserves));
    }
  }
}

TEST_CASE("k = 0 carrier") {
  const Carrier e(0);
  // Rp consists of (A^0, ∅), (A^0, A^0), (∅, ∅) at arity 0 and one empty
  // pair at each positive arity.
  CHECK(all_pairs(e, 0).size() == 3);
  CHECK(all_pairs(e, 1).size() == 1);
  CHECK(all_operations(e, 0).empty());
  const RelationPair a0_empty(Relation::full(e, 0), Relation(e, 0));
  CHECK(polp(e, {a0_empty}, 1).empty());
  CHECK(polp(e, {}, 1).size() == 1);
  CHECK(polp(e, {RelationPair(Relation(e, 1), Relation(e, 1))}, 2).size() == 1);
  const OpFamily o1 = all_operations(e, 1);
  CHECK(invp(e, o1, 0).size() == 2);
  CHECK_FALSE(invp(e, o1, 0).contains(a0_empty));
}

TEST_CASE("invp is relaxation closed and polp ignores relaxation") {
  std::mt19937 rng(21);
  const auto universe = ops_upto2().to_vector();
  for (int t = 0; t < 80; ++t) {
    const OpFamily f{universe[rng() % universe.size()],
                     universe[rng() % universe.size()]};
    for (std::size_t m = 0; m <= 2; ++m) {
      const PairFamily i = invp(B2, f, m);
      CHECK(enc(i) == i);
    }
    PairFamily q;
    for (int i = 0; i < 2; ++i) q.insert(random_pair(rng, B2, rng() % 3));
    for (std::size_t n = 0; n <= 2; ++n)
      CHECK(polp(B2, enc(q), n) == polp(B2, q, n));
  }
}

TEST_CASE("sloc_ops examples") {
  const OpFamily consts{c0(1), c1(1)};
  CHECK(sloc_ops(B2, consts, 1, 1).size() == 4);
  CHECK(sloc_ops(B2, consts, 2, 1) == consts);
  CHECK(sloc_ops(B2, consts, 0, 1).size() == 4);
  CHECK(sloc_ops(B2, consts, 0, 2).empty());
  CHECK(sloc_ops(B2, OpFamily{AND()}, 0, 2).size() == 16);
  CHECK(sloc_ops(B2, consts, 0, 0).empty());
  CHECK(sloc_ops(B2, OpFamily{AND()}, 9, 2) == OpFamily{AND()});
  CHECK(loc_ops(B2, {}, 1).empty());
  CHECK(loc_ops(B2, consts, 1) == consts);
}

TEST_CASE("sloc_ops agrees with the definition and nests") {
  std::mt19937 rng(8);
  for (int t = 0; t < 60; ++t) {
    OpFamily f;
    const std::size_t n = 1 + rng() % 2;
    const auto count = rng() % 4;
    for (std::size_t i = 0; i < count; ++i) f.insert(random_op(rng, B2, n));
    OpFamily prev = all_operations(B2, n);
    for (std::size_t s = 0; s <= 5; ++s) {
      const OpFamily cur = sloc_ops(B2, f, s, n);
      CHECK(cur == naive_sloc(B2, f, s, n));
      CHECK(cur.subset_of(prev));
      CHECK(f.arity(n).subset_of(cur));
      if (!f.empty()) prev = cur;
      for (std::size_t u = 0; u <= 3; ++u) {
        CHECK(sloc_ops(B2, sloc_ops(B2, f, s, n), u, n) ==
              sloc_ops(B2, f, std::min(s, u), n));
      }
    }
    CHECK(loc_ops(B2, f, n) == f.arity(n));
    // Monotone in F.
    OpFamily bigger = f;
    bigger.insert(random_op(rng, B2, n));
    for (std::size_t s = 0; s <= 3; ++s)
      CHECK(sloc_ops(B2, f, s, n).subset_of(sloc_ops(B2, bigger, s, n)));
  }
}
