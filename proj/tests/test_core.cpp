#include "doctest.h"
#include "semiclones/core.hpp"

#include <random>

using namespace semiclones;

namespace {

const Carrier B2{2};

Operation op(std::size_t n, std::vector<Value> t) {
  return Operation(B2, n, std::move(t));
}

Relation rel(std::size_t m, std::initializer_list<Tuple> ts) {
  return Relation(B2, m, ts);
}

Operation random_op(std::mt19937& rng, std::size_t n) {
  std::vector<Value> t(B2.tuples(n));
  for (auto& v : t) v = static_cast<Value>(rng() % 2);
  return op(n, t);
}

}  // namespace

TEST_CASE("tuple encoding") {
  Tuple empty;
  CHECK(encode_tuple(empty, B2).index == 0);
  CHECK(encode_tuple(empty, B2).arity == 0);
  Tuple t10{1, 0};
  CHECK(encode_tuple(t10, B2).index == 2);
  Tuple t21{2, 1};
  CHECK(encode_tuple(t21, Carrier(3)).index == 7);
  Tuple bad{2};
  CHECK_THROWS_AS(encode_tuple(bad, B2), DomainError);
}

TEST_CASE("encode/decode round trip") {
  for (std::size_t k = 1; k <= 4; ++k) {
    Carrier c(k);
    for (std::size_t m = 0; m <= 4; ++m) {
      for (Index i = 0; i < c.tuples(m); ++i) {
        Tuple t = decode_tuple({m, i}, c);
        CHECK(encode_tuple(t, c).index == i);
      }
    }
  }
}

TEST_CASE("projections") {
  CHECK(projection(1, 0, B2).table() == std::vector<Value>{0, 1});
  CHECK(projection(2, 0, B2).table() == std::vector<Value>{0, 0, 1, 1});
  CHECK(projection(2, 1, B2).table() == std::vector<Value>{0, 1, 0, 1});
  CHECK_THROWS_AS(projection(0, 0, B2), DomainError);
  CHECK_THROWS_AS(projection(2, 2, B2), DomainError);
  CHECK(is_projection(projection(3, 1, B2)));
  CHECK_FALSE(is_projection(Operation::constant(B2, 1, 0)));
}

TEST_CASE("operation validation") {
  CHECK_THROWS_AS(op(2, {0, 1}), DomainError);
  CHECK_THROWS_AS(op(1, {0, 2}), DomainError);
  CHECK(Operation::constant(B2, 0, 1).table().size() == 1);
}

TEST_CASE("polymer examples") {
  const Operation land = op(2, {0, 0, 0, 1});
  std::vector<std::size_t> a00{0, 0};
  CHECK(polymer(a00, 1, land) == projection(1, 0, B2));
  std::vector<std::size_t> a1{1};
  CHECK(polymer(a1, 2, projection(1, 0, B2)) == projection(2, 1, B2));
  std::vector<std::size_t> none;
  CHECK(polymer(none, 2, Operation::constant(B2, 0, 1)).table() ==
        std::vector<Value>{1, 1, 1, 1});
  std::vector<std::size_t> out{2};
  CHECK_THROWS_AS(polymer(out, 2, projection(1, 0, B2)), DomainError);
}

TEST_CASE("compose examples") {
  const Operation neg = op(1, {1, 0});
  const Operation land = op(2, {0, 0, 0, 1});
  std::vector<Operation> gs{neg};
  CHECK(compose(neg, gs) == projection(1, 0, B2));
  std::vector<Operation> ps{projection(2, 0, B2), projection(2, 1, B2)};
  CHECK(compose(land, ps) == land);
  std::vector<Operation> nothing;
  CHECK(compose(Operation::constant(B2, 0, 0), nothing, 2) ==
        Operation::constant(B2, 2, 0));
  std::vector<Operation> mixed{projection(1, 0, B2), projection(2, 0, B2)};
  CHECK_THROWS_AS(compose(land, mixed), DomainError);
  CHECK_THROWS_AS(compose(land, gs), DomainError);
}

TEST_CASE("polymer agrees with composition by projections") {
  for (std::size_t n = 0; n <= 2; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      for (const auto& f : all_operations(B2, n)) {
        // Every α : n → m.
        std::vector<std::size_t> alpha(n, 0);
        while (true) {
          std::vector<Operation> gs;
          for (auto a : alpha) gs.push_back(projection(m, a, B2));
          CHECK(polymer(alpha, m, f) == compose(f, gs, m));
          std::size_t i = n;
          bool done = true;
          while (i > 0) {
            --i;
            if (++alpha[i] < m) {
              done = false;
              break;
            }
            alpha[i] = 0;
          }
          if (done) break;
        }
      }
    }
  }
}

TEST_CASE("superassociativity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 4, m = rng() % 4, r = rng() % 4;
    const Operation f = random_op(rng, n);
    std::vector<Operation> gs, rs;
    for (std::size_t j = 0; j < n; ++j) gs.push_back(random_op(rng, m));
    for (std::size_t i = 0; i < m; ++i) rs.push_back(random_op(rng, r));
    const Operation lhs = compose(compose(f, gs, m), rs, r);
    std::vector<Operation> inner;
    for (const auto& g : gs) inner.push_back(compose(g, rs, r));
    CHECK(lhs == compose(f, inner, r));
  }
}

TEST_CASE("enumeration counts") {
  CHECK(all_operations(B2, 0).size() == 2);
  CHECK(all_operations(B2, 1).size() == 4);
  CHECK(all_operations(B2, 2).size() == 16);
  CHECK(all_operations(Carrier(0), 0).size() == 0);
  CHECK(all_operations(Carrier(0), 2).size() == 1);
  CHECK(all_pairs(B2, 0).size() == 3);
  CHECK(all_pairs(B2, 1).size() == 9);
  CHECK(all_pairs(B2, 2).size() == 81);
  CHECK(all_pairs(Carrier(0), 0).size() == 3);
  CHECK(all_pairs(Carrier(0), 3).size() == 1);
  Caps tiny;
  tiny.max_table_candidates = 100;
  CHECK_THROWS_AS(all_operations(B2, 3, tiny), CapExceeded);
}

TEST_CASE("image") {
  const Operation neg = op(1, {1, 0});
  const Relation leq = rel(2, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(image(neg, leq) == rel(2, {{1, 1}, {1, 0}, {0, 0}}));
  CHECK(image(Operation::constant(B2, 0, 1), Relation(B2, 2)) ==
        rel(2, {{1, 1}}));
  CHECK(image(neg, Relation(B2, 1)).empty());
}

TEST_CASE("relation pairs") {
  const Relation leq = rel(2, {{0, 0}, {0, 1}, {1, 1}});
  const Relation full = Relation::full(B2, 2);
  CHECK_THROWS_AS(RelationPair(leq, full), DomainError);
  CHECK_THROWS_AS(RelationPair(Relation(B2, 1), Relation(B2, 2)), DomainError);
  CHECK(RelationPair(Relation(B2, 1), Relation(B2, 1)) !=
        RelationPair(Relation(B2, 2), Relation(B2, 2)));
  CHECK(RelationPair::identical(leq).is_identical());
}

TEST_CASE("orders") {
  const RelationPair p(rel(2, {{0, 0}, {1, 1}}), rel(2, {{0, 0}}));
  const RelationPair q(rel(2, {{0, 0}, {0, 1}, {1, 1}}),
                       rel(2, {{0, 0}, {1, 1}}));
  CHECK(pair_leq(p, q));
  CHECK(pair_leq(RelationPair(Relation(B2, 2), Relation(B2, 2)), q));
  const RelationPair a = RelationPair::identical(rel(2, {{0, 1}}));
  const RelationPair b = RelationPair::identical(rel(2, {{0, 0}}));
  CHECK_FALSE(pair_leq(a, b));
  CHECK(pair_qleq(RelationPair(rel(2, {{0, 1}}), Relation(B2, 2)), a));
  const RelationPair c(rel(2, {{0, 0}, {0, 1}}), rel(2, {{0, 0}}));
  CHECK_FALSE(pair_qleq(c, b));
  CHECK(pair_qleq(c, c));
  CHECK_THROWS_AS(pair_leq(a, RelationPair::identical(rel(1, {{0}}))),
                  DomainError);
}

TEST_CASE("relaxation closure") {
  CHECK(enc(PairFamily{}).empty());
  const RelationPair p(Relation::full(B2, 1), Relation(B2, 1));
  CHECK(relaxations_of(p).size() == 9);
  const RelationPair id = RelationPair::identical(rel(2, {{0, 1}, {1, 0}}));
  CHECK(relaxations_of(id) == PairFamily{id});

  // Oracle: filter all pairs by the defining inclusions.
  for (const auto& q : all_pairs(B2, 1)) {
    PairFamily expect;
    for (const auto& s : all_pairs(B2, 1)) {
      if (q.rho_prime().subset_of(s.rho_prime()) && s.rho().subset_of(q.rho()))
        expect.insert(s);
    }
    CHECK(relaxations_of(q) == expect);
  }
}

TEST_CASE("enc is a closure operator") {
  std::mt19937 rng(5);
  const auto universe = (all_pairs(B2, 1) | all_pairs(B2, 2)).to_vector();
  for (int trial = 0; trial < 200; ++trial) {
    PairFamily q1, q2;
    for (const auto& p : universe) {
      const auto r = rng() % 40;
      if (r == 0) q1.insert(p);
      if (r <= 1) q2.insert(p);
    }
    const PairFamily e1 = enc(q1);
    CHECK(q1.subset_of(e1));
    CHECK(enc(e1) == e1);
    CHECK(e1.subset_of(enc(q2)));
  }
}

TEST_CASE("family ordering and slices") {
  OpFamily f{op(2, {0, 0, 0, 1}), projection(1, 0, B2),
             Operation::constant(B2, 0, 1), projection(1, 0, B2)};
  CHECK(f.size() == 3);
  auto v = f.to_vector();
  CHECK(v[0].arity() == 0);
  CHECK(v[1].arity() == 1);
  CHECK(v[2].arity() == 2);
  CHECK(f.arity(1).size() == 1);
  CHECK(f.arities(0, 1).size() == 2);
}

TEST_CASE("bitset ordering follows integer encoding") {
  Relation a = rel(1, {{1}});
  Relation b = rel(1, {{0}});
  CHECK(b < a);
  Bitset big(130), small(130);
  big.set(129);
  small.set(0);
  small.set(64);
  CHECK(small < big);
  CHECK(big.count() == 1);
}
