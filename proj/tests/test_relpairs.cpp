#include "doctest.h"
#include "fixtures.hpp"
#include "semiclones/preserve.hpp"
#include "semiclones/relpairs.hpp"


using namespace fx;

namespace {

const RelationPair LEQP = RelationPair::identical(LEQ());
const RelationPair DIAG =
    RelationPair::identical(rel(2, {{0, 0}, {1, 1}}));

std::vector<std::vector<std::size_t>> all_maps(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& part : out) {
      for (std::size_t v = 0; v < m; ++v) {
        auto w = part;
        w.push_back(v);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool is_permutation(const std::vector<std::size_t>& p) {
  std::vector<bool> hit(p.size(), false);
  for (auto v : p) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

// Literal sLOC: every B ⊆ σ with |B| ≤ s is covered.
PairFamily naive_sloc_pairs(Carrier c, const PairFamily& q, std::size_t s,
                            std::size_t m) {
  PairFamily out;
  for (const auto& cand : all_pairs(c, m)) {
    bool ok = true;
    for_each_subset(cand.rho().members(), [&](const Bitset& b) {
      if (b.count() > s || !ok) return;
      bool found = false;
      for (const auto& p : q.arity(m)) {
        if (b.subset_of(p.rho().members()) &&
            p.rho_prime().subset_of(cand.rho_prime()))
          found = true;
      }
      ok = found;
    });
    if (ok) out.insert(cand);
  }
  return out;
}

// Literal s-directedness: every choice of t ≤ s members r_i of first
// components X_i lies together in some first component.
bool naive_directed(const PairFamily& t, std::size_t s) {
  if (t.empty()) return false;
  std::vector<Index> all;
  for (const auto& p : t)
    for (auto r : p.rho().members().members()) all.push_back(r);
  const auto firsts = first_components(t).to_vector();
  for (std::size_t len = 0; len <= s; ++len) {
    for (const auto& pick : all_maps(len, all.size())) {
      bool found = false;
      for (const auto& z : firsts) {
        bool in = true;
        for (auto i : pick) in = in && z.contains(all[i]);
        found = found || in;
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("superposition examples") {
  for (const auto& p : all_pairs(B2, 2)) {
    CHECK(general_superposition(B2, {2, 2, {0, 1}, {{0, 1}}}, {p}) == p);
  }
  const RelationPair a(rel(2, {{0, 0}, {0, 1}}), rel(2, {{0, 0}}));
  CHECK(general_superposition(B2, {2, 2, {0, 1}, {{0, 1}, {0, 1}}},
                              {a, LEQP}) ==
        RelationPair(rel(2, {{0, 0}, {0, 1}}), rel(2, {{0, 0}})));
  CHECK(general_superposition(B2, {1, 2, {0, 0}, {}}, {}) == DIAG);
  CHECK(full_pair(B2, 0) == RelationPair::identical(Relation::full(B2, 0)));
  CHECK_THROWS_AS(general_superposition(B2, {2, 2, {0, 2}, {}}, {}),
                  DomainError);
  CHECK_THROWS_AS(general_superposition(B2, {2, 2, {0, 1}, {{0}}}, {LEQP}),
                  DomainError);
  Caps tiny;
  tiny.max_assignments = 16;
  CHECK_THROWS_AS(general_superposition(B2, {5, 0, {}, {}}, {}, tiny),
                  CapExceeded);
}

TEST_CASE("elementary operation examples") {
  CHECK(permute(LEQP, {1, 0}) ==
        RelationPair::identical(rel(2, {{0, 0}, {1, 0}, {1, 1}})));
  CHECK(project_onto(DIAG, {0}) ==
        RelationPair::identical(Relation::full(B2, 1)));
  for (std::size_t m = 0; m <= 2; ++m) {
    const RelationPair e(Relation(B2, m), Relation(B2, m));
    CHECK(add_fictitious(e, {m}) ==
          RelationPair(Relation(B2, m + 1), Relation(B2, m + 1)));
  }
  CHECK(diagonal(B2, 2, 0, 1) == DIAG);
  CHECK(diagonal(B2, 2, 1, 1) == full_pair(B2, 2));
  CHECK(identify(LEQP, {0, 0}, 1) ==
        RelationPair::identical(Relation::full(B2, 1)));
  CHECK_THROWS_AS(permute(LEQP, {0, 0}), DomainError);
  CHECK_THROWS_AS(project_onto(LEQP, {2}), DomainError);
  CHECK_THROWS_AS(diagonal(B2, 2, 0, 2), DomainError);
  CHECK_THROWS_AS(intersect(LEQP, full_pair(B2, 1)), DomainError);
}

TEST_CASE("elementary operations match direct set computations") {
  for (std::size_t m = 0; m <= 2; ++m) {
    for (const auto& p : all_pairs(B2, m)) {
      for (std::size_t t = 0; t <= 3; ++t) {
        for (const auto& phi : all_maps(m, t)) {
          CHECK(identify(p, phi, t) == direct::identify(p, phi, t));
        }
        for (const auto& cs : all_maps(t, m)) {
          CHECK(project_onto(p, cs) == direct::project_onto(p, cs));
          if (t == m && is_permutation(cs))
            CHECK(permute(p, cs) == direct::permute(p, cs));
        }
      }
      for (std::size_t pos = 0; pos <= m; ++pos)
        CHECK(add_fictitious(p, {pos}) == direct::add_fictitious(p, {pos}));
      CHECK(add_fictitious(p, {0, m + 1}) ==
            direct::add_fictitious(p, {0, m + 1}));
      for (const auto& q : all_pairs(B2, m))
        CHECK(intersect(p, q) == direct::intersect(p, q));
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        CHECK(diagonal(B2, m, i, j) == direct::diagonal(B2, m, i, j));
  }
}

TEST_CASE("invariant pairs are closed under elementary operations") {
  std::mt19937 rng(2);
  const auto universe = ops_upto2().to_vector();
  for (int trial = 0; trial < 15; ++trial) {
    const OpFamily f{universe[rng() % universe.size()]};
    const PairFamily inv = invp_upto(B2, f, 0, 2);
    for (const auto& p : inv) {
      const std::size_t m = p.arity();
      for (std::size_t t = 0; t <= 2; ++t) {
        for (const auto& phi : all_maps(m, t))
          CHECK(inv.contains(direct::identify(p, phi, t)));
        for (const auto& cs : all_maps(t, m))
          CHECK(inv.contains(direct::project_onto(p, cs)));
      }
      for (const auto& q : inv.arity(m))
        CHECK(inv.contains(direct::intersect(p, q)));
    }
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          CHECK(inv.contains(diagonal(B2, m, i, j)));
  }
}

TEST_CASE("rp-clone generation examples") {
  const RpCloneResult e = rpclone_generate(B2, {}, 2, 4);
  CHECK(e.pairs.contains(DIAG));
  CHECK(e.pairs.contains(full_pair(B2, 1)));
  CHECK(e.pairs.contains(full_pair(B2, 2)));
  CHECK(e.pairs.contains(full_pair(B2, 0)));
  for (std::size_t m = 1; m <= 2; ++m)
    CHECK_FALSE(
        e.pairs.contains(RelationPair(Relation(B2, m), Relation(B2, m))));

  const RpCloneResult l = rpclone_generate(B2, {LEQP}, 1, 3);
  CHECK(l.pairs.contains(full_pair(B2, 1)));
  const RpCloneResult again = rpclone_generate(B2, l.pairs, 1, 3);
  CHECK(again.pairs == l.pairs);
  CHECK_THROWS_AS(rpclone_generate(B2, {}, 3, 2), DomainError);
}

TEST_CASE("rp-clone generation is sound and monotone") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    PairFamily q;
    const auto count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i)
      q.insert(random_pair(rng, B2, rng() % 3));
    const PairFamily small = rpclone_generate(B2, q, 2, 2).pairs;
    const RpCloneResult big = rpclone_generate(B2, q, 2, 3);
    CHECK(small.subset_of(big.pairs));
    CHECK(q.subset_of(big.pairs));
    const PairFamily oracle = invp_upto(B2, polp_upto(B2, q, 0, 2), 0, 2);
    CHECK(big.pairs.subset_of(oracle));
    // Both component families of a closure are closed again.
    bool capped = true;
    const PairFamily full = rp_closure(B2, q, 3, Caps::defaults(), &capped);
    REQUIRE_FALSE(capped);
    for (const auto& comp : {first_components(full), second_components(full)}) {
      const PairFamily ids = identical_pairs(comp);
      CHECK(rp_closure(B2, ids, 3, Caps::defaults()) == ids);
    }
  }
}

TEST_CASE("stabilised generation reports its cap") {
  const RpCloneResult r = rpclone_stabilised(B2, {LEQP}, 1, 3, 6);
  CHECK(r.intermediate_cap >= 3);
  CHECK(r.intermediate_cap <= 6);
  CHECK_FALSE(r.changed_by_last_increment);
  Caps tiny;
  tiny.max_generated = 50;
  const RpCloneResult capped = rpclone_stabilised(B2, {LEQP}, 2, 4, 6, tiny);
  CHECK(capped.size_capped);
}

TEST_CASE("relaxations of seeds invert the component view") {
  // Q of identical pairs yields only identical pairs.
  const PairFamily q{LEQP};
  for (const auto& p : rpclone_generate(B2, q, 2, 4).pairs)
    CHECK(p.is_identical());
}

TEST_CASE("sloc_pairs examples") {
  for (std::size_t s = 0; s <= 4; ++s)
    CHECK(sloc_pairs(B2, {}, s, 1).empty());
  const PairFamily q{RelationPair(rel(1, {{0}}), rel(1, {{0}}))};
  PairFamily expect0;
  for (const auto& p : all_pairs(B2, 1))
    if (rel(1, {{0}}).subset_of(p.rho_prime())) expect0.insert(p);
  CHECK(sloc_pairs(B2, q, 0, 1) == expect0);
  const RelationPair wide(Relation::full(B2, 1), Relation(B2, 1));
  CHECK(loc_pairs(B2, {wide}, 1).size() == 9);
  CHECK(loc_pairs(B2, {wide}, 1) == relaxations_of(wide));
}

TEST_CASE("sloc_pairs agrees with the definition and nests") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = rng() % 3;
    PairFamily q;
    const auto count = rng() % 4;
    for (std::size_t i = 0; i < count; ++i) q.insert(random_pair(rng, B2, m));
    PairFamily prev = all_pairs(B2, m);
    for (std::size_t s = 0; s <= 5; ++s) {
      const PairFamily cur = sloc_pairs(B2, q, s, m);
      CHECK(cur == naive_sloc_pairs(B2, q, s, m));
      CHECK(q.subset_of(cur));
      if (!q.empty()) CHECK(cur.subset_of(prev));
      prev = cur;
    }
    CHECK(loc_pairs(B2, q, m) == enc(q).arity(m));
    CHECK(loc_pairs(B2, enc(q), m) == enc(q).arity(m));
  }
}

TEST_CASE("s-directed families") {
  // Chains are s-directed for every s.
  const PairFamily chain{RelationPair(rel(1, {{0}}), rel(1, {{0}})),
                         RelationPair(rel(1, {{0}, {1}}), rel(1, {{0}}))};
  for (std::size_t s = 0; s <= 4; ++s) CHECK(is_s_directed(chain, s));
  const PairFamily two{RelationPair::identical(rel(1, {{0}})),
                       RelationPair::identical(rel(1, {{1}}))};
  CHECK_FALSE(is_s_directed(two, 2));
  CHECK(is_s_directed(two, 1));
  CHECK(union_family(two) == RelationPair::identical(Relation::full(B2, 1)));
  CHECK_FALSE(is_s_directed({}, 0));
  CHECK_THROWS_AS(union_family({}), DomainError);
  CHECK_THROWS_AS(is_s_directed(PairFamily{LEQP, full_pair(B2, 1)}, 1),
                  DomainError);

  std::mt19937 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng() % 2;
    PairFamily t;
    const auto count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) t.insert(random_pair(rng, B2, m));
    for (std::size_t s = 0; s <= 3; ++s)
      CHECK(is_s_directed(t, s) == naive_directed(t, s));
  }
}

TEST_CASE("generated slices are reproduced from their top slice") {
  const std::vector<PairFamily> seeds{
      {LEQP},
      {RelationPair(Relation::full(B2, 1), rel(1, {{1}}))},
      {RelationPair(rel(2, {{0, 1}, {1, 0}}), rel(2, {{0, 1}}))}};
  for (const auto& q : seeds) {
    const PairFamily clone = rpclone_generate(B2, q, 2, 4).pairs;
    for (std::size_t s = 1; s <= 2; ++s) {
      const PairFamily from_top =
          rpclone_generate(B2, clone.arity(s), 2, 4).pairs;
      for (std::size_t m = 0; m <= s; ++m)
        CHECK(clone.arity(m).subset_of(from_top));
    }
  }
}

TEST_CASE("relational clones correspond to identical-pair rp-clones") {
  const RelFamily gen{LEQ()};
  const PairFamily closed = rpclone_generate(B2, identical_pairs(gen), 2, 4).pairs;
  const RelFamily rc = first_components(closed);
  CHECK(identical_pairs(rc) == closed);
  // A family missing a derivable relation is not closed on either side.
  RelFamily partial = rc;
  partial = partial - RelFamily{Relation::full(B2, 1)};
  CHECK_FALSE(rpclone_generate(B2, identical_pairs(partial), 2, 4).pairs ==
              identical_pairs(partial));
}
