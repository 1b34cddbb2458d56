#include "semiclones/relpairs.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace semiclones {

namespace {

std::vector<std::size_t> iota_map(std::size_t n) {
  std::vector<std::size_t> a(n);
  std::iota(a.begin(), a.end(), 0);
  return a;
}

void check_map(const std::vector<std::size_t>& map, std::size_t target,
               const char* what) {
  for (auto v : map) {
    if (v >= target) {
      throw DomainError(std::string(what) + " index " + std::to_string(v) +
                        " out of range " + std::to_string(target));
    }
  }
}

void check_permutation(const std::vector<std::size_t>& pi, std::size_t m) {
  if (pi.size() != m) throw DomainError("permutation has the wrong length");
  std::vector<bool> hit(m, false);
  for (auto v : pi) {
    if (v >= m || hit[v]) throw DomainError("not a permutation");
    hit[v] = true;
  }
}

// α : m → m + |positions| sending the j-th old coordinate to the j-th
// position not listed.
std::vector<std::size_t> skip_map(std::size_t m,
                                  const std::vector<std::size_t>& positions) {
  const std::size_t total = m + positions.size();
  std::vector<bool> fict(total, false);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= total || (i > 0 && positions[i] <= positions[i - 1])) {
      throw DomainError("fictitious positions must be ascending and in range");
    }
    fict[positions[i]] = true;
  }
  std::vector<std::size_t> alpha;
  for (std::size_t i = 0; i < total; ++i) {
    if (!fict[i]) alpha.push_back(i);
  }
  return alpha;
}

Index index_of(const std::vector<Value>& a, const std::vector<std::size_t>& map,
               std::size_t k) {
  Index idx = 0;
  for (auto j : map) idx = idx * k + a[j];
  return idx;
}

double binomial(double n, double r) {
  if (r < 0 || r > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1) - std::lgamma(r + 1) -
                             std::lgamma(n - r + 1)));
}

// Calls fn(B) for every t-element subset B of the members of `set`; fn
// returns false to stop.  Returns false iff stopped.
bool for_each_combination(const Bitset& set, std::size_t t,
                          const std::function<bool(const Bitset&)>& fn) {
  const std::vector<Index> mem = set.members();
  if (t > mem.size()) return true;
  std::vector<std::size_t> comb = iota_map(t);
  while (true) {
    Bitset b(set.size());
    for (auto i : comb) b.set(mem[i]);
    if (!fn(b)) return false;
    std::size_t i = t;
    while (i > 0 && comb[i - 1] == mem.size() - t + i - 1) --i;
    if (i == 0) return true;
    ++comb[i - 1];
    for (std::size_t j = i; j < t; ++j) comb[j] = comb[j - 1] + 1;
  }
}

struct PairHash {
  std::size_t operator()(const RelationPair& p) const noexcept {
    return p.rho().members().hash() * 31 + p.rho_prime().members().hash() +
           p.arity();
  }
};

}  // namespace

Relation superpose(Carrier carrier, const SuperpositionSpec& spec,
                   const std::vector<Relation>& rels, const Caps& caps) {
  if (rels.size() != spec.alphas.size()) {
    throw DomainError("superposition needs one relation per alpha map");
  }
  if (spec.beta.size() != spec.m) throw DomainError("beta must have m entries");
  check_map(spec.beta, spec.mu, "beta");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (rels[i].carrier() != carrier) throw DomainError("carrier mismatch");
    if (rels[i].arity() != spec.alphas[i].size()) {
      throw DomainError("alpha map length differs from relation arity");
    }
    check_map(spec.alphas[i], spec.mu, "alpha");
  }
  require_within(dpow(carrier.k(), static_cast<double>(spec.mu)),
                 caps.max_assignments, "superposition assignments");
  const std::size_t k = carrier.k();
  Relation out(carrier, spec.m);
  std::vector<Value> a(spec.mu);
  const Index total = carrier.tuples(spec.mu);
  for (Index x = 0; x < total; ++x) {
    decode_into(x, k, a);
    bool ok = true;
    for (std::size_t i = 0; ok && i < rels.size(); ++i) {
      ok = rels[i].contains(index_of(a, spec.alphas[i], k));
    }
    if (ok) out.insert(index_of(a, spec.beta, k));
  }
  return out;
}

RelationPair general_superposition(Carrier carrier,
                                   const SuperpositionSpec& spec,
                                   const std::vector<RelationPair>& pairs,
                                   const Caps& caps) {
  std::vector<Relation> rho, prime;
  for (const auto& p : pairs) {
    rho.push_back(p.rho());
    prime.push_back(p.rho_prime());
  }
  return RelationPair(superpose(carrier, spec, rho, caps),
                      superpose(carrier, spec, prime, caps));
}

RelationPair permute(const RelationPair& p,
                     const std::vector<std::size_t>& pi) {
  check_permutation(pi, p.arity());
  return general_superposition(p.carrier(),
                               {p.arity(), p.arity(), pi, {iota_map(p.arity())}},
                               {p});
}

RelationPair identify(const RelationPair& p,
                      const std::vector<std::size_t>& phi,
                      std::size_t target_arity) {
  if (phi.size() != p.arity()) throw DomainError("phi must have m entries");
  check_map(phi, target_arity, "phi");
  return general_superposition(
      p.carrier(), {target_arity, target_arity, iota_map(target_arity), {phi}},
      {p});
}

RelationPair add_fictitious(const RelationPair& p,
                            const std::vector<std::size_t>& positions) {
  const std::size_t total = p.arity() + positions.size();
  return general_superposition(
      p.carrier(),
      {total, total, iota_map(total), {skip_map(p.arity(), positions)}}, {p});
}

RelationPair project_onto(const RelationPair& p,
                          const std::vector<std::size_t>& coords) {
  check_map(coords, p.arity(), "coordinate");
  return general_superposition(
      p.carrier(), {p.arity(), coords.size(), coords, {iota_map(p.arity())}},
      {p});
}

RelationPair intersect(const RelationPair& p, const RelationPair& q) {
  if (p.arity() != q.arity()) throw DomainError("intersection arity mismatch");
  const std::size_t m = p.arity();
  return general_superposition(p.carrier(),
                               {m, m, iota_map(m), {iota_map(m), iota_map(m)}},
                               {p, q});
}

RelationPair diagonal(Carrier carrier, std::size_t m, std::size_t i,
                      std::size_t j) {
  if (i >= m || j >= m) throw DomainError("diagonal index out of range");
  std::vector<std::size_t> beta = iota_map(m);
  beta[j] = beta[i];
  return general_superposition(carrier, {m, m, beta, {}}, {});
}

RelationPair full_pair(Carrier carrier, std::size_t m) {
  return general_superposition(carrier, {m, m, iota_map(m), {}}, {});
}

namespace direct {

Relation map_coords(const Relation& r, const std::vector<std::size_t>& coords) {
  check_map(coords, r.arity(), "coordinate");
  const std::size_t k = r.carrier().k();
  Relation out(r.carrier(), coords.size());
  std::vector<Value> x(r.arity());
  r.members().for_each([&](Index i) {
    decode_into(i, k, x);
    out.insert(index_of(x, coords, k));
  });
  return out;
}

Relation preimage(const Relation& r, const std::vector<std::size_t>& phi,
                  std::size_t target_arity) {
  if (phi.size() != r.arity()) throw DomainError("phi must have m entries");
  check_map(phi, target_arity, "phi");
  const std::size_t k = r.carrier().k();
  Relation out(r.carrier(), target_arity);
  std::vector<Value> y(target_arity);
  const Index total = r.carrier().tuples(target_arity);
  for (Index i = 0; i < total; ++i) {
    decode_into(i, k, y);
    if (r.contains(index_of(y, phi, k))) out.insert(i);
  }
  return out;
}

RelationPair permute(const RelationPair& p,
                     const std::vector<std::size_t>& pi) {
  check_permutation(pi, p.arity());
  return RelationPair(map_coords(p.rho(), pi), map_coords(p.rho_prime(), pi));
}

RelationPair identify(const RelationPair& p,
                      const std::vector<std::size_t>& phi,
                      std::size_t target_arity) {
  return RelationPair(preimage(p.rho(), phi, target_arity),
                      preimage(p.rho_prime(), phi, target_arity));
}

RelationPair add_fictitious(const RelationPair& p,
                            const std::vector<std::size_t>& positions) {
  const auto alpha = skip_map(p.arity(), positions);
  const std::size_t total = p.arity() + positions.size();
  return RelationPair(preimage(p.rho(), alpha, total),
                      preimage(p.rho_prime(), alpha, total));
}

RelationPair project_onto(const RelationPair& p,
                          const std::vector<std::size_t>& coords) {
  return RelationPair(map_coords(p.rho(), coords),
                      map_coords(p.rho_prime(), coords));
}

RelationPair intersect(const RelationPair& p, const RelationPair& q) {
  return RelationPair(p.rho() & q.rho(), p.rho_prime() & q.rho_prime());
}

RelationPair diagonal(Carrier carrier, std::size_t m, std::size_t i,
                      std::size_t j) {
  if (i >= m || j >= m) throw DomainError("diagonal index out of range");
  Relation d(carrier, m);
  std::vector<Value> x(m);
  for (Index idx = 0; idx < carrier.tuples(m); ++idx) {
    decode_into(idx, carrier.k(), x);
    if (x[i] == x[j]) d.insert(idx);
  }
  return RelationPair::identical(d);
}

}  // namespace direct

namespace {

// Pairs of one arity stored as flat word runs: ρ words then ρ' words.
class PairStore {
 public:
  PairStore(Carrier carrier, std::size_t arity)
      : carrier_(carrier),
        arity_(arity),
        size_(carrier.tuples(arity)),
        words_((size_ + 63) / 64) {}

  std::size_t count() const { return count_; }
  const std::uint64_t* at(std::size_t i) const {
    return data_.data() + i * stride();
  }

  // Appends the candidate tentatively; keeps it only if new.
  std::optional<std::size_t> insert_from(const std::uint64_t* rho,
                                         const std::uint64_t* prime) {
    const std::size_t idx = count();
    data_.insert(data_.end(), rho, rho + words_);
    data_.insert(data_.end(), prime, prime + words_);
    ++count_;
    if (!index_.insert(idx).second) {
      --count_;
      data_.resize(idx * stride());
      return std::nullopt;
    }
    return idx;
  }

  std::optional<std::size_t> insert(const RelationPair& p) {
    return insert_from(p.rho().members().words().data(),
                       p.rho_prime().members().words().data());
  }

  RelationPair pair(std::size_t i) const {
    const std::uint64_t* w = at(i);
    return RelationPair(
        Relation(carrier_, arity_,
                 Bitset(size_, std::vector<std::uint64_t>(w, w + words_))),
        Relation(carrier_, arity_,
                 Bitset(size_, std::vector<std::uint64_t>(
                                   w + words_, w + 2 * words_))));
  }

  std::size_t words() const { return words_; }

 private:
  std::size_t stride() const { return 2 * words_; }

  struct Hash {
    const PairStore* s;
    std::size_t operator()(std::size_t i) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      const std::uint64_t* w = s->at(i);
      for (std::size_t j = 0; j < s->stride(); ++j) {
        h ^= w[j] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };
  struct Eq {
    const PairStore* s;
    bool operator()(std::size_t a, std::size_t b) const noexcept {
      return std::equal(s->at(a), s->at(a) + s->stride(), s->at(b));
    }
  };

  Carrier carrier_;
  std::size_t arity_;
  Index size_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
  std::size_t count_ = 0;
  std::unordered_set<std::size_t, Hash, Eq> index_{16, Hash{this}, Eq{this}};
};

}  // namespace

PairFamily rp_closure(Carrier carrier, const PairFamily& q, std::size_t c,
                      const Caps& caps, bool* capped) {
  std::vector<std::unique_ptr<PairStore>> store;
  for (std::size_t a = 0; a <= c; ++a) {
    store.push_back(std::make_unique<PairStore>(carrier, a));
  }
  // Work queue of (arity, index); each arity's entries are popped in index
  // order, so the processed ones are exactly the indices below `done[a]`.
  std::deque<std::pair<std::size_t, std::size_t>> work;
  std::vector<std::size_t> done(c + 1, 0);
  std::size_t total = 0;
  bool hit = false;
  auto note = [&](std::size_t a, std::optional<std::size_t> idx) {
    if (!idx) return;
    work.emplace_back(a, *idx);
    if (++total > caps.max_generated) hit = true;
  };
  auto add = [&](const RelationPair& p) {
    if (p.arity() > c || hit) return;
    note(p.arity(), store[p.arity()]->insert(p));
  };
  for (const auto& p : q) {
    if (p.carrier() != carrier) throw DomainError("carrier mismatch");
    add(p);
  }
  add(RelationPair::identical(Relation::full(carrier, 0)));
  if (c >= 1) add(direct::diagonal(carrier, 1, 0, 0));
  if (c >= 2) add(direct::diagonal(carrier, 2, 0, 1));

  std::vector<std::uint64_t> rho, prime;
  while (!work.empty() && !hit) {
    const auto [a, idx] = work.front();
    work.pop_front();
    PairStore& st = *store[a];
    const RelationPair p = st.pair(idx);
    if (a >= 2) {
      std::vector<std::size_t> swap = iota_map(a);
      std::swap(swap[0], swap[1]);
      add(direct::permute(p, swap));
      std::vector<std::size_t> cycle(a);
      for (std::size_t i = 0; i < a; ++i) cycle[i] = (i + 1) % a;
      add(direct::permute(p, cycle));
      std::vector<std::size_t> merge(a);
      for (std::size_t i = 0; i < a; ++i) merge[i] = i == 0 ? 0 : i - 1;
      add(direct::identify(p, merge, a - 1));
    }
    if (a + 1 <= c) add(direct::add_fictitious(p, {a}));
    if (a >= 1) {
      std::vector<std::size_t> keep = iota_map(a - 1);
      add(direct::project_onto(p, keep));
    }
    const std::size_t w = st.words();
    rho.resize(w);
    prime.resize(w);
    for (std::size_t o = 0; o < done[a] && !hit; ++o) {
      const std::uint64_t* x = st.at(idx);
      const std::uint64_t* y = st.at(o);
      bool is_x = true, is_y = true;
      for (std::size_t j = 0; j < w; ++j) {
        rho[j] = x[j] & y[j];
        prime[j] = x[w + j] & y[w + j];
        is_x = is_x && rho[j] == x[j] && prime[j] == x[w + j];
        is_y = is_y && rho[j] == y[j] && prime[j] == y[w + j];
      }
      if (is_x || is_y) continue;
      note(a, st.insert_from(rho.data(), prime.data()));
    }
    done[a] = idx + 1;
  }
  if (capped != nullptr) *capped = hit;
  PairFamily out;
  for (const auto& st : store) {
    for (std::size_t i = 0; i < st->count(); ++i) out.insert(st->pair(i));
  }
  return out;
}

RpCloneResult rpclone_generate(Carrier carrier, const PairFamily& q,
                               std::size_t m_star, std::size_t c,
                               const Caps& caps) {
  if (c < m_star) throw DomainError("intermediate cap below target arity");
  RpCloneResult res;
  res.intermediate_cap = c;
  const PairFamily full = rp_closure(carrier, q, c, caps, &res.size_capped);
  res.generated = full.size();
  res.pairs = full.arities(0, m_star);
  if (c > m_star) {
    const PairFamily prev =
        rp_closure(carrier, q, c - 1, caps).arities(0, m_star);
    res.changed_by_last_increment = !(prev == res.pairs);
  }
  return res;
}

RpCloneResult rpclone_stabilised(Carrier carrier, const PairFamily& q,
                                 std::size_t m_star, std::size_t c_start,
                                 std::size_t c_max, const Caps& caps) {
  if (c_start < m_star) throw DomainError("intermediate cap below target");
  RpCloneResult res;
  res.intermediate_cap = c_start;
  const PairFamily first =
      rp_closure(carrier, q, c_start, caps, &res.size_capped);
  res.generated = first.size();
  res.pairs = first.arities(0, m_star);
  int unchanged = 0;
  for (std::size_t c = c_start + 1;
       c <= c_max && unchanged < 2 && !res.size_capped; ++c) {
    bool capped = false;
    const PairFamily full = rp_closure(carrier, q, c, caps, &capped);
    PairFamily slice = full.arities(0, m_star) | res.pairs;
    res.changed_by_last_increment = !(slice == res.pairs);
    unchanged = res.changed_by_last_increment ? 0 : unchanged + 1;
    res.pairs = std::move(slice);
    res.intermediate_cap = c;
    res.generated = full.size();
    res.size_capped = capped;
  }
  return res;
}

PairFamily sloc_pairs(Carrier carrier, const PairFamily& q, std::size_t s,
                      std::size_t m, const Caps& caps) {
  const std::vector<RelationPair> qm = q.arity(m).to_vector();
  if (qm.empty()) return {};
  const Index points = carrier.tuples(m);
  double worst = 0;
  for (std::size_t t = 0; t <= std::min<Index>(s, points); ++t) {
    worst = std::max(worst, binomial(static_cast<double>(points),
                                     static_cast<double>(t)));
  }
  require_within(worst, caps.max_subsets, "sLOC interpolation subsets");
  PairFamily out;
  for_each_pair(carrier, m, caps, [&](const RelationPair& cand) {
    std::vector<const Relation*> witnesses;
    for (const auto& p : qm) {
      if (p.rho_prime().subset_of(cand.rho_prime())) {
        witnesses.push_back(&p.rho());
      }
    }
    if (witnesses.empty()) return;
    const std::size_t t =
        static_cast<std::size_t>(std::min<Index>(s, cand.rho().size()));
    const bool ok =
        for_each_combination(cand.rho().members(), t, [&](const Bitset& b) {
          for (const Relation* w : witnesses) {
            if (b.subset_of(w->members())) return true;
          }
          return false;
        });
    if (ok) out.insert(cand);
  });
  return out;
}

PairFamily loc_pairs(Carrier carrier, const PairFamily& q, std::size_t m,
                     const Caps& caps) {
  return sloc_pairs(carrier, q, carrier.tuples(m), m, caps);
}

RelFamily sloc_relations(Carrier carrier, const RelFamily& q, std::size_t s,
                         std::size_t m, const Caps& caps) {
  const std::vector<Relation> qm = q.arity(m).to_vector();
  if (qm.empty()) return {};
  const Index points = carrier.tuples(m);
  double worst = 0;
  for (std::size_t t = 0; t <= std::min<Index>(s, points); ++t) {
    worst = std::max(worst, binomial(static_cast<double>(points),
                                     static_cast<double>(t)));
  }
  require_within(worst, caps.max_subsets, "sLOC interpolation subsets");
  RelFamily out;
  for_each_relation(carrier, m, caps, [&](const Relation& sigma) {
    std::vector<const Relation*> witnesses;
    for (const auto& r : qm) {
      if (r.subset_of(sigma)) witnesses.push_back(&r);
    }
    if (witnesses.empty()) return;
    const std::size_t t =
        static_cast<std::size_t>(std::min<Index>(s, sigma.size()));
    const bool ok =
        for_each_combination(sigma.members(), t, [&](const Bitset& b) {
          for (const Relation* w : witnesses) {
            if (b.subset_of(w->members())) return true;
          }
          return false;
        });
    if (ok) out.insert(sigma);
  });
  return out;
}

bool is_s_directed(const PairFamily& t, std::size_t s) {
  if (t.empty()) return false;
  const std::size_t m = t.begin()->arity();
  const RelationPair u = union_family(t);
  std::vector<const Relation*> firsts;
  for (const auto& p : t) {
    if (p.arity() != m) throw DomainError("mixed arities in family");
    firsts.push_back(&p.rho());
  }
  const std::size_t size = static_cast<std::size_t>(
      std::min<Index>(s, u.rho().size()));
  return for_each_combination(u.rho().members(), size, [&](const Bitset& c) {
    for (const Relation* z : firsts) {
      if (c.subset_of(z->members())) return true;
    }
    return false;
  });
}

RelationPair union_family(const PairFamily& t) {
  if (t.empty()) throw DomainError("union of an empty family");
  Relation rho = t.begin()->rho();
  Relation prime = t.begin()->rho_prime();
  for (const auto& p : t) {
    if (p.arity() != rho.arity()) throw DomainError("mixed arities in family");
    rho = rho | p.rho();
    prime = prime | p.rho_prime();
  }
  return RelationPair(std::move(rho), std::move(prime));
}

RelFamily first_components(const PairFamily& q) {
  RelFamily out;
  for (const auto& p : q) out.insert(p.rho());
  return out;
}

RelFamily second_components(const PairFamily& q) {
  RelFamily out;
  for (const auto& p : q) out.insert(p.rho_prime());
  return out;
}

}  // namespace semiclones
