#include "semiclones/preserve.hpp"

#include <cmath>

namespace semiclones {

namespace {

void require_same_carrier(const Operation& f, const RelationPair& p) {
  if (f.carrier() != p.carrier()) {
    throw DomainError("operation and relation pair over different carriers");
  }
}

// C(n, r) as a double, for cap estimates.
double binomial(double n, double r) {
  if (r < 0 || r > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1) - std::lgamma(r + 1) -
                             std::lgamma(n - r + 1)));
}

}  // namespace

bool preserves(const Operation& f, const RelationPair& p) {
  require_same_carrier(f, p);
  const std::size_t n = f.arity();
  const std::size_t m = p.arity();
  const Carrier carrier = f.carrier();
  const std::size_t k = carrier.k();
  const std::vector<Index> rows = p.rho().members().members();
  if (n > 0 && rows.empty()) return true;
  std::vector<Tuple> cols;
  cols.reserve(rows.size());
  for (Index r : rows) cols.push_back(decode_tuple({m, r}, carrier));
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Index out = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Index args = 0;
      for (std::size_t j = 0; j < n; ++j) args = args * k + cols[pick[j]][i];
      out = out * k + f(args);
    }
    if (!p.rho_prime().contains(out)) return false;
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++pick[j] < cols.size()) break;
      pick[j] = 0;
      if (j == 0) return true;
    }
    if (n == 0) return true;
  }
}

OpFamily polp_by(Carrier carrier, const PairFamily& q, std::size_t n,
                 const Caps& caps, const PreservesFn& pred) {
  OpFamily out;
  for_each_operation(carrier, n, caps, [&](const Operation& f) {
    for (const auto& p : q) {
      if (!pred(f, p)) return;
    }
    out.insert(f);
  });
  return out;
}

OpFamily polp(Carrier carrier, const PairFamily& q, std::size_t n,
              const Caps& caps) {
  for (const auto& p : q) {
    if (p.carrier() != carrier) throw DomainError("carrier mismatch in family");
  }
  OpFamily out;
  // Pairs sharing ρ are adjacent in the family order, so each image is
  // computed once per (f, ρ).
  for_each_operation(carrier, n, caps, [&](const Operation& f) {
    const Relation* last = nullptr;
    Relation img;
    for (const auto& p : q) {
      if (last == nullptr || !(p.rho() == *last)) {
        img = image(f, p.rho());
        last = &p.rho();
      }
      if (!img.subset_of(p.rho_prime())) return;
    }
    out.insert(f);
  });
  return out;
}

OpFamily polp_upto(Carrier carrier, const PairFamily& q, std::size_t lo,
                   std::size_t hi, const Caps& caps) {
  OpFamily out;
  for (std::size_t n = lo; n <= hi; ++n) {
    out.insert_all(polp(carrier, q, n, caps));
  }
  return out;
}

PairFamily invp_by(Carrier carrier, const OpFamily& f, std::size_t m,
                   const Caps& caps, const PreservesFn& pred) {
  PairFamily out;
  for_each_pair(carrier, m, caps, [&](const RelationPair& p) {
    for (const auto& g : f) {
      if (!pred(g, p)) return;
    }
    out.insert(p);
  });
  return out;
}

PairFamily invp(Carrier carrier, const OpFamily& f, std::size_t m,
                const Caps& caps) {
  require_within(dpow(3, static_cast<double>(carrier.tuples(m))),
                 caps.max_pair_candidates,
                 "invp at arity " + std::to_string(m));
  PairFamily out;
  // For fixed ρ the admissible ρ' are exactly the supersets of the union of
  // images that stay inside ρ.
  for_each_relation(carrier, m, caps, [&](const Relation& rho) {
    Relation u(carrier, m);
    for (const auto& g : f) {
      if (g.carrier() != carrier) throw DomainError("carrier mismatch");
      u = u | image(g, rho);
      if (!u.subset_of(rho)) return;
    }
    Bitset free = rho.members();
    u.members().for_each([&](Index i) { free.reset(i); });
    for_each_subset(free, [&](const Bitset& extra) {
      Bitset prime = u.members();
      prime |= extra;
      out.insert(RelationPair(rho, Relation(carrier, m, std::move(prime))));
    });
  });
  return out;
}

PairFamily invp_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                     std::size_t hi, const Caps& caps) {
  PairFamily out;
  for (std::size_t m = lo; m <= hi; ++m) {
    out.insert_all(invp(carrier, f, m, caps));
  }
  return out;
}

PairFamily identical_pairs(const RelFamily& rels) {
  PairFamily out;
  for (const auto& r : rels) out.insert(RelationPair::identical(r));
  return out;
}

OpFamily pol(Carrier carrier, const RelFamily& rels, std::size_t n,
             const Caps& caps) {
  return polp(carrier, identical_pairs(rels), n, caps);
}

RelFamily inv(Carrier carrier, const OpFamily& f, std::size_t m,
              const Caps& caps) {
  RelFamily out;
  for (const auto& g : f) {
    if (g.carrier() != carrier) throw DomainError("carrier mismatch");
  }
  for_each_relation(carrier, m, caps, [&](const Relation& rho) {
    const RelationPair p = RelationPair::identical(rho);
    for (const auto& g : f) {
      if (!preserves(g, p)) return;
    }
    out.insert(rho);
  });
  return out;
}

RelFamily inv_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                   std::size_t hi, const Caps& caps) {
  RelFamily out;
  for (std::size_t m = lo; m <= hi; ++m) {
    out.insert_all(inv(carrier, f, m, caps));
  }
  return out;
}

OpFamily sloc_ops(Carrier carrier, const OpFamily& f, std::size_t s,
                  std::size_t n, const Caps& caps) {
  const OpFamily fn = f.arity(n);
  if (fn.empty()) return {};
  const std::size_t k = carrier.k();
  const Index points = carrier.tuples(n);
  const std::size_t t = static_cast<std::size_t>(std::min<Index>(s, points));
  require_within(binomial(static_cast<double>(points), static_cast<double>(t)),
                 caps.max_subsets, "interpolation subsets");
  require_within(dpow(k, static_cast<double>(points)),
                 caps.max_table_candidates, "sloc candidates");

  // For every t-subset B, the set of restriction codes of F^(n) on B.
  std::vector<std::vector<Index>> subsets;
  std::vector<std::vector<bool>> seen;
  const Index codes = ipow(k, t);
  std::vector<Index> comb(t);
  for (std::size_t i = 0; i < t; ++i) comb[i] = i;
  auto code_of = [&](const Operation& g, const std::vector<Index>& b) {
    Index c = 0;
    for (Index x : b) c = c * k + g(x);
    return c;
  };
  while (true) {
    std::vector<bool> mark(codes, false);
    for (const auto& g : fn) mark[code_of(g, comb)] = true;
    subsets.push_back(comb);
    seen.push_back(std::move(mark));
    // Next combination in lexicographic order.
    std::size_t i = t;
    while (i > 0 && comb[i - 1] == points - t + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < t; ++j) comb[j] = comb[j - 1] + 1;
  }

  OpFamily out;
  for_each_operation(carrier, n, caps, [&](const Operation& g) {
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      if (!seen[b][code_of(g, subsets[b])]) return;
    }
    out.insert(g);
  });
  return out;
}

OpFamily loc_ops(Carrier carrier, const OpFamily& f, std::size_t n,
                 const Caps& caps) {
  return sloc_ops(carrier, f, carrier.tuples(n), n, caps);
}

}  // namespace semiclones
