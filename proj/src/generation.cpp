#include "semiclones/generation.hpp"

#include <numeric>

namespace semiclones {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> a(n);
  std::iota(a.begin(), a.end(), 0);
  return a;
}

}  // namespace

Operation iterative_op(IterativeSymbol symbol, const Operation& f) {
  const std::size_t n = f.arity();
  std::vector<std::size_t> alpha = identity_map(n);
  std::size_t target = n;
  switch (symbol) {
    case IterativeSymbol::zeta:
      for (std::size_t i = 0; i < n; ++i) alpha[i] = (i + 1) % n;
      break;
    case IterativeSymbol::tau:
      if (n >= 2) std::swap(alpha[0], alpha[1]);
      break;
    case IterativeSymbol::delta:
      if (n >= 2) {
        target = n - 1;
        for (std::size_t i = 0; i < n; ++i) alpha[i] = i == 0 ? 0 : i - 1;
      }
      break;
    case IterativeSymbol::nabla:
      target = n + 1;
      for (std::size_t i = 0; i < n; ++i) alpha[i] = i + 1;
      break;
  }
  return polymer(alpha, target, f);
}

Operation star(const Operation& f, const Operation& g) {
  const std::size_t n = f.arity();
  const std::size_t m = g.arity();
  const std::size_t k = n + m == 0 ? 0 : n + m - 1;
  if (n == 0) {
    return k == 0 ? f : Operation::constant(f.carrier(), k, f(0));
  }
  if (n == 1) {
    std::vector<Operation> gs{g};
    return compose(f, gs, m);
  }
  const std::vector<std::size_t> front = identity_map(m);
  std::vector<Operation> gs{polymer(front, k, g)};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    gs.push_back(projection(k, m + j, f.carrier()));
  }
  return compose(f, gs, k);
}

GammaResult gamma_fixpoint(Carrier carrier, const OpFamily& f,
                           const Relation& b, const Caps& caps) {
  if (b.carrier() != carrier) throw DomainError("carrier mismatch");
  require_within(dpow(carrier.k(), static_cast<double>(b.arity())),
                 caps.max_assignments, "index-set tuples");
  GammaResult res{b, Relation(carrier, b.arity()), 0};
  while (true) {
    Relation s(carrier, b.arity());
    for (const auto& g : f) s = s | image(g, res.r);
    res.s = s;
    if (s.subset_of(res.r)) return res;
    res.r = res.r | s;
    ++res.steps;
  }
}

Index table_code(const Operation& f) {
  return encode_tuple(f.table(), f.carrier()).index;
}

Operation from_table_code(Carrier carrier, std::size_t n, Index code) {
  const Index len = carrier.tuples(n);
  std::vector<Value> table(len);
  decode_into(code, carrier.k(), table);
  return Operation(carrier, n, std::move(table));
}

namespace {

OpFamily constants_closure(Carrier carrier, const OpFamily& f) {
  std::vector<bool> have(carrier.k(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Value> derived;
    for (std::size_t a = 0; a < carrier.k(); ++a) {
      if (have[a]) derived.push_back(static_cast<Value>(a));
    }
    for (const auto& g : f) {
      const std::size_t n = g.arity();
      if (n > 0 && derived.empty()) continue;
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        Index args = 0;
        for (std::size_t j = 0; j < n; ++j) {
          args = args * carrier.k() + derived[pick[j]];
        }
        const Value v = g(args);
        if (!have[v]) {
          have[v] = true;
          changed = true;
        }
        std::size_t j = n;
        bool more = false;
        while (j > 0) {
          --j;
          if (++pick[j] < derived.size()) {
            more = true;
            break;
          }
          pick[j] = 0;
        }
        if (!more) break;
      }
    }
  }
  OpFamily out;
  for (std::size_t a = 0; a < carrier.k(); ++a) {
    if (have[a]) out.insert(Operation::constant(carrier, 0, static_cast<Value>(a)));
  }
  return out;
}

OpFamily decode_ops(Carrier carrier, std::size_t n, const Relation& r) {
  OpFamily out;
  r.members().for_each(
      [&](Index code) { out.insert(from_table_code(carrier, n, code)); });
  return out;
}

}  // namespace

GammaResult semiclone_gamma(Carrier carrier, const OpFamily& f, std::size_t n,
                            const Caps& caps) {
  if (n == 0) throw DomainError("semiclone_gamma needs a positive arity");
  const Index points = carrier.tuples(n);
  Relation b(carrier, static_cast<std::size_t>(points));
  for (const auto& e : projections(n, carrier)) b.insert(table_code(e));
  return gamma_fixpoint(carrier, f, b, caps);
}

OpFamily semiclone_nary_part(Carrier carrier, const OpFamily& f,
                             std::size_t n, const Caps& caps) {
  if (n == 0) return constants_closure(carrier, f);
  return decode_ops(carrier, n, semiclone_gamma(carrier, f, n, caps).s);
}

OpFamily clone_nary_part(Carrier carrier, const OpFamily& f, std::size_t n,
                         const Caps& caps) {
  OpFamily out = semiclone_nary_part(carrier, f, n, caps);
  out.insert_all(projections(n, carrier));
  return out;
}

OpFamily clone_nary_part_from_gamma(Carrier carrier, const OpFamily& f,
                                    std::size_t n, const Caps& caps) {
  if (n == 0) return constants_closure(carrier, f);
  return decode_ops(carrier, n, semiclone_gamma(carrier, f, n, caps).r);
}

OpFamily semiclone_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                        std::size_t hi, const Caps& caps) {
  OpFamily out;
  for (std::size_t n = lo; n <= hi; ++n) {
    out.insert_all(semiclone_nary_part(carrier, f, n, caps));
  }
  return out;
}

OpFamily clone_upto(Carrier carrier, const OpFamily& f, std::size_t lo,
                    std::size_t hi, const Caps& caps) {
  OpFamily out;
  for (std::size_t n = lo; n <= hi; ++n) {
    out.insert_all(clone_nary_part(carrier, f, n, caps));
  }
  return out;
}

OpFamily semigroup_generate(const OpFamily& g) {
  for (const auto& h : g) {
    if (h.arity() != 1) throw DomainError("semigroup generators must be unary");
  }
  OpFamily out = g;
  std::vector<Operation> frontier = g.to_vector();
  while (!frontier.empty()) {
    std::vector<Operation> next;
    const std::vector<Operation> current = out.to_vector();
    for (const auto& a : frontier) {
      for (const auto& b : current) {
        std::vector<Operation> inner{b};
        for (auto c : {compose(a, inner, 1),
                       compose(b, std::vector<Operation>{a}, 1)}) {
          if (out.insert(c)) next.push_back(c);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

OpFamily semigroup_semiclone_part(const OpFamily& s, std::size_t n) {
  OpFamily out;
  for (const auto& h : s) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Operation> inner{projection(n, i, h.carrier())};
      out.insert(compose(h, inner, n));
    }
  }
  return out;
}

Relation identity_tuple(Carrier carrier) {
  Tuple id(carrier.k());
  std::iota(id.begin(), id.end(), 0);
  Relation r(carrier, carrier.k());
  r.insert(id);
  return r;
}

bool decide_projections(Carrier carrier, const OpFamily& f, const Caps& caps) {
  OpFamily stripped;
  for (const auto& g : f) {
    if (!is_projection(g)) stripped.insert(g);
  }
  const Relation id = identity_tuple(carrier);
  const GammaResult res = gamma_fixpoint(carrier, stripped, id, caps);
  return !id.subset_of(res.s);
}

}  // namespace semiclones
