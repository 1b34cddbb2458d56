#include "semiclones/harness.hpp"

#include "semiclones/format.hpp"
#include "semiclones/generation.hpp"
#include "semiclones/preserve.hpp"
#include "semiclones/relpairs.hpp"

#include <chrono>
#include <optional>
#include <random>

namespace semiclones {

using nlohmann::json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::refused:
      return "refused";
    case Verdict::incomplete:
      return "incomplete";
  }
  return "fail";
}

json to_json(const Report& r, bool with_runtime) {
  json out = {{"check", r.name},
              {"params", r.params},
              {"verdict", verdict_name(r.verdict)},
              {"counterexample", r.counterexample},
              {"stats", r.stats},
              {"seed", r.seed}};
  if (!r.note.empty()) out["note"] = r.note;
  if (with_runtime) out["runtime_ms"] = r.runtime_ms;
  return out;
}

void record_failure(Report& r, json counterexample) {
  if (r.verdict != Verdict::fail) {
    r.verdict = Verdict::fail;
    r.counterexample = std::move(counterexample);
  }
  r.stats["failures"] = r.stats.value("failures", 0) + 1;
}

namespace {

template <typename Body>
Report run_report(std::string name, json params, std::uint64_t seed,
                  Body&& body) {
  Report r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const CapExceeded& e) {
    r.verdict = Verdict::refused;
    r.counterexample = nullptr;
    r.note = e.what();
    r.stats["estimate"] = static_cast<std::uint64_t>(
        std::min(e.estimate(), 1.8e19));
  }
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

void bump(Report& r, const char* key, std::uint64_t by = 1) {
  r.stats[key] = r.stats.value(key, std::uint64_t{0}) + by;
}

void bump_max(Report& r, const char* key, std::uint64_t v) {
  r.stats[key] = std::max(r.stats.value(key, std::uint64_t{0}), v);
}

// First element of the symmetric difference and the side holding it.
template <typename T>
std::optional<std::pair<T, bool>> first_diff(const Family<T>& lhs,
                                             const Family<T>& rhs) {
  for (const auto& x : lhs) {
    if (!rhs.contains(x)) return std::make_pair(x, true);
  }
  for (const auto& x : rhs) {
    if (!lhs.contains(x)) return std::make_pair(x, false);
  }
  return std::nullopt;
}

// A pair of q the operation fails to preserve, if any.
std::optional<RelationPair> violated_pair(const Operation& g,
                                          const PairFamily& q) {
  for (const auto& p : q) {
    if (!preserves(g, p)) return p;
  }
  return std::nullopt;
}

std::optional<Operation> violating_op(const RelationPair& p,
                                      const OpFamily& f) {
  for (const auto& g : f) {
    if (!preserves(g, p)) return g;
  }
  return std::nullopt;
}

// Witness for an operation-side set difference; `constraints` is the pair
// family whose Polp forms the left side.
json op_witness(const std::string& property, const Operation& g, bool in_lhs,
                const PairFamily& constraints) {
  json w = {{"property", property},
            {"operation", to_json(g)},
            {"in_lhs", in_lhs},
            {"in_rhs", !in_lhs}};
  if (auto p = violated_pair(g, constraints)) {
    w["violated_pair"] = to_json(*p);
  } else {
    w["violated_pair"] = nullptr;
  }
  return w;
}

// Witness for a pair-side difference; `ops` is the family whose Invp forms
// the left side.
json pair_witness(const std::string& property, const RelationPair& p,
                  bool in_lhs, const OpFamily& ops) {
  json w = {{"property", property},
            {"pair", to_json(p)},
            {"in_lhs", in_lhs},
            {"in_rhs", !in_lhs}};
  if (auto g = violating_op(p, ops)) {
    w["violating_operation"] = to_json(*g);
  } else {
    w["violating_operation"] = nullptr;
  }
  return w;
}

OpFamily ops_upto(Carrier carrier, std::size_t cap, const Caps& caps) {
  OpFamily out;
  for (std::size_t n = 0; n <= cap; ++n) {
    out.insert_all(all_operations(carrier, n, caps));
  }
  return out;
}

PairFamily pairs_upto(Carrier carrier, std::size_t cap, const Caps& caps) {
  PairFamily out;
  for (std::size_t m = 0; m <= cap; ++m) {
    out.insert_all(all_pairs(carrier, m, caps));
  }
  return out;
}

// Every singleton and two-element subfamily.
std::vector<OpFamily> small_families(const OpFamily& universe) {
  const auto u = universe.to_vector();
  std::vector<OpFamily> out;
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back({u[i]});
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) out.push_back({u[i], u[j]});
  }
  return out;
}

bool has_nullary(const OpFamily& f) { return !f.arity(0).empty(); }

bool has_projection(const OpFamily& f) {
  for (const auto& g : f) {
    if (is_projection(g)) return true;
  }
  return false;
}

bool has_strict(const PairFamily& q) {
  for (const auto& p : q) {
    if (!p.is_identical()) return true;
  }
  return false;
}

std::size_t max_arity(const OpFamily& f) {
  std::size_t m = 0;
  for (const auto& g : f) m = std::max(m, g.arity());
  return m;
}

RelationPair random_pair(std::mt19937_64& rng, Carrier carrier,
                         std::size_t m) {
  const Index n = carrier.tuples(m);
  Bitset rho(n), prime(n);
  for (Index i = 0; i < n; ++i) {
    const auto roll = rng() % 3;
    if (roll >= 1) rho.set(i);
    if (roll == 2) prime.set(i);
  }
  return RelationPair(Relation(carrier, m, rho), Relation(carrier, m, prime));
}

const Carrier kBool(2);

Operation op2(std::size_t arity, std::vector<Value> table) {
  return Operation(kBool, arity, std::move(table));
}

Relation rel2(std::size_t arity, std::initializer_list<Tuple> ts) {
  return Relation(kBool, arity, ts);
}

// ≤, ≠, = and friends on {0,1}.
Relation leq2() { return rel2(2, {{0, 0}, {0, 1}, {1, 1}}); }
Relation neq2() { return rel2(2, {{0, 1}, {1, 0}}); }
Relation eq2() { return rel2(2, {{0, 0}, {1, 1}}); }

}  // namespace

// ---------------------------------------------------------------------------

Report check_galois_axioms(Carrier carrier, std::size_t op_cap,
                           std::size_t pair_cap, std::size_t window,
                           const Caps& caps, bool mutant) {
  json params = {{"k", carrier.k()},
                 {"op_arity_cap", op_cap},
                 {"pair_arity_cap", pair_cap},
                 {"window", window},
                 {"mutant", mutant}};
  return run_report("galois", params, 0, [&](Report& r) {
    if (op_cap > window || pair_cap > window) {
      throw DomainError("arity caps must lie inside the window");
    }
    const PreservesFn truth = preserves;
    const PreservesFn flipped = [](const Operation& f, const RelationPair& p) {
      return !preserves(f, p);
    };
    const PreservesFn& pred = mutant ? flipped : truth;
    auto polp_w = [&](const PairFamily& q) {
      OpFamily out;
      for (std::size_t n = 0; n <= window; ++n) {
        out.insert_all(mutant ? polp_by(carrier, q, n, caps, pred)
                              : polp(carrier, q, n, caps));
      }
      return out;
    };
    auto invp_w = [&](const OpFamily& f) {
      return invp_upto(carrier, f, 0, window, caps);
    };
    // Membership of g in the computed Polp side, re-checked with the true
    // predicate against the pair the computation rejected it for.
    auto op_gap = [&](const std::string& property, const Operation& g,
                      const PairFamily& q) {
      json w = {{"property", property}, {"operation", to_json(g)}};
      for (const auto& p : q) {
        if (!pred(g, p)) {
          w["rejecting_pair"] = to_json(p);
          w["preserves"] = preserves(g, p);
          return w;
        }
      }
      w["rejecting_pair"] = nullptr;
      return w;
    };

    const auto ops = ops_upto(carrier, op_cap, caps).to_vector();
    const auto pairs = pairs_upto(carrier, pair_cap, caps).to_vector();
    r.stats["operations"] = ops.size();
    r.stats["pairs"] = pairs.size();

    std::vector<PairFamily> inv_single;
    for (const auto& f : ops) {
      const OpFamily fam{f};
      const PairFamily i = invp_w(fam);
      inv_single.push_back(i);
      const OpFamily pi = polp_w(i);
      bump(r, "families");
      if (!pi.contains(f)) {
        record_failure(r, op_gap("F ⊆ Polp Invp F", f, i));
      }
      if (auto d = first_diff(invp_w(pi), i)) {
        record_failure(r, pair_witness("Invp Polp Invp F = Invp F", d->first,
                                       d->second, pi));
      }
      const OpFamily gen = semiclone_upto(carrier, fam, 0, window, caps);
      for (const auto& g : gen) {
        if (!pi.contains(g)) {
          record_failure(r, op_gap("⟨F⟩_s ⊆ Polp Invp F", g, i));
          break;
        }
      }
      if (auto d = first_diff(invp_w(gen), i)) {
        record_failure(r, pair_witness("Invp ⟨F⟩_s = Invp F", d->first,
                                       d->second, gen));
      }
      // Invariant pairs of F ⊆ O^{≤s} are sLOC_s-closed for s = ar(f).
      for (std::size_t m = 0; m <= window; ++m) {
        const PairFamily im = i.arity(m);
        if (auto d = first_diff(sloc_pairs(carrier, im, f.arity(), m, caps),
                                im)) {
          record_failure(r, pair_witness("sLOC_s Invp F = Invp F", d->first,
                                         !d->second, fam));
        }
      }
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
      for (std::size_t b = a + 1; b < ops.size(); ++b) {
        const OpFamily both{ops[a], ops[b]};
        const PairFamily i = invp_w(both);
        bump(r, "antitone_checks");
        if (!i.subset_of(inv_single[a]) || !i.subset_of(inv_single[b])) {
          for (const auto& p : i) {
            if (!inv_single[a].contains(p) || !inv_single[b].contains(p)) {
              record_failure(r, pair_witness("F ⊆ G ⇒ Invp G ⊆ Invp F", p,
                                             true, both));
              break;
            }
          }
        }
      }
    }

    std::vector<OpFamily> pol_single;
    for (const auto& p : pairs) {
      const PairFamily q{p};
      const OpFamily pq = polp_w(q);
      pol_single.push_back(pq);
      const PairFamily ip = invp_w(pq);
      bump(r, "families");
      if (!ip.contains(p)) {
        record_failure(r, pair_witness("Q ⊆ Invp Polp Q", p, false, pq));
      }
      const OpFamily again = polp_w(ip);
      if (auto d = first_diff(again, pq)) {
        record_failure(r, op_gap("Polp Invp Polp Q = Polp Q", d->first,
                                 d->second ? q : ip));
      }
      const RpCloneResult gen =
          rpclone_generate(carrier, q, window, window + 1, caps);
      for (const auto& g : gen.pairs) {
        if (!ip.contains(g)) {
          record_failure(r, pair_witness("⟨Q⟩ ⊆ Invp Polp Q", g, false, pq));
          break;
        }
      }
      if (auto d = first_diff(polp_w(gen.pairs), pq)) {
        record_failure(r, op_gap("Polp ⟨Q⟩ = Polp Q", d->first,
                                 d->second ? q : gen.pairs));
      }
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        const PairFamily both{pairs[a], pairs[b]};
        const OpFamily pq = polp_w(both);
        bump(r, "antitone_checks");
        for (const auto& g : pq) {
          if (!pol_single[a].contains(g) || !pol_single[b].contains(g)) {
            record_failure(r, op_gap("Q ⊆ R ⇒ Polp R ⊆ Polp Q", g,
                                     PairFamily{pol_single[a].contains(g)
                                                    ? pairs[b]
                                                    : pairs[a]}));
            break;
          }
        }
      }
    }
  });
}

// ---------------------------------------------------------------------------

namespace {

void polp_invp_sloc_into(Report& r, Carrier carrier, const OpFamily& f,
                         std::size_t s_max, std::size_t n_max,
                         const Caps& caps) {
  const PairFamily inv = invp_upto(carrier, f, 0, s_max, caps);
  for (std::size_t n = 0; n <= n_max; ++n) {
    OpFamily sc;
    if (n == 0) {
      sc = semiclone_nary_part(carrier, f, 0, caps);
    } else {
      const GammaResult g = semiclone_gamma(carrier, f, n, caps);
      const Index points = carrier.tuples(n);
      const double bound = dpow(static_cast<double>(carrier.k()),
                                static_cast<double>(points));
      bump_max(r, "max_gamma_steps", g.steps);
      bump(r, "gamma_runs");
      if (static_cast<double>(g.steps) > bound) {
        record_failure(r, {{"property", "steps ≤ |A|^|K|"},
                           {"family", to_json(f)},
                           {"n", n},
                           {"steps", g.steps}});
      }
      g.s.members().for_each([&](Index code) {
        sc.insert(from_table_code(carrier, n, code));
      });
    }
    for (std::size_t s = 0; s <= s_max; ++s) {
      const OpFamily rhs = sloc_ops(carrier, sc, s, n, caps);
      const PairFamily constraints = inv.arities(0, s);
      const OpFamily lhs = polp(carrier, constraints, n, caps);
      bump(r, "comparisons");
      if (auto d = first_diff(lhs, rhs)) {
        json w = op_witness("Polp Invp^{≤s} F = sLoc_s ⟨F⟩_s", d->first,
                            d->second, constraints);
        w["family"] = to_json(f);
        w["s"] = s;
        w["n"] = n;
        record_failure(r, std::move(w));
      }
      // Single arity s, or arity 0 on the empty carrier.
      const std::size_t single = carrier.k() == 0 ? 0 : s;
      const PairFamily only = inv.arity(single);
      const OpFamily lhs1 = polp(carrier, only, n, caps);
      const OpFamily rhs1 =
          carrier.k() == 0 ? sloc_ops(carrier, sc, 0, n, caps) : rhs;
      if (auto d = first_diff(lhs1, rhs)) {
        json w = op_witness("Polp Invp^(s) F = sLoc_s ⟨F⟩_s", d->first,
                            d->second, only);
        w["family"] = to_json(f);
        w["s"] = s;
        w["n"] = n;
        record_failure(r, std::move(w));
      }
      if (rhs1 != rhs) {
        record_failure(r, {{"property", "sLoc_s = sLoc_0 on the empty carrier"},
                           {"family", to_json(f)},
                           {"s", s},
                           {"n", n}});
      }
    }
  }
}

}  // namespace

Report check_polp_invp_sloc(Carrier carrier, const OpFamily& f,
                            std::size_t s_max, std::size_t n_max,
                            const Caps& caps) {
  json params = {{"k", carrier.k()},
                 {"family", to_json(f)},
                 {"s_max", s_max},
                 {"n_max", n_max}};
  return run_report("polp-invp", params, 0, [&](Report& r) {
    polp_invp_sloc_into(r, carrier, f, s_max, n_max, caps);
  });
}

Report check_polp_invp_sloc_universe(Carrier carrier, std::size_t op_cap,
                                     std::size_t s_max, std::size_t n_max,
                                     const Caps& caps) {
  json params = {{"k", carrier.k()},
                 {"op_arity_cap", op_cap},
                 {"s_max", s_max},
                 {"n_max", n_max}};
  return run_report("polp-invp", params, 0, [&](Report& r) {
    for (const auto& f :
         small_families(ops_upto(carrier, op_cap, caps))) {
      bump(r, "families");
      polp_invp_sloc_into(r, carrier, f, s_max, n_max, caps);
    }
  });
}

// ---------------------------------------------------------------------------

Report check_gamma_minimality(Carrier carrier, std::size_t op_cap,
                              const Caps& caps) {
  json params = {{"k", carrier.k()}, {"op_arity_cap", op_cap}};
  return run_report("gamma", params, 0, [&](Report& r) {
    const std::size_t kk = carrier.k();
    const double bound =
        dpow(static_cast<double>(kk), static_cast<double>(kk));
    for (const auto& f : ops_upto(carrier, op_cap, caps)) {
      const OpFamily fam{f};
      const PairFamily inv = invp(carrier, fam, kk, caps);
      for_each_relation(carrier, kk, caps, [&](const Relation& b) {
        const GammaResult g = gamma_fixpoint(carrier, fam, b, caps);
        bump(r, "runs");
        bump_max(r, "max_gamma_steps", g.steps);
        json ctx = {{"operation", to_json(f)}, {"b", to_json(b)}};
        if (static_cast<double>(g.steps) > bound) {
          ctx["property"] = "steps ≤ |A|^|K|";
          ctx["steps"] = g.steps;
          record_failure(r, ctx);
          return;
        }
        if (!b.subset_of(g.r) || !g.s.subset_of(g.r)) {
          ctx["property"] = "B ⊆ R and S ⊆ R";
          record_failure(r, ctx);
          return;
        }
        const RelationPair least(g.r, g.s);
        if (!preserves(f, least)) {
          ctx["property"] = "Γ_F(B) is invariant";
          ctx["pair"] = to_json(least);
          ctx["preserves"] = false;
          record_failure(r, ctx);
          return;
        }
        for (const auto& p : inv) {
          if (b.subset_of(p.rho()) && !pair_leq(least, p)) {
            ctx["property"] = "Γ_F(B) ≤ every invariant pair above B";
            ctx["gamma"] = to_json(least);
            ctx["pair"] = to_json(p);
            ctx["preserves"] = preserves(f, p);
            record_failure(r, ctx);
            return;
          }
        }
      });
    }
  });
}

// ---------------------------------------------------------------------------

namespace {

bool has_empty_pair(const PairFamily& q) {
  for (const auto& p : q) {
    if (p.rho().empty()) return true;
  }
  return false;
}

// Adds the comparisons for one Q; returns true if a generation gap was seen.
bool invp_polp_sloc_into(Report& r, Carrier carrier, const PairFamily& q,
                         std::size_t s_max, std::size_t m_max,
                         const Caps& caps, std::size_t c_start,
                         std::size_t c_max, json& summary) {
  const RpCloneResult gen = rpclone_stabilised(
      carrier, q, m_max, std::max(c_start, m_max), std::max(c_max, m_max),
      caps);
  summary["intermediate_cap"] = gen.intermediate_cap;
  summary["size_capped"] = gen.size_capped;
  summary["changed_by_last_increment"] = gen.changed_by_last_increment;
  summary["generated"] = gen.generated;
  bump_max(r, "max_intermediate_cap", gen.intermediate_cap);

  const OpFamily pol = polp_upto(carrier, q, 0, s_max, caps);
  bool gap = false;
  std::uint64_t gaps = 0;
  for (std::size_t s = 0; s <= s_max; ++s) {
    const OpFamily upto = pol.arities(0, s);
    const OpFamily zero_s = pol.arity(0) | pol.arity(s);
    for (std::size_t m = 0; m <= m_max; ++m) {
      const PairFamily lhs = invp(carrier, upto, m, caps);
      const PairFamily rhs = sloc_pairs(carrier, gen.pairs, s, m, caps);
      bump(r, "comparisons");
      json ctx = {{"family", to_json(q)}, {"s", s}, {"m", m}};
      if (auto d = first_diff(invp(carrier, zero_s, m, caps), lhs)) {
        json w = pair_witness("Invp Polp^{0,s} Q = Invp Polp^{≤s} Q", d->first,
                              d->second, d->second ? upto : zero_s);
        w.update(ctx);
        record_failure(r, std::move(w));
      }
      if (has_empty_pair(q)) {
        const OpFamily only = pol.arity(s);
        if (auto d = first_diff(invp(carrier, only, m, caps), lhs)) {
          json w = pair_witness("Invp Polp^(s) Q = Invp Polp^{≤s} Q",
                                d->first, d->second, d->second ? upto : only);
          w.update(ctx);
          record_failure(r, std::move(w));
        }
      }
      for (const auto& p : rhs) {
        if (!lhs.contains(p)) {
          json w = pair_witness("sLOC_s ⟨Q⟩ ⊆ Invp Polp^{≤s} Q", p, false,
                                upto);
          w.update(ctx);
          record_failure(r, std::move(w));
          break;
        }
      }
      if (rhs.size() < lhs.size()) {
        gap = true;
        ++gaps;
        if (!summary.contains("first_gap")) {
          for (const auto& p : lhs) {
            if (!rhs.contains(p)) {
              summary["first_gap"] = {{"s", s}, {"m", m}, {"pair", to_json(p)}};
              break;
            }
          }
        }
      }
    }
  }
  summary["gaps"] = gaps;
  return gap;
}

}  // namespace

Report check_invp_polp_sloc(Carrier carrier, const PairFamily& q,
                            std::size_t s_max, std::size_t m_max,
                            const Caps& caps, std::size_t c_start,
                            std::size_t c_max) {
  json params = {{"k", carrier.k()},          {"family", to_json(q)},
                 {"s_max", s_max},            {"m_max", m_max},
                 {"c_start", c_start},        {"c_max", c_max},
                 {"max_generated", caps.max_generated}};
  return run_report("invp-polp", params, 0, [&](Report& r) {
    json summary = json::object();
    const bool gap = invp_polp_sloc_into(r, carrier, q, s_max, m_max, caps,
                                         c_start, c_max, summary);
    r.stats["generation"] = summary;
    if (gap && r.verdict == Verdict::pass) {
      r.verdict = Verdict::incomplete;
      r.note = "generated pairs miss part of the brute-force side";
    }
  });
}

std::vector<PairFamily> invp_polp_suite() {
  const Relation a0 = Relation::full(kBool, 0);
  const Relation e0(kBool, 0);
  const Relation e1(kBool, 1);
  const Relation e2(kBool, 2);
  const Relation full1 = Relation::full(kBool, 1);
  const Relation full2 = Relation::full(kBool, 2);
  const Relation zero = rel2(1, {{0}});
  const Relation one = rel2(1, {{1}});
  const Relation leq = leq2(), neq = neq2(), eq = eq2();
  const Relation lo = rel2(2, {{0, 1}});
  const Relation bottom = rel2(2, {{0, 0}});
  auto id = [](const Relation& x) { return RelationPair::identical(x); };
  auto pr = [](const Relation& x, const Relation& y) {
    return RelationPair(x, y);
  };
  return {
      {id(leq)},
      {pr(full1, one)},
      {pr(a0, e0)},
      {id(e1)},
      {},
      {id(eq)},
      {id(neq)},
      {id(zero)},
      {id(one)},
      {pr(zero, e1)},
      {pr(full1, e1)},
      {pr(full1, zero)},
      {id(a0)},
      {id(e0)},
      {pr(leq, eq)},
      {pr(neq, lo)},
      {pr(full2, leq)},
      {pr(leq, bottom)},
      {id(zero), id(one)},
      {id(leq), pr(full1, one)},
      {id(neq), id(zero)},
      {id(e2), pr(full1, one)},
      {pr(full2, eq)},
      {pr(eq, bottom), id(one)},
  };
}

Report check_invp_polp_sloc_suite(const Caps& caps, std::size_t s_max,
                                  std::size_t m_max) {
  json params = {{"k", 2},
                 {"s_max", s_max},
                 {"m_max", m_max},
                 {"c_start", 4},
                 {"c_max", 6},
                 {"max_generated", caps.max_generated}};
  return run_report("invp-polp", params, 0, [&](Report& r) {
    const auto suite = invp_polp_suite();
    json per_family = json::array();
    std::uint64_t incomplete = 0;
    for (const auto& q : suite) {
      json summary = json::object();
      summary["family"] = to_json(q);
      if (invp_polp_sloc_into(r, kBool, q, s_max, m_max, caps, 4, 6,
                              summary)) {
        ++incomplete;
      }
      per_family.push_back(std::move(summary));
    }
    r.stats["suite_size"] = suite.size();
    r.stats["incomplete_families"] = incomplete;
    r.stats["generation"] = per_family;
    if (incomplete > 0 && r.verdict == Verdict::pass) {
      r.verdict = Verdict::incomplete;
      r.note = "generated pairs miss part of the brute-force side";
    }
  });
}

// ---------------------------------------------------------------------------

Report check_finite_collapse(std::size_t samples, std::uint64_t seed,
                             const Caps& caps) {
  json params = {{"k", 2}, {"samples", samples}};
  return run_report("collapse", params, seed, [&](Report& r) {
    auto check = [&](const PairFamily& q, std::size_t m) {
      const PairFamily e = enc(q).arity(m);
      const PairFamily loc = loc_pairs(kBool, q, m, caps);
      const PairFamily sl = sloc_pairs(kBool, q, kBool.tuples(m), m, caps);
      bump(r, "families");
      if (loc != sl) {
        record_failure(r, {{"property", "LOC = sLOC_{k^m}"},
                           {"family", to_json(q)},
                           {"m", m}});
      } else if (auto d = first_diff(e, loc)) {
        record_failure(r, {{"property", "enc Q = LOC Q"},
                           {"family", to_json(q)},
                           {"m", m},
                           {"pair", to_json(d->first)},
                           {"in_enc", d->second}});
      }
    };
    const auto unary = all_pairs(kBool, 1, caps).to_vector();
    for (std::uint32_t mask = 0; mask < (1u << unary.size()); ++mask) {
      PairFamily q;
      for (std::size_t i = 0; i < unary.size(); ++i) {
        if ((mask >> i) & 1u) q.insert(unary[i]);
      }
      check(q, 1);
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
      PairFamily q;
      const std::size_t size = 1 + rng() % 4;
      for (std::size_t i = 0; i < size; ++i) q.insert(random_pair(rng, kBool, 2));
      check(q, 2);
    }
  });
}

Report check_directed_unions(std::size_t samples, std::uint64_t seed,
                             const Caps& caps) {
  json params = {{"k", 2}, {"samples", samples}, {"m_max", 2}, {"s_max", 3}};
  return run_report("directed", params, seed, [&](Report& r) {
    std::mt19937_64 rng(seed);
    std::size_t done = 0;
    std::size_t attempts = 0;
    while (done < samples) {
      if (++attempts > samples * 50) {
        throw CapExceeded("too few s-directed families found",
                          static_cast<double>(attempts));
      }
      const std::size_t m = 1 + rng() % 2;
      const std::size_t s = rng() % 4;
      PairFamily q;
      const std::size_t size = 1 + rng() % 3;
      for (std::size_t i = 0; i < size; ++i) q.insert(random_pair(rng, kBool, m));
      const PairFamily sl = sloc_pairs(kBool, q, s, m, caps);
      if (sl.empty()) continue;
      const auto members = sl.to_vector();
      // Random subfamilies first; fall back to everything below one member.
      PairFamily t;
      for (int tries = 0; tries < 20 && t.empty(); ++tries) {
        PairFamily cand;
        const std::size_t tsize = 2 + rng() % 3;
        for (std::size_t i = 0; i < tsize; ++i) {
          cand.insert(members[rng() % members.size()]);
        }
        if (is_s_directed(cand, s)) t = cand;
      }
      if (t.empty()) {
        const RelationPair& top = members[rng() % members.size()];
        t.insert(top);
        for (const auto& p : members) {
          if (pair_leq(p, top) && rng() % 2 == 0) t.insert(p);
        }
        if (!is_s_directed(t, s)) {
          record_failure(r, {{"property", "families below a member are directed"},
                             {"family", to_json(t)},
                             {"s", s}});
          continue;
        }
      }
      const RelationPair u = union_family(t);
      ++done;
      bump(r, "families");
      if (!t.contains(u)) bump(r, "unions_outside_family");
      if (!sl.contains(u)) {
        record_failure(r, {{"property", "directed unions stay in sLOC_s(Q)"},
                           {"q", to_json(q)},
                           {"s", s},
                           {"m", m},
                           {"directed_family", to_json(t)},
                           {"union", to_json(u)}});
      }
    }
  });
}

// ---------------------------------------------------------------------------

Report check_semiclone_lemmas(Carrier carrier, const OpFamily& f,
                              std::size_t window, const Caps& caps) {
  json params = {{"k", carrier.k()}, {"family", to_json(f)}, {"window", window}};
  return run_report("semiclone", params, 0, [&](Report& r) {
    if (window == 0) throw DomainError("window must be positive");
    auto fail = [&](const std::string& what, json extra = json::object()) {
      extra["property"] = what;
      extra["family"] = to_json(f);
      record_failure(r, std::move(extra));
    };
    std::vector<OpFamily> sc(window + 1), cl(window + 1);
    for (std::size_t n = 0; n <= window; ++n) {
      sc[n] = semiclone_nary_part(carrier, f, n, caps);
      cl[n] = clone_nary_part(carrier, f, n, caps);
    }
    // Single projections generate Triv.
    for (std::size_t n = 1; n <= window; ++n) {
      for (std::size_t i = 0; i < n; ++i) {
        const OpFamily e{projection(n, i, carrier)};
        for (std::size_t m = 1; m <= window; ++m) {
          if (semiclone_nary_part(carrier, e, m, caps) !=
              projections(m, carrier)) {
            fail("⟨{e}⟩_s = Triv", {{"n", n}, {"i", i}, {"m", m}});
          }
        }
      }
    }
    // Adding a projection gives the generated clone.
    if (carrier.k() > 0) {
      for (std::size_t n = 1; n <= window; ++n) {
        OpFamily with = f;
        with.insert(projection(n, 0, carrier));
        for (std::size_t m = 0; m <= window; ++m) {
          if (semiclone_nary_part(carrier, with, m, caps) != cl[m]) {
            fail("⟨F ∪ {e}⟩_s = ⟨F⟩_s ∪ Triv", {{"n", n}, {"m", m}});
          }
        }
      }
    }
    // Intersection with Triv is all or nothing, decided by id.
    const bool clone = carrier.k() > 0 &&
                       sc[1].contains(projection(1, 0, carrier));
    for (std::size_t n = 1; n <= window; ++n) {
      const OpFamily meet = sc[n] & projections(n, carrier);
      if (!(meet.empty() && !clone) &&
          !(meet == projections(n, carrier) && clone)) {
        fail("⟨F⟩_s ∩ Triv ∈ {∅, Triv}", {{"n", n}});
      }
    }
    // Unary parts are composition-closed.
    if (semigroup_generate(sc[1]) != sc[1]) fail("unary part is a semigroup");
    // Fixed-point closure under sLoc.
    for (std::size_t n = 0; n <= window; ++n) {
      for (std::size_t s = 0; s <= 2; ++s) {
        const OpFamily once = sloc_ops(carrier, sc[n], s, n, caps);
        if (!sc[n].subset_of(once) ||
            sloc_ops(carrier, once, s, n, caps) != once) {
          fail("sLoc_s is a closure", {{"n", n}, {"s", s}});
        }
      }
    }
    // Polp of invariant pairs: a semiclone, a clone iff Q is identical,
    // and sLoc_s-fixed for Q of arity ≤ s.
    const PairFamily q = invp_upto(carrier, f, 0, 1, caps);
    PairFamily q_identical;
    for (const auto& p : q) {
      if (p.is_identical()) q_identical.insert(p);
    }
    for (const PairFamily* fam : std::vector<const PairFamily*>{&q, &q_identical}) {
      const OpFamily pw = polp_upto(carrier, *fam, 0, window, caps);
      if (semiclone_upto(carrier, pw, 0, window, caps) != pw) {
        fail("Polp Q is a semiclone", {{"q", to_json(*fam)}});
      }
      if (carrier.k() > 0) {
        const bool is_clone = pw.contains(projection(1, 0, carrier));
        if (is_clone == has_strict(*fam)) {
          fail("Polp Q is a clone iff Q is identical",
               {{"q", to_json(*fam)}, {"contains_id", is_clone}});
        }
      }
      for (std::size_t n = 0; n <= window; ++n) {
        const OpFamily slice = pw.arity(n);
        if (sloc_ops(carrier, slice, 1, n, caps) != slice) {
          fail("sLoc_s Polp Q = Polp Q", {{"q", to_json(*fam)}, {"n", n}});
        }
      }
    }
    // Generated by unary maps: {h∘e^n_i}.
    if (f.arities(1, 1) == f) {
      const OpFamily s = semigroup_generate(f);
      for (std::size_t n = 1; n <= window; ++n) {
        if (semigroup_semiclone_part(s, n) != sc[n]) {
          fail("⟨G⟩_s = {f∘e^n_i : f ∈ S}", {{"n", n}});
        }
      }
    }
    r.stats["clone"] = clone;
    r.stats["unary_part_size"] = sc[1].size();
  });
}

// ---------------------------------------------------------------------------

namespace {

// Searches f∘(g_0, ..., g_{n-1}) ∈ Triv^(m) with f ∈ C and each g_i in
// C^(m) ∪ Triv^(m), m ranging over 1..window.
std::optional<json> projection_from_composition(Carrier carrier,
                                                const std::vector<OpFamily>& c,
                                                std::size_t window) {
  for (std::size_t m = 1; m <= window; ++m) {
    const auto inner = (c[m] | projections(m, carrier)).to_vector();
    for (std::size_t n = 0; n < c.size(); ++n) {
      for (const auto& f : c[n]) {
        if (n > 0 && inner.empty()) continue;
        std::vector<std::size_t> pick(n, 0);
        while (true) {
          std::vector<Operation> gs;
          for (auto i : pick) gs.push_back(inner[i]);
          const Operation h = compose(f, gs, m);
          if (is_projection(h)) {
            json terms = json::array();
            for (const auto& g : gs) terms.push_back(to_json(g));
            return json{{"outer", to_json(f)},
                        {"inner", terms},
                        {"result", to_json(h)}};
          }
          std::size_t j = n;
          bool more = false;
          while (j > 0) {
            --j;
            if (++pick[j] < inner.size()) {
              more = true;
              break;
            }
            pick[j] = 0;
          }
          if (!more) break;
        }
      }
    }
  }
  return std::nullopt;
}


void decidability_into(Report& r, Carrier carrier, const OpFamily& f,
                       std::size_t window, const Caps& caps) {
  const bool decision = decide_projections(carrier, f, caps);
  const std::size_t top = std::max(window, max_arity(f));
  std::vector<OpFamily> c(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    c[n] = clone_nary_part(carrier, f, n, caps) - projections(n, carrier);
  }
  const auto found = projection_from_composition(carrier, c, window);
  bump(r, "families");
  bump(r, decision ? "semiclone" : "not_semiclone");
  if (decision == found.has_value()) {
    json w = {{"property", "decide_projections agrees with composition"},
              {"family", to_json(f)},
              {"decision", decision}};
    w["composition"] = found ? *found : json(nullptr);
    record_failure(r, std::move(w));
  }
  // Unary families: the generated semigroup is recovered from its
  // invariant pairs, with a strict pair exactly when id is missing.
  if (carrier.k() > 0 && !f.empty() && f.arities(1, 1) == f) {
    const OpFamily h = semigroup_generate(f);
    const PairFamily q = invp_upto(carrier, h, 0, carrier.k(), caps);
    const bool id_in = h.contains(projection(1, 0, carrier));
    if (polp(carrier, q, 1, caps) != h) {
      record_failure(r, {{"property", "H = Polp^(1) Invp^{≤k} H"},
                         {"semigroup", to_json(h)}});
    }
    if (has_strict(q) == id_in) {
      record_failure(r, {{"property", "strict pair iff id ∉ H"},
                         {"semigroup", to_json(h)},
                         {"contains_id", id_in}});
    }
    if (decision != !semigroup_generate(f - projections(1, carrier))
                         .contains(projection(1, 0, carrier))) {
      record_failure(r, {{"property", "decision on unary families"},
                         {"family", to_json(f)}});
    }
  }
}

}  // namespace

Report check_decidability(Carrier carrier, const OpFamily& f,
                          std::size_t window, const Caps& caps) {
  json params = {{"k", carrier.k()}, {"family", to_json(f)}, {"window", window}};
  return run_report("decide", params, 0, [&](Report& r) {
    decidability_into(r, carrier, f, window, caps);
    r.stats["decision"] = decide_projections(carrier, f, caps);
  });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<RelFamily> classical_relation_suite() {
  const Relation zero = rel2(1, {{0}});
  const Relation one = rel2(1, {{1}});
  return {
      {leq2()},
      {one},
      {zero, one},
      {neq2()},
      {eq2()},
      {rel2(2, {{0, 1}})},
      {Relation(kBool, 1)},
      {Relation::full(kBool, 0)},
      {Relation(kBool, 0)},
      {},
      {leq2(), zero},
      {rel2(2, {{0, 0}, {0, 1}, {1, 0}})},
  };
}

RelFamily identical_firsts(Report& r, const PairFamily& pairs) {
  RelFamily out;
  for (const auto& p : pairs) {
    if (!p.is_identical()) {
      record_failure(r, {{"property", "identical seeds generate identical pairs"},
                         {"pair", to_json(p)}});
    }
    out.insert(p.rho());
  }
  return out;
}

}  // namespace

Report check_classical(const Caps& caps) {
  json params = {{"k", 2},  {"op_arity_cap", 2}, {"n_max", 2},
                 {"s_max", 3}, {"m_max", 2},     {"c_start", 4},
                 {"c_max", 6}, {"max_generated", caps.max_generated}};
  return run_report("classical", params, 0, [&](Report& r) {
    const Operation id = projection(1, 0, kBool);
    const auto families = small_families(ops_upto(kBool, 2, caps));
    for (const auto& f : families) {
      bump(r, "op_families");
      json ctx = {{"family", to_json(f)}};
      RelFamily irel = inv_upto(kBool, f, 0, 3, caps);
      if (f.size() == 1) irel.insert_all(inv(kBool, f, 4, caps));
      for (std::size_t n = 0; n <= 2; ++n) {
        const OpFamily cl = clone_nary_part(kBool, f, n, caps);
        for (std::size_t s = 0; s <= 3; ++s) {
          const OpFamily rhs = sloc_ops(kBool, cl, s, n, caps);
          const RelFamily le = irel.arities(0, s);
          const RelFamily eq = irel.arity(s);
          bump(r, "comparisons");
          for (const RelFamily* side : {&le, &eq}) {
            if (auto d = first_diff(pol(kBool, *side, n, caps), rhs)) {
              json w = op_witness(side == &le
                                      ? "Pol^(n) Inv^{≤s} F = sLoc_s ⟨F⟩_clone"
                                      : "Pol^(n) Inv^(s) F = sLoc_s ⟨F⟩_clone",
                                  d->first, d->second, identical_pairs(*side));
              w.update(ctx);
              w["s"] = s;
              w["n"] = n;
              record_failure(r, std::move(w));
            }
          }
          if (!has_nullary(f) && n == 0 && !rhs.empty()) {
            record_failure(r, {{"property", "no nullary part without constants"},
                               {"family", to_json(f)},
                               {"s", s}});
          }
        }
        // Pol Inv^{≥m} F = Loc ⟨F⟩_clone, windowed to arities [m, max(m, k^n)].
        if (n <= 1 || f.size() == 1) {
          const OpFamily loc = loc_ops(kBool, cl, n, caps);
          const std::size_t need = static_cast<std::size_t>(kBool.tuples(n));
          for (std::size_t m = 0; m <= 2; ++m) {
            const RelFamily window = irel.arities(m, std::max(m, need));
            bump(r, "comparisons");
            if (auto d = first_diff(pol(kBool, window, n, caps), loc)) {
              json w = op_witness("Pol Inv^{≥m} F = Loc ⟨F⟩_clone", d->first,
                                  d->second, identical_pairs(window));
              w.update(ctx);
              w["m"] = m;
              w["n"] = n;
              record_failure(r, std::move(w));
            }
          }
        }
      }
      // Projection-containing families admit only identical pairs.
      std::vector<OpFamily> with_projection;
      if (has_projection(f)) with_projection.push_back(f);
      if (f.size() == 1 && !f.contains(id)) with_projection.push_back(f | OpFamily{id});
      for (const auto& g : with_projection) {
        bump(r, "projection_families");
        for (const auto& p : invp_upto(kBool, g, 0, 2, caps)) {
          if (!p.is_identical()) {
            json w = pair_witness("projections force identical pairs", p, true, g);
            w["family"] = to_json(g);
            record_failure(r, std::move(w));
            break;
          }
        }
      }
    }

    // Pol of empty relations.
    for (std::size_t m = 0; m <= 2; ++m) {
      const RelFamily e{Relation(kBool, m)};
      if (!pol(kBool, e, 0, caps).empty()) {
        record_failure(r, {{"property", "Pol{∅} has no nullary operations"},
                           {"m", m}});
      }
      for (std::size_t n = 1; n <= 2; ++n) {
        if (pol(kBool, e, n, caps) != all_operations(kBool, n, caps)) {
          record_failure(r, {{"property", "Pol^(n){∅} = O^(n)"},
                             {"m", m},
                             {"n", n}});
        }
      }
    }

    const RelFamily empty1{Relation(kBool, 1)};
    for (const auto& q : classical_relation_suite()) {
      bump(r, "relation_families");
      json ctx = {{"relations", to_json(q)}};
      std::vector<OpFamily> pol_n;
      for (std::size_t n = 0; n <= 4; ++n) pol_n.push_back(pol(kBool, q, n, caps));
      for (std::size_t n = 1; n <= 3; ++n) {
        if (pol(kBool, q | empty1, n, caps) != pol_n[n]) {
          record_failure(r, {{"property", "Pol^(n)(Q ∪ {∅}) = Pol^(n) Q"},
                             {"relations", to_json(q)},
                             {"n", n}});
        }
      }
      const bool no_constants = pol_n[0].empty();

      const RpCloneResult gen = rpclone_stabilised(
          kBool, identical_pairs(q), 2, 4, 6, caps);
      const RelFamily relclone = identical_firsts(r, gen.pairs);
      const RpCloneResult gen_e = rpclone_stabilised(
          kBool, identical_pairs(q | empty1), 2, 4, 6, caps);
      const RelFamily relclone_e = identical_firsts(r, gen_e.pairs);
      bump_max(r, "max_intermediate_cap",
               std::max(gen.intermediate_cap, gen_e.intermediate_cap));

      for (std::size_t s = 0; s <= 3; ++s) {
        OpFamily upto;
        for (std::size_t n = 0; n <= s; ++n) upto.insert_all(pol_n[n]);
        const OpFamily zero_s = pol_n[0] | pol_n[s];
        for (std::size_t m = 0; m <= 2; ++m) {
          json where = ctx;
          where["s"] = s;
          where["m"] = m;
          const RelFamily lhs = inv(kBool, upto, m, caps);
          const RelFamily rhs = sloc_relations(kBool, relclone, s, m, caps);
          bump(r, "comparisons");
          if (inv(kBool, zero_s, m, caps) != lhs) {
            where["property"] = "Inv Pol^{0,s} Q = Inv Pol^{≤s} Q";
            record_failure(r, where);
          }
          for (const auto& x : rhs) {
            if (!lhs.contains(x)) {
              json w = pair_witness("sLOC_s ⟨Q⟩_relclone ⊆ Inv Pol^{≤s} Q",
                                    RelationPair::identical(x), false, upto);
              w.update(where);
              record_failure(r, std::move(w));
              break;
            }
          }
          if (rhs.size() < lhs.size()) bump(r, "generation_gaps");

          // Without nullary polymorphisms Pol^(s) alone suffices, and for
          // s > 0 only then: ∅_0 separates the two sides otherwise.
          const RelFamily only_s = inv(kBool, pol_n[s], m, caps);
          if (no_constants && only_s != lhs) {
            where["property"] = "Inv Pol^(s) Q = Inv Pol^{≤s} Q without constants";
            record_failure(r, where);
          }
          if (!no_constants && s > 0 && m == 0 && only_s == lhs) {
            where["property"] = "constants are needed for s > 0";
            record_failure(r, where);
          }

          if (s >= 1) {
            const PairFamily lifted =
                sloc_pairs(kBool, identical_pairs(q), s, m, caps);
            if (lifted != identical_pairs(sloc_relations(kBool, q, s, m, caps))) {
              where["property"] = "pair sLOC of identical pairs = relation sLOC";
              record_failure(r, where);
            }
            // Adding ∅ matches Pol^(s) alone.
            const RelFamily rhs_e = sloc_relations(kBool, relclone_e, s, m, caps);
            for (const auto& x : rhs_e) {
              if (!only_s.contains(x)) {
                json w = pair_witness("sLOC_s ⟨Q ∪ {∅}⟩ ⊆ Inv Pol^(s) Q",
                                      RelationPair::identical(x), false,
                                      pol_n[s]);
                w.update(where);
                record_failure(r, std::move(w));
                break;
              }
            }
            if (rhs_e.size() < only_s.size()) bump(r, "generation_gaps");
          }
        }
      }
      // LOC ⟨Q ∪ {∅}⟩ = Inv Pol^{>0} Q, windowed to Pol^{1..k^m}.
      for (std::size_t m = 0; m <= 1; ++m) {
        const std::size_t need = static_cast<std::size_t>(kBool.tuples(m));
        OpFamily positive;
        for (std::size_t n = 1; n <= need; ++n) positive.insert_all(pol_n[n]);
        const RelFamily lhs = inv(kBool, positive, m, caps);
        if (lhs != inv(kBool, pol_n[need], m, caps)) {
          record_failure(r, {{"property", "Inv Pol^{>0} Q window"},
                             {"relations", to_json(q)},
                             {"m", m}});
        }
        const RelFamily rhs = sloc_relations(kBool, relclone_e, need, m, caps);
        if (!rhs.subset_of(lhs)) {
          record_failure(r, {{"property", "LOC ⟨Q ∪ {∅}⟩ ⊆ Inv Pol^{>0} Q"},
                             {"relations", to_json(q)},
                             {"m", m}});
        }
        if (rhs.size() < lhs.size()) bump(r, "generation_gaps");
      }
    }
    if (r.verdict == Verdict::pass && r.stats.value("generation_gaps", 0) > 0) {
      r.verdict = Verdict::incomplete;
      r.note = "generated relations miss part of the brute-force side";
    }
  });
}

// ---------------------------------------------------------------------------

Report check_transformation_semigroups(std::size_t samples,
                                       std::uint64_t seed, const Caps& caps) {
  json params = {{"k", 2}, {"s_max", 3}, {"samples", samples}};
  return run_report("semigroups", params, seed, [&](Report& r) {
    const Operation id = projection(1, 0, kBool);
    const auto unary = all_operations(kBool, 1, caps).to_vector();
    for (std::uint32_t mask = 0; mask < (1u << unary.size()); ++mask) {
      OpFamily h;
      for (std::size_t i = 0; i < unary.size(); ++i) {
        if ((mask >> i) & 1u) h.insert(unary[i]);
      }
      const OpFamily gen = semigroup_generate(h);
      const bool semigroup = gen == h;
      const bool id_in = h.contains(id);
      json ctx = {{"h", to_json(h)}};
      if (semiclone_nary_part(kBool, h, 1, caps) != gen) {
        ctx["property"] = "unary part of ⟨H⟩_s is the generated semigroup";
        record_failure(r, ctx);
      }
      const bool gen_clone =
          semiclone_nary_part(kBool, h, 2, caps).contains(projection(2, 0, kBool));
      if (gen_clone != gen.contains(id)) {
        ctx["property"] = "⟨H⟩_s is a clone iff id ∈ ⟨H⟩";
        record_failure(r, ctx);
      }
      for (std::size_t n = 1; n <= 2; ++n) {
        if (semigroup_semiclone_part(gen, n) !=
            semiclone_nary_part(kBool, h, n, caps)) {
          ctx["property"] = "⟨H⟩_s^(n) = {f∘e^n_i}";
          ctx["n"] = n;
          record_failure(r, ctx);
        }
      }
      if (semigroup) bump(r, "semigroups");
      for (std::size_t s = 0; s <= 3; ++s) {
        const PairFamily q = invp_upto(kBool, h, 0, s, caps);
        const OpFamily recovered = polp(kBool, q, 1, caps);
        const bool closed = semigroup && sloc_ops(kBool, h, s, 1, caps) == h;
        const bool fixed = recovered == h;
        json where = ctx;
        where["s"] = s;
        if (closed != fixed) {
          where["property"] = "s-locally closed semigroup iff H = Polp^(1) Invp^{≤s} H";
          where["recovered"] = to_json(recovered);
          record_failure(r, where);
        }
        if (recovered != sloc_ops(kBool, gen, s, 1, caps)) {
          where["property"] = "Polp^(1) Invp^{≤s} H = sLoc_s ⟨H⟩";
          record_failure(r, where);
        }
        if (s >= 1 &&
            polp(kBool, invp(kBool, h, s, caps), 1, caps) != recovered) {
          where["property"] = "single arity s recovers the same";
          record_failure(r, where);
        }
        if (fixed && has_strict(q) == id_in) {
          where["property"] = "strict witness iff id ∉ H";
          where["contains_id"] = id_in;
          record_failure(r, where);
        }
        if (s == 2 && semigroup) {
          bump(r, "recovered_at_2", fixed ? 1 : 0);
          if (!id_in && fixed && has_strict(q)) bump(r, "proper_with_strict_witness");
          if (!fixed) {
            where["property"] = "every semigroup is recovered at s = 2";
            record_failure(r, where);
          }
        }
      }
    }
    // Any Q ⊆ Rp^{≤s} yields an s-locally closed semigroup, proper when Q
    // has a strict pair.
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t s = rng() % 4;
      PairFamily q;
      const std::size_t size = 1 + rng() % 3;
      for (std::size_t i = 0; i < size; ++i) {
        q.insert(random_pair(rng, kBool, rng() % (std::min<std::size_t>(s, 2) + 1)));
      }
      const OpFamily h = polp(kBool, q, 1, caps);
      bump(r, "sampled_families");
      const std::size_t ar =
          std::max_element(q.begin(), q.end(), [](const auto& a, const auto& b) {
            return a.arity() < b.arity();
          })->arity();
      if (semigroup_generate(h) != h || sloc_ops(kBool, h, ar, 1, caps) != h ||
          (has_strict(q) == h.contains(id))) {
        record_failure(r, {{"property", "Polp^(1) Q is an s-locally closed semigroup"},
                           {"q", to_json(q)},
                           {"h", to_json(h)}});
      }
    }
  });
}

// ---------------------------------------------------------------------------

namespace {

// Folds part into total: the first failure wins, counters add up.
void merge_into(Report& total, const Report& part) {
  if (part.verdict == Verdict::fail) {
    record_failure(total, part.counterexample);
  } else if (part.verdict == Verdict::refused &&
             total.verdict != Verdict::fail) {
    total.verdict = Verdict::refused;
    total.note = part.note;
  } else if (part.verdict == Verdict::incomplete &&
             total.verdict == Verdict::pass) {
    total.verdict = Verdict::incomplete;
    total.note = part.note;
  }
  bump(total, "subchecks");
}

}  // namespace

std::vector<std::string> check_names() {
  return {"galois",   "galois-k0", "polp-invp", "gamma",     "decide",
          "collapse", "invp-polp", "directed",  "semiclone", "classical",
          "semigroups"};
}

Report run_check(const std::string& name, std::uint64_t seed,
                 const Caps& caps) {
  if (name == "galois") return check_galois_axioms(kBool, 2, 1, 2, caps);
  if (name == "galois-k0") {
    Report r = check_galois_axioms(Carrier(0), 2, 1, 2, caps);
    r.name = name;
    return r;
  }
  if (name == "polp-invp") {
    return check_polp_invp_sloc_universe(kBool, 2, 3, 2, caps);
  }
  if (name == "gamma") return check_gamma_minimality(kBool, 2, caps);
  if (name == "decide") {
    return run_report("decide", {{"k", 2}, {"op_arity_cap", 2}, {"window", 2}},
                      0, [&](Report& r) {
                        for (const auto& f :
                             small_families(ops_upto(kBool, 2, caps))) {
                          decidability_into(r, kBool, f, 1, caps);
                        }
                        decidability_into(r, kBool, {}, 2, caps);
                        for (const auto& f :
                             {OpFamily{op2(2, {0, 0, 0, 1})},
                              OpFamily{op2(1, {0, 0})}}) {
                          decidability_into(r, kBool, f, 2, caps);
                        }
                      });
  }
  if (name == "collapse") return check_finite_collapse(1000, seed, caps);
  if (name == "invp-polp") return check_invp_polp_sloc_suite(caps);
  if (name == "directed") return check_directed_unions(1000, seed, caps);
  if (name == "semiclone") {
    return run_report("semiclone", {{"k", 2}, {"op_arity_cap", 2}, {"window", 2}},
                      0, [&](Report& r) {
                        OpFamily none;
                        merge_into(r, check_semiclone_lemmas(kBool, none, 2, caps));
                        for (const auto& f : small_families(ops_upto(kBool, 2, caps))) {
                          if (f.size() == 1) {
                            merge_into(r, check_semiclone_lemmas(kBool, f, 2, caps));
                          }
                        }
                      });
  }
  if (name == "classical") return check_classical(caps);
  if (name == "semigroups") return check_transformation_semigroups(200, seed, caps);
  throw DomainError("unknown check '" + name + "'");
}

std::vector<Report> run_all(std::uint64_t seed, const Caps& caps) {
  std::vector<Report> out;
  for (const auto& name : check_names()) out.push_back(run_check(name, seed, caps));
  return out;
}

}  // namespace semiclones
