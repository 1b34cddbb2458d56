// One pass/fail line per acceptance criterion; exit status 0 iff all pass.

#include "semiclones/generation.hpp"
#include "semiclones/harness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace semiclones;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string stat(const Report& r, const std::string& key) {
  return r.stats.contains(key) ? r.stats[key].dump() : "?";
}

std::size_t stat_n(const Report& r, const std::string& key) {
  return r.stats.contains(key) ? r.stats[key].get<std::size_t>() : 0;
}

std::string verdict_of(const Report& r) {
  std::string s = verdict_name(r.verdict);
  if (!r.counterexample.is_null()) s += " counterexample " + r.counterexample.dump();
  if (!r.note.empty()) s += " (" + r.note + ")";
  return s;
}

}  // namespace

int main() {
  const Caps caps = Caps::defaults();
  const Carrier b2(2);
  // Γ step maxima shared by the bound criterion.
  std::size_t steps_sloc = 0, steps_min = 0;
  bool gamma_ran_sloc = false, gamma_ran_min = false;

  const std::vector<Criterion> criteria = {
      {1, "galois axioms on singleton families", 10,
       [&] {
         const Report r = run_check("galois", kSeed, caps);
         const Report z = run_check("galois-k0", kSeed, caps);
         const bool ok = r.verdict == Verdict::pass &&
                         z.verdict == Verdict::pass &&
                         stat_n(r, "operations") >= 20 && stat_n(r, "pairs") == 12;
         return Outcome{ok, "k=2 " + verdict_of(r) + " ops=" + stat(r, "operations") +
                                " pairs=" + stat(r, "pairs") + "; k=0 " +
                                verdict_of(z)};
       }},
      {2, "polp invp of s-bounded pairs equals s-local semiclone", 300,
       [&] {
         const Report r = run_check("polp-invp", kSeed, caps);
         gamma_ran_sloc = r.stats.contains("max_gamma_steps");
         steps_sloc = stat_n(r, "max_gamma_steps");
         const bool ok = r.verdict == Verdict::pass && stat_n(r, "families") >= 210;
         return Outcome{ok, verdict_of(r) + " families=" + stat(r, "families") +
                                " comparisons=" + stat(r, "comparisons")};
       }},
      {3, "gamma is the least invariant pair above B", 30,
       [&] {
         const Report r = run_check("gamma", kSeed, caps);
         gamma_ran_min = r.stats.contains("max_gamma_steps");
         steps_min = stat_n(r, "max_gamma_steps");
         const bool ok = r.verdict == Verdict::pass && stat_n(r, "runs") > 0;
         return Outcome{ok, verdict_of(r) + " runs=" + stat(r, "runs")};
       }},
      {4, "gamma step bound", 1,
       [&] {
         // |K| = k^n with n <= 2 for the comparison runs, |K| = k for minimality.
         const bool ok = gamma_ran_sloc && gamma_ran_min && steps_sloc <= 16 &&
                         steps_min <= 4;
         return Outcome{ok, "max steps " + std::to_string(steps_sloc) +
                                " <= 16 and " + std::to_string(steps_min) +
                                " <= 4"};
       }},
      {5, "projection decidability", 1,
       [&] {
         const OpFamily and_f{Operation(b2, 2, {0, 0, 0, 1})};
         const OpFamily c0{Operation(b2, 1, {0, 0})};
         const OpFamily none;
         struct Case {
           const char* name;
           const OpFamily* f;
           bool want;
         };
         bool ok = true;
         std::string detail;
         for (const Case& c : {Case{"and", &and_f, false}, Case{"const0", &c0, true},
                               Case{"empty", &none, true}}) {
           const bool got = decide_projections(b2, *c.f, caps);
           const Report direct = check_decidability(b2, *c.f, 2, caps);
           const bool agree = direct.verdict == Verdict::pass &&
                              direct.stats["decision"] == c.want;
           ok = ok && got == c.want && agree;
           detail += std::string(c.name) + "=" + (got ? "true" : "false") +
                     (agree ? " " : " (direct mismatch) ");
         }
         return Outcome{ok, detail};
       }},
      {6, "finite collapse enc = LOC = sLOC", 120,
       [&] {
         const Report r = run_check("collapse", kSeed, caps);
         const bool ok = r.verdict == Verdict::pass && stat_n(r, "families") >= 1512;
         return Outcome{ok, verdict_of(r) + " families=" + stat(r, "families")};
       }},
      {7, "invp polp of s-bounded operations equals s-local pair clone", 600,
       [&] {
         const Report r = run_check("invp-polp", kSeed, caps);
         const bool ok = (r.verdict == Verdict::pass ||
                          r.verdict == Verdict::incomplete) &&
                         stat_n(r, "suite_size") >= 20;
         return Outcome{ok, verdict_of(r) + " suite=" + stat(r, "suite_size") +
                                " incomplete_families=" +
                                stat(r, "incomplete_families") +
                                " max_cap=" + stat(r, "max_intermediate_cap")};
       }},
      {8, "s-directed unions stay inside", 600,
       [&] {
         const Report r = run_check("directed", kSeed, caps);
         const bool ok = r.verdict == Verdict::pass && stat_n(r, "families") >= 1000;
         return Outcome{ok, verdict_of(r) + " families=" + stat(r, "families")};
       }},
      {9, "classical clone and relational clone suite", 300,
       [&] {
         const Report r = run_check("classical", kSeed, caps);
         const bool ok = r.verdict == Verdict::pass && stat_n(r, "op_families") >= 210;
         return Outcome{ok, verdict_of(r) + " op_families=" + stat(r, "op_families") +
                                " comparisons=" + stat(r, "comparisons")};
       }},
      {10, "transformation semigroups recovered from invariant pairs", 60,
       [&] {
         const Report r = run_check("semigroups", kSeed, caps);
         const std::size_t n = stat_n(r, "semigroups");
         const bool ok = r.verdict == Verdict::pass && n > 0 &&
                         stat_n(r, "recovered_at_2") == n &&
                         stat_n(r, "proper_with_strict_witness") > 0;
         return Outcome{ok, verdict_of(r) + " semigroups=" + std::to_string(n) +
                                " strict_witnesses=" +
                                stat(r, "proper_with_strict_witness")};
       }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = o.ok && in_budget;
    all = all && pass;
    std::printf("criterion %d %s: %s: %s; %.2fs (budget %.0fs%s)\n", c.id,
                pass ? "PASS" : "FAIL", c.title.c_str(), o.detail.c_str(), secs,
                c.budget_s, in_budget ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("acceptance %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
