#include "cli.hpp"

#include "semiclones/format.hpp"
#include "semiclones/generation.hpp"
#include "semiclones/harness.hpp"
#include "semiclones/preserve.hpp"
#include "semiclones/relpairs.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace semiclones::cli {

namespace {

using nlohmann::json;

enum Exit { ok = 0, check_failed = 1, refused = 2, input_error = 3 };

struct Options {
  std::string problem;
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::string caps = "default";
  std::size_t k = 2;
  std::vector<std::string> ops, rels, pairs;
  std::optional<std::size_t> arity, max_arity, s, intermediate_cap;
  std::size_t c_start = 4, c_max = 6;
  std::string op, pair, b;
  std::size_t mu = 0;
  std::vector<std::size_t> beta;
  std::vector<std::string> alphas;
  std::string check;
};

struct InputError : DomainError {
  using DomainError::DomainError;
};

Caps caps_of(const std::string& name) {
  if (name == "default") return Caps::defaults();
  if (name == "large") return Caps::large();
  if (name == "small") return Caps::small();
  throw InputError("unknown caps preset '" + name +
                   "' (expected default, large or small)");
}

Problem load_problem(const Options& o) {
  if (o.problem.empty()) {
    Problem p;
    p.carrier = Carrier(o.k);
    return p;
  }
  std::stringstream buf;
  if (o.problem == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(o.problem);
    if (!in) throw InputError("cannot read problem file '" + o.problem + "'");
    buf << in.rdbuf();
  }
  return parse_problem(buf.str());
}

OpFamily ops_named(const Problem& p, const std::vector<std::string>& names) {
  OpFamily out;
  for (const auto& n : names) {
    const Operation* f = p.find_op(n);
    if (f == nullptr) throw InputError("unknown operation '" + n + "'");
    out.insert(*f);
  }
  return out;
}

RelFamily rels_named(const Problem& p, const std::vector<std::string>& names) {
  RelFamily out;
  for (const auto& n : names) {
    const Relation* r = p.find_rel(n);
    if (r == nullptr) throw InputError("unknown relation '" + n + "'");
    out.insert(*r);
  }
  return out;
}

PairFamily pairs_named(const Problem& p,
                       const std::vector<std::string>& names) {
  PairFamily out;
  for (const auto& n : names) {
    const RelationPair* q = p.find_pair(n);
    if (q == nullptr) throw InputError("unknown pair '" + n + "'");
    out.insert(*q);
  }
  return out;
}

// The arity range selected by --arity or --max-arity.
std::pair<std::size_t, std::size_t> arity_range(const Options& o) {
  if (o.arity && o.max_arity) {
    throw InputError("give either --arity or --max-arity, not both");
  }
  if (o.arity) return {*o.arity, *o.arity};
  if (o.max_arity) return {0, *o.max_arity};
  throw InputError("this command needs --arity or --max-arity");
}

std::size_t need_arity(const Options& o) {
  if (!o.arity) throw InputError("this command needs --arity");
  return *o.arity;
}

std::size_t need_s(const Options& o) {
  if (!o.s) throw InputError("this command needs --s");
  return *o.s;
}

std::string line_of(const Operation& f) {
  return "op/" + std::to_string(f.arity()) + " " + format_table(f);
}
std::string line_of(const Relation& r) {
  return "rel/" + std::to_string(r.arity()) + " " + format_relation(r);
}
std::string line_of(const RelationPair& p) {
  return "pair/" + std::to_string(p.arity()) + " " + format_pair(p);
}

class Emitter {
 public:
  Emitter(const Options& o, std::string command, std::ostream& out)
      : o_(o), out_(out), doc_{{"command", std::move(command)}} {}

  template <typename T>
  void family(const Family<T>& f) {
    if (o_.json) {
      doc_["count"] = f.size();
      doc_["result"] = to_json(f);
    } else {
      for (const auto& x : f) out_ << line_of(x) << "\n";
    }
  }
  void value(const std::string& key, const json& v, const std::string& text) {
    if (o_.json) {
      doc_[key] = v;
    } else {
      out_ << text << "\n";
    }
  }
  void finish(std::int64_t runtime_ms) {
    if (!o_.json) return;
    if (o_.timing) doc_["runtime_ms"] = runtime_ms;
    out_ << doc_.dump(2) << "\n";
  }

 private:
  const Options& o_;
  std::ostream& out_;
  json doc_;
};

int exit_of(Verdict v) {
  switch (v) {
    case Verdict::pass:
    case Verdict::incomplete:
      return ok;
    case Verdict::fail:
      return check_failed;
    case Verdict::refused:
      return refused;
  }
  return check_failed;
}

void report_text(const Report& r, bool timing, std::ostream& out) {
  out << r.name << ": " << verdict_name(r.verdict) << "\n";
  for (auto it = r.stats.begin(); it != r.stats.end(); ++it) {
    if (it.value().is_primitive()) {
      out << "  " << it.key() << " " << it.value().dump() << "\n";
    }
  }
  if (!r.note.empty()) out << "  note " << r.note << "\n";
  if (!r.counterexample.is_null()) {
    out << "  counterexample " << r.counterexample.dump() << "\n";
  }
  if (timing) out << "  runtime_ms " << r.runtime_ms << "\n";
}

int run_check_command(const Options& o, std::ostream& out) {
  const Caps caps = caps_of(o.caps);
  if (o.k != 2) {
    throw InputError("the predefined checks run on the two-element carrier");
  }
  std::vector<Report> reports;
  if (o.check == "all") {
    reports = run_all(o.seed, caps);
  } else {
    reports.push_back(run_check(o.check, o.seed, caps));
  }
  Verdict overall = Verdict::pass;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) {
      overall = Verdict::fail;
    } else if (r.verdict == Verdict::refused && overall != Verdict::fail) {
      overall = Verdict::refused;
    } else if (r.verdict == Verdict::incomplete && overall == Verdict::pass) {
      overall = Verdict::incomplete;
    }
  }
  if (o.json) {
    if (o.check == "all") {
      json doc = {{"check", "all"},
                  {"verdict", verdict_name(overall)},
                  {"seed", o.seed},
                  {"caps", o.caps},
                  {"reports", json::array()}};
      for (const auto& r : reports) doc["reports"].push_back(to_json(r, o.timing));
      out << doc.dump(2) << "\n";
    } else {
      out << to_json(reports.front(), o.timing).dump(2) << "\n";
    }
  } else {
    for (const auto& r : reports) report_text(r, o.timing, out);
    if (o.check == "all") out << "all: " << verdict_name(overall) << "\n";
  }
  return exit_of(overall);
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
  if (cmd == "check") return run_check_command(o, out);

  const Caps caps = caps_of(o.caps);
  const Problem p = load_problem(o);
  const Carrier carrier = p.carrier;
  const auto start = std::chrono::steady_clock::now();
  Emitter e(o, cmd, out);

  if (cmd == "preserves") {
    const Operation* f = p.find_op(o.op);
    const RelationPair* q = p.find_pair(o.pair);
    if (f == nullptr) throw InputError("unknown operation '" + o.op + "'");
    if (q == nullptr) throw InputError("unknown pair '" + o.pair + "'");
    const bool v = preserves(*f, *q);
    e.value("result", v, v ? "true" : "false");
  } else if (cmd == "polp") {
    const auto [lo, hi] = arity_range(o);
    e.family(polp_upto(carrier, pairs_named(p, o.pairs), lo, hi, caps));
  } else if (cmd == "invp") {
    const auto [lo, hi] = arity_range(o);
    e.family(invp_upto(carrier, ops_named(p, o.ops), lo, hi, caps));
  } else if (cmd == "pol") {
    const auto [lo, hi] = arity_range(o);
    const RelFamily rels = rels_named(p, o.rels);
    OpFamily out_ops;
    for (std::size_t n = lo; n <= hi; ++n) {
      out_ops.insert_all(pol(carrier, rels, n, caps));
    }
    e.family(out_ops);
  } else if (cmd == "inv") {
    const auto [lo, hi] = arity_range(o);
    e.family(inv_upto(carrier, ops_named(p, o.ops), lo, hi, caps));
  } else if (cmd == "gen-semiclone") {
    const auto [lo, hi] = arity_range(o);
    e.family(semiclone_upto(carrier, ops_named(p, o.ops), lo, hi, caps));
  } else if (cmd == "gen-clone") {
    const auto [lo, hi] = arity_range(o);
    e.family(clone_upto(carrier, ops_named(p, o.ops), lo, hi, caps));
  } else if (cmd == "gen-semigroup") {
    e.family(semigroup_generate(ops_named(p, o.ops)));
  } else if (cmd == "sloc") {
    e.family(sloc_ops(carrier, ops_named(p, o.ops), need_s(o), need_arity(o),
                      caps));
  } else if (cmd == "sloc-pairs") {
    e.family(sloc_pairs(carrier, pairs_named(p, o.pairs), need_s(o),
                        need_arity(o), caps));
  } else if (cmd == "enc") {
    const PairFamily all = enc(pairs_named(p, o.pairs));
    e.family(o.arity ? all.arity(*o.arity) : all);
  } else if (cmd == "gamma") {
    const Relation* b = p.find_rel(o.b);
    if (b == nullptr) throw InputError("unknown relation '" + o.b + "'");
    const GammaResult g = gamma_fixpoint(carrier, ops_named(p, o.ops), *b, caps);
    e.value("r", to_json(g.r), "R " + format_relation(g.r));
    e.value("s", to_json(g.s), "S " + format_relation(g.s));
    e.value("steps", g.steps, "steps " + std::to_string(g.steps));
  } else if (cmd == "superpose") {
    std::vector<RelationPair> inputs;
    for (const auto& n : o.pairs) {
      const RelationPair* q = p.find_pair(n);
      if (q == nullptr) throw InputError("unknown pair '" + n + "'");
      inputs.push_back(*q);
    }
    SuperpositionSpec spec;
    spec.mu = o.mu;
    spec.beta = o.beta;
    spec.m = o.beta.size();
    for (const auto& a : o.alphas) {
      std::vector<std::size_t> alpha;
      std::stringstream ss(a);
      std::string part;
      while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        try {
          alpha.push_back(static_cast<std::size_t>(std::stoul(part)));
        } catch (const std::exception&) {
          throw InputError("bad alpha entry '" + part + "'");
        }
      }
      spec.alphas.push_back(std::move(alpha));
    }
    const RelationPair r = general_superposition(carrier, spec, inputs, caps);
    e.value("result", to_json(r), line_of(r));
  } else if (cmd == "rpclone") {
    if (!o.max_arity) throw InputError("rpclone needs --max-arity");
    const PairFamily q = pairs_named(p, o.pairs);
    const std::size_t m_star = *o.max_arity;
    const RpCloneResult res =
        o.intermediate_cap
            ? rpclone_generate(carrier, q, m_star, *o.intermediate_cap, caps)
            : rpclone_stabilised(carrier, q, m_star,
                                 std::max(o.c_start, m_star),
                                 std::max(o.c_max, m_star), caps);
    e.family(res.pairs);
    const std::string meta =
        "# intermediate_cap " + std::to_string(res.intermediate_cap) +
        " changed_by_last_increment " +
        (res.changed_by_last_increment ? "true" : "false") + " size_capped " +
        (res.size_capped ? "true" : "false");
    e.value("generation",
            {{"intermediate_cap", res.intermediate_cap},
             {"changed_by_last_increment", res.changed_by_last_increment},
             {"size_capped", res.size_capped},
             {"generated", res.generated}},
            meta);
  } else if (cmd == "decide-proj") {
    const bool v = decide_projections(carrier, ops_named(p, o.ops), caps);
    e.value("result", v, v ? "true" : "false");
  } else {
    throw InputError("unknown command '" + cmd + "'");
  }
  e.finish(std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
               .count());
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Semiclones, relation pairs and their Galois correspondence"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--problem", o.problem, "problem file, - for stdin");
    c->add_flag("--json", o.json, "emit JSON");
    c->add_flag("--timing", o.timing, "include runtime in the output");
    c->add_option("--seed", o.seed, "seed for sampled checks");
    c->add_option("--caps", o.caps, "default, large or small");
    c->add_option("--k", o.k, "carrier size when no problem file is given");
  };
  auto with_ops = [&](CLI::App* c) {
    c->add_option("--ops", o.ops, "operation names")->delimiter(',');
  };
  auto with_pairs = [&](CLI::App* c) {
    c->add_option("--pairs", o.pairs, "pair names")->delimiter(',');
  };
  auto with_arities = [&](CLI::App* c) {
    c->add_option("--arity", o.arity, "a single arity");
    c->add_option("--max-arity", o.max_arity, "all arities up to this");
  };

  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> specs = {
      {"preserves", "does an operation preserve a pair"},
      {"polp", "operations preserving every given pair"},
      {"invp", "pairs invariant under every given operation"},
      {"pol", "operations preserving every given relation"},
      {"inv", "relations invariant under every given operation"},
      {"gen-semiclone", "slices of the generated semiclone"},
      {"gen-clone", "slices of the generated clone"},
      {"gen-semigroup", "semigroup generated by unary operations"},
      {"sloc", "s-local closure of operations at one arity"},
      {"sloc-pairs", "s-local closure of pairs at one arity"},
      {"enc", "relaxation closure of pairs"},
      {"gamma", "least invariant pair above a relation"},
      {"superpose", "general superposition of pairs"},
      {"rpclone", "generated pair clone up to an arity"},
      {"decide-proj", "whether the clone minus projections is a semiclone"},
      {"check", "run a verification check, or all of them"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& s : specs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    common(c);
    subs.push_back(c);
    const std::string n = s.name;
    if (n == "preserves") {
      c->add_option("--op", o.op, "operation name")->required();
      c->add_option("--pair", o.pair, "pair name")->required();
    }
    if (n == "invp" || n == "inv" || n == "gen-semiclone" || n == "gen-clone" ||
        n == "gen-semigroup" || n == "sloc" || n == "gamma" ||
        n == "decide-proj") {
      with_ops(c);
    }
    if (n == "polp" || n == "sloc-pairs" || n == "enc" || n == "superpose" ||
        n == "rpclone") {
      with_pairs(c);
    }
    if (n == "pol") {
      c->add_option("--rels", o.rels, "relation names")->delimiter(',');
    }
    if (n == "polp" || n == "invp" || n == "pol" || n == "inv" ||
        n == "gen-semiclone" || n == "gen-clone") {
      with_arities(c);
    }
    if (n == "sloc" || n == "sloc-pairs" || n == "enc") {
      c->add_option("--arity", o.arity, "arity");
    }
    if (n == "sloc" || n == "sloc-pairs") c->add_option("--s", o.s, "s");
    if (n == "gamma") {
      c->add_option("--b", o.b, "relation of arity |K|")->required();
    }
    if (n == "superpose") {
      c->add_option("--mu", o.mu, "number of variables")->required();
      c->add_option("--beta", o.beta, "output map, comma separated")
          ->delimiter(',');
      c->add_option("--alpha", o.alphas,
                    "one comma-separated map per pair, repeatable");
    }
    if (n == "rpclone") {
      c->add_option("--max-arity", o.max_arity, "report arities up to this");
      c->add_option("--intermediate-cap", o.intermediate_cap,
                    "fixed intermediate cap");
      c->add_option("--c-start", o.c_start, "first cap when stabilising");
      c->add_option("--c-max", o.c_max, "last cap when stabilising");
    }
    if (n == "check") {
      std::string names = "all";
      for (const auto& x : check_names()) names += ", " + x;
      c->add_option("name", o.check, "one of: " + names)->required();
    }
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }
  std::string cmd;
  for (auto* c : subs) {
    if (c->parsed()) cmd = c->get_name();
  }
  try {
    return dispatch(cmd, o, out);
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return refused;
  } catch (const ParseError& e) {
    err << "problem file: " << e.what() << "\n";
    return input_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace semiclones::cli
