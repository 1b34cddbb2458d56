#include "semiclones/format.hpp"

#include <cctype>
#include <map>

namespace semiclones {

namespace {

void require_digit_carrier(Carrier carrier) {
  if (carrier.k() > 10) {
    throw DomainError("text forms need a carrier of at most 10 elements");
  }
}

std::string tuple_text(Index code, std::size_t arity, Carrier carrier) {
  if (arity == 0) return "eps";
  std::string out;
  for (Value v : decode_tuple({arity, code}, carrier)) {
    out.push_back(static_cast<char>('0' + v));
  }
  return out;
}

// Digit string of the given length into a tuple code; returns the offending
// position on failure.
std::optional<std::size_t> digits_to_code(Carrier carrier,
                                          std::string_view digits,
                                          Index& code) {
  code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (c < '0' || c > '9' ||
        static_cast<std::size_t>(c - '0') >= carrier.k()) {
      return i;
    }
    code = code * carrier.k() + static_cast<Index>(c - '0');
  }
  return std::nullopt;
}

}  // namespace

std::string format_table(const Operation& f) {
  require_digit_carrier(f.carrier());
  std::string out;
  out.reserve(f.table().size());
  for (Value v : f.table()) out.push_back(static_cast<char>('0' + v));
  return out;
}

std::string format_relation(const Relation& r) {
  require_digit_carrier(r.carrier());
  std::string out = "{";
  bool first = true;
  r.members().for_each([&](Index i) {
    if (!first) out += ',';
    first = false;
    out += tuple_text(i, r.arity(), r.carrier());
  });
  return out + "}";
}

std::string format_pair(const RelationPair& p) {
  return "(" + format_relation(p.rho()) + ", " + format_relation(p.rho_prime()) +
         ")";
}

nlohmann::json to_json(const Operation& f) {
  return {{"arity", f.arity()}, {"table", format_table(f)}};
}

nlohmann::json to_json(const Relation& r) {
  require_digit_carrier(r.carrier());
  nlohmann::json tuples = nlohmann::json::array();
  r.members().for_each([&](Index i) {
    tuples.push_back(tuple_text(i, r.arity(), r.carrier()));
  });
  return {{"arity", r.arity()}, {"tuples", tuples}};
}

nlohmann::json to_json(const RelationPair& p) {
  return {{"arity", p.arity()},
          {"rho", to_json(p.rho())["tuples"]},
          {"rho_prime", to_json(p.rho_prime())["tuples"]}};
}

nlohmann::json to_json(const OpFamily& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : f) out.push_back(to_json(g));
  return out;
}

nlohmann::json to_json(const RelFamily& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : f) out.push_back(to_json(r));
  return out;
}

nlohmann::json to_json(const PairFamily& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : f) out.push_back(to_json(p));
  return out;
}

namespace {

Relation relation_from_tuples(Carrier carrier, std::size_t arity,
                              const nlohmann::json& tuples) {
  std::string text = "{";
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (i > 0) text += ',';
    text += tuples.at(i).get<std::string>();
  }
  return parse_relation(carrier, arity, text + "}");
}

}  // namespace

Operation operation_from_json(Carrier carrier, const nlohmann::json& j) {
  return parse_table(carrier, j.at("arity").get<std::size_t>(),
                     j.at("table").get<std::string>());
}

Relation relation_from_json(Carrier carrier, const nlohmann::json& j) {
  return relation_from_tuples(carrier, j.at("arity").get<std::size_t>(),
                              j.at("tuples"));
}

RelationPair pair_from_json(Carrier carrier, const nlohmann::json& j) {
  const auto arity = j.at("arity").get<std::size_t>();
  return RelationPair(relation_from_tuples(carrier, arity, j.at("rho")),
                      relation_from_tuples(carrier, arity, j.at("rho_prime")));
}

Operation parse_table(Carrier carrier, std::size_t arity,
                      std::string_view digits) {
  require_digit_carrier(carrier);
  const Index len = carrier.tuples(arity);
  if (digits.size() != len) {
    throw DomainError("table of a " + std::to_string(arity) +
                      "-ary operation needs " + std::to_string(len) +
                      " digits, got " + std::to_string(digits.size()));
  }
  std::vector<Value> table;
  table.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9' ||
        static_cast<std::size_t>(c - '0') >= carrier.k()) {
      throw DomainError(std::string("value '") + c + "' outside the carrier");
    }
    table.push_back(static_cast<Value>(c - '0'));
  }
  return Operation(carrier, arity, std::move(table));
}

Relation parse_relation(Carrier carrier, std::size_t arity,
                        std::string_view text) {
  require_digit_carrier(carrier);
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) body.push_back(c);
  }
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
    throw DomainError("relation must be written as {t,...}");
  }
  Relation r(carrier, arity);
  std::string_view inner(body);
  inner = inner.substr(1, inner.size() - 2);
  if (inner.empty()) return r;
  std::size_t start = 0;
  while (start <= inner.size()) {
    std::size_t end = inner.find(',', start);
    if (end == std::string_view::npos) end = inner.size();
    const std::string_view tok = inner.substr(start, end - start);
    if (arity == 0) {
      if (tok != "eps") throw DomainError("the empty tuple is written eps");
      r.insert(Index{0});
    } else {
      if (tok.size() != arity) {
        throw DomainError("tuple '" + std::string(tok) + "' is not of arity " +
                          std::to_string(arity));
      }
      Index code = 0;
      if (digits_to_code(carrier, tok, code)) {
        throw DomainError("tuple '" + std::string(tok) +
                          "' has a value outside the carrier");
      }
      r.insert(code);
    }
    start = end + 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Problem files.

namespace {

template <typename T>
const T* find_named(const std::vector<std::pair<std::string, T>>& items,
                    std::string_view name) {
  for (const auto& [n, v] : items) {
    if (n == name) return &v;
  }
  return nullptr;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_no_, pos_ + 1, what);
  }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw ParseError(line_no_, pos + 1, what);
  }

  void skip_ws() {
    while (pos_ < line_.size() &&
           std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }
  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }
  std::size_t pos() const { return pos_; }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < line_.size() &&
        (std::isalpha(static_cast<unsigned char>(line_[pos_])) ||
         line_[pos_] == '_')) {
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
              line_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("expected a name");
    return std::string(line_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(line_[pos_] - '0');
      if (v > 1000000) fail_at(start, "number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return v;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a digit string");
    return std::string(line_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= line_.size() || line_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // {t,...} with eps for the empty tuple.
  Relation relation(Carrier carrier, std::size_t arity) {
    expect('{');
    Relation r(carrier, arity);
    if (accept('}')) return r;
    while (true) {
      skip_ws();
      const std::size_t start = pos_;
      if (arity == 0) {
        const std::string w = word();
        if (w != "eps") fail_at(start, "the empty tuple is written eps");
        r.insert(Index{0});
      } else {
        const std::string d = digits();
        if (d.size() != arity) {
          fail_at(start, "tuple '" + d + "' is not of arity " +
                             std::to_string(arity));
        }
        Index code = 0;
        if (auto bad = digits_to_code(carrier, d, code)) {
          fail_at(start + *bad, "value outside the carrier");
        }
        r.insert(code);
      }
      if (accept('}')) return r;
      expect(',');
    }
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

const Operation* Problem::find_op(std::string_view name) const {
  return find_named(ops, name);
}
const Relation* Problem::find_rel(std::string_view name) const {
  return find_named(rels, name);
}
const RelationPair* Problem::find_pair(std::string_view name) const {
  return find_named(pairs, name);
}

Problem parse_problem(std::string_view text) {
  Problem out;
  bool have_domain = false;
  std::map<std::string, char> names;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineParser lp(line, line_no);
    if (lp.at_end()) continue;
    const std::size_t kw_pos = lp.pos();
    const std::string kw = lp.word();
    auto declare = [&](const std::string& name, std::size_t pos, char kind) {
      if (!names.emplace(name, kind).second) {
        lp.fail_at(pos, "name '" + name + "' already declared");
      }
    };

    if (kw == "domain") {
      if (have_domain) lp.fail_at(kw_pos, "domain declared twice");
      const std::size_t k_pos = lp.pos();
      const std::size_t k = lp.number();
      if (k > 10) lp.fail_at(k_pos, "domain size must be at most 10");
      out.carrier = Carrier(k);
      have_domain = true;
    } else if (kw == "op" || kw == "rel") {
      if (!have_domain) lp.fail_at(kw_pos, "domain must be declared first");
      lp.skip_ws();
      const std::size_t name_pos = lp.pos();
      const std::string name = lp.word();
      lp.expect('/');
      const std::size_t arity_pos = lp.pos();
      const std::size_t arity = lp.number();
      lp.expect('=');
      if (kw == "op") {
        lp.skip_ws();
        const std::size_t table_pos = lp.pos();
        const double len = dpow(static_cast<double>(out.carrier.k()),
                                static_cast<double>(arity));
        if (len > (1 << 20)) lp.fail_at(arity_pos, "arity too large");
        const std::string d = len == 0 ? std::string() : lp.digits();
        if (d.size() != static_cast<std::size_t>(len)) {
          lp.fail_at(table_pos, "table needs " +
                                    std::to_string(static_cast<Index>(len)) +
                                    " digits, got " + std::to_string(d.size()));
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (static_cast<std::size_t>(d[i] - '0') >= out.carrier.k()) {
            lp.fail_at(table_pos + i, "value outside the carrier");
          }
        }
        declare(name, name_pos, 'o');
        out.ops.emplace_back(name, parse_table(out.carrier, arity, d));
      } else {
        if (dpow(static_cast<double>(out.carrier.k()),
                 static_cast<double>(arity)) > (1 << 20)) {
          lp.fail_at(arity_pos, "arity too large");
        }
        Relation r = lp.relation(out.carrier, arity);
        declare(name, name_pos, 'r');
        out.rels.emplace_back(name, std::move(r));
      }
    } else if (kw == "pair") {
      if (!have_domain) lp.fail_at(kw_pos, "domain must be declared first");
      lp.skip_ws();
      const std::size_t name_pos = lp.pos();
      const std::string name = lp.word();
      lp.expect('=');
      lp.expect('(');
      lp.skip_ws();
      const std::size_t a_pos = lp.pos();
      const std::string a = lp.word();
      lp.expect(',');
      lp.skip_ws();
      const std::size_t b_pos = lp.pos();
      const std::string b = lp.word();
      lp.expect(')');
      const Relation* ra = out.find_rel(a);
      const Relation* rb = out.find_rel(b);
      if (ra == nullptr) lp.fail_at(a_pos, "unknown relation '" + a + "'");
      if (rb == nullptr) lp.fail_at(b_pos, "unknown relation '" + b + "'");
      if (ra->arity() != rb->arity()) {
        lp.fail_at(b_pos, "components of different arity");
      }
      if (!rb->subset_of(*ra)) {
        lp.fail_at(b_pos, "'" + b + "' is not a subset of '" + a + "'");
      }
      declare(name, name_pos, 'p');
      out.pair_names.emplace_back(a, b);
      out.pairs.emplace_back(name, RelationPair(*ra, *rb));
    } else {
      lp.fail_at(kw_pos, "unknown declaration '" + kw + "'");
    }
    if (!lp.at_end()) lp.fail("unexpected trailing input");
  }
  if (!have_domain) throw ParseError(line_no, 1, "missing domain declaration");
  return out;
}

std::string serialise_problem(const Problem& p) {
  std::string out = "domain " + std::to_string(p.carrier.k()) + "\n";
  for (const auto& [name, f] : p.ops) {
    out += "op " + name + "/" + std::to_string(f.arity()) + " = " +
           format_table(f) + "\n";
  }
  for (const auto& [name, r] : p.rels) {
    out += "rel " + name + "/" + std::to_string(r.arity()) + " = " +
           format_relation(r) + "\n";
  }
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    out += "pair " + p.pairs[i].first + " = (" + p.pair_names[i].first + ", " +
           p.pair_names[i].second + ")\n";
  }
  return out;
}

}  // namespace semiclones
