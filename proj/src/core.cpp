#include "semiclones/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace semiclones {

Caps Caps::large() {
  Caps c;
  c.max_table_candidates = 1 << 26;
  c.max_pair_candidates = 1 << 26;
  c.max_subsets = 1 << 26;
  c.max_assignments = 1 << 26;
  c.max_generated = 400000;
  return c;
}

Caps Caps::small() {
  Caps c;
  c.max_table_candidates = 1 << 12;
  c.max_pair_candidates = 1 << 12;
  c.max_subsets = 1 << 12;
  c.max_assignments = 1 << 12;
  c.max_generated = 5000;
  return c;
}

void require_within(double count, double cap, const std::string& what) {
  if (count > cap) {
    std::ostringstream os;
    os << "refusing " << what << ": " << count << " candidates exceed cap "
       << cap;
    throw CapExceeded(os.str(), count);
  }
}

Index ipow(Index k, std::size_t e) {
  Index r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (k != 0 && r > (Index{1} << 63) / k) return Index{1} << 63;
    r *= k;
  }
  return r;
}

double dpow(double k, double e) {
  if (e == 0) return 1.0;
  return std::pow(k, e);
}

Carrier::Carrier(std::size_t k) : k_(k) {
  if (k > std::numeric_limits<Value>::max()) {
    throw DomainError("carrier size " + std::to_string(k) + " is too large");
  }
}

EncodedTuple encode_tuple(std::span<const Value> t, Carrier carrier) {
  Index idx = 0;
  for (Value v : t) {
    if (v >= carrier.k()) {
      throw DomainError("tuple entry " + std::to_string(v) +
                        " outside carrier of size " +
                        std::to_string(carrier.k()));
    }
    idx = idx * carrier.k() + v;
  }
  return {t.size(), idx};
}

void decode_into(Index index, std::size_t k, std::span<Value> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Value>(index % k);
    index /= k;
  }
}

Tuple decode_tuple(EncodedTuple t, Carrier carrier) {
  if (t.index >= carrier.tuples(t.arity)) {
    throw DomainError("encoded tuple index out of range");
  }
  Tuple out(t.arity);
  if (t.arity > 0) decode_into(t.index, carrier.k(), out);
  return out;
}

// ---------------------------------------------------------------------------

Bitset::Bitset(Index size) : size_(size), words_((size + 63) / 64, 0) {}

Bitset::Bitset(Index size, std::vector<std::uint64_t> words)
    : size_(size), words_(std::move(words)) {
  if (words_.size() != (size + 63) / 64) {
    throw DomainError("bitset word count does not match its size");
  }
  if (size % 64 != 0 && !words_.empty() &&
      (words_.back() >> (size % 64)) != 0) {
    throw DomainError("bitset has members beyond its size");
  }
}

void Bitset::set_all() {
  std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() = (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

Index Bitset::count() const {
  Index c = 0;
  for (auto w : words_) c += static_cast<Index>(std::popcount(w));
  return c;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool Bitset::subset_of(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

Bitset& Bitset::operator&=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<Index> Bitset::members() const {
  std::vector<Index> out;
  for_each([&](Index i) { out.push_back(i); });
  return out;
}

std::size_t Bitset::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering Bitset::operator<=>(const Bitset& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Operation::Operation(Carrier carrier, std::size_t arity,
                     std::vector<Value> table)
    : carrier_(carrier), arity_(arity), table_(std::move(table)) {
  if (table_.size() != carrier.tuples(arity)) {
    throw DomainError("operation table of length " +
                      std::to_string(table_.size()) + " but arity " +
                      std::to_string(arity) + " needs " +
                      std::to_string(carrier.tuples(arity)));
  }
  for (Value v : table_) {
    if (v >= carrier.k()) {
      throw DomainError("operation value " + std::to_string(v) +
                        " outside carrier");
    }
  }
}

Operation Operation::constant(Carrier carrier, std::size_t arity, Value c) {
  return Operation(carrier, arity,
                   std::vector<Value>(carrier.tuples(arity), c));
}

Value Operation::apply(std::span<const Value> args) const {
  if (args.size() != arity_) throw DomainError("wrong number of arguments");
  return table_[encode_tuple(args, carrier_).index];
}

// ---------------------------------------------------------------------------

Relation::Relation(Carrier carrier, std::size_t arity)
    : carrier_(carrier), arity_(arity), members_(carrier.tuples(arity)) {}

Relation::Relation(Carrier carrier, std::size_t arity, Bitset members)
    : carrier_(carrier), arity_(arity), members_(std::move(members)) {
  if (members_.size() != carrier.tuples(arity)) {
    throw DomainError("relation bitset has the wrong size for its arity");
  }
}

Relation::Relation(Carrier carrier, std::size_t arity,
                   std::initializer_list<Tuple> tuples)
    : Relation(carrier, arity) {
  for (const auto& t : tuples) insert(t);
}

Relation::Relation(Carrier carrier, std::size_t arity,
                   std::span<const Tuple> tuples)
    : Relation(carrier, arity) {
  for (const auto& t : tuples) insert(t);
}

Relation Relation::full(Carrier carrier, std::size_t arity) {
  Relation r(carrier, arity);
  r.members_.set_all();
  return r;
}

bool Relation::contains(std::span<const Value> t) const {
  if (t.size() != arity_) return false;
  for (Value v : t) {
    if (v >= carrier_.k()) return false;
  }
  return members_.test(encode_tuple(t, carrier_).index);
}

void Relation::insert(std::span<const Value> t) {
  if (t.size() != arity_) {
    throw DomainError("tuple of length " + std::to_string(t.size()) +
                      " inserted into relation of arity " +
                      std::to_string(arity_));
  }
  members_.set(encode_tuple(t, carrier_).index);
}

void Relation::check_compatible(const Relation& other) const {
  if (carrier_ != other.carrier_) throw DomainError("carrier mismatch");
  if (arity_ != other.arity_) throw DomainError("relation arity mismatch");
}

bool Relation::subset_of(const Relation& other) const {
  check_compatible(other);
  return members_.subset_of(other.members_);
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  members_.for_each([&](Index i) {
    out.push_back(decode_tuple({arity_, i}, carrier_));
  });
  return out;
}

Relation operator&(Relation a, const Relation& b) {
  a.check_compatible(b);
  a.members_ &= b.members_;
  return a;
}

Relation operator|(Relation a, const Relation& b) {
  a.check_compatible(b);
  a.members_ |= b.members_;
  return a;
}

std::strong_ordering Relation::operator<=>(const Relation& other) const {
  if (auto c = carrier_ <=> other.carrier_; c != 0) return c;
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  return members_ <=> other.members_;
}

// ---------------------------------------------------------------------------

RelationPair::RelationPair(Relation rho, Relation rho_prime)
    : rho_(std::move(rho)), rho_prime_(std::move(rho_prime)) {
  if (rho_.carrier() != rho_prime_.carrier()) {
    throw DomainError("relation pair components over different carriers");
  }
  if (rho_.arity() != rho_prime_.arity()) {
    throw DomainError("relation pair components of different arity");
  }
  if (!rho_prime_.subset_of(rho_)) {
    throw DomainError("rho_prime not a subset of rho");
  }
}

RelationPair RelationPair::identical(Relation rho) {
  Relation copy = rho;
  return RelationPair(std::move(rho), std::move(copy));
}

std::strong_ordering RelationPair::operator<=>(
    const RelationPair& other) const {
  if (auto c = carrier() <=> other.carrier(); c != 0) return c;
  if (auto c = arity() <=> other.arity(); c != 0) return c;
  if (auto c = rho_ <=> other.rho_; c != 0) return c;
  return rho_prime_ <=> other.rho_prime_;
}

// ---------------------------------------------------------------------------

Operation projection(std::size_t n, std::size_t i, Carrier carrier) {
  if (n == 0) throw DomainError("there are no nullary projections");
  if (i >= n) throw DomainError("projection coordinate out of range");
  const Index size = carrier.tuples(n);
  std::vector<Value> table(size);
  Tuple x(n);
  for (Index idx = 0; idx < size; ++idx) {
    decode_into(idx, carrier.k(), x);
    table[idx] = x[i];
  }
  return Operation(carrier, n, std::move(table));
}

bool is_projection(const Operation& f) {
  if (f.arity() == 0) return false;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f == projection(f.arity(), i, f.carrier())) return true;
  }
  return false;
}

OpFamily projections(std::size_t n, Carrier carrier) {
  OpFamily out;
  for (std::size_t i = 0; i < n; ++i) out.insert(projection(n, i, carrier));
  return out;
}

Operation polymer(std::span<const std::size_t> alpha, std::size_t m,
                  const Operation& f) {
  if (alpha.size() != f.arity()) {
    throw DomainError("polymer index map must have one entry per argument");
  }
  for (auto a : alpha) {
    if (a >= m) throw DomainError("polymer index map out of range");
  }
  const Carrier carrier = f.carrier();
  const Index size = carrier.tuples(m);
  std::vector<Value> table(size);
  Tuple x(m);
  Tuple y(alpha.size());
  for (Index idx = 0; idx < size; ++idx) {
    decode_into(idx, carrier.k(), x);
    for (std::size_t j = 0; j < alpha.size(); ++j) y[j] = x[alpha[j]];
    table[idx] = f(encode_tuple(y, carrier).index);
  }
  return Operation(carrier, m, std::move(table));
}

Operation compose(const Operation& f, std::span<const Operation> gs,
                  std::size_t target_arity) {
  if (gs.size() != f.arity()) {
    throw DomainError("composition needs " + std::to_string(f.arity()) +
                      " inner operations, got " + std::to_string(gs.size()));
  }
  for (const auto& g : gs) {
    if (g.arity() != target_arity) {
      throw DomainError("inner operations of a composition must share arity");
    }
    if (g.carrier() != f.carrier()) throw DomainError("carrier mismatch");
  }
  const Carrier carrier = f.carrier();
  const std::size_t k = carrier.k();
  const Index size = carrier.tuples(target_arity);
  std::vector<Value> table(size);
  for (Index idx = 0; idx < size; ++idx) {
    Index inner = 0;
    for (const auto& g : gs) inner = inner * k + g(idx);
    table[idx] = f(inner);
  }
  return Operation(carrier, target_arity, std::move(table));
}

Operation compose(const Operation& f, std::span<const Operation> gs) {
  if (gs.empty()) {
    throw DomainError("nullary composition needs an explicit target arity");
  }
  return compose(f, gs, gs.front().arity());
}

void for_each_operation(Carrier carrier, std::size_t n, const Caps& caps,
                        const std::function<void(const Operation&)>& fn) {
  const double count = dpow(carrier.k(), dpow(carrier.k(), n));
  require_within(count, caps.max_table_candidates,
                 "enumeration of " + std::to_string(n) + "-ary operations");
  const Index len = carrier.tuples(n);
  const std::size_t k = carrier.k();
  if (k == 0 && len > 0) return;  // no maps into the empty set
  std::vector<Value> table(len, 0);
  while (true) {
    fn(Operation(carrier, n, table));
    // Increment with the last entry least significant.
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (++table[i] < k) break;
      table[i] = 0;
      if (i == 0) return;
    }
    if (len == 0) return;
  }
}

OpFamily all_operations(Carrier carrier, std::size_t n, const Caps& caps) {
  OpFamily out;
  for_each_operation(carrier, n, caps,
                     [&](const Operation& f) { out.insert(f); });
  return out;
}

Relation image(const Operation& f, const Relation& rho) {
  if (f.carrier() != rho.carrier()) throw DomainError("carrier mismatch");
  const Carrier carrier = rho.carrier();
  const std::size_t k = carrier.k();
  const std::size_t n = f.arity();
  const std::size_t m = rho.arity();
  Relation out(carrier, m);
  const std::vector<Tuple> rows = rho.tuples();
  if (rows.empty() && n > 0) return out;
  // Odometer over ρ^n; each choice is a matrix with columns from ρ.
  std::vector<std::size_t> pick(n, 0);
  Tuple result(m);
  while (true) {
    for (std::size_t i = 0; i < m; ++i) {
      Index args = 0;
      for (std::size_t j = 0; j < n; ++j) args = args * k + rows[pick[j]][i];
      result[i] = f(args);
    }
    out.insert(result);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++pick[j] < rows.size()) break;
      pick[j] = 0;
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

// ---------------------------------------------------------------------------

bool pair_leq(const RelationPair& p, const RelationPair& q) {
  if (p.arity() != q.arity()) throw DomainError("pair arity mismatch");
  return p.rho().subset_of(q.rho()) && p.rho_prime().subset_of(q.rho_prime());
}

bool pair_qleq(const RelationPair& p, const RelationPair& q) {
  if (p.arity() != q.arity()) throw DomainError("pair arity mismatch");
  return p.rho().subset_of(q.rho());
}

void for_each_subset(const Bitset& mask,
                     const std::function<void(const Bitset&)>& fn) {
  const std::vector<Index> bits = mask.members();
  if (bits.size() >= 63) throw CapExceeded("subset enumeration too large", 0);
  const std::uint64_t total = std::uint64_t{1} << bits.size();
  for (std::uint64_t s = 0; s < total; ++s) {
    Bitset cur(mask.size());
    for (std::size_t b = 0; b < bits.size(); ++b) {
      if ((s >> b) & 1u) cur.set(bits[b]);
    }
    fn(cur);
  }
}

PairFamily relaxations_of(const RelationPair& p) {
  PairFamily out;
  const Carrier carrier = p.carrier();
  const std::size_t m = p.arity();
  // σ ranges over ρ' ∪ S for S ⊆ ρ∖ρ', σ' over ρ' ∪ T for T ⊆ S.
  Bitset free = p.rho().members();
  p.rho_prime().members().for_each([&](Index i) { free.reset(i); });
  for_each_subset(free, [&](const Bitset& s) {
    for_each_subset(s, [&](const Bitset& t) {
      Bitset sigma = p.rho_prime().members();
      sigma |= s;
      Bitset sigma_prime = p.rho_prime().members();
      sigma_prime |= t;
      out.insert(RelationPair(Relation(carrier, m, std::move(sigma)),
                              Relation(carrier, m, std::move(sigma_prime))));
    });
  });
  return out;
}

PairFamily enc(const PairFamily& q) {
  PairFamily out;
  for (const auto& p : q) {
    if (out.contains(p)) continue;
    out.insert_all(relaxations_of(p));
  }
  return out;
}

void for_each_pair(Carrier carrier, std::size_t m, const Caps& caps,
                   const std::function<void(const RelationPair&)>& fn) {
  const Index n = carrier.tuples(m);
  require_within(dpow(3, static_cast<double>(n)), caps.max_pair_candidates,
                 "enumeration of " + std::to_string(m) + "-ary pairs");
  // Each tuple is outside, in ρ only, or in both; odometer over {0,1,2}^n.
  std::vector<std::uint8_t> state(n, 0);
  while (true) {
    Relation rho(carrier, m);
    Relation rho_prime(carrier, m);
    for (Index i = 0; i < n; ++i) {
      if (state[i] >= 1) rho.insert(i);
      if (state[i] == 2) rho_prime.insert(i);
    }
    fn(RelationPair(std::move(rho), std::move(rho_prime)));
    Index i = n;
    while (i > 0) {
      --i;
      if (++state[i] < 3) break;
      state[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

PairFamily all_pairs(Carrier carrier, std::size_t m, const Caps& caps) {
  PairFamily out;
  for_each_pair(carrier, m, caps,
                [&](const RelationPair& p) { out.insert(p); });
  return out;
}

void for_each_relation(Carrier carrier, std::size_t m, const Caps& caps,
                       const std::function<void(const Relation&)>& fn) {
  const Index n = carrier.tuples(m);
  require_within(dpow(2, static_cast<double>(n)), caps.max_pair_candidates,
                 "enumeration of " + std::to_string(m) + "-ary relations");
  for_each_subset(Relation::full(carrier, m).members(),
                  [&](const Bitset& b) { fn(Relation(carrier, m, b)); });
}

}  // namespace semiclones
