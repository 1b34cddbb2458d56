// Core substrate: carriers, dense tuple encodings, operations, relations,
// relation pairs and their arity-stratified families.
//
// Every object carries the cardinality k of its carrier A = {0, ..., k-1}.
// Tuples of arity m are encoded base k with position 0 most significant, so
// an m-ary relation is a bitset over [0, k^m) and an n-ary operation is a
// value table of length k^n indexed by the encoded argument tuple.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiclones {

using Value = std::uint8_t;
using Index = std::uint64_t;

// Raised when an argument violates a structural invariant (value out of
// range, arity mismatch, ρ' not contained in ρ, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exhaustive enumeration would exceed a configured cap.  The
// estimate is the number of candidates that would have been visited.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what, double estimate)
      : std::runtime_error(std::move(what)), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Enumeration limits.  Every brute-force routine checks its candidate count
// against one of these before starting.
struct Caps {
  double max_table_candidates = 1 << 20;  // k^(k^n) operation tables
  double max_pair_candidates = 1 << 20;   // 3^(k^m) relation pairs
  double max_subsets = 1 << 20;           // C(k^n, s) interpolation sets
  double max_assignments = 1 << 22;       // k^|mu|, k^|K| index assignments
  std::size_t max_generated = 60000;      // pairs held by clone generation

  static Caps defaults() { return {}; }
  static Caps large();
  static Caps small();
};

// Throws CapExceeded if `count` exceeds `cap`.
void require_within(double count, double cap, const std::string& what);

// k^e with saturation at 2^63; exact for everything the caps admit.
Index ipow(Index k, std::size_t e);
// Same as a double, for cost estimates that may overflow 64 bits.
double dpow(double k, double e);

class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::size_t k);
  std::size_t k() const noexcept { return k_; }
  Index tuples(std::size_t arity) const { return ipow(k_, arity); }
  auto operator<=>(const Carrier&) const = default;

 private:
  std::size_t k_ = 0;
};

struct EncodedTuple {
  std::size_t arity = 0;
  Index index = 0;
  auto operator<=>(const EncodedTuple&) const = default;
};

using Tuple = std::vector<Value>;

EncodedTuple encode_tuple(std::span<const Value> t, Carrier carrier);
Tuple decode_tuple(EncodedTuple t, Carrier carrier);
// Decodes index into `out` (which must have the tuple's arity).
void decode_into(Index index, std::size_t k, std::span<Value> out);

// ---------------------------------------------------------------------------
// Bitset over [0, size).  Ordered as the unsigned integer sum of 2^i over the
// members, which is the canonical "relation encoding" used for sorting.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(Index size);
  // Takes ceil(size / 64) words; bits at or above size must be clear.
  Bitset(Index size, std::vector<std::uint64_t> words);

  Index size() const noexcept { return size_; }
  bool test(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(Index i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(Index i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void set_all();

  Index count() const;
  bool none() const;
  bool subset_of(const Bitset& other) const;
  Bitset& operator&=(const Bitset& other);
  Bitset& operator|=(const Bitset& other);
  std::vector<Index> members() const;
  // Calls fn(i) for every member i in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int b = __builtin_ctzll(bits);
        fn(static_cast<Index>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  bool operator==(const Bitset& other) const = default;
  std::strong_ordering operator<=>(const Bitset& other) const;

 private:
  Index size_ = 0;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
class Operation {
 public:
  Operation() = default;
  // Validates table length k^arity and value range.
  Operation(Carrier carrier, std::size_t arity, std::vector<Value> table);

  static Operation constant(Carrier carrier, std::size_t arity, Value c);

  Carrier carrier() const noexcept { return carrier_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Value>& table() const noexcept { return table_; }
  Value operator()(Index encoded_args) const { return table_[encoded_args]; }
  Value apply(std::span<const Value> args) const;

  auto operator<=>(const Operation&) const = default;
  bool operator==(const Operation&) const = default;

 private:
  Carrier carrier_;
  std::size_t arity_ = 0;
  std::vector<Value> table_;
};

class Relation {
 public:
  Relation() = default;
  Relation(Carrier carrier, std::size_t arity);  // empty
  Relation(Carrier carrier, std::size_t arity, Bitset members);
  Relation(Carrier carrier, std::size_t arity,
           std::initializer_list<Tuple> tuples);
  Relation(Carrier carrier, std::size_t arity, std::span<const Tuple> tuples);

  static Relation full(Carrier carrier, std::size_t arity);

  Carrier carrier() const noexcept { return carrier_; }
  std::size_t arity() const noexcept { return arity_; }
  const Bitset& members() const noexcept { return members_; }
  Index size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(Index encoded) const { return members_.test(encoded); }
  bool contains(std::span<const Value> t) const;
  void insert(Index encoded) { members_.set(encoded); }
  void insert(std::span<const Value> t);
  bool subset_of(const Relation& other) const;
  std::vector<Tuple> tuples() const;

  friend Relation operator&(Relation a, const Relation& b);
  friend Relation operator|(Relation a, const Relation& b);

  bool operator==(const Relation&) const = default;
  std::strong_ordering operator<=>(const Relation& other) const;

 private:
  void check_compatible(const Relation& other) const;

  Carrier carrier_;
  std::size_t arity_ = 0;
  Bitset members_;
};

class RelationPair {
 public:
  RelationPair() = default;
  // Throws DomainError unless both components share carrier and arity and
  // rho_prime ⊆ rho.
  RelationPair(Relation rho, Relation rho_prime);
  // The identical pair (ρ, ρ).
  static RelationPair identical(Relation rho);

  Carrier carrier() const noexcept { return rho_.carrier(); }
  std::size_t arity() const noexcept { return rho_.arity(); }
  const Relation& rho() const noexcept { return rho_; }
  const Relation& rho_prime() const noexcept { return rho_prime_; }
  bool is_identical() const { return rho_ == rho_prime_; }

  bool operator==(const RelationPair&) const = default;
  std::strong_ordering operator<=>(const RelationPair& other) const;

 private:
  Relation rho_;
  Relation rho_prime_;
};

// ---------------------------------------------------------------------------
// Deduplicated family with deterministic order (arity, then the element's
// own order).  Set equality is list equality.
template <typename T>
class Family {
 public:
  using const_iterator = typename std::set<T>::const_iterator;

  Family() = default;
  Family(std::initializer_list<T> items) : items_(items) {}
  template <typename It>
  Family(It first, It last) : items_(first, last) {}

  bool insert(T item) { return items_.insert(std::move(item)).second; }
  void insert_all(const Family& other) {
    items_.insert(other.begin(), other.end());
  }
  bool contains(const T& item) const { return items_.count(item) != 0; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  // The arity-n slice.
  Family arity(std::size_t n) const {
    Family out;
    for (const auto& x : items_) {
      if (x.arity() == n) out.items_.insert(out.items_.end(), x);
    }
    return out;
  }
  // Elements with arity in [lo, hi].
  Family arities(std::size_t lo, std::size_t hi) const {
    Family out;
    for (const auto& x : items_) {
      if (x.arity() >= lo && x.arity() <= hi) {
        out.items_.insert(out.items_.end(), x);
      }
    }
    return out;
  }
  bool subset_of(const Family& other) const {
    for (const auto& x : items_) {
      if (!other.contains(x)) return false;
    }
    return true;
  }
  std::vector<T> to_vector() const { return {items_.begin(), items_.end()}; }

  friend Family operator|(Family a, const Family& b) {
    a.insert_all(b);
    return a;
  }
  friend Family operator&(const Family& a, const Family& b) {
    Family out;
    for (const auto& x : a) {
      if (b.contains(x)) out.items_.insert(out.items_.end(), x);
    }
    return out;
  }
  friend Family operator-(const Family& a, const Family& b) {
    Family out;
    for (const auto& x : a) {
      if (!b.contains(x)) out.items_.insert(out.items_.end(), x);
    }
    return out;
  }
  bool operator==(const Family&) const = default;

 private:
  std::set<T> items_;
};

using OpFamily = Family<Operation>;
using PairFamily = Family<RelationPair>;
using RelFamily = Family<Relation>;

// ---------------------------------------------------------------------------
// Operations on operations.

// e^n_i.  Throws for n = 0 (there are no nullary projections) or i >= n.
Operation projection(std::size_t n, std::size_t i, Carrier carrier);
bool is_projection(const Operation& f);
// All projections of arity n, i.e. Triv^(n).
OpFamily projections(std::size_t n, Carrier carrier);

// The m-ary polymer x ↦ f(x∘α); alpha has f.arity() entries, each < m.
Operation polymer(std::span<const std::size_t> alpha, std::size_t m,
                  const Operation& f);

// f∘(g_0, ..., g_{n-1}); all gs must have arity target_arity.
Operation compose(const Operation& f, std::span<const Operation> gs,
                  std::size_t target_arity);
// As above with the target arity read off gs (which must be non-empty).
Operation compose(const Operation& f, std::span<const Operation> gs);

// Every operation of arity n on the carrier, in table-lexicographic order.
// Visits k^(k^n) tables; checks the table cap.
void for_each_operation(Carrier carrier, std::size_t n, const Caps& caps,
                        const std::function<void(const Operation&)>& fn);
OpFamily all_operations(Carrier carrier, std::size_t n,
                        const Caps& caps = Caps::defaults());

// Row-wise image {f∘r : r ∈ ρ^n} of an m-ary relation under f.
Relation image(const Operation& f, const Relation& rho);

// ---------------------------------------------------------------------------
// Orders and relaxation.

bool pair_leq(const RelationPair& p, const RelationPair& q);
bool pair_qleq(const RelationPair& p, const RelationPair& q);

PairFamily relaxations_of(const RelationPair& p);
PairFamily enc(const PairFamily& q);

// Calls fn(σ, σ') for every m-ary relation pair; visits 3^(k^m) pairs.
void for_each_pair(Carrier carrier, std::size_t m, const Caps& caps,
                   const std::function<void(const RelationPair&)>& fn);
PairFamily all_pairs(Carrier carrier, std::size_t m,
                     const Caps& caps = Caps::defaults());
// Every m-ary relation; visits 2^(k^m) relations.
void for_each_relation(Carrier carrier, std::size_t m, const Caps& caps,
                       const std::function<void(const Relation&)>& fn);

// Every submask of `mask` (including ∅ and mask itself), ascending.
void for_each_subset(const Bitset& mask,
                     const std::function<void(const Bitset&)>& fn);

}  // namespace semiclones

template <>
struct std::hash<semiclones::Bitset> {
  std::size_t operator()(const semiclones::Bitset& b) const noexcept {
    return b.hash();
  }
};
