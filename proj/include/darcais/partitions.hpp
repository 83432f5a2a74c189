#pragma once

// Integer partitions, Young-diagram cells and hook multisets.

#include "darcais/exactnum.hpp"

#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace darcais {

/// A partition lambda_1 >= lambda_2 >= ... >= lambda_l > 0. The empty
/// partition is the unique partition of 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0) throw DomainError("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be non-increasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0U);
  }

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned weight() const { return weight_; }
  std::size_t length() const { return parts_.size(); }
  /// lambda_i with 1-based i; 0 past the last part.
  unsigned part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<unsigned> parts_;
  unsigned weight_ = 0;
};

inline std::string to_string(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.parts().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.parts()[i]);
  }
  return out;
}

/// "7,3,2" -> (7,3,2). The empty string is the empty partition.
inline Partition parse_partition(std::string_view text) {
  std::vector<unsigned> parts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (tok.empty()) throw DomainError("empty part in partition '" + std::string(text) + "'");
    BigInt v = parse_integer(tok);
    if (v <= 0 || !v.fits_uint_p()) throw DomainError("partition parts must be positive: '" + std::string(text) + "'");
    parts.push_back(static_cast<unsigned>(v.get_ui()));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size()) throw DomainError("trailing comma in partition '" + std::string(text) + "'");
  }
  return Partition(std::move(parts));
}

/// Lazy enumeration of the partitions of n in decreasing lexicographic order,
/// optionally restricted to parts <= max_part. Single consumer.
class PartitionStream {
 public:
  explicit PartitionStream(unsigned n) : PartitionStream(n, n) {}
  PartitionStream(unsigned n, unsigned max_part) : n_(n), max_part_(max_part) {}

  /// Partitions of n whose largest part is exactly `largest`.
  static PartitionStream with_largest_part(unsigned n, unsigned largest) {
    PartitionStream s(n, largest);
    s.fixed_largest_ = largest;
    return s;
  }

  std::optional<Partition> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      if (!first()) {
        done_ = true;
        return std::nullopt;
      }
    } else if (!advance()) {
      done_ = true;
      return std::nullopt;
    }
    return Partition(cur_);
  }

  class iterator {
   public:
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(PartitionStream* s) : s_(s) { ++*this; }
    const Partition& operator*() const { return *cur_; }
    const Partition* operator->() const { return &*cur_; }
    iterator& operator++() {
      cur_ = s_->next();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return !cur_.has_value(); }

   private:
    PartitionStream* s_ = nullptr;
    std::optional<Partition> cur_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  // Greedy fill of `rest` with parts <= cap, appended to cur_.
  void fill(unsigned rest, unsigned cap) {
    while (rest > 0) {
      unsigned p = std::min(rest, cap);
      cur_.push_back(p);
      rest -= p;
    }
  }

  bool first() {
    cur_.clear();
    if (fixed_largest_) {
      unsigned m = *fixed_largest_;
      if (m == 0 ? n_ != 0 : m > n_) return false;
      if (m == 0) return true;
      cur_.push_back(m);
      fill(n_ - m, m);
      return true;
    }
    if (n_ > 0 && max_part_ == 0) return false;
    fill(n_, max_part_);
    return true;
  }

  bool advance() {
    // Rightmost part greater than one, ignoring a pinned first part.
    std::size_t floor = fixed_largest_ ? 1 : 0;
    std::size_t i = cur_.size();
    unsigned ones = 0;
    while (i > floor && cur_[i - 1] == 1) {
      --i;
      ++ones;
    }
    if (i == floor) return false;
    unsigned v = cur_[i - 1] - 1;
    cur_.resize(i - 1);
    cur_.push_back(v);
    fill(ones + 1, v);
    return true;
  }

  unsigned n_;
  unsigned max_part_;
  std::optional<unsigned> fixed_largest_;
  bool started_ = false;
  bool done_ = false;
  std::vector<unsigned> cur_;
};

inline PartitionStream enumerate_partitions(unsigned n) { return PartitionStream(n); }

/// p(n) by Euler's pentagonal recurrence.
inline BigInt partition_count(unsigned n) {
  std::vector<BigInt> p(n + 1);
  p[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (long k = 1;; ++k) {
      long g1 = k * (3 * k - 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      long g2 = k * (3 * k + 1) / 2;
      bool plus = (k % 2) == 1;
      if (plus) acc += p[m - g1]; else acc -= p[m - g1];
      if (g2 <= static_cast<long>(m)) {
        if (plus) acc += p[m - g2]; else acc -= p[m - g2];
      }
    }
    p[m] = acc;
  }
  return p[n];
}

struct Cell {
  unsigned row;     // 1-based, top to bottom
  unsigned column;  // 1-based, left to right
  unsigned arm;
  unsigned leg;
  unsigned hook() const { return arm + leg + 1; }
};

/// Column lengths of the Young diagram.
inline Partition conjugate(const Partition& p) {
  std::vector<unsigned> cols(p.part(1), 0);
  for (unsigned r : p.parts()) {
    for (unsigned j = 0; j < r; ++j) ++cols[j];
  }
  return Partition(std::move(cols));
}

/// All cells, row by row, left to right.
inline std::vector<Cell> cells(const Partition& p) {
  Partition c = conjugate(p);
  std::vector<Cell> out;
  out.reserve(p.weight());
  for (unsigned i = 1; i <= p.length(); ++i) {
    for (unsigned j = 1; j <= p.part(i); ++j) {
      out.push_back(Cell{i, j, p.part(i) - j, c.part(j) - i});
    }
  }
  return out;
}

enum class HookSelector { kFull, kTrivialLeg, kTrivialArm };

inline std::string_view to_string(HookSelector s) {
  switch (s) {
    case HookSelector::kFull: return "full";
    case HookSelector::kTrivialLeg: return "trivial_leg";
    case HookSelector::kTrivialArm: return "trivial_arm";
  }
  return "?";
}

/// Hook lengths stored as value -> multiplicity.
struct HookMultiset {
  HookSelector selector = HookSelector::kFull;
  std::map<unsigned, unsigned> counts;

  std::size_t size() const {
    std::size_t s = 0;
    for (auto [h, m] : counts) s += m;
    return s;
  }
  std::vector<unsigned> sorted() const {
    std::vector<unsigned> v;
    for (auto [h, m] : counts) v.insert(v.end(), m, h);
    return v;
  }
  friend bool operator==(const HookMultiset& a, const HookMultiset& b) { return a.counts == b.counts; }
};

inline bool selected(const Cell& c, HookSelector s) {
  switch (s) {
    case HookSelector::kFull: return true;
    case HookSelector::kTrivialLeg: return c.leg == 0;
    case HookSelector::kTrivialArm: return c.arm == 0;
  }
  return false;
}

/// Selected hook lengths in reading order (left to right, top to bottom).
inline std::vector<unsigned> hook_list(const Partition& p, HookSelector s) {
  std::vector<unsigned> out;
  for (const Cell& c : cells(p)) {
    if (selected(c, s)) out.push_back(c.hook());
  }
  return out;
}

inline HookMultiset hooks(const Partition& p, HookSelector s) {
  HookMultiset m{s, {}};
  for (const Cell& c : cells(p)) {
    if (selected(c, s)) ++m.counts[c.hook()];
  }
  return m;
}

/// (k_1, ..., k_n) with k_j the number of parts equal to j; n = |lambda|.
class MultiplicityVector {
 public:
  explicit MultiplicityVector(const Partition& p) : counts_(p.weight(), 0) {
    for (unsigned part : p.parts()) ++counts_[part - 1];
  }
  /// k_j for 1 <= j <= n.
  unsigned k(unsigned j) const { return j >= 1 && j <= counts_.size() ? counts_[j - 1] : 0; }
  std::size_t size() const { return counts_.size(); }
  const std::vector<unsigned>& counts() const { return counts_; }

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
  friend auto operator<=>(const MultiplicityVector&, const MultiplicityVector&) = default;

 private:
  std::vector<unsigned> counts_;
};

inline MultiplicityVector multiplicity_vector(const Partition& p) { return MultiplicityVector(p); }

/// Number of standard Young tableaux, n! / prod(hooks).
inline BigInt count_syt(const Partition& p) {
  if (p.weight() == 0) throw DomainError("count_syt requires a partition of n >= 1");
  BigInt prod = 1;
  for (auto [h, m] : hooks(p, HookSelector::kFull).counts) {
    BigInt hp;
    mpz_ui_pow_ui(hp.get_mpz_t(), h, m);
    prod *= hp;
  }
  BigInt nf = factorial(p.weight());
  if (!mpz_divisible_p(nf.get_mpz_t(), prod.get_mpz_t())) {
    throw ConsistencyError("hook product does not divide n! for " + to_string(p));
  }
  return nf / prod;
}

}  // namespace darcais
