#pragma once

// Exact root certification for univariate rational polynomials.
//
// Every routine works on the positive primitive integer multiple of its
// input, which has the same roots and the same signs at every point.

#include "darcais/exactnum.hpp"
#include "darcais/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace darcais {

/// p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each member replaced by
/// its primitive part (a positive multiple), ending at the last nonzero
/// remainder.
class SturmChain {
 public:
  explicit SturmChain(const ExactPoly& p) : SturmChain(primitive_integer(p)) {}

  explicit SturmChain(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
    chain_.push_back(primitive_part(p));
    IntPoly d = derivative(chain_.back());
    if (d.is_zero()) return;
    chain_.push_back(primitive_part(d));
    for (;;) {
      const IntPoly& a = chain_[chain_.size() - 2];
      const IntPoly& b = chain_.back();
      IntPoly r = pseudo_remainder(a, b);
      if (r.is_zero()) break;
      // prem = lc(b)^delta * rem; the chain needs a positive multiple of -rem.
      std::size_t delta = a.size() - b.size() + 1;
      bool keep_sign = sgn(b.leading()) < 0 && (delta % 2 == 1);
      chain_.push_back(primitive_part(keep_sign ? r : -r));
    }
  }

  const std::vector<IntPoly>& members() const { return chain_; }
  const IntPoly& poly() const { return chain_.front(); }

  unsigned variations_at(const BigRat& x) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) s.push_back(sign_at(q, x));
    return count_variations(s);
  }

  /// Sign pattern as x -> +infinity (positive) or -infinity (negative).
  unsigned variations_at_infinity(bool positive) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) {
      int lead = sgn(q.leading());
      bool odd = (q.size() - 1) % 2 == 1;
      s.push_back(!positive && odd ? -lead : lead);
    }
    return count_variations(s);
  }

 private:
  static unsigned count_variations(const std::vector<int>& s) {
    unsigned v = 0;
    int last = 0;
    for (int x : s) {
      if (x == 0) continue;
      if (last != 0 && x != last) ++v;
      last = x;
    }
    return v;
  }

  std::vector<IntPoly> chain_;
};

/// Number of distinct real roots in (lo, hi]; nullopt bounds are -inf/+inf.
/// Finite bounds must not be roots of p.
inline unsigned count_real_roots(const SturmChain& chain, const std::optional<BigRat>& lo,
                                 const std::optional<BigRat>& hi) {
  if (lo && hi && *lo >= *hi) throw DomainError("count_real_roots: empty interval");
  for (const auto* e : {&lo, &hi}) {
    if (*e && sign_at(chain.poly(), **e) == 0) {
      throw DomainError("count_real_roots: endpoint " + to_string(**e) +
                        " is a root; retry with the endpoint moved by 1/2^k");
    }
  }
  unsigned va = lo ? chain.variations_at(*lo) : chain.variations_at_infinity(false);
  unsigned vb = hi ? chain.variations_at(*hi) : chain.variations_at_infinity(true);
  return va - vb;
}

inline unsigned count_real_roots(const ExactPoly& p, const std::optional<BigRat>& lo = std::nullopt,
                                 const std::optional<BigRat>& hi = std::nullopt) {
  return count_real_roots(SturmChain(p), lo, hi);
}

namespace detail {

// Degree of gcd(f mod prime, f' mod prime) over GF(prime); -1 when f
// vanishes mod prime.
inline long modular_gcd_degree(const IntPoly& f, std::uint64_t prime) {
  auto reduce = [prime](const IntPoly& p) {
    std::vector<std::uint64_t> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = mpz_fdiv_ui(p.coeffs()[i].get_mpz_t(), prime);
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  auto inverse = [prime](std::uint64_t a) {
    std::uint64_t r = 1, e = prime - 2;
    while (e) {
      if (e & 1) r = r * a % prime;
      a = a * a % prime;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::uint64_t> a = reduce(f);
  std::vector<std::uint64_t> b = reduce(derivative(f));
  if (a.empty()) return -1;
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = inverse(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = a.back() * inv % prime;
      std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[off + j] = (a[off + j] + prime - q * b[j] % prime) % prime;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<long>(a.size()) - 1;
}

}  // namespace detail

/// True iff gcd(p, p') is constant. A prime not dividing the leading
/// coefficient for which gcd(p, p') mod prime is constant certifies this
/// directly; otherwise the exact primitive remainder sequence decides.
inline bool is_square_free(const ExactPoly& p) {
  if (p.is_zero()) throw DomainError("is_square_free: zero polynomial");
  IntPoly ip = primitive_integer(p);
  IntPoly d = derivative(ip);
  if (d.is_zero()) return true;
  for (std::uint64_t prime : {2147483647ULL, 2147483629ULL, 2147483587ULL}) {
    if (mpz_fdiv_ui(ip.leading().get_mpz_t(), prime) == 0) continue;
    if (detail::modular_gcd_degree(ip, prime) == 0) return true;
  }
  return primitive_gcd(ip, d).size() == 1;
}

/// p / gcd(p, p'): same distinct roots, all simple.
inline IntPoly square_free_part(const IntPoly& p) {
  if (p.is_zero()) throw DomainError("square-free part of the zero polynomial");
  IntPoly d = derivative(p);
  if (d.is_zero()) return primitive_part(p);
  IntPoly g = primitive_gcd(p, d);
  if (g.size() == 1) return primitive_part(p);
  auto q = divide_exact(primitive_part(p), g);
  if (!q) throw ConsistencyError("gcd does not divide its argument");
  return *q;
}

/// An interval (lower, upper] holding `count` distinct real roots; neither
/// endpoint is a root.
struct RootInterval {
  BigRat lower;
  BigRat upper;
  unsigned count = 1;

  friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// All real roots of p lie strictly inside (-B, B) for the returned power of
/// two B (Cauchy's bound 1 + max |a_i / a_d|).
inline BigInt root_bound(const IntPoly& p) {
  BigRat m = 0;
  const BigRat lead = abs(p.leading());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max<BigRat>(m, BigRat(abs(p.coeffs()[i])) / lead);
  BigRat cauchy = m + 1;
  BigInt b = 1;
  while (BigRat(b) <= cauchy) b *= 2;
  return b;
}

namespace detail {

// A point strictly inside (lo, hi) that is not a root, preferring the
// midpoint.
inline BigRat split_point(const IntPoly& p, const BigRat& lo, const BigRat& hi) {
  BigRat width = hi - lo;
  BigRat mid = (lo + hi) / 2;
  if (sign_at(p, mid) != 0) return mid;
  BigRat step = width / 8;
  for (;;) {
    for (const BigRat& c : {BigRat(mid + step), BigRat(mid - step)}) {
      if (sign_at(p, c) != 0) return c;
    }
    step /= 2;
  }
}

}  // namespace detail

/// Shrinks an isolating interval (count 1) until its width is at most
/// `width`.
inline RootInterval refine(const SturmChain& chain, RootInterval iv, const BigRat& width) {
  if (iv.count != 1) throw DomainError("refine: interval must isolate exactly one root");
  while (iv.upper - iv.lower > width) {
    BigRat m = detail::split_point(chain.poly(), iv.lower, iv.upper);
    if (count_real_roots(chain, iv.lower, m) == 1) {
      iv.upper = m;
    } else {
      iv.lower = m;
    }
  }
  return iv;
}

/// Disjoint intervals, in increasing order, each containing exactly one
/// distinct real root of p, of width at most `width`. Starting from a
/// power-of-two bound and bisecting keeps the endpoints integral down to
/// width 1 unless a midpoint happens to be a root.
inline std::vector<RootInterval> isolate_real_roots(const ExactPoly& p, const BigRat& width = 1) {
  if (p.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  if (width <= 0) throw DomainError("isolate_real_roots: width must be positive");
  IntPoly sq = square_free_part(primitive_integer(p));
  if (sq.size() == 1) return {};
  SturmChain chain(sq);
  BigInt b = root_bound(sq);
  std::vector<RootInterval> out;
  std::vector<RootInterval> todo;
  RootInterval all{BigRat(-b), BigRat(b), count_real_roots(chain, BigRat(-b), BigRat(b))};
  if (all.count) todo.push_back(all);
  while (!todo.empty()) {
    RootInterval iv = todo.back();
    todo.pop_back();
    if (iv.count == 1) {
      out.push_back(refine(chain, iv, width));
      continue;
    }
    BigRat m = detail::split_point(sq, iv.lower, iv.upper);
    unsigned left = count_real_roots(chain, iv.lower, m);
    if (iv.count - left) todo.push_back({m, iv.upper, iv.count - left});
    if (left) todo.push_back({iv.lower, m, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lower < b.lower; });
  return out;
}

/// p(0) != 0 and no root in (0, +inf).
inline bool all_real_roots_negative(const ExactPoly& p) {
  if (p.is_zero()) throw DomainError("all_real_roots_negative: zero polynomial");
  if (p[0] == 0) return false;
  return count_real_roots(p, BigRat(0), std::nullopt) == 0;
}

enum class Stability { kStable, kMarginal, kUnstable };

inline std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::kStable: return "stable";
    case Stability::kMarginal: return "marginal";
    case Stability::kUnstable: return "unstable";
  }
  return "?";
}

/// Outcome of the Routh test. `stage` is the row index (0-based) of the
/// first non-positive first-column entry.
struct RouthVerdict {
  Stability status = Stability::kStable;
  std::optional<std::size_t> stage;

  bool stable() const { return status == Stability::kStable; }
  bool marginal() const { return status == Stability::kMarginal; }
};

/// Routh table of p. p is Hurwitz stable (all roots in Re z < 0) iff every
/// first-column entry is positive. Rows are kept as primitive integer
/// vectors, positive multiples of the rational rows, so every sign matches
/// the rational table. A zero pivot (or an all-zero row) stops the table and
/// is reported as marginal; no epsilon substitution is made.
inline RouthVerdict hurwitz_stable(const ExactPoly& poly) {
  if (poly.is_zero()) throw DomainError("hurwitz_stable: zero polynomial");
  if (poly[0] == 0) throw DomainError("hurwitz_stable: zero constant term, strip trivial root first");
  IntPoly p = primitive_integer(poly);
  if (sgn(p.leading()) < 0) p = -p;
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {};

  auto strip = [](std::vector<BigInt> row) {
    BigInt g = 0;
    for (const auto& c : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
      for (auto& c : row) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    return row;
  };

  std::vector<BigInt> prev, cur;
  for (std::size_t i = deg + 1; i-- > 0;) {
    ((deg - i) % 2 == 0 ? prev : cur).push_back(p.coeffs()[i]);
  }
  prev = strip(std::move(prev));
  cur = strip(std::move(cur));
  auto at = [](const std::vector<BigInt>& r, std::size_t j) { return j < r.size() ? r[j] : BigInt(0); };

  for (std::size_t row = 1; row <= deg; ++row) {
    int s = cur.empty() ? 0 : sgn(cur[0]);
    if (s < 0) return {Stability::kUnstable, row};
    if (s == 0) return {Stability::kMarginal, row};
    if (row == deg) break;
    std::size_t len = std::max<std::size_t>(prev.size(), 1) - 1;
    std::vector<BigInt> next(len);
    for (std::size_t j = 0; j < len; ++j) {
      next[j] = cur[0] * at(prev, j + 1) - prev[0] * at(cur, j + 1);
    }
    prev = std::move(cur);
    cur = strip(std::move(next));
  }
  return {};
}

/// Divides p by each factor in turn over Q and returns the final quotient.
/// Throws DomainError naming the first factor that leaves a remainder.
inline ExactPoly verify_factorization(const ExactPoly& p, const std::vector<ExactPoly>& factors) {
  ExactPoly q = p;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].is_zero()) throw DomainError("verify_factorization: zero factor at position " + std::to_string(i));
    auto [quot, rem] = divmod(q, factors[i]);
    if (!rem.is_zero()) {
      throw DomainError("verify_factorization: factor " + std::to_string(i) + " (" + to_display(factors[i]) +
                        ") leaves remainder " + to_display(rem));
    }
    q = std::move(quot);
  }
  return q;
}

/// Summary used by the roots command and report emission.
struct RootSummary {
  std::size_t degree = 0;
  bool square_free = true;
  unsigned real_root_count = 0;  // distinct
  unsigned nonreal_pair_count = 0;
  bool all_real_negative = false;
};

inline RootSummary summarize_roots(const ExactPoly& p) {
  if (p.is_zero()) throw DomainError("root summary of the zero polynomial");
  RootSummary s;
  s.degree = p.size() - 1;
  s.square_free = is_square_free(p);
  IntPoly sq = square_free_part(primitive_integer(p));
  s.real_root_count = count_real_roots(SturmChain(sq), std::nullopt, std::nullopt);
  s.nonreal_pair_count = static_cast<unsigned>((sq.size() - 1 - s.real_root_count) / 2);
  s.all_real_negative = all_real_roots_negative(p);
  return s;
}

/// All roots real (counted with multiplicity), for a nonzero polynomial.
inline bool is_real_rooted(const ExactPoly& p) {
  IntPoly sq = square_free_part(primitive_integer(p));
  return count_real_roots(SturmChain(sq), std::nullopt, std::nullopt) == sq.size() - 1;
}

}  // namespace darcais
