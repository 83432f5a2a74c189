#pragma once

// D'Arcais polynomials P_n(x), defined by
//
//   sum_n P_n(x) q^n = prod_{m>=1} (1 - q^m)^(-x),
//
// and their shifts Q_n(z) = P_n(z + 1), computed three ways:
//
//   * the divisor-sum recursion P_n = (x/n) sum_{k=1}^n sigma(k) P_{n-k}
//     (primary path, memoized in integer-normalized form n! P_n),
//   * formal expansion of the Euler product through exp/log (oracle),
//   * sums over partitions of products over hook lengths (verifiers).

#include "darcais/exactnum.hpp"
#include "darcais/parallel.hpp"
#include "darcais/partitions.hpp"
#include "darcais/polynomial.hpp"
#include "darcais/report.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace darcais {

/// Sum of the positive divisors of n, by direct enumeration.
inline BigInt sigma(std::uint64_t n) {
  if (n == 0) throw DomainError("sigma: n must be positive");
  BigInt s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += static_cast<unsigned long>(d);
    if (d != n / d) s += static_cast<unsigned long>(n / d);
  }
  return s;
}

/// sigma(1..N) by a divisor sieve, grown on demand.
class SigmaTable {
 public:
  const BigInt& operator()(std::size_t n) {
    if (n == 0) throw DomainError("sigma: n must be positive");
    if (n >= values_.size()) grow(std::max(n, 2 * values_.size()));
    return values_[n];
  }

 private:
  void grow(std::size_t limit) {
    std::vector<std::uint64_t> s(limit + 1, 0);
    for (std::size_t d = 1; d <= limit; ++d) {
      for (std::size_t m = d; m <= limit; m += d) s[m] += d;
    }
    values_.assign(limit + 1, 0);
    for (std::size_t i = 1; i <= limit; ++i) values_[i] = static_cast<unsigned long>(s[i]);
  }

  std::vector<BigInt> values_{BigInt(0)};
};

/// n! P_n(x) / x = sum_k a_k x^k, k = 0..n-1, for n >= 1.
struct DArcaisRecord {
  unsigned n = 0;
  std::vector<BigInt> numer_coeffs;

  /// Positive integer coefficients, n of them, leading coefficient 1.
  void check_invariants() const {
    if (n == 0) {
      if (!numer_coeffs.empty()) throw ConsistencyError("record for n = 0 must be empty");
      return;
    }
    if (numer_coeffs.size() != n) {
      throw ConsistencyError("record " + std::to_string(n) + " has " + std::to_string(numer_coeffs.size()) +
                             " coefficients, expected " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (numer_coeffs[k] <= 0) {
        throw ConsistencyError("record " + std::to_string(n) + ": coefficient " + std::to_string(k) +
                               " is not positive");
      }
    }
    if (numer_coeffs.back() != 1) {
      throw ConsistencyError("record " + std::to_string(n) + ": leading coefficient is not 1");
    }
  }

  friend bool operator==(const DArcaisRecord&, const DArcaisRecord&) = default;
};

/// Memo of A_n = n! P_n(x) in Z[x]. In that normalization the recursion
/// reads
///
///   A_n = x * sum_{k=1}^n sigma(k) (n-1)!/(n-k)! A_{n-k},
///
/// so only integers are involved. Extension is serialized; completed
/// entries may be read concurrently.
class DArcaisTable {
 public:
  DArcaisTable() { scaled_.push_back(IntPoly::constant(1)); }

  /// n! P_n(x).
  IntPoly scaled(unsigned n) {
    ensure(n);
    std::shared_lock lock(mu_);
    return scaled_[n];
  }

  DArcaisRecord record(unsigned n) {
    IntPoly a = scaled(n);
    DArcaisRecord r{n, {}};
    if (n > 0) r.numer_coeffs.assign(a.coeffs().begin() + 1, a.coeffs().end());
    return r;
  }

  ExactPoly poly(unsigned n) {
    ExactPoly p = to_rational(scaled(n));
    p *= BigRat(1) / BigRat(factorial(n));
    return p;
  }

  /// n! Q_n(z) = n! P_n(z + 1).
  IntPoly shifted_scaled(unsigned n) { return taylor_shift(scaled(n), BigInt(1)); }

  /// Highest index computed so far.
  unsigned computed() const {
    std::shared_lock lock(mu_);
    return static_cast<unsigned>(scaled_.size() - 1);
  }

  /// Appends a record for index computed() + 1 (as read from a cache file).
  void seed(const DArcaisRecord& r) {
    r.check_invariants();
    std::unique_lock lock(mu_);
    if (r.n != scaled_.size()) {
      throw ConsistencyError("cache record " + std::to_string(r.n) + " out of sequence");
    }
    std::vector<BigInt> v{BigInt(0)};
    v.insert(v.end(), r.numer_coeffs.begin(), r.numer_coeffs.end());
    scaled_.emplace_back(std::move(v));
  }

  void ensure(unsigned n) {
    {
      std::shared_lock lock(mu_);
      if (n < scaled_.size()) return;
    }
    std::unique_lock lock(mu_);
    while (scaled_.size() <= n) extend_locked();
  }

 private:
  void extend_locked() {
    const unsigned n = static_cast<unsigned>(scaled_.size());
    // acc holds sum_k c_k A_{n-k}; the result is x * acc.
    std::vector<BigInt> acc(n);
    BigInt c;
    BigInt ff = 1;  // (n-1)!/(n-k)!
    for (unsigned k = 1; k <= n; ++k) {
      if (k > 1) ff *= (n - k + 1);
      c = sigma_(k) * ff;
      const auto& prev = scaled_[n - k].coeffs();
      for (std::size_t j = 0; j < prev.size(); ++j) {
        mpz_addmul(acc[j].get_mpz_t(), c.get_mpz_t(), prev[j].get_mpz_t());
      }
    }
    std::vector<BigInt> out(n + 1);
    for (unsigned j = 0; j < n; ++j) out[j + 1] = std::move(acc[j]);
    scaled_.emplace_back(std::move(out));
  }

  mutable std::shared_mutex mu_;
  std::vector<IntPoly> scaled_;
  SigmaTable sigma_;
};

/// Process-wide memo used by the free functions below.
inline DArcaisTable& shared_table() {
  static DArcaisTable table;
  return table;
}

/// P_n(x) via the recursion.
inline ExactPoly darcais_poly(unsigned n) { return shared_table().poly(n); }

/// Q_n(z) = P_n(z + 1).
inline ExactPoly q_poly(unsigned n) {
  ExactPoly q = to_rational(shared_table().shifted_scaled(n));
  q *= BigRat(1) / BigRat(factorial(n));
  return q;
}

/// P_0 .. P_max by expanding prod (1 - q^m)^(-x) = exp(x L(q)) with
/// L(q) = sum_{m, j >= 1} q^(mj) / j, truncated at q^max. The coefficient
/// of q^N in L^k / k! is the coefficient of x^k in P_N.
inline std::vector<ExactPoly> euler_series_table(unsigned max) {
  std::vector<BigRat> log_series(max + 1, 0);
  for (unsigned m = 1; m <= max; ++m) {
    for (unsigned j = 1; m * j <= max; ++j) log_series[m * j] += BigRat(1, j);
  }
  // coeff[N][k] = [q^N] L^k / k!
  std::vector<std::vector<BigRat>> coeff(max + 1);
  coeff[0].push_back(1);
  std::vector<BigRat> pw(max + 1, 0);
  pw[0] = 1;
  for (unsigned k = 1; k <= max; ++k) {
    std::vector<BigRat> next(max + 1, 0);
    // L^k starts at q^k.
    for (unsigned i = k - 1; i <= max; ++i) {
      if (pw[i] == 0) continue;
      for (unsigned j = 1; i + j <= max; ++j) next[i + j] += pw[i] * log_series[j];
    }
    pw = std::move(next);
    BigRat inv_fact = BigRat(1) / BigRat(factorial(k));
    for (unsigned N = k; N <= max; ++N) {
      coeff[N].resize(k + 1, 0);
      coeff[N][k] = pw[N] * inv_fact;
    }
  }
  std::vector<ExactPoly> out;
  out.reserve(max + 1);
  for (auto& c : coeff) out.emplace_back(std::move(c));
  return out;
}

inline ExactPoly euler_series_poly(unsigned n) { return euler_series_table(n)[n]; }

/// Route bounds beyond which a verifier is reported as skipped.
struct RouteBounds {
  unsigned series = 128;
  unsigned full_hook = 18;
  unsigned trivial_leg = 25;
  unsigned trivial_arm = 25;
  unsigned binomial = 40;
};

namespace detail {

// prod over the multiset of factor(h)^multiplicity.
template <class Factor>
ExactPoly hook_product(const HookMultiset& hooks, Factor factor) {
  ExactPoly prod = ExactPoly::constant(1);
  for (auto [h, m] : hooks.counts) prod *= power(factor(h), m);
  return prod;
}

// Sums per-partition terms over the partitions of n, split by largest part
// across workers and added back in increasing largest-part order.
template <class Term>
ExactPoly sum_over_partitions(unsigned n, unsigned workers, Term term) {
  if (n == 0) {
    Partition empty;
    return term(empty);
  }
  auto partial = parallel_map(n, workers, [&](std::size_t i) {
    ExactPoly s;
    auto stream = PartitionStream::with_largest_part(n, static_cast<unsigned>(i + 1));
    for (const Partition& p : stream) s += term(p);
    return s;
  });
  ExactPoly total;
  for (auto& s : partial) total += s;
  return total;
}

}  // namespace detail

/// (h + z)/h or (h^2 + z)/h^2 as a polynomial in z.
inline ExactPoly hook_factor(unsigned h, HookSelector s) {
  BigInt denom = s == HookSelector::kFull ? BigInt(h) * h : BigInt(h);
  return ExactPoly({BigRat(1), make_rational(1, denom)});
}

/// prod_{h in H_s(lambda)} factor(h).
inline ExactPoly hook_term(const Partition& p, HookSelector s) {
  return detail::hook_product(hooks(p, s), [s](unsigned h) { return hook_factor(h, s); });
}

/// sum over lambda |- n of prod over the selected hooks; n = 0 gives 1.
inline ExactPoly hook_sum(unsigned n, HookSelector s, unsigned workers = 1) {
  return detail::sum_over_partitions(n, workers, [s](const Partition& p) { return hook_term(p, s); });
}

inline ExactPoly hook_sum_full(unsigned n, unsigned workers = 1) { return hook_sum(n, HookSelector::kFull, workers); }
inline ExactPoly hook_sum_trivial_leg(unsigned n, unsigned workers = 1) {
  return hook_sum(n, HookSelector::kTrivialLeg, workers);
}
inline ExactPoly hook_sum_trivial_arm(unsigned n, unsigned workers = 1) {
  return hook_sum(n, HookSelector::kTrivialArm, workers);
}

/// C(k + z, k) = (z + 1)(z + 2)...(z + k) / k! as a polynomial in z.
inline ExactPoly binomial_in_z(unsigned k) {
  ExactPoly p = ExactPoly::constant(1);
  for (unsigned i = 1; i <= k; ++i) p *= ExactPoly({BigRat(i), BigRat(1)});
  p *= BigRat(1) / BigRat(factorial(k));
  return p;
}

/// sum over lambda |- n of prod_j C(k_j + z, k_j), k_j the multiplicity of j.
inline ExactPoly binomial_sum(unsigned n, unsigned workers = 1) {
  std::vector<ExactPoly> b;
  b.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) b.push_back(binomial_in_z(k));
  return detail::sum_over_partitions(n, workers, [&](const Partition& p) {
    ExactPoly prod = ExactPoly::constant(1);
    MultiplicityVector kv(p);
    for (unsigned j = 1; j <= kv.size(); ++j) {
      if (kv.k(j)) prod *= b[kv.k(j)];
    }
    return prod;
  });
}

/// sum over lambda |- n of (-1)^l(lambda) prod_j C(m, k_j): the coefficient
/// of q^n in prod_d (1 - q^d)^m, collected by multiplicity vectors.
inline BigInt signed_multiplicity_sum(unsigned n, unsigned m) {
  BigInt total = 0;
  for (const Partition& p : enumerate_partitions(n)) {
    BigInt prod = (p.length() % 2) ? -1 : 1;
    MultiplicityVector kv(p);
    for (unsigned j = 1; j <= kv.size() && prod != 0; ++j) {
      if (kv.k(j)) prod *= binomial(m, kv.k(j));
    }
    total += prod;
  }
  return total;
}

/// sum over lambda |- n of prod_{h in H_trivial_leg} (h - (m + 1))/h.
inline BigRat trivial_leg_sum_at(unsigned n, unsigned m) {
  BigRat total = 0;
  for (const Partition& p : enumerate_partitions(n)) {
    BigRat prod = 1;
    for (auto [h, mult] : hooks(p, HookSelector::kTrivialLeg).counts) {
      BigRat f = make_rational(BigInt(h) - (m + 1), BigInt(h));
      for (unsigned i = 0; i < mult; ++i) prod *= f;
    }
    total += prod;
  }
  return total;
}

/// Coefficient of q^n in prod_{d=1}^n (1 - q^d)^m by direct multiplication
/// of truncated integer series.
inline BigInt eta_power_coefficient(unsigned n, unsigned m) {
  std::vector<BigInt> s(n + 1, 0);
  s[0] = 1;
  for (unsigned d = 1; d <= n; ++d) {
    for (unsigned rep = 0; rep < m; ++rep) {
      for (unsigned i = n; i >= d; --i) s[i] -= s[i - d];
    }
  }
  return s[n];
}

enum class Route { kSeries, kFullHook, kTrivialLeg, kTrivialArm, kBinomial };

inline std::string_view to_string(Route r) {
  switch (r) {
    case Route::kSeries: return "series";
    case Route::kFullHook: return "full_hook";
    case Route::kTrivialLeg: return "trivial_leg";
    case Route::kTrivialArm: return "trivial_arm";
    case Route::kBinomial: return "binomial";
  }
  return "?";
}

inline const std::vector<Route>& all_routes() {
  static const std::vector<Route> routes{Route::kSeries, Route::kFullHook, Route::kTrivialLeg, Route::kTrivialArm,
                                         Route::kBinomial};
  return routes;
}

struct VerifyOptions {
  RouteBounds bounds;
  unsigned workers = 1;
  // Test hook: called on every route's polynomial before comparison.
  std::function<void(Route, ExactPoly&)> tamper;
};

namespace detail {

inline unsigned bound_for(Route r, const RouteBounds& b) {
  switch (r) {
    case Route::kSeries: return b.series;
    case Route::kFullHook: return b.full_hook;
    case Route::kTrivialLeg: return b.trivial_leg;
    case Route::kTrivialArm: return b.trivial_arm;
    case Route::kBinomial: return b.binomial;
  }
  return 0;
}

// Index of the first coefficient where a and b differ, if any.
inline std::optional<std::size_t> first_difference(const ExactPoly& a, const ExactPoly& b) {
  std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] != b[i]) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks that every requested route reproduces the recursion exactly: the
/// series route against P_n, the partition routes against Q_n. Routes whose
/// bound is below n are reported as skipped.
inline CertReport verify_identity(unsigned n, const std::vector<Route>& routes, const VerifyOptions& opts = {}) {
  if (n == 0) throw DomainError("verify_identity: n must be positive");
  using clock = std::chrono::steady_clock;
  CertReport rep;
  rep.kind = "identity";
  rep.target = {{"n", n}};
  nlohmann::json status = nlohmann::json::object();
  nlohmann::json timing = nlohmann::json::object();

  auto t0 = clock::now();
  const ExactPoly p_ref = darcais_poly(n);
  const ExactPoly q_ref = q_poly(n);
  timing["recursion"] = std::chrono::duration<double>(clock::now() - t0).count();

  for (Route r : routes) {
    const std::string name(to_string(r));
    if (n > detail::bound_for(r, opts.bounds)) {
      status[name] = "skipped";
      continue;
    }
    auto start = clock::now();
    ExactPoly got;
    switch (r) {
      case Route::kSeries: got = euler_series_poly(n); break;
      case Route::kFullHook: got = hook_sum_full(n, opts.workers); break;
      case Route::kTrivialLeg: got = hook_sum_trivial_leg(n, opts.workers); break;
      case Route::kTrivialArm: got = hook_sum_trivial_arm(n, opts.workers); break;
      case Route::kBinomial: got = binomial_sum(n, opts.workers); break;
    }
    timing[name] = std::chrono::duration<double>(clock::now() - start).count();
    if (opts.tamper) opts.tamper(r, got);
    const bool is_p = (r == Route::kSeries);
    const ExactPoly& want = is_p ? p_ref : q_ref;
    if (auto idx = detail::first_difference(want, got)) {
      status[name] = "fail";
      if (rep.verdict != Verdict::kFail) {
        rep.verdict = Verdict::kFail;
        rep.witness = {{"route", name},
                       {"form", is_p ? "P_n" : "Q_n"},
                       {"index", *idx},
                       {"expected", to_string(want[*idx])},
                       {"actual", to_string(got[*idx])}};
      }
    } else {
      status[name] = "pass";
    }
  }
  bool any_checked = false;
  for (auto& [k, v] : status.items()) any_checked |= (v != "skipped");
  if (rep.verdict != Verdict::kFail && !any_checked) rep.verdict = Verdict::kSkipped;

  rep.details = {{"reference", "recursion"}, {"routes", status}, {"q_n", to_line(q_ref)}};
  rep.timings = timing;
  return rep;
}

}  // namespace darcais
