#pragma once

// Unimodality, log-concavity and ultra-log-concavity of coefficient
// sequences a_0, ..., a_n (indexed by power). All comparisons are exact.

#include "darcais/darcais.hpp"
#include "darcais/exactnum.hpp"
#include "darcais/report.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace darcais {

/// Result of one predicate. For unimodality `peak_index` is the smallest k
/// with a_0 <= ... <= a_k >= ... >= a_n; `witness` is the first violating
/// index (the dip for unimodality, the failing j for log-concavity).
struct ShapeCheck {
  bool holds = true;
  std::optional<std::size_t> peak_index;
  std::optional<std::size_t> witness;
};

struct ShapeVerdict {
  bool unimodal = false;
  bool log_concave = false;
  bool ultra_log_concave = false;
  std::optional<std::size_t> peak_index;
  std::optional<std::size_t> failure_witness;  // first failing index of the strongest failed property
};

namespace detail {

template <class T>
void check_sequence(std::span<const T> a) {
  if (a.empty()) throw DomainError("shape predicates need a nonempty sequence");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw DomainError("shape predicates need nonnegative entries (index " + std::to_string(i) + ")");
  }
}

}  // namespace detail

template <class T>
ShapeCheck is_unimodal(std::span<const T> a) {
  detail::check_sequence(a);
  std::size_t i = 0;
  while (i + 1 < a.size() && a[i] <= a[i + 1]) ++i;
  std::size_t peak = i;
  while (peak > 0 && a[peak - 1] == a[i]) --peak;
  std::size_t j = i;
  while (j + 1 < a.size() && a[j] >= a[j + 1]) ++j;
  if (j + 1 < a.size()) return {false, std::nullopt, j};
  return {true, peak, std::nullopt};
}

/// a_j^2 >= a_{j-1} a_{j+1} for every interior j.
template <class T>
ShapeCheck is_log_concave(std::span<const T> a) {
  detail::check_sequence(a);
  for (std::size_t j = 1; j + 1 < a.size(); ++j) {
    if (a[j] * a[j] < a[j - 1] * a[j + 1]) return {false, std::nullopt, j};
  }
  return {};
}

/// a_k / C(n, k) log-concave, n = size - 1. Compared without division as
/// a_k^2 C(n,k-1) C(n,k+1) >= a_{k-1} a_{k+1} C(n,k)^2.
template <class T>
ShapeCheck is_ultra_log_concave(std::span<const T> a) {
  detail::check_sequence(a);
  const std::size_t n = a.size() - 1;
  if (n < 2) return {};
  std::vector<BigInt> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = binomial(n, k);
  for (std::size_t k = 1; k < n; ++k) {
    T lhs = a[k] * a[k] * T(c[k - 1] * c[k + 1]);
    T rhs = a[k - 1] * a[k + 1] * T(c[k] * c[k]);
    if (lhs < rhs) return {false, std::nullopt, k};
  }
  return {};
}

/// All three predicates. On strictly positive sequences the chain
/// ultra-log-concave => log-concave => unimodal must hold; a violation is a
/// ConsistencyError.
template <class T>
ShapeVerdict shape_verdict(std::span<const T> a) {
  ShapeCheck u = is_unimodal(a);
  ShapeCheck lc = is_log_concave(a);
  ShapeCheck ulc = is_ultra_log_concave(a);
  ShapeVerdict v{u.holds, lc.holds, ulc.holds, u.peak_index, std::nullopt};
  if (!ulc.holds) v.failure_witness = ulc.witness;
  if (!lc.holds) v.failure_witness = lc.witness;
  if (!u.holds) v.failure_witness = u.witness;
  bool positive = true;
  for (const auto& x : a) positive = positive && x > 0;
  if (positive && ((v.ultra_log_concave && !v.log_concave) || (v.log_concave && !v.unimodal))) {
    throw ConsistencyError("shape implication chain violated on a positive sequence");
  }
  return v;
}

template <class T>
ShapeVerdict shape_verdict(const std::vector<T>& a) {
  return shape_verdict(std::span<const T>(a));
}

/// Coefficients of n! Q_n(z); scaling by n! does not change any shape.
inline std::vector<BigInt> q_coefficients(unsigned n) {
  IntPoly q = shared_table().shifted_scaled(n);
  return {q.coeffs().begin(), q.coeffs().end()};
}

struct ShapeRunOptions {
  unsigned workers = 1;
  // Test hook: replaces the coefficient source.
  std::function<std::vector<BigInt>(unsigned)> source;
};

inline CertReport shape_report_one(unsigned n, const std::vector<BigInt>& coeffs, double seconds) {
  ShapeVerdict v = shape_verdict(coeffs);
  CertReport r;
  r.kind = "shape";
  r.target = {{"n", n}, {"polynomial", "Q_n"}};
  r.verdict = v.ultra_log_concave ? Verdict::kPass : Verdict::kFail;
  r.details = {{"unimodal", v.unimodal},
               {"log_concave", v.log_concave},
               {"ultra_log_concave", v.ultra_log_concave},
               {"peak_index", v.peak_index ? nlohmann::json(*v.peak_index) : nlohmann::json(nullptr)}};
  if (!v.ultra_log_concave) {
    std::size_t idx = v.failure_witness.value_or(0);
    r.witness = {{"index", idx},
                 {"a_prev", idx > 0 ? to_string(coeffs[idx - 1]) : "0"},
                 {"a", to_string(coeffs[idx])},
                 {"a_next", idx + 1 < coeffs.size() ? to_string(coeffs[idx + 1]) : "0"}};
  }
  r.timings = nlohmann::json{{"seconds", seconds}};
  return r;
}

/// Verdicts for Q_first .. Q_last in order. Stops after the first failure,
/// which is the last record returned.
inline std::vector<CertReport> shape_report(unsigned first, unsigned last, const ShapeRunOptions& opts = {}) {
  if (first == 0 || first > last) throw DomainError("shape_report: need 1 <= first <= last");
  if (!opts.source) shared_table().ensure(last);
  std::vector<CertReport> out;
  const unsigned chunk = std::max(1U, opts.workers) * 4;
  for (unsigned lo = first; lo <= last; lo += chunk) {
    unsigned hi = std::min(last, lo + chunk - 1);
    auto batch = parallel_map(hi - lo + 1, opts.workers, [&](std::size_t i) {
      unsigned n = lo + static_cast<unsigned>(i);
      auto start = std::chrono::steady_clock::now();
      std::vector<BigInt> c = opts.source ? opts.source(n) : q_coefficients(n);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return shape_report_one(n, c, secs);
    });
    for (auto& r : batch) {
      bool failed = !r.passed();
      out.push_back(std::move(r));
      if (failed) return out;
    }
  }
  return out;
}

inline std::string shape_csv_header() { return "n,unimodal,log_concave,ultra_log_concave,peak_index"; }

inline std::string shape_csv_row(const CertReport& r) {
  const auto& d = r.details;
  auto b = [](const nlohmann::json& j) { return j.get<bool>() ? "true" : "false"; };
  std::string peak = d["peak_index"].is_null() ? "" : std::to_string(d["peak_index"].get<std::size_t>());
  return std::to_string(r.target["n"].get<unsigned>()) + "," + b(d["unimodal"]) + "," + b(d["log_concave"]) + "," +
         b(d["ultra_log_concave"]) + "," + peak;
}

}  // namespace darcais
