#pragma once

// Dense univariate polynomials over BigInt or BigRat.
//
// Coefficients are stored by power (index 0 is the constant term) and the
// highest stored coefficient is always nonzero; the zero polynomial has no
// coefficients and no degree.

#include "darcais/exactnum.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#ifndef DARCAIS_KARATSUBA_THRESHOLD
#define DARCAIS_KARATSUBA_THRESHOLD 32
#endif

namespace darcais {

inline constexpr std::size_t kKaratsubaThreshold = DARCAIS_KARATSUBA_THRESHOLD;

template <class R>
class Polynomial {
 public:
  using coefficient_type = R;

  Polynomial() = default;
  explicit Polynomial(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<R> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(R c) { return Polynomial(std::vector<R>{std::move(c)}); }

  static Polynomial monomial(R c, std::size_t power) {
    std::vector<R> v(power + 1);
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  /// x - root
  static Polynomial linear_root(R root) { return Polynomial({-root, R(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  /// Number of stored coefficients (degree + 1, or 0).
  std::size_t size() const { return coeffs_.size(); }

  std::span<const R> coeffs() const { return coeffs_; }
  const std::vector<R>& coeff_vector() const { return coeffs_; }

  /// Coefficient of x^i; zero past the degree.
  R operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : R(0); }

  const R& leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  Polynomial operator-() const {
    std::vector<R> v(coeffs_);
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const R& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const R& s) { return a *= s; }
  friend Polynomial operator*(const R& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r *= b;
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiply by x^k.
  Polynomial shifted_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<R> v(k);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

using ExactPoly = Polynomial<BigRat>;
using IntPoly = Polynomial<BigInt>;

namespace detail {

inline void add_product(BigInt& acc, const BigInt& a, const BigInt& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void add_product(BigRat& acc, const BigRat& a, const BigRat& b) { acc += a * b; }

template <class R>
void schoolbook(std::span<const R> a, std::span<const R> b, std::span<R> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) add_product(out[i + j], a[i], b[j]);
  }
}

// Adds a*b into out (out.size() >= a.size() + b.size() - 1).
template <class R>
void karatsuba(std::span<const R> a, std::span<const R> b, std::span<R> out,
               std::size_t threshold) {
  if (a.empty() || b.empty()) return;
  if (a.size() < b.size()) std::swap(a, b);
  if (b.size() < threshold) {
    schoolbook(a, b, out);
    return;
  }
  const std::size_t m = a.size() / 2;
  if (b.size() <= m) {
    // Unbalanced: split only the longer operand.
    karatsuba(a.first(m), b, out, threshold);
    karatsuba(a.subspan(m), b, out.subspan(m), threshold);
    return;
  }
  auto a0 = a.first(m), a1 = a.subspan(m);
  auto b0 = b.first(m), b1 = b.subspan(m);

  std::vector<R> z0(a0.size() + b0.size() - 1);
  std::vector<R> z2(a1.size() + b1.size() - 1);
  karatsuba<R>(a0, b0, z0, threshold);
  karatsuba<R>(a1, b1, z2, threshold);

  std::vector<R> sa(std::max(a0.size(), a1.size()));
  std::vector<R> sb(std::max(b0.size(), b1.size()));
  for (std::size_t i = 0; i < a0.size(); ++i) sa[i] += a0[i];
  for (std::size_t i = 0; i < a1.size(); ++i) sa[i] += a1[i];
  for (std::size_t i = 0; i < b0.size(); ++i) sb[i] += b0[i];
  for (std::size_t i = 0; i < b1.size(); ++i) sb[i] += b1[i];
  std::vector<R> z1(sa.size() + sb.size() - 1);
  karatsuba<R>(sa, sb, z1, threshold);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) {
    if (z1[i] != 0) out[i + m] += z1[i];
  }
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * m] += z2[i];
}

}  // namespace detail

/// Product with an explicit Karatsuba cutoff; threshold 0 or SIZE_MAX forces
/// one scheme. Used directly by tests comparing the two schemes.
template <class R>
Polynomial<R> multiply(const Polynomial<R>& a, const Polynomial<R>& b, std::size_t threshold) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<R> out(a.size() + b.size() - 1);
  if (threshold == 0) threshold = 2;
  detail::karatsuba<R>(a.coeffs(), b.coeffs(), out, threshold);
  return Polynomial<R>(std::move(out));
}

template <class R>
Polynomial<R>& Polynomial<R>::operator*=(const Polynomial& o) {
  *this = multiply(*this, o, kKaratsubaThreshold);
  return *this;
}

template <class R>
Polynomial<R> power(Polynomial<R> base, unsigned exponent) {
  Polynomial<R> result = Polynomial<R>::constant(R(1));
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

template <class R>
R evaluate(const Polynomial<R>& p, const R& x) {
  R acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline BigRat evaluate(const IntPoly& p, const BigRat& x) {
  BigRat acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + BigRat(*it);
  return acc;
}

/// Sign of p(x) computed in integers: with x = a/b, b > 0, the value
/// b^d p(a/b) = sum c_i a^i b^(d-i) has the same sign.
inline int sign_at(const IntPoly& p, const BigRat& x) {
  if (p.is_zero()) return 0;
  const BigInt& a = x.get_num();
  const BigInt& b = x.get_den();
  auto c = p.coeffs();
  BigInt acc = c.back();
  BigInt bpow = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    bpow *= b;
    acc *= a;
    detail::add_product(acc, c[i], bpow);
  }
  return sgn(acc);
}

template <class R>
Polynomial<R> derivative(const Polynomial<R>& p) {
  if (p.size() <= 1) return {};
  std::vector<R> v(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) v[i - 1] = p[i] * R(static_cast<unsigned long>(i));
  return Polynomial<R>(std::move(v));
}

/// p(x + shift), by repeated synthetic division (O(d^2) additions).
template <class R>
Polynomial<R> taylor_shift(const Polynomial<R>& p, const R& shift) {
  std::vector<R> a(p.coeffs().begin(), p.coeffs().end());
  const std::size_t n = a.size();
  const bool unit = (shift == 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) {
      if (unit) {
        a[j] += a[j + 1];
      } else {
        detail::add_product(a[j], shift, a[j + 1]);
      }
    }
  }
  return Polynomial<R>(std::move(a));
}

template <class R>
struct DivMod {
  Polynomial<R> quotient;
  Polynomial<R> remainder;
};

/// Euclidean division over the rationals.
inline DivMod<BigRat> divmod(const ExactPoly& num, const ExactPoly& den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  if (num.size() < den.size()) return {{}, num};
  std::vector<BigRat> r(num.coeffs().begin(), num.coeffs().end());
  std::vector<BigRat> q(num.size() - den.size() + 1);
  const BigRat& lead = den.leading();
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    BigRat f = r[k + dd] / lead;
    if (f == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * den[j];
    q[k] = std::move(f);
  }
  r.resize(dd);
  return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
}

/// Exact division over the integers. Returns nullopt if den does not divide
/// num with an integral quotient and zero remainder.
inline std::optional<IntPoly> divide_exact(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  if (num.is_zero()) return IntPoly{};
  if (num.size() < den.size()) return std::nullopt;
  std::vector<BigInt> r(num.coeffs().begin(), num.coeffs().end());
  std::vector<BigInt> q(num.size() - den.size() + 1);
  const BigInt& lead = den.leading();
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& top = r[k + dd];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    BigInt f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (std::size_t j = 0; j <= dd; ++j) mpz_submul(r[k + j].get_mpz_t(), f.get_mpz_t(), den.coeffs()[j].get_mpz_t());
    q[k] = std::move(f);
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (r[j] != 0) return std::nullopt;
  }
  return IntPoly(std::move(q));
}

/// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// p divided by its (positive) content; the sign of every coefficient is kept.
inline IntPoly primitive_part(const IntPoly& p) {
  BigInt g = content(p);
  if (g == 0 || g == 1) return p;
  std::vector<BigInt> v(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

/// Pseudo-remainder: lc(den)^(deg num - deg den + 1) * num mod den, computed
/// without fractions.
inline IntPoly pseudo_remainder(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  if (num.size() < den.size()) {
    // The multiplier exponent is still defined as 0 here.
    return num;
  }
  std::vector<BigInt> r(num.coeffs().begin(), num.coeffs().end());
  const BigInt& lead = den.leading();
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = num.size() - den.size() + 1; k-- > 0;) {
    BigInt f = r[k + dd];
    for (std::size_t j = 0; j < k + dd; ++j) r[j] *= lead;
    r[k + dd] = 0;
    if (f == 0) continue;
    for (std::size_t j = 0; j < dd; ++j) mpz_submul(r[k + j].get_mpz_t(), f.get_mpz_t(), den.coeffs()[j].get_mpz_t());
  }
  r.resize(dd);
  return IntPoly(std::move(r));
}

inline ExactPoly to_rational(const IntPoly& p) {
  std::vector<BigRat> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return ExactPoly(std::move(v));
}

/// The positive multiple of p that is a primitive integer polynomial.
inline IntPoly primitive_integer(const ExactPoly& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<BigInt> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    BigInt t = lcm / c.get_den();
    v.push_back(c.get_num() * t);
  }
  return primitive_part(IntPoly(std::move(v)));
}

/// Integer polynomial with integral rational coefficients; throws otherwise.
inline IntPoly to_integer(const ExactPoly& p) {
  std::vector<BigInt> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    if (c.get_den() != 1) throw DomainError("polynomial has a non-integral coefficient");
    v.push_back(c.get_num());
  }
  return IntPoly(std::move(v));
}

inline ExactPoly monic(const ExactPoly& p) {
  if (p.is_zero()) return p;
  ExactPoly r = p;
  r *= BigRat(1) / p.leading();
  return r;
}

/// Primitive gcd over Z[x] with positive leading coefficient, by the
/// primitive pseudo-remainder sequence.
inline IntPoly primitive_gcd(IntPoly a, IntPoly b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd undefined for two zero polynomials");
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (sgn(a.leading()) < 0) a = -a;
  return a;
}

/// Monic greatest common divisor over Q; gcd(p, 0) = monic(p).
inline ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd undefined for two zero polynomials");
  if (b.is_zero()) return monic(a);
  if (a.is_zero()) return monic(b);
  return monic(to_rational(primitive_gcd(primitive_integer(a), primitive_integer(b))));
}

// Text form: coefficients from the constant term upward, space separated,
// each written as "num/den". The zero polynomial is written "0/1".
inline std::string to_line(const ExactPoly& p) {
  if (p.is_zero()) return "0/1";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += to_fraction_string(p.coeffs()[i]);
  }
  return out;
}

inline std::string to_line(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += p.coeffs()[i].get_str();
  }
  return out;
}

inline ExactPoly parse_line(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<BigRat> v;
  std::string tok;
  while (in >> tok) v.push_back(parse_rational(tok));
  return ExactPoly(std::move(v));
}

/// Human-readable form, highest power first, e.g. "x^2 + 3*x - 1/2".
template <class R>
std::string to_display(const Polynomial<R>& p, std::string_view var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    const R& c = p.coeffs()[i];
    if (c == 0) continue;
    R mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = (mag == 1) && i > 0;
    if (!unit) out += mag.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace darcais
