#pragma once

// Exact integers and rationals.
//
// BigInt and BigRat are the GMP C++ classes. mpq_class keeps values in
// lowest terms with a positive denominator after every arithmetic
// operation; values built from a raw numerator/denominator pair must go
// through make_rational() so that the same holds.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace darcais {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Thrown for violated preconditions and malformed input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal consistency check fails (a computed value that
/// must be integral is not, a cached record does not match, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigRat make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const BigInt& v) { return sgn(v); }
inline int sign(const BigRat& v) { return sgn(v); }

inline BigInt factorial(std::uint64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// n (n-1) ... (n-k+1); 1 for k = 0.
inline BigInt falling_factorial(std::uint64_t n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (i >= n) return 0;
    r *= static_cast<unsigned long>(n - i);
  }
  return r;
}

/// Generalized binomial coefficient top (top-1) ... (top-k+1) / k!, for any
/// rational top. Negative k is rejected.
inline BigRat binomial(const BigRat& top, long k) {
  if (k < 0) throw DomainError("binomial: negative lower index");
  BigRat num = 1;
  for (long i = 0; i < k; ++i) num *= top - i;
  return num / BigRat(factorial(static_cast<std::uint64_t>(k)));
}

inline BigInt binomial(std::uint64_t top, std::uint64_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), top, k);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Always "num/den", so the form is uniform across a serialized line.
inline std::string to_fraction_string(const BigRat& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

/// "num/den" when the denominator is not 1, plain integer otherwise.
inline std::string to_string(const BigRat& v) { return v.get_str(); }

inline BigInt parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw DomainError("malformed integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw DomainError("malformed integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

/// Accepts "a", "-a", "a/b" with b nonzero.
inline BigRat parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRat(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  return make_rational(num, parse_integer(den_text));
}

}  // namespace darcais
