#pragma once

// Polya frequency sequences and minors of the attached Toeplitz matrix
//
//   A[i][j] = a_{i-j} for 0 <= j <= i, 0 otherwise  (indices 0-based).
//
// A finite nonnegative sequence is PF iff its generating polynomial has
// only real roots (Aissen-Schoenberg-Whitney / Edrei). pf_test decides PF
// that way and, for non-PF input, looks for a negative contiguous minor as
// an explicit certificate.

#include "darcais/exactnum.hpp"
#include "darcais/polynomial.hpp"
#include "darcais/rootcert.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace darcais {

/// a_0, a_1, ..., a_n, all nonnegative, extended by zeros on both sides.
template <class T>
class ToeplitzSeq {
 public:
  explicit ToeplitzSeq(std::vector<T> a) : a_(std::move(a)) {
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] < 0) throw DomainError("Polya frequency sequences are nonnegative (entry " + std::to_string(i) + ")");
    }
  }

  const std::vector<T>& values() const { return a_; }

  T at(std::ptrdiff_t k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= a_.size()) return T(0);
    return a_[static_cast<std::size_t>(k)];
  }
  T entry(std::size_t row, std::size_t col) const {
    return at(static_cast<std::ptrdiff_t>(row) - static_cast<std::ptrdiff_t>(col));
  }

  /// sum a_i x^i
  ExactPoly generating_polynomial() const {
    std::vector<BigRat> v;
    v.reserve(a_.size());
    for (const auto& c : a_) v.emplace_back(c);
    return ExactPoly(std::move(v));
  }

 private:
  std::vector<T> a_;
};

/// Row and column selections (0-based, strictly increasing, equal size).
struct MinorSpec {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  static MinorSpec contiguous(std::size_t order, std::size_t row_start, std::size_t col_start) {
    MinorSpec s;
    for (std::size_t i = 0; i < order; ++i) {
      s.rows.push_back(row_start + i);
      s.cols.push_back(col_start + i);
    }
    return s;
  }

  void validate() const {
    if (rows.size() != cols.size()) throw DomainError("minor selection is not square");
    if (rows.empty()) throw DomainError("minor selection is empty");
    for (const auto* v : {&rows, &cols}) {
      for (std::size_t i = 1; i < v->size(); ++i) {
        if ((*v)[i] <= (*v)[i - 1]) throw DomainError("minor indices must be strictly increasing");
      }
    }
  }
};

/// det of an integer matrix by fraction-free (Bareiss) elimination with
/// row pivoting.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k];
        mpz_submul(t.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// det of a rational matrix by Gaussian elimination.
inline BigRat gaussian_determinant(std::vector<std::vector<BigRat>> m) {
  const std::size_t n = m.size();
  BigRat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && m[r][k] == 0) ++r;
    if (r == n) return 0;
    if (r != k) {
      std::swap(m[k], m[r]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      BigRat f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

/// Exact determinant of the selected sub-matrix of the Toeplitz matrix.
template <class T>
BigRat toeplitz_minor(const ToeplitzSeq<T>& seq, const MinorSpec& spec) {
  spec.validate();
  const std::size_t n = spec.rows.size();
  std::vector<std::vector<T>> m(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = seq.entry(spec.rows[i], spec.cols[j]);
  }
  if constexpr (std::is_same_v<T, BigInt>) {
    return BigRat(bareiss_determinant(std::move(m)));
  } else {
    return gaussian_determinant(std::move(m));
  }
}

/// A negative contiguous minor: rows row_start .. row_start + order - 1 and
/// columns col_start .. col_start + order - 1 (0-based).
struct MinorWitness {
  std::size_t order = 0;
  std::size_t row_start = 0;
  std::size_t col_start = 0;
  BigRat determinant;
};

struct PFVerdict {
  bool is_pf = false;
  bool real_rooted = false;  // Sturm cross-check; equals is_pf
  std::optional<MinorWitness> witness;
  bool witness_search_exhausted = false;
};

struct PFSearchLimits {
  std::size_t max_order = 32;
  std::size_t max_shift = 8;
};

/// Decides PF by real-rootedness. When the sequence is not PF, contiguous
/// windows are scanned by order ascending, then row shift (row_start -
/// col_start) ascending; the first negative minor is the witness. For this
/// lower-triangular Toeplitz matrix a contiguous window is determined by its
/// order and shift, so columns always start at 0.
template <class T>
PFVerdict pf_test(const ToeplitzSeq<T>& seq, const PFSearchLimits& limits = {}) {
  ExactPoly gen = seq.generating_polynomial();
  if (gen.is_zero()) throw DomainError("pf_test: the zero sequence has no generating polynomial");
  PFVerdict v;
  v.real_rooted = is_real_rooted(gen);
  v.is_pf = v.real_rooted;
  if (v.is_pf) return v;
  for (std::size_t order = 1; order <= limits.max_order; ++order) {
    for (std::size_t shift = 0; shift <= limits.max_shift; ++shift) {
      BigRat d = toeplitz_minor(seq, MinorSpec::contiguous(order, shift, 0));
      if (d < 0) {
        v.witness = MinorWitness{order, shift, 0, d};
        return v;
      }
    }
  }
  v.witness_search_exhausted = true;
  return v;
}

}  // namespace darcais
