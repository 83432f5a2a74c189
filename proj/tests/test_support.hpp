#pragma once

// Random generators and brute-force oracles shared by the test suites. None
// of the oracles call into the library code path they check.

#include "darcais/exactnum.hpp"
#include "darcais/partitions.hpp"
#include "darcais/polynomial.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace darcais::testing {

inline constexpr int kPropertyCases = 200;

inline BigRat random_rational(std::mt19937_64& rng, int max_abs = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-max_abs, max_abs);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_rational(num(rng), den(rng));
}

inline ExactPoly random_poly(std::mt19937_64& rng, int max_degree = 6) {
  std::uniform_int_distribution<int> deg(-1, max_degree);
  int d = deg(rng);
  std::vector<BigRat> v;
  for (int i = 0; i <= d; ++i) v.push_back(random_rational(rng));
  return ExactPoly(std::move(v));
}

inline IntPoly random_int_poly(std::mt19937_64& rng, std::size_t size, int max_abs) {
  std::uniform_int_distribution<int> c(-max_abs, max_abs);
  std::vector<BigInt> v(size);
  for (auto& x : v) x = c(rng);
  return IntPoly(std::move(v));
}

/// A uniformly random composition of n, sorted into a partition.
inline Partition random_partition(std::mt19937_64& rng, unsigned n) {
  std::vector<unsigned> parts;
  std::bernoulli_distribution cut(0.4);
  unsigned run = 1;
  for (unsigned i = 1; i < n; ++i) {
    if (cut(rng)) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  if (n > 0) parts.push_back(run);
  std::sort(parts.rbegin(), parts.rend());
  return Partition(parts);
}

/// Hooks by counting diagram cells directly on a boolean grid.
inline std::vector<unsigned> grid_hooks(const std::vector<unsigned>& parts) {
  const std::size_t rows = parts.size();
  const std::size_t cols = parts.empty() ? 0 : parts[0];
  std::vector<std::vector<bool>> grid(rows, std::vector<bool>(cols, false));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < parts[i]; ++j) grid[i][j] = true;
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < parts[i]; ++j) {
      unsigned arm = 0, leg = 0;
      for (std::size_t c = j + 1; c < cols && grid[i][c]; ++c) ++arm;
      for (std::size_t r = i + 1; r < rows && grid[r][j]; ++r) ++leg;
      out.push_back(arm + leg + 1);
    }
  }
  return out;
}

/// Determinant by cofactor expansion along the first row.
inline BigInt cofactor_determinant(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    BigInt term = m[0][c] * cofactor_determinant(sub);
    if (c % 2) det -= term; else det += term;
  }
  return det;
}

/// Coefficients of prod_{m=1}^n (1 - q^m)^(-1) up to q^n (partition counts),
/// by repeated geometric-series multiplication.
inline std::vector<BigInt> partition_series(unsigned n) {
  std::vector<BigInt> s(n + 1, 0);
  s[0] = 1;
  for (unsigned m = 1; m <= n; ++m)
    for (unsigned i = m; i <= n; ++i) s[i] += s[i - m];
  return s;
}

}  // namespace darcais::testing
