#include "darcais/darcais.hpp"
#include "darcais/pf_tnn.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace darcais {
namespace {

using testing::kPropertyCases;

ToeplitzSeq<BigInt> seq(std::initializer_list<long> v) {
  std::vector<BigInt> a;
  for (long x : v) a.emplace_back(x);
  return ToeplitzSeq<BigInt>(std::move(a));
}

std::vector<BigInt> r_coefficients() {
  IntPoly a = shared_table().scaled(10);
  IntPoly r = *divide_exact(a, IntPoly({BigInt(0), BigInt(1), BigInt(1)}));
  return {r.coeffs().begin(), r.coeffs().end()};
}

std::vector<std::vector<BigInt>> dense_minor(const ToeplitzSeq<BigInt>& s, const MinorSpec& spec) {
  std::vector<std::vector<BigInt>> m(spec.rows.size(), std::vector<BigInt>(spec.cols.size()));
  for (std::size_t i = 0; i < spec.rows.size(); ++i)
    for (std::size_t j = 0; j < spec.cols.size(); ++j) m[i][j] = s.entry(spec.rows[i], spec.cols[j]);
  return m;
}

MinorSpec random_spec(std::mt19937_64& rng, std::size_t order, std::size_t span) {
  auto pick = [&] {
    std::vector<std::size_t> all(span);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(order);
    std::sort(all.begin(), all.end());
    return all;
  };
  return MinorSpec{pick(), pick()};
}

TEST(Toeplitz, EntriesAreLowerTriangular) {
  auto s = seq({2, 2, 1});
  EXPECT_EQ(s.entry(0, 0), 2);
  EXPECT_EQ(s.entry(2, 0), 1);
  EXPECT_EQ(s.entry(0, 1), 0);
  EXPECT_EQ(s.entry(5, 0), 0);
  EXPECT_THROW(seq({1, -1}), DomainError);
}

TEST(Toeplitz, TwoTwoOneMinor) {
  auto s = seq({2, 2, 1});
  MinorSpec spec = MinorSpec::contiguous(4, 1, 0);
  EXPECT_EQ(toeplitz_minor(s, spec), -4);
  EXPECT_EQ(testing::cofactor_determinant(dense_minor(s, spec)), -4);
}

TEST(PF, TwoTwoOneIsNotPF) {
  PFVerdict v = pf_test(seq({2, 2, 1}));
  EXPECT_FALSE(v.is_pf);
  EXPECT_FALSE(v.real_rooted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->order, 4U);
  EXPECT_EQ(v.witness->row_start, 1U);
  EXPECT_EQ(v.witness->col_start, 0U);
  EXPECT_EQ(v.witness->determinant, -4);
}

TEST(PF, RealRootedSequencesArePF) {
  EXPECT_TRUE(pf_test(seq({1, 2, 1})).is_pf);
  EXPECT_TRUE(pf_test(seq({1, 3, 3, 1})).is_pf);
  EXPECT_TRUE(pf_test(seq({5})).is_pf);
  EXPECT_THROW(pf_test(seq({0, 0})), DomainError);
}

TEST(PF, RCoefficientsFailAtOrderTwentySix) {
  auto r = r_coefficients();
  PFVerdict v = pf_test(ToeplitzSeq<BigInt>(r));
  EXPECT_FALSE(v.is_pf);
  EXPECT_FALSE(v.real_rooted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->order, 26U);
  EXPECT_EQ(v.witness->row_start, 3U);
  EXPECT_EQ(v.witness->col_start, 0U);
  EXPECT_LT(v.witness->determinant, 0);
  // Independent evaluation of the same window over Q.
  std::vector<BigRat> rq(r.begin(), r.end());
  EXPECT_EQ(toeplitz_minor(ToeplitzSeq<BigRat>(rq), MinorSpec::contiguous(26, 3, 0)), v.witness->determinant);
}

TEST(PF, SearchLimitsCanExhaust) {
  PFSearchLimits tight{3, 8};
  PFVerdict v = pf_test(seq({2, 2, 1}), tight);
  EXPECT_FALSE(v.is_pf);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_TRUE(v.witness_search_exhausted);
}

TEST(PF, BinomialRowMinorsNonnegative) {
  auto s = seq({1, 1});
  for (std::size_t order = 1; order <= 12; ++order)
    for (std::size_t shift = 0; shift <= 4; ++shift)
      EXPECT_GE(toeplitz_minor(s, MinorSpec::contiguous(order, shift, 0)), 0);
}

TEST(Minor, SpecValidation) {
  auto s = seq({1, 2});
  EXPECT_THROW(toeplitz_minor(s, MinorSpec{{0, 1}, {0}}), DomainError);
  EXPECT_THROW(toeplitz_minor(s, MinorSpec{{1, 0}, {0, 1}}), DomainError);
  EXPECT_THROW(toeplitz_minor(s, MinorSpec{}), DomainError);
}

TEST(MinorProperty, BareissMatchesCofactor) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(0, 6), len(1, 6), ord(1, 6);
  for (int t = 0; t < kPropertyCases; ++t) {
    std::vector<BigInt> a(len(rng));
    for (auto& x : a) x = coef(rng);
    ToeplitzSeq<BigInt> s(a);
    std::size_t order = ord(rng);
    MinorSpec spec = random_spec(rng, order, order + 4);
    EXPECT_EQ(toeplitz_minor(s, spec), BigRat(testing::cofactor_determinant(dense_minor(s, spec))));
  }
}

TEST(MinorProperty, BareissMatchesCofactorOnDenseMatrices) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> coef(-5, 5), ord(1, 6);
  for (int t = 0; t < kPropertyCases; ++t) {
    std::size_t n = ord(rng);
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    for (auto& row : m)
      for (auto& x : row) x = (rng() % 3 == 0) ? 0 : coef(rng);
    EXPECT_EQ(bareiss_determinant(m), testing::cofactor_determinant(m));
  }
}

TEST(MinorProperty, SignInvariantUnderPositiveScaling) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coef(0, 9), len(1, 7), ord(1, 7);
  for (int t = 0; t < kPropertyCases; ++t) {
    std::vector<BigInt> a(len(rng));
    for (auto& x : a) x = coef(rng);
    std::vector<BigInt> b = a;
    for (auto& x : b) x *= 3;
    std::size_t order = ord(rng);
    MinorSpec spec = random_spec(rng, order, order + 3);
    BigRat da = toeplitz_minor(ToeplitzSeq<BigInt>(a), spec);
    BigRat db = toeplitz_minor(ToeplitzSeq<BigInt>(b), spec);
    EXPECT_EQ(sgn(da), sgn(db));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 3, order);
    EXPECT_EQ(db, da * BigRat(scale));
  }
}

TEST(PFProperty, VerdictMatchesSturmOnRandomSequences) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> coef(0, 8), len(2, 6);
  for (int t = 0; t < kPropertyCases; ++t) {
    std::vector<BigInt> a(len(rng));
    for (auto& x : a) x = coef(rng);
    a.back() += 1;
    PFVerdict v = pf_test(ToeplitzSeq<BigInt>(a));
    EXPECT_EQ(v.is_pf, v.real_rooted);
    if (!v.is_pf && v.witness) EXPECT_LT(v.witness->determinant, 0);
  }
}

TEST(PFProperty, ProductsOfLinearFactorsArePF) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> root(0, 6), deg(1, 5);
  for (int t = 0; t < kPropertyCases; ++t) {
    IntPoly p = IntPoly::constant(1);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) p = p * IntPoly({BigInt(root(rng)), BigInt(1)});
    PFVerdict v = pf_test(ToeplitzSeq<BigInt>({p.coeffs().begin(), p.coeffs().end()}));
    EXPECT_TRUE(v.is_pf);
    for (std::size_t order = 1; order <= 5; ++order) {
      EXPECT_GE(toeplitz_minor(ToeplitzSeq<BigInt>({p.coeffs().begin(), p.coeffs().end()}),
                               random_spec(rng, order, order + 3)),
                0);
    }
  }
}

}  // namespace
}  // namespace darcais
