#include "darcais/partitions.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace darcais {
namespace {

using testing::kPropertyCases;

std::vector<Partition> all_partitions(unsigned n) {
  std::vector<Partition> v;
  for (const Partition& p : enumerate_partitions(n)) v.push_back(p);
  return v;
}

TEST(Partition, Validation) {
  EXPECT_THROW(Partition({2, 3}), DomainError);
  EXPECT_THROW(Partition({2, 0}), DomainError);
  Partition p({7, 3, 2});
  EXPECT_EQ(p.weight(), 12U);
  EXPECT_EQ(p.length(), 3U);
  EXPECT_EQ(to_string(p), "7,3,2");
  EXPECT_EQ(parse_partition("7,3,2"), p);
  EXPECT_EQ(parse_partition(""), Partition{});
  EXPECT_THROW(parse_partition("3,,1"), DomainError);
  EXPECT_THROW(parse_partition("1,3"), DomainError);
  EXPECT_THROW(parse_partition("3,1,"), DomainError);
  EXPECT_THROW(parse_partition("3,-1"), DomainError);
}

TEST(Enumerate, EmptyPartitionOfZero) {
  auto v = all_partitions(0);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].length(), 0U);
}

TEST(Enumerate, FourHasFivePartitions) {
  auto v = all_partitions(4);
  EXPECT_EQ(v.size(), 5U);
  EXPECT_EQ(BigInt(static_cast<unsigned long>(v.size())), testing::partition_series(4)[4]);
  std::vector<Partition> want{Partition({4}), Partition({3, 1}), Partition({2, 2}), Partition({2, 1, 1}),
                              Partition({1, 1, 1, 1})};
  EXPECT_EQ(v, want);
}

TEST(Enumerate, DecreasingLexicographicAndComplete) {
  auto series = testing::partition_series(22);
  for (unsigned n = 0; n <= 22; ++n) {
    auto v = all_partitions(n);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(v.size())), series[n]) << n;
    EXPECT_EQ(BigInt(static_cast<unsigned long>(v.size())), partition_count(n)) << n;
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i - 1], v[i]);
    for (const auto& p : v) EXPECT_EQ(p.weight(), n);
  }
}

TEST(Enumerate, TwelveContainsSevenThreeTwo) {
  auto v = all_partitions(12);
  EXPECT_NE(std::find(v.begin(), v.end(), Partition({7, 3, 2})), v.end());
}

TEST(Enumerate, LargestPartSplitCoversEverything) {
  for (unsigned n = 1; n <= 15; ++n) {
    std::vector<Partition> joined;
    for (unsigned m = 1; m <= n; ++m) {
      for (const Partition& p : PartitionStream::with_largest_part(n, m)) {
        EXPECT_EQ(p.part(1), m);
        joined.push_back(p);
      }
    }
    std::sort(joined.rbegin(), joined.rend());
    EXPECT_EQ(joined, all_partitions(n));
  }
  int count = 0;
  for (const Partition& p : PartitionStream::with_largest_part(5, 6)) {
    (void)p;
    ++count;
  }
  EXPECT_EQ(count, 0);
}

TEST(Hooks, SevenThreeTwo) {
  Partition p({7, 3, 2});
  std::vector<unsigned> want{9, 8, 6, 4, 3, 2, 1, 4, 3, 1, 2, 1};
  EXPECT_EQ(hook_list(p, HookSelector::kFull), want);
  // Cell (2,1) has hook 4 with leg 1 and arm 2.
  auto cs = cells(p);
  auto it = std::find_if(cs.begin(), cs.end(), [](const Cell& c) { return c.row == 2 && c.column == 1; });
  ASSERT_NE(it, cs.end());
  EXPECT_EQ(it->hook(), 4U);
  EXPECT_EQ(it->leg, 1U);
  EXPECT_EQ(it->arm, 2U);
}

TEST(Hooks, TrivialLegsOfConjugateDiagram) {
  // The diagram of (4,3,3,2,1,1)^c = (6,4,3,1) annotated with trivial-leg
  // hooks "21 / 1 / 21 / 1".
  Partition lam({4, 3, 3, 2, 1, 1});
  Partition c = conjugate(lam);
  EXPECT_EQ(c, Partition({6, 4, 3, 1}));
  std::vector<unsigned> want{2, 1, 1, 2, 1, 1};
  EXPECT_EQ(hook_list(c, HookSelector::kTrivialLeg), want);
  HookMultiset m = hooks(c, HookSelector::kTrivialLeg);
  EXPECT_EQ(m.size(), 6U);
  EXPECT_EQ(m.counts.at(1), 4U);
  EXPECT_EQ(m.counts.at(2), 2U);
}

TEST(Hooks, SingleCell) {
  EXPECT_EQ(hook_list(Partition({1}), HookSelector::kFull), std::vector<unsigned>{1});
  EXPECT_EQ(hooks(Partition{}, HookSelector::kFull).size(), 0U);
}

TEST(Hooks, MatchGridCount) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, 1 + rng() % 20);
    EXPECT_EQ(hook_list(p, HookSelector::kFull), testing::grid_hooks(p.parts()));
  }
}

TEST(HooksProperty, SizesAndMaximum) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, 1 + rng() % 25);
    HookMultiset full = hooks(p, HookSelector::kFull);
    EXPECT_EQ(full.size(), p.weight());
    EXPECT_EQ(full.counts.rbegin()->first, p.part(1) + p.length() - 1);
  }
}

TEST(HooksProperty, TrivialLegRowsAreInitialSegments) {
  // Row i contributes exactly 1, 2, ..., lambda_i - lambda_{i+1}.
  std::mt19937_64 rng(3);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, 1 + rng() % 25);
    std::map<unsigned, std::vector<unsigned>> by_row;
    for (const Cell& c : cells(p))
      if (c.leg == 0) by_row[c.row].push_back(c.hook());
    for (unsigned i = 1; i <= p.length(); ++i) {
      auto row = by_row[i];
      std::sort(row.begin(), row.end());
      std::vector<unsigned> want(p.part(i) - p.part(i + 1));
      std::iota(want.begin(), want.end(), 1U);
      EXPECT_EQ(row, want);
    }
  }
}

TEST(HooksProperty, TransposeSwapsArmsAndLegs) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, 1 + rng() % 30);
    EXPECT_EQ(hooks(p, HookSelector::kTrivialLeg).counts, hooks(conjugate(p), HookSelector::kTrivialArm).counts);
    EXPECT_EQ(hooks(p, HookSelector::kFull).counts, hooks(conjugate(p), HookSelector::kFull).counts);
  }
}

TEST(Conjugate, Examples) {
  EXPECT_EQ(conjugate(Partition({5})), Partition({1, 1, 1, 1, 1}));
  EXPECT_EQ(conjugate(Partition{}), Partition{});
}

TEST(ConjugateProperty, InvolutionPreservingWeight) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, rng() % 40);
    Partition c = conjugate(p);
    EXPECT_EQ(c.weight(), p.weight());
    EXPECT_EQ(conjugate(c), p);
  }
}

TEST(Multiplicity, Examples) {
  MultiplicityVector k(Partition({4, 3, 3, 2, 1, 1}));
  EXPECT_EQ(k.size(), 14U);
  EXPECT_EQ(k.k(1), 2U);
  EXPECT_EQ(k.k(2), 1U);
  EXPECT_EQ(k.k(3), 2U);
  EXPECT_EQ(k.k(4), 1U);
  for (unsigned j = 5; j <= 14; ++j) EXPECT_EQ(k.k(j), 0U);
  MultiplicityVector single(Partition({6}));
  EXPECT_EQ(single.k(6), 1U);
  EXPECT_EQ(std::accumulate(single.counts().begin(), single.counts().end(), 0U), 1U);
}

TEST(MultiplicityProperty, WeightAndLength) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < kPropertyCases; ++t) {
    Partition p = testing::random_partition(rng, 1 + rng() % 30);
    MultiplicityVector k(p);
    unsigned weighted = 0, total = 0;
    for (unsigned j = 1; j <= k.size(); ++j) {
      weighted += j * k.k(j);
      total += k.k(j);
    }
    EXPECT_EQ(weighted, p.weight());
    EXPECT_EQ(total, p.length());
  }
}

// All (k_1..k_n) with sum j k_j = n, by direct recursion over j.
void solutions(unsigned n, unsigned j, unsigned rest, std::vector<unsigned>& cur,
               std::set<std::vector<unsigned>>& out) {
  if (j > n) {
    if (rest == 0) out.insert(cur);
    return;
  }
  for (unsigned k = 0; k * j <= rest; ++k) {
    cur[j - 1] = k;
    solutions(n, j + 1, rest - k * j, cur, out);
  }
  cur[j - 1] = 0;
}

TEST(Multiplicity, BijectionExhaustive) {
  for (unsigned n = 1; n <= 12; ++n) {
    std::set<std::vector<unsigned>> image;
    std::size_t count = 0;
    for (const Partition& p : enumerate_partitions(n)) {
      image.insert(MultiplicityVector(p).counts());
      ++count;
    }
    EXPECT_EQ(image.size(), count) << "not injective at n=" << n;
    std::set<std::vector<unsigned>> target;
    std::vector<unsigned> cur(n, 0);
    solutions(n, 1, n, cur, target);
    EXPECT_EQ(image, target) << "not surjective at n=" << n;
  }
}

// Standard fillings counted by trying every permutation.
BigInt brute_force_syt(const Partition& p) {
  const unsigned n = p.weight();
  auto cs = cells(p);
  std::vector<unsigned> fill(n);
  std::iota(fill.begin(), fill.end(), 1U);
  BigInt count = 0;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        bool right = cs[b].row == cs[a].row && cs[b].column == cs[a].column + 1;
        bool below = cs[b].column == cs[a].column && cs[b].row == cs[a].row + 1;
        if ((right || below) && fill[b] <= fill[a]) ok = false;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(fill.begin(), fill.end()));
  return count;
}

TEST(CountSyt, SmallShapes) {
  EXPECT_EQ(count_syt(Partition({1})), 1);
  EXPECT_EQ(count_syt(Partition({2, 1})), 2);
  EXPECT_EQ(brute_force_syt(Partition({2, 1})), 2);
  EXPECT_THROW(count_syt(Partition{}), DomainError);
}

TEST(CountSyt, MatchesBruteForce) {
  for (unsigned n = 1; n <= 7; ++n) {
    for (const Partition& p : enumerate_partitions(n)) EXPECT_EQ(count_syt(p), brute_force_syt(p)) << to_string(p);
  }
}

TEST(CountSyt, SumOfSquaresIsFactorial) {
  for (unsigned n = 1; n <= 8; ++n) {
    BigInt s = 0;
    for (const Partition& p : enumerate_partitions(n)) {
      BigInt f = count_syt(p);
      s += f * f;
    }
    EXPECT_EQ(s, factorial(n)) << n;
  }
}

}  // namespace
}  // namespace darcais
