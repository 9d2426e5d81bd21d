#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "support.hpp"

using namespace deconn;
using namespace testing_support;

TEST(PairwiseGen, RangeOneAlwaysZero) {
  PairwiseGen g = PairwiseGen::from_seed(42, 1, 20);
  for (auto v : g.values()) EXPECT_EQ(v, 0u);
}

TEST(PairwiseGen, ZeroRangeRejected) { EXPECT_THROW(PairwiseGen::from_seed(1, 0, 3), std::invalid_argument); }

TEST(PairwiseGen, ValuesInRange) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PairwiseGen g = PairwiseGen::from_seed(seed, 37, 100);
    EXPECT_TRUE(is_prime(g.prime()));
    EXPECT_GE(g.prime(), 37u);
    for (auto v : g.values()) EXPECT_LT(v, 37u);
  }
}

// Prime 5, m = 5: over the 20 seeds with a != 0, each ordered pair of distinct
// values appears exactly once for any fixed j != k, and each value appears
// equally often.
TEST(PairwiseGen, ExhaustiveFiveRestrictedToNonzeroSlope) {
  const std::uint64_t P = 5;
  for (std::uint64_t j = 0; j < P; ++j)
    for (std::uint64_t k = 0; k < P; ++k) {
      if (j == k) continue;
      std::map<std::pair<std::uint64_t, std::uint64_t>, int> joint;
      std::map<std::uint64_t, int> marginal;
      for (std::uint64_t a = 1; a < P; ++a)
        for (std::uint64_t b = 0; b < P; ++b) {
          PairwiseGen g(P, a, b, P, P);
          ++joint[{g(j), g(k)}];
          ++marginal[g(j)];
        }
      EXPECT_EQ(joint.size(), P * (P - 1));
      for (auto& [xy, cnt] : joint) {
        EXPECT_NE(xy.first, xy.second);
        EXPECT_EQ(cnt, 1);
      }
      for (auto& [x, cnt] : marginal) EXPECT_EQ(cnt, static_cast<int>(P - 1));
    }
}

// Over all P^2 seeds the pair is exactly uniform; with m < P the reduced pair
// is exactly the product of its marginals.
TEST(PairwiseGen, ExhaustiveJointLawUpToThirteen) {
  for (std::uint64_t P : {2, 3, 5, 7, 11, 13}) {
    for (std::uint64_t m = 1; m <= P; ++m) {
      for (std::uint64_t j = 0; j < P; ++j)
        for (std::uint64_t k = j + 1; k < P; ++k) {
          std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
          std::map<std::uint64_t, std::uint64_t> mj, mk;
          for (std::uint64_t a = 0; a < P; ++a)
            for (std::uint64_t b = 0; b < P; ++b) {
              PairwiseGen g(P, a, b, m, P);
              ++joint[{g(j), g(k)}];
              ++mj[g(j)];
              ++mk[g(k)];
            }
          for (std::uint64_t x = 0; x < m; ++x)
            for (std::uint64_t y = 0; y < m; ++y) {
              std::uint64_t c = joint[std::make_pair(x, y)];
              ASSERT_EQ(c * P * P, mj[x] * mk[y]) << "P=" << P << " m=" << m;
            }
          if (m == P) {
            for (auto& [xy, cnt] : joint) ASSERT_EQ(cnt, 1u);
          }
        }
    }
  }
}

TEST(PairwiseGen, LevelStreamsDiffer) {
  MasterSeed ms(7);
  std::set<std::uint64_t> seeds;
  for (int i = 1; i <= 40; ++i) seeds.insert(ms.derive(Stream::kLevelSample, i));
  EXPECT_EQ(seeds.size(), 40u);
  EXPECT_NE(ms.derive(Stream::kLevelSample, 1), ms.derive(Stream::kBucket, 1));
}

TEST(BernoulliMask, FullProbabilityKeepsAlive) {
  DynamicGraph g = path(10);
  g.erase(3);
  SubgraphMask m = bernoulli_mask(5, g, 1.0);
  EXPECT_EQ(m.count(), 8);
  EXPECT_FALSE(m.test(3));
  EXPECT_THROW(bernoulli_mask(5, g, 0.0), std::invalid_argument);
  EXPECT_THROW(bernoulli_mask(5, g, 1.5), std::invalid_argument);
}

TEST(BernoulliMask, ConcentrationAndDeterminism) {
  DynamicGraph g = gen::gnm(200, 10000, 3);
  for (double q : {0.01, 0.1, 0.5}) {
    SubgraphMask a = bernoulli_mask(99, g, q), b = bernoulli_mask(99, g, q);
    EXPECT_TRUE(a == b);
    double mean = q * 10000, sd = std::sqrt(10000 * q * (1 - q));
    EXPECT_LT(std::abs(a.count() - mean), 5 * sd) << q;
  }
}

TEST(Fingerprint, SelfXorIsZeroAndLengthExact) {
  for (int gamma = 1; gamma <= 4; ++gamma) {
    for (int n : {2, 5, 64, 1000, 1 << 20}) {
      Fingerprint f = fingerprint(17, 123, gamma, n);
      EXPECT_EQ(f.bits, gamma * std::max(1, ceil_log2(n)));
      EXPECT_TRUE((f ^ f).is_zero());
      // No bit beyond the declared length is set.
      for (int w = 0; w < kMaxFingerprintWords; ++w) {
        int lo = 64 * w;
        if (lo >= f.bits) {
          EXPECT_EQ(f.words[w], 0u);
        } else if (f.bits - lo < 64) {
          EXPECT_EQ(f.words[w] >> (f.bits - lo), 0u);
        }
      }
    }
  }
  EXPECT_TRUE(fingerprint(3, 9, 2, 64) == fingerprint(3, 9, 2, 64));
}

TEST(Fingerprint, CollisionRateWithinTwiceUniform) {
  // n = 8, gamma = 1: 3-bit fingerprints, collision chance 1/8 per pair.
  const int pairs = 1000000;
  int collisions = 0;
  for (int i = 0; i < pairs; ++i)
    if (fingerprint(77, 2 * i, 1, 8) == fingerprint(77, 2 * i + 1, 1, 8)) ++collisions;
  EXPECT_LE(collisions, 2.0 * pairs / 8);
  EXPECT_GE(collisions, 0.5 * pairs / 8);
}

TEST(CounterRng, UniformShuffleDeterministic) {
  CounterRng a(5), b(5);
  std::vector<int> x(50), y(50);
  for (int i = 0; i < 50; ++i) x[i] = y[i] = i;
  a.shuffle(x);
  b.shuffle(y);
  EXPECT_EQ(x, y);
  std::sort(x.begin(), x.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(x[i], i);
  CounterRng c(1);
  std::vector<int> hist(6, 0);
  for (int i = 0; i < 60000; ++i) ++hist[c.uniform(6)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(CeilLog2, SmallValues) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(64), 6);
  EXPECT_EQ(ceil_log2(65), 7);
}
