#include <cmath>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "qspe/numerics.hpp"

using namespace qspe;

TEST(Numerics, FrobeniusDistanceBasics) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(frobenius_distance(id, id), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_distance(id, ComplexMatrix::Zero(2, 2)), std::sqrt(2.0));
  EXPECT_THROW(frobenius_distance(id, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST(Numerics, UnitarityDefect) {
  EXPECT_EQ(unitarity_defect(ComplexMatrix::Identity(4, 4)), 0.0);
  EXPECT_TRUE(std::isinf(unitarity_defect(ComplexMatrix::Zero(2, 3))));
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_DOUBLE_EQ(unitarity_defect(m), 3.0);
  EXPECT_FALSE(is_unitary(m));
}

TEST(Numerics, HaarRejectsZeroDimension) {
  EXPECT_THROW(haar_unitary(0, RngStream{1, 0}), std::invalid_argument);
}

TEST(Numerics, HaarOneByOneHasUnitModulus) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = haar_unitary(1, RngStream{seed, 0});
    ASSERT_EQ(u.rows(), 1);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
  }
}

TEST(Numerics, HaarIsDeterministic) {
  const auto a = haar_unitary(4, RngStream{7, 0});
  const auto b = haar_unitary(4, RngStream{7, 0});
  for (Eigen::Index i = 0; i < 16; ++i) {
    EXPECT_EQ(a.data()[i], b.data()[i]);
  }
  const auto c = haar_unitary(4, RngStream{7, 1});
  EXPECT_GT(frobenius_distance(a, c), 0.1);
}

TEST(Numerics, HaarIsUnitaryAcrossDimensions) {
  for (std::size_t dim = 1; dim <= 64; ++dim) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto u = haar_unitary(dim, RngStream{seed, dim});
      ASSERT_LT(unitarity_defect(u), kUnitaryTolerance) << "dim " << dim << " seed " << seed;
    }
  }
}

// E|U_ij|^2 = 1/d under the Haar measure.
TEST(Numerics, HaarFirstMoment) {
  constexpr std::size_t d = 8;
  constexpr std::size_t samples = 100000;
  Eigen::ArrayXXd sum = Eigen::ArrayXXd::Zero(d, d);
  Eigen::ArrayXXd sum_sq = Eigen::ArrayXXd::Zero(d, d);
  const RngStream base{2024, 0};
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::ArrayXXd p = haar_unitary(d, base.substream(s)).cwiseAbs2().array();
    sum += p;
    sum_sq += p * p;
  }
  const double n = samples;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double mean = sum(i, j) / n;
      const double var = sum_sq(i, j) / n - mean * mean;
      const double se = std::sqrt(var / n);
      EXPECT_NEAR(mean, 1.0 / d, 3.0 * se + 1e-15) << "entry " << i << "," << j;
    }
  }
}

// For Haar U(2), |U_00|^2 is uniform on [0, 1] (second moment 1/3) and
// arg U_00 is uniform on the circle.
TEST(Numerics, HaarTwoByTwoMarginals) {
  constexpr std::size_t samples = 100000;
  double m2 = 0.0, cos_sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto u = haar_unitary(2, RngStream{5, s});
    const double p = std::norm(u(0, 0));
    m2 += p * p;
    cos_sum += std::cos(std::arg(u(0, 0)));
  }
  EXPECT_NEAR(m2 / samples, 1.0 / 3.0, 3e-3);
  EXPECT_NEAR(cos_sum / samples, 0.0, 1e-2);
}

TEST(Numerics, RngUniformAndNormalMoments) {
  Rng rng(RngStream{11, 3});
  constexpr int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.003);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
}

TEST(Numerics, SubstreamsAreDistinct) {
  const RngStream base{42, 9};
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rng(base.substream(k));
    firsts.insert(rng.next_u64());
  }
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_EQ(base.substream(3), base.substream(3));
}

TEST(Numerics, ParallelForCoversEveryIndexOnce) {
  for (unsigned threads : {1u, 2u, 4u, 7u}) {
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(Numerics, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 63) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
