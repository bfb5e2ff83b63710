#include <gtest/gtest.h>

#include <set>

#include "dce/signal.hpp"
#include "oracles.hpp"

namespace {

using dce::cplx;
using dce::CVector;

dce::CVector random_vector(dce::Engine& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) v(j) = dce::complex_gaussian(rng, 1.0);
  return v;
}

TEST(GroundTruth, ZeroSparsityIsZeroVector) {
  dce::Engine rng(1);
  const auto w = dce::generate_ground_truth(50, 0, rng);
  EXPECT_EQ(w.size(), 50);
  EXPECT_TRUE(w.support.empty());
  EXPECT_EQ(w.coeffs.squaredNorm(), 0.0);
}

TEST(GroundTruth, ExactlySNonzeros) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    dce::Engine rng(seed);
    const auto w = dce::generate_ground_truth(50, 3, rng);
    ASSERT_EQ(w.support.size(), 3u);
    std::set<std::size_t> uniq(w.support.begin(), w.support.end());
    EXPECT_EQ(uniq.size(), 3u);
    int nonzero = 0;
    for (Eigen::Index j = 0; j < 50; ++j) {
      const bool on = uniq.count(static_cast<std::size_t>(j)) > 0;
      EXPECT_EQ(w.coeffs(j) != cplx{}, on);
      nonzero += on;
    }
    EXPECT_EQ(nonzero, 3);
  }
}

TEST(GroundTruth, FullSupport) {
  dce::Engine rng(4);
  const auto w = dce::generate_ground_truth(4, 4, rng);
  EXPECT_EQ(w.support, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(GroundTruth, UnitAveragePowerAndRealMode) {
  dce::Engine rng(5);
  double power = 0.0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const auto w = dce::generate_ground_truth(20, 5, rng, /*real_valued=*/t % 2 == 1);
    power += w.coeffs.squaredNorm() / 5.0;
    if (t % 2 == 1) {
      EXPECT_EQ(w.coeffs.imag().squaredNorm(), 0.0);
    }
  }
  EXPECT_NEAR(power / trials, 1.0, 0.05);
}

TEST(GroundTruth, RejectsSparsityAboveLength) {
  dce::Engine rng(0);
  EXPECT_THROW(dce::generate_ground_truth(4, 5, rng), dce::InvalidArgument);
}

TEST(Regressor, ShiftsTapLine) {
  dce::Engine rng(9);
  auto s = dce::make_regressor(0, 0.3, 5, rng);
  const CVector before = s.buffer;
  s = dce::regressor_step(std::move(s), rng);
  EXPECT_EQ(s.buffer(0), s.last_scalar);
  for (Eigen::Index j = 1; j < 5; ++j) EXPECT_EQ(s.buffer(j), before(j - 1));
}

struct Moments {
  double variance;
  double lag1;
};

Moments ar_moments(double alpha, std::uint64_t seed) {
  dce::Engine rng(seed);
  auto s = dce::make_regressor(0, alpha, 1, rng);
  const int n = 100000;
  double pow = 0.0;
  cplx corr{};
  cplx prev = s.last_scalar;
  for (int i = 0; i < n; ++i) {
    s = dce::regressor_step(std::move(s), rng);
    pow += std::norm(s.last_scalar);
    corr += s.last_scalar * std::conj(prev);
    prev = s.last_scalar;
  }
  return {pow / n, (corr / static_cast<double>(n)).real() / (pow / n)};
}

TEST(Regressor, WhiteWhenAlphaZero) {
  const auto m = ar_moments(0.0, 21);
  EXPECT_NEAR(m.variance, 1.0, 0.02);
  EXPECT_NEAR(m.lag1, 0.0, 0.02);
}

TEST(Regressor, UnitVarianceAtHalfCorrelation) {
  EXPECT_NEAR(ar_moments(0.5, 22).variance, 1.0, 0.02);
}

TEST(Regressor, Lag1CorrelationMatchesAlpha) {
  const auto m = ar_moments(0.95, 23);
  EXPECT_NEAR(m.lag1, 0.95, 0.02);
  EXPECT_NEAR(m.variance, 1.0, 0.05);
}

TEST(Regressor, RejectsNonStationaryAlpha) {
  dce::Engine rng(0);
  dce::RegressorState s;
  s.alpha = 1.0;
  s.buffer = CVector::Zero(3);
  EXPECT_THROW(dce::regressor_step(s, rng), dce::InvalidArgument);
}

TEST(MeasureFull, UnitVectorPicksFirstTap) {
  dce::Engine rng(1);
  dce::SparseVector w{CVector::Zero(4), {0}};
  w.coeffs(0) = 1.0;
  const CVector x = random_vector(rng, 4);
  EXPECT_EQ(dce::measure_full(w, x, {}), x(0));
}

TEST(MeasureFull, ZeroInputGivesNoise) {
  dce::Engine rng(2);
  const auto w = dce::generate_ground_truth(6, 2, rng);
  const cplx n{0.3, -0.1};
  EXPECT_EQ(dce::measure_full(w, CVector::Zero(6), n), n);
}

TEST(MeasureFull, MatchesNaiveInnerProductAndIsAntilinear) {
  dce::Engine rng(3);
  for (int t = 0; t < 50; ++t) {
    dce::SparseVector w{random_vector(rng, 50), {}};
    const CVector x = random_vector(rng, 50);
    const cplx n = dce::complex_gaussian(rng, 0.01);
    EXPECT_LT(std::abs(dce::measure_full(w, x, n) - (oracle::inner(w.coeffs, x) + n)), 1e-12);
    const cplx c{0.7, -1.3};
    dce::SparseVector scaled{c * w.coeffs, {}};
    const cplx lhs = dce::measure_full(scaled, x, {});
    EXPECT_LT(std::abs(lhs - std::conj(c) * dce::measure_full(w, x, {})), 1e-12);
    const CVector x2 = random_vector(rng, 50);
    EXPECT_LT(std::abs(dce::measure_full(w, x + c * x2, {}) -
                       (dce::measure_full(w, x, {}) + c * dce::measure_full(w, x2, {}))),
              1e-12);
  }
}

TEST(MeasureFull, DimensionMismatch) {
  dce::SparseVector w{CVector::Zero(3), {}};
  EXPECT_THROW(dce::measure_full(w, CVector::Zero(4), {}), dce::DimensionMismatch);
}

TEST(MeasureCompressed, ZeroTruthGivesNoise) {
  dce::Engine rng(4);
  dce::SparseVector w{CVector::Zero(8), {}};
  dce::MeasurementMatrix phi{dce::CMatrix::Random(3, 8)};
  const cplx n{0.01, 0.02};
  EXPECT_EQ(dce::measure_compressed(w, phi, random_vector(rng, 3), n), n);
}

TEST(MeasureCompressed, IdentityMatchesFull) {
  dce::Engine rng(5);
  const auto w = dce::generate_ground_truth(10, 3, rng);
  const CVector x = random_vector(rng, 10);
  const dce::MeasurementMatrix eye{dce::CMatrix::Identity(10, 10)};
  EXPECT_LT(std::abs(dce::measure_compressed(w, eye, x, {0.1, 0.0}) - dce::measure_full(w, x, {0.1, 0.0})),
            1e-14);
}

TEST(MeasureCompressed, MatchesTwoStepOracle) {
  dce::Engine rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto w = dce::generate_ground_truth(50, 3, rng);
    dce::MeasurementMatrix phi{dce::CMatrix(10, 50)};
    for (Eigen::Index r = 0; r < 10; ++r)
      for (Eigen::Index c = 0; c < 50; ++c) phi.entries(r, c) = dce::complex_gaussian(rng, 0.1);
    const CVector xb = random_vector(rng, 10);
    const cplx n = dce::complex_gaussian(rng, 1e-3);
    const CVector target = oracle::matvec(phi.entries, w.coeffs);
    EXPECT_LT(std::abs(dce::measure_compressed(w, phi, xb, n) - (oracle::inner(target, xb) + n)), 1e-12);
  }
  dce::SparseVector w{CVector::Zero(5), {}};
  EXPECT_THROW(dce::measure_compressed(w, dce::MeasurementMatrix{dce::CMatrix::Zero(2, 5)},
                                       CVector::Zero(3), {}),
               dce::DimensionMismatch);
}

}  // namespace
