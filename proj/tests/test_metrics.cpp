#include <gtest/gtest.h>

#include <cmath>

#include "dce/metrics.hpp"
#include "oracles.hpp"

namespace {

using dce::cplx;
using dce::CVector;

dce::AlgorithmTrace constant_trace(double power, std::size_t runs, std::size_t iters, std::size_t nodes) {
  dce::AlgorithmTrace t;
  t.error_power.assign(runs, std::vector<double>(iters * nodes, power));
  t.diverged.assign(runs, false);
  return t;
}

TEST(MseCurve, UnitErrorsAreZeroDb) {
  const auto c = dce::mse_curve(constant_trace(1.0, 3, 5, 4), 4, 5);
  ASSERT_EQ(c.mse_db.size(), 5u);
  for (double v : c.mse_db) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_EQ(c.runs_aggregated, 3u);
}

TEST(MseCurve, TenthMagnitudeIsMinusTwentyDb) {
  const auto c = dce::mse_curve(constant_trace(0.01, 2, 3, 2), 2, 3);
  for (double v : c.mse_db) EXPECT_NEAR(v, -20.0, 1e-12);
}

TEST(MseCurve, MatchesNaiveReaggregationAndSkipsDiverged) {
  dce::Engine rng(1);
  const std::size_t runs = 4, iters = 6, nodes = 3;
  dce::AlgorithmTrace t;
  t.diverged = {false, true, false, false};
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (std::size_t r = 0; r < runs; ++r) {
    std::vector<double> p(iters * nodes);
    for (auto& v : p) v = unif(rng);
    t.error_power.push_back(p);
  }
  const auto c = dce::mse_curve(t, nodes, iters);
  EXPECT_EQ(c.runs_aggregated, 3u);
  for (std::size_t i = 0; i < iters; ++i) {
    double sum = 0.0;
    for (std::size_t r : {0u, 2u, 3u})
      for (std::size_t k = 0; k < nodes; ++k) sum += t.error_power[r][i * nodes + k];
    EXPECT_NEAR(c.mse_db[i], 10.0 * std::log10(sum / 9.0), 1e-10);
  }
  // Permuting runs and nodes leaves the curve unchanged.
  dce::AlgorithmTrace p = t;
  std::swap(p.error_power[0], p.error_power[3]);
  std::swap(p.diverged[0], p.diverged[3]);
  for (auto& run : p.error_power)
    for (std::size_t i = 0; i < iters; ++i) std::swap(run[i * nodes], run[i * nodes + 2]);
  const auto c2 = dce::mse_curve(p, nodes, iters);
  for (std::size_t i = 0; i < iters; ++i) EXPECT_NEAR(c2.mse_db[i], c.mse_db[i], 1e-12);
}

TEST(MseCurve, EmptyTraceRejected) {
  dce::AlgorithmTrace t;
  EXPECT_THROW(dce::mse_curve(t, 2, 3), dce::InvalidArgument);
  auto all_div = constant_trace(1.0, 2, 3, 2);
  all_div.diverged = {true, true};
  EXPECT_THROW(dce::mse_curve(all_div, 2, 3), dce::InvalidArgument);
}

TEST(SteadyState, AveragesInLinearDomain) {
  const std::vector<double> curve{0.0, 0.0, -10.0, -20.0};
  EXPECT_NEAR(dce::steady_state_db(curve, 2), 10.0 * std::log10((0.1 + 0.01) / 2.0), 1e-12);
  std::vector<double> power{1.0, 1.0, 0.1, 0.1, 0.01, 0.01};
  EXPECT_NEAR(dce::run_steady_state_db(power, 2, 3, 2), 10.0 * std::log10(0.055), 1e-12);
}

TEST(Msd, Basics) {
  dce::Engine rng(2);
  const auto w = dce::generate_ground_truth(10, 3, rng);
  EXPECT_EQ(dce::msd(w.coeffs, w), 0.0);
  EXPECT_NEAR(dce::msd(CVector::Zero(10), w), w.coeffs.squaredNorm(), 1e-15);
  for (int t = 0; t < 20; ++t) {
    CVector est(10);
    for (Eigen::Index j = 0; j < 10; ++j) est(j) = dce::complex_gaussian(rng, 1.0);
    double naive = 0.0;
    for (Eigen::Index j = 0; j < 10; ++j) {
      const double dr = w.coeffs(j).real() - est(j).real();
      const double di = w.coeffs(j).imag() - est(j).imag();
      naive += dr * dr + di * di;
    }
    EXPECT_NEAR(dce::msd(est, w), naive, 1e-12);
  }
  EXPECT_THROW(dce::msd(CVector::Zero(9), w), dce::DimensionMismatch);
}

TEST(Quantize, FineResolutionIsNearlyLossless) {
  dce::Engine rng(3);
  const dce::QuantizerSpec spec{32, 1.0};
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CVector v(100);
  for (Eigen::Index j = 0; j < 100; ++j) v(j) = cplx{unif(rng), unif(rng)};
  const CVector q = dce::quantize(v, spec);
  for (Eigen::Index j = 0; j < 100; ++j) {
    EXPECT_LE(std::abs(q(j).real() - v(j).real()), 2.0 * std::ldexp(1.0, -15));
    EXPECT_LE(std::abs(q(j).imag() - v(j).imag()), 2.0 * std::ldexp(1.0, -15));
  }
}

TEST(Quantize, SaturatesToEndCells) {
  const dce::QuantizerSpec spec{4, 1.0};  // two bits per part: +-0.25, +-0.75
  CVector v(2);
  v << cplx{5.0, -7.0}, cplx{-1.0, 1.0};
  const CVector q = dce::quantize(v, spec);
  EXPECT_EQ(q(0), (cplx{0.75, -0.75}));
  EXPECT_EQ(q(1), (cplx{-0.75, 0.75}));
}

TEST(Quantize, TwoBitLevels) {
  CVector v(1);
  v << cplx{0.3, -0.6};
  const CVector q = dce::quantize(v, dce::QuantizerSpec{4, 1.0});
  EXPECT_DOUBLE_EQ(q(0).real(), 0.25);
  EXPECT_DOUBLE_EQ(q(0).imag(), -0.75);
}

TEST(Quantize, OddBitsGiveImaginaryPartTheExtraBit) {
  CVector v(1);
  v << cplx{0.3, 0.3};
  const CVector q = dce::quantize(v, dce::QuantizerSpec{3, 1.0});
  EXPECT_DOUBLE_EQ(q(0).real(), 0.5);   // one bit: +-0.5
  EXPECT_DOUBLE_EQ(q(0).imag(), 0.25);  // two bits
}

TEST(Quantize, MatchesEnumeratedLevelsAndHalfStepBound) {
  dce::Engine rng(4);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (unsigned bits = 1; bits <= 12; ++bits) {
    const double clip = 0.5 + bits * 0.25;
    const dce::QuantizerSpec spec{bits, clip};
    CVector v(200);
    for (Eigen::Index j = 0; j < 200; ++j) v(j) = cplx{unif(rng), unif(rng)};
    const CVector q = dce::quantize(v, spec);
    const unsigned re_bits = bits / 2, im_bits = bits - bits / 2;
    for (Eigen::Index j = 0; j < 200; ++j) {
      EXPECT_DOUBLE_EQ(q(j).imag(), oracle::midrise_nearest(v(j).imag(), im_bits, clip));
      if (re_bits > 0) {
        EXPECT_DOUBLE_EQ(q(j).real(), oracle::midrise_nearest(v(j).real(), re_bits, clip));
      }
      if (std::abs(v(j).imag()) <= clip) {
        EXPECT_LE(std::abs(q(j).imag() - v(j).imag()), clip * std::ldexp(1.0, -static_cast<int>(im_bits)) + 1e-15);
      }
    }
  }
  EXPECT_THROW(dce::quantize(CVector::Zero(1), dce::QuantizerSpec{0, 1.0}), dce::InvalidArgument);
}

TEST(BitsPerRound, CompressedVersusFull) {
  const dce::QuantizerSpec spec{8, 1.0};
  EXPECT_EQ(dce::bits_per_round(dce::AlgorithmKind::DCE, 50, 10, spec), 80u);
  EXPECT_EQ(dce::bits_per_round(dce::AlgorithmKind::DCEOptimizedPhi, 50, 10, spec), 80u);
  EXPECT_EQ(dce::bits_per_round(dce::AlgorithmKind::DiffusionNLMS, 50, 10, spec), 400u);
  EXPECT_EQ(dce::bits_per_round(dce::AlgorithmKind::SparseDiffusionNLMS, 50, 10, spec), 400u);
  EXPECT_THROW(dce::bits_per_round(dce::AlgorithmKind::DCE, 50, 10, dce::QuantizerSpec{0, 1.0}),
               dce::InvalidArgument);
  for (unsigned b = 1; b <= 32; ++b) {
    const dce::QuantizerSpec s{b, 1.0};
    EXPECT_EQ(dce::bits_per_round(dce::AlgorithmKind::DCE, 50, 10, s) * 50,
              dce::bits_per_round(dce::AlgorithmKind::DiffusionNLMS, 50, 10, s) * 10);
  }
}

}  // namespace
