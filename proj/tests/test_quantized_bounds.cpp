#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mbios/quantized_bounds.hpp"

using namespace mbios;
using namespace mbios::quantized;

namespace {

// Random transition probabilities respecting the pair-dominance
// convention (cells are ordered from most to least reliable).
TransitionProbs random_probs(int d, std::mt19937& rng) {
  const int cells = 1 << d;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd p(cells);
  double total = 0.0;
  for (int i = 0; i < cells / 2; ++i) {
    const double pair_mass = unif(rng) + 0.05;
    const double split = 0.5 + 0.5 * unif(rng);  // in [0.5, 1]
    p[i] = pair_mass * split;
    p[cells - 1 - i] = pair_mass * (1.0 - split);
    total += pair_mass;
  }
  p /= total;
  return {d, p};
}

CheckDegreeDistribution regular_dk(int k) {
  CheckDegreeDistribution dk;
  dk.dk = {{k, 1.0}};
  dk.a_r = k;
  return dk;
}

}  // namespace

TEST_CASE("chi collapses for the BSC at any quantization depth") {
  const double eps = 0.08;
  const Channel ch = Channel::bsc(eps);
  const double expect = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
  for (int d = 2; d <= 4; ++d) {
    const auto r = optimize_levels(ch, d);
    CHECK(r.chi == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("chi for the BEC equals the capacity") {
  const Channel ch = Channel::bec(0.35);
  for (int d = 2; d <= 4; ++d)
    CHECK(optimize_levels(ch, d).chi == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("chi dominates the hard-decision separation") {
  std::mt19937 rng(99);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto probs = random_probs(d, rng);
      const int cells = 1 << d;
      double w = 0.0;
      for (int i = cells / 2; i < cells; ++i) w += probs.probs[i];
      CHECK(chi_objective(probs) >= (1.0 - 2.0 * w) * (1.0 - 2.0 * w) - 1e-12);
    }
  }
}

TEST_CASE("chi is monotone in quantization depth on the BIAWGN") {
  const Channel ch = Channel::biawgn(0.9787);
  double prev = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const double chi = optimize_levels(ch, d).chi;
    CHECK(chi >= prev - 1e-9);
    CHECK(chi < 1.0);
    prev = chi;
  }
  // All depths stay below the un-quantized separation A.
  CHECK(prev <= ch.quantity_a() + 1e-9);
}

TEST_CASE("level optimization is deterministic for a fixed seed") {
  const Channel ch = Channel::biawgn(1.1);
  const auto a = optimize_levels(ch, 3, 42u);
  const auto b = optimize_levels(ch, 3, 42u);
  CHECK(a.chi == b.chi);
  CHECK(a.levels.levels == b.levels.levels);
}

TEST_CASE("entropy sum collapses for BSC-like probabilities") {
  const double eps = 0.11;
  Eigen::VectorXd p(4);
  p << 1.0 - eps, 0.0, 0.0, eps;
  CheckDegreeDistribution dk;
  dk.dk = {{3, 0.4}, {6, 0.6}};
  dk.a_r = 3 * 0.4 + 6 * 0.6;
  double expect = 0.0;
  for (const auto& [k, f] : dk.dk)
    expect += f * num::h2(0.5 * (1.0 - std::pow(1.0 - 2.0 * eps, k)));
  CHECK(entropy_sum_quantized(dk, {2, p}) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("entropy sum with a single active pair has one term") {
  Eigen::VectorXd p(4);
  p << 0.85, 0.0, 0.0, 0.15;
  const auto dk = regular_dk(5);
  const double r = (0.85 - 0.15);
  CHECK(entropy_sum_quantized(dk, {2, p}) ==
        doctest::Approx(num::h2(0.5 * (1.0 - std::pow(r, 5)))).epsilon(1e-12));
}

TEST_CASE("entropy sum rejects degrees above 64") {
  Eigen::VectorXd p(4);
  p << 0.7, 0.2, 0.08, 0.02;
  CHECK_THROWS(entropy_sum_quantized(regular_dk(65), {2, p}));
}

TEST_CASE("2-level rate bound is tighter than the capacity limit") {
  const auto dk = regular_dk(6);
  for (double eps : {0.02, 0.08, 0.2}) {
    const Channel ch = Channel::bsc(eps);
    const double bound = rate_upper_bound_2level(ch, dk);
    CHECK(bound <= ch.capacity() + 1e-12);
    CHECK(bound > 0.0);
  }
  // More noise, lower bound.
  CHECK(rate_upper_bound_2level(Channel::bsc(0.2), dk) <
        rate_upper_bound_2level(Channel::bsc(0.02), dk));
}

TEST_CASE("quantized rate bound on the BEC has a closed form") {
  const double p = 0.4;
  const Channel ch = Channel::bec(p);
  const auto dk = regular_dk(6);
  double denom = 1.0 - std::pow(1.0 - p, 6);
  const double expect = 1.0 - p / denom;
  for (int d = 2; d <= 3; ++d)
    CHECK(rate_upper_bound_quantized(ch, dk, d) ==
          doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("quantized rate bound tightens with depth below the capacity") {
  const Channel ch = Channel::biawgn(0.9787);
  const auto dk = regular_dk(6);
  const double two = rate_upper_bound_2level(ch, dk);
  const double q4 = rate_upper_bound_quantized(ch, dk, 2);
  const double q8 = rate_upper_bound_quantized(ch, dk, 3);
  CHECK(q4 <= two + 1e-9);
  CHECK(q8 <= q4 + 1e-9);
  CHECK(two <= ch.capacity() + 1e-9);
  CHECK(q8 > 0.0);
}

TEST_CASE("density coefficients: BSC quantized equals 2-level") {
  const Channel ch = Channel::bsc(0.09);
  const auto two = density_bound_coeffs(ch, DensityMethod::TwoLevel);
  const auto q = density_bound_coeffs(ch, DensityMethod::Quantized, 3);
  CHECK(q.k1 == doctest::Approx(two.k1).epsilon(1e-10));
  CHECK(q.k2 == doctest::Approx(two.k2).epsilon(1e-10));
}

TEST_CASE("density coefficients grow with quantization depth") {
  const Channel ch = Channel::biawgn(0.9787);
  const auto d2 = density_bound_coeffs(ch, DensityMethod::Quantized, 2);
  const auto d3 = density_bound_coeffs(ch, DensityMethod::Quantized, 3);
  CHECK(d3.k2 >= d2.k2 - 1e-12);
}

TEST_CASE("BEC-specific density coefficients") {
  const double p = 0.5;
  const Channel ch = Channel::bec(p);
  const auto c = density_bound_coeffs(ch, DensityMethod::TwoLevelBec);
  const double ratio = p / (1.0 - p);
  CHECK(c.k2 == doctest::Approx(ratio / std::log(1.0 / (1.0 - p))).epsilon(1e-12));
  CHECK_THROWS(density_bound_coeffs(Channel::bsc(0.1), DensityMethod::TwoLevelBec));
}

TEST_CASE("density bound value and trivial flag") {
  DensityBoundCoefficients coeffs{-0.5, 1.0, "test"};
  const auto fine = density_lower_bound(coeffs, 0.01);
  CHECK(fine.value ==
        doctest::Approx((-0.5 + std::log(100.0)) / 0.99).epsilon(1e-12));
  CHECK(!fine.trivial);
  const auto loose = density_lower_bound(coeffs, 0.9);
  CHECK(loose.trivial);
  CHECK_THROWS(density_lower_bound(coeffs, 0.0));
  CHECK_THROWS(density_lower_bound(coeffs, 1.0));
}

TEST_CASE("density bound diverges as the gap closes") {
  const Channel ch = Channel::biawgn(1.0);
  const auto coeffs = density_bound_coeffs(ch, DensityMethod::TwoLevel);
  double prev = 0.0;
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const double v = density_lower_bound(coeffs, eps).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 30.0);
}
