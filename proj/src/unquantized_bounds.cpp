#include "mbios/unquantized_bounds.hpp"

#include <cmath>
#include <numbers>

namespace mbios::unquantized {
namespace {

constexpr double kLn2 = std::numbers::ln2_v<double>;

void check_cfg(const SeriesConfig& cfg) {
  if (cfg.truncation_p < 1)
    throw std::invalid_argument("series config: truncation_P must be >= 1");
}

void check_rate(double rate) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument("rate must be in (0,1)");
}

// sum_{p<=P} [1/(p(2p-1))] * g_p^{exponent}.
double power_series(const Channel& channel, double exponent,
                    const SeriesConfig& cfg) {
  double sum = 0.0;
  for (int p = 1; p <= cfg.truncation_p; ++p)
    sum += std::pow(channel.tanh_moment(p), exponent) / (p * (2.0 * p - 1.0));
  return sum;
}

// sum_{p<=P} [1/(p(2p-1))] * sum_k d_k g_p^k.
double profile_series(const Channel& channel, const CheckDegreeDistribution& dk,
                      const SeriesConfig& cfg) {
  double sum = 0.0;
  for (int p = 1; p <= cfg.truncation_p; ++p) {
    const double g = channel.tanh_moment(p);
    double inner = 0.0;
    for (const auto& [k, frac] : dk.dk) inner += frac * std::pow(g, k);
    sum += inner / (p * (2.0 * p - 1.0));
  }
  return sum;
}

BerResult finish_ber(double h2_pb) {
  if (h2_pb <= 0.0) return {h2_pb, 0.0, true};
  return {h2_pb, num::h2_inverse_low(std::min(h2_pb, 1.0)), false};
}

}  // namespace

double series_b(const Channel& channel, const CheckDegreeDistribution& dk,
                SeriesConfig cfg) {
  check_cfg(cfg);
  dk.validate();
  return profile_series(channel, dk, cfg) / (2.0 * kLn2);
}

double entropy_lower_bound(const Channel& channel, double rate,
                           const CheckDegreeDistribution& dk,
                           SeriesConfig cfg) {
  check_rate(rate);
  const double b = series_b(channel, dk, cfg);
  return 1.0 - channel.capacity() - (1.0 - rate) * (1.0 - b);
}

double rate_upper_bound_unquantized(const Channel& channel,
                                    const CheckDegreeDistribution& dk,
                                    SeriesConfig cfg) {
  const double c = channel.capacity();
  const double b = series_b(channel, dk, cfg);
  if (b >= 1.0) return 1.0;
  return 1.0 - (1.0 - c) / (1.0 - b);
}

quantized::DensityBoundCoefficients density_bound_coeffs_unquantized(
    const Channel& channel) {
  const double c = channel.capacity();
  if (!(c > 0.0 && c < 1.0))
    throw std::domain_error("density bound: capacity must be in (0,1)");
  double x, xi;
  if (channel.kind() == Channel::Kind::Bec) {
    x = 1.0 - channel.param();
    xi = 1.0;
  } else {
    x = channel.quantity_a();
    xi = 1.0 / (2.0 * kLn2);
  }
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("density bound: degenerate channel (A outside (0,1))");
  const double ratio = (1.0 - c) / c;
  const double log_inv_x = std::log(1.0 / x);
  return {ratio * std::log(xi * ratio) / log_inv_x, ratio / log_inv_x,
          "unquantized"};
}

DensityResult density_lower_bound_unquantized(const Channel& channel,
                                              double epsilon) {
  const auto coeffs = density_bound_coeffs_unquantized(channel);
  const auto bound = quantized::density_lower_bound(coeffs, epsilon);
  return {bound.value, bound.trivial, coeffs};
}

BerResult ber_lower_bound(const Channel& channel, double rate,
                          const CheckDegreeDistribution& dk, SeriesConfig cfg) {
  check_rate(rate);
  check_cfg(cfg);
  dk.validate();
  const double c = channel.capacity();
  const double h2_pb = 1.0 - c / rate +
                       (1.0 - rate) / (2.0 * kLn2 * rate) *
                           profile_series(channel, dk, cfg);
  return finish_ber(h2_pb);
}

BerResult ber_lower_bound_normalized(const Channel& channel, double rate,
                                     double t, SeriesConfig cfg) {
  check_rate(rate);
  check_cfg(cfg);
  if (!(t >= 1.0))
    throw std::invalid_argument("normalized density t must be >= 1");
  const double c = channel.capacity();
  const double exponent = (2.0 - rate) * t / (1.0 - rate);
  const double h2_pb = 1.0 - c / rate +
                       (1.0 - rate) / (2.0 * kLn2 * rate) *
                           power_series(channel, exponent, cfg);
  return finish_ber(h2_pb);
}

BerResult legacy_ber_bound(const Channel& channel, double rate, double t) {
  check_rate(rate);
  if (!(t >= 1.0))
    throw std::invalid_argument("normalized density t must be >= 1");
  const double c = channel.capacity();
  const double base = 1.0 - 2.0 * channel.error_weight();
  const double exponent = 2.0 * (2.0 - rate) * t / (1.0 - rate);
  const double h2_pb =
      rate - c + (1.0 - rate) / (2.0 * kLn2) * std::pow(base, exponent);
  return finish_ber(h2_pb);
}

double epsilon0_degree(const Channel& channel,
                       const CheckDegreeDistribution& dk, SeriesConfig cfg) {
  const double c = channel.capacity();
  if (!(c > 0.0 && c < 1.0))
    throw std::domain_error("epsilon0_degree: capacity must be in (0,1)");
  const double b = series_b(channel, dk, cfg);
  if (b >= 1.0) throw std::domain_error("epsilon0_degree: series B >= 1");
  return (1.0 - c) * b / (c * (1.0 - b));
}

double epsilon0_normalized(const Channel& channel, double t,
                           SeriesConfig cfg) {
  check_cfg(cfg);
  if (!(t >= 1.0))
    throw std::invalid_argument("normalized density t must be >= 1");
  const double c = channel.capacity();
  if (!(c > 0.0 && c < 1.0))
    throw std::domain_error("epsilon0_normalized: capacity must be in (0,1)");
  auto f = [&](double eps) {
    const double r = (1.0 - eps) * c;
    const double exponent = (2.0 - r) * t / (1.0 - r);
    return -eps * c +
           (1.0 - r) / (2.0 * kLn2) * power_series(channel, exponent, cfg);
  };
  num::ToleranceSpec tol;
  tol.abs_tol = 1e-14;
  // f(0) > 0 and f(1) <= 0 by the monotonicity of the left-hand side.
  return num::solve_root(f, {0.0, 1.0}, tol);
}

}  // namespace mbios::unquantized
