#include "mbios/quantized_bounds.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace mbios::quantized {
namespace {

constexpr double kLn2 = std::numbers::ln2_v<double>;

int finite_level_count(int d) { return (1 << (d - 1)) - 1; }

bool purely_atomic(const Channel& channel) {
  return !channel.density().continuous().has_value();
}

Eigen::VectorXd levels_from_params(const Eigen::VectorXd& x) {
  Eigen::VectorXd levels(x.size());
  double cur = x[0];
  levels[0] = cur;
  for (int i = 1; i < x.size(); ++i) {
    cur *= x[i];
    levels[i] = cur;
  }
  return levels;
}

double level_search_ceiling(const Channel& channel) {
  double ceiling = 1.0;
  if (channel.density().continuous()) {
    const auto& c = *channel.density().continuous();
    ceiling = std::max(ceiling, c.mean() + 10.0 * std::sqrt(c.var()));
  }
  for (const auto& a : channel.density().atoms())
    if (std::isfinite(a.location))
      ceiling = std::max(ceiling, 2.0 * std::abs(a.location));
  return ceiling;
}

// Insert one level above, between and below the given ordered levels,
// producing a refinement with 2n+1 levels; every cell of the coarse
// quantizer is a union of cells of the refined one.
Eigen::VectorXd refine_levels(const Eigen::VectorXd& levels, double ceiling) {
  const int n = static_cast<int>(levels.size());
  Eigen::VectorXd out(2 * n + 1);
  int j = 0;
  out[j++] = 0.5 * (levels[0] + std::max(ceiling, levels[0] * 1.5));
  for (int i = 0; i < n; ++i) {
    out[j++] = levels[i];
    const double next = (i + 1 < n) ? levels[i + 1] : 0.0;
    out[j++] = 0.5 * (levels[i] + next);
  }
  return out;
}

Eigen::VectorXd params_from_levels(const Eigen::VectorXd& levels) {
  Eigen::VectorXd x(levels.size());
  x[0] = levels[0];
  for (int i = 1; i < levels.size(); ++i)
    x[i] = levels[i - 1] > 0.0 ? levels[i] / levels[i - 1] : 0.5;
  return x;
}

}  // namespace

double chi_objective(const TransitionProbs& probs) {
  const int n = static_cast<int>(probs.probs.size());
  double chi = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    const double a = probs.probs[i];
    const double b = probs.probs[n - 1 - i];
    if (a + b > 0.0) chi += (a - b) * (a - b) / (a + b);
  }
  return chi;
}

LevelResult optimize_levels(const Channel& channel, int d, unsigned seed) {
  if (d < 2 || d > 4)
    throw std::invalid_argument("optimize_levels: d must be in {2,3,4}");
  const int n = finite_level_count(d);

  if (purely_atomic(channel)) {
    // chi is level-independent for atom-only densities: each mirrored
    // atom pair lands in a mirrored cell pair regardless of the levels.
    double top = 1.0;
    for (const auto& a : channel.density().atoms())
      if (std::isfinite(a.location))
        top = std::max(top, std::abs(a.location));
    Eigen::VectorXd levels(n);
    for (int i = 0; i < n; ++i)
      levels[i] = top * static_cast<double>(n - i) / (n + 1);
    QuantizerLevels ql{d, levels};
    TransitionProbs probs = quantized_probs(channel, ql);
    return {ql, probs, chi_objective(probs)};
  }

  const double ceiling = level_search_ceiling(channel);
  auto objective = [&channel, d](const Eigen::VectorXd& x) {
    QuantizerLevels ql{d, levels_from_params(x)};
    return chi_objective(quantized_probs(channel, ql));
  };

  std::vector<num::Interval> box;
  box.push_back({1e-8, ceiling});
  for (int i = 1; i < n; ++i) box.push_back({1e-8, 1.0 - 1e-8});

  std::vector<Eigen::VectorXd> extra;
  if (d > 2) {
    // Seed with the refinement of the (d-1)-optimal quantizer; by the
    // cell-splitting inequality this start already attains chi(d-1).
    LevelResult lower = optimize_levels(channel, d - 1, seed);
    Eigen::VectorXd refined = refine_levels(lower.levels.levels, ceiling);
    refined = refined.cwiseMin(ceiling).cwiseMax(1e-8);
    extra.push_back(params_from_levels(refined));
  }

  num::ToleranceSpec tol;
  tol.abs_tol = 1e-14;
  tol.rel_tol = 1e-13;
  num::MaxResult best = num::maximize(objective, box, tol, seed, extra);

  QuantizerLevels ql{d, levels_from_params(best.x)};
  TransitionProbs probs = quantized_probs(channel, ql);
  return {ql, probs, chi_objective(probs)};
}

double entropy_sum_quantized(const CheckDegreeDistribution& dk,
                             const TransitionProbs& probs) {
  probs.validate();
  const int cells = static_cast<int>(probs.probs.size());
  const int pairs = cells / 2;
  std::vector<double> q(pairs), r(pairs);
  for (int i = 0; i < pairs; ++i) {
    const double a = probs.probs[i];
    const double b = probs.probs[cells - 1 - i];
    q[i] = a + b;
    r[i] = q[i] > 0.0 ? (a - b) / q[i] : 0.0;
  }

  double total = 0.0;
  for (const auto& [k, frac] : dk.dk) {
    if (k > 64)
      throw std::domain_error("entropy_sum_quantized: check degree above 64");
    if (frac == 0.0) continue;
    double sum_k = 0.0;
    const double log_fact = std::lgamma(k + 1.0);
    // Enumerate compositions (k_0, ..., k_{pairs-1}) of k recursively,
    // carrying the log multinomial weight and the contrast product.
    auto recurse = [&](auto&& self, int cell, int remaining,
                       double log_coeff, double contrast) -> void {
      if (cell == pairs - 1) {
        if (q[cell] == 0.0 && remaining > 0) return;
        double lc = log_coeff - std::lgamma(remaining + 1.0);
        if (remaining > 0) lc += remaining * std::log(q[cell]);
        const double prod = contrast * std::pow(r[cell], remaining);
        sum_k += std::exp(lc) * num::h2(0.5 * (1.0 - prod));
        return;
      }
      for (int ki = 0; ki <= remaining; ++ki) {
        if (ki > 0 && q[cell] == 0.0) break;
        double lc = log_coeff - std::lgamma(ki + 1.0);
        if (ki > 0) lc += ki * std::log(q[cell]);
        self(self, cell + 1, remaining - ki, lc,
             contrast * std::pow(r[cell], ki));
      }
    };
    recurse(recurse, 0, k, log_fact, 1.0);
    total += frac * sum_k;
  }
  return total;
}

double rate_upper_bound_2level(const Channel& channel,
                               const CheckDegreeDistribution& dk) {
  dk.validate();
  const double c = channel.capacity();
  const double w = channel.error_weight();
  const double base = 1.0 - 2.0 * w;
  double denom = 0.0;
  for (const auto& [k, frac] : dk.dk)
    denom += frac * num::h2(0.5 * (1.0 - std::pow(base, k)));
  if (denom <= 0.0) return 1.0;
  return 1.0 - (1.0 - c) / denom;
}

double rate_upper_bound_quantized(const Channel& channel,
                                  const CheckDegreeDistribution& dk, int d,
                                  unsigned seed) {
  dk.validate();
  const double c = channel.capacity();
  if (c >= 1.0) return 1.0;

  // Entropy candidates: the chi-optimal quantizer at each d' <= d, and
  // refinements of the best lower-d candidate (keeps the bound monotone
  // in d since refining never loosens the entropy sum).
  const double ceiling = level_search_ceiling(channel);
  Eigen::VectorXd best_levels;
  double best_sum = num::kInf;
  for (int dd = 2; dd <= d; ++dd) {
    std::vector<Eigen::VectorXd> cands;
    cands.push_back(optimize_levels(channel, dd, seed).levels.levels);
    if (best_levels.size() > 0) cands.push_back(refine_levels(best_levels, ceiling));
    Eigen::VectorXd chosen;
    double chosen_sum = num::kInf;
    for (const auto& lv : cands) {
      QuantizerLevels ql{dd, lv};
      const double es = entropy_sum_quantized(dk, quantized_probs(channel, ql));
      if (es < chosen_sum) {
        chosen_sum = es;
        chosen = lv;
      }
    }
    best_levels = chosen;
    best_sum = chosen_sum;
  }
  if (best_sum <= 0.0) return 1.0;
  const double entropy_term = (1.0 - c) / best_sum;

  const double e = 2.0 * channel.error_weight();  // bad-half mass is w
  double erasure_term = 0.0;
  if (e > 0.0) {
    double denom = 1.0;
    for (const auto& [k, frac] : dk.dk) denom -= frac * std::pow(1.0 - e, k);
    if (denom > 0.0) erasure_term = e / denom;
  }
  return 1.0 - std::max(entropy_term, erasure_term);
}

DensityBoundCoefficients density_bound_coeffs(const Channel& channel,
                                              DensityMethod method, int d,
                                              unsigned seed) {
  const double c = channel.capacity();
  if (!(c > 0.0 && c < 1.0))
    throw std::domain_error("density_bound_coeffs: capacity must be in (0,1)");
  switch (method) {
    case DensityMethod::TwoLevel: {
      const double w = channel.error_weight();
      if (!(w > 0.0 && w < 0.5))
        throw std::domain_error("density_bound_coeffs: degenerate error weight");
      const double denom = 2.0 * c * std::log(1.0 / (1.0 - 2.0 * w));
      const double k2 = (1.0 - c) / denom;
      const double k1 = k2 * std::log((1.0 - c) / (2.0 * kLn2 * c));
      return {k1, k2, "two_level"};
    }
    case DensityMethod::TwoLevelBec: {
      if (channel.kind() != Channel::Kind::Bec)
        throw std::invalid_argument("two_level_bec coefficients require a BEC");
      const double p = channel.param();
      const double ratio = p / (1.0 - p);
      const double log_term = std::log(1.0 / (1.0 - p));
      return {ratio * std::log(ratio) / log_term, ratio / log_term,
              "two_level_bec"};
    }
    case DensityMethod::Quantized: {
      const double chi = optimize_levels(channel, d, seed).chi;
      if (!(chi > 0.0 && chi < 1.0))
        throw std::domain_error("density_bound_coeffs: chi outside (0,1)");
      const double k2 = -(1.0 - c) / (c * std::log(chi));
      const double k1 = k2 * std::log((1.0 - c) / (2.0 * kLn2 * c));
      return {k1, k2, "quantized_d" + std::to_string(d)};
    }
  }
  throw std::logic_error("density_bound_coeffs: unreachable");
}

DensityBound density_lower_bound(const DensityBoundCoefficients& coeffs,
                                 double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("density_lower_bound: epsilon must be in (0,1)");
  const double value =
      (coeffs.k1 + coeffs.k2 * std::log(1.0 / epsilon)) / (1.0 - epsilon);
  return {value, value <= 0.0};
}

}  // namespace mbios::quantized
