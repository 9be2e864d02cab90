#pragma once

#include "mbios/channel.hpp"
#include "mbios/ensemble.hpp"
#include "mbios/quantized_bounds.hpp"

// Un-quantized (LLR-density-exact) bounds: the tanh-moment series, the
// conditional-entropy lower bound, rate upper bound, parity-check
// density lower bound, BER lower bounds, and the usefulness thresholds
// epsilon_0 for the gap to capacity.
namespace mbios::unquantized {

struct SeriesConfig {
  int truncation_p = 10;
};

// B = (1/(2 ln 2)) sum_{p<=P} [1/(p(2p-1))] sum_k d_k g_p^k.
double series_b(const Channel& channel, const CheckDegreeDistribution& dk,
                SeriesConfig cfg = {});

// H(X|Y)/n >= 1 - C - (1-R)(1 - B). Truncating the series only lowers
// the right-hand side, so validity is preserved.
double entropy_lower_bound(const Channel& channel, double rate,
                           const CheckDegreeDistribution& dk,
                           SeriesConfig cfg = {});

// R <= 1 - (1-C)/(1 - B); degenerate denominators report 1.
double rate_upper_bound_unquantized(const Channel& channel,
                                    const CheckDegreeDistribution& dk,
                                    SeriesConfig cfg = {});

// Coefficients of the un-quantized density bound, evaluated at the
// analytic maximizer: x = A for non-BEC channels, x = 1-p with xi = 1
// for the BEC.
quantized::DensityBoundCoefficients density_bound_coeffs_unquantized(
    const Channel& channel);

struct DensityResult {
  double value;
  bool trivial;
  quantized::DensityBoundCoefficients coeffs;
};

DensityResult density_lower_bound_unquantized(const Channel& channel,
                                              double epsilon);

struct BerResult {
  double h2_pb;   // right-hand side of the h2(Pb) inequality
  double pb;      // h2_inverse_low(max(0, h2_pb))
  bool trivial;   // h2_pb <= 0
};

// Degree-profile shape:
// h2(Pb) >= 1 - C/R + ((1-R)/(2 ln 2 R)) sum_p [1/(p(2p-1))] sum_k d_k g_p^k.
BerResult ber_lower_bound(const Channel& channel, double rate,
                          const CheckDegreeDistribution& dk,
                          SeriesConfig cfg = {});

// Normalized shape: the inner sum is replaced by g_p^{(2-R)t/(1-R)}.
BerResult ber_lower_bound_normalized(const Channel& channel, double rate,
                                     double t, SeriesConfig cfg = {});

// Reconstruction of the predecessor bound this work tightens:
// h2(Pb) >= R - C + ((1-R)/(2 ln 2)) (1-2w)^{2(2-R)t/(1-R)}.
BerResult legacy_ber_bound(const Channel& channel, double rate, double t);

// Largest useful gap to capacity for the degree-profile bound:
// eps_0 = (1-C) B / (C (1-B)).
double epsilon0_degree(const Channel& channel,
                       const CheckDegreeDistribution& dk, SeriesConfig cfg = {});

// Root of -eps C + ((1-(1-eps)C)/(2 ln 2)) sum_p [...] g_p^{...} = 0 on
// (0,1); the left-hand side is monotone decreasing, so bisection is safe.
double epsilon0_normalized(const Channel& channel, double t,
                           SeriesConfig cfg = {});

}  // namespace mbios::unquantized
