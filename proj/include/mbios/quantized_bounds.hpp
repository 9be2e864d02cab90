#pragma once

#include <string>

#include "mbios/channel.hpp"
#include "mbios/ensemble.hpp"

// 2-level, 4-level and general 2^d-level quantized bounds: the chi
// separation objective and optimal quantizer selection, the quantized
// conditional-entropy sum, rate upper bounds and parity-check-density
// lower bounds.
namespace mbios::quantized {

inline constexpr unsigned kDefaultSeed = 0x51dc1234u;

// chi = sum over pairs (i, 2^d-1-i), i < 2^{d-1}, of
// (p_i - p_pair)^2 / (p_i + p_pair); empty cells contribute 0.
double chi_objective(const TransitionProbs& probs);

struct LevelResult {
  QuantizerLevels levels;
  TransitionProbs probs;
  double chi;
};

// Levels maximizing chi over the ordered box, by multi-start coordinate
// ascent on the reparameterization l_i = l_{i-1} * u_i. Channels whose
// LLR density is purely atomic (BEC/BSC) have a level-independent chi;
// they take a closed-form fast path.
LevelResult optimize_levels(const Channel& channel, int d,
                            unsigned seed = kDefaultSeed);

// The inner double sum of the quantized conditional-entropy bound:
// sum_k d_k sum_{compositions of k} multinomial * prod q_i^{k_i}
//   * h2((1 - prod r_i^{k_i}) / 2)
// with q_i the pair sums and r_i the pair contrasts. Exact composition
// enumeration; check degrees above 64 are rejected.
double entropy_sum_quantized(const CheckDegreeDistribution& dk,
                             const TransitionProbs& probs);

// R <= 1 - (1-C) / sum_k d_k h2((1 - (1-2w)^k)/2).
double rate_upper_bound_2level(const Channel& channel,
                               const CheckDegreeDistribution& dk);

// R <= 1 - max{(1-C)/entropy_sum, E/(1 - sum_k d_k (1-E)^k)} with E
// twice the bad-half quantized mass. Entropy sums are evaluated at the
// chi-optimal levels and at nested refinements of the lower-d optima;
// the tighter value is used, which makes the bound monotone in d.
double rate_upper_bound_quantized(const Channel& channel,
                                  const CheckDegreeDistribution& dk, int d,
                                  unsigned seed = kDefaultSeed);

enum class DensityMethod { TwoLevel, TwoLevelBec, Quantized };

struct DensityBoundCoefficients {
  double k1;
  double k2;
  std::string method;
};

DensityBoundCoefficients density_bound_coeffs(const Channel& channel,
                                              DensityMethod method, int d = 2,
                                              unsigned seed = kDefaultSeed);

struct DensityBound {
  double value;
  bool trivial;  // set when the bound is non-positive
};

// (K1 + K2 ln(1/eps)) / (1 - eps).
DensityBound density_lower_bound(const DensityBoundCoefficients& coeffs,
                                 double epsilon);

}  // namespace mbios::quantized
