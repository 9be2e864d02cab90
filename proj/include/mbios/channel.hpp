#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mbios/numerics.hpp"

// MBIOS channel models and channel-side quantities: the conditional LLR
// density a(.) given X=0, capacity C, error weight w, tanh moments g_p,
// the quantity A = g_1, and quantized transition probabilities.
namespace mbios {

struct LlrAtom {
  double location;  // may be +inf (perfect-information atom)
  double mass;
};

// Continuous component of an LLR density: either a Gaussian law or a
// tabulated density with linear interpolation between samples.
class ContinuousPart {
 public:
  enum class Kind { Gaussian, Tabulated };

  static ContinuousPart gaussian(double mean, double var);
  static ContinuousPart tabulated(std::vector<std::pair<double, double>> points);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double var() const { return var_; }

  double pdf(double l) const;
  // Mass of (-inf, x].
  double mass_below(double x) const;
  double total_mass() const;
  num::Interval support() const;
  // integral of pdf(l) * g(l) over the support.
  double expect(const std::function<double(double)>& g) const;
  // Rescale the density so its total mass becomes target.
  void scale_to(double target);

 private:
  ContinuousPart() = default;
  Kind kind_ = Kind::Gaussian;
  double mean_ = 0.0, var_ = 1.0;                  // Gaussian
  std::vector<std::pair<double, double>> points_;  // Tabulated, sorted by l
  double scale_ = 1.0;
};

class LlrDensity {
 public:
  LlrDensity(std::vector<LlrAtom> atoms, std::optional<ContinuousPart> cont);

  const std::vector<LlrAtom>& atoms() const { return atoms_; }
  const std::optional<ContinuousPart>& continuous() const { return cont_; }

  // Checks normalization, non-negativity, and the MBIOS symmetry
  // a(l) = e^l a(-l) (pointwise at 64 samples of the continuous part,
  // pairwise for finite atoms). Throws std::invalid_argument on failure.
  void validate() const;

 private:
  std::vector<LlrAtom> atoms_;
  std::optional<ContinuousPart> cont_;
};

struct TransitionProbs {
  int d;                 // 2^d quantization regions
  Eigen::VectorXd probs; // p_0 ... p_{2^d - 1}

  void validate() const;
};

struct QuantizerLevels {
  int d;
  Eigen::VectorXd levels;  // l_1 >= ... >= l_{2^{d-1}-1} >= 0

  void validate() const;
};

class Channel {
 public:
  enum class Kind { Bec, Bsc, Biawgn, Custom };

  static Channel bec(double p);
  static Channel bsc(double eps);
  static Channel biawgn(double sigma);
  static Channel custom(LlrDensity density);

  Kind kind() const { return kind_; }
  double param() const { return param_; }  // p, eps or sigma
  const LlrDensity& density() const { return density_; }

  double capacity() const;
  double error_weight() const;       // w = Pr{LLR<0} + Pr{LLR=0}/2
  double tanh_moment(int p) const;   // g_p
  double quantity_a() const { return tanh_moment(1); }

  std::string describe() const;

 private:
  Channel(Kind kind, double param, LlrDensity density);

  Kind kind_;
  double param_;
  LlrDensity density_;

  struct Cache {
    std::mutex mu;
    std::optional<double> capacity;
    std::optional<double> error_weight;
    std::map<int, double> moments;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Interval masses of the LLR under X=0: positive cells are
// half-open with closed upper endpoints, mirrored on the negative side;
// a zero-LLR atom is split half/half across the two innermost cells.
TransitionProbs quantized_probs(const Channel& channel,
                                const QuantizerLevels& levels);

// sigma^2 = 1 / (2 * design_rate * 10^(ebn0_db/10)).
Channel biawgn_from_ebn0(double ebn0_db, double design_rate);
double ebn0_db_from_sigma(double sigma, double design_rate);

// Custom-density loader for documents of the form
// {"atoms": [[location, mass], ...],
//  "continuous": {"type": "gaussian", "mean": m, "var": v}
//               | {"type": "tabulated", "points": [[l, a], ...]}}
// Locations accept the strings "inf"/"+inf"/"-inf".
LlrDensity llr_density_from_json_text(const std::string& text);

}  // namespace mbios
