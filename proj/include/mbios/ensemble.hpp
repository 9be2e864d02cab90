#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

// Degree distributions of LDPC ensembles: edge-perspective polynomials
// lambda/rho, node-perspective check fractions d_k, design rate and the
// density conversions built on the average right degree a_R.
namespace mbios {

// lambda(x) = sum_i c_i x^{i-1}; coeffs maps node degree i to c_i.
struct EdgePolynomial {
  std::map<int, double> coeffs;

  double coefficient_sum() const;
  double edge_integral() const;  // integral over [0,1] = sum c_i / i
  void validate() const;
};

struct CheckDegreeDistribution {
  std::map<int, double> dk;
  double a_r = 0.0;

  int max_degree() const;
  void validate() const;
};

// d_k = (rho_k / k) / integral(rho); a_R = 1 / integral(rho).
CheckDegreeDistribution dk_from_rho(const EdgePolynomial& rho);

// 1 - integral(rho) / integral(lambda).
double design_rate(const EdgePolynomial& lambda, const EdgePolynomial& rho);

// Parity-check density Delta = ((1-R)/R) * a_R.
double density_from_ar(double a_r, double rate);

// Normalized parity-check density t = ((1-R)/(2-R)) * a_R.
double normalized_density(double a_r, double rate);

struct EnsembleSpec {
  std::string name;
  std::optional<EdgePolynomial> lambda;
  std::optional<EdgePolynomial> rho;
  std::optional<CheckDegreeDistribution> dk_direct;
  double rate = 0.0;            // design rate used for Eb/N0 mapping
  double lambda_renorm = 1.0;   // recorded renormalization factors
  double rho_renorm = 1.0;

  CheckDegreeDistribution check_degrees() const;
  void validate() const;
};

// Registry of the ensembles behind the built-in threshold tables.
std::vector<std::string> builtin_ensemble_names();
EnsembleSpec builtin_ensemble(const std::string& name);

// {"name": str, "lambda": [[degree, coeff], ...], "rho": [[...]]} or
// {"dk": [[degree, fraction], ...], "design_rate": r}; lambda/rho are
// renormalized on load with the factor recorded.
EnsembleSpec ensemble_from_json_text(const std::string& text);

}  // namespace mbios
