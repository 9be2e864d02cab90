#include "mbios/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace mbios {

double EdgePolynomial::coefficient_sum() const {
  double s = 0.0;
  for (const auto& [i, c] : coeffs) s += c;
  return s;
}

double EdgePolynomial::edge_integral() const {
  double s = 0.0;
  for (const auto& [i, c] : coeffs) s += c / i;
  return s;
}

void EdgePolynomial::validate() const {
  if (coeffs.empty()) throw std::invalid_argument("edge polynomial: empty");
  for (const auto& [i, c] : coeffs) {
    if (i < 2) throw std::invalid_argument("edge polynomial: degree below 2");
    if (!(c >= 0.0)) throw std::invalid_argument("edge polynomial: negative coefficient");
  }
  if (std::abs(coefficient_sum() - 1.0) > 1e-10)
    throw std::invalid_argument("edge polynomial: coefficients do not sum to 1");
}

int CheckDegreeDistribution::max_degree() const {
  return dk.empty() ? 0 : dk.rbegin()->first;
}

void CheckDegreeDistribution::validate() const {
  double sum = 0.0, ar = 0.0;
  for (const auto& [k, f] : dk) {
    if (k < 1) throw std::invalid_argument("check degrees: degree below 1");
    if (!(f >= 0.0)) throw std::invalid_argument("check degrees: negative fraction");
    sum += f;
    ar += k * f;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("check degrees: fractions do not sum to 1");
  if (std::abs(ar - a_r) > 1e-10)
    throw std::invalid_argument("check degrees: a_R inconsistent");
}

CheckDegreeDistribution dk_from_rho(const EdgePolynomial& rho) {
  rho.validate();
  const double integral = rho.edge_integral();
  CheckDegreeDistribution out;
  for (const auto& [k, c] : rho.coeffs)
    if (c > 0.0) out.dk[k] = (c / k) / integral;
  out.a_r = 1.0 / integral;
  return out;
}

double design_rate(const EdgePolynomial& lambda, const EdgePolynomial& rho) {
  lambda.validate();
  rho.validate();
  const double li = lambda.edge_integral();
  if (!(li > 0.0)) throw std::invalid_argument("design_rate: zero lambda integral");
  return 1.0 - rho.edge_integral() / li;
}

double density_from_ar(double a_r, double rate) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument("density_from_ar: rate must be in (0,1)");
  return (1.0 - rate) / rate * a_r;
}

double normalized_density(double a_r, double rate) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument("normalized_density: rate must be in (0,1)");
  return (1.0 - rate) / (2.0 - rate) * a_r;
}

CheckDegreeDistribution EnsembleSpec::check_degrees() const {
  if (dk_direct) return *dk_direct;
  if (rho) return dk_from_rho(*rho);
  throw std::invalid_argument("ensemble '" + name + "': no rho and no dk");
}

void EnsembleSpec::validate() const {
  if (!rho && !dk_direct)
    throw std::invalid_argument("ensemble: needs rho or direct dk");
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument("ensemble: design rate must be in (0,1)");
  if (lambda && rho) {
    const double derived = design_rate(*lambda, *rho);
    // Printed table coefficients are rounded; allow a small gap.
    if (std::abs(derived - rate) > 2e-3)
      throw std::invalid_argument("ensemble: lambda/rho inconsistent with design rate");
  }
  check_degrees().validate();
}

namespace {

EdgePolynomial normalized_poly(std::map<int, double> coeffs, double* factor) {
  EdgePolynomial poly{std::move(coeffs)};
  const double sum = poly.coefficient_sum();
  if (!(sum > 0.0)) throw std::invalid_argument("edge polynomial: zero sum");
  for (auto& [i, c] : poly.coeffs) c /= sum;
  if (factor) *factor = sum;
  return poly;
}

EnsembleSpec make_ensemble(std::string name, std::map<int, double> lambda,
                           std::map<int, double> rho, double rate) {
  EnsembleSpec e;
  e.name = std::move(name);
  e.lambda = normalized_poly(std::move(lambda), &e.lambda_renorm);
  e.rho = normalized_poly(std::move(rho), &e.rho_renorm);
  e.rate = rate;
  e.validate();
  return e;
}

// Coefficients as published for these ensembles; maps are keyed by node
// degree (exponent + 1 in the polynomial notation).
EnsembleSpec build_named(const std::string& name) {
  if (name == "gallager_3_6")
    return make_ensemble(name, {{3, 1.0}}, {{6, 1.0}}, 0.5);
  if (name == "gallager_4_6")
    return make_ensemble(name, {{4, 1.0}}, {{6, 1.0}}, 1.0 / 3.0);
  if (name == "gallager_3_4")
    return make_ensemble(name, {{3, 1.0}}, {{4, 1.0}}, 0.25);
  if (name == "table2_row1")
    return make_ensemble(name, {{2, 0.38354}, {3, 0.04237}, {4, 0.57409}},
                         {{5, 0.24123}, {6, 0.75877}}, 0.5);
  if (name == "table2_row2")
    return make_ensemble(name,
                         {{2, 0.23802}, {3, 0.20997}, {4, 0.03492},
                          {5, 0.12015}, {7, 0.01587}, {14, 0.00480},
                          {15, 0.37627}},
                         {{8, 0.98013}, {9, 0.01987}}, 0.5);
  if (name == "table2_row3")
    return make_ensemble(name,
                         {{2, 0.21991}, {3, 0.23328}, {4, 0.02058},
                          {6, 0.08543}, {7, 0.06540}, {8, 0.04767},
                          {9, 0.01912}, {19, 0.08064}, {20, 0.22798}},
                         {{8, 0.64854}, {9, 0.34747}, {10, 0.00399}}, 0.5);
  if (name == "table2_row4")
    return make_ensemble(name,
                         {{2, 0.19606}, {3, 0.24039}, {6, 0.00228},
                          {7, 0.05516}, {8, 0.16602}, {9, 0.04088},
                          {10, 0.01064}, {28, 0.00221}, {30, 0.28636}},
                         {{8, 0.00749}, {9, 0.99101}, {10, 0.00150}}, 0.5);
  if (name == "table3_row1")
    return make_ensemble(name,
                         {{2, 0.302468}, {3, 0.319447}, {5, 0.378085}},
                         {{12, 1.0}}, 0.75);
  if (name == "table3_row2")
    return make_ensemble(name,
                         {{2, 0.244067}, {3, 0.292375}, {7, 0.463558}},
                         {{14, 1.0}}, 0.75);
  if (name == "table3_row3")
    return make_ensemble(name,
                         {{2, 0.205439}, {3, 0.255432}, {5, 0.0751187},
                          {6, 0.1013440}, {12, 0.3626670}},
                         {{16, 1.0}}, 0.75);
  throw std::invalid_argument("unknown built-in ensemble '" + name + "'");
}

}  // namespace

std::vector<std::string> builtin_ensemble_names() {
  return {"gallager_3_6", "gallager_4_6", "gallager_3_4",
          "table2_row1",  "table2_row2",  "table2_row3", "table2_row4",
          "table3_row1",  "table3_row2",  "table3_row3"};
}

EnsembleSpec builtin_ensemble(const std::string& name) {
  return build_named(name);
}

EnsembleSpec ensemble_from_json_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  EnsembleSpec e;
  e.name = doc.value("name", "custom");
  auto read_pairs = [](const nlohmann::json& arr) {
    std::map<int, double> coeffs;
    for (const auto& entry : arr)
      coeffs[entry.at(0).get<int>()] += entry.at(1).get<double>();
    return coeffs;
  };
  if (doc.contains("dk")) {
    CheckDegreeDistribution dk;
    for (const auto& [k, f] : read_pairs(doc.at("dk"))) {
      dk.dk[k] = f;
      dk.a_r += k * f;
    }
    e.dk_direct = dk;
    e.rate = doc.at("design_rate").get<double>();
  } else {
    e.rho = normalized_poly(read_pairs(doc.at("rho")), &e.rho_renorm);
    if (doc.contains("lambda")) {
      e.lambda = normalized_poly(read_pairs(doc.at("lambda")), &e.lambda_renorm);
      e.rate = doc.contains("design_rate")
                   ? doc.at("design_rate").get<double>()
                   : design_rate(*e.lambda, *e.rho);
    } else {
      e.rate = doc.at("design_rate").get<double>();
    }
  }
  e.validate();
  return e;
}

}  // namespace mbios
