#include "mbios/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace mbios {
namespace {

double gaussian_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc((mean - x) / (sd * std::sqrt(2.0)));
}

double soft_bit(double l) {
  // 1/(1+e^{-|l|}), the "good" posterior of the folded LLR.
  return 1.0 / (1.0 + std::exp(-std::abs(l)));
}

}  // namespace

ContinuousPart ContinuousPart::gaussian(double mean, double var) {
  if (!(var > 0.0))
    throw std::invalid_argument("gaussian continuous part needs var > 0");
  ContinuousPart c;
  c.kind_ = Kind::Gaussian;
  c.mean_ = mean;
  c.var_ = var;
  return c;
}

ContinuousPart ContinuousPart::tabulated(
    std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw std::invalid_argument("tabulated density needs at least 2 points");
  std::sort(points.begin(), points.end());
  for (const auto& [l, a] : points)
    if (!(a >= 0.0) || !std::isfinite(l))
      throw std::invalid_argument("tabulated density values must be finite, >= 0");
  ContinuousPart c;
  c.kind_ = Kind::Tabulated;
  c.points_ = std::move(points);
  double m1 = 0.0, m2 = 0.0, mass = 0.0;
  for (size_t i = 0; i + 1 < c.points_.size(); ++i) {
    const auto [l0, a0] = c.points_[i];
    const auto [l1, a1] = c.points_[i + 1];
    const double w = l1 - l0;
    mass += 0.5 * (a0 + a1) * w;
    m1 += w * (a0 * (2 * l0 + l1) + a1 * (l0 + 2 * l1)) / 6.0;
    m2 += w *
          (a0 * (3 * l0 * l0 + 2 * l0 * l1 + l1 * l1) +
           a1 * (l0 * l0 + 2 * l0 * l1 + 3 * l1 * l1)) /
          12.0;
  }
  if (mass > 0.0) {
    c.mean_ = m1 / mass;
    c.var_ = std::max(m2 / mass - c.mean_ * c.mean_, 1e-12);
  }
  return c;
}

double ContinuousPart::pdf(double l) const {
  if (kind_ == Kind::Gaussian) {
    const double z = (l - mean_) * (l - mean_) / (2.0 * var_);
    return scale_ * std::exp(-z) / std::sqrt(2.0 * M_PI * var_);
  }
  if (l < points_.front().first || l > points_.back().first) return 0.0;
  auto it = std::lower_bound(
      points_.begin(), points_.end(), l,
      [](const auto& pt, double x) { return pt.first < x; });
  if (it == points_.begin()) return scale_ * it->second;
  const auto [l1, a1] = *it;
  const auto [l0, a0] = *(it - 1);
  const double t = (l - l0) / (l1 - l0);
  return scale_ * (a0 + t * (a1 - a0));
}

double ContinuousPart::mass_below(double x) const {
  if (kind_ == Kind::Gaussian)
    return scale_ * gaussian_cdf(x, mean_, std::sqrt(var_));
  double acc = 0.0;
  for (size_t i = 0; i + 1 < points_.size(); ++i) {
    const auto [l0, a0] = points_[i];
    const auto [l1, a1] = points_[i + 1];
    if (x <= l0) break;
    if (x >= l1) {
      acc += 0.5 * (a0 + a1) * (l1 - l0);
    } else {
      const double t = (x - l0) / (l1 - l0);
      const double ax = a0 + t * (a1 - a0);
      acc += 0.5 * (a0 + ax) * (x - l0);
      break;
    }
  }
  return scale_ * acc;
}

double ContinuousPart::total_mass() const {
  if (kind_ == Kind::Gaussian) return scale_;
  return mass_below(points_.back().first);
}

num::Interval ContinuousPart::support() const {
  if (kind_ == Kind::Gaussian) {
    const double sd = std::sqrt(var_);
    // Tail mass beyond 12 standard deviations is below 1e-30.
    return {mean_ - 12.0 * sd, mean_ + 12.0 * sd};
  }
  return {points_.front().first, points_.back().first};
}

double ContinuousPart::expect(const std::function<double(double)>& g) const {
  const num::Interval dom = support();
  return num::integrate([this, &g](double l) { return pdf(l) * g(l); }, dom);
}

void ContinuousPart::scale_to(double target) {
  const double mass = total_mass();
  if (!(mass > 0.0))
    throw std::invalid_argument("continuous part has zero mass");
  scale_ *= target / mass;
}

LlrDensity::LlrDensity(std::vector<LlrAtom> atoms,
                       std::optional<ContinuousPart> cont)
    : atoms_(std::move(atoms)), cont_(std::move(cont)) {}

void LlrDensity::validate() const {
  double mass = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.mass >= 0.0))
      throw std::invalid_argument("llr density: negative atom mass");
    if (std::isnan(a.location) || a.location == -num::kInf)
      throw std::invalid_argument("llr density: atom location must be finite or +inf");
    mass += a.mass;
  }
  if (cont_) mass += cont_->total_mass();
  if (std::abs(mass - 1.0) > 1e-10)
    throw std::invalid_argument("llr density: total mass differs from 1");

  // Atom symmetry: mass(-l) = e^{-l} mass(+l) for finite l > 0.
  for (const auto& a : atoms_) {
    if (a.location <= 0.0 || std::isinf(a.location)) continue;
    double mirror = 0.0;
    for (const auto& b : atoms_)
      if (std::abs(b.location + a.location) < 1e-12) mirror += b.mass;
    if (std::abs(mirror - std::exp(-a.location) * a.mass) >
        1e-8 * (1.0 + a.mass))
      throw std::invalid_argument("llr density: atom symmetry violated");
  }

  if (cont_) {
    const num::Interval s = cont_->support();
    const double hi = std::min(std::abs(s.lo) > std::abs(s.hi)
                                   ? std::abs(s.lo)
                                   : std::abs(s.hi),
                               40.0);
    for (int i = 1; i <= 64; ++i) {
      const double l = hi * i / 64.0;
      const double lhs = cont_->pdf(l);
      const double rhs = std::exp(l) * cont_->pdf(-l);
      if (std::abs(lhs - rhs) > 1e-6 * (1.0 + std::abs(lhs)))
        throw std::invalid_argument("llr density: symmetry a(l)=e^l a(-l) violated");
    }
  }
}

void TransitionProbs::validate() const {
  const int n = static_cast<int>(probs.size());
  if (d < 2 || n != (1 << d))
    throw std::invalid_argument("transition probs: wrong size");
  if (std::abs(probs.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("transition probs: not normalized");
  for (int i = 0; i < n; ++i)
    if (probs[i] < -1e-12)
      throw std::invalid_argument("transition probs: negative entry");
  for (int i = 0; i < n / 2; ++i)
    if (probs[i] < probs[n - 1 - i] - 1e-9)
      throw std::invalid_argument("transition probs: pair dominance violated");
}

void QuantizerLevels::validate() const {
  if (d < 2 || levels.size() != (1 << (d - 1)) - 1)
    throw std::invalid_argument("quantizer levels: wrong size");
  for (int i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0))
      throw std::invalid_argument("quantizer levels: negative level");
    if (i > 0 && levels[i] > levels[i - 1] + 1e-12)
      throw std::invalid_argument("quantizer levels: not weakly decreasing");
  }
}

Channel::Channel(Kind kind, double param, LlrDensity density)
    : kind_(kind), param_(param), density_(std::move(density)) {
  density_.validate();
}

Channel Channel::bec(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("bec: p must be in [0,1]");
  return Channel(Kind::Bec, p,
                 LlrDensity({{0.0, p}, {num::kInf, 1.0 - p}}, std::nullopt));
}

Channel Channel::bsc(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5))
    throw std::invalid_argument("bsc: eps must be in [0,1/2]");
  if (eps == 0.0)
    return Channel(Kind::Bsc, eps, LlrDensity({{num::kInf, 1.0}}, std::nullopt));
  const double l0 = std::log((1.0 - eps) / eps);
  return Channel(Kind::Bsc, eps,
                 LlrDensity({{l0, 1.0 - eps}, {-l0, eps}}, std::nullopt));
}

Channel Channel::biawgn(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("biawgn: sigma must be > 0");
  const double m = 2.0 / (sigma * sigma);
  return Channel(Kind::Biawgn, sigma,
                 LlrDensity({}, ContinuousPart::gaussian(m, 2.0 * m)));
}

Channel Channel::custom(LlrDensity density) {
  return Channel(Kind::Custom, 0.0, std::move(density));
}

double Channel::capacity() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->capacity) {
    double c = 0.0;
    for (const auto& a : density_.atoms()) {
      if (std::isinf(a.location))
        c += a.mass;
      else
        c += a.mass * (1.0 - num::h2(soft_bit(a.location)));
    }
    if (density_.continuous())
      c += density_.continuous()->expect(
          [](double l) { return 1.0 - num::h2(soft_bit(l)); });
    cache_->capacity = c;
  }
  return *cache_->capacity;
}

double Channel::error_weight() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->error_weight) {
    double w = 0.0;
    for (const auto& a : density_.atoms()) {
      if (a.location < 0.0) w += a.mass;
      if (a.location == 0.0) w += 0.5 * a.mass;
    }
    if (density_.continuous()) w += density_.continuous()->mass_below(0.0);
    cache_->error_weight = w;
  }
  return *cache_->error_weight;
}

double Channel::tanh_moment(int p) const {
  if (p < 1) throw std::invalid_argument("tanh_moment: p must be >= 1");
  // Atom-only densities are cheap enough to evaluate directly; caching
  // them would bloat the moment map under deep series truncations.
  const bool cacheable = density_.continuous().has_value();
  if (cacheable) {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->moments.find(p);
    if (it != cache_->moments.end()) return it->second;
  }
  double g = 0.0;
  for (const auto& a : density_.atoms()) {
    if (std::isinf(a.location))
      g += a.mass;
    else if (a.location != 0.0)
      g += a.mass * std::pow(std::tanh(std::abs(a.location) / 2.0), 2 * p);
  }
  if (density_.continuous())
    g += density_.continuous()->expect(
        [p](double l) { return std::pow(std::tanh(l / 2.0), 2 * p); });
  if (cacheable) {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->moments.emplace(p, g);
  }
  return g;
}

std::string Channel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Bec: os << "bec:p=" << param_; break;
    case Kind::Bsc: os << "bsc:eps=" << param_; break;
    case Kind::Biawgn: os << "biawgn:sigma=" << param_; break;
    case Kind::Custom: os << "custom"; break;
  }
  return os.str();
}

TransitionProbs quantized_probs(const Channel& channel,
                                const QuantizerLevels& levels) {
  levels.validate();
  const int d = levels.d;
  const int n = (1 << (d - 1)) - 1;  // number of finite levels
  const int cells = 1 << d;
  // Boundaries b[0] = +inf >= b[1] = l_1 >= ... >= b[n] = l_n >= b[n+1] = 0.
  std::vector<double> b(n + 2);
  b[0] = num::kInf;
  for (int i = 0; i < n; ++i) b[i + 1] = levels.levels[i];
  b[n + 1] = 0.0;

  Eigen::VectorXd p = Eigen::VectorXd::Zero(cells);
  const auto& cont = channel.density().continuous();
  if (cont) {
    for (int s = 0; s <= n; ++s) {
      const double hi = b[s], lo = b[s + 1];
      const double mass_hi = std::isinf(hi) ? cont->total_mass()
                                            : cont->mass_below(hi);
      // Positive cell s covers (b[s+1], b[s]]; its mirror covers the
      // reflected interval on the negative axis.
      p[s] += mass_hi - cont->mass_below(lo);
      p[cells - 1 - s] += cont->mass_below(-lo) -
                          (std::isinf(hi) ? 0.0 : cont->mass_below(-hi));
    }
  }
  for (const auto& atom : channel.density().atoms()) {
    if (atom.location == 0.0) {
      p[n] += 0.5 * atom.mass;
      p[n + 1] += 0.5 * atom.mass;
      continue;
    }
    const double mag = std::abs(atom.location);
    // Find the positive cell with b[s+1] < |loc| <= b[s].
    int s = n;
    for (int i = 0; i <= n; ++i) {
      if (mag > b[i + 1] && (std::isinf(b[i]) || mag <= b[i])) {
        s = i;
        break;
      }
    }
    if (atom.location > 0.0)
      p[s] += atom.mass;
    else
      p[cells - 1 - s] += atom.mass;
  }
  TransitionProbs out{d, std::move(p)};
  out.validate();
  return out;
}

Channel biawgn_from_ebn0(double ebn0_db, double design_rate) {
  if (!(design_rate > 0.0 && design_rate < 1.0))
    throw std::invalid_argument("biawgn_from_ebn0: rate must be in (0,1)");
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return Channel::biawgn(1.0 / std::sqrt(2.0 * design_rate * ebn0));
}

double ebn0_db_from_sigma(double sigma, double design_rate) {
  if (!(design_rate > 0.0 && design_rate < 1.0))
    throw std::invalid_argument("ebn0_db_from_sigma: rate must be in (0,1)");
  return 10.0 * std::log10(1.0 / (2.0 * design_rate * sigma * sigma));
}

LlrDensity llr_density_from_json_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<LlrAtom> atoms;
  auto parse_loc = [](const nlohmann::json& j) -> double {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "inf" || s == "+inf") return num::kInf;
      if (s == "-inf") return -num::kInf;
      throw std::invalid_argument("custom density: bad atom location '" + s + "'");
    }
    return j.get<double>();
  };
  if (doc.contains("atoms"))
    for (const auto& entry : doc.at("atoms"))
      atoms.push_back({parse_loc(entry.at(0)), entry.at(1).get<double>()});
  std::optional<ContinuousPart> cont;
  if (doc.contains("continuous")) {
    const auto& c = doc.at("continuous");
    const std::string type = c.at("type").get<std::string>();
    if (type == "gaussian") {
      cont = ContinuousPart::gaussian(c.at("mean").get<double>(),
                                      c.at("var").get<double>());
    } else if (type == "tabulated") {
      std::vector<std::pair<double, double>> pts;
      for (const auto& entry : c.at("points"))
        pts.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
      cont = ContinuousPart::tabulated(std::move(pts));
      double atom_mass = 0.0;
      for (const auto& a : atoms) atom_mass += a.mass;
      cont->scale_to(1.0 - atom_mass);
    } else {
      throw std::invalid_argument("custom density: unknown continuous type '" +
                                  type + "'");
    }
  }
  LlrDensity density(std::move(atoms), std::move(cont));
  density.validate();
  return density;
}

}  // namespace mbios
