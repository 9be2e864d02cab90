#include "mbios/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

namespace mbios::num {
namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct RuleResult {
  double integral;
  double error;
};

RuleResult gauss_kronrod(const std::function<double(double)>& f, double a,
                         double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double gk = kKronrodWeights[7] * fc;
  double g = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    gk += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * fsum;
  }
  gk *= h;
  g *= h;
  return {gk, std::abs(gk - g)};
}

struct Segment {
  double a, b, integral, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

double adaptive(const std::function<double(double)>& f, double a, double b,
                const ToleranceSpec& tol) {
  std::priority_queue<Segment> queue;
  RuleResult r = gauss_kronrod(f, a, b);
  queue.push({a, b, r.integral, r.error});
  double total = r.integral;
  double total_err = r.error;
  int splits = 0;
  while (total_err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
    if (++splits > tol.max_subdivisions)
      throw NumericsError("quadrature failed to converge", total);
    Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      // Interval no longer splittable at double precision; accept it.
      if (queue.empty()) break;
      total_err -= s.error;
      continue;
    }
    RuleResult left = gauss_kronrod(f, s.a, mid);
    RuleResult right = gauss_kronrod(f, mid, s.b);
    total += left.integral + right.integral - s.integral;
    total_err += left.error + right.error - s.error;
    queue.push({s.a, mid, left.integral, left.error});
    queue.push({mid, s.b, right.integral, right.error});
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, Interval domain,
                 ToleranceSpec tol) {
  if (!(domain.lo < domain.hi))
    throw std::invalid_argument("integrate: empty interval");
  const bool lo_inf = std::isinf(domain.lo);
  const bool hi_inf = std::isinf(domain.hi);
  if (!lo_inf && !hi_inf) return adaptive(f, domain.lo, domain.hi, tol);
  if (lo_inf && hi_inf) {
    // x = t/(1-t^2), t in (-1,1)
    auto g = [&f](double t) {
      const double q = 1.0 - t * t;
      return f(t / q) * (1.0 + t * t) / (q * q);
    };
    return adaptive(g, -1.0 + 1e-15, 1.0 - 1e-15, tol);
  }
  if (hi_inf) {
    // x = a + t/(1-t), t in (0,1)
    const double a = domain.lo;
    auto g = [&f, a](double t) {
      const double q = 1.0 - t;
      return f(a + t / q) / (q * q);
    };
    return adaptive(g, 0.0, 1.0 - 1e-15, tol);
  }
  // x = b - t/(1-t), t in (0,1)
  const double b = domain.hi;
  auto g = [&f, b](double t) {
    const double q = 1.0 - t;
    return f(b - t / q) / (q * q);
  };
  return adaptive(g, 0.0, 1.0 - 1e-15, tol);
}

double solve_root(const std::function<double(double)>& f, Interval bracket,
                  ToleranceSpec tol) {
  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("solve_root: no sign change in bracket");
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
        0.5 * tol.abs_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.abs_tol)
      return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation / secant step.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw NumericsError("solve_root: iteration limit", b);
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 90 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

MaxResult maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                   const std::vector<Interval>& box, ToleranceSpec tol,
                   unsigned seed,
                   const std::vector<Eigen::VectorXd>& extra_starts) {
  const int dim = static_cast<int>(box.size());
  if (dim < 1 || dim > 7)
    throw std::invalid_argument("maximize: dimension must be in [1,7]");
  std::vector<Eigen::VectorXd> starts = extra_starts;
  Eigen::VectorXd center(dim);
  for (int i = 0; i < dim; ++i) center[i] = 0.5 * (box[i].lo + box[i].hi);
  starts.push_back(center);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (starts.size() < extra_starts.size() + 9) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i)
      x[i] = box[i].lo + unit(rng) * (box[i].hi - box[i].lo);
    starts.push_back(x);
  }

  MaxResult best{starts.front(), -kInf};
  for (Eigen::VectorXd x : starts) {
    for (int i = 0; i < dim; ++i)
      x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
    double fx = f(x);
    for (int sweep = 0; sweep < 80; ++sweep) {
      const double prev = fx;
      for (int i = 0; i < dim; ++i) {
        auto slice = [&](double xi) {
          Eigen::VectorXd y = x;
          y[i] = xi;
          return f(y);
        };
        // Accept the line-search result only when it improves; golden
        // section can land poorly on a multimodal slice and must not
        // degrade a good starting point.
        const double cand = golden_section_max(slice, box[i].lo, box[i].hi);
        const double fcand = slice(cand);
        if (fcand > fx) {
          x[i] = cand;
          fx = fcand;
        }
      }
      if (fx - prev <= std::max(tol.abs_tol, tol.rel_tol * std::abs(fx)))
        break;
    }
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

double h2(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("h2: argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

double h2_series_truncated(double x, int m) {
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("h2_series_truncated: argument outside [0,1]");
  if (m < 1) throw std::domain_error("h2_series_truncated: m must be >= 1");
  const double z = (1.0 - 2.0 * x) * (1.0 - 2.0 * x);
  double zp = 1.0;
  double sum = 0.0;
  for (int p = 1; p <= m; ++p) {
    zp *= z;
    sum += zp / (p * (2.0 * p - 1.0));
  }
  return 1.0 - sum / (2.0 * std::numbers::ln2_v<double>);
}

double h2_inverse_low(double y) {
  if (y < 0.0 || y > 1.0)
    throw std::domain_error("h2_inverse_low: argument outside [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  ToleranceSpec tol;
  tol.abs_tol = 1e-15;
  return solve_root([y](double x) { return h2(x) - y; }, {0.0, 0.5}, tol);
}

}  // namespace mbios::num
