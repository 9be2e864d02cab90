#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Generic numerical kernels shared by every other module: adaptive
// Gauss-Kronrod quadrature, bracketed root finding, bounded multi-start
// maximization, and the binary entropy function with its power series
// and lower-branch inverse.
namespace mbios::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;
};

struct ToleranceSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 1 << 20;
};

// Thrown when an iterative scheme fails to converge; carries the best
// estimate available at the point of failure.
class NumericsError : public std::runtime_error {
 public:
  NumericsError(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}
  double partial() const { return partial_; }

 private:
  double partial_;
};

// Adaptive quadrature of f over a finite, semi-infinite or doubly
// infinite interval. Infinite endpoints are mapped to (0,1)/(-1,1) by
// rational substitutions.
double integrate(const std::function<double(double)>& f, Interval domain,
                 ToleranceSpec tol = {});

// Brent-style root finding; requires a sign change over the bracket.
double solve_root(const std::function<double(double)>& f, Interval bracket,
                  ToleranceSpec tol = {});

struct MaxResult {
  Eigen::VectorXd x;
  double value;
};

// Multi-start coordinate ascent with a golden-section line search per
// coordinate. Deterministic for a fixed seed; at least 8 seeded starts.
// extra_starts lets callers add structured candidates (e.g. embeddings
// of lower-dimensional optima).
MaxResult maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                   const std::vector<Interval>& box, ToleranceSpec tol = {},
                   unsigned seed = 0x9e3779b9u,
                   const std::vector<Eigen::VectorXd>& extra_starts = {});

// Binary entropy to base 2 with the 0*log(0) = 0 convention.
double h2(double x);

// 1 - (1/(2 ln 2)) * sum_{p=1}^{m} (1-2x)^{2p} / (p(2p-1)); an upper
// bound on h2(x) for every truncation order m.
double h2_series_truncated(double x, int m);

// The unique x in [0, 1/2] with h2(x) = y.
double h2_inverse_low(double y);

}  // namespace mbios::num
