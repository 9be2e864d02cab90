#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mbios/numerics.hpp"

using namespace mbios::num;

TEST_CASE("gaussian integral over the whole line") {
  const double v = integrate([](double x) { return std::exp(-x * x); },
                             {-kInf, kInf});
  CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("semi-infinite exponential tails") {
  CHECK(integrate([](double x) { return std::exp(-x); }, {0.0, kInf}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(x); }, {-kInf, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Shifted lower endpoint.
  CHECK(integrate([](double x) { return std::exp(-(x - 2.0)); }, {2.0, kInf}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("finite oscillatory integral") {
  const double v = integrate([](double x) { return std::sin(x); },
                             {0.0, std::numbers::pi});
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature linearity") {
  auto f = [](double x) { return std::exp(-x * x / 2.0); };
  const Interval dom{-kInf, kInf};
  const double a = integrate(f, dom);
  const double b = integrate([&](double x) { return 3.0 * f(x); }, dom);
  CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-12));
}

TEST_CASE("root finding: sqrt(2) and a transcendental") {
  const double r = solve_root([](double x) { return x * x - 2.0; }, {0.0, 2.0});
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const double s = solve_root([](double x) { return std::cos(x) - x; },
                              {0.0, 1.0});
  CHECK(std::cos(s) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("root finding requires a sign change") {
  CHECK_THROWS(solve_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}));
}

TEST_CASE("binary entropy basics") {
  CHECK(h2(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h2(0.0) == 0.0);
  CHECK(h2(1.0) == 0.0);
  CHECK(h2(0.11) == doctest::Approx(h2(0.89)).epsilon(1e-14));
  CHECK_THROWS(h2(-0.1));
  CHECK_THROWS(h2(1.1));
}

TEST_CASE("entropy series: truncations decrease toward h2") {
  // Dropping tail terms of the expansion only raises the value, so the
  // truncations approach h2 from above.
  for (double x : {0.05, 0.2, 0.35, 0.49}) {
    double prev = 2.0;
    for (int m = 1; m <= 20; ++m) {
      const double s = h2_series_truncated(x, m);
      CHECK(s <= prev + 1e-15);
      CHECK(s >= h2(x) - 1e-12);
      prev = s;
    }
    CHECK(h2_series_truncated(x, 2000) == doctest::Approx(h2(x)).epsilon(1e-7));
  }
}

TEST_CASE("entropy series first term") {
  // One term: 1 - (2/ln 2)(1/2 - x)^2.
  const double x = 0.3;
  const double expect = 1.0 - 2.0 / std::numbers::ln2 * 0.2 * 0.2;
  CHECK(h2_series_truncated(x, 1) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("entropy inverse round-trip on [0, 1/2]") {
  for (double y : {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999, 1.0}) {
    const double x = h2_inverse_low(y);
    CHECK(x <= 0.5);
    CHECK(h2(x) == doctest::Approx(y).epsilon(1e-9));
  }
  CHECK(h2_inverse_low(0.0) == 0.0);
}

TEST_CASE("maximizer finds a smooth interior optimum") {
  auto f = [](const Eigen::VectorXd& x) {
    return -(x[0] - 0.3) * (x[0] - 0.3) - 2.0 * (x[1] - 0.7) * (x[1] - 0.7);
  };
  const auto r = maximize(f, {{0.0, 1.0}, {0.0, 1.0}});
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(0.7).epsilon(1e-5));
}

TEST_CASE("maximizer is deterministic for a fixed seed") {
  auto f = [](const Eigen::VectorXd& x) {
    return std::sin(5.0 * x[0]) + std::cos(3.0 * x[1]);
  };
  const auto a = maximize(f, {{0.0, 2.0}, {0.0, 2.0}}, {}, 7u);
  const auto b = maximize(f, {{0.0, 2.0}, {0.0, 2.0}}, {}, 7u);
  CHECK(a.value == b.value);
  CHECK(a.x == b.x);
}

TEST_CASE("maximizer honors extra starting points") {
  // A narrow spike the random starts are unlikely to find on their own.
  auto f = [](const Eigen::VectorXd& x) {
    const double d = x[0] - 0.123456;
    return std::exp(-1e8 * d * d);
  };
  Eigen::VectorXd hint(1);
  hint << 0.1234;
  const auto r = maximize(f, {{0.0, 1.0}}, {}, 1u, {hint});
  // The seeded start must never be degraded, even when line searches
  // cannot improve on it.
  const double d = hint[0] - 0.123456;
  CHECK(r.value >= std::exp(-1e8 * d * d) - 1e-12);
  const auto unseeded = maximize(f, {{0.0, 1.0}}, {}, 1u);
  CHECK(r.value >= unseeded.value);
}
