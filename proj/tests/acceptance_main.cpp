// Acceptance runner: executes the nine acceptance criteria and prints
// one [PASS]/[FAIL] line per criterion. An optional argument selects a
// single criterion by number. Exit status is 0 only if every executed
// criterion passed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mbios/analysis.hpp"
#include "mbios/channel.hpp"
#include "mbios/ensemble.hpp"
#include "mbios/numerics.hpp"
#include "mbios/quantized_bounds.hpp"
#include "mbios/unquantized_bounds.hpp"

using namespace mbios;
using analysis::Method;

namespace {

constexpr double kLn2 = std::numbers::ln2_v<double>;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

CheckDegreeDistribution regular_dk(int k) {
  CheckDegreeDistribution dk;
  dk.dk = {{k, 1.0}};
  dk.a_r = k;
  return dk;
}

// ---- criteria 1-3: table regressions ------------------------------------

struct TableExpectation {
  int id;
  std::vector<std::vector<double>> rows;  // cap, 2lev, q4, q8, unq
};

bool check_table(const TableExpectation& exp, std::string* detail) {
  const auto rows = analysis::reproduce_table(exp.id);
  bool ok = rows.size() == exp.rows.size();
  std::string worst;
  double worst_err = 0.0;
  for (size_t r = 0; ok && r < rows.size(); ++r) {
    for (size_t c = 0; c < exp.rows[r].size(); ++c) {
      const double got = rows[r].cells[c].value_db;
      const double want = exp.rows[r][c];
      const double err = std::abs(got - want);
      if (err > worst_err) {
        worst_err = err;
        worst = rows[r].ensemble + "/" + rows[r].cells[c].method + " " +
                fmt(got) + " vs " + fmt(want);
      }
      if (err > 0.005) ok = false;
    }
  }
  *detail = "table " + std::to_string(exp.id) +
            " thresholds within 0.005 dB (worst " + worst + ")";
  return ok;
}

void criterion_1() {
  std::string detail;
  const bool ok = check_table(
      {1,
       {{0.187, 0.249, 0.332, 0.361, 0.371},
        {-0.495, -0.488, -0.472, -0.463, -0.463},
        {-0.794, -0.761, -0.713, -0.694, -0.687}}},
      &detail);
  report(1, ok, detail);
}

void criterion_2() {
  std::string detail;
  const bool ok = check_table(
      {2,
       {{0.187, 0.269, 0.370, 0.404, 0.417},
        {0.187, 0.201, 0.226, 0.236, 0.239},
        {0.187, 0.198, 0.221, 0.229, 0.232},
        {0.187, 0.194, 0.208, 0.214, 0.216}}},
      &detail);
  report(2, ok, detail);
}

void criterion_3() {
  std::string detail;
  const bool ok = check_table(
      {3,
       {{1.626, 1.698, 1.786, 1.815, 1.825},
        {1.626, 1.664, 1.718, 1.736, 1.742},
        {1.626, 1.647, 1.680, 1.691, 1.695}}},
      &detail);
  report(3, ok, detail);
}

// ---- criterion 4: BER / normalized-density example ----------------------

void criterion_4() {
  const double c_target = 0.5;
  const Channel ch = Channel::biawgn(analysis::sigma_for_capacity(c_target));
  const double rate = 0.99 * c_target;
  const double target_h2 = num::h2(1e-6);

  auto solve_t = [&](bool legacy) {
    auto f = [&](double t) {
      const auto r = legacy ? unquantized::legacy_ber_bound(ch, rate, t)
                            : unquantized::ber_lower_bound_normalized(ch, rate, t);
      return r.h2_pb - target_h2;
    };
    num::ToleranceSpec tol;
    tol.abs_tol = 1e-10;
    return num::solve_root(f, {1.0, 50.0}, tol);
  };
  auto delta_of = [&](double t) { return (2.0 - rate) * t / rate; };

  const double t_new = solve_t(false), t_old = solve_t(true);
  const double d_new = delta_of(t_new), d_old = delta_of(t_old);
  const bool ok = std::abs(t_new - 5.68) <= 0.02 &&
                  std::abs(d_new - 17.27) <= 0.05 &&
                  std::abs(t_old - 4.33) <= 0.02 &&
                  std::abs(d_old - 13.16) <= 0.05;
  report(4, ok,
         "BER example: t_min " + fmt(t_new) + " (expected 5.68+-0.02), "
         "density " + fmt(d_new) + " (expected 17.27+-0.05); legacy t_min " +
         fmt(t_old) + " (expected 4.33+-0.02), density " + fmt(d_old) +
         " (expected 13.16+-0.05)");
}

// ---- criterion 5: dominance suite ---------------------------------------

void criterion_5() {
  std::vector<double> sigmas;
  for (int i = 0; i < 10; ++i) sigmas.push_back(0.75 + 0.06 * i);
  const std::vector<std::string> names{"gallager_3_6", "gallager_3_4",
                                      "table2_row1"};
  bool ok = true;
  std::string fail;
  auto note = [&](const std::string& what) {
    if (ok) fail = what;
    ok = false;
  };

  for (double sigma : sigmas) {
    const Channel ch = Channel::biawgn(sigma);
    const double c = ch.capacity();
    const double w = ch.error_weight();
    const double a = ch.quantity_a();
    if (a < c - 1e-9 || a < (1.0 - 2.0 * w) * (1.0 - 2.0 * w) - 1e-9)
      note("A below max(C,(1-2w)^2) at sigma " + fmt(sigma));

    double prev_chi = 0.0;
    for (int d = 2; d <= 4; ++d) {
      const double chi = quantized::optimize_levels(ch, d).chi;
      if (chi < prev_chi - 1e-9)
        note("chi not monotone in d at sigma " + fmt(sigma));
      prev_chi = chi;
    }

    const auto two_coeffs =
        quantized::density_bound_coeffs(ch, quantized::DensityMethod::TwoLevel);
    const auto unq_coeffs = unquantized::density_bound_coeffs_unquantized(ch);
    for (double eps : {0.02, 0.1}) {
      if (unquantized::density_lower_bound_unquantized(ch, eps).value <
          quantized::density_lower_bound(two_coeffs, eps).value - 1e-9)
        note("density dominance fails at sigma " + fmt(sigma));
    }
    (void)unq_coeffs;

    for (const auto& name : names) {
      const auto dk = builtin_ensemble(name).check_degrees();
      const double two = quantized::rate_upper_bound_2level(ch, dk);
      const double q4 = quantized::rate_upper_bound_quantized(ch, dk, 2);
      const double q8 = quantized::rate_upper_bound_quantized(ch, dk, 3);
      const double unq = unquantized::rate_upper_bound_unquantized(ch, dk);
      if (!(unq <= q8 + 1e-9 && q8 <= q4 + 1e-9 && q4 <= two + 1e-9 &&
            two <= c + 1e-9))
        note("rate-bound chain fails for " + name + " at sigma " + fmt(sigma));
    }
  }
  report(5, ok,
         ok ? "dominance chain, chi monotonicity, A inequality and density "
              "dominance hold on the 10-sigma grid"
            : fail);
}

// ---- criterion 6: collapse identities -----------------------------------

void criterion_6() {
  bool ok = true;
  std::string fail;
  auto note = [&](const std::string& what) {
    if (ok) fail = what;
    ok = false;
  };

  // BSC: the series re-sums to the 2-level bound.
  for (double eps : {0.05, 0.11}) {
    const Channel ch = Channel::bsc(eps);
    const auto dk = regular_dk(6);
    const double unq = unquantized::rate_upper_bound_unquantized(ch, dk, {200});
    const double two = quantized::rate_upper_bound_2level(ch, dk);
    if (std::abs(unq - two) > 1e-9)
      note("BSC rate collapse off by " + std::to_string(unq - two));
    const auto tc =
        quantized::density_bound_coeffs(ch, quantized::DensityMethod::TwoLevel);
    const auto uc = unquantized::density_bound_coeffs_unquantized(ch);
    if (std::abs(tc.k1 - uc.k1) > 1e-9 || std::abs(tc.k2 - uc.k2) > 1e-9)
      note("BSC density coefficient collapse fails");
  }

  // BEC: the series factorizes; with a deep truncation the un-quantized
  // rate bound equals the erasure form shared by the quantized bound,
  // and the density coefficients match the erasure-specific ones.
  for (double p : {0.3, 0.5}) {
    const Channel ch = Channel::bec(p);
    const auto dk = regular_dk(6);
    const double erasure = 1.0 - p / (1.0 - std::pow(1.0 - p, 6));
    const double unq =
        unquantized::rate_upper_bound_unquantized(ch, dk, {50000000});
    const double quant = quantized::rate_upper_bound_quantized(ch, dk, 2);
    if (std::abs(unq - erasure) > 1e-9 || std::abs(quant - erasure) > 1e-9)
      note("BEC rate collapse fails at p " + fmt(p));
    const auto bc = quantized::density_bound_coeffs(
        ch, quantized::DensityMethod::TwoLevelBec);
    const auto uc = unquantized::density_bound_coeffs_unquantized(ch);
    if (std::abs(bc.k1 - uc.k1) > 1e-9 || std::abs(bc.k2 - uc.k2) > 1e-9)
      note("BEC density coefficient collapse fails at p " + fmt(p));

    // Conditional-entropy bound collapses to the erasure form
    // p - (1-R) (1 - sum_k d_k (1-p)^k).
    const double rate = 0.5;
    const double erasure_entropy =
        p - (1.0 - rate) * (1.0 - std::pow(1.0 - p, 6));
    const double got =
        unquantized::entropy_lower_bound(ch, rate, dk, {50000000});
    if (std::abs(got - erasure_entropy) > 1e-9)
      note("BEC entropy collapse off by " +
           std::to_string(got - erasure_entropy));
  }
  report(6, ok,
         ok ? "BSC and BEC collapse identities hold to 1e-9" : fail);
}

// ---- criterion 7: oracle equivalence on small instances -----------------

void criterion_7() {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool ok = true;
  std::string fail;
  double worst = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 2;
    const int k = 1 + trial % 8;
    const int cells = 1 << d, pairs = cells / 2;

    Eigen::VectorXd probs(cells);
    double total = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const double mass = 0.05 + unif(rng);
      const double split = 0.5 + 0.5 * unif(rng);
      probs[i] = mass * split;
      probs[cells - 1 - i] = mass * (1.0 - split);
      total += mass;
    }
    probs /= total;
    const TransitionProbs tp{d, probs};

    std::vector<double> q(pairs), r(pairs);
    for (int i = 0; i < pairs; ++i) {
      q[i] = probs[i] + probs[cells - 1 - i];
      r[i] = (probs[i] - probs[cells - 1 - i]) / q[i];
    }

    // Oracle: expectation over all pair-index sequences of length k,
    // the even/odd-difference outcome probabilities spelled out.
    double oracle = 0.0, surrogate_oracle = 0.0;
    std::vector<int> idx(k, 0);
    while (true) {
      double weight = 1.0, contrast = 1.0;
      for (int j = 0; j < k; ++j) {
        weight *= q[idx[j]];
        contrast *= r[idx[j]];
      }
      oracle += weight * num::h2(0.5 * (1.0 - contrast));
      surrogate_oracle += weight * (1.0 - contrast * contrast / (2.0 * kLn2));
      int j = 0;
      for (; j < k; ++j) {
        if (++idx[j] < pairs) break;
        idx[j] = 0;
      }
      if (j == k) break;
    }

    const double got = quantized::entropy_sum_quantized(regular_dk(k), tp);
    worst = std::max(worst, std::abs(got - oracle));
    if (std::abs(got - oracle) > 1e-10) {
      if (ok) fail = "entropy sum disagrees with the oracle (d=" +
                     std::to_string(d) + ", k=" + std::to_string(k) + ")";
      ok = false;
    }

    // Quadratic surrogate: replacing h2 by its one-term series makes
    // the composition sum collapse to 1 - chi^k / (2 ln 2).
    const double chi = quantized::chi_objective(tp);
    const double closed = 1.0 - std::pow(chi, k) / (2.0 * kLn2);
    if (std::abs(surrogate_oracle - closed) > 1e-12) {
      if (ok) fail = "quadratic surrogate mismatch (d=" + std::to_string(d) +
                     ", k=" + std::to_string(k) + ")";
      ok = false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  report(7, ok,
         ok ? std::string("entropy sums match brute-force oracles on 50 "
                          "random instances (worst gap ") + buf + ")"
            : fail);
}

// ---- criterion 8: d=2 stationarity --------------------------------------

void criterion_8() {
  bool ok = true;
  double worst = 0.0;
  std::string fail;
  for (double sigma : {0.8, 0.9, 0.98, 1.05, 1.15, 1.25}) {
    const Channel ch = Channel::biawgn(sigma);
    const auto opt = quantized::optimize_levels(ch, 2);
    const double l = opt.levels.levels[0];
    const auto& p = opt.probs.probs;
    const double inner =
        (p[2] * p[2] + std::exp(-l) * p[1] * p[1]) /
        ((p[1] + p[2]) * (p[1] + p[2]));
    const double outer =
        (p[3] * p[3] + std::exp(-l) * p[0] * p[0]) /
        ((p[0] + p[3]) * (p[0] + p[3]));
    const double residual = std::abs(inner - outer);
    worst = std::max(worst, residual);
    if (residual >= 1e-6) {
      if (ok) fail = "stationarity residual " + std::to_string(residual) +
                     " at sigma " + fmt(sigma);
      ok = false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  report(8, ok,
         ok ? std::string("optimal d=2 level satisfies the stationarity "
                          "condition (worst residual ") + buf + ")"
            : fail);
}

// ---- criterion 9: epsilon0 consistency ----------------------------------

void criterion_9() {
  struct Pair {
    Channel channel;
    CheckDegreeDistribution dk;
    std::string name;
  };
  const std::vector<Pair> pairs{
      {Channel::biawgn(1.0), regular_dk(6), "biawgn(1.0)/reg6"},
      {Channel::biawgn(0.9787), builtin_ensemble("gallager_3_6").check_degrees(),
       "biawgn(0.9787)/(3,6)"},
      {Channel::biawgn(1.2), regular_dk(4), "biawgn(1.2)/reg4"},
      {Channel::bsc(0.08), regular_dk(6), "bsc(0.08)/reg6"},
      {Channel::bsc(0.05), regular_dk(10), "bsc(0.05)/reg10"},
  };
  bool ok = true;
  std::string fail;
  for (const auto& pr : pairs) {
    const double c = pr.channel.capacity();
    const double e0 = unquantized::epsilon0_degree(pr.channel, pr.dk);
    const auto lo =
        unquantized::ber_lower_bound(pr.channel, (1.0 - (e0 - 1e-6)) * c, pr.dk);
    const auto hi =
        unquantized::ber_lower_bound(pr.channel, (1.0 - (e0 + 1e-6)) * c, pr.dk);
    if (!(lo.h2_pb > 0.0 && hi.h2_pb < 0.0)) {
      if (ok) fail = "degree-profile sign flip missed for " + pr.name;
      ok = false;
    }

    const double t = 2.0;
    const double e0n = unquantized::epsilon0_normalized(pr.channel, t);
    const auto nlo = unquantized::ber_lower_bound_normalized(
        pr.channel, (1.0 - (e0n - 1e-6)) * c, t);
    const auto nhi = unquantized::ber_lower_bound_normalized(
        pr.channel, (1.0 - (e0n + 1e-6)) * c, t);
    if (!(nlo.h2_pb > 0.0 && nhi.h2_pb < 0.0)) {
      if (ok) fail = "normalized sign flip missed for " + pr.name;
      ok = false;
    }
  }
  report(9, ok,
         ok ? "bounds change sign at epsilon0 within 1e-6 for all 5 pairs"
            : fail);
}

}  // namespace

int main(int argc, char** argv) {
  const int pick = argc > 1 ? std::atoi(argv[1]) : 0;
  if (argc > 1 && (pick < 1 || pick > 9)) {
    std::fprintf(stderr, "usage: %s [criterion 1-9]\n", argv[0]);
    return 2;
  }
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3,
                          criterion_4, criterion_5, criterion_6,
                          criterion_7, criterion_8, criterion_9};
  if (pick > 0) {
    criteria[pick - 1]();
  } else {
    for (auto* fn : criteria) fn();
  }
  return g_failures == 0 ? 0 : 1;
}
