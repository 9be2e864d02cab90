#include "mbios/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace mbios::analysis {
namespace {

// Published reference columns carried alongside the computed ones.
struct ReferenceColumn {
  std::string method;
  std::vector<double> values_db;
};

struct TableLayout {
  std::vector<std::string> ensembles;
  std::vector<ReferenceColumn> references;
};

TableLayout table_layout(int id) {
  switch (id) {
    case 1:
      return {{"gallager_3_6", "gallager_4_6", "gallager_3_4"},
              {{"density_evolution", {1.110, 1.674, 1.003}},
               {"typical_pairs", {0.673, -0.423, -0.510}}}};
    case 2:
      return {{"table2_row1", "table2_row2", "table2_row3", "table2_row4"},
              {{"density_evolution", {0.809, 0.335, 0.310, 0.274}}}};
    case 3:
      return {{"table3_row1", "table3_row2", "table3_row3"},
              {{"density_evolution", {2.049, 1.874, 1.763}}}};
    default:
      throw std::invalid_argument("reproduce_table: id must be 1, 2 or 3");
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::CapacityLimit: return "capacity";
    case Method::TwoLevel: return "2level";
    case Method::Quantized4: return "q4";
    case Method::Quantized8: return "q8";
    case Method::Unquantized: return "unq";
  }
  throw std::logic_error("method_name: unreachable");
}

std::optional<Method> method_from_name(const std::string& name) {
  if (name == "capacity") return Method::CapacityLimit;
  if (name == "2level") return Method::TwoLevel;
  if (name == "q4") return Method::Quantized4;
  if (name == "q8") return Method::Quantized8;
  if (name == "unq") return Method::Unquantized;
  return std::nullopt;
}

double rate_bound_at(const ThresholdQuery& q, double ebn0_db) {
  const Channel ch = biawgn_from_ebn0(ebn0_db, q.ensemble.rate);
  switch (q.method) {
    case Method::CapacityLimit:
      return ch.capacity();
    case Method::TwoLevel:
      return quantized::rate_upper_bound_2level(ch, q.ensemble.check_degrees());
    case Method::Quantized4:
      return quantized::rate_upper_bound_quantized(ch, q.ensemble.check_degrees(),
                                                   2, q.seed);
    case Method::Quantized8:
      return quantized::rate_upper_bound_quantized(ch, q.ensemble.check_degrees(),
                                                   3, q.seed);
    case Method::Unquantized:
      return unquantized::rate_upper_bound_unquantized(
          ch, q.ensemble.check_degrees(), q.series);
  }
  throw std::logic_error("rate_bound_at: unreachable");
}

double threshold_ebn0(const ThresholdQuery& q) {
  q.ensemble.validate();
  const double target = q.ensemble.rate;
  auto deficit = [&](double db) { return rate_bound_at(q, db) - target; };

  double lo = q.bracket_lo_db, hi = q.bracket_hi_db;
  const int kScan = 16;
  std::vector<double> scan(kScan + 1);
  bool monotone = true;
  for (int i = 0; i <= kScan; ++i) {
    scan[i] = deficit(lo + (hi - lo) * i / kScan);
    if (i > 0 && scan[i] < scan[i - 1] - 1e-12) monotone = false;
  }
  if (scan[0] >= 0.0)
    throw std::domain_error("threshold_ebn0: bound already attains the rate "
                            "at the lower bracket edge");
  if (scan[kScan] < 0.0)
    throw std::domain_error("threshold_ebn0: bound stays below the rate over "
                            "the whole bracket");

  if (!monotone) {
    // Fall back to the first sign change of the scan, then refine there.
    for (int i = 1; i <= kScan; ++i) {
      if (scan[i] >= 0.0) {
        lo = q.bracket_lo_db + (q.bracket_hi_db - q.bracket_lo_db) * (i - 1) / kScan;
        hi = q.bracket_lo_db + (q.bracket_hi_db - q.bracket_lo_db) * i / kScan;
        break;
      }
    }
  }
  while (hi - lo > q.tol_db) {
    const double mid = 0.5 * (lo + hi);
    (deficit(mid) >= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<TableRow> reproduce_table(int id, unsigned seed) {
  const TableLayout layout = table_layout(id);
  std::vector<TableRow> rows;
  for (size_t e = 0; e < layout.ensembles.size(); ++e) {
    const EnsembleSpec ens = builtin_ensemble(layout.ensembles[e]);
    TableRow row{ens.name, ens.rate, {}};
    for (Method m : {Method::CapacityLimit, Method::TwoLevel, Method::Quantized4,
                     Method::Quantized8, Method::Unquantized}) {
      ThresholdQuery q;
      q.ensemble = ens;
      q.method = m;
      q.seed = seed;
      double th = threshold_ebn0(q);
      if (m == Method::Unquantized) {
        // Convergence probe: double the series truncation until the
        // rate bound at the threshold moves by less than 1e-6, then
        // recompute the threshold at the converged truncation.
        for (;;) {
          ThresholdQuery probe = q;
          probe.series.truncation_p *= 2;
          const double drift =
              std::abs(rate_bound_at(probe, th) - rate_bound_at(q, th));
          if (drift < 1e-6) break;
          if (probe.series.truncation_p > 10000)
            throw std::runtime_error(
                "reproduce_table: series truncation not converged");
          q.series = probe.series;
          th = threshold_ebn0(q);
        }
      }
      row.cells.push_back({method_name(m), th, "computed"});
    }
    for (const auto& ref : layout.references)
      row.cells.push_back({ref.method, ref.values_db[e], "paper-constant"});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepPoint> sweep_density_bound(double rate,
                                            quantized::DensityMethod method,
                                            bool unquantized_method,
                                            const std::vector<double>& ebn0_grid_db) {
  std::vector<SweepPoint> out;
  for (double db : ebn0_grid_db) {
    SweepPoint pt{db, 0.0, false, ""};
    const Channel ch = biawgn_from_ebn0(db, rate);
    const double c = ch.capacity();
    if (c <= rate) {
      // Below the capacity limit the gap is non-positive and the bound
      // does not apply.
      pt.trivial = true;
      pt.note = "below capacity limit";
    } else {
      const double eps = 1.0 - rate / c;
      if (unquantized_method) {
        const auto r = unquantized::density_lower_bound_unquantized(ch, eps);
        pt.value = r.value;
        pt.trivial = r.trivial;
      } else {
        const auto coeffs = quantized::density_bound_coeffs(ch, method);
        const auto r = quantized::density_lower_bound(coeffs, eps);
        pt.value = r.value;
        pt.trivial = r.trivial;
      }
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<SweepPoint> sweep_right_regular_threshold(
    int a_r, const std::vector<double>& rate_grid, Method method, unsigned seed) {
  if (a_r < 2)
    throw std::invalid_argument("right-regular sweep: a_R must be >= 2");
  std::vector<SweepPoint> out;
  for (double rate : rate_grid) {
    if (!(rate > 0.0 && rate < 1.0))
      throw std::invalid_argument("right-regular sweep: rate must be in (0,1)");
    EnsembleSpec ens;
    ens.name = "right_regular_" + std::to_string(a_r);
    CheckDegreeDistribution dk;
    dk.dk = {{a_r, 1.0}};
    dk.a_r = a_r;
    ens.dk_direct = dk;
    ens.rate = rate;
    ThresholdQuery q;
    q.ensemble = ens;
    q.method = method;
    q.seed = seed;
    out.push_back({rate, threshold_ebn0(q), false, ""});
  }
  return out;
}

std::vector<SweepPoint> sweep_ber_bound(double capacity_target, double epsilon,
                                        const std::vector<double>& t_grid,
                                        bool legacy,
                                        unquantized::SeriesConfig cfg) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("ber sweep: epsilon must be in (0,1)");
  const Channel ch = Channel::biawgn(sigma_for_capacity(capacity_target));
  const double rate = (1.0 - epsilon) * capacity_target;
  std::vector<SweepPoint> out;
  for (double t : t_grid) {
    if (legacy) {
      const auto r = unquantized::legacy_ber_bound(ch, rate, t);
      out.push_back({t, r.pb, r.trivial, "legacy"});
    } else {
      const auto r = unquantized::ber_lower_bound_normalized(ch, rate, t, cfg);
      out.push_back({t, r.pb, r.trivial, ""});
    }
  }
  return out;
}

double sigma_for_capacity(double capacity_target) {
  if (!(capacity_target > 0.0 && capacity_target < 1.0))
    throw std::invalid_argument("sigma_for_capacity: target must be in (0,1)");
  auto f = [capacity_target](double sigma) {
    return Channel::biawgn(sigma).capacity() - capacity_target;
  };
  num::ToleranceSpec tol;
  tol.abs_tol = 1e-10;
  return num::solve_root(f, {1e-3, 50.0}, tol);
}

}  // namespace mbios::analysis
