#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbios/channel.hpp"
#include "mbios/ensemble.hpp"
#include "mbios/quantized_bounds.hpp"
#include "mbios/unquantized_bounds.hpp"

// Threshold searches over Eb/N0, the built-in threshold tables, and
// grid sweeps of the bounds.
namespace mbios::analysis {

enum class Method {
  CapacityLimit,
  TwoLevel,
  Quantized4,   // d = 2
  Quantized8,   // d = 3
  Unquantized,
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

struct ThresholdQuery {
  EnsembleSpec ensemble;
  Method method = Method::Unquantized;
  double bracket_lo_db = -3.0;
  double bracket_hi_db = 5.0;
  double tol_db = 1e-3;
  unquantized::SeriesConfig series;
  unsigned seed = quantized::kDefaultSeed;
};

// Rate upper bound of the selected method on the BIAWGN at the given
// Eb/N0 (capacity itself for CapacityLimit).
double rate_bound_at(const ThresholdQuery& q, double ebn0_db);

// Smallest Eb/N0 in the bracket at which the method's rate bound
// reaches the ensemble's design rate. Monotonicity in Eb/N0 is checked
// with a 16-point pre-scan; a scan-then-refine fallback handles the
// non-monotone case.
double threshold_ebn0(const ThresholdQuery& q);

struct TableCell {
  std::string method;
  double value_db;
  std::string provenance;  // "computed" or "paper-constant"
};

struct TableRow {
  std::string ensemble;
  double design_rate;
  std::vector<TableCell> cells;
};

// Builds threshold table 1, 2 or 3: computed columns (capacity limit,
// 2-level, 4-level, 8-level, un-quantized) plus cited reference
// columns (density-evolution threshold, and for table 1 the
// typical-pairs upper bound) carried as published constants.
std::vector<TableRow> reproduce_table(int id,
                                      unsigned seed = quantized::kDefaultSeed);

struct SweepPoint {
  double x;
  double value;
  bool trivial = false;
  std::string note;
};

// Density lower bound vs Eb/N0 at fixed code rate (figure-4 style).
std::vector<SweepPoint> sweep_density_bound(double rate,
                                            quantized::DensityMethod method,
                                            bool unquantized_method,
                                            const std::vector<double>& ebn0_grid_db);

// Threshold vs design rate for right-regular ensembles (figure-2 style).
std::vector<SweepPoint> sweep_right_regular_threshold(
    int a_r, const std::vector<double>& rate_grid, Method method,
    unsigned seed = quantized::kDefaultSeed);

// Normalized-density BER sweep at fixed capacity (figure-3 style);
// includes the legacy reconstruction when legacy is set.
std::vector<SweepPoint> sweep_ber_bound(double capacity_target, double epsilon,
                                        const std::vector<double>& t_grid,
                                        bool legacy,
                                        unquantized::SeriesConfig cfg = {});

// BIAWGN sigma with the requested capacity.
double sigma_for_capacity(double capacity_target);

}  // namespace mbios::analysis
