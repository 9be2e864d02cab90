#include "mbios/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "mbios/analysis.hpp"
#include "mbios/report.hpp"

namespace mbios::cli {
namespace {

using analysis::Method;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& field, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InputError("invalid numeric value for '" + field + "': " + text);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "bec:p=0.5" / "bsc:eps=0.11" / "biawgn:ebn0_db=0.371,rate=0.5" /
// "custom:file=density.json". Returns the channel and, for BIAWGN, the
// design rate used in the Eb/N0 mapping.
std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InputError("expected key=value in channel spec, got: " + item);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

Channel parse_channel(const std::string& spec, double* biawgn_rate) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InputError("channel spec must look like kind:key=value,...: " + spec);
  const std::string kind = spec.substr(0, colon);
  auto kv = parse_kv(spec.substr(colon + 1));
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw InputError("channel spec missing field '" + std::string(key) + "'");
    return it->second;
  };
  if (kind == "bec") return Channel::bec(parse_number("p", take("p")));
  if (kind == "bsc") return Channel::bsc(parse_number("eps", take("eps")));
  if (kind == "biawgn") {
    const double db = parse_number("ebn0_db", take("ebn0_db"));
    const double rate = parse_number("rate", take("rate"));
    if (biawgn_rate) *biawgn_rate = rate;
    return biawgn_from_ebn0(db, rate);
  }
  if (kind == "custom") {
    try {
      return Channel::custom(llr_density_from_json_text(slurp(take("file"))));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(std::string("bad custom density file: ") + e.what());
    }
  }
  throw InputError("unknown channel kind: " + kind);
}

EnsembleSpec parse_ensemble(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw InputError("ensemble spec must be file=PATH or builtin=NAME: " + spec);
  const std::string key = spec.substr(0, eq), val = spec.substr(eq + 1);
  try {
    if (key == "builtin") return builtin_ensemble(val);
    if (key == "file") return ensemble_from_json_text(slurp(val));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad ensemble spec: ") + e.what());
  }
  throw InputError("unknown ensemble source: " + key);
}

Method parse_method(const std::string& name) {
  const auto m = analysis::method_from_name(name);
  if (!m) throw InputError("unknown method: " + name);
  return *m;
}

unsigned seed_from_env() {
  if (const char* s = std::getenv("MBIOS_BOUNDS_SEED"))
    return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
  return quantized::kDefaultSeed;
}

std::string timestamp_from_env() {
  if (const char* s = std::getenv("MBIOS_BOUNDS_TIMESTAMP")) return s;
  return "unspecified";
}

std::string format_coord(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%.4f", key, v);
  return buf;
}

struct OutputOptions {
  std::string out_path;
  std::string format;  // "", "csv" or "json"
};

void emit(const report::ReportDocument& doc, const OutputOptions& opts) {
  std::string fmt = opts.format;
  if (fmt.empty()) {
    fmt = "csv";
    if (opts.out_path.size() >= 5 &&
        opts.out_path.compare(opts.out_path.size() - 5, 5, ".json") == 0)
      fmt = "json";
  }
  const std::string text =
      fmt == "json" ? report::render_json(doc) : report::render_csv(doc);
  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + opts.out_path);
    out << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& argv) {
  CLI::App app{"Information-theoretic bounds for LDPC ensembles over "
               "MBIOS channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string channel_spec, ensemble_spec, method_name = "unq";
  int series_p = 10;
  double epsilon = 0.0, t_density = 0.0, rate_flag = 0.0;
  int table_id = 0;
  std::string sweep_name;
  OutputOptions out;

  auto add_output = [&out](CLI::App* sub) {
    sub->add_option("--out", out.out_path, "Write the report to this file");
    sub->add_option("--format", out.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_channel = [&channel_spec](CLI::App* sub, bool required) {
    auto* opt = sub->add_option(
        "--channel", channel_spec,
        "bec:p=... | bsc:eps=... | biawgn:ebn0_db=...,rate=... | "
        "custom:file=...");
    if (required) opt->required();
  };
  auto add_series = [&series_p](CLI::App* sub) {
    sub->add_option("--series-p", series_p, "Series truncation order")
        ->check(CLI::PositiveNumber);
  };

  auto* cap = app.add_subcommand("capacity", "Channel capacity");
  add_channel(cap, true);
  add_output(cap);

  auto* rb = app.add_subcommand("rate-bound", "Rate upper bound");
  add_channel(rb, true);
  rb->add_option("--ensemble", ensemble_spec, "file=PATH | builtin=NAME")
      ->required();
  rb->add_option("--method", method_name, "2level | q4 | q8 | unq");
  add_series(rb);
  add_output(rb);

  auto* db = app.add_subcommand("density-bound",
                                "Parity-check density lower bound");
  add_channel(db, true);
  db->add_option("--method", method_name, "2level | q4 | q8 | unq");
  db->add_option("--epsilon", epsilon, "Multiplicative gap to capacity")
      ->required();
  add_output(db);

  auto* bb = app.add_subcommand("ber-bound", "Bit error probability lower bound");
  add_channel(bb, true);
  bb->add_option("--rate", rate_flag, "Code rate")->required();
  bb->add_option("--ensemble", ensemble_spec,
                 "Degree-profile form: file=PATH | builtin=NAME");
  bb->add_option("--t", t_density, "Normalized-density form: t >= 1");
  add_series(bb);
  add_output(bb);

  auto* th = app.add_subcommand("threshold", "Eb/N0 threshold on the BIAWGN");
  th->add_option("--ensemble", ensemble_spec, "file=PATH | builtin=NAME")
      ->required();
  th->add_option("--method", method_name, "capacity | 2level | q4 | q8 | unq");
  add_series(th);
  add_output(th);

  auto* tb = app.add_subcommand("table", "Regenerate a threshold table");
  tb->add_option("id", table_id, "Table number")->required()
      ->check(CLI::Range(1, 3));
  add_output(tb);

  auto* sw = app.add_subcommand("sweep", "Figure-style parameter sweeps");
  sw->add_option("name", sweep_name, "fig2 | fig3 | fig4")->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  add_series(sw);
  add_output(sw);

  std::vector<const char*> ptrs;
  for (const auto& a : argv) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  const unsigned seed = seed_from_env();
  report::ReportDocument doc;
  {
    std::string echo;
    for (size_t i = 1; i < argv.size(); ++i) {
      if (i > 1) echo += ' ';
      echo += argv[i];
    }
    doc.command = echo;
  }
  doc.version = kVersion;
  doc.timestamp = timestamp_from_env();

  try {
    unquantized::SeriesConfig cfg{series_p};
    doc.inputs["series_p"] = std::to_string(series_p);
    doc.inputs["seed"] = std::to_string(seed);

    if (cap->parsed()) {
      doc.inputs["channel"] = channel_spec;
      const Channel ch = parse_channel(channel_spec, nullptr);
      doc.rows.push_back({"-", 0.0, "capacity", ch.capacity(), "rate", false,
                          "computed"});
    } else if (rb->parsed()) {
      doc.inputs["channel"] = channel_spec;
      doc.inputs["ensemble"] = ensemble_spec;
      doc.inputs["method"] = method_name;
      const Channel ch = parse_channel(channel_spec, nullptr);
      const EnsembleSpec ens = parse_ensemble(ensemble_spec);
      ens.validate();
      const auto dk = ens.check_degrees();
      double value = 0.0;
      switch (parse_method(method_name)) {
        case Method::CapacityLimit:
          value = ch.capacity();
          break;
        case Method::TwoLevel:
          value = quantized::rate_upper_bound_2level(ch, dk);
          break;
        case Method::Quantized4:
          value = quantized::rate_upper_bound_quantized(ch, dk, 2, seed);
          break;
        case Method::Quantized8:
          value = quantized::rate_upper_bound_quantized(ch, dk, 3, seed);
          break;
        case Method::Unquantized:
          value = unquantized::rate_upper_bound_unquantized(ch, dk, cfg);
          break;
      }
      doc.rows.push_back({ens.name, ens.rate, method_name, value, "rate",
                          false, "computed"});
    } else if (db->parsed()) {
      doc.inputs["channel"] = channel_spec;
      doc.inputs["method"] = method_name;
      doc.inputs["epsilon"] = std::to_string(epsilon);
      const Channel ch = parse_channel(channel_spec, nullptr);
      double value;
      bool trivial;
      switch (parse_method(method_name)) {
        case Method::Unquantized: {
          const auto r = unquantized::density_lower_bound_unquantized(ch, epsilon);
          value = r.value;
          trivial = r.trivial;
          break;
        }
        case Method::TwoLevel: {
          const auto m = ch.kind() == Channel::Kind::Bec
                             ? quantized::DensityMethod::TwoLevelBec
                             : quantized::DensityMethod::TwoLevel;
          const auto r = quantized::density_lower_bound(
              quantized::density_bound_coeffs(ch, m), epsilon);
          value = r.value;
          trivial = r.trivial;
          break;
        }
        case Method::Quantized4:
        case Method::Quantized8: {
          const int d = parse_method(method_name) == Method::Quantized4 ? 2 : 3;
          const auto r = quantized::density_lower_bound(
              quantized::density_bound_coeffs(
                  ch, quantized::DensityMethod::Quantized, d, seed),
              epsilon);
          value = r.value;
          trivial = r.trivial;
          break;
        }
        default:
          throw InputError("density-bound: method must be 2level, q4, q8 or unq");
      }
      doc.rows.push_back({"-", 0.0, method_name, value, "density", trivial,
                          "computed"});
    } else if (bb->parsed()) {
      doc.inputs["channel"] = channel_spec;
      doc.inputs["rate"] = std::to_string(rate_flag);
      const Channel ch = parse_channel(channel_spec, nullptr);
      if (!ensemble_spec.empty()) {
        doc.inputs["ensemble"] = ensemble_spec;
        const EnsembleSpec ens = parse_ensemble(ensemble_spec);
        ens.validate();
        const auto r =
            unquantized::ber_lower_bound(ch, rate_flag, ens.check_degrees(), cfg);
        doc.rows.push_back({ens.name, rate_flag, "ber_profile", r.pb, "prob",
                            r.trivial, "computed"});
      } else if (t_density > 0.0) {
        doc.inputs["t"] = std::to_string(t_density);
        const auto r =
            unquantized::ber_lower_bound_normalized(ch, rate_flag, t_density, cfg);
        doc.rows.push_back({"-", rate_flag, "ber_normalized", r.pb, "prob",
                            r.trivial, "computed"});
      } else {
        throw InputError("ber-bound needs --ensemble or --t");
      }
    } else if (th->parsed()) {
      doc.inputs["ensemble"] = ensemble_spec;
      doc.inputs["method"] = method_name;
      analysis::ThresholdQuery q;
      q.ensemble = parse_ensemble(ensemble_spec);
      q.method = parse_method(method_name);
      q.series = cfg;
      q.seed = seed;
      doc.rows.push_back({q.ensemble.name, q.ensemble.rate, method_name,
                          analysis::threshold_ebn0(q), "dB", false, "computed"});
    } else if (tb->parsed()) {
      doc.inputs["table"] = std::to_string(table_id);
      for (const auto& row : analysis::reproduce_table(table_id, seed))
        for (const auto& cell : row.cells)
          doc.rows.push_back({row.ensemble, row.design_rate, cell.method,
                              cell.value_db, "dB", false, cell.provenance});
    } else if (sw->parsed()) {
      doc.inputs["sweep"] = sweep_name;
      if (sweep_name == "fig2") {
        const std::vector<double> rates{0.3, 0.4, 0.5, 0.6, 0.7};
        for (Method m : {Method::CapacityLimit, Method::TwoLevel,
                         Method::Quantized4, Method::Quantized8,
                         Method::Unquantized})
          for (const auto& pt :
               analysis::sweep_right_regular_threshold(6, rates, m, seed))
            doc.rows.push_back({"right_regular_6", pt.x,
                                analysis::method_name(m), pt.value, "dB",
                                pt.trivial, "computed"});
      } else if (sweep_name == "fig3") {
        std::vector<double> ts;
        for (double t = 1.0; t <= 10.0 + 1e-9; t += 0.5) ts.push_back(t);
        const double eps = 0.01, c_target = 0.5;
        const double rate = (1.0 - eps) * c_target;
        for (bool legacy : {false, true})
          for (const auto& pt :
               analysis::sweep_ber_bound(c_target, eps, ts, legacy, cfg))
            doc.rows.push_back(
                {"-", rate,
                 std::string(legacy ? "legacy:" : "ber_normalized:") +
                     format_coord("t", pt.x),
                 pt.value, "prob", pt.trivial, "computed"});
      } else {  // fig4
        std::vector<double> grid;
        for (double x = 0.25; x <= 3.0 + 1e-9; x += 0.25) grid.push_back(x);
        for (bool unq : {false, true})
          for (const auto& pt : analysis::sweep_density_bound(
                   0.5, quantized::DensityMethod::TwoLevel, unq, grid))
            doc.rows.push_back({"-", 0.5,
                                std::string(unq ? "unq:" : "2level:") +
                                    format_coord("ebn0_db", pt.x),
                                pt.value, "density", pt.trivial, "computed"});
      }
    }
    emit(doc, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace mbios::cli
