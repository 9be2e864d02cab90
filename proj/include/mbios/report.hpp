#pragma once

#include <map>
#include <string>
#include <vector>

// Structured result documents emitted by the CLI: a flat row table with
// provenance tags, rendered to CSV or JSON with deterministic ordering.
namespace mbios::report {

struct ReportRow {
  std::string ensemble;     // or "-" when no ensemble is involved
  double design_rate = 0.0; // 0 when not applicable
  std::string method;
  double value = 0.0;
  std::string unit;         // "dB", "rate", "density", "prob", ...
  bool trivial = false;
  std::string provenance;   // "computed" or "paper-constant"
};

struct ReportDocument {
  std::string command;
  std::string version;
  std::string timestamp;
  std::map<std::string, std::string> inputs;
  std::vector<ReportRow> rows;
};

// Header `ensemble,design_rate,method,value,unit,trivial,provenance`;
// dB values to 4 decimals, everything else to 9 significant digits.
std::string render_csv(const ReportDocument& doc);

std::string render_json(const ReportDocument& doc);
ReportDocument parse_json(const std::string& text);

}  // namespace mbios::report
