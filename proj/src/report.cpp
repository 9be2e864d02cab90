#include "mbios/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace mbios::report {
namespace {

std::string format_value(double v, const std::string& unit) {
  char buf[64];
  if (unit == "dB")
    std::snprintf(buf, sizeof(buf), "%.4f", v);
  else
    std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_rate(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", r);
  return buf;
}

}  // namespace

std::string render_csv(const ReportDocument& doc) {
  std::string out = "ensemble,design_rate,method,value,unit,trivial,provenance\n";
  for (const auto& row : doc.rows) {
    out += row.ensemble + ',' + format_rate(row.design_rate) + ',' +
           row.method + ',' + format_value(row.value, row.unit) + ',' +
           row.unit + ',' + (row.trivial ? "true" : "false") + ',' +
           row.provenance + '\n';
  }
  return out;
}

std::string render_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["command"] = doc.command;
  j["version"] = doc.version;
  j["timestamp"] = doc.timestamp;
  j["inputs"] = doc.inputs;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json r;
    r["ensemble"] = row.ensemble;
    r["design_rate"] = row.design_rate;
    r["method"] = row.method;
    r["value"] = row.value;
    r["unit"] = row.unit;
    r["trivial"] = row.trivial;
    r["provenance"] = row.provenance;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

ReportDocument parse_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ReportDocument doc;
  doc.command = j.at("command").get<std::string>();
  doc.version = j.at("version").get<std::string>();
  doc.timestamp = j.at("timestamp").get<std::string>();
  doc.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  for (const auto& r : j.at("rows")) {
    ReportRow row;
    row.ensemble = r.at("ensemble").get<std::string>();
    row.design_rate = r.at("design_rate").get<double>();
    row.method = r.at("method").get<std::string>();
    row.value = r.at("value").get<double>();
    row.unit = r.at("unit").get<std::string>();
    row.trivial = r.at("trivial").get<bool>();
    row.provenance = r.at("provenance").get<std::string>();
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace mbios::report
