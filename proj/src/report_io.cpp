#include "ldirac/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace ldirac::io {

namespace {

using nlohmann::ordered_json;

const char* branch_name(states::EnergyBranch b) { return b == states::EnergyBranch::positive ? "+" : "-"; }
const char* spin_name(states::Spin s) { return s == states::Spin::up ? "up" : "down"; }

const char* mode_name(states::AmplitudeMode m) {
  switch (m) {
    case states::AmplitudeMode::paper:
      return "paper";
    case states::AmplitudeMode::derived:
      return "derived";
    case states::AmplitudeMode::auto_fit:
      return "auto";
  }
  return "?";
}

ordered_json report_object(const verify::VerificationReport& rep) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["params"] = {{"hbar", rep.params.hbar}, {"c", rep.params.c}, {"mass", rep.params.mass}, {"q", rep.params.q}};
  const verify::StateRequest& rq = rep.request;
  const states::StateSpec& s = rep.spec;
  ordered_json spec;
  spec["dim"] = rq.dim;
  spec["k"] = rq.k;
  spec["branch"] = branch_name(rq.branch);
  spec["mode"] = mode_name(rq.mode);
  if (rq.dim == 1) spec["spin"] = spin_name(rq.spin);
  if (rq.dim == 2) spec["m_ang"] = rq.m_ang;
  if (rq.dim == 3) {
    spec["two_j"] = rq.two_j;
    spec["two_mj"] = rq.two_m;
  }
  spec["energy"] = s.energy;
  spec["alpha"] = s.alpha;
  spec["rho"] = s.rho;
  spec["gamma"] = s.gamma;
  spec["K1"] = s.K1;
  spec["K2"] = s.K2;
  spec["K3"] = s.K3;
  spec["K4"] = s.K4;
  j["spec"] = spec;
  j["profile"] = rep.profile == verify::Profile::strict ? "strict" : "fast";
  ordered_json checks = ordered_json::array();
  for (const verify::CheckResult& c : rep.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["passed"] = c.passed;
    cj["informative"] = c.informative;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : c.metadata) meta[k] = v;
    cj["metadata"] = meta;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["overall"] = rep.overall;
  j["paper_notes"] = rep.paper_notes;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf, res.ptr);
}

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string table_json(const Table& t) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j.dump(2) + "\n";
}

std::string report_json(const verify::VerificationReport& rep) { return report_object(rep).dump(2) + "\n"; }

std::string report_csv(const verify::VerificationReport& rep) {
  std::string out = "name,residual,tolerance,passed,informative\n";
  for (const verify::CheckResult& c : rep.checks) {
    out += csv_field(c.name) + ',' + format_number(c.residual) + ',' + format_number(c.tolerance) + ',' +
           (c.passed ? "true" : "false") + ',' + (c.informative ? "true" : "false") + '\n';
  }
  return out;
}

std::string sweep_csv(const verify::SweepResult& s) {
  std::string out = "k,q,E,residual,pass\n";
  for (const verify::SweepRow& r : s.rows) {
    out += format_number(r.k) + ',' + format_number(r.q) + ',' + format_number(r.energy) + ',' +
           format_number(r.residual) + ',' + (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

std::string sweep_json(const verify::SweepResult& s) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["tolerance"] = s.tolerance;
  j["q_independent"] = s.q_independent;
  j["all_pass"] = s.all_pass;
  ordered_json rows = ordered_json::array();
  for (const verify::SweepRow& r : s.rows) {
    rows.push_back({{"k", r.k}, {"q", r.q}, {"E", r.energy}, {"residual", r.residual}, {"pass", r.pass}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed for " + path);
  return ss.str();
}

ReportValidation validate_report_json(const std::string& text) {
  ReportValidation v;
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    v.message = "not a JSON object";
    return v;
  }
  if (!j.contains("schema") || j["schema"] != kSchemaVersion) {
    v.message = "missing or unsupported schema";
    return v;
  }
  if (!j.contains("checks") || !j["checks"].is_array() || !j.contains("overall") || !j["overall"].is_boolean()) {
    v.message = "missing checks or overall";
    return v;
  }
  bool consistent = true;
  bool verdict = true;
  for (const auto& c : j["checks"]) {
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("residual") ||
        !c["residual"].is_number() || !c.contains("tolerance") || !c["tolerance"].is_number() ||
        !c.contains("passed") || !c["passed"].is_boolean() || !c.contains("informative") ||
        !c["informative"].is_boolean()) {
      v.message = "malformed check entry";
      return v;
    }
    const bool passed = c["residual"].get<double>() <= c["tolerance"].get<double>();
    if (passed != c["passed"].get<bool>()) {
      consistent = false;
      v.message = "check '" + c["name"].get<std::string>() + "' has passed inconsistent with its residual";
    }
    if (!c["informative"].get<bool>()) verdict = verdict && passed;
  }
  v.well_formed = true;
  v.overall = verdict;
  if (verdict != j["overall"].get<bool>()) {
    consistent = false;
    v.message = "overall does not match the checks";
  }
  v.consistent = consistent;
  if (consistent) v.message = verdict ? "report consistent: overall pass" : "report consistent: overall fail";
  return v;
}

}  // namespace ldirac::io
