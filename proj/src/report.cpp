#include "shv/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace shv {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIPPED";
    case CheckStatus::PaperDeviation: return "PAPER-DEVIATION";
  }
  return "?";
}

void ResidualReport::add(ResidualEntry e) {
  if (e.status == CheckStatus::Skipped && e.note.empty())
    throw std::logic_error("ResidualReport: SKIPPED entry requires a reason");
  entries.push_back(std::move(e));
}

void ResidualReport::add_check(const std::string& equation, double residual, double tol,
                               int probes, const std::string& note) {
  ResidualEntry e;
  e.equation = equation;
  e.max_residual = residual;
  e.tolerance = tol;
  e.probes = probes;
  e.note = note;
  e.status = residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  add(std::move(e));
}

void ResidualReport::add_skipped(const std::string& equation, const std::string& reason) {
  ResidualEntry e;
  e.equation = equation;
  e.status = CheckStatus::Skipped;
  e.note = reason;
  add(std::move(e));
}

void ResidualReport::add_deviation_check(const std::string& equation, double residual, double tol,
                                         int probes, const std::string& note_if_deviating) {
  ResidualEntry e;
  e.equation = equation;
  e.max_residual = residual;
  e.tolerance = tol;
  e.probes = probes;
  if (residual <= tol) {
    e.status = CheckStatus::Pass;
  } else {
    e.status = CheckStatus::PaperDeviation;
    e.note = note_if_deviating;
  }
  add(std::move(e));
}

namespace {
int severity(CheckStatus s) {
  switch (s) {
    case CheckStatus::Fail: return 3;
    case CheckStatus::PaperDeviation: return 2;
    case CheckStatus::Pass: return 1;
    case CheckStatus::Skipped: return 0;
  }
  return 0;
}
}  // namespace

void ResidualReport::merge(const ResidualReport& other) {
  for (const auto& e : other.entries) {
    ResidualEntry* found = nullptr;
    for (auto& mine : entries)
      if (mine.equation == e.equation) {
        found = &mine;
        break;
      }
    if (!found) {
      entries.push_back(e);
      continue;
    }
    found->probes += e.probes;
    if (e.status == CheckStatus::Skipped) {
      if (found->status == CheckStatus::Skipped && found->note != e.note)
        found->note += "; " + e.note;
      continue;
    }
    if (found->status == CheckStatus::Skipped) {
      // first live measurement replaces a skip
      found->status = e.status;
      found->max_residual = e.max_residual;
      found->tolerance = e.tolerance;
      found->note = e.note;
      continue;
    }
    if (e.max_residual > found->max_residual) found->max_residual = e.max_residual;
    if (severity(e.status) > severity(found->status)) {
      found->status = e.status;
      if (!e.note.empty()) found->note = e.note;
    }
  }
}

bool ResidualReport::any_fail() const {
  for (const auto& e : entries)
    if (e.status == CheckStatus::Fail) return true;
  return false;
}

std::map<CheckStatus, int> ResidualReport::counts() const {
  std::map<CheckStatus, int> c;
  for (const auto& e : entries) ++c[e.status];
  return c;
}

RunSummary RunReport::summary() const {
  RunSummary s;
  for (const auto& suite : suites)
    for (const auto& e : suite.entries) switch (e.status) {
        case CheckStatus::Pass: ++s.pass; break;
        case CheckStatus::Fail: ++s.fail; break;
        case CheckStatus::Skipped: ++s.skipped; break;
        case CheckStatus::PaperDeviation: ++s.paper_deviation; break;
      }
  return s;
}

bool RunReport::any_fail() const {
  for (const auto& suite : suites)
    if (suite.any_fail()) return true;
  return false;
}

std::string emit_json(const RunReport& r) {
  using json = nlohmann::ordered_json;
  json root;
  root["engine"] = {{"name", r.engine_name}, {"version", r.engine_version}};
  if (!r.config_echo_json.empty()) {
    root["config"] = json::parse(r.config_echo_json);
  } else {
    root["config"] = nullptr;
  }
  json suites = json::array();
  for (const auto& suite : r.suites) {
    json s;
    s["name"] = suite.suite;
    s["seed"] = suite.seed;
    json entries = json::array();
    for (const auto& e : suite.entries) {
      json je;
      je["equation"] = e.equation;
      je["status"] = to_string(e.status);
      je["max_residual"] = e.max_residual;
      je["probes"] = e.probes;
      je["tolerance"] = e.tolerance;
      if (!e.note.empty()) je["note"] = e.note;
      entries.push_back(std::move(je));
    }
    s["entries"] = std::move(entries);
    if (!suite.extras.empty()) {
      json ex;
      for (const auto& [k, v] : suite.extras) ex[k] = v;
      s["extras"] = std::move(ex);
    }
    suites.push_back(std::move(s));
  }
  root["suites"] = std::move(suites);
  RunSummary sum = r.summary();
  root["summary"] = {{"pass", sum.pass},
                     {"fail", sum.fail},
                     {"skipped", sum.skipped},
                     {"paper_deviation", sum.paper_deviation}};
  return root.dump(2) + "\n";
}

namespace {
std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
std::string csv_quote(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}
}  // namespace

std::string emit_csv(const RunReport& r) {
  std::string out = "suite,equation,status,max_residual,probes,seed\n";
  for (const auto& suite : r.suites)
    for (const auto& e : suite.entries) {
      out += csv_quote(suite.suite);
      out += ',';
      out += csv_quote(e.equation);
      out += ',';
      out += to_string(e.status);
      out += ',';
      out += shortest(e.max_residual);
      out += ',';
      out += std::to_string(e.probes);
      out += ',';
      out += std::to_string(suite.seed);
      out += '\n';
    }
  return out;
}

void emit_to_file(const RunReport& r, const std::string& path, const std::string& format) {
  std::string payload;
  if (format == "json") payload = emit_json(r);
  else if (format == "csv") payload = emit_csv(r);
  else throw std::invalid_argument("emit: unknown format '" + format + "'");
  if (path == "-" || path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit: cannot open output path '" + path + "'");
  f << payload;
  if (!f) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace shv
