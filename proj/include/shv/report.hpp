#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shv {

/// Status of one equation check. PAPER_DEVIATION marks a printed equation
/// whose evaluation disagrees with its own independently rederived
/// expansion; it is reported, enumerated, and never fails a run.
enum class CheckStatus { Pass, Fail, Skipped, PaperDeviation };

const char* to_string(CheckStatus s);

struct ResidualEntry {
  std::string equation;      // e.g. "2.8d", "4.5", "4.5-printed"
  CheckStatus status = CheckStatus::Pass;
  double max_residual = 0.0;
  int probes = 0;
  double tolerance = 0.0;
  std::string note;          // skip reason / deviation description
};

/// Per-suite residual report. Entries keep insertion order; merging across
/// instances keeps the worst residual and escalates status.
struct ResidualReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<ResidualEntry> entries;
  std::vector<std::pair<std::string, std::string>> extras;  // free-form suite facts

  void add(ResidualEntry e);
  /// Residual-vs-tolerance entry; status Pass/Fail decided here.
  void add_check(const std::string& equation, double residual, double tol, int probes,
                 const std::string& note = "");
  void add_skipped(const std::string& equation, const std::string& reason);
  /// Deviation diagnostic: Pass when the printed form agrees within tol,
  /// PaperDeviation (never Fail) otherwise.
  void add_deviation_check(const std::string& equation, double residual, double tol, int probes,
                           const std::string& note_if_deviating);

  /// Fold another instance's entries into this report (max residual,
  /// status escalation Fail > PaperDeviation > Pass; Skipped only if all
  /// occurrences skipped).
  void merge(const ResidualReport& other);

  bool any_fail() const;
  std::map<CheckStatus, int> counts() const;
};

struct RunSummary {
  int pass = 0;
  int fail = 0;
  int skipped = 0;
  int paper_deviation = 0;
};

struct RunReport {
  std::string engine_name = "shv";
  std::string engine_version;
  std::string config_echo_json;  // serialized parsed config, stable key order
  std::vector<ResidualReport> suites;
  double wall_ms = 0.0;  // logged to stderr, never serialized (byte-determinism)

  RunSummary summary() const;
  bool any_fail() const;
};

/// JSON with stable key order and shortest round-trip floats.
std::string emit_json(const RunReport& r);
/// CSV: one row per equation entry.
std::string emit_csv(const RunReport& r);
/// Writes to path ("-" for stdout), format "json" or "csv".
void emit_to_file(const RunReport& r, const std::string& path, const std::string& format);

}  // namespace shv
