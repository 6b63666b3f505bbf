#pragma once

#include <string>

#include "shv/config.hpp"
#include "shv/report.hpp"

namespace shv {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class SuiteSelect { Ambient, Hypersurface, Algebraic, All };

/// Executes the configured suites. Deterministic: identical configs give
/// byte-identical reports. Throws std::invalid_argument on configuration
/// problems (the CLI maps those to exit code 2).
RunReport run_suites(const RunConfig& config, SuiteSelect select);

/// Pointwise fitter entry: reads {"g": [[..]], "h": [[..]]} from a JSON
/// file and reports the quasi-umbilical decomposition.
RunReport run_fit_file(const std::string& input_path, const RunConfig& config);

/// 0 when no FAIL entries, 1 otherwise (PAPER-DEVIATION never fails a run).
int exit_code_for(const RunReport& report);

}  // namespace shv
