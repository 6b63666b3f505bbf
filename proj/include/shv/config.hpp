#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shv/hypersurface.hpp"
#include "shv/tolerances.hpp"

namespace shv {

struct AmbientConfig {
  std::string model = "standard-sasakian";
  int n = 1;
};

struct RhoConfig {
  std::string type = "constant";      // "constant" | "exp-linear"
  double value = 1.0;                 // constant case; must be 1 for section-3 runs
  std::vector<double> coeffs;         // exp-linear case
};

struct EmbeddingConfig {
  std::string name;
  EmbeddingParams params;
  RhoConfig rho;
  std::vector<std::string> checks = {"section2", "section3"};
};

struct SampleConfig {
  int points = 50;
  double box_lo = -1.0;
  double box_hi = 1.0;
  uint64_t seed = 20240101;
};

struct AlgebraicSuiteConfig {
  std::vector<std::string> profiles = {"quasi-umbilical", "cylindrical", "totally-umbilical"};
  int seeds = 1000;
  std::vector<int> n_list = {1, 2, 3};
};

struct OutputConfig {
  std::string path = "-";
  std::string format = "json";
};

/// Parsed run configuration. One structured JSON file; the only CLI
/// overrides are --seed, --out and --format. No environment variables.
struct RunConfig {
  std::optional<AmbientConfig> ambient;
  std::optional<EmbeddingConfig> embedding;
  SampleConfig sample;
  std::optional<AlgebraicSuiteConfig> algebraic;
  Tolerances tolerances;
  OutputConfig output;
  std::string fault;  // testing hook: "" or "ambient-phi"

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  /// Stable re-serialization of the parsed config (the report echoes this).
  std::string echo_json() const;

  void validate() const;  // tolerance ordering, counts, formats

  /// Builds the ambient model / embedding the config names. Throws on
  /// unknown names.
  AmbientModel build_ambient() const;
  Embedding build_embedding() const;
};

}  // namespace shv
