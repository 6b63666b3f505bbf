#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "shv/report.hpp"
#include "shv/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string format;
  std::string out;
  std::string fault;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->required();
  cmd->add_option("--seed", o.seed, "override the sample seed")
      ->each([&o](const std::string&) { o.seed_set = true; });
  cmd->add_option("--format", o.format, "json|csv (overrides config)");
  cmd->add_option("--out", o.out, "output path, '-' for stdout (overrides config)");
  cmd->add_option("--inject-fault", o.fault,
                  "testing hook: corrupt a structure tensor (ambient-phi)");
}

int run_and_emit(const CommonOpts& o, shv::SuiteSelect select) {
  shv::RunConfig cfg = shv::RunConfig::from_json_file(o.config_path);
  if (o.seed_set) cfg.sample.seed = o.seed;
  if (!o.format.empty()) cfg.output.format = o.format;
  if (!o.out.empty()) cfg.output.path = o.out;
  if (!o.fault.empty()) cfg.fault = o.fault;
  cfg.validate();
  shv::RunReport rep = shv::run_suites(cfg, select);
  shv::emit_to_file(rep, cfg.output.path, cfg.output.format);
  std::fprintf(stderr, "shv: %d suites, wall %.1f ms\n", static_cast<int>(rep.suites.size()),
               rep.wall_ms);
  return shv::exit_code_for(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for induced contact structures on hypersurfaces"};
  app.require_subcommand(1);

  CommonOpts amb, hyp, alg, all, fit;
  std::string fit_input;

  CLI::App* c_amb = app.add_subcommand("verify-ambient", "structure axiom residuals");
  add_common(c_amb, amb);
  CLI::App* c_hyp = app.add_subcommand("verify-hypersurface", "induced-structure residuals");
  add_common(c_hyp, hyp);
  CLI::App* c_alg = app.add_subcommand("verify-algebraic", "single-point model residuals");
  add_common(c_alg, alg);
  CLI::App* c_all = app.add_subcommand("report", "run every configured suite");
  add_common(c_all, all);
  CLI::App* c_fit = app.add_subcommand("fit-h", "quasi-umbilical decomposition of a (g, h) pair");
  add_common(c_fit, fit);
  c_fit->add_option("--input", fit_input, "JSON file with matrices g and h")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (c_amb->parsed()) return run_and_emit(amb, shv::SuiteSelect::Ambient);
    if (c_hyp->parsed()) return run_and_emit(hyp, shv::SuiteSelect::Hypersurface);
    if (c_alg->parsed()) return run_and_emit(alg, shv::SuiteSelect::Algebraic);
    if (c_all->parsed()) return run_and_emit(all, shv::SuiteSelect::All);
    if (c_fit->parsed()) {
      shv::RunConfig cfg = shv::RunConfig::from_json_file(fit.config_path);
      if (fit.seed_set) cfg.sample.seed = fit.seed;
      if (!fit.format.empty()) cfg.output.format = fit.format;
      if (!fit.out.empty()) cfg.output.path = fit.out;
      cfg.validate();
      shv::RunReport rep = shv::run_fit_file(fit_input, cfg);
      shv::emit_to_file(rep, cfg.output.path, cfg.output.format);
      return shv::exit_code_for(rep);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "shv: configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "shv: error: %s\n", e.what());
    return 2;
  }
  return 2;
}
