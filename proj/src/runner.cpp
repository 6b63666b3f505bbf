#include "shv/runner.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shv/algebraic.hpp"
#include "shv/quasi_umbilical.hpp"
#include "shv/rng.hpp"

namespace shv {

namespace {

std::vector<Point> sample_points(int count, int dim, double lo, double hi, uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0x9d2c5680ULL ^ static_cast<uint64_t>(dim)));
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> c(static_cast<size_t>(dim));
    for (double& x : c) x = rng.uniform(lo, hi);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

AmbientModel apply_fault(AmbientModel amb, const std::string& fault) {
  if (fault.empty()) return amb;
  if (fault == "ambient-phi") {
    if (!amb.contact) throw std::invalid_argument("fault ambient-phi needs a contact ambient");
    const int d = amb.dim;
    SmoothMap orig = amb.contact->phi.components;
    amb.contact->phi.components =
        SmoothMap(d, d * d, [orig, d]<typename T>(std::span<const T> x, std::span<T> out) {
          orig.eval(x, out);
          out[1] = out[1] + T(0.1);  // perturb entry (0,1)
        });
  }
  return amb;
}

ResidualReport run_ambient_suite(const RunConfig& c) {
  AmbientModel amb = apply_fault(c.build_ambient(), c.fault);
  if (!amb.contact)
    throw std::invalid_argument("verify-ambient requires a contact ambient model");
  std::vector<Point> pts = sample_points(c.sample.points, amb.dim, c.sample.box_lo,
                                         c.sample.box_hi, c.sample.seed);
  return check_axioms(*amb.contact, pts, c.sample.seed, c.tolerances);
}

std::vector<ResidualReport> run_hypersurface_suites(const RunConfig& c) {
  AmbientModel amb = apply_fault(c.build_ambient(), c.fault);
  Embedding e = c.build_embedding();
  if (e.ambient_dim != amb.dim)
    throw std::invalid_argument("embedding ambient dimension does not match the ambient model");
  std::vector<Point> pts = sample_points(c.sample.points, e.surface_dim, c.sample.box_lo,
                                         c.sample.box_hi, c.sample.seed);
  std::vector<ResidualReport> out;
  bool s2 = false, s3 = false;
  for (const auto& ch : c.embedding->checks) {
    s2 |= ch == "section2";
    s3 |= ch == "section3";
  }
  if (amb.contact) {
    if (s2) out.push_back(check_section2(e, amb, pts, c.sample.seed, c.tolerances));
    if (s3) out.push_back(check_section3_geometric(e, amb, pts, c.sample.seed, c.tolerances));
  } else {
    // Flat ambient: only the shape-operator fit applies.
    ResidualReport rep;
    rep.suite = "hypersurface-fit";
    rep.seed = c.sample.seed;
    std::map<std::string, int> classes;
    double rfit = 0.0;
    for (const auto& p : pts) {
      SurfaceShape sh = surface_shape(e, amb.metric, p.view());
      QuasiUmbilicalFit fit = fit_quasi_umbilical(sh.h, sh.g, c.tolerances.classify);
      ++classes[to_string(fit.classification)];
      rfit = std::max(rfit, fit.residual);
    }
    rep.add_check("3.1", rfit, 1e-10, static_cast<int>(pts.size()));
    std::string cls;
    for (const auto& [name, count] : classes) {
      if (!cls.empty()) cls += ", ";
      cls += name + ":" + std::to_string(count);
    }
    rep.extras.emplace_back("fit-classifications", cls);
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<ResidualReport> run_algebraic_suites(const RunConfig& c) {
  if (!c.algebraic) throw std::invalid_argument("verify-algebraic requires an algebraic section");
  std::vector<ResidualReport> out;
  for (int n : c.algebraic->n_list) {
    for (const auto& pname : c.algebraic->profiles) {
      Profile prof = profile_from_string(pname);
      ResidualReport merged;
      merged.suite = "algebraic-" + pname + "-n" + std::to_string(n);
      merged.seed = c.sample.seed;
      std::map<std::string, int> dev_counts;
      std::map<std::string, uint64_t> dev_first;
      int count = c.algebraic->seeds;
      for (int i = 0; i < count; ++i) {
        uint64_t inst_seed = c.sample.seed + static_cast<uint64_t>(i);
        AlgebraicInstance inst = random_instance(n, inst_seed, prof);
        ResidualReport r = check_instance(inst, c.tolerances);
        for (const auto& entry : r.entries)
          if (entry.status == CheckStatus::PaperDeviation) {
            if (dev_counts.emplace(entry.equation, 0).second) dev_first[entry.equation] = inst_seed;
            ++dev_counts[entry.equation];
          }
        merged.merge(r);
      }
      for (auto& entry : merged.entries) {
        auto it = dev_counts.find(entry.equation);
        if (it != dev_counts.end()) {
          entry.note += " [flagged on " + std::to_string(it->second) + "/" +
                        std::to_string(count) + " instances; first seed " +
                        std::to_string(dev_first[entry.equation]) + "]";
        }
      }
      out.push_back(std::move(merged));
    }
  }
  return out;
}

}  // namespace

RunReport run_suites(const RunConfig& config, SuiteSelect select) {
  config.validate();
  const bool want_ambient = select == SuiteSelect::Ambient || select == SuiteSelect::All;
  const bool want_hyper = select == SuiteSelect::Hypersurface || select == SuiteSelect::All;
  const bool want_alg = select == SuiteSelect::Algebraic || select == SuiteSelect::All;

  if (select == SuiteSelect::Ambient && !config.ambient)
    throw std::invalid_argument("verify-ambient requires an ambient section");
  if (select == SuiteSelect::Hypersurface && !config.embedding)
    throw std::invalid_argument("verify-hypersurface requires an embedding section");
  if (select == SuiteSelect::Algebraic && !config.algebraic)
    throw std::invalid_argument("verify-algebraic requires an algebraic section");
  if (select == SuiteSelect::All && !config.ambient && !config.embedding && !config.algebraic)
    throw std::invalid_argument("config selects no suites");

  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.engine_version = kEngineVersion;
  rep.config_echo_json = config.echo_json();

  if (want_ambient && config.ambient) {
    const bool has_contact = config.ambient->model == "standard-sasakian";
    if (select == SuiteSelect::Ambient || has_contact)
      rep.suites.push_back(run_ambient_suite(config));  // throws when no contact structure
  }
  if (want_hyper && config.embedding)
    for (auto& s : run_hypersurface_suites(config)) rep.suites.push_back(std::move(s));
  if (want_alg && config.algebraic)
    for (auto& s : run_algebraic_suites(config)) rep.suites.push_back(std::move(s));

  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

RunReport run_fit_file(const std::string& input_path, const RunConfig& config) {
  std::ifstream f(input_path);
  if (!f) throw std::invalid_argument("fit-h: cannot open input '" + input_path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("fit-h: malformed input JSON: ") + e.what());
  }
  auto parse_mat = [&](const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("fit-h: missing '") + key + "'");
    auto rows = j.at(key).get<std::vector<std::vector<double>>>();
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != n)
        throw std::invalid_argument("fit-h: matrix not square");
      for (int c2 = 0; c2 < n; ++c2) m(r, c2) = rows[static_cast<size_t>(r)][static_cast<size_t>(c2)];
    }
    return m;
  };
  Eigen::MatrixXd g = parse_mat("g");
  Eigen::MatrixXd h = parse_mat("h");
  if (g.rows() != h.rows()) throw std::invalid_argument("fit-h: g and h sizes differ");

  QuasiUmbilicalFit fit = fit_quasi_umbilical(h, g, config.tolerances.classify);

  RunReport rep;
  rep.engine_version = kEngineVersion;
  rep.config_echo_json = config.echo_json();
  ResidualReport suite;
  suite.suite = "fit-h";
  suite.seed = config.sample.seed;
  suite.add_check("3.1", fit.residual, 1e-10, 1, to_string(fit.classification));
  std::ostringstream alpha, beta, q;
  alpha.precision(17);
  beta.precision(17);
  q.precision(17);
  alpha << fit.alpha;
  beta << fit.beta;
  for (int i = 0; i < fit.q.size(); ++i) q << (i ? "," : "") << fit.q[i];
  suite.extras.emplace_back("classification", to_string(fit.classification));
  suite.extras.emplace_back("alpha", alpha.str());
  suite.extras.emplace_back("beta", beta.str());
  suite.extras.emplace_back("q", q.str());
  rep.suites.push_back(std::move(suite));
  return rep;
}

int exit_code_for(const RunReport& report) { return report.any_fail() ? 1 : 0; }

}  // namespace shv
