#include "shv/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shv {

namespace {
using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

template <typename T>
T get_or(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  return j.at(key).get<T>();
}
}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  RunConfig c;
  if (j.contains("ambient")) {
    const auto& a = j.at("ambient");
    AmbientConfig ac;
    ac.model = get_or<std::string>(a, "model", "standard-sasakian");
    ac.n = get_or<int>(a, "n", 1);
    c.ambient = ac;
  }
  if (j.contains("embedding")) {
    const auto& e = j.at("embedding");
    EmbeddingConfig ec;
    if (!e.contains("name")) bad("embedding.name missing");
    ec.name = e.at("name").get<std::string>();
    if (e.contains("parameters")) {
      const auto& p = e.at("parameters");
      ec.params.theta0 = get_or<double>(p, "theta0", ec.params.theta0);
      ec.params.radius = get_or<double>(p, "radius", ec.params.radius);
      if (p.contains("poly")) {
        for (const auto& comp : p.at("poly")) {
          std::vector<PolyTerm> terms;
          for (const auto& t : comp) {
            PolyTerm pt;
            pt.coeff = t.at("coeff").get<double>();
            pt.exponents = t.at("exponents").get<std::vector<int>>();
            terms.push_back(std::move(pt));
          }
          ec.params.poly.push_back(std::move(terms));
        }
      }
    }
    if (e.contains("rho")) {
      const auto& r = e.at("rho");
      ec.rho.type = get_or<std::string>(r, "type", "constant");
      ec.rho.value = get_or<double>(r, "value", 1.0);
      if (r.contains("coeffs")) ec.rho.coeffs = r.at("coeffs").get<std::vector<double>>();
    }
    if (e.contains("checks")) ec.checks = e.at("checks").get<std::vector<std::string>>();
    c.embedding = ec;
  }
  if (j.contains("sample")) {
    const auto& s = j.at("sample");
    c.sample.points = get_or<int>(s, "points", 50);
    if (s.contains("box")) {
      auto box = s.at("box").get<std::vector<double>>();
      if (box.size() != 2) bad("sample.box must be [lo, hi]");
      c.sample.box_lo = box[0];
      c.sample.box_hi = box[1];
    }
    c.sample.seed = get_or<uint64_t>(s, "seed", c.sample.seed);
  }
  if (j.contains("algebraic")) {
    const auto& a = j.at("algebraic");
    AlgebraicSuiteConfig ac;
    if (a.contains("profiles")) ac.profiles = a.at("profiles").get<std::vector<std::string>>();
    ac.seeds = get_or<int>(a, "seeds", ac.seeds);
    if (a.contains("n")) ac.n_list = a.at("n").get<std::vector<int>>();
    c.algebraic = ac;
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    c.tolerances.exact = get_or<double>(t, "exact", c.tolerances.exact);
    c.tolerances.ad_chain = get_or<double>(t, "ad_chain", c.tolerances.ad_chain);
    c.tolerances.fd_oracle = get_or<double>(t, "fd_oracle", c.tolerances.fd_oracle);
    c.tolerances.classify = get_or<double>(t, "class", c.tolerances.classify);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    c.output.path = get_or<std::string>(o, "path", "-");
    c.output.format = get_or<std::string>(o, "format", "json");
  }
  c.fault = get_or<std::string>(j, "fault", "");
  c.validate();
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) bad("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json_text(ss.str());
}

void RunConfig::validate() const {
  tolerances.validate();
  if (sample.points < 1) bad("sample.points must be >= 1");
  if (!(sample.box_lo < sample.box_hi)) bad("sample.box must be increasing");
  if (output.format != "json" && output.format != "csv")
    bad("output.format must be 'json' or 'csv'");
  if (ambient && ambient->n < 1) bad("ambient.n must be >= 1");
  if (algebraic) {
    if (algebraic->seeds < 1) bad("algebraic.seeds must be >= 1");
    if (algebraic->profiles.empty()) bad("algebraic.profiles must be nonempty");
    if (algebraic->n_list.empty()) bad("algebraic.n must be nonempty");
    for (int n : algebraic->n_list)
      if (n < 1) bad("algebraic.n entries must be >= 1");
  }
  if (embedding) {
    if (!ambient) bad("embedding requires an ambient model");
    if (embedding->rho.type != "constant" && embedding->rho.type != "exp-linear")
      bad("embedding.rho.type must be 'constant' or 'exp-linear'");
    if (embedding->rho.type == "constant" && embedding->rho.value != 1.0)
      bad("constant rho must be 1 (use exp-linear for a genuine affine normal)");
    for (const auto& ch : embedding->checks)
      if (ch != "section2" && ch != "section3") bad("embedding.checks entries must be section2|section3");
  }
  if (!fault.empty() && fault != "ambient-phi") bad("unknown fault '" + fault + "'");
}

std::string RunConfig::echo_json() const {
  json j;
  if (ambient) j["ambient"] = {{"model", ambient->model}, {"n", ambient->n}};
  if (embedding) {
    json e;
    e["name"] = embedding->name;
    json p;
    p["theta0"] = embedding->params.theta0;
    p["radius"] = embedding->params.radius;
    if (!embedding->params.poly.empty()) {
      json poly = json::array();
      for (const auto& comp : embedding->params.poly) {
        json terms = json::array();
        for (const auto& t : comp)
          terms.push_back({{"coeff", t.coeff}, {"exponents", t.exponents}});
        poly.push_back(std::move(terms));
      }
      p["poly"] = std::move(poly);
    }
    e["parameters"] = std::move(p);
    json r;
    r["type"] = embedding->rho.type;
    if (embedding->rho.type == "constant") r["value"] = embedding->rho.value;
    else r["coeffs"] = embedding->rho.coeffs;
    e["rho"] = std::move(r);
    e["checks"] = embedding->checks;
    j["embedding"] = std::move(e);
  }
  j["sample"] = {{"points", sample.points},
                 {"box", {sample.box_lo, sample.box_hi}},
                 {"seed", sample.seed}};
  if (algebraic)
    j["algebraic"] = {{"profiles", algebraic->profiles},
                      {"seeds", algebraic->seeds},
                      {"n", algebraic->n_list}};
  j["tolerances"] = {{"exact", tolerances.exact},
                     {"ad_chain", tolerances.ad_chain},
                     {"fd_oracle", tolerances.fd_oracle},
                     {"class", tolerances.classify}};
  j["output"] = {{"path", output.path}, {"format", output.format}};
  if (!fault.empty()) j["fault"] = fault;
  return j.dump();
}

AmbientModel RunConfig::build_ambient() const {
  if (!ambient) bad("no ambient model configured");
  return make_ambient(ambient->model, ambient->n);
}

Embedding RunConfig::build_embedding() const {
  if (!embedding) bad("no embedding configured");
  Embedding e = make_embedding(embedding->name, embedding->params);
  if (embedding->rho.type == "exp-linear") {
    if (static_cast<int>(embedding->rho.coeffs.size()) != e.ambient_dim)
      bad("rho.coeffs arity must match the ambient dimension");
    e.normal_scale = make_exp_linear_scale(embedding->rho.coeffs);
  }
  return e;
}

}  // namespace shv
