#include "shv/sasakian.hpp"

#include <stdexcept>

#include "shv/rng.hpp"

namespace shv {

ContactMetricStructure standard_sasakian(int n) {
  if (n < 1) throw std::invalid_argument("standard_sasakian: n >= 1 required");
  ContactMetricStructure S;
  S.n = n;
  const int d = 2 * n + 1;

  S.eta.dim = d;
  S.eta.components = SmoothMap(d, d, [n, d]<typename T>(std::span<const T> x, std::span<T> out) {
    for (int i = 0; i < n; ++i) {
      out[i] = T(-0.5) * x[n + i];  // dx^i coefficient
      out[n + i] = T(0);
    }
    out[d - 1] = T(0.5);
  });

  S.xi.dim = d;
  S.xi.components = SmoothMap(d, d, [d]<typename T>(std::span<const T>, std::span<T> out) {
    for (int i = 0; i < d; ++i) out[i] = T(0);
    out[d - 1] = T(2);
  });

  S.metric.dim = d;
  S.metric.components =
      SmoothMap(d, d * d, [n, d]<typename T>(std::span<const T> x, std::span<T> out) {
        std::vector<T> eta(static_cast<size_t>(d), T(0));
        for (int i = 0; i < n; ++i) eta[i] = T(-0.5) * x[n + i];
        eta[d - 1] = T(0.5);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            T v = eta[a] * eta[b];
            if (a == b && a < 2 * n) v = v + T(0.25);
            out[a * d + b] = v;
          }
      });

  // Columns: phi(d/dx^i) = -d/dy^i, phi(d/dy^i) = d/dx^i + y^i d/dz.
  S.phi.dim = d;
  S.phi.components =
      SmoothMap(d, d * d, [n, d]<typename T>(std::span<const T> x, std::span<T> out) {
        for (int k = 0; k < d * d; ++k) out[k] = T(0);
        for (int i = 0; i < n; ++i) {
          out[(n + i) * d + i] = T(-1);        // row y^i, col x^i
          out[i * d + (n + i)] = T(1);         // row x^i, col y^i
          out[(d - 1) * d + (n + i)] = x[n + i];  // row z, col y^i
        }
      });

  return S;
}

AmbientModel make_ambient(const std::string& name, int n) {
  AmbientModel m;
  m.name = name;
  if (name == "standard-sasakian") {
    m.contact = standard_sasakian(n);
    m.dim = m.contact->dim();
    m.metric = m.contact->metric;
  } else if (name == "euclidean") {
    if (n < 1) throw std::invalid_argument("euclidean ambient: n >= 1 required");
    m.dim = 2 * n + 1;
    m.metric = euclidean_metric(m.dim);
  } else {
    throw std::invalid_argument("unknown ambient model '" + name + "'");
  }
  return m;
}

double fundamental_form(const ContactMetricStructure& S, const Eigen::VectorXd& X,
                        const Eigen::VectorXd& Y, std::span<const double> p) {
  const int d = S.dim();
  Eigen::VectorXd phiv = eval_values(S.phi.components, p);
  Eigen::MatrixXd phi(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) phi(a, b) = phiv[a * d + b];
  Eigen::MatrixXd g = S.metric.matrix_at(p);
  return (phi * X).dot(g * Y);
}

namespace {

struct PointData {
  Eigen::MatrixXd phi, g;
  Eigen::VectorXd xi, eta;
};

PointData load(const ContactMetricStructure& S, std::span<const double> p) {
  const int d = S.dim();
  PointData pd;
  Eigen::VectorXd phiv = eval_values(S.phi.components, p);
  pd.phi.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) pd.phi(a, b) = phiv[a * d + b];
  pd.g = S.metric.matrix_at(p);
  pd.xi = eval_values(S.xi.components, p);
  pd.eta = eval_values(S.eta.components, p);
  return pd;
}

double cmax(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

ResidualReport check_axioms(const ContactMetricStructure& S, std::span<const Point> points,
                            uint64_t seed, const Tolerances& tol) {
  const int d = S.dim();
  ResidualReport rep;
  rep.suite = "ambient";
  rep.seed = seed;

  double r11 = 0, r12 = 0, r13a = 0, r13b = 0, r13c = 0, r14 = 0, r15 = 0, r16 = 0, r17 = 0;
  double r18 = 0, r19 = 0, r110 = 0;
  bool rank_ok = true;
  int pair_probes = 0;

  for (size_t pi = 0; pi < points.size(); ++pi) {
    std::span<const double> p = points[pi].view();
    PointData pd = load(S, p);

    // probe directions: coordinate basis + 10 seeded random pairs
    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i < d; ++i) dirs.push_back(Eigen::VectorXd::Unit(d, i));
    Rng rng(splitmix64(seed ^ (0x5a5aULL + pi)));
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd v = rng.gaussian_vec(d);
      dirs.push_back(v / v.norm());
    }

    r11 = std::max(r11, std::abs(pd.eta.dot(pd.xi) - 1.0));
    r13b = std::max(r13b, cmax(pd.phi * pd.xi));

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pd.phi);
    const auto& sv = svd.singularValues();
    r13c = std::max(r13c, sv[d - 1] / sv[0]);
    if (sv[d - 2] / sv[0] <= tol.ad_chain) rank_ok = false;

    ChristoffelSymbols G = christoffel(S.metric, p);
    Jet1All phi_jets = eval_jet1_all(S.phi.components, p);
    Jet1All xi_jets = eval_jet1_all(S.xi.components, p);

    for (const auto& X : dirs) {
      r12 = std::max(r12, cmax(pd.phi * (pd.phi * X) + X - pd.eta.dot(X) * pd.xi));
      r13a = std::max(r13a, std::abs(pd.eta.dot(pd.phi * X)));
      r15 = std::max(r15, std::abs(X.dot(pd.g * pd.xi) - pd.eta.dot(X)));
      // (1.7): nabla_X xi + phi X
      Eigen::VectorXd nxi = covd_vector_comp(xi_jets.values, xi_jets.jac, G, X);
      r17 = std::max(r17, cmax(nxi + pd.phi * X));
    }

    for (size_t a = 0; a < dirs.size(); ++a) {
      const Eigen::VectorXd& X = dirs[a];
      const Eigen::VectorXd& Y = dirs[(a + 1) % dirs.size()];
      ++pair_probes;
      double gXY = X.dot(pd.g * Y);
      double fXY = (pd.phi * X).dot(pd.g * Y);
      double fYX = (pd.phi * Y).dot(pd.g * X);
      r14 = std::max(r14, std::abs((pd.phi * X).dot(pd.g * (pd.phi * Y)) - gXY +
                                   pd.eta.dot(X) * pd.eta.dot(Y)));
      r18 = std::max(r18, std::abs(fXY + fYX));
      r19 = std::max(r19, std::abs((pd.phi * X).dot(pd.g * (pd.phi * Y)) -
                                   (pd.phi * Y).dot(pd.g * (pd.phi * X))));
      r110 = std::max(r110, std::abs((pd.phi * (pd.phi * X)).dot(pd.g * (pd.phi * Y)) - fXY));
      // (1.6): (nabla_X phi) Y - g(X,Y) xi + eta(Y) X
      Eigen::MatrixXd phimat = pd.phi;
      Eigen::MatrixXd nphi = covd_tensor11_comp(phimat, phi_jets.jac, G, X);
      r16 = std::max(r16, cmax(nphi * Y - gXY * pd.xi + pd.eta.dot(Y) * X));
    }
  }

  const int np = static_cast<int>(points.size());
  const int probes = np * (d + 10);
  rep.add_check("1.1", r11, tol.ad_chain, np);
  rep.add_check("1.2", r12, tol.ad_chain, probes);
  rep.add_check("1.3a", r13a, tol.ad_chain, probes);
  rep.add_check("1.3b", r13b, tol.ad_chain, np);
  if (rank_ok)
    rep.add_check("1.3c", r13c, tol.ad_chain, np);
  else
    rep.add_check("1.3c", 1.0, tol.ad_chain, np, "rank of phi below 2n");
  rep.add_check("1.4", r14, tol.ad_chain, pair_probes);
  rep.add_check("1.5", r15, tol.ad_chain, probes);
  rep.add_check("1.6", r16, tol.ad_chain, pair_probes);
  rep.add_check("1.7", r17, tol.ad_chain, probes);
  rep.add_check("1.8", r18, tol.ad_chain, pair_probes);
  rep.add_check("1.9", r19, tol.ad_chain, pair_probes);
  rep.add_check("1.10", r110, tol.ad_chain, pair_probes);
  return rep;
}

}  // namespace shv
