#include "shv/riemannian.hpp"

#include <stdexcept>

namespace shv {

Eigen::MatrixXd MetricField::matrix_at(std::span<const double> p) const {
  Eigen::VectorXd v = eval_values(components, p);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("MetricField: not positive definite at the evaluated point");
  return m;
}

MetricField euclidean_metric(int dim) {
  MetricField g;
  g.dim = dim;
  g.components = SmoothMap(dim, dim * dim, [dim]<typename T>(std::span<const T>, std::span<T> out) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[i * dim + j] = T(i == j ? 1.0 : 0.0);
  });
  return g;
}

ChristoffelSymbols christoffel_from_jets(const Eigen::VectorXd& gvals, const Eigen::MatrixXd& gjac,
                                         int dim) {
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gvals[i * dim + j];
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("christoffel: metric not positive definite at the point");
  Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));

  auto dg = [&](int i, int a, int b) { return gjac(a * dim + b, i); };

  ChristoffelSymbols G;
  G.dim = dim;
  G.sym.assign(static_cast<size_t>(dim) * ChristoffelSymbols::tri_count(dim), 0.0);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        double s = 0.0;
        for (int l = 0; l < dim; ++l)
          s += ginv(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        G.ref(k, i, j) = 0.5 * s;
      }
  return G;
}

ChristoffelSymbols christoffel(const MetricField& g, std::span<const double> p) {
  Jet1All jets = eval_jet1_all(g.components, p);
  return christoffel_from_jets(jets.values, jets.jac, g.dim);
}

ChristoffelSymbols christoffel_fd(const MetricField& g, std::span<const double> p, double h) {
  Eigen::VectorXd vals = eval_values(g.components, p);
  Eigen::MatrixXd jac = fd_jacobian(g.components, p, h);
  return christoffel_from_jets(vals, jac, g.dim);
}

Eigen::VectorXd covd_vector_comp(const Eigen::VectorXd& X, const Eigen::MatrixXd& dX,
                                 const ChristoffelSymbols& G, const Eigen::VectorXd& Y) {
  const int n = G.dim;
  Eigen::VectorXd out = dX * Y;  // Y^i d_i X^k
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += G.at(k, i, j) * Y[i] * X[j];
    out[k] += s;
  }
  return out;
}

Eigen::VectorXd covd_oneform_comp(const Eigen::VectorXd& w, const Eigen::MatrixXd& dw,
                                  const ChristoffelSymbols& G, const Eigen::VectorXd& Y) {
  const int n = G.dim;
  Eigen::VectorXd out = dw * Y;  // Y^i d_i w_k
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += G.at(j, i, k) * Y[i] * w[j];
    out[k] -= s;
  }
  return out;
}

Eigen::MatrixXd covd_tensor11_comp(const Eigen::MatrixXd& T, const Eigen::MatrixXd& dT_flat,
                                   const ChristoffelSymbols& G, const Eigen::VectorXd& Y) {
  const int n = G.dim;
  Eigen::MatrixXd out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = dT_flat.row(a * n + b).dot(Y);  // Y^c d_c T^a_b
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += G.at(a, c, d) * Y[c] * T(d, b);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s -= G.at(d, c, b) * Y[c] * T(a, d);
      out(a, b) = s;
    }
  return out;
}

Eigen::VectorXd covariant_derivative_vector(const VectorField& X, const MetricField& g,
                                            const Eigen::VectorXd& Y, std::span<const double> p) {
  Jet1All jets = eval_jet1_all(X.components, p);
  return covd_vector_comp(jets.values, jets.jac, christoffel(g, p), Y);
}

Eigen::VectorXd covariant_derivative_oneform(const OneFormField& w, const MetricField& g,
                                             const Eigen::VectorXd& Y, std::span<const double> p) {
  Jet1All jets = eval_jet1_all(w.components, p);
  return covd_oneform_comp(jets.values, jets.jac, christoffel(g, p), Y);
}

Eigen::MatrixXd covariant_derivative_11(const Tensor11Field& T, const MetricField& g,
                                        const Eigen::VectorXd& Y, std::span<const double> p) {
  Jet1All jets = eval_jet1_all(T.components, p);
  const int n = T.dim;
  Eigen::MatrixXd tmat(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tmat(a, b) = jets.values[a * n + b];
  return covd_tensor11_comp(tmat, jets.jac, christoffel(g, p), Y);
}

}  // namespace shv
