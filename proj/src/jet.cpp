#include "shv/jet.hpp"

#include <stdexcept>

namespace shv {

Eigen::VectorXd eval_values(const SmoothMap& f, std::span<const double> p) {
  std::vector<double> out(static_cast<size_t>(f.out_dim()));
  f.eval(p, std::span<double>(out));
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Jet1All eval_jet1_all(const SmoothMap& f, std::span<const double> p) {
  const int m = f.in_dim();
  const int k = f.out_dim();
  Jet1All r;
  r.values.resize(k);
  r.jac.resize(k, m);
  std::vector<D1> x(static_cast<size_t>(m));
  std::vector<D1> out(static_cast<size_t>(k));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) x[j] = D1(p[j], i == j ? 1.0 : 0.0);
    f.eval(std::span<const D1>(x), std::span<D1>(out));
    for (int c = 0; c < k; ++c) {
      if (i == 0) r.values[c] = out[c].val;
      r.jac(c, i) = out[c].dot;
    }
  }
  if (m == 0) {
    std::vector<double> o(static_cast<size_t>(k));
    f.eval(p, std::span<double>(o));
    for (int c = 0; c < k; ++c) r.values[c] = o[c];
  }
  return r;
}

std::vector<Jet2> eval_jet2_all(const SmoothMap& f, std::span<const double> p) {
  const int m = f.in_dim();
  const int k = f.out_dim();
  std::vector<Jet2> jets(static_cast<size_t>(k));
  for (auto& j : jets) {
    j.grad = Eigen::VectorXd::Zero(m);
    j.hess = Eigen::MatrixXd::Zero(m, m);
  }
  std::vector<D2> x(static_cast<size_t>(m));
  std::vector<D2> out(static_cast<size_t>(k));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (int t = 0; t < m; ++t) {
        // inner direction e_i, outer direction e_j
        x[t] = D2(D1(p[t], t == i ? 1.0 : 0.0), D1(t == j ? 1.0 : 0.0, 0.0));
      }
      f.eval(std::span<const D2>(x), std::span<D2>(out));
      for (int c = 0; c < k; ++c) {
        if (!all_finite(out[c]))
          throw std::domain_error("eval_jet2: map hit a primitive singularity at the point");
        if (i == 0 && j == 0) jets[c].value = out[c].val.val;
        if (i == j) jets[c].grad[i] = out[c].val.dot;
        jets[c].hess(i, j) = out[c].dot.dot;
        jets[c].hess(j, i) = out[c].dot.dot;
      }
    }
  }
  if (m == 0) {
    std::vector<double> o(static_cast<size_t>(k));
    f.eval(p, std::span<double>(o));
    for (int c = 0; c < k; ++c) jets[c].value = o[c];
  }
  return jets;
}

Jet2 eval_jet2(const SmoothMap& f, std::span<const double> p) {
  if (f.out_dim() != 1) throw std::invalid_argument("eval_jet2: scalar map expected");
  return eval_jet2_all(f, p)[0];
}

namespace {
Eigen::MatrixXd fd_jacobian_step(const SmoothMap& f, std::span<const double> p, double h) {
  const int m = f.in_dim();
  const int k = f.out_dim();
  Eigen::MatrixXd jac(k, m);
  std::vector<double> xp(p.begin(), p.end());
  std::vector<double> xm(p.begin(), p.end());
  for (int i = 0; i < m; ++i) {
    xp[i] = p[i] + h;
    xm[i] = p[i] - h;
    Eigen::VectorXd fp = eval_values(f, xp);
    Eigen::VectorXd fm = eval_values(f, xm);
    jac.col(i) = (fp - fm) / (2.0 * h);
    xp[i] = p[i];
    xm[i] = p[i];
  }
  return jac;
}
}  // namespace

Eigen::MatrixXd fd_jacobian(const SmoothMap& f, std::span<const double> p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_jacobian: step must be positive");
  Eigen::MatrixXd j1 = fd_jacobian_step(f, p, h);
  Eigen::MatrixXd j2 = fd_jacobian_step(f, p, h / 2.0);
  return (4.0 * j2 - j1) / 3.0;
}

namespace {
std::vector<Eigen::MatrixXd> fd_hessian_step(const SmoothMap& f, std::span<const double> p,
                                             double h) {
  const int m = f.in_dim();
  const int k = f.out_dim();
  std::vector<Eigen::MatrixXd> hs(static_cast<size_t>(k), Eigen::MatrixXd::Zero(m, m));
  std::vector<double> x(p.begin(), p.end());
  Eigen::VectorXd f0 = eval_values(f, x);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Eigen::VectorXd val(k);
      if (i == j) {
        x[i] = p[i] + h;
        Eigen::VectorXd fp = eval_values(f, x);
        x[i] = p[i] - h;
        Eigen::VectorXd fm = eval_values(f, x);
        x[i] = p[i];
        val = (fp - 2.0 * f0 + fm) / (h * h);
      } else {
        x[i] = p[i] + h;
        x[j] = p[j] + h;
        Eigen::VectorXd fpp = eval_values(f, x);
        x[j] = p[j] - h;
        Eigen::VectorXd fpm = eval_values(f, x);
        x[i] = p[i] - h;
        Eigen::VectorXd fmm = eval_values(f, x);
        x[j] = p[j] + h;
        Eigen::VectorXd fmp = eval_values(f, x);
        x[i] = p[i];
        x[j] = p[j];
        val = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      }
      for (int c = 0; c < k; ++c) {
        hs[c](i, j) = val[c];
        hs[c](j, i) = val[c];
      }
    }
  }
  return hs;
}
}  // namespace

std::vector<Eigen::MatrixXd> fd_hessian_all(const SmoothMap& f, std::span<const double> p,
                                            double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_hessian_all: step must be positive");
  auto h1 = fd_hessian_step(f, p, h);
  auto h2 = fd_hessian_step(f, p, h / 2.0);
  for (size_t c = 0; c < h1.size(); ++c) h1[c] = (4.0 * h2[c] - h1[c]) / 3.0;
  return h1;
}

}  // namespace shv
