#include "shv/quasi_umbilical.hpp"

#include <stdexcept>
#include <vector>

namespace shv {

const char* to_string(UmbClass c) {
  switch (c) {
    case UmbClass::TotallyGeodesic: return "TotallyGeodesic";
    case UmbClass::TotallyUmbilical: return "TotallyUmbilical";
    case UmbClass::Cylindrical: return "Cylindrical";
    case UmbClass::ProperQuasiUmbilical: return "ProperQuasiUmbilical";
    case UmbClass::NotQuasiUmbilical: return "NotQuasiUmbilical";
  }
  return "?";
}

namespace {

void canonical_sign(Eigen::VectorXd& q) {
  double scale = q.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return;
  for (int i = 0; i < q.size(); ++i) {
    if (std::abs(q[i]) > 1e-12 * scale) {
      if (q[i] < 0) q = -q;
      return;
    }
  }
}

UmbClass classify(double alpha, double beta, double tau_class) {
  const bool a = std::abs(alpha) > tau_class;
  const bool b = std::abs(beta) > tau_class;
  if (a && b) return UmbClass::ProperQuasiUmbilical;
  if (a) return UmbClass::TotallyUmbilical;
  if (b) return UmbClass::Cylindrical;
  return UmbClass::TotallyGeodesic;
}

}  // namespace

QuasiUmbilicalFit fit_quasi_umbilical(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g,
                                      double tau_class) {
  const int d = static_cast<int>(g.rows());
  if (d < 2) throw std::invalid_argument("fit_quasi_umbilical: dim >= 2 required");
  if (h.rows() != d || h.cols() != d || g.cols() != d)
    throw std::invalid_argument("fit_quasi_umbilical: shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("fit_quasi_umbilical: metric not positive definite");

  QuasiUmbilicalFit fit;
  fit.q = Eigen::VectorXd::Zero(d);
  fit.Q = Eigen::VectorXd::Zero(d);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(h, g);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("fit_quasi_umbilical: eigen solve failed");
  Eigen::VectorXd ev = ges.eigenvalues();        // ascending
  Eigen::MatrixXd vecs = ges.eigenvectors();     // g-orthonormal

  double scale = ev.cwiseAbs().maxCoeff();
  if (scale <= tau_class) {  // h vanishes
    fit.classification = UmbClass::TotallyGeodesic;
    fit.residual = h.norm();
    return fit;
  }
  const double tau_eig = 1e-7 * scale;

  // Chain-cluster the sorted eigenvalues.
  struct Cluster {
    int begin, end;  // [begin, end)
  };
  std::vector<Cluster> clusters;
  int begin = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || ev[i] - ev[i - 1] > tau_eig) {
      clusters.push_back({begin, i});
      begin = i;
    }
  }
  // Largest cluster; ties resolve to the smaller eigenvalue (first).
  int best = 0;
  for (size_t c = 1; c < clusters.size(); ++c) {
    int sz = clusters[c].end - clusters[c].begin;
    if (sz > clusters[best].end - clusters[best].begin) best = static_cast<int>(c);
  }
  const Cluster& cl = clusters[best];
  const int cl_size = cl.end - cl.begin;

  double alpha = 0.0;
  for (int i = cl.begin; i < cl.end; ++i) alpha += ev[i];
  alpha /= cl_size;
  fit.alpha = alpha;

  if (cl_size >= d - 1) {
    if (cl_size == d) {
      fit.beta = 0.0;
    } else {
      int left = (cl.begin == 0) ? d - 1 : 0;  // single leftover index
      fit.q = g * vecs.col(left);              // unit g-norm by construction
      canonical_sign(fit.q);
      fit.beta = ev[left] - alpha;
    }
    fit.classification = classify(fit.alpha, fit.beta, tau_class);
  } else {
    // Best rank-one remainder for reporting purposes.
    Eigen::MatrixXd r = h - alpha * g;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> res(r, g);
    Eigen::VectorXd rev = res.eigenvalues();
    int dom = 0;
    for (int i = 1; i < d; ++i)
      if (std::abs(rev[i]) > std::abs(rev[dom])) dom = i;
    fit.beta = rev[dom];
    fit.q = g * res.eigenvectors().col(dom);
    canonical_sign(fit.q);
    fit.classification = UmbClass::NotQuasiUmbilical;
  }

  if (fit.beta == 0.0) fit.q.setZero();
  fit.Q = llt.solve(fit.q);
  fit.residual = (h - fit.alpha * g - fit.beta * fit.q * fit.q.transpose()).norm();
  return fit;
}

}  // namespace shv
