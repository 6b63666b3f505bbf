#pragma once

#include <Eigen/Dense>
#include <string>

namespace shv {

enum class UmbClass {
  TotallyGeodesic,
  TotallyUmbilical,
  Cylindrical,
  ProperQuasiUmbilical,
  NotQuasiUmbilical
};

const char* to_string(UmbClass c);

/// Decomposition h = alpha g + beta q (x) q at a point, with q normalized
/// to unit g-norm, canonical sign (first nonzero entry positive) and the
/// magnitude pushed into beta. Q is the metric dual of q.
struct QuasiUmbilicalFit {
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd Q;
  UmbClass classification = UmbClass::NotQuasiUmbilical;
  double residual = 0.0;  // Frobenius norm of h - alpha g - beta q q^T
};

/// Eigen-fit of the shape operator pencil h v = t g v. If some eigenvalue
/// has multiplicity >= dim-1 under the clustering threshold
/// tau_eig = 1e-7 * max|t|, that cluster mean is alpha and the leftover
/// eigencovector carries beta q (x) q; otherwise the best rank-one fit is
/// returned with classification NotQuasiUmbilical. In dim 2 every
/// symmetric h qualifies; eigenvalue ties resolve to the smaller value.
QuasiUmbilicalFit fit_quasi_umbilical(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g,
                                      double tau_class = 1e-8);

}  // namespace shv
