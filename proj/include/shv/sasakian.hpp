#pragma once

#include <optional>
#include <span>
#include <string>

#include "shv/point.hpp"
#include "shv/report.hpp"
#include "shv/riemannian.hpp"
#include "shv/tolerances.hpp"

namespace shv {

/// Ambient contact metric structure (phi, xi, eta, g) on R^{2n+1}, held as
/// evaluatable fields. Nothing here is trusted: every defining identity is
/// re-verified by check_axioms.
struct ContactMetricStructure {
  int n = 0;
  Tensor11Field phi;
  VectorField xi;
  OneFormField eta;
  MetricField metric;

  int dim() const { return 2 * n + 1; }
};

/// The classical Sasakian structure on R^{2n+1} in coordinates
/// (x^1..x^n, y^1..y^n, z):
///   eta = (dz - sum_i y^i dx^i)/2,  xi = 2 d/dz,
///   g   = eta (x) eta + (sum_i (dx^i)^2 + (dy^i)^2)/4,
///   phi(d/dx^i) = -d/dy^i,  phi(d/dy^i) = d/dx^i + y^i d/dz,  phi(xi) = 0.
/// Polynomial components, so jets are exact.
ContactMetricStructure standard_sasakian(int n);

/// Ambient selection for the hypersurface machinery: either a full contact
/// metric structure or a bare (flat) metric for classical shape-operator
/// tests.
struct AmbientModel {
  std::string name;
  int dim = 0;
  MetricField metric;
  std::optional<ContactMetricStructure> contact;
};

/// Known models: "standard-sasakian" (param n) and "euclidean" (param n
/// gives dim 2n+1). Throws on unknown names.
AmbientModel make_ambient(const std::string& name, int n);

/// Residuals of the structure equations at the given points, each
/// evaluated on the coordinate basis plus 10 seeded random vector pairs.
/// Entries: 1.1 .. 1.7 plus the fundamental 2-form identities 1.8 .. 1.10
/// and the rank condition 1.3c.
ResidualReport check_axioms(const ContactMetricStructure& S, std::span<const Point> points,
                            uint64_t seed, const Tolerances& tol);

/// 'F(X,Y) = g(phi X, Y) at a point.
double fundamental_form(const ContactMetricStructure& S, const Eigen::VectorXd& X,
                        const Eigen::VectorXd& Y, std::span<const double> p);

}  // namespace shv
