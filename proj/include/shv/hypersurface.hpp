#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shv/point.hpp"
#include "shv/report.hpp"
#include "shv/sasakian.hpp"
#include "shv/small_linalg.hpp"
#include "shv/tolerances.hpp"

namespace shv {

/// Hypersurface embedding b : R^{2n} -> R^{2n+1}, plus an optional positive
/// ambient scalar field used to rescale the unit normal into a genuine
/// affine normal (then the Weingarten 1-form w is nonzero).
struct Embedding {
  std::string name;
  int surface_dim = 0;
  int ambient_dim = 0;
  SmoothMap map;
  std::optional<SmoothMap> normal_scale;  // rho(ambient point) > 0
};

struct PolyTerm {
  double coeff = 0.0;
  std::vector<int> exponents;  // one per surface coordinate
};

struct EmbeddingParams {
  double theta0 = 0.5235987755982988;  // pi/6
  double radius = 1.0;
  std::vector<std::vector<PolyTerm>> poly;  // custom-poly: one term list per ambient coordinate
};

/// Shipped embeddings: "plane-y0", "tilted-plane", "graph-st", "sphere",
/// "plane-z0", "custom-poly". All are R^2 -> R^3 except custom-poly, whose
/// dimensions come from the coefficient lists.
Embedding make_embedding(const std::string& name, const EmbeddingParams& params);

/// rho(x) = exp(sum_i c_i x_i); positive and smooth everywhere.
SmoothMap make_exp_linear_scale(std::vector<double> coeffs);

/// Everything the engine derives at one surface point. The algebraic part
/// comes from the linear splits along [B | N]; the second-order part from
/// second jets of the embedding plus ambient Christoffel symbols.
struct InducedStructure {
  int k = 0;  // surface dim
  int d = 0;  // ambient dim
  Eigen::VectorXd surface_point;
  Eigen::VectorXd ambient_point;
  Eigen::MatrixXd B;        // d x k Jacobian
  Eigen::VectorXd N_unit;   // g-unit normal, orientation det[B | N] > 0
  Eigen::VectorXd N;        // affine normal rho * N_unit
  double rho = 1.0;
  double norm2N = 1.0;      // g(N, N) = rho^2
  // contact-induced data (only when the ambient carries a contact structure)
  double lambda = 0.0;      // eta(N)
  double mu = 0.0;          // normal coefficient in xi = BV + mu N (= lambda / rho^2)
  Eigen::MatrixXd g, ginv;  // induced metric
  Eigen::MatrixXd phi;
  Eigen::VectorXd u, v;     // covector components
  Eigen::VectorXd U, V;     // tangent vectors
  // second-order data
  bool has_second = false;
  Eigen::MatrixXd h;          // second fundamental form
  Eigen::MatrixXd H;          // shape operator g^{-1} h
  Eigen::VectorXd w;          // N-component 1-form of nabla N
  Eigen::MatrixXd K;          // tangential part of nabla N (Weingarten matrix)
  std::vector<Eigen::MatrixXd> gauss_tangential;  // per k: matrix of split coefficients
};

/// Jacobian columns from exact jets. Throws std::domain_error when B is
/// rank deficient.
Eigen::MatrixXd jacobian(const Embedding& e, std::span<const double> s);

struct NormalData {
  Eigen::VectorXd conormal;  // cofactor covector nu, det[B | w] = nu(w)
  Eigen::VectorXd unit;      // g-unit normal
  Eigen::VectorXd affine;    // rho * unit
  double rho = 1.0;
};
NormalData normal(const Embedding& e, const MetricField& ambient_g, std::span<const double> s);

/// Algebraic induced package (phi, g, u, v, U, V, lambda) at a point.
InducedStructure induce(const Embedding& e, const AmbientModel& amb, std::span<const double> s);

/// Adds h, H, w and the Gauss split to an induced structure.
void second_fundamental(const Embedding& e, const AmbientModel& amb, InducedStructure& is);

/// Convenience: induce + second_fundamental.
InducedStructure induce_full(const Embedding& e, const AmbientModel& amb,
                             std::span<const double> s);

/// Metric-only path for flat-ambient shape-operator work: g, h, H at a
/// point (no contact structure required).
struct SurfaceShape {
  Eigen::MatrixXd g, h, H;
  Eigen::VectorXd N_unit;
};
SurfaceShape surface_shape(const Embedding& e, const MetricField& ambient_g,
                           std::span<const double> s);

/// Residual report for the induced-structure identities and their
/// covariant-derivative consequences at the given surface points:
/// pointwise entries 2.5a..2.8e, differential entries 2.11..2.17, the
/// measured 2.18, printed-variant diagnostics ("*-printed"), the
/// Gauss/Weingarten consistency check and AD-vs-FD cross checks.
ResidualReport check_section2(const Embedding& e, const AmbientModel& amb,
                              std::span<const Point> points, uint64_t seed,
                              const Tolerances& tol);

/// Quasi-umbilical decomposition checks on geometric data: per-point fit
/// of h = alpha g + beta q (x) q, then the substituted identities 3.2..3.7
/// and the scalar constraints 3.8/3.9 (guarded by beta != 0, lambda != 0).
ResidualReport check_section3_geometric(const Embedding& e, const AmbientModel& amb,
                                        std::span<const Point> points, uint64_t seed,
                                        const Tolerances& tol);

/// Pointwise induced-structure residuals from a snapshot (used directly by
/// fault-injection tests on doctored snapshots).
struct PointwiseResiduals {
  double r25a = 0, r25b = 0, r25c = 0, r25d = 0, r25e = 0, r26 = 0, r27 = 0;
  double r28a = 0, r28b = 0, r28c = 0, r28d = 0, r28e = 0;
  bool rho_is_unit = true;
};
PointwiseResiduals section2_pointwise(const InducedStructure& is,
                                      std::span<const Eigen::VectorXd> dirs);

}  // namespace shv
