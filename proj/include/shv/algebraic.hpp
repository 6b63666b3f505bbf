#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "shv/report.hpp"
#include "shv/rng.hpp"
#include "shv/tolerances.hpp"

namespace shv {

enum class Profile { QuasiUmbilical, Cylindrical, TotallyUmbilical };
const char* to_string(Profile p);
Profile profile_from_string(const std::string& s);

/// Exact single-point model of the induced (phi, g, u, v, lambda)-structure
/// with free quasi-umbilical data (alpha, beta, q) and free differential
/// data dlambda. The model point has no neighborhood: every occurrence of
/// a derivative of lambda routes through dlambda, and w is derived from it
/// by the structure constraints (w(U) from the lambda-slope relation,
/// w(V) from the h(V,V) relation), with the remaining components free.
struct AlgebraicInstance {
  int n = 1;
  int dim = 2;
  Profile profile = Profile::QuasiUmbilical;
  uint64_t seed = 0;

  Eigen::MatrixXd g, ginv, phi;
  Eigen::MatrixXd frame;  // columns: g-orthonormal basis e_U, e_V, w_1..w_{2n-2}
  Eigen::VectorXd U, V, Q;
  Eigen::VectorXd u, v, q;        // covector components
  Eigen::VectorXd w, dlambda;     // covector components
  Eigen::VectorXd w_rest;         // free w components on the W-frame
  double lambda = 0, alpha = 0, beta = 0;

  double gpair(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const { return X.dot(g * Y); }
  double hval(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
    return alpha * gpair(X, Y) + beta * q.dot(X) * q.dot(Y);
  }
  Eigen::VectorXd Hvec(const Eigen::VectorXd& X) const { return alpha * X + beta * q.dot(X) * Q; }
  double Ulam() const { return dlambda.dot(U); }
  double Vlam() const { return dlambda.dot(V); }

  /// Rebuilds w from (dlambda, alpha, beta, lambda) and w_rest. Requires
  /// lambda != 0; with lambda == 0 the callers treat w as free data.
  void rebuild_w();
  /// Copy with the U- and V-slopes of lambda replaced (w rebuilt).
  AlgebraicInstance with_dlambda(double Ul, double Vl) const;
  /// Copy with alpha replaced (w rebuilt).
  AlgebraicInstance with_alpha(double a) const;
};

struct InstanceOverrides {
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> Ulam;
  std::optional<double> Vlam;
};

/// Deterministic instance from (n, seed, profile). Profiles:
///  - QuasiUmbilical: alpha beta < 0 and q proportional to u with
///    q(U)^2 = -(alpha/beta)(1 - lambda^2), so h(., U) = 0 holds.
///  - Cylindrical: alpha = 0 and q supported on the W-frame
///    (q(U) = q(V) = 0); trivial q when n = 1.
///  - TotallyUmbilical: beta = 0, q = 0.
/// Throws std::invalid_argument on inconsistent overrides (e.g. a
/// QuasiUmbilical request with alpha*beta > 0).
AlgebraicInstance random_instance(int n, uint64_t seed, Profile profile,
                                  const InstanceOverrides& ov = {});

/// Max residual of the structure identities (2.6), (2.7), (2.8a-e), the
/// metric pairings and the per-profile constraints, over the frame and
/// random probes. Generator soundness gate.
double instance_structure_residual(const AlgebraicInstance& inst, uint64_t probe_seed);

/// Formal covariant derivatives at the model point, defined by the printed
/// quasi-umbilical substitution formulas (3.2)-(3.7). Slot convention:
/// direction first, argument second.
struct FormalNablas {
  const AlgebraicInstance& inst;

  Eigen::VectorXd nabla_phi(const Eigen::VectorXd& dirY, const Eigen::VectorXd& argX) const;
  double nabla_u(const Eigen::VectorXd& dirY, const Eigen::VectorXd& argX) const;
  double nabla_v(const Eigen::VectorXd& dirY, const Eigen::VectorXd& argX) const;
  Eigen::VectorXd nabla_U(const Eigen::VectorXd& dirY) const;        // printed (3.5)
  Eigen::VectorXd nabla_U_subst(const Eigen::VectorXd& dirY) const;  // (2.14) with h substituted
  Eigen::VectorXd nabla_V(const Eigen::VectorXd& dirY) const;
  double h(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const;
};

/// Covariant-almost-analyticity defects of the 1-forms u and v, computed
/// purely from the formal derivatives.
double defect_u(const AlgebraicInstance& inst, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);
double defect_v(const AlgebraicInstance& inst, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// Substituted-identity checks 3.2..3.9 on the instance (printed forms
/// diffed against the direct substitution; 3.5 carries the printed
/// deviation). 3.8 is guarded by beta != 0 and 3.9 by lambda != 0.
ResidualReport check_section3(const AlgebraicInstance& inst, const Tolerances& tol);

ResidualReport check_theorem41(const AlgebraicInstance& inst, const Tolerances& tol);
ResidualReport check_corollary41(const AlgebraicInstance& inst, const Tolerances& tol);
ResidualReport check_theorem42_corollary42(const AlgebraicInstance& inst, const Tolerances& tol);
ResidualReport check_theorem43_corollary43(const AlgebraicInstance& inst, const Tolerances& tol);
ResidualReport check_theorems44_45_46(const AlgebraicInstance& inst, const Tolerances& tol);

/// All checkers applicable to the instance's profile, merged.
ResidualReport check_instance(const AlgebraicInstance& inst, const Tolerances& tol);

}  // namespace shv
