#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "shv/point.hpp"
#include "shv/smooth_map.hpp"

namespace shv {

/// Second-order jet of a scalar map at a point: value, gradient and
/// (symmetric) Hessian. Produced by nested forward duals, so the entries
/// are exact up to roundoff; no truncation error.
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

struct Jet1All {
  Eigen::VectorXd values;  // out_dim
  Eigen::MatrixXd jac;     // out_dim x in_dim
};

/// Plain values of a map at a point.
Eigen::VectorXd eval_values(const SmoothMap& f, std::span<const double> p);

/// Values and first derivatives of every component (one dual sweep per
/// input direction).
Jet1All eval_jet1_all(const SmoothMap& f, std::span<const double> p);

/// Full second-order jets of every component via nested duals, one sweep
/// per unordered direction pair. Throws std::domain_error if the map hits
/// a primitive singularity at p (non-finite output).
std::vector<Jet2> eval_jet2_all(const SmoothMap& f, std::span<const double> p);

/// Scalar-map convenience wrapper (out_dim must be 1).
Jet2 eval_jet2(const SmoothMap& f, std::span<const double> p);

/// Central-difference Jacobian with one Richardson step (h and h/2).
/// Truncation-limited oracle; the caller interprets accuracy.
Eigen::MatrixXd fd_jacobian(const SmoothMap& f, std::span<const double> p, double h = 1e-3);

/// Central second differences with one Richardson step, one Hessian per
/// output component.
std::vector<Eigen::MatrixXd> fd_hessian_all(const SmoothMap& f, std::span<const double> p,
                                            double h = 1e-2);

inline Jet2 eval_jet2(const SmoothMap& f, const Point& p) { return eval_jet2(f, p.view()); }
inline Eigen::MatrixXd fd_jacobian(const SmoothMap& f, const Point& p, double h = 1e-3) {
  return fd_jacobian(f, p.view(), h);
}

}  // namespace shv
