#pragma once

#include <Eigen/Dense>
#include <span>

#include "shv/jet.hpp"
#include "shv/smooth_map.hpp"

namespace shv {

/// Riemannian metric as an evaluatable field p -> g_ij(p) (row-major
/// dim x dim output, symmetric). Positive definiteness is checked by
/// Cholesky wherever a matrix is materialized.
struct MetricField {
  int dim = 0;
  SmoothMap components;

  Eigen::MatrixXd matrix_at(std::span<const double> p) const;  // throws if not SPD
};

MetricField euclidean_metric(int dim);

/// Symbols of the Levi-Civita connection, stored symmetrized in the two
/// lower indices so the symmetry holds exactly.
struct ChristoffelSymbols {
  int dim = 0;
  std::vector<double> sym;  // k * tri + tri_index(i,j), i <= j

  static int tri_count(int dim) { return dim * (dim + 1) / 2; }
  double at(int k, int i, int j) const {
    if (i > j) std::swap(i, j);
    return sym[static_cast<size_t>(k) * tri_count(dim) + i * dim - i * (i - 1) / 2 + (j - i)];
  }
  double& ref(int k, int i, int j) {
    if (i > j) std::swap(i, j);
    return sym[static_cast<size_t>(k) * tri_count(dim) + i * dim - i * (i - 1) / 2 + (j - i)];
  }
};

/// Gamma^k_ij = 1/2 g^ated(d_i g_jl + d_j g_il - d_l g_ij), from exact
/// metric jets.
ChristoffelSymbols christoffel(const MetricField& g, std::span<const double> p);

/// Same, from precomputed metric values (dim^2) and derivatives
/// (jac(row a*dim+b, col i) = d_i g_ab).
ChristoffelSymbols christoffel_from_jets(const Eigen::VectorXd& gvals, const Eigen::MatrixXd& gjac,
                                         int dim);

/// FD-oracle variant: derivatives of g by central differences instead of
/// jets. Test oracle only; truncation-limited.
ChristoffelSymbols christoffel_fd(const MetricField& g, std::span<const double> p, double h = 1e-3);

struct VectorField {
  int dim = 0;
  SmoothMap components;  // dim outputs
};
struct OneFormField {
  int dim = 0;
  SmoothMap components;  // dim outputs
};
struct Tensor11Field {
  int dim = 0;
  SmoothMap components;  // row-major dim x dim, T^i_j at (i*dim + j)
};

// Component-level covariant derivatives (shared by the ambient and the
// induced layer, which feeds precomputed jets).
Eigen::VectorXd covd_vector_comp(const Eigen::VectorXd& X, const Eigen::MatrixXd& dX,
                                 const ChristoffelSymbols& G, const Eigen::VectorXd& Y);
Eigen::VectorXd covd_oneform_comp(const Eigen::VectorXd& w, const Eigen::MatrixXd& dw,
                                  const ChristoffelSymbols& G, const Eigen::VectorXd& Y);
Eigen::MatrixXd covd_tensor11_comp(const Eigen::MatrixXd& T, const Eigen::MatrixXd& dT_flat,
                                   const ChristoffelSymbols& G, const Eigen::VectorXd& Y);

/// (nabla_Y X)^k = Y^i d_i X^k + Gamma^k_ij Y^i X^j
Eigen::VectorXd covariant_derivative_vector(const VectorField& X, const MetricField& g,
                                            const Eigen::VectorXd& Y, std::span<const double> p);
/// (nabla_Y w)(X) = Y(w(X)) - w(nabla_Y X), componentwise with Gamma.
Eigen::VectorXd covariant_derivative_oneform(const OneFormField& w, const MetricField& g,
                                             const Eigen::VectorXd& Y, std::span<const double> p);
/// (nabla_Y T)(X) = nabla_Y(TX) - T(nabla_Y X), componentwise.
Eigen::MatrixXd covariant_derivative_11(const Tensor11Field& T, const MetricField& g,
                                        const Eigen::VectorXd& Y, std::span<const double> p);

}  // namespace shv
