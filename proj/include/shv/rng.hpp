#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace shv {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. mt19937_64 output is fully specified by
/// the standard and the uniform/normal mappings below are our own, so
/// identical seeds give identical draws on any platform with IEEE doubles.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  int sign() { return (eng_() & 1) ? 1 : -1; }

  double normal() {
    double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::VectorXd gaussian_vec(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Eigen::MatrixXd gaussian_mat(int r, int c) {
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }

  /// Random rotation from the QR of a Gaussian matrix, sign-fixed so the
  /// result is deterministic and orientation-preserving.
  Eigen::MatrixXd rotation(int n) {
    Eigen::MatrixXd a = gaussian_mat(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    return q;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace shv
