#pragma once

#include <stdexcept>

namespace shv {

/// Tolerance ladder. Exact-class residuals are pure pointwise linear
/// algebra; ad_chain covers identities chained through one jet/Christoffel
/// evaluation; fd_oracle is for truncation-limited finite-difference
/// cross-checks. Differential identities on induced fields chain AD
/// through two metrics and get one extra decade; root extractions get two
/// decades over exact.
struct Tolerances {
  double exact = 1e-12;
  double ad_chain = 1e-8;
  double fd_oracle = 1e-6;
  double classify = 1e-8;

  double diff_chain() const { return 10.0 * ad_chain; }
  double root() const { return 100.0 * exact; }

  void validate() const {
    if (!(exact > 0 && ad_chain > 0 && fd_oracle > 0 && classify > 0))
      throw std::invalid_argument("tolerances must be positive");
    if (!(exact <= ad_chain && ad_chain <= fd_oracle))
      throw std::invalid_argument("tolerances must be ordered exact <= ad_chain <= fd_oracle");
  }
};

}  // namespace shv
