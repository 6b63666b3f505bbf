#pragma once

#include <span>
#include <string>
#include <vector>

namespace shv {

/// Dense tensor value with valence (r contravariant, s covariant) slots.
/// Slot order: contravariant slots first, then covariant. Entries are
/// stored in row-major multi-index order (last slot fastest), which is
/// fixed so that emitted reports are reproducible bit for bit.
struct TensorValue {
  int contravariant = 0;
  int covariant = 0;
  std::vector<int> dims;       // one extent per slot
  std::vector<double> entries;

  int order() const { return contravariant + covariant; }
  size_t entry_count() const;
  void validate() const;

  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;

  static TensorValue zeros(int r, int s, std::vector<int> dims);
  /// (1,1) identity on an n-dimensional space.
  static TensorValue identity(int n);
  /// Outer product a (vector) x b (covector) as a (1,1) tensor.
  static TensorValue outer_vec_covec(std::span<const double> a, std::span<const double> b);
};

/// Sum over a paired (contravariant, covariant) slot; valence drops by
/// (1,1). Throws on extent mismatch or same-variance pairing.
TensorValue contract(const TensorValue& t, int slot_a, int slot_b);

/// Full trace of a (1,1) tensor, as the scalar entry of its contraction.
double trace11(const TensorValue& t);

}  // namespace shv
