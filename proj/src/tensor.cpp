#include "shv/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace shv {

size_t TensorValue::entry_count() const {
  size_t n = 1;
  for (int d : dims) n *= static_cast<size_t>(d);
  return n;
}

void TensorValue::validate() const {
  if (contravariant < 0 || covariant < 0)
    throw std::invalid_argument("TensorValue: negative valence");
  if (static_cast<int>(dims.size()) != order())
    throw std::invalid_argument("TensorValue: slot count does not match valence");
  for (int d : dims)
    if (d <= 0) throw std::invalid_argument("TensorValue: non-positive extent");
  if (entries.size() != entry_count())
    throw std::invalid_argument("TensorValue: entry count does not match extents");
  for (double e : entries)
    if (!std::isfinite(e)) throw std::invalid_argument("TensorValue: non-finite entry");
}

namespace {
size_t flat_index(const std::vector<int>& dims, std::span<const int> idx) {
  size_t f = 0;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims[k]) throw std::out_of_range("TensorValue: index out of range");
    f = f * static_cast<size_t>(dims[k]) + static_cast<size_t>(idx[k]);
  }
  return f;
}
}  // namespace

double& TensorValue::at(std::span<const int> idx) {
  if (static_cast<int>(idx.size()) != order()) throw std::invalid_argument("TensorValue: bad index arity");
  return entries[flat_index(dims, idx)];
}

double TensorValue::at(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != order()) throw std::invalid_argument("TensorValue: bad index arity");
  return entries[flat_index(dims, idx)];
}

TensorValue TensorValue::zeros(int r, int s, std::vector<int> dims) {
  TensorValue t;
  t.contravariant = r;
  t.covariant = s;
  t.dims = std::move(dims);
  t.entries.assign(t.entry_count(), 0.0);
  t.validate();
  return t;
}

TensorValue TensorValue::identity(int n) {
  TensorValue t = zeros(1, 1, {n, n});
  for (int i = 0; i < n; ++i) t.entries[static_cast<size_t>(i) * n + i] = 1.0;
  return t;
}

TensorValue TensorValue::outer_vec_covec(std::span<const double> a, std::span<const double> b) {
  TensorValue t = zeros(1, 1, {static_cast<int>(a.size()), static_cast<int>(b.size())});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) t.entries[i * b.size() + j] = a[i] * b[j];
  return t;
}

TensorValue contract(const TensorValue& t, int slot_a, int slot_b) {
  t.validate();
  const int ord = t.order();
  if (slot_a < 0 || slot_a >= ord || slot_b < 0 || slot_b >= ord || slot_a == slot_b)
    throw std::invalid_argument("contract: bad slot indices");
  const bool a_contra = slot_a < t.contravariant;
  const bool b_contra = slot_b < t.contravariant;
  if (a_contra == b_contra)
    throw std::invalid_argument("contract: slots must have opposite variance");
  if (t.dims[slot_a] != t.dims[slot_b])
    throw std::invalid_argument("contract: paired slots must have equal extents");

  std::vector<int> keep;
  for (int k = 0; k < ord; ++k)
    if (k != slot_a && k != slot_b) keep.push_back(k);

  TensorValue out;
  out.contravariant = t.contravariant - 1;
  out.covariant = t.covariant - 1;
  for (int k : keep) out.dims.push_back(t.dims[k]);
  out.entries.assign(out.entry_count(), 0.0);

  const int n = t.dims[slot_a];
  std::vector<int> idx(static_cast<size_t>(ord), 0);
  std::vector<int> oidx(keep.size(), 0);
  // Odometer over the kept slots; sum the paired slot.
  size_t total = out.entry_count();
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    for (size_t k = keep.size(); k-- > 0;) {
      oidx[k] = static_cast<int>(rem % static_cast<size_t>(out.dims[k]));
      rem /= static_cast<size_t>(out.dims[k]);
    }
    for (size_t k = 0; k < keep.size(); ++k) idx[static_cast<size_t>(keep[k])] = oidx[k];
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      idx[static_cast<size_t>(slot_a)] = d;
      idx[static_cast<size_t>(slot_b)] = d;
      s += t.at(idx);
    }
    out.entries[flat] = s;
  }
  return out;
}

double trace11(const TensorValue& t) {
  if (t.contravariant != 1 || t.covariant != 1)
    throw std::invalid_argument("trace11: (1,1) tensor expected");
  TensorValue s = contract(t, 0, 1);
  return s.entries[0];
}

}  // namespace shv
