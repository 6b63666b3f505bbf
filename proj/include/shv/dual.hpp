#pragma once

#include <cmath>
#include <type_traits>

namespace shv {

/// Forward-mode dual number. Nesting (Dual<Dual<double>>, ...) propagates
/// higher derivatives: the k-fold nesting carries all mixed directional
/// derivatives of order <= k of whatever expression it flows through.
template <typename T>
struct Dual {
  T val{};
  T dot{};

  Dual() = default;
  Dual(const T& v) : val(v) {}
  Dual(const T& v, const T& d) : val(v), dot(d) {}

  // Lift plain numbers through any nesting depth.
  template <typename U,
            typename = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
  Dual(U v) : val(static_cast<T>(v)) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    dot += o.dot;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    dot -= o.dot;
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.dot + b.dot}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.dot - b.dot}; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.dot}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.dot * b.val + a.val * b.dot};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1) / b.val;
    T q = a.val * inv;
    return {q, (a.dot - q * b.dot) * inv};
  }
};

inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Dual<T>& x) {
  return value_of(x.val);
}

inline bool all_finite(double x) { return std::isfinite(x); }
template <typename T>
bool all_finite(const Dual<T>& x) {
  return all_finite(x.val) && all_finite(x.dot);
}

// Mixed arithmetic against anything Dual<T> can be built from (doubles,
// ints, shallower duals).
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator+(const Dual<T>& a, const U& b) { return a + Dual<T>(b); }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator+(const U& a, const Dual<T>& b) { return Dual<T>(a) + b; }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator-(const Dual<T>& a, const U& b) { return a - Dual<T>(b); }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator-(const U& a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator*(const Dual<T>& a, const U& b) { return a * Dual<T>(b); }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator*(const U& a, const Dual<T>& b) { return Dual<T>(a) * b; }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator/(const Dual<T>& a, const U& b) { return a / Dual<T>(b); }
template <typename T, typename U,
          typename = std::enable_if_t<!std::is_same_v<U, Dual<T>> &&
                                      std::is_constructible_v<Dual<T>, const U&>>>
Dual<T> operator/(const U& a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <typename T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.val), x.dot * cos(x.val)};
}
template <typename T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.val), -(x.dot * sin(x.val))};
}
template <typename T>
Dual<T> tan(const Dual<T>& x) {
  using std::tan;
  T t = tan(x.val);
  return {t, x.dot * (T(1) + t * t)};
}
template <typename T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.val);
  return {e, x.dot * e};
}
template <typename T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.val), x.dot / x.val};
}
template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T r = sqrt(x.val);
  return {r, x.dot / (r + r)};
}
template <typename T>
Dual<T> atan(const Dual<T>& x) {
  using std::atan;
  return {atan(x.val), x.dot / (T(1) + x.val * x.val)};
}
template <typename T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {sinh(x.val), x.dot * cosh(x.val)};
}
template <typename T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {cosh(x.val), x.dot * sinh(x.val)};
}
template <typename T>
Dual<T> tanh(const Dual<T>& x) {
  using std::tanh;
  T t = tanh(x.val);
  return {t, x.dot * (T(1) - t * t)};
}

/// Integer power by repeated multiplication (exact for polynomial fields).
template <typename T>
T powi(const T& x, int n) {
  if (n < 0) return T(1) / powi(x, -n);
  T r(1);
  T b = x;
  int e = n;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

template <typename T>
Dual<T> pow(const Dual<T>& x, double p) {
  using shv::exp;
  using shv::log;
  return exp(log(x) * Dual<T>(p));
}

using D0 = double;
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

}  // namespace shv
