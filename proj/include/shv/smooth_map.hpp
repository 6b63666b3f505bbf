#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shv/dual.hpp"

namespace shv {

/// Type-erased smooth map R^m -> R^k, evaluatable at plain doubles and at
/// up to three nesting levels of forward duals. Fields, metrics and
/// embeddings are all stored this way; the level cap exists because a map
/// built from derived quantities (e.g. an induced metric, which already
/// consumes one dual level to differentiate the embedding) supports fewer
/// outer levels than a closed-form coordinate expression.
class SmoothMap {
  struct Iface {
    virtual ~Iface() = default;
    virtual void e0(std::span<const D0> x, std::span<D0> out) const = 0;
    virtual void e1(std::span<const D1> x, std::span<D1> out) const = 0;
    virtual void e2(std::span<const D2> x, std::span<D2> out) const = 0;
    virtual void e3(std::span<const D3> x, std::span<D3> out) const = 0;
  };

  template <int MaxLevel, typename F>
  struct Model final : Iface {
    F f;
    explicit Model(F g) : f(std::move(g)) {}
    template <typename T, int K>
    void call(std::span<const T> x, std::span<T> out) const {
      if constexpr (K <= MaxLevel) {
        f(x, out);
      } else {
        throw std::logic_error("SmoothMap: dual level beyond this map's differentiability cap");
      }
    }
    void e0(std::span<const D0> x, std::span<D0> out) const override { call<D0, 0>(x, out); }
    void e1(std::span<const D1> x, std::span<D1> out) const override { call<D1, 1>(x, out); }
    void e2(std::span<const D2> x, std::span<D2> out) const override { call<D2, 2>(x, out); }
    void e3(std::span<const D3> x, std::span<D3> out) const override { call<D3, 3>(x, out); }
  };

 public:
  SmoothMap() = default;

  template <typename F>
  SmoothMap(int in_dim, int out_dim, F f)
      : in_(in_dim), out_(out_dim), impl_(std::make_shared<Model<3, F>>(std::move(f))) {}

  template <int MaxLevel, typename F>
  static SmoothMap with_levels(int in_dim, int out_dim, F f) {
    SmoothMap m;
    m.in_ = in_dim;
    m.out_ = out_dim;
    m.impl_ = std::make_shared<Model<MaxLevel, F>>(std::move(f));
    return m;
  }

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  bool valid() const { return impl_ != nullptr; }

  void eval(std::span<const D0> x, std::span<D0> out) const { check(x, out); impl_->e0(x, out); }
  void eval(std::span<const D1> x, std::span<D1> out) const { check(x, out); impl_->e1(x, out); }
  void eval(std::span<const D2> x, std::span<D2> out) const { check(x, out); impl_->e2(x, out); }
  void eval(std::span<const D3> x, std::span<D3> out) const { check(x, out); impl_->e3(x, out); }

  template <typename T>
  std::vector<T> operator()(std::span<const T> x) const {
    std::vector<T> out(static_cast<size_t>(out_));
    eval(x, std::span<T>(out));
    return out;
  }
  std::vector<double> operator()(std::span<const double> x) const {
    std::vector<double> out(static_cast<size_t>(out_));
    eval(x, std::span<double>(out));
    return out;
  }

 private:
  template <typename T>
  void check(std::span<const T> x, std::span<T> out) const {
    if (!impl_) throw std::logic_error("SmoothMap: empty");
    if (static_cast<int>(x.size()) != in_ || static_cast<int>(out.size()) != out_)
      throw std::invalid_argument("SmoothMap: dimension mismatch");
  }

  int in_ = 0;
  int out_ = 0;
  std::shared_ptr<const Iface> impl_;
};

}  // namespace shv
