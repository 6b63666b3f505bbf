#include "doctest.h"

#include <Eigen/Dense>

#include "shv/rng.hpp"
#include "shv/tensor.hpp"

using namespace shv;

TEST_CASE("trace of the identity is the dimension") {
  TensorValue id = TensorValue::identity(4);
  TensorValue tr = contract(id, 0, 1);
  CHECK(tr.order() == 0);
  CHECK(tr.entries.size() == 1);
  CHECK(tr.entries[0] == doctest::Approx(4.0));
}

TEST_CASE("contracting an outer product gives the dot product") {
  std::vector<double> a = {1.0, -2.0, 0.5};
  std::vector<double> b = {3.0, 0.25, -1.0};
  TensorValue t = TensorValue::outer_vec_covec(a, b);
  double expect = 1.0 * 3.0 + (-2.0) * 0.25 + 0.5 * (-1.0);
  CHECK(contract(t, 0, 1).entries[0] == doctest::Approx(expect));
}

TEST_CASE("trace of g^{-1} h for h = alpha g is dim * alpha") {
  Rng rng(5);
  for (int n : {1, 2, 3}) {
    const int m = 2 * n;
    Eigen::MatrixXd a = rng.gaussian_mat(m, m);
    Eigen::MatrixXd g = a * a.transpose() + m * Eigen::MatrixXd::Identity(m, m);
    double alpha = rng.uniform(-2.0, 2.0);
    Eigen::MatrixXd H = g.llt().solve(alpha * g);  // g^{-1} h
    TensorValue t = TensorValue::zeros(1, 1, {m, m});
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) t.entries[i * m + j] = H(i, j);
    CHECK(trace11(t) == doctest::Approx(m * alpha).epsilon(1e-12));
  }
}

TEST_CASE("contraction is linear") {
  Rng rng(11);
  TensorValue t1 = TensorValue::zeros(1, 2, {3, 3, 4});
  TensorValue t2 = TensorValue::zeros(1, 2, {3, 3, 4});
  for (auto* t : {&t1, &t2})
    for (auto& e : t->entries) e = rng.uniform(-1, 1);
  double a = 1.7, b = -0.3;
  TensorValue lin = TensorValue::zeros(1, 2, {3, 3, 4});
  for (size_t i = 0; i < lin.entries.size(); ++i)
    lin.entries[i] = a * t1.entries[i] + b * t2.entries[i];
  TensorValue c0 = contract(lin, 0, 1);
  TensorValue c1 = contract(t1, 0, 1);
  TensorValue c2 = contract(t2, 0, 1);
  for (size_t i = 0; i < c0.entries.size(); ++i)
    CHECK(c0.entries[i] == doctest::Approx(a * c1.entries[i] + b * c2.entries[i]).epsilon(1e-15));
}

TEST_CASE("contract rejects bad slot pairings") {
  TensorValue t = TensorValue::zeros(1, 2, {3, 3, 4});
  CHECK_THROWS_AS(contract(t, 0, 2), std::invalid_argument);  // extent mismatch
  CHECK_THROWS_AS(contract(t, 1, 2), std::invalid_argument);  // same variance
  CHECK_THROWS_AS(contract(t, 0, 0), std::invalid_argument);
}

TEST_CASE("validate rejects malformed tensors") {
  TensorValue t = TensorValue::zeros(1, 1, {2, 2});
  t.entries.pop_back();
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  TensorValue t2 = TensorValue::zeros(0, 1, {3});
  t2.entries[1] = std::nan("");
  CHECK_THROWS_AS(t2.validate(), std::invalid_argument);
}
