#include "shv/hypersurface.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "shv/quasi_umbilical.hpp"
#include "shv/rng.hpp"

namespace shv {

SmoothMap make_exp_linear_scale(std::vector<double> coeffs) {
  const int d = static_cast<int>(coeffs.size());
  return SmoothMap(d, 1, [coeffs, d]<typename T>(std::span<const T> x, std::span<T> out) {
    T s(0);
    for (int i = 0; i < d; ++i) s = s + coeffs[static_cast<size_t>(i)] * x[i];
    using std::exp;
    out[0] = exp(s);
  });
}

Embedding make_embedding(const std::string& name, const EmbeddingParams& params) {
  Embedding e;
  e.name = name;
  if (name == "plane-y0") {
    e.surface_dim = 2;
    e.ambient_dim = 3;
    e.map = SmoothMap(2, 3, []<typename T>(std::span<const T> s, std::span<T> out) {
      out[0] = s[0];
      out[1] = T(0);
      out[2] = s[1];
    });
  } else if (name == "tilted-plane") {
    e.surface_dim = 2;
    e.ambient_dim = 3;
    const double st = std::sin(params.theta0), ct = std::cos(params.theta0);
    e.map = SmoothMap(2, 3, [st, ct]<typename T>(std::span<const T> s, std::span<T> out) {
      out[0] = s[0];
      out[1] = st * s[1];
      out[2] = ct * s[1];
    });
  } else if (name == "graph-st") {
    e.surface_dim = 2;
    e.ambient_dim = 3;
    e.map = SmoothMap(2, 3, []<typename T>(std::span<const T> s, std::span<T> out) {
      out[0] = s[0];
      out[1] = s[1];
      out[2] = s[0] * s[1];
    });
  } else if (name == "sphere") {
    e.surface_dim = 2;
    e.ambient_dim = 3;
    const double r = params.radius;
    if (!(r > 0)) throw std::invalid_argument("sphere embedding: radius must be positive");
    // polar chart away from the poles: theta = pi/2 + s/2
    e.map = SmoothMap(2, 3, [r]<typename T>(std::span<const T> s, std::span<T> out) {
      using std::cos;
      using std::sin;
      T theta = T(1.5707963267948966) + T(0.5) * s[0];
      out[0] = r * sin(theta) * cos(s[1]);
      out[1] = r * sin(theta) * sin(s[1]);
      out[2] = r * cos(theta);
    });
  } else if (name == "plane-z0") {
    e.surface_dim = 2;
    e.ambient_dim = 3;
    e.map = SmoothMap(2, 3, []<typename T>(std::span<const T> s, std::span<T> out) {
      out[0] = s[0];
      out[1] = s[1];
      out[2] = T(0);
    });
  } else if (name == "custom-poly") {
    if (params.poly.empty()) throw std::invalid_argument("custom-poly: empty coefficient lists");
    const int d = static_cast<int>(params.poly.size());
    int k = -1;
    for (const auto& comp : params.poly)
      for (const auto& term : comp) {
        if (k < 0) k = static_cast<int>(term.exponents.size());
        if (static_cast<int>(term.exponents.size()) != k)
          throw std::invalid_argument("custom-poly: inconsistent exponent arity");
      }
    if (k <= 0) throw std::invalid_argument("custom-poly: no terms");
    if (k + 1 != d)
      throw std::invalid_argument("custom-poly: ambient dim must be surface dim + 1");
    auto poly = params.poly;
    e.surface_dim = k;
    e.ambient_dim = d;
    e.map = SmoothMap(k, d, [poly, d, k]<typename T>(std::span<const T> s, std::span<T> out) {
      for (int c = 0; c < d; ++c) {
        T acc(0);
        for (const auto& term : poly[static_cast<size_t>(c)]) {
          T m(term.coeff);
          for (int a = 0; a < k; ++a)
            if (term.exponents[static_cast<size_t>(a)] != 0)
              m = m * powi(s[a], term.exponents[static_cast<size_t>(a)]);
          acc = acc + m;
        }
        out[c] = acc;
      }
    });
  } else {
    throw std::invalid_argument("unknown embedding '" + name + "'");
  }
  return e;
}

namespace {

// ---------------------------------------------------------------------
// Templated point pipeline. T is the scalar (double or nested duals); the
// embedding is evaluated one dual level deeper to produce its Jacobian.
// ---------------------------------------------------------------------

template <typename T>
struct GeomCore {
  std::vector<T> x;       // ambient position
  MatT<T> B;              // d x k
  std::vector<T> nu;      // cofactor conormal
  std::vector<T> N_unit;  // g-unit normal
  std::vector<T> N;       // affine normal
  T rho{1.0};
  T norm2N{1.0};
  MatT<T> gamb;           // ambient metric at x
  MatT<T> g;              // induced metric
};

template <typename T>
GeomCore<T> geom_core(const Embedding& e, const MetricField& ambient_g, std::span<const T> s) {
  const int k = e.surface_dim;
  const int d = e.ambient_dim;
  GeomCore<T> out;
  out.x = e.map(std::span<const T>(s));

  out.B = MatT<T>(d, k);
  std::vector<Dual<T>> xs(static_cast<size_t>(k));
  std::vector<Dual<T>> xo(static_cast<size_t>(d));
  for (int a = 0; a < k; ++a) {
    for (int j = 0; j < k; ++j) xs[j] = Dual<T>(s[j], T(j == a ? 1.0 : 0.0));
    e.map.eval(std::span<const Dual<T>>(xs), std::span<Dual<T>>(xo));
    for (int i = 0; i < d; ++i) out.B(i, a) = xo[i].dot;
  }

  // nu_j = cofactor of slot (j, d-1) in [B | e_j]; then det[B | w] = nu(w).
  out.nu.assign(static_cast<size_t>(d), T(0));
  MatT<T> minor(d - 1, k);
  for (int j = 0; j < d; ++j) {
    int rr = 0;
    for (int r = 0; r < d; ++r) {
      if (r == j) continue;
      for (int c = 0; c < k; ++c) minor(rr, c) = out.B(r, c);
      ++rr;
    }
    T det = determinant(minor);
    out.nu[static_cast<size_t>(j)] = ((j + d - 1) % 2 == 0) ? det : -det;
  }

  std::vector<T> gm = ambient_g.components(std::span<const T>(out.x));
  out.gamb = MatT<T>(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.gamb(i, j) = gm[static_cast<size_t>(i * d + j)];

  std::vector<T> N0 = solve_vec(out.gamb, std::span<const T>(out.nu));
  T norm2 = dot(std::span<const T>(out.nu), std::span<const T>(N0));
  if (!(value_of(norm2) > 1e-20))
    throw std::domain_error("embedding degenerate: Jacobian rank deficient at the point");
  using std::sqrt;
  T inv_norm = T(1) / sqrt(norm2);
  out.N_unit.resize(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) out.N_unit[static_cast<size_t>(i)] = N0[static_cast<size_t>(i)] * inv_norm;

  if (e.normal_scale) {
    std::vector<T> rv = (*e.normal_scale)(std::span<const T>(out.x));
    out.rho = rv[0];
  } else {
    out.rho = T(1);
  }
  out.N.resize(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) out.N[static_cast<size_t>(i)] = out.rho * out.N_unit[static_cast<size_t>(i)];
  out.norm2N = out.rho * out.rho;

  out.g = MatT<T>(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      T sgg(0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sgg = sgg + out.B(i, a) * out.gamb(i, j) * out.B(j, b);
      out.g(a, b) = sgg;
    }
  return out;
}

template <typename T>
struct ContactCore {
  GeomCore<T> geo;
  MatT<T> phi;  // k x k
  std::vector<T> u, v, U, V;
  T lambda{0.0};
  T mu{0.0};
};

template <typename T>
ContactCore<T> contact_core(const Embedding& e, const AmbientModel& amb, std::span<const T> s) {
  if (!amb.contact)
    throw std::invalid_argument("induced structure requires a contact ambient model");
  const ContactMetricStructure& S = *amb.contact;
  const int k = e.surface_dim;
  const int d = e.ambient_dim;

  ContactCore<T> out;
  out.geo = geom_core<T>(e, amb.metric, s);
  auto& geo = out.geo;

  std::vector<T> eta = S.eta.components(std::span<const T>(geo.x));
  std::vector<T> xiv = S.xi.components(std::span<const T>(geo.x));
  std::vector<T> phv = S.phi.components(std::span<const T>(geo.x));
  MatT<T> phiA(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phiA(i, j) = phv[static_cast<size_t>(i * d + j)];

  out.lambda = dot(std::span<const T>(eta), std::span<const T>(geo.N));

  MatT<T> A(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < k; ++c) A(r, c) = geo.B(r, c);
    A(r, k) = geo.N[static_cast<size_t>(r)];
  }

  // columns: phi(B e_a) for a < k, phi(N), xi
  MatT<T> R(d, k + 2);
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < d; ++i) {
      T si(0);
      for (int j = 0; j < d; ++j) si = si + phiA(i, j) * geo.B(j, a);
      R(i, a) = si;
    }
  for (int i = 0; i < d; ++i) {
    T si(0);
    for (int j = 0; j < d; ++j) si = si + phiA(i, j) * geo.N[static_cast<size_t>(j)];
    R(i, k) = si;
  }
  for (int i = 0; i < d; ++i) R(i, k + 1) = xiv[static_cast<size_t>(i)];

  MatT<T> C = solve(A, R);

  out.phi = MatT<T>(k, k);
  out.u.assign(static_cast<size_t>(k), T(0));
  out.v.assign(static_cast<size_t>(k), T(0));
  out.U.assign(static_cast<size_t>(k), T(0));
  out.V.assign(static_cast<size_t>(k), T(0));
  for (int a = 0; a < k; ++a) {
    for (int r = 0; r < k; ++r) out.phi(r, a) = C(r, a);
    out.u[static_cast<size_t>(a)] = C(k, a);
    out.U[static_cast<size_t>(a)] = -C(a, k);
    out.V[static_cast<size_t>(a)] = C(a, k + 1);
    T va(0);
    for (int i = 0; i < d; ++i) va = va + eta[static_cast<size_t>(i)] * geo.B(i, a);
    out.v[static_cast<size_t>(a)] = va;
  }
  out.mu = C(k, k + 1);
  return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}
Eigen::MatrixXd to_eigen(const MatT<double>& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out(r, c) = m(r, c);
  return out;
}

/// One SmoothMap carrying the whole induced package as a function of the
/// surface coordinates: [g, phi, u, v, U, V, lambda, mu, rho]. Level cap 2
/// because the embedding is consumed one dual level deeper.
SmoothMap induced_pack(const Embedding& e, const AmbientModel& amb) {
  const int k = e.surface_dim;
  const int out_dim = 2 * k * k + 4 * k + 3;
  return SmoothMap::with_levels<2>(
      k, out_dim, [e, amb, k]<typename T>(std::span<const T> s, std::span<T> out) {
        ContactCore<T> c = contact_core<T>(e, amb, s);
        int idx = 0;
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) out[idx++] = c.geo.g(a, b);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) out[idx++] = c.phi(a, b);
        for (int a = 0; a < k; ++a) out[idx++] = c.u[static_cast<size_t>(a)];
        for (int a = 0; a < k; ++a) out[idx++] = c.v[static_cast<size_t>(a)];
        for (int a = 0; a < k; ++a) out[idx++] = c.U[static_cast<size_t>(a)];
        for (int a = 0; a < k; ++a) out[idx++] = c.V[static_cast<size_t>(a)];
        out[idx++] = c.lambda;
        out[idx++] = c.mu;
        out[idx++] = c.geo.rho;
      });
}

/// Affine normal as a field of the surface coordinates.
SmoothMap normal_field(const Embedding& e, const MetricField& ambient_g) {
  const int k = e.surface_dim;
  const int d = e.ambient_dim;
  return SmoothMap::with_levels<2>(
      k, d, [e, ambient_g, d]<typename T>(std::span<const T> s, std::span<T> out) {
        GeomCore<T> c = geom_core<T>(e, ambient_g, s);
        for (int i = 0; i < d; ++i) out[i] = c.N[static_cast<size_t>(i)];
      });
}

}  // namespace

Eigen::MatrixXd jacobian(const Embedding& e, std::span<const double> s) {
  Jet1All j = eval_jet1_all(e.map, s);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j.jac);
  const auto& sv = svd.singularValues();
  if (sv[e.surface_dim - 1] <= 1e-12 * sv[0])
    throw std::domain_error("embedding degenerate: Jacobian rank deficient at the point");
  return j.jac;
}

NormalData normal(const Embedding& e, const MetricField& ambient_g, std::span<const double> s) {
  GeomCore<double> c = geom_core<double>(e, ambient_g, s);
  NormalData nd;
  nd.conormal = to_eigen(c.nu);
  nd.unit = to_eigen(c.N_unit);
  nd.affine = to_eigen(c.N);
  nd.rho = c.rho;
  return nd;
}

InducedStructure induce(const Embedding& e, const AmbientModel& amb, std::span<const double> s) {
  ContactCore<double> c = contact_core<double>(e, amb, s);
  InducedStructure is;
  is.k = e.surface_dim;
  is.d = e.ambient_dim;
  is.surface_point = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  is.ambient_point = to_eigen(c.geo.x);
  is.B = to_eigen(c.geo.B);
  is.N_unit = to_eigen(c.geo.N_unit);
  is.N = to_eigen(c.geo.N);
  is.rho = c.geo.rho;
  is.norm2N = c.geo.norm2N;
  is.lambda = c.lambda;
  is.mu = c.mu;
  is.g = to_eigen(c.geo.g);
  is.ginv = is.g.llt().solve(Eigen::MatrixXd::Identity(is.k, is.k));
  is.phi = to_eigen(c.phi);
  is.u = to_eigen(c.u);
  is.v = to_eigen(c.v);
  is.U = to_eigen(c.U);
  is.V = to_eigen(c.V);
  return is;
}

void second_fundamental(const Embedding& e, const AmbientModel& amb, InducedStructure& is) {
  const int k = is.k;
  const int d = is.d;
  std::span<const double> s(is.surface_point.data(), static_cast<size_t>(k));

  std::vector<Jet2> jets = eval_jet2_all(e.map, s);
  ChristoffelSymbols Gt = christoffel(amb.metric, std::span<const double>(is.ambient_point.data(),
                                                                          static_cast<size_t>(d)));
  Eigen::MatrixXd A(d, d);
  A.leftCols(k) = is.B;
  A.col(k) = is.N;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

  is.h.resize(k, k);
  is.gauss_tangential.assign(static_cast<size_t>(k), Eigen::MatrixXd::Zero(k, k));
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Eigen::VectorXd C(d);
      for (int i = 0; i < d; ++i) {
        double sgg = jets[static_cast<size_t>(i)].hess(a, b);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) sgg += Gt.at(i, p, q) * is.B(p, a) * is.B(q, b);
        C[i] = sgg;
      }
      Eigen::VectorXd coeff = lu.solve(C);
      is.h(a, b) = coeff[k];
      is.h(b, a) = coeff[k];
      for (int c = 0; c < k; ++c) {
        is.gauss_tangential[static_cast<size_t>(c)](a, b) = coeff[c];
        is.gauss_tangential[static_cast<size_t>(c)](b, a) = coeff[c];
      }
    }
  is.H = is.ginv * is.h;

  SmoothMap nf = normal_field(e, amb.metric);
  Jet1All nj = eval_jet1_all(nf, s);
  is.w.resize(k);
  is.K.resize(k, k);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd Dn(d);
    for (int i = 0; i < d; ++i) {
      double sgg = nj.jac(i, a);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) sgg += Gt.at(i, p, q) * is.B(p, a) * is.N[q];
      Dn[i] = sgg;
    }
    Eigen::VectorXd coeff = lu.solve(Dn);
    is.K.col(a) = coeff.head(k);
    is.w[a] = coeff[k];
  }
  is.has_second = true;
}

InducedStructure induce_full(const Embedding& e, const AmbientModel& amb,
                             std::span<const double> s) {
  InducedStructure is = induce(e, amb, s);
  second_fundamental(e, amb, is);
  return is;
}

SurfaceShape surface_shape(const Embedding& e, const MetricField& ambient_g,
                           std::span<const double> s) {
  const int k = e.surface_dim;
  const int d = e.ambient_dim;
  GeomCore<double> c = geom_core<double>(e, ambient_g, s);
  SurfaceShape sh;
  sh.g = to_eigen(c.g);
  sh.N_unit = to_eigen(c.N_unit);
  std::vector<Jet2> jets = eval_jet2_all(e.map, s);
  ChristoffelSymbols Gt =
      christoffel(ambient_g, std::span<const double>(c.x.data(), c.x.size()));
  Eigen::MatrixXd B = to_eigen(c.B);
  Eigen::MatrixXd A(d, d);
  A.leftCols(k) = B;
  A.col(k) = to_eigen(c.N);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  sh.h.resize(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Eigen::VectorXd C(d);
      for (int i = 0; i < d; ++i) {
        double sgg = jets[static_cast<size_t>(i)].hess(a, b);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) sgg += Gt.at(i, p, q) * B(p, a) * B(q, b);
        C[i] = sgg;
      }
      Eigen::VectorXd coeff = lu.solve(C);
      sh.h(a, b) = coeff[k];
      sh.h(b, a) = coeff[k];
    }
  sh.H = sh.g.llt().solve(sh.h);
  return sh;
}

namespace {
double gnorm(const Eigen::VectorXd& v, const Eigen::MatrixXd& g) {
  double q = v.dot(g * v);
  return q > 0 ? std::sqrt(q) : 0.0;
}

std::vector<Eigen::VectorXd> unit_dirs(const Eigen::MatrixXd& g, int k, Rng& rng, int extra) {
  std::vector<Eigen::VectorXd> dirs;
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd ea = Eigen::VectorXd::Unit(k, a);
    dirs.push_back(ea / gnorm(ea, g));
  }
  for (int t = 0; t < extra; ++t) {
    Eigen::VectorXd v = rng.gaussian_vec(k);
    dirs.push_back(v / gnorm(v, g));
  }
  return dirs;
}

struct ResAcc {
  std::map<std::string, std::pair<double, int>> m;
  void hit(const std::string& name, double val) {
    auto& e = m[name];
    if (val > e.first) e.first = val;
    e.second += 1;
  }
};
}  // namespace

PointwiseResiduals section2_pointwise(const InducedStructure& is,
                                      std::span<const Eigen::VectorXd> dirs) {
  PointwiseResiduals r;
  const double lam = is.lambda, mu = is.mu, rho2 = is.norm2N;
  r.rho_is_unit = std::abs(is.rho - 1.0) <= 1e-12;
  auto uf = [&](const Eigen::VectorXd& X) { return is.u.dot(X); };
  auto vf = [&](const Eigen::VectorXd& X) { return is.v.dot(X); };

  for (const auto& X : dirs) {
    Eigen::VectorXd phiX = is.phi * X;
    r.r25a = std::max(r.r25a, gnorm(is.phi * phiX + X - uf(X) * is.U - vf(X) * is.V, is.g));
    r.r25b = std::max(r.r25b, std::abs(uf(phiX) - mu * vf(X)));
    r.r25b = std::max(r.r25b, std::abs(vf(phiX) + lam * uf(X)));
    r.r27 = std::max(r.r27, std::abs(is.U.dot(is.g * X) - rho2 * uf(X)));
    r.r27 = std::max(r.r27, std::abs(is.V.dot(is.g * X) - vf(X)));
    if (r.rho_is_unit) {
      r.r28c = std::max(r.r28c, std::abs(uf(phiX) - lam * vf(X)));
      r.r28c = std::max(r.r28c, std::abs(vf(phiX) + lam * uf(X)));
    }
  }
  if (r.rho_is_unit) r.r28a = r.r25a;
  for (size_t i = 0; i < dirs.size(); ++i) {
    const auto& X = dirs[i];
    const auto& Y = dirs[(i + 1) % dirs.size()];
    double gXY = X.dot(is.g * Y);
    r.r26 = std::max(r.r26, std::abs((is.phi * X).dot(is.g * (is.phi * Y)) - gXY +
                                     rho2 * uf(X) * uf(Y) + vf(X) * vf(Y)));
  }
  r.r25c = std::max(gnorm(is.phi * is.U + lam * is.V, is.g),
                    gnorm(is.phi * is.V - mu * is.U, is.g));
  r.r25d = std::max(std::abs(uf(is.U) - (1.0 - mu * lam)), std::abs(uf(is.V)));
  r.r25e = std::max(std::abs(vf(is.U)), std::abs(vf(is.V) - (1.0 - mu * lam)));
  if (r.rho_is_unit) {
    r.r28b = std::max(gnorm(is.phi * is.U + lam * is.V, is.g),
                      gnorm(is.phi * is.V - lam * is.U, is.g));
    r.r28d = std::max(std::abs(uf(is.U) - (1.0 - lam * lam)), std::abs(uf(is.V)));
    r.r28e = std::max(std::abs(vf(is.U)), std::abs(vf(is.V) - (1.0 - lam * lam)));
  }
  return r;
}

ResidualReport check_section2(const Embedding& e, const AmbientModel& amb,
                              std::span<const Point> points, uint64_t seed,
                              const Tolerances& tol) {
  if (!amb.contact)
    throw std::invalid_argument("check_section2 requires a contact ambient model");
  const int k = e.surface_dim;
  ResidualReport rep;
  rep.suite = "hypersurface-section2";
  rep.seed = seed;

  SmoothMap pack = induced_pack(e, amb);
  const int og = 0, ophi = k * k, ou = 2 * k * k, ov = 2 * k * k + k, oU = 2 * k * k + 2 * k,
            oV = 2 * k * k + 3 * k, olam = 2 * k * k + 4 * k, omu = olam + 1;

  ResAcc acc;
  bool rho_unit_all = true;
  int skipped28 = 0;

  for (size_t pi = 0; pi < points.size(); ++pi) {
    std::span<const double> s = points[pi].view();
    InducedStructure is = induce_full(e, amb, s);
    if (std::abs(is.rho - 1.0) > 1e-12) rho_unit_all = false;

    Rng rng(splitmix64(seed ^ (0x2b5eULL + pi)));
    std::vector<Eigen::VectorXd> dirs = unit_dirs(is.g, k, rng, 10);

    PointwiseResiduals pr = section2_pointwise(is, dirs);
    acc.hit("2.5a", pr.r25a);
    acc.hit("2.5b", pr.r25b);
    acc.hit("2.5c", pr.r25c);
    acc.hit("2.5d", pr.r25d);
    acc.hit("2.5e", pr.r25e);
    acc.hit("2.6", pr.r26);
    acc.hit("2.7", pr.r27);
    if (pr.rho_is_unit) {
      acc.hit("2.8a", pr.r28a);
      acc.hit("2.8b", pr.r28b);
      acc.hit("2.8c", pr.r28c);
      acc.hit("2.8d", pr.r28d);
      acc.hit("2.8e", pr.r28e);
    } else {
      ++skipped28;
    }

    // Field jets of the induced package.
    Jet1All pj = eval_jet1_all(pack, s);
    Eigen::VectorXd gv = pj.values.segment(og, k * k);
    Eigen::MatrixXd gj = pj.jac.middleRows(og, k * k);
    ChristoffelSymbols Gi = christoffel_from_jets(gv, gj, k);
    Eigen::MatrixXd phi_val(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) phi_val(a, b) = pj.values[ophi + a * k + b];
    Eigen::MatrixXd phi_jac = pj.jac.middleRows(ophi, k * k);
    Eigen::VectorXd u_val = pj.values.segment(ou, k);
    Eigen::MatrixXd u_jac = pj.jac.middleRows(ou, k);
    Eigen::VectorXd v_val = pj.values.segment(ov, k);
    Eigen::MatrixXd v_jac = pj.jac.middleRows(ov, k);
    Eigen::VectorXd U_val = pj.values.segment(oU, k);
    Eigen::MatrixXd U_jac = pj.jac.middleRows(oU, k);
    Eigen::VectorXd V_val = pj.values.segment(oV, k);
    Eigen::MatrixXd V_jac = pj.jac.middleRows(oV, k);
    Eigen::VectorXd lam_grad = pj.jac.row(olam).transpose();
    Eigen::VectorXd mu_grad = pj.jac.row(omu).transpose();

    const double lam = is.lambda, mu = is.mu, rho2 = is.norm2N;

    for (const auto& Y : dirs) {
      Eigen::MatrixXd nphi_Y = covd_tensor11_comp(phi_val, phi_jac, Gi, Y);
      Eigen::VectorXd nu_Y = covd_oneform_comp(u_val, u_jac, Gi, Y);
      Eigen::VectorXd nv_Y = covd_oneform_comp(v_val, v_jac, Gi, Y);
      Eigen::VectorXd nU_Y = covd_vector_comp(U_val, U_jac, Gi, Y);
      Eigen::VectorXd nV_Y = covd_vector_comp(V_val, V_jac, Gi, Y);
      double wY = is.w.dot(Y);
      double uY = is.u.dot(Y), hYV = Y.dot(is.h * is.V), hYU = Y.dot(is.h * is.U);
      double Ymu = mu_grad.dot(Y), Ylam = lam_grad.dot(Y);

      acc.hit("2.14", gnorm(nU_Y - (lam * Y + rho2 * is.phi * (is.H * Y) + wY * is.U), is.g));
      acc.hit("2.14-printed", gnorm(nU_Y - (wY * is.U - is.phi * (is.H * Y) - lam * Y), is.g));
      acc.hit("2.15", gnorm(nV_Y - (-(is.phi * Y) + lam * (is.H * Y)), is.g));
      acc.hit("2.15-printed", gnorm(nV_Y - (is.phi * Y + lam * (is.H * Y)), is.g));
      acc.hit("2.16", std::abs(hYV + uY + Ymu + mu * wY));
      acc.hit("2.16-printed", std::abs(hYV - (uY - Ylam - lam * wY)));
      acc.hit("2.17", std::abs(hYU - rho2 * is.u.dot(is.H * Y)));
      acc.hit("2.18", std::max(std::abs(hYU), gnorm(is.H * is.U, is.g)));

      for (const auto& X : dirs) {
        double gXY = X.dot(is.g * Y);
        double hXY = X.dot(is.h * Y);
        double uX = is.u.dot(X), vX = is.v.dot(X);
        acc.hit("2.11", gnorm(nphi_Y * X -
                                  (gXY * is.V - vX * Y - hXY * is.U + rho2 * uX * (is.H * Y)),
                              is.g));
        acc.hit("2.11-printed",
                gnorm(nphi_Y * X - (vX * Y - gXY * is.V - hXY * is.U - uX * (is.H * Y)), is.g));
        double hphiXY = (is.phi * X).dot(is.h * Y);
        acc.hit("2.12", std::abs(nu_Y.dot(X) - (mu * gXY - hphiXY - uX * wY)));
        acc.hit("2.12-printed", std::abs(nu_Y.dot(X) - (-hphiXY - uX * wY - lam * gXY)));
        double gphiYX = (is.phi * Y).dot(is.g * X);
        acc.hit("2.13", std::abs(nv_Y.dot(X) - (-gphiYX + lam * hXY)));
        acc.hit("2.13-printed", std::abs(nv_Y.dot(X) - (gphiYX + lam * hXY)));
      }
    }

    // Gauss split vs the induced Levi-Civita connection.
    double rgw = 0.0;
    for (int c = 0; c < k; ++c)
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          rgw = std::max(rgw, std::abs(is.gauss_tangential[static_cast<size_t>(c)](a, b) -
                                       Gi.at(c, a, b)));
    acc.hit("gauss-weingarten", rgw);
    acc.hit("weingarten-tangential", (is.K + rho2 * is.H).cwiseAbs().maxCoeff());

    // AD-vs-FD cross checks.
    Eigen::MatrixXd Bfd = fd_jacobian(e.map, s);
    acc.hit("ad-fd-jacobian", (Bfd - is.B).cwiseAbs().maxCoeff());
    std::span<const double> xamb(is.ambient_point.data(), static_cast<size_t>(is.d));
    ChristoffelSymbols Ga = christoffel(amb.metric, xamb);
    ChristoffelSymbols Gf = christoffel_fd(amb.metric, xamb);
    double rG = 0.0;
    for (int c = 0; c < is.d; ++c)
      for (int a = 0; a < is.d; ++a)
        for (int b = a; b < is.d; ++b) rG = std::max(rG, std::abs(Ga.at(c, a, b) - Gf.at(c, a, b)));
    acc.hit("ad-fd-christoffel", rG);
    std::vector<Jet2> bj = eval_jet2_all(e.map, s);
    std::vector<Eigen::MatrixXd> bh = fd_hessian_all(e.map, s);
    double rH = 0.0;
    for (int c = 0; c < is.d; ++c)
      rH = std::max(rH, (bj[static_cast<size_t>(c)].hess - bh[static_cast<size_t>(c)]).cwiseAbs().maxCoeff());
    acc.hit("ad-fd-hessian", rH);
  }

  auto emit = [&](const std::string& eq, double t) {
    auto it = acc.m.find(eq);
    if (it == acc.m.end()) return;
    rep.add_check(eq, it->second.first, t, it->second.second);
  };
  auto emit_dev = [&](const std::string& eq, double t, const std::string& note) {
    auto it = acc.m.find(eq);
    if (it == acc.m.end()) return;
    rep.add_deviation_check(eq, it->second.first, t, it->second.second, note);
  };

  const double ta = tol.ad_chain, td = tol.diff_chain();
  for (const char* eq : {"2.5a", "2.5b", "2.5c", "2.5d", "2.5e", "2.6", "2.7"}) emit(eq, ta);
  if (rho_unit_all || acc.m.count("2.8a")) {
    for (const char* eq : {"2.8a", "2.8b", "2.8c", "2.8d", "2.8e"}) emit(eq, ta);
  }
  if (skipped28 > 0 && !acc.m.count("2.8a")) {
    for (const char* eq : {"2.8a", "2.8b", "2.8c", "2.8d", "2.8e"})
      rep.add_skipped(eq, "normal scale rho != 1");
  }
  emit("2.11", td);
  emit_dev("2.11-printed", td, "printed signs of the g(X,Y)V, v(X)Y and u(X)HY terms disagree with the rederived identity");
  emit("2.12", td);
  emit_dev("2.12-printed", td, "printed lambda g(X,Y) term enters with the opposite sign");
  emit("2.13", td);
  emit_dev("2.13-printed", td, "printed g(phi Y, X) term enters with the opposite sign");
  emit("2.14", td);
  emit_dev("2.14-printed", td, "printed phi H Y and lambda Y terms enter with opposite signs");
  emit("2.15", td);
  emit_dev("2.15-printed", td, "printed phi Y term enters with the opposite sign");
  emit("2.16", td);
  emit_dev("2.16-printed", td, "printed u(Y) term enters with the opposite sign");
  emit("2.17", tol.exact * 100);
  emit_dev("2.18", ta, "h(Y,U) and HU do not vanish; the printed conclusion h(Y,U)=0, HU=0 fails on this hypersurface");
  emit("gauss-weingarten", td);
  emit("weingarten-tangential", td);
  emit("ad-fd-jacobian", tol.fd_oracle);
  emit("ad-fd-christoffel", tol.fd_oracle);
  emit("ad-fd-hessian", tol.fd_oracle);
  return rep;
}

ResidualReport check_section3_geometric(const Embedding& e, const AmbientModel& amb,
                                        std::span<const Point> points, uint64_t seed,
                                        const Tolerances& tol) {
  if (!amb.contact)
    throw std::invalid_argument("check_section3_geometric requires a contact ambient model");
  const int k = e.surface_dim;
  ResidualReport rep;
  rep.suite = "hypersurface-section3";
  rep.seed = seed;

  if (e.normal_scale) {
    for (const char* eq : {"3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9"})
      rep.add_skipped(eq, "section 3 assumes a unit normal (normal scale present)");
    return rep;
  }

  SmoothMap pack = induced_pack(e, amb);
  const int og = 0, ophi = k * k, ou = 2 * k * k, ov = 2 * k * k + k, oU = 2 * k * k + 2 * k,
            oV = 2 * k * k + 3 * k, olam = 2 * k * k + 4 * k;

  ResAcc acc;
  std::map<std::string, int> classes;
  int not_qu = 0, skipped38 = 0, skipped39 = 0;

  for (size_t pi = 0; pi < points.size(); ++pi) {
    std::span<const double> s = points[pi].view();
    InducedStructure is = induce_full(e, amb, s);
    QuasiUmbilicalFit fit = fit_quasi_umbilical(is.h, is.g, tol.classify);
    ++classes[to_string(fit.classification)];
    acc.hit("3.1", fit.residual);
    if (fit.classification == UmbClass::NotQuasiUmbilical) {
      ++not_qu;
      continue;
    }

    Jet1All pj = eval_jet1_all(pack, s);
    Eigen::VectorXd gv = pj.values.segment(og, k * k);
    ChristoffelSymbols Gi = christoffel_from_jets(gv, pj.jac.middleRows(og, k * k), k);
    Eigen::MatrixXd phi_val(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) phi_val(a, b) = pj.values[ophi + a * k + b];
    Eigen::MatrixXd phi_jac = pj.jac.middleRows(ophi, k * k);
    Eigen::VectorXd u_val = pj.values.segment(ou, k);
    Eigen::MatrixXd u_jac = pj.jac.middleRows(ou, k);
    Eigen::VectorXd v_val = pj.values.segment(ov, k);
    Eigen::MatrixXd v_jac = pj.jac.middleRows(ov, k);
    Eigen::VectorXd U_val = pj.values.segment(oU, k);
    Eigen::MatrixXd U_jac = pj.jac.middleRows(oU, k);
    Eigen::VectorXd V_val = pj.values.segment(oV, k);
    Eigen::MatrixXd V_jac = pj.jac.middleRows(oV, k);
    Eigen::VectorXd lam_grad = pj.jac.row(olam).transpose();

    const double lam = is.lambda;
    const double al = fit.alpha, be = fit.beta;
    const Eigen::VectorXd& q = fit.q;
    const Eigen::VectorXd& Q = fit.Q;

    Rng rng(splitmix64(seed ^ (0x37c3ULL + pi)));
    std::vector<Eigen::VectorXd> dirs = unit_dirs(is.g, k, rng, 10);

    for (const auto& Y : dirs) {
      Eigen::MatrixXd nphi_Y = covd_tensor11_comp(phi_val, phi_jac, Gi, Y);
      Eigen::VectorXd nu_Y = covd_oneform_comp(u_val, u_jac, Gi, Y);
      Eigen::VectorXd nv_Y = covd_oneform_comp(v_val, v_jac, Gi, Y);
      Eigen::VectorXd nU_Y = covd_vector_comp(U_val, U_jac, Gi, Y);
      Eigen::VectorXd nV_Y = covd_vector_comp(V_val, V_jac, Gi, Y);
      double wY = is.w.dot(Y), qY = q.dot(Y);

      acc.hit("3.5", gnorm(nU_Y - (lam * Y + (al * (is.phi * Y) + be * qY * (is.phi * Q)) +
                                   wY * is.U),
                           is.g));
      acc.hit("3.5-printed",
              gnorm(nU_Y - (wY * is.U - (al * (is.phi * Y) + be * qY * Q) - lam * Y), is.g));
      acc.hit("3.6", gnorm(nV_Y - (-(is.phi * Y) + lam * (al * Y + be * qY * Q)), is.g));
      double hYV = al * is.V.dot(is.g * Y) + be * q.dot(is.V) * qY;
      acc.hit("3.7", std::abs(Y.dot(is.h * is.V) - hYV));

      for (const auto& X : dirs) {
        double gXY = X.dot(is.g * Y);
        double hXY = al * gXY + be * q.dot(X) * qY;
        double uX = is.u.dot(X), vX = is.v.dot(X);
        acc.hit("3.2", gnorm(nphi_Y * X - (gXY * is.V - vX * Y - hXY * is.U +
                                           uX * (al * Y + be * qY * Q)),
                             is.g));
        double hphiXY = al * (is.phi * X).dot(is.g * Y) + be * q.dot(is.phi * X) * qY;
        acc.hit("3.3", std::abs(nu_Y.dot(X) - (lam * gXY - hphiXY - uX * wY)));
        double gphiYX = (is.phi * Y).dot(is.g * X);
        acc.hit("3.4", std::abs(nv_Y.dot(X) - (-gphiYX + lam * hXY)));
      }
    }

    if (std::abs(be) <= tol.classify) {
      ++skipped38;
    } else {
      double uQ = is.u.dot(Q);
      acc.hit("3.8", std::abs(uQ * uQ + (al / be) * (1.0 - lam * lam)));
    }
    if (std::abs(lam) <= 1e-10) {
      ++skipped39;
    } else {
      double Ulam = lam_grad.dot(is.U);
      acc.hit("3.9", std::abs(lam * is.w.dot(is.U) - (1.0 - lam * lam) + Ulam));
    }
  }

  const double ta = tol.ad_chain, td = tol.diff_chain();
  auto emit = [&](const std::string& eq, double t, const std::string& skip_reason, int skipped) {
    auto it = acc.m.find(eq);
    if (it != acc.m.end())
      rep.add_check(eq, it->second.first, t, it->second.second);
    else if (skipped > 0 || !skip_reason.empty())
      rep.add_skipped(eq, skip_reason.empty() ? "no quasi-umbilical points sampled" : skip_reason);
  };
  emit("3.1", 1e-10, "", 0);
  for (const char* eq : {"3.2", "3.3", "3.4"}) emit(eq, td, "no quasi-umbilical points sampled", not_qu);
  emit("3.5", td, "no quasi-umbilical points sampled", not_qu);
  if (acc.m.count("3.5-printed"))
    rep.add_deviation_check("3.5-printed", acc.m["3.5-printed"].first, td,
                            acc.m["3.5-printed"].second,
                            "printed (3.5) drops phi on the beta q(Y) Q term");
  for (const char* eq : {"3.6", "3.7"}) emit(eq, td, "no quasi-umbilical points sampled", not_qu);
  if (acc.m.count("3.8"))
    rep.add_check("3.8", acc.m["3.8"].first, ta, acc.m["3.8"].second);
  else
    rep.add_skipped("3.8", skipped38 > 0 ? "beta = 0" : "no quasi-umbilical points sampled");
  if (acc.m.count("3.9"))
    rep.add_check("3.9", acc.m["3.9"].first, td, acc.m["3.9"].second);
  else
    rep.add_skipped("3.9", skipped39 > 0 ? "lambda = 0" : "no quasi-umbilical points sampled");

  std::string cls;
  for (const auto& [name, count] : classes) {
    if (!cls.empty()) cls += ", ";
    cls += name + ":" + std::to_string(count);
  }
  rep.extras.emplace_back("fit-classifications", cls);
  return rep;
}

}  // namespace shv
