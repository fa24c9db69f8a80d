#include "arith/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "arith/error.hpp"

namespace arith {

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymmetricMatrix SymmetricMatrix::without(std::size_t k) const {
  SymmetricMatrix out(order_ - 1);
  for (std::size_t i = 0, oi = 0; i < order_; ++i) {
    if (i == k) continue;
    for (std::size_t j = i, oj = oi; j < order_; ++j) {
      if (j == k) continue;
      out.set(oi, oj, (*this)(i, j));
      ++oj;
    }
    ++oi;
  }
  return out;
}

SymmetricMatrix SymmetricMatrix::absolute() const {
  SymmetricMatrix out(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i; j < order_; ++j) out.set(i, j, std::abs((*this)(i, j)));
  return out;
}

SymmetricMatrix SymmetricMatrix::operator+(const SymmetricMatrix& o) const {
  if (o.order_ != order_) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  SymmetricMatrix out(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i; j < order_; ++j) out.set(i, j, (*this)(i, j) + o(i, j));
  return out;
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += a_[i * order_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

SymmetricMatrix family_matrix(GraphFamily family, std::span<const std::uint64_t> d,
                              double off) {
  if (!family.valid() || d.size() != family.n)
    throw Error(ErrorCode::InvalidArgument, "d does not match the graph size");
  SymmetricMatrix m(family.n);
  for (std::size_t i = 0; i < family.n; ++i) {
    m.set(i, i, static_cast<double>(d[i]));
    if (i + 1 < family.n) m.set(i, i + 1, off);
  }
  if (family.kind == FamilyKind::Cycle) m.set(0, family.n - 1, off);
  return m;
}

struct JacobiResult {
  std::vector<double> diag;
  std::vector<double> vectors;  // column k is the eigenvector for diag[k]
  double off = 0.0;
  std::size_t sweeps = 0;
};

double off_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * s);
}

JacobiResult jacobi(const SymmetricMatrix& m, const JacobiOptions& opts, bool want_vectors) {
  const std::size_t n = m.order();
  std::vector<double> a(m.data().begin(), m.data().end());
  JacobiResult res;
  if (want_vectors) {
    res.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) res.vectors[i * n + i] = 1.0;
  }
  const double target = opts.relative_tolerance * m.frobenius_norm();

  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (;;) {
    res.off = off_norm(a, n);
    if (res.off <= target) break;
    if (res.sweeps == opts.max_sweeps)
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    ++res.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        A(p, p) -= t * apq;
        A(q, q) += t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = A(r, p), h = A(r, q);
          const double gp = g - s * (h + g * tau);
          const double hq = h + s * (g - h * tau);
          A(r, p) = A(p, r) = gp;
          A(r, q) = A(q, r) = hq;
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            double& vp = res.vectors[r * n + p];
            double& vq = res.vectors[r * n + q];
            const double g = vp, h = vq;
            vp = g - s * (h + g * tau);
            vq = h + s * (g - h * tau);
          }
        }
      }
    }
  }
  res.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.diag[i] = A(i, i);
  return res;
}

void normalize_inf(std::vector<double>& x) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[big])) big = i;
  const double scale = x[big];
  for (double& v : x) v /= scale;
}

double residual_inf(const SymmetricMatrix& m, const std::vector<double>& x, double value) {
  const auto y = m.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(y[i] - value * x[i]));
  return r;
}

}  // namespace

SymmetricMatrix generalized_laplacian(GraphFamily family, std::span<const std::uint64_t> d) {
  return family_matrix(family, d, -1.0);
}

SymmetricMatrix signless_generalized_laplacian(GraphFamily family,
                                               std::span<const std::uint64_t> d) {
  return family_matrix(family, d, 1.0);
}

SymmetricMatrix build_L(const ArithmeticalStructure& s) {
  return generalized_laplacian(s.family(), s.d().view());
}

Spectrum eigenvalues(const SymmetricMatrix& m, const JacobiOptions& opts) {
  if (m.order() == 0) return {};
  auto res = jacobi(m, opts, false);
  Spectrum sp;
  sp.eigenvalues = std::move(res.diag);
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), std::greater<>());
  sp.offdiag_residual = res.off;
  sp.sweeps = res.sweeps;
  return sp;
}

EigenPair top_eigenpair(const SymmetricMatrix& m, const JacobiOptions& opts) {
  const std::size_t n = m.order();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  auto res = jacobi(m, opts, true);
  const std::size_t k = static_cast<std::size_t>(
      std::max_element(res.diag.begin(), res.diag.end()) - res.diag.begin());
  EigenPair ep;
  ep.value = res.diag[k];
  ep.vector.resize(n);
  for (std::size_t r = 0; r < n; ++r) ep.vector[r] = res.vectors[r * n + k];
  normalize_inf(ep.vector);
  ep.residual = residual_inf(m, ep.vector, ep.value);
  return ep;
}

double spectral_radius(GraphFamily family, std::span<const std::uint64_t> d) {
  return eigenvalues(generalized_laplacian(family, d)).largest();
}

double spectral_radius(const ArithmeticalStructure& s) {
  return spectral_radius(s.family(), s.d().view());
}

double laplacian_mu1_exact(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycles need n >= 3");
  if (n % 2 == 0) return 4.0;
  const double j = static_cast<double>(n / 2);
  return 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * j / static_cast<double>(n));
}

double rayleigh_quotient(const SymmetricMatrix& m, std::span<const double> x) {
  if (x.size() != m.order()) throw Error(ErrorCode::InvalidArgument, "length mismatch");
  double xx = 0.0;
  for (double v : x) xx += v * v;
  if (xx == 0.0) throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
  const auto y = m.multiply(x);
  double xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) xy += x[i] * y[i];
  return xy / xx;
}

CertifiedEigenPair isolated_top_eigenpair(GraphFamily family,
                                          std::span<const std::uint64_t> d,
                                          double tolerance, std::size_t max_iterations) {
  if (!family.valid() || d.size() != family.n)
    throw Error(ErrorCode::InvalidArgument, "d does not match the graph size");
  const std::size_t n = family.n;
  std::vector<std::vector<std::size_t>> nbr(n);
  for (std::size_t i = 0; i < n; ++i) nbr[i] = family.neighbors(i);

  auto apply_m = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = static_cast<double>(d[i]) * x[i];
      for (std::size_t j : nbr[i]) s -= x[j];
      y[i] = s;
    }
  };
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  };

  // Gershgorin shift so that M + shift*I has no negative eigenvalue.
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    shift = std::max(shift, static_cast<double>(nbr[i].size()) - static_cast<double>(d[i]));

  const std::size_t start =
      static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  std::vector<double> x(n, 0.0), y(n), mx(n);
  x[start] = 1.0;

  CertifiedEigenPair out;
  double lambda = 0.0, res = 0.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    apply_m(x, mx);
    double xx = 0.0, xmx = 0.0;
    for (std::size_t i = 0; i < n; ++i) { xx += x[i] * x[i]; xmx += x[i] * mx[i]; }
    lambda = xmx / xx;
    for (std::size_t i = 0; i < n; ++i) y[i] = mx[i] - lambda * x[i];
    res = norm2(y) / std::sqrt(xx);
    out.iterations = it;
    if (res <= tolerance * std::max(1.0, std::abs(lambda))) break;
    for (std::size_t i = 0; i < n; ++i) y[i] = mx[i] + shift * x[i];
    const double ny = norm2(y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }

  std::size_t big = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[big])) big = i;
  double bound = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == big) continue;
    double row = static_cast<double>(d[i]);
    for (std::size_t j : nbr[i]) row += j == big ? 0.0 : 1.0;
    bound = std::max(bound, row);
  }

  out.pair.value = lambda;
  out.pair.vector = x;
  normalize_inf(out.pair.vector);
  apply_m(out.pair.vector, mx);
  double r_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    r_inf = std::max(r_inf, std::abs(mx[i] - lambda * out.pair.vector[i]));
  out.pair.residual = r_inf;
  out.residual_2 = res;
  out.second_bound = bound;
  out.certified = res <= tolerance * std::max(1.0, std::abs(lambda)) && lambda - res > bound;
  return out;
}

}  // namespace arith
