#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arith/graph_core.hpp"

namespace arith {

// Dense symmetric matrix, row-major. Off-diagonal entries are only written
// through set(), which fills both triangles at once.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order) : order_(order), a_(order * order, 0.0) {}

  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * order_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * order_ + j] = v;
    a_[j * order_ + i] = v;
  }
  std::span<const double> data() const noexcept { return a_; }

  double frobenius_norm() const;
  SymmetricMatrix without(std::size_t k) const;   // delete row and column k
  SymmetricMatrix absolute() const;               // entrywise |m|
  SymmetricMatrix operator+(const SymmetricMatrix& o) const;
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t order_ = 0;
  std::vector<double> a_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double offdiag_residual = 0.0;
  std::size_t sweeps = 0;

  double largest() const { return eigenvalues.front(); }
  double smallest() const { return eigenvalues.back(); }
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // infinity norm 1, largest-magnitude entry positive
  double residual = 0.0;       // ||M x - value x||_inf
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_sweeps = 100;
};

// diag(d) - A for the given topology; d need not be an arithmetical structure.
SymmetricMatrix generalized_laplacian(GraphFamily family, std::span<const std::uint64_t> d);
// diag(d) + A, the entrywise absolute value of the above.
SymmetricMatrix signless_generalized_laplacian(GraphFamily family,
                                               std::span<const std::uint64_t> d);
SymmetricMatrix build_L(const ArithmeticalStructure& s);

// Cyclic Jacobi; throws Error{NoConvergence} after max_sweeps.
Spectrum eigenvalues(const SymmetricMatrix& m, const JacobiOptions& opts = {});

// Top eigenpair taken from the full Jacobi decomposition.
EigenPair top_eigenpair(const SymmetricMatrix& m, const JacobiOptions& opts = {});

double spectral_radius(const ArithmeticalStructure& s);
double spectral_radius(GraphFamily family, std::span<const std::uint64_t> d);

// mu_1 of 2I - A_{C_n}: 2 - 2 cos(2 pi floor(n/2) / n); exactly 4 for even n.
double laplacian_mu1_exact(std::size_t n);

// Throws Error{ZeroVector} for x = 0.
double rayleigh_quotient(const SymmetricMatrix& m, std::span<const double> x);

// Power iteration on a cycle/path generalized Laplacian in O(n) per step for
// matrices whose top eigenvalue is isolated by one dominant diagonal entry.
// The result is certified when value - residual_2 exceeds an upper bound on
// mu_2: interlacing removes the row of the largest |x_i|, and the row-sum
// bound on the absolute value of what remains caps every other eigenvalue.
struct CertifiedEigenPair {
  EigenPair pair;
  double residual_2 = 0.0;        // ||M x - value x||_2 / ||x||_2
  double second_bound = 0.0;      // upper bound on mu_2
  std::size_t iterations = 0;
  bool certified = false;
};

CertifiedEigenPair isolated_top_eigenpair(GraphFamily family,
                                          std::span<const std::uint64_t> d,
                                          double tolerance = 1e-13,
                                          std::size_t max_iterations = 10000);

}  // namespace arith
