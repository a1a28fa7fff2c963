// Quantum Fisher information of a density matrix for a unitary phase
// imprinted by a z-diagonal generator, plus Cramer-Rao bookkeeping.

#pragma once

#include "colqfi/basis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace colqfi {

struct EigenDecomposition {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // columns, orthonormal
};

inline constexpr double kHermitianTolerance = 1e-10;

// Descending eigenvalues; each eigenvector's first component with modulus
// above 1e-12 is rotated to be positive real.
inline EigenDecomposition eigh(const StateMatrix& rho) {
  const CMatrix& m = rho.matrix;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance * scale)
    throw std::domain_error("eigh: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigh: solver did not converge");

  const int dim = static_cast<int>(m.rows());
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  EigenDecomposition out{RVector(dim), CMatrix(dim, dim)};
  for (int c = 0; c < dim; ++c) {
    out.eigenvalues(c) = es.eigenvalues()(order[c]);
    CVector v = es.eigenvectors().col(order[c]);
    for (int i = 0; i < dim; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    out.eigenvectors.col(c) = v;
  }
  return out;
}

namespace detail {
inline void require_same_basis(const StateMatrix& rho, const Generator& g) {
  if (!(rho.basis == g.basis))
    throw std::domain_error("generator basis " + g.basis.describe() + " does not match state basis " +
                            rho.basis.describe());
}

inline double default_sum_cutoff(const RVector& lambda) {
  return 1e-12 * std::max(lambda.maxCoeff(), 0.0);
}
}  // namespace detail

// F = 2 sum_{a,b} |<a| d rho |b>|^2 / (lambda_a + lambda_b) with
// d rho = -i [g, rho] evaluated entrywise in the Dicke basis. This equals
// 4 sum_{a<b} (lambda_a - lambda_b)^2 / (lambda_a + lambda_b) |<a|g|b>|^2
// but never forms eigenvalue differences, so it keeps full relative accuracy
// for nearly degenerate spectra (strongly dephased states). Pairs with
// lambda_a + lambda_b <= sum_cutoff are skipped; negative eigenvalues are
// clamped to zero. A negative cutoff selects 1e-12 * max(lambda).
inline double qfi_phase(const StateMatrix& rho, const Generator& g, double sum_cutoff = -1.0) {
  detail::require_same_basis(rho, g);
  const EigenDecomposition ed = eigh(rho);
  const RVector lambda = ed.eigenvalues.cwiseMax(0.0);
  const double cutoff = sum_cutoff < 0.0 ? detail::default_sum_cutoff(lambda) : sum_cutoff;

  const int dim = static_cast<int>(lambda.size());
  CMatrix drho(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      drho(i, j) = cplx(0.0, -(g.diagonal(i) - g.diagonal(j))) * rho.matrix(i, j);
  const CMatrix rotated = ed.eigenvectors.adjoint() * drho * ed.eigenvectors;

  double f = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const double s = lambda(a) + lambda(b);
      if (s <= cutoff) continue;
      f += std::norm(rotated(a, b)) / s;
    }
  }
  return 2.0 * f;
}

// Literal eigenpair sum 4 sum_{a<b} (l_a - l_b)^2/(l_a + l_b) |<a|g|b>|^2.
// Kept as an independent route for cross-checks; loses relative accuracy
// once eigenvalue gaps approach rounding level.
inline double qfi_phase_eigenpair_sum(const StateMatrix& rho, const Generator& g,
                                      double sum_cutoff = -1.0) {
  detail::require_same_basis(rho, g);
  const EigenDecomposition ed = eigh(rho);
  const RVector lambda = ed.eigenvalues.cwiseMax(0.0);
  const double cutoff = sum_cutoff < 0.0 ? detail::default_sum_cutoff(lambda) : sum_cutoff;
  const CMatrix gv = ed.eigenvectors.adjoint() * g.diagonal.cast<cplx>().asDiagonal() *
                     ed.eigenvectors;
  const int dim = static_cast<int>(lambda.size());
  double f = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      const double s = lambda(a) + lambda(b);
      if (s <= cutoff) continue;
      const double diff = lambda(a) - lambda(b);
      f += diff * diff / s * std::norm(gv(a, b));
    }
  }
  return 4.0 * f;
}

inline double qfi_frequency(const StateMatrix& rho_t, const Generator& g, double t) {
  if (!(t >= 0.0)) throw std::domain_error("qfi_frequency: T must be >= 0");
  return t * t * qfi_phase(rho_t, g);
}

// Lower bound on the estimator variance; infinite when F carries no information.
inline double cramer_rao_bound(double f) {
  if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / f;
}

// (d omega)^{-2} <= t_total * T * F_phi for t_total / T repetitions.
inline double repeated_frequency_precision(double f_phi, double t, double t_total) {
  if (!(t > 0.0) || !(t <= t_total))
    throw std::domain_error("repeated_frequency_precision: need 0 < T <= t_total");
  return t_total * t * f_phi;
}

// Noiseless optimum (lambda_max - lambda_min)^2 over the generator spectrum.
inline double max_qfi_bound(const Generator& g) {
  const double spread = g.diagonal.maxCoeff() - g.diagonal.minCoeff();
  return spread * spread;
}

}  // namespace colqfi
