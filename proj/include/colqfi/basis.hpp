// Permutation-symmetric (Dicke) bases, pure states, density matrices and
// z-diagonal collective generators.
//
// A symmetric basis over n qubits holds the Dicke vectors |D_n^k>, k = 0..n,
// where k counts excitations and the collective z-weight is m(k) = k - n/2.
// A bipartite basis is the tensor product of two symmetric bases with index
// (q, r) -> q * (n2 + 1) + r.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace colqfi {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

enum class BasisKind { Symmetric, Bipartite };

class Basis {
 public:
  static Basis symmetric(int n) {
    if (n < 1) throw std::domain_error("symmetric basis needs n >= 1");
    return Basis(BasisKind::Symmetric, n, 0);
  }

  // Either partition may be empty; a bipartite basis with n2 == 0 carries no
  // signal under SZ_PARTITION2.
  static Basis bipartite(int n1, int n2) {
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
      throw std::domain_error("bipartite basis needs n1, n2 >= 0 and n1 + n2 >= 1");
    return Basis(BasisKind::Bipartite, n1, n2);
  }

  BasisKind kind() const { return kind_; }
  bool is_bipartite() const { return kind_ == BasisKind::Bipartite; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int total() const { return n1_ + n2_; }

  int dim() const {
    return is_bipartite() ? (n1_ + 1) * (n2_ + 1) : n1_ + 1;
  }

  int index(int q, int r) const { return q * (n2_ + 1) + r; }

  // Excitations in partition 1 (or the whole register for a symmetric basis).
  int excitations1(int i) const { return is_bipartite() ? i / (n2_ + 1) : i; }
  int excitations2(int i) const { return is_bipartite() ? i % (n2_ + 1) : 0; }
  int total_excitations(int i) const { return excitations1(i) + excitations2(i); }

  double weight1(int i) const { return excitations1(i) - 0.5 * n1_; }
  double weight2(int i) const { return excitations2(i) - 0.5 * n2_; }
  double total_weight(int i) const { return total_excitations(i) - 0.5 * total(); }

  bool operator==(const Basis&) const = default;

  std::string describe() const {
    if (!is_bipartite()) return "Symmetric(" + std::to_string(n1_) + ")";
    return "Bipartite(" + std::to_string(n1_) + "," + std::to_string(n2_) + ")";
  }

 private:
  Basis(BasisKind kind, int n1, int n2) : kind_(kind), n1_(n1), n2_(n2) {}

  BasisKind kind_;
  int n1_;
  int n2_;
};

inline constexpr double kNormTolerance = 1e-12;

struct PureState {
  Basis basis;
  CVector amplitudes;

  PureState(Basis b, CVector amps) : basis(b), amplitudes(std::move(amps)) {
    if (amplitudes.size() != basis.dim())
      throw std::invalid_argument("amplitude count does not match " + basis.describe());
    if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance)
      throw std::domain_error("pure state is not normalized");
  }
};

struct StateMatrix {
  Basis basis;
  CMatrix matrix;

  StateMatrix(Basis b, CMatrix m) : basis(b), matrix(std::move(m)) {
    if (matrix.rows() != basis.dim() || matrix.cols() != basis.dim())
      throw std::invalid_argument("matrix shape does not match " + basis.describe());
  }

  static StateMatrix from_pure(const PureState& psi) {
    return StateMatrix(psi.basis, psi.amplitudes * psi.amplitudes.adjoint());
  }

  // Hermitian, unit trace, eigenvalues >= -1e-10.
  bool is_valid(double tol = 1e-12) const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(matrix.trace() - cplx(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-10;
  }
};

enum class GeneratorLabel { SzTotal, SzPartition2 };

inline std::string to_string(GeneratorLabel label) {
  return label == GeneratorLabel::SzTotal ? "SZ_TOTAL" : "SZ_PARTITION2";
}

struct Generator {
  Basis basis;
  RVector diagonal;
  GeneratorLabel label;
};

inline Generator generator(const Basis& basis, GeneratorLabel label) {
  if (label == GeneratorLabel::SzPartition2 && !basis.is_bipartite())
    throw std::domain_error("SZ_PARTITION2 requires a bipartite basis");
  RVector diag(basis.dim());
  for (int i = 0; i < basis.dim(); ++i)
    diag(i) = label == GeneratorLabel::SzTotal ? basis.total_weight(i) : basis.weight2(i);
  return Generator{basis, diag, label};
}

// ---------------------------------------------------------------------------
// State constructors

inline PureState dicke_state(int n, int k) {
  if (n < 1) throw std::domain_error("dicke_state: n must be >= 1");
  if (k < 0 || k > n) throw std::domain_error("dicke_state: k outside [0, n]");
  CVector amps = CVector::Zero(n + 1);
  amps(k) = 1.0;
  return PureState(Basis::symmetric(n), std::move(amps));
}

inline PureState ghz_state(int n) {
  if (n < 1) throw std::domain_error("ghz_state: n must be >= 1");
  CVector amps = CVector::Zero(n + 1);
  amps(0) += std::numbers::sqrt2 / 2;
  amps(n) += std::numbers::sqrt2 / 2;
  return PureState(Basis::symmetric(n), std::move(amps));
}

// |+>^{(x)n}: amplitude sqrt(C(n,k)) / 2^{n/2} on |D_n^k>, built from the
// binomial ratio recursion in log space so large n does not overflow.
inline PureState plus_product_state(int n) {
  if (n < 1) throw std::domain_error("plus_product_state: n must be >= 1");
  CVector amps(n + 1);
  const double log_half = -0.5 * n * std::log(2.0);
  for (int k = 0; k <= n; ++k) {
    const double log_binom =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    amps(k) = std::exp(0.5 * log_binom + log_half);
  }
  amps /= amps.norm();
  return PureState(Basis::symmetric(n), std::move(amps));
}

// ---------------------------------------------------------------------------
// Rotations

// <D_n^{k'}| exp(-i angle S_y) |D_n^k>.
//
// S_y is unitarily equivalent to the real symmetric tridiagonal S_x through
// P = diag(i^k): S_y = P^dag S_x P. Diagonalizing S_x = V L V^T gives
//   d_{k',k} = Re[ i^{k-k'} sum_j V_{k'j} V_{kj} exp(-i angle l_j) ],
// the imaginary part vanishing up to rounding.
inline RMatrix wigner_d_matrix(int n, double angle) {
  if (n < 1) throw std::domain_error("wigner_d_matrix: n must be >= 1");
  const int dim = n + 1;
  // exact, so unrotated probes carry no rounding-level off-block amplitudes
  if (angle == 0.0) return RMatrix::Identity(dim, dim);
  RMatrix sx = RMatrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const double s = 0.5 * std::sqrt(static_cast<double>(k + 1) * (n - k));
    sx(k + 1, k) = s;
    sx(k, k + 1) = s;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sx);
  const RMatrix& v = es.eigenvectors();
  CVector phases(dim);
  for (int j = 0; j < dim; ++j)
    phases(j) = std::polar(1.0, -angle * es.eigenvalues()(j));

  const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  RMatrix d(dim, dim);
  for (int kp = 0; kp < dim; ++kp) {
    for (int k = 0; k < dim; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < dim; ++j) acc += v(kp, j) * v(k, j) * phases(j);
      d(kp, k) = (ipow[((k - kp) % 4 + 4) % 4] * acc).real();
    }
  }
  return d;
}

// Collective y-rotation; on a bipartite basis the same angle is applied to
// each partition, which equals the rotation of the whole register.
inline PureState rotate_y(const PureState& psi, double angle) {
  const Basis& b = psi.basis;
  if (!b.is_bipartite()) {
    CVector out = wigner_d_matrix(b.n1(), angle).cast<cplx>() * psi.amplitudes;
    out /= out.norm();
    return PureState(b, std::move(out));
  }
  // amplitudes viewed as an (n1+1) x (n2+1) row-major array A: A' = D1 A D2^T
  CMatrix a(b.n1() + 1, b.n2() + 1);
  for (int q = 0; q <= b.n1(); ++q)
    for (int r = 0; r <= b.n2(); ++r) a(q, r) = psi.amplitudes(b.index(q, r));
  if (b.n1() > 0) a = wigner_d_matrix(b.n1(), angle).cast<cplx>() * a;
  if (b.n2() > 0) a = a * wigner_d_matrix(b.n2(), angle).transpose().cast<cplx>();
  CVector out(b.dim());
  for (int q = 0; q <= b.n1(); ++q)
    for (int r = 0; r <= b.n2(); ++r) out(b.index(q, r)) = a(q, r);
  out /= out.norm();
  return PureState(b, std::move(out));
}

inline PureState tensor_bipartite(const PureState& a, const PureState& b) {
  if (a.basis.is_bipartite() || b.basis.is_bipartite())
    throw std::domain_error("tensor_bipartite expects two symmetric-basis states");
  const Basis out_basis = Basis::bipartite(a.basis.n1(), b.basis.n1());
  CVector amps(out_basis.dim());
  for (int q = 0; q <= a.basis.n1(); ++q)
    for (int r = 0; r <= b.basis.n1(); ++r)
      amps(out_basis.index(q, r)) = a.amplitudes(q) * b.amplitudes(r);
  return PureState(out_basis, std::move(amps));
}

}  // namespace colqfi
