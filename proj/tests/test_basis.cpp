#include "colqfi/basis.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace colqfi;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Basis, Dimensions) {
  EXPECT_EQ(Basis::symmetric(8).dim(), 9);
  EXPECT_EQ(Basis::bipartite(3, 5).dim(), 24);
  const Basis b = Basis::bipartite(4, 4);
  EXPECT_DOUBLE_EQ(b.total_weight(b.index(0, 0)), -4.0);
  EXPECT_DOUBLE_EQ(b.weight2(b.index(1, 3)), 1.0);
  EXPECT_EQ(b.total_excitations(b.index(2, 3)), 5);
  EXPECT_THROW(Basis::symmetric(0), std::domain_error);
}

TEST(Basis, DickeState) {
  const PureState d = dicke_state(2, 1);
  EXPECT_EQ(d.amplitudes, (CVector(3) << 0, 1, 0).finished());
  const PureState d84 = dicke_state(8, 4);
  EXPECT_EQ(d84.amplitudes(4), cplx(1.0));
  EXPECT_DOUBLE_EQ(d84.amplitudes.norm(), 1.0);
  EXPECT_EQ(dicke_state(1, 0).amplitudes, (CVector(2) << 1, 0).finished());
  EXPECT_THROW(dicke_state(3, 4), std::domain_error);
  EXPECT_THROW(dicke_state(3, -1), std::domain_error);
}

TEST(Basis, GhzState) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs(ghz_state(1).amplitudes, (CVector(2) << h, h).finished()), 1e-15);
  const PureState g = ghz_state(8);
  EXPECT_NEAR(g.amplitudes(0).real(), h, 1e-15);
  EXPECT_NEAR(g.amplitudes(8).real(), h, 1e-15);
  EXPECT_EQ(g.amplitudes.segment(1, 7).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(ghz_state(3).amplitudes.norm(), 1.0, 1e-12);
}

TEST(Basis, PlusProductMatchesFullSpaceProjection) {
  EXPECT_LT(max_abs(plus_product_state(1).amplitudes,
                    (CVector(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished()),
            1e-15);
  EXPECT_LT(max_abs(plus_product_state(2).amplitudes,
                    (CVector(3) << 0.5, 1 / std::sqrt(2.0), 0.5).finished()),
            1e-15);
  for (int n = 1; n <= 6; ++n)
    EXPECT_LT(max_abs(plus_product_state(n).amplitudes,
                      oracle::project_symmetric(oracle::plus_full(n), n)),
              1e-13)
        << n;
  EXPECT_NEAR(plus_product_state(8).amplitudes(4).real(), std::sqrt(70.0) / 16.0, 1e-15);
}

TEST(Wigner, SingleQubitHalfPi) {
  const RMatrix d = wigner_d_matrix(1, kPi / 2);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_GT(d(0, 0), 0.0);
  EXPECT_NEAR(d(0, 0), h, 1e-15);
  EXPECT_NEAR(d(0, 1), h, 1e-15);
  EXPECT_NEAR(d(1, 0), -h, 1e-15);
  EXPECT_NEAR(d(1, 1), h, 1e-15);
}

TEST(Wigner, IdentityAtZero) {
  for (int n : {1, 5, 20, 50})
    EXPECT_LT((wigner_d_matrix(n, 0.0) - RMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(),
              1e-13);
}

TEST(Wigner, MatchesMatrixExponential) {
  for (double angle : {kPi / 2, 0.3, -1.1, kPi}) {
    const RMatrix expected = oracle::expm_taylor(oracle::minus_i_sy_symmetric(4, angle));
    EXPECT_LT((wigner_d_matrix(4, angle) - expected).cwiseAbs().maxCoeff(), 1e-12) << angle;
  }
}

TEST(Wigner, MatchesFullSpaceRotation) {
  for (int n = 1; n <= 6; ++n) {
    for (double angle : {kPi / 2, 0.7, kPi}) {
      EXPECT_LT((wigner_d_matrix(n, angle) - oracle::wigner_d_full(n, angle)).cwiseAbs().maxCoeff(),
                1e-12)
          << "n=" << n << " angle=" << angle;
    }
  }
}

TEST(Wigner, OrthogonalAndRowNormalized) {
  for (int n = 1; n <= 50; ++n) {
    for (double angle : {0.0, kPi / 4, kPi / 2, kPi}) {
      const RMatrix d = wigner_d_matrix(n, angle);
      EXPECT_LT((d.transpose() * d - RMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((d.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Rotation, IdentityAndGroupProperty) {
  const PureState psi = ghz_state(6);
  EXPECT_LT(max_abs(rotate_y(psi, 0.0).amplitudes, psi.amplitudes), 1e-14);
  const PureState twice = rotate_y(rotate_y(psi, kPi / 2), kPi / 2);
  EXPECT_LT(max_abs(twice.amplitudes, rotate_y(psi, kPi).amplitudes), 1e-12);
}

TEST(Rotation, PlusStateIsRotatedGroundState) {
  for (int n : {1, 2, 5, 8, 20}) {
    const PureState rotated = rotate_y(dicke_state(n, 0), -kPi / 2);
    const PureState plus = plus_product_state(n);
    // fix the global phase on the largest component
    Eigen::Index i;
    plus.amplitudes.cwiseAbs().maxCoeff(&i);
    const cplx phase = plus.amplitudes(i) / rotated.amplitudes(i);
    EXPECT_LT(max_abs(phase * rotated.amplitudes, plus.amplitudes), 1e-12) << n;
  }
}

TEST(Rotation, RotatedDickeProbeMatchesFullSpace) {
  const int n = 6;
  const PureState probe = rotate_y(dicke_state(n, n / 2), kPi / 2);
  const CVector full = oracle::rotation_y_full(n, kPi / 2) * oracle::dicke_full(n, n / 2);
  EXPECT_LT(max_abs(probe.amplitudes, oracle::project_symmetric(full, n)), 1e-12);
}

TEST(Rotation, BipartiteRotatesEachPartition) {
  const PureState a = dicke_state(3, 1);
  const PureState b = ghz_state(2);
  const PureState joint = rotate_y(tensor_bipartite(a, b), 0.4);
  const PureState separate = tensor_bipartite(rotate_y(a, 0.4), rotate_y(b, 0.4));
  EXPECT_LT(max_abs(joint.amplitudes, separate.amplitudes), 1e-14);
}

TEST(Tensor, GhzTimesGhz) {
  const PureState t = tensor_bipartite(ghz_state(4), ghz_state(4));
  const Basis& b = t.basis;
  int nonzero = 0;
  for (int i = 0; i < b.dim(); ++i) {
    if (std::abs(t.amplitudes(i)) > 0) {
      ++nonzero;
      EXPECT_NEAR(t.amplitudes(i).real(), 0.5, 1e-15);
      EXPECT_TRUE(b.excitations1(i) % 4 == 0 && b.excitations2(i) % 4 == 0);
    }
  }
  EXPECT_EQ(nonzero, 4);

  const PureState basis_vec = tensor_bipartite(dicke_state(2, 1), dicke_state(3, 2));
  EXPECT_EQ(basis_vec.amplitudes.cwiseAbs().sum(), 1.0);
  EXPECT_EQ(basis_vec.amplitudes(basis_vec.basis.index(1, 2)), cplx(1.0));
}

TEST(Tensor, BsdProbeFactorizes) {
  const PureState left = rotate_y(dicke_state(4, 2), kPi / 2);
  const PureState bsd = tensor_bipartite(left, left);
  for (int q = 0; q <= 4; ++q)
    for (int r = 0; r <= 4; ++r)
      EXPECT_NEAR(std::abs(bsd.amplitudes(bsd.basis.index(q, r)) -
                           left.amplitudes(q) * left.amplitudes(r)),
                  0.0, 1e-15);
}

TEST(Generator, Diagonals) {
  EXPECT_EQ(generator(Basis::symmetric(2), GeneratorLabel::SzTotal).diagonal,
            (RVector(3) << -1, 0, 1).finished());
  EXPECT_EQ(generator(Basis::bipartite(1, 1), GeneratorLabel::SzPartition2).diagonal,
            (RVector(4) << -0.5, 0.5, -0.5, 0.5).finished());
  EXPECT_DOUBLE_EQ(generator(Basis::bipartite(4, 4), GeneratorLabel::SzTotal).diagonal(0), -4.0);
  EXPECT_THROW(generator(Basis::symmetric(3), GeneratorLabel::SzPartition2), std::domain_error);
}

TEST(Generator, MatchesFullSpaceSz) {
  for (int n = 1; n <= 6; ++n) {
    const RVector diag = generator(Basis::symmetric(n), GeneratorLabel::SzTotal).diagonal;
    const oracle::CMat sz = oracle::collective_sz(n);
    for (int k = 0; k <= n; ++k) {
      const oracle::CVec d = oracle::dicke_full(n, k);
      EXPECT_NEAR((d.adjoint() * sz * d)(0, 0).real(), diag(k), 1e-13);
    }
  }
}

TEST(PureState, ConstructorsAreNormalized) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(ghz_state(n).amplitudes.norm(), 1.0, 1e-12);
    EXPECT_NEAR(plus_product_state(n).amplitudes.norm(), 1.0, 1e-12);
    const int k = std::uniform_int_distribution<int>(0, n)(rng);
    EXPECT_NEAR(rotate_y(dicke_state(n, k), 1.234).amplitudes.norm(), 1.0, 1e-12);
  }
  EXPECT_THROW(PureState(Basis::symmetric(1), (CVector(2) << 1, 1).finished()), std::domain_error);
}
