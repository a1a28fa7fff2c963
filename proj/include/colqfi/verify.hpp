// Cross-checks between the numeric density-matrix pipeline and the closed
// forms, as run by `colqfi verify`.

#pragma once

#include "colqfi/dephasing.hpp"
#include "colqfi/qfi.hpp"
#include "colqfi/schemes.hpp"
#include "colqfi/steady_forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace colqfi {

struct CheckOutcome {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_deviation <= tolerance; }
};

namespace detail {
inline double rel_dev(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

// Trapezoid double integral of exp(-|t-t'|/tau_c) over two intervals,
// m cells per axis.
inline double kernel_block(double s0, double s1, double u0, double u1, double tau, int m) {
  const double hs = (s1 - s0) / m, hu = (u1 - u0) / m;
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double wi = (i == 0 || i == m) ? 0.5 : 1.0;
    for (int j = 0; j <= m; ++j) {
      const double wj = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += wi * wj * std::exp(-std::abs((s0 + i * hs) - (u0 + j * hu)) / tau);
    }
  }
  return acc * hs * hu;
}

// Variance of the spin-echo phase by quadrature of the kernel against the
// weight (a + b) on [0, T/2] and (b - a) on [T/2, T], Richardson-extrapolated
// and scaled to match phase_variance_c.
inline double spin_echo_quadrature(double a, double b, double t, const NoiseParams& p, int m) {
  if (t == 0.0) return 0.0;
  const double h = 0.5 * t;
  auto at = [&](int cells) {
    const double first = kernel_block(0, h, 0, h, p.tau_c, cells);
    const double second = kernel_block(h, t, h, t, p.tau_c, cells);
    const double cross = kernel_block(0, h, h, t, p.tau_c, cells);
    return (a + b) * (a + b) * first + (b - a) * (b - a) * second +
           2.0 * (a + b) * (b - a) * cross;
  };
  const double extrapolated = (4.0 * at(2 * m) - at(m)) / 3.0;
  return 0.5 * p.gamma_delta_b * p.gamma_delta_b * extrapolated;
}
}  // namespace detail

inline std::vector<CheckOutcome> run_verification() {
  std::vector<CheckOutcome> out;
  const NoiseParams noise;
  const SchemeSpec standard{SchemeKind::Standard, noise, {}};
  const SchemeSpec di{SchemeKind::DiIdeal, noise, {}};

  {
    CheckOutcome c{"noiseless anchors N=8", 0.0, 1e-9};
    auto check = [&](const ProbeSpec& p, const SchemeSpec& s, double want) {
      c.max_deviation =
          std::max(c.max_deviation, detail::rel_dev(scheme_qfi(build_probe(p), s, 0.0).phase, want));
    };
    check({ProbeFamily::Ghz, 8}, standard, 64.0);
    check({ProbeFamily::DickeSymmetric, 8}, standard, 40.0);
    check({ProbeFamily::ProductPlus, 8}, standard, 8.0);
    check({ProbeFamily::GhzBipartite, 8, 4}, di, 16.0);
    check({ProbeFamily::Bsd, 8, 4, 2, 2}, di, 12.0);
    check({ProbeFamily::ProductPlus, 8, 4}, di, 4.0);
    out.push_back(c);
  }
  {
    CheckOutcome c{"GHZ decay vs N^2 exp(-N^2 C(T))", 0.0, 1e-8};
    for (int n : {2, 4, 8, 10}) {
      for (int i = 0; i < 20; ++i) {
        const double t = 1e-5 * std::pow(1e6, i / 19.0);
        const double got = scheme_qfi(ghz_state(n), standard, t).phase;
        c.max_deviation = std::max(c.max_deviation, detail::rel_dev(got, ghz_qfi_analytic(n, t, noise)));
      }
    }
    out.push_back(c);
  }
  {
    CheckOutcome c{"steady-state closed forms N=8", 0.0, 1e-9};
    auto steady = [&](const ProbeSpec& p) { return scheme_steady_qfi(build_probe(p), di); };
    c.max_deviation = std::max({detail::rel_dev(steady({ProbeFamily::ProductPlus, 8, 4}), product_steady_qfi(8, 4)),
                                detail::rel_dev(steady({ProbeFamily::GhzBipartite, 8, 4}), ghz_bipartite_steady_qfi(8)),
                                detail::rel_dev(steady({ProbeFamily::Bsd, 8, 4, 2, 2}), 6.0),
                                detail::rel_dev(steady({ProbeFamily::DfsOptimal, 8, 4}), dfs_piecewise_qfi(8, 4, 4))});
    out.push_back(c);
  }
  {
    CheckOutcome c{"BSD closed form vs numeric steady state, n<=8", 0.0, 1e-9};
    for (int n = 2; n <= 8; n += 2) {
      for (int n1 = 1; n1 < n; ++n1) {
        for (int k1 = 0; k1 <= n1; ++k1) {
          for (int k2 = 0; k2 <= n - n1; ++k2) {
            const double numeric = scheme_steady_qfi(build_probe({ProbeFamily::Bsd, n, n1, k1, k2}), di);
            const double closed = bsd_steady_qfi({n, n1, k1, k1 + k2});
            c.max_deviation = std::max(c.max_deviation, detail::rel_dev(numeric, closed));
          }
        }
      }
    }
    out.push_back(c);
  }
  {
    CheckOutcome c{"BSD identity n(n+4)/16, n=4..64", 0.0, 1e-9};
    for (int n = 4; n <= 64; n += 4) {
      const double got = bsd_steady_qfi({n, n / 2, n / 4, n / 2});
      c.max_deviation = std::max(c.max_deviation, detail::rel_dev(got, n * (n + 4.0) / 16.0));
    }
    out.push_back(c);
  }
  {
    CheckOutcome c{"Wigner d orthogonality n<=50", 0.0, 1e-12};
    for (int n = 1; n <= 50; ++n) {
      for (double a : {0.0, std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
        const RMatrix d = wigner_d_matrix(n, a);
        c.max_deviation = std::max(
            c.max_deviation, (d.transpose() * d - RMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(c);
  }
  {
    CheckOutcome c{"pure-state QFI = 4 Var(g)", 0.0, 1e-9};
    std::mt19937_64 rng(20161017);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 10;
      const Basis b = trial % 2 == 0 ? Basis::symmetric(n) : Basis::bipartite(n / 2 + 1, n - n / 2);
      CVector amps(b.dim());
      for (auto& a : amps) a = cplx(gauss(rng), gauss(rng));
      amps /= amps.norm();
      const PureState psi(b, amps);
      const Generator g = generator(b, trial % 4 == 1 ? GeneratorLabel::SzPartition2 : GeneratorLabel::SzTotal);
      const RVector pr = amps.cwiseAbs2();
      const double mean = pr.dot(g.diagonal);
      const double var = pr.dot(g.diagonal.cwiseProduct(g.diagonal)) - mean * mean;
      c.max_deviation = std::max(c.max_deviation, detail::rel_dev(qfi_phase(StateMatrix::from_pure(psi), g), 4 * var));
    }
    out.push_back(c);
  }
  {
    CheckOutcome c{"spin-echo variance vs quadrature", 0.0, 1e-6};
    for (double a : {-2.0, 0.0, 1.5}) {
      for (double b : {-1.0, 0.5, 3.0}) {
        for (double t : {1e-3, 0.1, 1.0, 4.0}) {
          const double closed = spin_echo_weights_variance(a, b, t, noise);
          const double numeric = detail::spin_echo_quadrature(a, b, t, noise, 200);
          c.max_deviation = std::max(c.max_deviation, detail::rel_dev(closed, numeric));
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace colqfi
