// Closed-form results: GHZ decay, steady-state QFI of product, bipartite GHZ
// and bipartite symmetric Dicke (BSD) probes under DI, the optimum over the
// decoherence-free subspace, and the BSD splitting optimization.
//
// Nothing here touches the density-matrix pipeline. The pi/2 Wigner matrix
// is rebuilt from exact integer sums (Krawtchouk form) so these functions
// stay an independent oracle for the numeric route.

#pragma once

#include "colqfi/basis.hpp"
#include "colqfi/dephasing.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace colqfi {

inline double ghz_qfi_analytic(int n, double t, const NoiseParams& p) {
  const double n2 = static_cast<double>(n) * n;
  return n2 * std::exp(-n2 * phase_variance_c(t, p));
}

inline double product_steady_qfi(int n, int n1) {
  if (n < 1 || n1 < 0 || n1 > n) throw std::domain_error("product_steady_qfi: need 0 <= n1 <= n");
  return static_cast<double>(n1) * (n - n1) / n;
}

inline double ghz_bipartite_steady_qfi(int n) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("ghz_bipartite_steady_qfi: n must be even");
  return static_cast<double>(n) * n / 8.0;
}

// Best pure DFS state with k total excitations and split n1 | n - n1.
inline double dfs_piecewise_qfi(int n, int n1, int k) {
  if (k < 0 || k > n || n1 < 0 || n1 > n) throw std::domain_error("dfs_piecewise_qfi: bad arguments");
  const int n2 = n - n1;
  double v;
  if (k <= std::min(n1, n2)) v = k;
  else if (n1 < k && k <= n2) v = n1;
  else if (n2 < k && k <= n1) v = n2;
  else v = n - k;
  return v * v;
}

inline constexpr int kExactBinomialMax = 64;

namespace detail {
inline const std::array<std::array<std::int64_t, kExactBinomialMax + 1>, kExactBinomialMax + 1>&
binomial_table() {
  static const auto table = [] {
    std::array<std::array<std::int64_t, kExactBinomialMax + 1>, kExactBinomialMax + 1> c{};
    for (int n = 0; n <= kExactBinomialMax; ++n) {
      c[n][0] = c[n][n] = 1;
      for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
  }();
  return table;
}
}  // namespace detail

inline std::int64_t binomial_exact(int n, int k) {
  if (n < 0 || n > kExactBinomialMax) throw std::domain_error("binomial_exact: n outside [0, 64]");
  if (k < 0 || k > n) return 0;
  return detail::binomial_table()[n][k];
}

// d^n_{k',k}(pi/2). For n <= 64:
//   d_{k',k} = 2^{-n/2} sqrt(C(n,k')/C(n,k)) sum_j (-1)^{k'-j} C(k',j) C(n-k',k-j),
// where every partial sum is bounded by C(n,k) and is exact in int64.
// Larger n falls back to the diagonalization route.
inline RMatrix wigner_d_half_pi(int n) {
  if (n < 0) throw std::domain_error("wigner_d_half_pi: n must be >= 0");
  if (n == 0) return RMatrix::Identity(1, 1);
  if (n > kExactBinomialMax) return wigner_d_matrix(n, std::numbers::pi / 2);
  RMatrix d(n + 1, n + 1);
  const double scale = std::pow(2.0, -0.5 * n);
  for (int kp = 0; kp <= n; ++kp) {
    for (int k = 0; k <= n; ++k) {
      std::int64_t sum = 0;
      for (int j = std::max(0, k - (n - kp)); j <= std::min(kp, k); ++j) {
        const std::int64_t term = binomial_exact(kp, j) * binomial_exact(n - kp, k - j);
        sum += (kp - j) % 2 == 0 ? term : -term;
      }
      const double ratio = static_cast<double>(binomial_exact(n, kp)) /
                           static_cast<double>(binomial_exact(n, k));
      d(kp, k) = scale * std::sqrt(ratio) * static_cast<double>(sum);
    }
  }
  return d;
}

// BSD probe parameters: n1 qubits with k1 excitations in partition 1,
// n - n1 qubits with k - k1 in partition 2.
struct SplitChoice {
  int n = 0;
  int n1 = 0;
  int k1 = 0;
  int k = 0;

  int n2() const { return n - n1; }
  int k2() const { return k - k1; }

  void validate() const {
    if (n < 1 || n1 < 0 || n1 > n || k < 0 || k > n || k1 < 0 || k1 > std::min(k, n1) ||
        k - k1 > n - n1)
      throw std::domain_error("invalid split choice");
  }
};

inline constexpr double kBlockProbabilityFloor = 1e-15;

namespace detail {
// Squared weights of |D_{n1}^q, D_{n2}^{k'-q}> inside block k'. q runs over
// [max(0, k'-n2), min(k', n1)] so both partition indices stay in range.
template <typename Visit>
void for_each_block_term(const SplitChoice& c, const RMatrix& d1, const RMatrix& d2, int kp,
                         Visit&& visit) {
  const int n2 = c.n2();
  for (int q = std::max(0, kp - n2); q <= std::min(kp, c.n1); ++q) {
    const double amp = d1(q, c.k1) * d2(kp - q, c.k2());
    visit(q, amp * amp);
  }
}

inline double bsd_steady_qfi_with(const SplitChoice& c, const RMatrix& d1, const RMatrix& d2) {
  double f = 0.0;
  const double half2 = 0.5 * c.n2();
  for (int kp = 0; kp <= c.n; ++kp) {
    double w = 0.0, wm = 0.0, wm2 = 0.0;
    for_each_block_term(c, d1, d2, kp, [&](int q, double p) {
      const double m = kp - q - half2;
      w += p;
      wm += p * m;
      wm2 += p * m * m;
    });
    if (w < kBlockProbabilityFloor) continue;
    f += wm2 - wm * wm / w;
  }
  return 4.0 * f;
}
}  // namespace detail

inline RVector block_probabilities(const SplitChoice& c) {
  c.validate();
  const RMatrix d1 = wigner_d_half_pi(c.n1);
  const RMatrix d2 = wigner_d_half_pi(c.n2());
  RVector p = RVector::Zero(c.n + 1);
  for (int kp = 0; kp <= c.n; ++kp)
    detail::for_each_block_term(c, d1, d2, kp, [&](int, double w) { p(kp) += w; });
  return p;
}

// Steady-state DI phase QFI of the BSD probe: 4 sum_{k'} p_{k'} Var_{k'}(g)
// with g = 1 (x) S_z on partition 2, evaluated block by block.
inline double bsd_steady_qfi(const SplitChoice& c) {
  c.validate();
  return detail::bsd_steady_qfi_with(c, wigner_d_half_pi(c.n1), wigner_d_half_pi(c.n2()));
}

struct SplitOptimum {
  int k = 0;
  double max_qfi = 0.0;
  std::vector<std::pair<int, int>> argmax;  // (n1, k1), lexicographic
};

// Exhaustive search over (n1, k1) for every total excitation number k.
// Values within a relative 1e-10 of the maximum count as ties.
inline std::vector<SplitOptimum> optimize_bsd_split(int n, unsigned threads = 1) {
  if (n < 2) throw std::domain_error("optimize_bsd_split: n must be >= 2");
  std::vector<RMatrix> d(n + 1);
  for (int m = 0; m <= n; ++m) d[m] = wigner_d_half_pi(m);

  auto solve_k = [&](int k) {
    std::vector<std::pair<std::pair<int, int>, double>> values;
    double best = -1.0;
    for (int n1 = 0; n1 <= n; ++n1) {
      for (int k1 = std::max(0, k - (n - n1)); k1 <= std::min(k, n1); ++k1) {
        const SplitChoice c{n, n1, k1, k};
        const double f = detail::bsd_steady_qfi_with(c, d[n1], d[n - n1]);
        values.push_back({{n1, k1}, f});
        best = std::max(best, f);
      }
    }
    SplitOptimum out{k, best, {}};
    const double tol = 1e-10 * std::max(1.0, std::abs(best));
    for (const auto& [key, f] : values)
      if (f >= best - tol) out.argmax.push_back(key);
    return out;
  };

  std::vector<SplitOptimum> table(n + 1);
  if (threads <= 1) {
    for (int k = 0; k <= n; ++k) table[k] = solve_k(k);
  } else {
    std::vector<std::future<SplitOptimum>> jobs;
    for (int k = 0; k <= n; ++k) jobs.push_back(std::async(std::launch::async, solve_k, k));
    for (int k = 0; k <= n; ++k) table[k] = jobs[k].get();
  }
  return table;
}

}  // namespace colqfi
