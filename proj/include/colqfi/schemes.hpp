// Estimation pipelines: the standard Ramsey-type scheme with a collective
// signal on every qubit, and differential interferometry (DI) where only
// partition 2 picks up the signal while both partitions share the noise.
//
// The signal unitary exp(-i omega T g) commutes with the dephasing and leaves
// the QFI unchanged, so it is never applied to the propagated state.

#pragma once

#include "colqfi/basis.hpp"
#include "colqfi/dephasing.hpp"
#include "colqfi/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace colqfi {

enum class ProbeFamily { ProductPlus, Ghz, DickeSymmetric, Bsd, GhzBipartite, DfsOptimal };

inline std::string to_string(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::ProductPlus: return "PRODUCT_PLUS";
    case ProbeFamily::Ghz: return "GHZ";
    case ProbeFamily::DickeSymmetric: return "DICKE_SYMMETRIC";
    case ProbeFamily::Bsd: return "BSD";
    case ProbeFamily::GhzBipartite: return "GHZ_BIPARTITE";
    case ProbeFamily::DfsOptimal: return "DFS_OPTIMAL";
  }
  return "?";
}

inline std::optional<ProbeFamily> parse_probe_family(const std::string& s) {
  for (auto f : {ProbeFamily::ProductPlus, ProbeFamily::Ghz, ProbeFamily::DickeSymmetric,
                 ProbeFamily::Bsd, ProbeFamily::GhzBipartite, ProbeFamily::DfsOptimal})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

// n1 == 0 selects the unsplit register for PRODUCT_PLUS; the bipartite
// families need 1 <= n1 <= n - 1. DFS_OPTIMAL with n1 == 0 defaults to n/2.
struct ProbeSpec {
  ProbeFamily family = ProbeFamily::Ghz;
  int n = 1;
  int n1 = 0;
  int k1 = 0;
  int k2 = 0;
  double alpha = 0.0;

  bool is_bipartite() const {
    switch (family) {
      case ProbeFamily::Bsd:
      case ProbeFamily::GhzBipartite:
      case ProbeFamily::DfsOptimal: return true;
      case ProbeFamily::ProductPlus: return n1 > 0;
      default: return false;
    }
  }
};

enum class SchemeKind { Standard, DiIdeal, DiSpinEcho, DiRepeat };

inline std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::Standard: return "STANDARD";
    case SchemeKind::DiIdeal: return "DI_IDEAL";
    case SchemeKind::DiSpinEcho: return "DI_SPIN_ECHO";
    case SchemeKind::DiRepeat: return "DI_REPEAT";
  }
  return "?";
}

inline std::optional<SchemeKind> parse_scheme_kind(const std::string& s) {
  for (auto k : {SchemeKind::Standard, SchemeKind::DiIdeal, SchemeKind::DiSpinEcho,
                 SchemeKind::DiRepeat})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct SchemeSpec {
  SchemeKind kind = SchemeKind::Standard;
  NoiseParams noise{};
  std::vector<double> times{};
};

inline NoiseVariant noise_variant(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DiSpinEcho: return NoiseVariant::SpinEcho;
    case SchemeKind::DiRepeat: return NoiseVariant::IndependentRepeat;
    default: return NoiseVariant::IdealCollective;
  }
}

inline GeneratorLabel signal_generator(SchemeKind kind) {
  return kind == SchemeKind::Standard ? GeneratorLabel::SzTotal : GeneratorLabel::SzPartition2;
}

inline void validate_probe(const ProbeSpec& s) {
  auto fail = [&](const std::string& why) {
    throw std::domain_error(to_string(s.family) + " probe: " + why);
  };
  if (s.n < 1) fail("n must be >= 1");
  if (!std::isfinite(s.alpha)) fail("alpha must be finite");
  const int n2 = s.n - s.n1;
  switch (s.family) {
    case ProbeFamily::ProductPlus:
      if (s.n1 < 0 || s.n1 >= s.n) fail("n1 must lie in [0, n-1]");
      break;
    case ProbeFamily::Ghz:
      if (s.n1 != 0) fail("n1 must be 0 (use GHZ_BIPARTITE for a split register)");
      break;
    case ProbeFamily::DickeSymmetric:
      if (s.n1 != 0) fail("n1 must be 0");
      if (s.n % 2 != 0) fail("requires even n");
      break;
    case ProbeFamily::Bsd:
      if (s.n1 < 1 || n2 < 1) fail("needs 1 <= n1 <= n-1");
      if (s.k1 < 0 || s.k1 > s.n1) fail("k1 outside [0, n1]");
      if (s.k2 < 0 || s.k2 > n2) fail("k2 outside [0, n-n1]");
      break;
    case ProbeFamily::GhzBipartite:
      if (s.n1 < 1 || n2 < 1) fail("needs 1 <= n1 <= n-1");
      break;
    case ProbeFamily::DfsOptimal:
      if (s.n % 2 != 0) fail("requires even n");
      if (s.n1 != 0 && s.n1 != s.n / 2) fail("requires n1 = n/2");
      if (s.n < 2) fail("requires n >= 2");
      break;
  }
}

inline PureState build_probe(const ProbeSpec& s) {
  validate_probe(s);
  constexpr double kQuarter = std::numbers::pi / 2;
  switch (s.family) {
    case ProbeFamily::ProductPlus:
      if (s.n1 == 0) return rotate_y(plus_product_state(s.n), s.alpha);
      return rotate_y(tensor_bipartite(plus_product_state(s.n1), plus_product_state(s.n - s.n1)),
                      s.alpha);
    case ProbeFamily::Ghz:
      return rotate_y(ghz_state(s.n), s.alpha);
    case ProbeFamily::DickeSymmetric:
      return rotate_y(dicke_state(s.n, s.n / 2), kQuarter + s.alpha);
    case ProbeFamily::Bsd:
      return tensor_bipartite(rotate_y(dicke_state(s.n1, s.k1), kQuarter + s.alpha),
                              rotate_y(dicke_state(s.n - s.n1, s.k2), kQuarter + s.alpha));
    case ProbeFamily::GhzBipartite:
      return rotate_y(tensor_bipartite(ghz_state(s.n1), ghz_state(s.n - s.n1)), s.alpha);
    case ProbeFamily::DfsOptimal: {
      const int half = s.n / 2;
      const Basis b = Basis::bipartite(half, half);
      CVector amps = CVector::Zero(b.dim());
      amps(b.index(0, half)) = std::numbers::sqrt2 / 2;
      amps(b.index(half, 0)) = std::numbers::sqrt2 / 2;
      return rotate_y(PureState(b, std::move(amps)), s.alpha);
    }
  }
  throw std::logic_error("unhandled probe family");
}

struct QfiPair {
  double phase;
  double frequency;
};

namespace detail {
inline void require_compatible(const PureState& probe, SchemeKind kind) {
  if (kind != SchemeKind::Standard && !probe.basis.is_bipartite())
    throw std::domain_error(to_string(kind) + " requires a bipartite probe");
}
}  // namespace detail

inline QfiPair scheme_qfi(const PureState& probe, const SchemeSpec& scheme, double t) {
  detail::require_compatible(probe, scheme.kind);
  const StateMatrix rho0 = StateMatrix::from_pure(probe);
  const StateMatrix rho_t =
      apply_variant_dephasing(rho0, t, scheme.noise, noise_variant(scheme.kind));
  const double f = qfi_phase(rho_t, generator(probe.basis, signal_generator(scheme.kind)));
  return {f, t * t * f};
}

// T -> infinity. Ideal collective noise leaves the equal-excitation blocks;
// the spin-echo and repeated variants dephase every coherence that changes
// either partition weight, leaving a diagonal state.
inline double scheme_steady_qfi(const PureState& probe, const SchemeSpec& scheme) {
  detail::require_compatible(probe, scheme.kind);
  const StateMatrix rho0 = StateMatrix::from_pure(probe);
  const Generator g = generator(probe.basis, signal_generator(scheme.kind));
  if (noise_variant(scheme.kind) == NoiseVariant::IdealCollective)
    return qfi_phase(steady_state(rho0), g);
  CMatrix diag = rho0.matrix.diagonal().asDiagonal();
  return qfi_phase(StateMatrix(probe.basis, std::move(diag)), g);
}

struct RotationOptimum {
  double alpha;
  double qfi;
};

// Maximizes the phase QFI over alpha in [0, pi/2]: uniform grid of
// grid_points, then golden-section refinement inside the neighbouring grid
// cells of the best point. Ties resolve to the smallest alpha; the refined
// point replaces the grid point only when it is strictly better.
inline RotationOptimum optimize_rotation(ProbeSpec probe, const SchemeSpec& scheme, double t,
                                         int grid_points = 201, double alpha_tol = 1e-6) {
  if (grid_points < 2) throw std::domain_error("optimize_rotation: grid needs >= 2 points");
  const double hi = std::numbers::pi / 2;
  const double step = hi / (grid_points - 1);
  auto eval = [&](double a) {
    probe.alpha = a;
    return scheme_qfi(build_probe(probe), scheme, t).phase;
  };

  int best = 0;
  double best_f = eval(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double f = eval(i * step);
    if (f > best_f) {
      best_f = f;
      best = i;
    }
  }

  double lo_b = std::max(0.0, (best - 1) * step);
  double hi_b = std::min(hi, (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi_b - inv_phi * (hi_b - lo_b);
  double x2 = lo_b + inv_phi * (hi_b - lo_b);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi_b - lo_b > alpha_tol) {
    if (f1 >= f2) {
      hi_b = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi_b - inv_phi * (hi_b - lo_b);
      f1 = eval(x1);
    } else {
      lo_b = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo_b + inv_phi * (hi_b - lo_b);
      f2 = eval(x2);
    }
  }
  const double x = 0.5 * (lo_b + hi_b);
  const double fx = eval(x);
  if (fx > best_f) return {x, fx};
  return {best * step, best_f};
}

struct ScanResult {
  SchemeKind scheme = SchemeKind::Standard;
  ProbeSpec probe{};
  double t = 0.0;
  double f_phase = std::numeric_limits<double>::quiet_NaN();
  double f_freq = std::numeric_limits<double>::quiet_NaN();
  bool alpha_optimized = false;
  std::string error{};  // non-empty marks a failed cell

  bool ok() const { return error.empty(); }
};

struct ScanOptions {
  bool optimize_alpha = false;
  int alpha_grid = 201;
  bool steady = false;  // evaluate the T -> infinity limit; times are ignored
  unsigned threads = 1;  // 0 = hardware concurrency
};

inline ScanResult evaluate_cell(const SchemeSpec& scheme, const ProbeSpec& spec, double t,
                                const ScanOptions& opt) {
  ScanResult row;
  row.scheme = scheme.kind;
  row.probe = spec;
  row.t = opt.steady ? std::numeric_limits<double>::infinity() : t;
  row.alpha_optimized = opt.optimize_alpha;
  try {
    if (opt.steady) {
      row.f_phase = scheme_steady_qfi(build_probe(spec), scheme);
      row.f_freq = row.f_phase > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else if (opt.optimize_alpha) {
      const RotationOptimum best = optimize_rotation(spec, scheme, t, opt.alpha_grid);
      row.probe.alpha = best.alpha;
      row.f_phase = best.qfi;
      row.f_freq = t * t * best.qfi;
    } else {
      const QfiPair f = scheme_qfi(build_probe(spec), scheme, t);
      row.f_phase = f.phase;
      row.f_freq = f.frequency;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.f_phase = row.f_freq = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

// Cartesian product probe x time, probe-major. Cells run on up to
// opt.threads workers; the output order does not depend on scheduling.
inline std::vector<ScanResult> scan(const SchemeSpec& scheme, const std::vector<ProbeSpec>& probes,
                                    const ScanOptions& opt = {}) {
  if (probes.empty()) throw std::invalid_argument("scan: probe list is empty");
  const std::vector<double> times =
      opt.steady ? std::vector<double>{std::numeric_limits<double>::infinity()} : scheme.times;
  if (times.empty()) throw std::invalid_argument("scan: time list is empty");

  const std::size_t cells = probes.size() * times.size();
  std::vector<ScanResult> rows(cells);
  unsigned workers = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : opt.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));

  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t c = begin; c < cells; c += stride)
      rows[c] = evaluate_cell(scheme, probes[c / times.size()], times[c % times.size()], opt);
  };
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, run_range, w, workers));
    for (auto& j : jobs) j.get();
  }
  return rows;
}

}  // namespace colqfi
