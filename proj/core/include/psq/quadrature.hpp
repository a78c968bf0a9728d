#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace psq {

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
// ---------------------------------------------------------------------------
//
// The integrands here are either sharply peaked (z^{-3/2} has a spike of
// width 1/N) or oscillatory (e(-m alpha) at frequency m), so the driver
// supports mandatory breakpoints and a hard cap on panel width. Subdivision
// is deterministic worst-first bisection; no randomness anywhere.

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;             // absolute floor added to the target
  std::uint64_t max_panels = 1u << 20;
  double max_width = 0.0;           // 0 = no cap
  std::vector<double> breakpoints;  // forced initial panel boundaries
};

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;  // sum of per-panel Kronrod-Gauss gaps
  std::uint64_t panels = 0;
  std::uint64_t evaluations = 0;
};

using Integrand = std::function<std::complex<double>(double)>;

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadOptions& opt = {});

// Runs the integral twice, the second time with every initial panel halved
// and a tighter tolerance; throws numerical_error when the two results
// disagree by more than check_tol relatively. This is the refinement check
// all load-bearing integrals go through.
QuadResult integrate_checked(const Integrand& f, double lo, double hi,
                             const QuadOptions& opt = {},
                             double check_tol = 1e-6);

}  // namespace psq
