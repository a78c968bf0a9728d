#include "psq/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "psq/errors.hpp"
#include "psq/kahan.hpp"

namespace psq {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// abscissae/weights). The embedded Gauss rule reuses the odd-index nodes.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  std::complex<double> value;
  double error;
};

Panel eval_panel(const Integrand& f, double lo, double hi,
                 std::uint64_t& evals) {
  double c = 0.5 * (lo + hi);
  double h = 0.5 * (hi - lo);
  std::complex<double> fc = f(c);
  std::complex<double> kron = wgk[7] * fc;
  std::complex<double> gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    std::complex<double> pair = f(c - h * xgk[j]) + f(c + h * xgk[j]);
    kron += wgk[j] * pair;
    if (j % 2 == 1) gauss += wg[j / 2] * pair;
  }
  evals += 15;
  return {lo, hi, h * kron, std::abs(h * (kron - gauss))};
}

std::vector<double> initial_edges(double lo, double hi,
                                  const QuadOptions& opt) {
  std::vector<double> edges{lo, hi};
  for (double b : opt.breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (opt.max_width > 0.0) {
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      refined.push_back(edges[i]);
      double w = edges[i + 1] - edges[i];
      auto parts = static_cast<std::uint64_t>(std::ceil(w / opt.max_width));
      for (std::uint64_t p = 1; p < parts; ++p)
        refined.push_back(edges[i] + w * static_cast<double>(p) /
                                         static_cast<double>(parts));
    }
    refined.push_back(edges.back());
    edges = std::move(refined);
  }
  return edges;
}

}  // namespace

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadOptions& opt) {
  QuadResult result;
  if (!(hi > lo)) return result;

  std::uint64_t evals = 0;
  auto edges = initial_edges(lo, hi, opt);
  std::vector<Panel> panels;
  panels.reserve(edges.size() + 64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    panels.push_back(eval_panel(f, edges[i], edges[i + 1], evals));

  auto totals = [&panels] {
    KahanCSum v;
    KahanSum e;
    for (const Panel& p : panels) {
      v.add(p.value);
      e.add(p.error);
    }
    return std::pair{v.value(), e.value()};
  };

  for (;;) {
    auto [value, error] = totals();
    double target = opt.abs_tol + opt.rel_tol * std::abs(value);
    if (error <= target || panels.size() >= opt.max_panels) break;
    // Worst panel, ties by position: deterministic refinement order.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error &&
           panels[i].lo < panels[worst].lo))
        worst = i;
    Panel p = panels[worst];
    double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) break;  // width at rounding floor
    panels[worst] = eval_panel(f, p.lo, mid, evals);
    panels.push_back(eval_panel(f, mid, p.hi, evals));
  }

  // Final sum in interval order so the result is independent of the
  // refinement history's insertion pattern.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  KahanCSum v;
  KahanSum e;
  for (const Panel& p : panels) {
    v.add(p.value);
    e.add(p.error);
  }
  result.value = v.value();
  result.error_estimate = e.value();
  result.panels = panels.size();
  result.evaluations = evals;
  return result;
}

QuadResult integrate_checked(const Integrand& f, double lo, double hi,
                             const QuadOptions& opt, double check_tol) {
  QuadResult first = integrate(f, lo, hi, opt);
  QuadOptions finer = opt;
  finer.rel_tol = opt.rel_tol / 4.0;
  finer.max_width =
      opt.max_width > 0.0 ? opt.max_width / 2.0 : (hi - lo) / 2.0;
  finer.max_panels = opt.max_panels * 2;
  QuadResult second = integrate(f, lo, hi, finer);

  double scale = std::max(std::abs(first.value), std::abs(second.value));
  double diff = std::abs(first.value - second.value);
  if (diff > check_tol * scale + opt.abs_tol)
    throw numerical_error(
        "integrate_checked: refinement moved the result by " +
        std::to_string(diff) + " (relative " +
        std::to_string(scale > 0 ? diff / scale : 0.0) +
        "); the integrand is not resolved at this tolerance");
  return second;
}

}  // namespace psq
