#include "psq/farey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "psq/errors.hpp"
#include "psq/kahan.hpp"

namespace psq {

ArcSet build_arcs(std::uint64_t n_scale) {
  ArcSet set;
  set.n_scale = n_scale;
  double nd = static_cast<double>(n_scale);
  set.big_q = std::sqrt(nd * std::log(nd));
  set.small_p = nd / set.big_q;

  auto q_max = static_cast<std::uint64_t>(std::floor(set.small_p));
  for (std::uint64_t q = 1; q <= q_max; ++q)
    for (std::uint64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1)
        set.arcs.push_back(
            {a, q, static_cast<double>(a) / static_cast<double>(q),
             1.0 / (static_cast<double>(q) * set.big_q)});

  // Exact fraction order; centers as doubles can collide only if the
  // fractions do, and they never do (all are reduced and distinct).
  std::sort(set.arcs.begin(), set.arcs.end(),
            [](const FareyArc& x, const FareyArc& y) {
              return x.a * y.q < y.a * x.q;
            });

  ArcAudit audit = audit_arcs(set);
  if (!audit.disjoint || !audit.contained)
    throw consistency_error(
        "build_arcs: dissection invalid at N=" + std::to_string(n_scale) +
        (audit.disjoint ? "" : " (adjacent arcs overlap)") +
        (audit.contained ? "" : " (arc leaves the base interval)") +
        "; the construction only works once N is moderately large");
  return set;
}

ArcAudit audit_arcs(const ArcSet& set) {
  ArcAudit audit;
  audit.disjoint = true;
  audit.contained = true;
  audit.min_gap_slack = std::numeric_limits<double>::infinity();

  const auto& arcs = set.arcs;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    const FareyArc& x = arcs[i];
    const FareyArc& y = arcs[i + 1];
    // Gap between centers is d/(q q') with d = a'q - aq' >= 1 (mediant
    // property); the arcs are disjoint iff d*Q >= q + q'. Everything but Q
    // is an exact integer here.
    std::int64_t d = static_cast<std::int64_t>(y.a * x.q) -
                     static_cast<std::int64_t>(x.a * y.q);
    ++audit.adjacent_pairs_checked;
    if (d < 1) {
      audit.disjoint = false;
      continue;
    }
    double slack = static_cast<double>(d) * set.big_q -
                   static_cast<double>(x.q + y.q);
    audit.min_gap_slack = std::min(audit.min_gap_slack, slack);
    if (slack < 0.0) audit.disjoint = false;
  }

  for (const FareyArc& arc : arcs) {
    // Left edge inside (1/Q, ...]: a/q - 1/(qQ) >= 1/Q  <=>  a Q >= q + 1,
    // strict at a/q = 1/q_max and slack elsewhere. Right edge: the largest
    // arc ends exactly at 1 + 1/Q (a = q = 1), every other one earlier.
    double left = static_cast<double>(arc.a) * set.big_q -
                  static_cast<double>(arc.q + 1);
    double right = static_cast<double>(arc.q - arc.a) * set.big_q +
                   static_cast<double>(arc.q) - 1.0;
    if (left < 0.0 || right < 0.0) audit.contained = false;
  }
  if (arcs.empty()) audit.min_gap_slack = 0.0;
  return audit;
}

std::int64_t classify_point(const ArcSet& set, double alpha) {
  const auto& arcs = set.arcs;
  if (arcs.empty()) return -1;
  // First arc with center >= alpha, then the candidate and its left
  // neighbour are the only ones whose interval can contain alpha.
  auto it = std::lower_bound(
      arcs.begin(), arcs.end(), alpha,
      [](const FareyArc& arc, double v) { return arc.center < v; });
  auto contains = [](const FareyArc& arc, double v) {
    return v > arc.center - arc.half_width && v <= arc.center + arc.half_width;
  };
  if (it != arcs.end() && contains(*it, alpha))
    return static_cast<std::int64_t>(it - arcs.begin());
  if (it != arcs.begin() && contains(*(it - 1), alpha))
    return static_cast<std::int64_t>(it - 1 - arcs.begin());
  return -1;
}

double major_measure(const ArcSet& set) {
  KahanSum total;
  for (const FareyArc& arc : set.arcs) total.add(2.0 * arc.half_width);
  return total.value();
}

}  // namespace psq
