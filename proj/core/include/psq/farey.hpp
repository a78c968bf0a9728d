#pragma once

#include <cstdint>
#include <vector>

namespace psq {

// ---------------------------------------------------------------------------
// Farey dissection of the unit interval.
// ---------------------------------------------------------------------------
//
// For a scale N set Q = sqrt(N ln N) and P = N/Q. Around every reduced
// fraction a/q with q <= P, 1 <= a <= q, gcd(a,q) = 1 (a = q = 1 stands in
// for the fraction 1) place the arc
//   (a/q - 1/(q Q), a/q + 1/(q Q)].
// The arcs are pairwise disjoint and sit inside (1/Q, 1 + 1/Q]; everything
// in that interval not covered by an arc is minor-arc territory.

struct FareyArc {
  std::uint64_t a, q;   // center a/q, gcd(a,q) = 1
  double center;        // a/q as a double (for reporting; tests use a,q)
  double half_width;    // 1/(q Q)
};

struct ArcSet {
  std::uint64_t n_scale = 0;   // N
  double big_q = 0.0;          // Q = sqrt(N ln N)
  double small_p = 0.0;        // P = N/Q
  std::vector<FareyArc> arcs;  // sorted by center a/q (exact fraction order)
};

ArcSet build_arcs(std::uint64_t n_scale);

// Disjointness / containment audit in exact integer arithmetic. Adjacent
// sorted arcs a/q < a'/q' are disjoint iff the gap a'/q' - a/q = d/(q q')
// (d = a' q - a q' >= 1) is at least the sum of half-widths, i.e.
// d * Q >= q + q'. Containment in (1/Q, 1 + 1/Q] reduces to a Q > q + 1 on
// the left edge (the right edge is exact at a = q = 1). Returns true when
// every check passes; the counts let tests assert the audit actually ran.
struct ArcAudit {
  bool disjoint = false;
  bool contained = false;
  std::uint64_t adjacent_pairs_checked = 0;
  double min_gap_slack = 0.0;  // min over pairs of d*Q - (q+q'), scaled by Q
};
ArcAudit audit_arcs(const ArcSet& arcs);

// Locate alpha in the dissection: index of the arc whose half-open interval
// (center - hw, center + hw] contains alpha, or -1 if alpha is minor-arc.
// alpha is expected in (1/Q, 1 + 1/Q]; values outside are classified as
// minor without fuss.
std::int64_t classify_point(const ArcSet& arcs, double alpha);

// Total measure of the major arcs (sum of widths), for coverage reporting.
double major_measure(const ArcSet& arcs);

}  // namespace psq
