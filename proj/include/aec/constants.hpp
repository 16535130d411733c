#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aec/generators.hpp"

namespace aec {

// Exact re-derivation of the numeric constants behind the reduction regime.
// All arithmetic below is 64-bit integer; square-root comparisons are done by
// squaring.

// Colors unavailable around a pivot whose non-bunch neighborhood splits into
// nf small and ns large vertices with s short bunches: at most
//   X = 5*nf + ns*(nf+ns+1-s) + 10*s.
inline long long removal_budget(long long nf, long long ns, long long s) {
  return 5 * nf + ns * (nf + ns + 1 - s) + 10 * s;
}

// Smallest pivot degree that forces a long bunch of length X + 2 when the
// degree splits into at most nf+ns-s long bunches, nf+ns non-bunch neighbors
// and short bunches of total length at most 10*s.  A pivot of larger degree
// always has a bunch long enough for the pigeonhole recoloring step.
inline long long long_bunch_requirement(long long nf, long long ns, long long s) {
  long long x = removal_budget(nf, ns, s);
  return (x + 1) * (nf + ns - s) + (nf + ns) + 10 * s;
}

// Loosened closed form of the same requirement (rounding the average bunch
// length up to a full extra factor); kept for reference checks.
inline long long rc3_objective(long long ns, long long s) {
  long long nf = 35 - 2 * ns;
  return (removal_budget(nf, ns, s) + 1) * (nf + ns - s + 1);
}

struct GridMax {
  long long value = 0;
  long long argmax_ns = 0;
  long long argmax_s = 0;
};

/// Maximum of the long-bunch requirement over the RC3 region, with the small
/// count saturated at nf = 35 - 2*ns.
inline GridMax rc3_max() {
  GridMax best;
  for (long long ns = 0; ns <= 17; ++ns) {
    long long nf = 35 - 2 * ns;
    for (long long s = 0; s <= 35 - ns; ++s) {
      long long v = long_bunch_requirement(nf, ns, s);
      if (v > best.value) best = {v, ns, s};
    }
  }
  return best;
}

/// Same maximum derived without pre-substituting nf: a full scan over the
/// region nf + 2*ns <= 35.  Must agree with rc3_max().
inline GridMax rc3_max_full_scan() {
  GridMax best;
  for (long long nf = 0; nf <= 35; ++nf)
    for (long long ns = 0; 2 * ns + nf <= 35 && ns <= 17; ++ns)
      for (long long s = 0; s <= nf + ns; ++s) {
        long long v = long_bunch_requirement(nf, ns, s);
        if (v > best.value) best = {v, ns, s};
      }
  return best;
}

// --- RC4: the same requirement in its loosened product form, over the very
// big regime nf <= 141415 - 2*ns.

inline long long rc4_factored(long long ns, long long s) {
  long long nf = 141415 - 2 * ns;
  return (removal_budget(nf, ns, s) + 1) * (nf + ns - s + 1);
}

// Expanded polynomial of rc4_factored.
inline long long rc4_cubic(long long ns, long long s) {
  return ns * ns * ns + 2 * ns * ns * s - 282822 * ns * ns + ns * s * s - 282832 * ns * s +
         19996363820LL * ns - 10 * s * s + 707084 * s + 99991859616LL;
}

inline long long rc4_s_limit(long long ns) { return 141415 - ns; }

/// Exact maximum over 0 <= ns <= 70707, 0 <= s <= 141415 - ns by boundary
/// evaluation: for fixed ns the cubic is quadratic in s, upward for ns > 10,
/// so its maximum sits on an s-endpoint; for ns <= 10 the interior vertex is
/// also checked.  Interior critical points in s are thereby excluded exactly.
inline GridMax rc4_max_boundary() {
  GridMax best;
  for (long long ns = 0; ns <= 70707; ++ns) {
    long long smax = rc4_s_limit(ns);
    std::vector<long long> candidates = {0, smax};
    if (ns <= 10) {
      long long a2 = 2 * (ns - 10);  // 2 * quadratic coefficient
      long long b = 2 * ns * ns - 282832 * ns + 707084;
      if (a2 != 0) {
        long long vertex = -b / a2;
        for (long long s : {vertex - 1, vertex, vertex + 1})
          if (s >= 0 && s <= smax) candidates.push_back(s);
      }
    }
    for (long long s : candidates) {
      long long v = rc4_cubic(ns, s);
      if (v > best.value) best = {v, ns, s};
    }
  }
  return best;
}

/// Independent method: coarse grid over the whole region, refined around the
/// best cell until the step reaches 1.
inline GridMax rc4_max_grid() {
  long long lo_ns = 0, hi_ns = 70707;
  long long lo_s = 0, hi_s = 141415;
  long long step = 1024;
  GridMax best;
  for (;;) {
    GridMax local;
    for (long long ns = lo_ns; ns <= hi_ns; ns += step) {
      long long smax = std::min(hi_s, rc4_s_limit(ns));
      for (long long s = lo_s; s <= smax; s += step) {
        long long v = rc4_cubic(ns, s);
        if (v > local.value) local = {v, ns, s};
      }
      if (lo_s > smax) continue;
      long long v = rc4_cubic(ns, smax);  // region boundary in s
      if (v > local.value) local = {v, ns, smax};
    }
    if (local.value > best.value) best = local;
    if (step == 1) break;
    long long span = 2 * step;
    lo_ns = std::max(0LL, best.argmax_ns - span);
    hi_ns = std::min(70707LL, best.argmax_ns + span);
    lo_s = std::max(0LL, best.argmax_s - span);
    hi_s = std::min(141415LL, best.argmax_s + span);
    step = std::max(1LL, step / 8);
  }
  return best;
}

/// Factored and expanded forms must agree; sampled over the region with a
/// seeded generator.  A mismatch would mean the expansion is mistranscribed.
inline bool rc4_forms_agree(int samples = 10000, std::uint64_t seed = 2024) {
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    long long ns = rng.below(70708);
    long long s = rng.below(static_cast<int>(rc4_s_limit(ns)) + 1);
    if (rc4_factored(ns, s) != rc4_cubic(ns, s)) return false;
  }
  return true;
}

// --- exact square-root comparisons ---------------------------------------

// a + sqrt(m) <= b  with a, b, m nonnegative integers
inline bool plus_sqrt_le(long long a, long long m, long long b) {
  if (b < a) return false;
  long long d = b - a;
  return m <= d * d;
}

// q + 2 + sqrt(4q+4) < q + sqrt(5q), exactly: 2 + 2*sqrt(q+1) < sqrt(5q)
inline bool crowding_quadratic_holds(long long q) {
  // square twice; both sides positive for q >= 1
  // (2 + 2 sqrt(q+1))^2 < 5q  <=>  8 sqrt(q+1) < q - 8  <=>  64(q+1) < (q-8)^2
  if (q <= 8) return false;
  return 64 * (q + 1) < (q - 8) * (q - 8);
}

struct ConstantsReport {
  long long rc3_max = 0;
  long long rc3_argmax_ns = 0;
  long long rc3_argmax_s = 0;
  long long rc3_objective_origin = 0;  // loosened form at (0,0)

  long long rc4_max = 0;
  long long rc4_argmax_ns = 0;
  long long rc4_argmax_s = 0;
  double rc4_methods_relative_gap = 0.0;
  bool rc4_forms_agree = false;

  bool crowding_inequalities_ok = false;
  bool quadratic_range_ok = false;
  long long quadratic_boundary_q = 0;  // largest q where the comparison fails
  bool pigeonhole_chain_ok = false;

  long long big_threshold = 8680;
  long long scan_palette_floor = 5 * 8680;
  double main_palette_floor = 4.2e14;
};

/// The four crowding thresholds 8889, 17655, 26401, 35137 dominate their
/// degree-sum caps (d-1)*8680 + sqrt(5*(d-1)*8680), checked by squaring.
inline bool verify_crowding_inequalities() {
  const long long caps[] = {8680, 17360, 26040, 34720};
  const long long offsets[] = {8889, 17655, 26401, 35137};
  for (int i = 0; i < 4; ++i)
    if (!plus_sqrt_le(caps[i], 5 * caps[i], offsets[i])) return false;
  return true;
}

// Spot-check that the degree requirement really forces a long enough bunch:
// whenever d > long_bunch_requirement, the average length over at most
// nf+ns-s long bunches exceeds the removal budget + 1.
inline bool verify_pigeonhole_chain() {
  for (long long ns = 0; ns <= 17; ++ns) {
    long long nf = 35 - 2 * ns;
    for (long long s = 0; s <= 35 - ns; s += 3) {
      long long buckets = nf + ns - s;
      if (buckets <= 0) continue;
      long long x = removal_budget(nf, ns, s);
      long long d = long_bunch_requirement(nf, ns, s) + 1;
      if (d - (nf + ns) - 10 * s <= (x + 1) * buckets) return false;
    }
  }
  return true;
}

inline ConstantsReport verify_arithmetic() {
  ConstantsReport rep;

  GridMax rc3 = rc3_max();
  GridMax rc3_full = rc3_max_full_scan();
  if (rc3.value != rc3_full.value)
    throw std::logic_error("rc3 maxima disagree between substituted and full scans");
  rep.rc3_max = rc3.value;
  rep.rc3_argmax_ns = rc3.argmax_ns;
  rep.rc3_argmax_s = rc3.argmax_s;
  rep.rc3_objective_origin = rc3_objective(0, 0);

  GridMax b = rc4_max_boundary();
  GridMax gr = rc4_max_grid();
  rep.rc4_max = b.value;
  rep.rc4_argmax_ns = b.argmax_ns;
  rep.rc4_argmax_s = b.argmax_s;
  rep.rc4_methods_relative_gap =
      std::abs(static_cast<double>(b.value - gr.value)) / static_cast<double>(b.value);
  if (rep.rc4_methods_relative_gap > 1e-6)
    throw std::logic_error("rc4 maxima disagree beyond 1e-6 relative");
  rep.rc4_forms_agree = rc4_forms_agree();

  rep.crowding_inequalities_ok = verify_crowding_inequalities();

  rep.quadratic_range_ok = true;
  for (long long q = 81; q <= 1000000; ++q)
    if (!crowding_quadratic_holds(q)) {
      rep.quadratic_range_ok = false;
      break;
    }
  rep.quadratic_boundary_q = 80;
  if (crowding_quadratic_holds(80)) rep.quadratic_boundary_q = -1;  // unexpected

  rep.pigeonhole_chain_ok = verify_pigeonhole_chain();
  return rep;
}

}  // namespace aec
