#pragma once

#include "core/base.hpp"

namespace fws {

// Affine time map t -> (num*t + off) / den with an interval extension.
// Lineage: an output interval [a,b) requires the input interval
// [map(a) - ext_lo, map(b) + ext_hi). All operator lineages are of this form
// (the linearity property); den divides exactly on window-aligned endpoints,
// otherwise endpoints are rounded outward (a sound over-approximation).
struct AffineMap {
  std::int64_t num = 1;
  std::int64_t den = 1;
  std::int64_t off = 0;
  std::int64_t ext_lo = 0;
  std::int64_t ext_hi = 0;

  static AffineMap identity() { return {}; }

  TimeMs point_floor(TimeMs t) const {
    __int128 v = static_cast<__int128>(num) * t + off;
    __int128 q = v / den;
    if (v % den != 0 && ((v < 0) != (den < 0))) --q;
    return static_cast<TimeMs>(q);
  }
  TimeMs point_ceil(TimeMs t) const {
    __int128 v = static_cast<__int128>(num) * t + off;
    __int128 q = v / den;
    if (v % den != 0 && ((v > 0) == (den > 0))) ++q;
    return static_cast<TimeMs>(q);
  }

  Interval map(const Interval& out) const {
    return Interval{point_floor(out.lo) - ext_lo, point_ceil(out.hi) + ext_hi};
  }

  // Smallest t such that (num*t + off)/den >= v (num > 0).
  TimeMs inverse_at_least(TimeMs v) const {
    __int128 x = static_cast<__int128>(v) * den - off;
    __int128 q = x / num;
    if (x % num != 0 && ((x > 0) == (num > 0))) ++q;
    return static_cast<TimeMs>(q);
  }

  // Composition: this is applied after `inner` going toward the sources, i.e.
  // result(t) = inner(this(t)) with extensions accumulated in source time.
  AffineMap then(const AffineMap& inner) const {
    AffineMap r;
    __int128 n = static_cast<__int128>(inner.num) * num;
    __int128 o = static_cast<__int128>(inner.num) * off + static_cast<__int128>(inner.off) * den;
    __int128 d = static_cast<__int128>(inner.den) * den;
    std::int64_t g = std::gcd(std::gcd(static_cast<std::int64_t>(n < 0 ? -n : n),
                                       static_cast<std::int64_t>(d)),
                              static_cast<std::int64_t>(o < 0 ? -o : o));
    if (g == 0) g = 1;
    r.num = static_cast<std::int64_t>(n / g);
    r.den = static_cast<std::int64_t>(d / g);
    r.off = static_cast<std::int64_t>(o / g);
    // Outer extensions are measured in this map's input time; scale them into
    // source time through the inner map.
    auto scale = [&](std::int64_t e) {
      return static_cast<std::int64_t>(
          ceil_div(static_cast<std::int64_t>(e * inner.num), inner.den));
    };
    r.ext_lo = inner.ext_lo + scale(ext_lo);
    r.ext_hi = inner.ext_hi + scale(ext_hi);
    return r;
  }
};

}  // namespace fws
