#include "shape/shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace fws {

ShapeTemplate ShapeTemplate::load(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (!f) fail(Status::Usage, "cannot open template file: " + path);
  ShapeTemplate t;
  char line[128];
  while (std::fgets(line, sizeof line, f)) {
    char* end = nullptr;
    const double v = std::strtod(line, &end);
    if (end == line) continue;  // blank / comment line
    if (!std::isfinite(v)) {
      std::fclose(f);
      fail(Status::Data, "non-finite template value in " + path);
    }
    t.values.push_back(static_cast<float>(v));
  }
  std::fclose(f);
  require(t.m() >= 2, Status::Usage, "shape template needs at least 2 values");
  return t;
}

double cdtw_distance(const float* a, const float* b, std::int64_t m, int r) {
  require(m >= 1, Status::Usage, "cdtw needs non-empty sequences");
  require(r >= 0 && r < m, Status::Usage, "cdtw band radius must satisfy 0 <= r < m");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::int64_t width = 2 * static_cast<std::int64_t>(r) + 1;
  // col[i][k] = cost at (i, j) with j = i - r + k
  std::vector<double> prev(static_cast<size_t>(width), kInf);
  std::vector<double> cur(static_cast<size_t>(width), kInf);
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int64_t j_lo = std::max<std::int64_t>(0, i - r);
    const std::int64_t j_hi = std::min<std::int64_t>(m - 1, i + r);
    std::fill(cur.begin(), cur.end(), kInf);
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      const double d = static_cast<double>(a[i]) - b[j];
      const double cost = d * d;
      const std::int64_t k = j - i + r;
      double best;
      if (i == 0 && j == 0) {
        best = 0;
      } else {
        best = kInf;
        if (j - 1 >= j_lo) best = std::min(best, cur[static_cast<size_t>(k - 1)]);
        if (i > 0) {
          // prev column is centered one lower: j maps to k+1 there
          if (k + 1 < width) best = std::min(best, prev[static_cast<size_t>(k + 1)]);
          if (k < width) best = std::min(best, prev[static_cast<size_t>(k)]);
        }
      }
      cur[static_cast<size_t>(k)] = cost + best;
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<size_t>(r)] / static_cast<double>(m);  // cell (m-1, m-1)
}

namespace {

void z_normalize(float* v, std::int64_t n) {
  double sum = 0, sumsq = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    sum += v[i];
    sumsq += static_cast<double>(v[i]) * v[i];
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
  const double sd = std::sqrt(var);
  if (sd == 0.0) {
    for (std::int64_t i = 0; i < n; ++i) v[i] = 0.f;
    return;
  }
  for (std::int64_t i = 0; i < n; ++i)
    v[i] = static_cast<float>((v[i] - mean) / sd);
}

}  // namespace

ShapeScanner::ShapeScanner(const ShapeTemplate& t, const MatchParams& p,
                           const StreamDescriptor& desc)
    : tmpl_(t.values), desc_(desc), threshold_(p.threshold), normalize_(p.normalize), m_(t.m()) {
  require(m_ >= 2, Status::Usage, "shape template needs at least 2 values");
  require(threshold_ > 0, Status::Usage, "match threshold must be positive");
  radius_ = p.radius >= 0
                ? p.radius
                : static_cast<int>(std::max<std::int64_t>(5, (m_ + 9) / 10));
  require(radius_ < m_, Status::Usage, "band radius must be smaller than the template");
  hop_ = p.hop >= 1 ? p.hop : static_cast<int>(std::max<std::int64_t>(1, m_ / 4));
  if (normalize_) z_normalize(tmpl_.data(), m_);
  ring_.assign(static_cast<size_t>(m_), 0.f);
  scratch_.assign(static_cast<size_t>(m_), 0.f);
}

void ShapeScanner::feed_slot(TimeMs t, bool present, float v) {
  if (have_expected_ && t != expected_) run_ = 0;  // discontinuity resets the run
  expected_ = t + desc_.period;
  have_expected_ = true;
  if (!present) {
    run_ = 0;
    return;
  }
  ring_[static_cast<size_t>(head_)] = v;
  head_ = (head_ + 1) % m_;
  ++run_;
  if (run_ < m_) return;
  const TimeMs start = t - (m_ - 1) * desc_.period;
  const std::int64_t start_idx = (start - desc_.offset) / desc_.period;
  if (pos_mod(start_idx, hop_) != 0) return;
  evaluate(start);
}

void ShapeScanner::evaluate(TimeMs start) {
  // unroll the ring into scratch, oldest first
  for (std::int64_t i = 0; i < m_; ++i)
    scratch_[static_cast<size_t>(i)] = ring_[static_cast<size_t>((head_ + i) % m_)];
  if (normalize_) z_normalize(scratch_.data(), m_);
  ++evaluations_;
  const double d = cdtw_distance(tmpl_.data(), scratch_.data(), m_, radius_);
  if (d >= threshold_) return;
  const Interval iv{start, start + m_ * desc_.period};
  if (!matches_.empty() && iv.lo <= matches_.back().hi)
    matches_.back().hi = std::max(matches_.back().hi, iv.hi);
  else
    matches_.push_back(iv);
}

void ShapeScanner::feed(const FWindow& w) {
  for (std::int64_t i = 0; i < w.capacity(); ++i)
    feed_slot(w.slot_time(i), w.present(i), w.present(i) ? w.payload(i)[0] : 0.f);
}

void where_shape(const FWindow& in, FWindow& out, const std::vector<Interval>& matches,
                 ShapeMode mode) {
  require(in.descriptor() == out.descriptor() && in.dimension() == out.dimension(),
          Status::Usage, "where_shape windows must share shape");
  out.reposition(in.sync());
  for (std::int64_t i = 0; i < in.capacity(); ++i) {
    if (!in.present(i)) continue;
    const TimeMs t = in.vsync(i);
    auto it = std::upper_bound(matches.begin(), matches.end(), t,
                               [](TimeMs v, const Interval& s) { return v < s.hi; });
    const bool inside = it != matches.end() && it->lo <= t;
    if (inside == (mode == ShapeMode::Keep))
      out.set(i, t, in.duration(i), in.payload(i));
  }
}

}  // namespace fws
