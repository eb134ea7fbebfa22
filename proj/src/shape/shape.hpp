#pragma once

#include <string>
#include <vector>

#include "core/fwindow.hpp"

namespace fws {

struct ShapeTemplate {
  std::vector<float> values;  // m >= 2 finite samples
  std::int64_t m() const { return static_cast<std::int64_t>(values.size()); }
  static ShapeTemplate load(const std::string& path);  // one float per line
};

struct MatchParams {
  int radius = -1;          // band radius in slots; -1 = max(5, ceil(0.1*m))
  double threshold = 0.3;   // normalized-distance cutoff, must be > 0
  int hop = -1;             // slots between evaluated starts; -1 = max(1, m/4)
  bool normalize = true;    // z-normalize template and candidate
};

// Banded DTW distance with squared-difference cell cost, warping path confined
// to |i - j| <= r, two rolling columns of width 2r+1. Normalized by the
// template length so the value is scale-comparable across r (and monotone
// non-increasing in r).
double cdtw_distance(const float* a, const float* b, std::int64_t m, int r);

// Streaming subsequence matcher: evaluates the template against every
// length-m fully-present slot run whose start index is a multiple of hop,
// merging qualifying starts into maximal [start, end) intervals. Carries the
// last m-1 samples across window boundaries; a time discontinuity or absent
// slot resets the run.
class ShapeScanner {
 public:
  ShapeScanner(const ShapeTemplate& t, const MatchParams& p, const StreamDescriptor& desc);

  void feed(const FWindow& w);
  void feed_slot(TimeMs t, bool present, float v);

  const std::vector<Interval>& matches() const { return matches_; }
  std::int64_t evaluations() const { return evaluations_; }
  int radius() const { return radius_; }
  int hop() const { return hop_; }

 private:
  void evaluate(TimeMs start_time);

  std::vector<float> tmpl_;      // z-normalized when requested
  std::vector<float> ring_;      // last m samples
  std::vector<float> scratch_;   // candidate, ordered + normalized
  StreamDescriptor desc_;
  double threshold_;
  int radius_;
  int hop_;
  bool normalize_;
  std::int64_t m_;
  std::int64_t run_ = 0;         // consecutive present slots
  std::int64_t head_ = 0;        // ring write position
  TimeMs expected_ = 0;
  bool have_expected_ = false;
  std::int64_t evaluations_ = 0;
  std::vector<Interval> matches_;
};

enum class ShapeMode { Drop, Keep };

// drop: events whose sync lies inside a matched interval become absent;
// keep: events outside all matched intervals become absent. `matches` must be
// sorted and disjoint (as produced by ShapeScanner).
void where_shape(const FWindow& in, FWindow& out, const std::vector<Interval>& matches,
                 ShapeMode mode);

}  // namespace fws
