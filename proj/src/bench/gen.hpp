#pragma once

#include <string>
#include <vector>

#include "run/source.hpp"

namespace fws {

// Synthetic dataset specification. All randomness comes from `seed`; a fixed
// spec generates byte-identical data.
struct GenSpec {
  std::uint64_t seed = 42;
  std::vector<double> frequencies_hz = {500};  // one stream per entry
  double duration_minutes = 1;
  std::string waveform = "random-uniform";  // or "sine+noise"
  // availability model for the last stream (earlier streams stay dense):
  double overlap_fraction = 1.0;
  int segment_count = 10;
  // divergent mode: stream 0 covers the first half, stream 1 the second half
  bool divergent = false;
  // template injection into stream 0 (ground truth for detection)
  int inject_count = 0;
  std::vector<float> inject_template;
  TimeMs window_ms = 60000;
};

struct GenOutput {
  std::vector<SourceData> streams;
  std::vector<Interval> truth;  // injected artifact intervals, stream 0 time
  Interval range{0, 0};         // suggested execution range (aligned)
};

TimeMs period_from_hz(double hz);  // rejects frequencies without integer-ms periods

GenOutput generate(const GenSpec& spec);

void write_csv(const SourceData& s, const std::string& path);

// canonical ABP line-zero-style shape: fall to a zero plateau, then recover
std::vector<float> builtin_line_zero_template();

}  // namespace fws
