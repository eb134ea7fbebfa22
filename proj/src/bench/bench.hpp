#pragma once

#include "bench/gen.hpp"
#include "run/executor.hpp"
#include "shape/shape.hpp"
#include "toolkit/toolkit.hpp"

namespace fws {

struct BenchRequest {
  std::string bench = "endtoend";  // toolkit op, endtoend, or listing1
  std::string engine = "eager";    // eager | targeted
  std::uint64_t seed = 42;
  double duration_minutes = 1;
  double overlap_fraction = 1.0;
  int segment_count = 10;
  bool divergent = false;
  std::string waveform = "random-uniform";
  TimeMs window_ms = 60000;
  int trials = 10;
  int parallel = 1;
  std::string out;  // optional sink CSV, written on the first trial
  ToolkitParams tp;
  std::vector<std::string> data_files;  // optional pre-generated inputs
};

struct TrialMetrics {
  double wall_ms = 0;
  std::int64_t events_in = 0;
  ExecutionStats stats;
  std::uint64_t checksum = 0;
};

struct BenchReport {
  std::string bench, engine;
  std::vector<TrialMetrics> trials;
  double mean_wall_ms = 0;
  double std_wall_ms = 0;
  double throughput_events_per_sec = 0;  // events_in / mean wall
  std::int64_t memory_plan_bytes = 0;
  std::string plan_dump;
};

// stream descriptors (hence generated frequencies) a named query consumes
std::vector<double> bench_frequencies(const std::string& name);

Query build_bench_query(const std::string& name, const ToolkitParams& tp);

BenchReport run_bench(const BenchRequest& req);

struct DetectRequest {
  std::uint64_t seed = 42;
  double duration_minutes = 1;
  double frequency_hz = 125;
  int inject_count = 49;
  MatchParams mp;
  std::string template_file;  // empty = built-in line-zero shape
  std::string mode = "none";  // none | drop | keep
  std::string out;            // matched-intervals CSV (+ .filtered.csv for drop/keep)
  std::string data_file;      // optional pre-generated input (no ground truth)
};

struct DetectReport {
  std::vector<Interval> matches;
  std::int64_t evaluations = 0;
  bool have_truth = false;
  double recall = 0;        // truth intervals overlapped by a match
  double fp_fraction = 0;   // matched duration outside truth / stream extent
  double wall_ms = 0;
};

DetectReport run_detect(const DetectRequest& req);

}  // namespace fws
