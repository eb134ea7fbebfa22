// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "bench/bench.hpp"
#include "support/reference.hpp"
#include "toolkit/toolkit.hpp"

using namespace fws;
using ref::RefStream;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

RefStream rand_stream(std::uint64_t seed, TimeMs offset, TimeMs period, std::int64_t slots,
                      double gap_prob, bool full_durations = false) {
  std::mt19937_64 rng(seed);
  return ref::random_stream(rng, make_descriptor(offset, period), slots, gap_prob,
                            full_durations);
}

Interval interior(const RefStream& s, TimeMs margin) {
  if (s.events.empty()) return {0, 0};
  return {s.events.front().sync + margin, s.events.back().sync - margin};
}

bool streams_match(const RefStream& oracle, const RefStream& engine, const Interval& r,
                   std::string* diff) {
  return ref::equal_streams(ref::clip_range(oracle, r), ref::clip_range(engine, r), diff);
}

// ---------------------------------------------------------------------------
// 1. operator oracle equivalence

struct OpCheck {
  const char* name;
  std::function<bool(std::uint64_t seed, std::string* diff)> run;
};

CombineFn sub_combine() {
  return [](const float* l, const float* r, float* out) {
    out[0] = (l ? l[0] : 0.f) - (r ? r[0] : 0.f);
  };
}

std::vector<OpCheck> operator_checks() {
  std::vector<OpCheck> checks;
  checks.push_back({"select", [](std::uint64_t s, std::string* diff) {
                      MapFn f = [](TimeMs, const float* in, float* out) {
                        out[0] = 2.f * in[0] + 1.f;
                      };
                      RefStream in = rand_stream(s, 0, 2, 800, 0.2);
                      Interval r = interior(in, 40);
                      if (r.empty()) return true;
                      OpParams p;
                      p.map_fn = f;
                      return streams_match(ref::select(in, f, PayloadKind::F32),
                                           ref::run_engine_op(OpKind::Select, p, {in}, r), r,
                                           diff);
                    }});
  checks.push_back({"where", [](std::uint64_t s, std::string* diff) {
                      PredFn f = [](TimeMs, const float* in) { return in[0] > 50.f; };
                      RefStream in = rand_stream(s, 0, 2, 800, 0.15);
                      Interval r = interior(in, 40);
                      if (r.empty()) return true;
                      OpParams p;
                      p.pred_fn = f;
                      return streams_match(ref::where(in, f),
                                           ref::run_engine_op(OpKind::Where, p, {in}, r), r,
                                           diff);
                    }});
  checks.push_back({"aggregate", [](std::uint64_t s, std::string* diff) {
                      const AggKind kinds[] = {AggKind::Sum,  AggKind::Max,   AggKind::Min,
                                               AggKind::Mean, AggKind::Count, AggKind::Std};
                      const AggKind agg = kinds[s % 6];
                      const TimeMs w = (s % 2) ? 40 : 20, p_ = (s % 2) ? 10 : 20;
                      RefStream in = rand_stream(s + 7000, 0, 2, 900, 0.3);
                      RefStream oracle = ref::aggregate(in, agg, w, p_);
                      Interval r = interior(oracle, 200);
                      if (r.empty()) return true;
                      OpParams p;
                      p.agg = agg;
                      p.w = w;
                      p.p = p_;
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::Aggregate, p, {in}, r), r,
                                           diff);
                    }});
  checks.push_back({"join-inner", [](std::uint64_t s, std::string* diff) {
                      RefStream l = rand_stream(s + 100, 0, 2, 900, 0.2);
                      RefStream r0 = rand_stream(s + 200, 0, 5, 360, 0.2);
                      RefStream oracle =
                          ref::join(l, r0, JoinMode::Inner, sub_combine(), PayloadKind::F32);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.combine_fn = sub_combine();
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::Join, p, {l, r0}, r), r,
                                           diff);
                    }});
  checks.push_back({"join-left", [](std::uint64_t s, std::string* diff) {
                      RefStream l = rand_stream(s + 300, 0, 2, 900, 0.3, true);
                      RefStream r0 = rand_stream(s + 400, 0, 4, 450, 0.3, true);
                      RefStream oracle =
                          ref::join(l, r0, JoinMode::Left, sub_combine(), PayloadKind::F32);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.join_mode = JoinMode::Left;
                      p.combine_fn = sub_combine();
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::Join, p, {l, r0}, r), r,
                                           diff);
                    }});
  checks.push_back({"join-outer", [](std::uint64_t s, std::string* diff) {
                      RefStream l = rand_stream(s + 500, 0, 2, 900, 0.3, true);
                      RefStream r0 = rand_stream(s + 600, 0, 4, 450, 0.3, true);
                      RefStream oracle =
                          ref::join(l, r0, JoinMode::Outer, sub_combine(), PayloadKind::F32);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.join_mode = JoinMode::Outer;
                      p.combine_fn = sub_combine();
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::Join, p, {l, r0}, r), r,
                                           diff);
                    }});
  checks.push_back({"clip-join", [](std::uint64_t s, std::string* diff) {
                      RefStream l = rand_stream(s + 700, 0, 10, 250, 0.2);
                      RefStream r0 = rand_stream(s + 800, 0, 2, 1000, 0.6);
                      RefStream oracle = ref::clip_join(l, r0, sub_combine(), PayloadKind::F32);
                      Interval r = interior(oracle, 100);
                      if (r.empty()) return true;
                      OpParams p;
                      p.combine_fn = sub_combine();
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::ClipJoin, p, {l, r0}, r),
                                           r, diff);
                    }});
  checks.push_back({"chop", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 900, 0, 6, 600, 0.2);
                      RefStream oracle = ref::chop(in, 4);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.c = 4;
                      return streams_match(oracle, ref::run_engine_op(OpKind::Chop, p, {in}, r),
                                           r, diff);
                    }});
  checks.push_back({"shift", [](std::uint64_t s, std::string* diff) {
                      const TimeMs k = (s % 2) ? 7 : -5;
                      RefStream in = rand_stream(s + 1000, 0, 2, 800, 0.2);
                      RefStream oracle = ref::shift(in, k);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.k = k;
                      return streams_match(oracle, ref::run_engine_op(OpKind::Shift, p, {in}, r),
                                           r, diff);
                    }});
  checks.push_back({"alter-period", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 1100, 0, 4, 800, 0.2);
                      RefStream oracle = ref::alter_period(in, 6);
                      Interval r = interior(oracle, 120);
                      if (r.empty()) return true;
                      OpParams p;
                      p.new_period = 6;
                      return streams_match(
                          oracle, ref::run_engine_op(OpKind::AlterPeriod, p, {in}, r), r, diff);
                    }});
  checks.push_back({"alter-duration", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 1200, 0, 4, 800, 0.2);
                      RefStream oracle = ref::alter_duration(in, 1);
                      Interval r = interior(oracle, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.d = 1;
                      return streams_match(
                          oracle, ref::run_engine_op(OpKind::AlterDuration, p, {in}, r), r,
                          diff);
                    }});
  checks.push_back({"fill-const", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 1300, 0, 2, 1000, 0.4, true);
                      RefStream oracle = ref::fill_const(in, 10, -1.f);
                      Interval r = interior(in, 60);
                      if (r.empty()) return true;
                      OpParams p;
                      p.gap_limit = 10;
                      p.fill_value = -1.f;
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::FillConst, p, {in}, r), r,
                                           diff);
                    }});
  checks.push_back({"fill-mean", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 1400, 0, 2, 1000, 0.3, true);
                      RefStream oracle = ref::fill_mean(in, 20);
                      Interval r = interior(in, 80);
                      if (r.empty()) return true;
                      OpParams p;
                      p.w = 20;
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::FillMean, p, {in}, r), r,
                                           diff);
                    }});
  checks.push_back({"resample", [](std::uint64_t s, std::string* diff) {
                      RefStream in = rand_stream(s + 1500, 0, 8, 500, 0.2, true);
                      RefStream oracle = ref::resample(in, 2);
                      Interval r = interior(oracle, 120);
                      if (r.empty()) return true;
                      OpParams p;
                      p.new_period = 2;
                      return streams_match(oracle,
                                           ref::run_engine_op(OpKind::Resample, p, {in}, r), r,
                                           diff);
                    }});
  return checks;
}

bool criterion1(std::string* msg) {
  for (const OpCheck& c : operator_checks()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::string diff;
      if (!c.run(seed, &diff)) {
        *msg = std::string(c.name) + " seed " + std::to_string(seed) + ": " + diff;
        return false;
      }
    }
  }
  *msg = "14 operator variants x 200 seeded streams, bit-exact";
  return true;
}

// ---------------------------------------------------------------------------
// 2. eager/targeted CSV equivalence on random inner-join queries

SourceData segmented_source(std::mt19937_64& rng, const StreamDescriptor& desc, TimeMs total) {
  SourceData out(desc, desc.period);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
  };
  const int nseg = 2 + static_cast<int>(rng() % 3);
  const TimeMs span = total / nseg;
  for (int i = 0; i < nseg; ++i) {
    const TimeMs lo = i * span;
    const TimeMs hi = lo + static_cast<TimeMs>(unit() * 0.7 * static_cast<double>(span));
    for (TimeMs t = align_up(lo, desc.offset, desc.period); t < hi; t += desc.period) {
      if (unit() < 0.05) continue;
      out.push_scalar(t, static_cast<float>(100.0 * unit()));
    }
  }
  return out;
}

StreamExpr random_chain(std::mt19937_64& rng, StreamExpr e) {
  const int steps = static_cast<int>(rng() % 3);
  bool aggregated = false;
  for (int i = 0; i < steps; ++i) {
    const TimeMs p = e.descriptor().period;
    switch (rng() % 5) {
      case 0: e = e.select_values([](float v) { return 1.25f * v + 0.5f; }); break;
      case 1: e = e.where_values([](float v) { return v < 80.f; }); break;
      case 2: e = e.fill_const(4 * p, 0.f); break;
      case 3: e = e.fill_mean(4 * p); break;
      case 4:
        if (!aggregated) {
          e = e.aggregate((rng() % 2) ? AggKind::Mean : AggKind::Sum, 4 * p, 4 * p);
          aggregated = true;
        }
        break;
    }
  }
  return e.alter_duration(1);
}

std::string file_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool criterion2(std::string* msg) {
  std::int64_t skipped_total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed * 1315423911ull + 3);
    const TimeMs total = 200000;
    SourceData a = segmented_source(rng, make_descriptor(0, 2), total);
    SourceData b = segmented_source(rng, make_descriptor(0, 5), total);
    Query q;
    StreamExpr ea = random_chain(rng, q.source("a", a.desc));
    StreamExpr eb = random_chain(rng, q.source("b", b.desc));
    q.sink(ea.join(eb, JoinMode::Inner, sub_combine()));
    CompiledPlan plan = compile(std::move(q));
    const std::string fa = "acc2_eager.csv", fb = "acc2_targeted.csv";
    {
      Execution ex(plan, {&a, &b});
      CsvSink sink(fa);
      ex.run_eager({0, total}, sink);
    }
    ExecutionStats st;
    {
      Execution ex(plan, {&a, &b});
      CsvSink sink(fb);
      st = ex.run_targeted({0, total}, sink);
    }
    const bool same = file_bytes(fa) == file_bytes(fb);
    std::remove(fa.c_str());
    std::remove(fb.c_str());
    if (!same) {
      *msg = "divergent sink CSV at seed " + std::to_string(seed);
      return false;
    }
    skipped_total += st.windows_skipped;
  }
  if (skipped_total == 0) {
    *msg = "no query exercised skipping";
    return false;
  }
  *msg = "100 random query/dataset pairs byte-identical (" + std::to_string(skipped_total) +
         " windows skipped in total)";
  return true;
}

// ---------------------------------------------------------------------------
// 3. locality tracing on the two-signal reference graph

bool criterion3(std::string* msg) {
  CompiledPlan plan = compile(make_listing1_query());
  bool saw = false;
  for (const std::string& l : plan.trace_log)
    saw |= l.find("adjust Join_2: dims [2, 5, 1] -> 10") != std::string::npos;
  if (!saw) {
    *msg = "missing the dimension-10 adjustment in the trace";
    return false;
  }
  const TimeMs dim = plan.dimension();
  for (const Edge& e : plan.graph.edges) {
    if (e.dim != dim || e.dim % e.desc.period != 0) {
      *msg = "edge " + std::to_string(e.id) + " dimension not unified/divisible";
      return false;
    }
  }
  Graph g = plan.graph;
  std::vector<std::string> log;
  if (locality_trace(g, log, CompileOptions{}.dimension_cap)) {
    *msg = "trace is not idempotent";
    return false;
  }
  *msg = "dimension-10 adjustment present, fixed point " + std::to_string(dim) + ", idempotent";
  return true;
}

// ---------------------------------------------------------------------------
// 4. zero steady-state allocation at 1e5 and 1e7 events

bool run_endtoend_alloc(double minutes, std::int64_t* events, std::int64_t* allocs) {
  GenSpec gs;
  gs.seed = 17;
  gs.frequencies_hz = {500, 125};
  gs.duration_minutes = minutes;
  gs.window_ms = 1000;
  GenOutput data = generate(gs);
  *events = data.streams[0].size() + data.streams[1].size();
  ToolkitParams tp;
  tp.window_ms = 1000;
  CompiledPlan plan = compile(make_endtoend_query(tp));
  Execution ex(plan, {&data.streams[0], &data.streams[1]});
  ChecksumSink sink;
  ExecutionStats st = ex.run_eager(data.range, sink);
  *allocs = st.steady_alloc_count;
  return st.windows_processed > 0 && st.events_out > 0;
}

bool criterion4(std::string* msg) {
  std::int64_t ev_small = 0, ev_big = 0, al_small = -1, al_big = -1;
  if (!run_endtoend_alloc(8.0 / 3.0, &ev_small, &al_small) ||
      !run_endtoend_alloc(800.0 / 3.0, &ev_big, &al_big)) {
    *msg = "pipeline produced no output";
    return false;
  }
  if (al_small != 0 || al_big != 0 || al_small != al_big) {
    *msg = "steady-state allocations: " + std::to_string(al_small) + " at " +
           std::to_string(ev_small) + " events, " + std::to_string(al_big) + " at " +
           std::to_string(ev_big);
    return false;
  }
  *msg = "0 steady-state allocations at " + std::to_string(ev_small) + " and " +
         std::to_string(ev_big) + " input events";
  return true;
}

// ---------------------------------------------------------------------------
// 5. targeted skipping tracks the overlap fraction

bool criterion5(std::string* msg) {
  double eager_wall_01 = 0, targeted_wall_01 = 0;
  std::ostringstream detail;
  for (double f : {1.0, 0.5, 0.1}) {
    BenchRequest br;
    br.bench = "endtoend";
    br.seed = 29;
    br.duration_minutes = 60;
    br.overlap_fraction = f;
    br.segment_count = 10;
    br.window_ms = 1000;
    br.trials = 1;
    br.engine = "targeted";
    BenchReport targ = run_bench(br);
    const TrialMetrics& tm = targ.trials[0];
    const double ratio = static_cast<double>(tm.stats.windows_processed) /
                         static_cast<double>(tm.stats.windows_total);
    if (std::fabs(ratio - f) > 0.02) {
      *msg = "processed/total " + std::to_string(ratio) + " vs overlap " + std::to_string(f);
      return false;
    }
    detail << " f=" << f << ":" << ratio;
    if (f == 0.1) {
      targeted_wall_01 = targ.mean_wall_ms;
      br.engine = "eager";
      eager_wall_01 = run_bench(br).mean_wall_ms;
    }
  }
  const double speedup = eager_wall_01 / targeted_wall_01;
  if (speedup < 3.0) {
    *msg = "targeted speedup at f=0.1 only " + std::to_string(speedup) + "x";
    return false;
  }
  detail << ", speedup at f=0.1: " << speedup << "x";
  *msg = "window ratios within 0.02:" + detail.str();
  return true;
}

// ---------------------------------------------------------------------------
// 6. divergent availability: flat memory, empty output at 1e7 events

bool criterion6(std::string* msg) {
  GenSpec gs;
  gs.seed = 31;
  gs.frequencies_hz = {500, 125};
  gs.duration_minutes = 1600.0 / 3.0;  // each stream covers half: ~1e7 events total
  gs.divergent = true;
  gs.window_ms = 1000;
  GenOutput data = generate(gs);
  const std::int64_t events = data.streams[0].size() + data.streams[1].size();
  ToolkitParams tp;
  tp.window_ms = 1000;
  CompiledPlan plan = compile(make_endtoend_query(tp));

  const AllocCounters before = alloc_counters();
  Execution ex(plan, {&data.streams[0], &data.streams[1]});
  const AllocCounters after = alloc_counters();
  const std::int64_t ctor_bytes = after.bytes - before.bytes;
  if (ctor_bytes > plan.memory.total_bytes * 3 / 2 + (1 << 20)) {
    *msg = "execution memory " + std::to_string(ctor_bytes) + " bytes vs plan " +
           std::to_string(plan.memory.total_bytes);
    return false;
  }
  ChecksumSink sink;
  ExecutionStats st = ex.run_targeted(data.range, sink);
  if (st.events_out != 0 || st.steady_alloc_count != 0) {
    *msg = "expected empty output with flat memory, got " + std::to_string(st.events_out) +
           " events, " + std::to_string(st.steady_alloc_count) + " allocations";
    return false;
  }
  *msg = std::to_string(events) + " divergent events: empty output, " +
         std::to_string(ctor_bytes) + " bytes resident vs plan " +
         std::to_string(plan.memory.total_bytes) + ", 0 steady-state allocations";
  return true;
}

// ---------------------------------------------------------------------------
// 7. shape detection recall / false positives

bool criterion7(std::string* msg) {
  DetectRequest dr;
  dr.seed = 37;
  dr.duration_minutes = 10;
  dr.frequency_hz = 125;
  dr.inject_count = 49;
  dr.mp.threshold = 0.3;
  dr.mp.hop = 1;
  DetectReport rep = run_detect(dr);
  if (!rep.have_truth || rep.recall < 1.0) {
    *msg = "recall " + std::to_string(rep.recall);
    return false;
  }
  if (rep.fp_fraction > 0.01) {
    *msg = "false-positive fraction " + std::to_string(rep.fp_fraction);
    return false;
  }
  *msg = "49/49 artifacts recovered, fp fraction " + std::to_string(rep.fp_fraction);
  return true;
}

// ---------------------------------------------------------------------------
// 8. toolkit numerics

bool criterion8(std::string* msg) {
  // normalize: per-window mean ~0, deviation ~1
  {
    std::mt19937_64 rng(41);
    RefStream in = ref::random_stream(rng, make_descriptor(0, 2), 2000, 0.0, true);
    ToolkitParams tp;
    tp.window_ms = 100;
    CompiledPlan plan = compile(make_toolkit_query("normalize", in.desc, tp));
    RefStream out = ref::run_query(plan, {in}, {0, 4000});
    std::map<TimeMs, std::vector<double>> windows;
    for (const Event& e : out.events) windows[e.sync / 100].push_back(e.payload[0]);
    for (const auto& [w, vals] : windows) {
      double sum = 0, sumsq = 0;
      for (double v : vals) {
        sum += v;
        sumsq += v * v;
      }
      const double mean = sum / static_cast<double>(vals.size());
      const double sd =
          std::sqrt(std::max(0.0, sumsq / static_cast<double>(vals.size()) - mean * mean));
      if (std::fabs(mean) > 1e-5 || std::fabs(sd - 1.0) > 1e-4) {
        *msg = "window " + std::to_string(w) + ": mean " + std::to_string(mean) +
               ", deviation " + std::to_string(sd);
        return false;
      }
    }
  }
  // FIR vs direct convolution
  {
    const std::vector<float> taps = design_lowpass(10.0, 31, 8);
    std::mt19937_64 rng(43);
    RefStream in = ref::random_stream(rng, make_descriptor(0, 8), 1500, 0.05, true);
    ToolkitParams tp;
    tp.window_ms = 248;  // 31 slots
    tp.taps = taps;
    CompiledPlan plan = compile(make_toolkit_query("passfilter", in.desc, tp));
    Interval r{1000, 11000};
    RefStream got = ref::clip_range(ref::run_query(plan, {in}, r), r);
    RefStream oracle = ref::clip_range(ref::pass_filter(in, taps), r);
    if (got.events.size() != oracle.events.size()) {
      *msg = "FIR event count mismatch";
      return false;
    }
    for (size_t i = 0; i < got.events.size(); ++i) {
      const double a = got.events[i].payload[0], b = oracle.events[i].payload[0];
      if (std::fabs(a - b) > 1e-6 * std::max(1.0, std::fabs(b))) {
        *msg = "FIR deviates at sync " + std::to_string(got.events[i].sync);
        return false;
      }
    }
  }
  // resample of an affine ramp is exact
  {
    RefStream ramp;
    ramp.desc = make_descriptor(0, 8);
    for (TimeMs t = 0; t <= 400; t += 8) {
      Event e;
      e.present = true;
      e.sync = t;
      e.duration = 8;
      e.payload[0] = static_cast<float>(3 * t + 5);
      ramp.events.push_back(e);
    }
    ToolkitParams tp;
    tp.target_period = 2;
    CompiledPlan plan = compile(make_toolkit_query("resample", ramp.desc, tp));
    RefStream out = ref::run_query(plan, {ramp}, {0, 400});
    for (const Event& e : out.events) {
      if (e.payload[0] != static_cast<float>(3 * e.sync + 5)) {
        *msg = "resampled ramp not exact at sync " + std::to_string(e.sync);
        return false;
      }
    }
    if (out.events.empty()) {
      *msg = "resample produced nothing";
      return false;
    }
  }
  // fills match the reference implementations exactly
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RefStream in = rand_stream(seed + 4000, 0, 2, 1000, 0.35, true);
    Interval r = interior(in, 100);
    if (r.empty()) continue;
    OpParams p;
    p.gap_limit = 12;
    p.fill_value = 9.f;
    std::string diff;
    if (!streams_match(ref::fill_const(in, 12, 9.f),
                       ref::run_engine_op(OpKind::FillConst, p, {in}, r), r, &diff)) {
      *msg = "fill-const seed " + std::to_string(seed) + ": " + diff;
      return false;
    }
    OpParams p2;
    p2.w = 20;
    if (!streams_match(ref::fill_mean(in, 20),
                       ref::run_engine_op(OpKind::FillMean, p2, {in}, r), r, &diff)) {
      *msg = "fill-mean seed " + std::to_string(seed) + ": " + diff;
      return false;
    }
  }
  *msg = "normalize/FIR/resample/fill checks within pinned tolerances";
  return true;
}

// ---------------------------------------------------------------------------
// 9. determinism

bool criterion9(std::string* msg) {
  GenSpec gs;
  gs.seed = 47;
  gs.frequencies_hz = {500, 125};
  gs.duration_minutes = 0.2;
  GenOutput a = generate(gs);
  GenOutput b = generate(gs);
  for (size_t i = 0; i < a.streams.size(); ++i) {
    write_csv(a.streams[i], "acc9_a.csv");
    write_csv(b.streams[i], "acc9_b.csv");
    const bool same = file_bytes("acc9_a.csv") == file_bytes("acc9_b.csv");
    std::remove("acc9_a.csv");
    std::remove("acc9_b.csv");
    if (!same) {
      *msg = "generated stream " + std::to_string(i) + " differs between runs";
      return false;
    }
  }
  CompiledPlan p1 = compile(make_endtoend_query(ToolkitParams{}));
  CompiledPlan p2 = compile(make_endtoend_query(ToolkitParams{}));
  if (p1.plan_dump() != p2.plan_dump()) {
    *msg = "plan dump differs between compilations";
    return false;
  }
  ToolkitParams tp;
  tp.window_ms = 1000;
  CompiledPlan plan = compile(make_endtoend_query(tp));
  auto sink_once = [&](const std::string& path) {
    Execution ex(plan, {&a.streams[0], &a.streams[1]});
    CsvSink sink(path);
    ex.run_eager(a.range, sink);
  };
  sink_once("acc9_s1.csv");
  sink_once("acc9_s2.csv");
  const bool same = file_bytes("acc9_s1.csv") == file_bytes("acc9_s2.csv");
  std::remove("acc9_s1.csv");
  std::remove("acc9_s2.csv");
  if (!same) {
    *msg = "sink CSV differs between identical runs";
    return false;
  }
  *msg = "generated data, sink files and plan dumps byte-identical across runs";
  return true;
}

// ---------------------------------------------------------------------------
// 10. parallel scaling sanity

bool criterion10(std::string* msg) {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  std::ostringstream detail;
  double prev = 0;
  for (unsigned n = 1; n <= cores; n *= 2) {
    BenchRequest br;
    br.bench = "fillconst";
    br.seed = 53;
    br.duration_minutes = 2;
    br.window_ms = 1000;
    br.trials = 3;
    br.parallel = static_cast<int>(n);
    const double thr = run_bench(br).throughput_events_per_sec;
    detail << " N=" << n << ":" << static_cast<std::int64_t>(thr);
    if (prev > 0 && thr < prev * 0.85) {
      *msg = "throughput decreased at parallel " + std::to_string(n) + ":" + detail.str();
      return false;
    }
    prev = thr;
  }
  *msg = "aggregate throughput non-decreasing up to " + std::to_string(cores) +
         " core(s):" + detail.str();
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    bool (*fn)(std::string*);
  };
  const Criterion criteria[] = {
      {"operator oracle equivalence", criterion1},
      {"eager/targeted equivalence", criterion2},
      {"locality tracing", criterion3},
      {"static memory (zero steady-state allocation)", criterion4},
      {"targeted skipping vs overlap", criterion5},
      {"divergent availability memory safety", criterion6},
      {"shape detection", criterion7},
      {"toolkit numerics", criterion8},
      {"determinism", criterion9},
      {"parallel scaling sanity", criterion10},
  };
  int failures = 0;
  for (size_t i = 0; i < sizeof(criteria) / sizeof(criteria[0]); ++i) {
    std::string msg;
    bool ok = false;
    const double t0 = now_ms();
    try {
      ok = criteria[i].fn(&msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    const double secs = (now_ms() - t0) / 1000.0;
    std::printf("CRITERION %zu %s — %s: %s (%.1fs)\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].title, msg.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
