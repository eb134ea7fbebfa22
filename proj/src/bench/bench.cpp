#include "bench/bench.hpp"

#include <chrono>
#include <cmath>
#include <thread>

namespace fws {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

class TeeSink : public Sink {
 public:
  TeeSink(Sink* a, Sink* b) : a_(a), b_(b) {}
  void consume(const FWindow& w) override {
    if (a_) a_->consume(w);
    if (b_) b_->consume(w);
  }

 private:
  Sink *a_, *b_;
};

}  // namespace

std::vector<double> bench_frequencies(const std::string& name) {
  if (name == "endtoend") return {500, 125};
  if (name == "listing1") return {500, 200};
  if (name == "resample") return {125};
  return {500};  // normalize, passfilter, fillconst, fillmean, identity
}

Query build_bench_query(const std::string& name, const ToolkitParams& tp) {
  if (name == "resample") {
    ToolkitParams p = tp;
    return make_toolkit_query("resample", make_descriptor(0, 8), p);
  }
  return make_query_by_name(name, tp);
}

BenchReport run_bench(const BenchRequest& req) {
  require(req.trials >= 1, Status::Usage, "trials must be >= 1");
  require(req.parallel >= 1, Status::Usage, "parallel must be >= 1");
  require(req.engine == "eager" || req.engine == "targeted", Status::Usage,
          "engine must be eager or targeted");

  ToolkitParams tp = req.tp;
  tp.window_ms = req.window_ms;

  const int shards = req.parallel;
  std::vector<GenOutput> data(static_cast<size_t>(shards));
  std::vector<CompiledPlan> plans;
  plans.reserve(static_cast<size_t>(shards));
  std::int64_t events_in = 0;
  for (int s = 0; s < shards; ++s) {
    GenSpec gs;
    gs.seed = req.seed + static_cast<std::uint64_t>(s);
    gs.frequencies_hz = bench_frequencies(req.bench);
    gs.duration_minutes = req.duration_minutes;
    gs.waveform = req.waveform;
    gs.overlap_fraction = req.overlap_fraction;
    gs.segment_count = req.segment_count;
    gs.divergent = req.divergent;
    gs.window_ms = req.window_ms;
    data[static_cast<size_t>(s)] = generate(gs);
    if (!req.data_files.empty()) {
      require(shards == 1, Status::Usage, "supplied data files imply --parallel 1");
      require(req.data_files.size() == gs.frequencies_hz.size(), Status::Usage,
              "query needs " + std::to_string(gs.frequencies_hz.size()) + " input file(s)");
      GenOutput& d = data[0];
      for (size_t i = 0; i < req.data_files.size(); ++i) {
        SourceData loaded = ingest_csv(req.data_files[i], d.streams[i].desc);
        d.streams[i] = std::move(loaded);
      }
      Interval ext = d.streams[0].extent();
      for (const SourceData& sd : d.streams) {
        const Interval e = sd.extent();
        ext.lo = std::min(ext.lo, e.lo);
        ext.hi = std::max(ext.hi, e.hi);
      }
      d.range = Interval{align_down(ext.lo, 0, req.window_ms),
                         align_up(ext.hi, 0, req.window_ms)};
    }
    for (const SourceData& sd : data[static_cast<size_t>(s)].streams) events_in += sd.size();
    plans.push_back(compile(build_bench_query(req.bench, tp)));
  }

  BenchReport rep;
  rep.bench = req.bench;
  rep.engine = req.engine;
  rep.memory_plan_bytes = plans[0].memory.total_bytes * shards;
  rep.plan_dump = plans[0].plan_dump();

  const bool targeted = req.engine == "targeted";
  for (int trial = 0; trial < req.trials; ++trial) {
    TrialMetrics tm;
    tm.events_in = events_in;
    std::vector<ChecksumSink> sums(static_cast<size_t>(shards));
    std::vector<ExecutionStats> stats(static_cast<size_t>(shards));
    std::unique_ptr<CsvSink> csv;
    if (!req.out.empty() && trial == 0 && shards == 1) csv = std::make_unique<CsvSink>(req.out);

    auto run_shard = [&](int s) {
      const GenOutput& d = data[static_cast<size_t>(s)];
      std::vector<const SourceData*> srcs;
      for (const SourceData& sd : d.streams) srcs.push_back(&sd);
      Execution ex(plans[static_cast<size_t>(s)], srcs);
      Sink* sink = &sums[static_cast<size_t>(s)];
      TeeSink tee(&sums[static_cast<size_t>(s)], csv.get());
      if (csv && s == 0) sink = &tee;
      stats[static_cast<size_t>(s)] =
          targeted ? ex.run_targeted(d.range, *sink) : ex.run_eager(d.range, *sink);
    };

    const double t0 = now_ms();
    if (shards == 1) {
      run_shard(0);
    } else {
      std::vector<std::thread> threads;
      for (int s = 0; s < shards; ++s) threads.emplace_back(run_shard, s);
      for (auto& t : threads) t.join();
    }
    tm.wall_ms = now_ms() - t0;

    for (int s = 0; s < shards; ++s) {
      const ExecutionStats& st = stats[static_cast<size_t>(s)];
      tm.stats.windows_total += st.windows_total;
      tm.stats.windows_processed += st.windows_processed;
      tm.stats.windows_skipped += st.windows_skipped;
      tm.stats.events_out += st.events_out;
      tm.stats.steady_alloc_count += st.steady_alloc_count;
      tm.stats.steady_alloc_bytes += st.steady_alloc_bytes;
      tm.checksum ^= sums[static_cast<size_t>(s)].checksum() + 0x9e3779b97f4a7c15ull * (s + 1);
    }
    rep.trials.push_back(tm);
  }

  double sum = 0, sumsq = 0;
  for (const TrialMetrics& tm : rep.trials) {
    sum += tm.wall_ms;
    sumsq += tm.wall_ms * tm.wall_ms;
  }
  const double n = static_cast<double>(rep.trials.size());
  rep.mean_wall_ms = sum / n;
  rep.std_wall_ms = std::sqrt(std::max(0.0, sumsq / n - rep.mean_wall_ms * rep.mean_wall_ms));
  rep.throughput_events_per_sec =
      rep.mean_wall_ms > 0 ? static_cast<double>(events_in) * 1000.0 / rep.mean_wall_ms : 0;
  return rep;
}

DetectReport run_detect(const DetectRequest& req) {
  const TimeMs period = period_from_hz(req.frequency_hz);
  ShapeTemplate tmpl;
  tmpl.values =
      req.template_file.empty() ? builtin_line_zero_template()
                                : ShapeTemplate::load(req.template_file).values;
  require(tmpl.m() >= 2, Status::Usage, "empty shape template");

  GenOutput data;
  if (req.data_file.empty()) {
    GenSpec gs;
    gs.seed = req.seed;
    gs.frequencies_hz = {req.frequency_hz};
    gs.duration_minutes = req.duration_minutes;
    gs.inject_count = req.inject_count;
    gs.inject_template = tmpl.values;
    data = generate(gs);
  } else {
    data.streams.push_back(ingest_csv(req.data_file, make_descriptor(0, period)));
    data.range = data.streams[0].extent();
  }
  const SourceData& sd = data.streams[0];

  const double t0_ms = [] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }();

  ShapeScanner scanner(tmpl, req.mp, sd.desc);
  const Interval ext = sd.extent();
  std::int64_t idx = 0;
  for (TimeMs t = ext.lo; t < ext.hi; t += period) {
    const bool present =
        idx < sd.size() && sd.sync[static_cast<size_t>(idx)] == t;
    scanner.feed_slot(t, present, present ? sd.payload[static_cast<size_t>(idx)] : 0.f);
    if (present) ++idx;
  }

  DetectReport rep;
  rep.matches = scanner.matches();
  rep.evaluations = scanner.evaluations();
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count() -
                t0_ms;

  if (!data.truth.empty()) {
    rep.have_truth = true;
    std::int64_t hit = 0;
    for (const Interval& tr : data.truth)
      for (const Interval& m : rep.matches)
        if (m.intersects(tr)) {
          ++hit;
          break;
        }
    rep.recall = static_cast<double>(hit) / static_cast<double>(data.truth.size());
    // matched duration lying outside any truth interval
    std::int64_t fp = 0;
    for (const Interval& m : rep.matches) {
      std::int64_t covered = 0;
      for (const Interval& tr : data.truth) {
        const TimeMs lo = std::max(m.lo, tr.lo), hi = std::min(m.hi, tr.hi);
        if (hi > lo) covered += hi - lo;
      }
      fp += m.length() - covered;
    }
    rep.fp_fraction = ext.length() > 0
                          ? static_cast<double>(fp) / static_cast<double>(ext.length())
                          : 0;
  }

  if (!req.out.empty()) {
    FILE* f = std::fopen(req.out.c_str(), "w");
    if (!f) fail(Status::Usage, "cannot open output file: " + req.out);
    for (const Interval& m : rep.matches)
      std::fprintf(f, "%lld,%lld\n", static_cast<long long>(m.lo),
                   static_cast<long long>(m.hi));
    std::fclose(f);
    if (req.mode == "drop" || req.mode == "keep") {
      const bool keep = req.mode == "keep";
      FILE* g = std::fopen((req.out + ".filtered.csv").c_str(), "w");
      if (!g) fail(Status::Usage, "cannot open output file: " + req.out + ".filtered.csv");
      for (std::int64_t i = 0; i < sd.size(); ++i) {
        const TimeMs t = sd.sync[static_cast<size_t>(i)];
        bool inside = false;
        for (const Interval& m : rep.matches)
          if (t >= m.lo && t < m.hi) {
            inside = true;
            break;
          }
        if (inside == keep)
          std::fprintf(g, "%lld,%.9g\n", static_cast<long long>(t),
                       static_cast<double>(sd.payload[static_cast<size_t>(i)]));
      }
      std::fclose(g);
    }
  }
  return rep;
}

}  // namespace fws
