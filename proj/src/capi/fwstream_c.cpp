#include "fwstream/fwstream.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "bench/bench.hpp"

using nlohmann::json;

struct fws_engine {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(fws_engine* e, const char* request, char** response, Fn&& fn) {
  if (!e) return static_cast<int>(fws::Status::Usage);
  if (response) *response = nullptr;
  if (!request || !response) {
    e->last_error = "null request or response pointer";
    return static_cast<int>(fws::Status::Usage);
  }
  try {
    json req = json::parse(request);
    json rep = fn(req);
    *response = dup_string(rep.dump());
    if (!*response) {
      e->last_error = "out of memory";
      return static_cast<int>(fws::Status::Internal);
    }
    return 0;
  } catch (const json::exception& ex) {
    e->last_error = std::string("bad request JSON: ") + ex.what();
    return static_cast<int>(fws::Status::Usage);
  } catch (const fws::EngineError& ex) {
    e->last_error = ex.what();
    return static_cast<int>(ex.status());
  } catch (const std::exception& ex) {
    e->last_error = ex.what();
    return static_cast<int>(fws::Status::Internal);
  }
}

fws::ToolkitParams toolkit_params(const json& req) {
  fws::ToolkitParams tp;
  tp.window_ms = req.value("windowMs", std::int64_t{60000});
  tp.gap_limit = req.value("gapLimit", std::int64_t{0});
  tp.fill_value = req.value("fillValue", 0.f);
  tp.target_period = req.value("targetPeriod", std::int64_t{2});
  if (req.contains("taps"))
    tp.taps = req.at("taps").get<std::vector<float>>();
  return tp;
}

}  // namespace

extern "C" {

int fws_engine_create(fws_engine** out) {
  if (!out) return static_cast<int>(fws::Status::Usage);
  *out = new (std::nothrow) fws_engine();
  return *out ? 0 : static_cast<int>(fws::Status::Internal);
}

void fws_engine_destroy(fws_engine* e) { delete e; }

const char* fws_engine_last_error(const fws_engine* e) {
  return e ? e->last_error.c_str() : "null engine";
}

void fws_buffer_free(char* buf) { ::free(buf); }

int fws_gen(fws_engine* e, const char* request, char** response) {
  return guarded(e, request, response, [](const json& req) {
    fws::GenSpec spec;
    spec.seed = req.value("seed", std::uint64_t{42});
    if (req.contains("frequencies"))
      spec.frequencies_hz = req.at("frequencies").get<std::vector<double>>();
    spec.duration_minutes = req.value("durationMinutes", 1.0);
    spec.waveform = req.value("waveform", std::string("random-uniform"));
    spec.overlap_fraction = req.value("overlapFraction", 1.0);
    spec.segment_count = req.value("segmentCount", 10);
    spec.divergent = req.value("divergent", false);
    spec.inject_count = req.value("injectCount", 0);
    spec.window_ms = req.value("windowMs", std::int64_t{60000});
    const std::string prefix = req.value("out", std::string());
    fws::require(!prefix.empty(), fws::Status::Usage, "gen request needs an \"out\" path prefix");

    fws::GenOutput data = fws::generate(spec);
    json files = json::array();
    std::int64_t events = 0;
    for (size_t i = 0; i < data.streams.size(); ++i) {
      const std::string path = data.streams.size() == 1
                                   ? prefix + ".csv"
                                   : prefix + "." + std::to_string(i) + ".csv";
      fws::write_csv(data.streams[i], path);
      files.push_back(path);
      events += data.streams[i].size();
    }
    json rep{{"files", files}, {"events", events}};
    if (!data.truth.empty()) {
      const std::string tp = prefix + ".truth.csv";
      FILE* f = std::fopen(tp.c_str(), "w");
      fws::require(f != nullptr, fws::Status::Usage, "cannot open output file: " + tp);
      for (const fws::Interval& iv : data.truth)
        std::fprintf(f, "%lld,%lld\n", static_cast<long long>(iv.lo),
                     static_cast<long long>(iv.hi));
      std::fclose(f);
      rep["truthFile"] = tp;
    }
    return rep;
  });
}

int fws_plan(fws_engine* e, const char* request, char** response) {
  return guarded(e, request, response, [](const json& req) {
    const std::string name = req.value("query", std::string("listing1"));
    fws::Query q = fws::make_query_by_name(name, toolkit_params(req));
    fws::CompiledPlan plan = fws::compile(std::move(q));
    json log = json::array();
    for (const std::string& l : plan.trace_log) log.push_back(l);
    return json{{"dimension", plan.dimension()},
                {"totalBytes", plan.memory.total_bytes},
                {"planDump", plan.plan_dump()},
                {"traceLog", log}};
  });
}

int fws_bench(fws_engine* e, const char* request, char** response) {
  return guarded(e, request, response, [](const json& req) {
    fws::BenchRequest br;
    br.bench = req.value("bench", std::string("endtoend"));
    br.engine = req.value("engine", std::string("eager"));
    br.seed = req.value("seed", std::uint64_t{42});
    br.duration_minutes = req.value("durationMinutes", 1.0);
    br.overlap_fraction = req.value("overlapFraction", 1.0);
    br.segment_count = req.value("segmentCount", 10);
    br.divergent = req.value("divergent", false);
    br.waveform = req.value("waveform", std::string("random-uniform"));
    br.window_ms = req.value("windowMs", std::int64_t{60000});
    br.trials = req.value("trials", 10);
    br.parallel = req.value("parallel", 1);
    br.out = req.value("out", std::string());
    if (req.contains("data"))
      br.data_files = req.at("data").get<std::vector<std::string>>();
    br.tp = toolkit_params(req);

    fws::BenchReport rep = fws::run_bench(br);
    json trials = json::array();
    for (const fws::TrialMetrics& t : rep.trials) {
      trials.push_back(json{{"bench", rep.bench},
                            {"engine", rep.engine},
                            {"events", t.events_in},
                            {"wallMs", t.wall_ms},
                            {"throughputEventsPerSec",
                             t.wall_ms > 0 ? static_cast<double>(t.events_in) * 1000.0 / t.wall_ms
                                           : 0.0},
                            {"eventsOut", t.stats.events_out},
                            {"windowsTotal", t.stats.windows_total},
                            {"windowsProcessed", t.stats.windows_processed},
                            {"windowsSkipped", t.stats.windows_skipped},
                            {"steadyStateAllocations", t.stats.steady_alloc_count},
                            {"steadyStateAllocBytes", t.stats.steady_alloc_bytes},
                            {"outputChecksum", t.checksum}});
    }
    return json{{"bench", rep.bench},
                {"engine", rep.engine},
                {"trials", trials},
                {"summary", json{{"meanWallMs", rep.mean_wall_ms},
                                 {"stdWallMs", rep.std_wall_ms},
                                 {"throughputEventsPerSec", rep.throughput_events_per_sec},
                                 {"memoryPlanBytes", rep.memory_plan_bytes}}}};
  });
}

int fws_detect(fws_engine* e, const char* request, char** response) {
  return guarded(e, request, response, [](const json& req) {
    fws::DetectRequest dr;
    dr.seed = req.value("seed", std::uint64_t{42});
    dr.duration_minutes = req.value("durationMinutes", 1.0);
    dr.frequency_hz = req.value("frequencyHz", 125.0);
    dr.inject_count = req.value("injectCount", 49);
    dr.mp.radius = req.value("radius", -1);
    dr.mp.hop = req.value("hop", -1);
    dr.mp.threshold = req.value("threshold", 0.3);
    dr.mp.normalize = req.value("normalize", true);
    dr.template_file = req.value("template", std::string());
    dr.mode = req.value("mode", std::string("none"));
    dr.out = req.value("out", std::string());
    dr.data_file = req.value("data", std::string());

    fws::DetectReport rep = fws::run_detect(dr);
    json matches = json::array();
    for (const fws::Interval& m : rep.matches)
      matches.push_back(json::array({m.lo, m.hi}));
    json out{{"matches", matches},
             {"evaluations", rep.evaluations},
             {"wallMs", rep.wall_ms}};
    if (rep.have_truth) {
      out["recall"] = rep.recall;
      out["fpFraction"] = rep.fp_fraction;
    }
    return out;
  });
}

}  // extern "C"
