// Command-line front end. Talks to the engine exclusively through the C API;
// flags are assembled into JSON requests and responses are re-emitted as
// JSON lines.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwstream/fwstream.h"

using nlohmann::json;

namespace {

struct Engine {
  fws_engine* e = nullptr;
  Engine() { fws_engine_create(&e); }
  ~Engine() { fws_engine_destroy(e); }
};

int call(fws_engine* e, int (*fn)(fws_engine*, const char*, char**), const json& req,
         json* out) {
  char* resp = nullptr;
  const int rc = fn(e, req.dump().c_str(), &resp);
  if (rc != 0) {
    std::fprintf(stderr, "error: %s\n", fws_engine_last_error(e));
    return rc;
  }
  *out = json::parse(resp);
  fws_buffer_free(resp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal query engine for periodic event streams"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::int64_t window_ms = 60000;
  std::string out_path;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--window-ms", window_ms, "window size in ms")->capture_default_str();
  app.add_option("--out", out_path, "output path (or prefix)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate synthetic CSV data");
  std::vector<double> frequencies{500};
  double duration_min = 1, overlap = 1.0;
  int segments = 10, inject = 0;
  std::string waveform = "random-uniform";
  bool divergent = false;
  gen->add_option("--frequency", frequencies, "stream frequencies in Hz")
      ->capture_default_str();
  gen->add_option("--minutes", duration_min, "duration in minutes")->capture_default_str();
  gen->add_option("--waveform", waveform, "random-uniform | sine+noise")
      ->capture_default_str();
  gen->add_option("--overlap", overlap, "availability fraction of the last stream")
      ->capture_default_str();
  gen->add_option("--segments", segments, "availability segment count")->capture_default_str();
  gen->add_flag("--divergent", divergent, "two streams covering disjoint halves");
  gen->add_option("--inject", inject, "number of shape templates to embed");

  // bench
  auto* bench = app.add_subcommand("bench", "run a named pipeline and report metrics");
  std::string bench_name = "endtoend", engine_kind = "eager";
  int trials = 10, parallel = 1;
  std::int64_t gap_limit = 0, target_period = 2;
  double fill_value = 0;
  std::vector<std::string> data_files;
  bench->add_option("name", bench_name,
                    "normalize|passfilter|fillconst|fillmean|resample|endtoend|listing1")
      ->required();
  bench->add_option("--engine", engine_kind, "eager | targeted")->capture_default_str();
  bench->add_option("--trials", trials, "trial count")->capture_default_str();
  bench->add_option("--parallel", parallel, "independent shards")->capture_default_str();
  bench->add_option("--minutes", duration_min, "data duration in minutes")
      ->capture_default_str();
  bench->add_option("--overlap", overlap, "availability fraction")->capture_default_str();
  bench->add_option("--segments", segments, "availability segment count")
      ->capture_default_str();
  bench->add_flag("--divergent", divergent, "divergent two-stream availability");
  bench->add_option("--waveform", waveform, "random-uniform | sine+noise");
  bench->add_option("--gap-limit", gap_limit, "fill gap limit in ms (0 = window)");
  bench->add_option("--fill-value", fill_value, "fillconst payload");
  bench->add_option("--target-period", target_period, "resample target period in ms");
  bench->add_option("--data", data_files, "pre-generated input CSV file(s)");

  // detect
  auto* detect = app.add_subcommand("detect", "scan a stream for a shape template");
  std::string template_file, detect_mode = "none", detect_data;
  double frequency_hz = 125, threshold = 0.3;
  int radius = -1, hop = -1;
  bool no_normalize = false;
  detect->add_option("--template", template_file, "template file, one float per line");
  detect->add_option("--data", detect_data, "input CSV (default: generated with injections)");
  detect->add_option("--minutes", duration_min, "generated duration in minutes");
  detect->add_option("--frequency", frequency_hz, "stream frequency in Hz")
      ->capture_default_str();
  detect->add_option("--inject", inject, "injected template count for generated data");
  detect->add_option("--radius", radius, "DTW band radius in slots (-1 = default)");
  detect->add_option("--hop", hop, "slots between evaluated starts (-1 = default)");
  detect->add_option("--threshold", threshold, "normalized distance cutoff")
      ->capture_default_str();
  detect->add_flag("--no-normalize", no_normalize, "disable z-normalization");
  detect->add_option("--mode", detect_mode, "none | drop | keep")->capture_default_str();

  // plan
  auto* plan = app.add_subcommand("plan", "print the compiled plan of a named query");
  std::string query_name = "listing1";
  bool show_trace = false;
  plan->add_option("name", query_name, "listing1|endtoend|identity|<toolkit op>")
      ->capture_default_str();
  plan->add_flag("--trace", show_trace, "also print the locality trace log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 1;
  }

  Engine eng;
  if (!eng.e) {
    std::fprintf(stderr, "error: engine creation failed\n");
    return 3;
  }

  json rep;
  if (gen->parsed()) {
    if (out_path.empty()) {
      std::fprintf(stderr, "error: gen requires --out\n");
      return 1;
    }
    json req{{"seed", seed},          {"frequencies", frequencies},
             {"durationMinutes", duration_min}, {"waveform", waveform},
             {"overlapFraction", overlap},      {"segmentCount", segments},
             {"divergent", divergent},          {"injectCount", inject},
             {"windowMs", window_ms},           {"out", out_path}};
    if (inject > 0) req["frequencies"] = std::vector<double>{frequency_hz};
    const int rc = call(eng.e, fws_gen, req, &rep);
    if (rc != 0) return rc;
    std::printf("%s\n", rep.dump().c_str());
  } else if (bench->parsed()) {
    json req{{"bench", bench_name},
             {"engine", engine_kind},
             {"seed", seed},
             {"durationMinutes", duration_min},
             {"overlapFraction", overlap},
             {"segmentCount", segments},
             {"divergent", divergent},
             {"waveform", waveform},
             {"windowMs", window_ms},
             {"trials", trials},
             {"parallel", parallel},
             {"gapLimit", gap_limit},
             {"fillValue", fill_value},
             {"targetPeriod", target_period}};
    if (!out_path.empty()) req["out"] = out_path;
    if (!data_files.empty()) req["data"] = data_files;
    const int rc = call(eng.e, fws_bench, req, &rep);
    if (rc != 0) return rc;
    for (const json& t : rep["trials"]) std::printf("%s\n", t.dump().c_str());
    json summary = rep["summary"];
    summary["bench"] = rep["bench"];
    summary["engine"] = rep["engine"];
    std::printf("%s\n", summary.dump().c_str());
  } else if (detect->parsed()) {
    json req{{"seed", seed},
             {"durationMinutes", duration_min},
             {"frequencyHz", frequency_hz},
             {"injectCount", inject > 0 ? inject : 49},
             {"radius", radius},
             {"hop", hop},
             {"threshold", threshold},
             {"normalize", !no_normalize},
             {"mode", detect_mode}};
    if (!template_file.empty()) req["template"] = template_file;
    if (!detect_data.empty()) req["data"] = detect_data;
    if (!out_path.empty()) req["out"] = out_path;
    const int rc = call(eng.e, fws_detect, req, &rep);
    if (rc != 0) return rc;
    std::printf("%s\n", rep.dump().c_str());
  } else if (plan->parsed()) {
    json req{{"query", query_name}, {"windowMs", window_ms}};
    const int rc = call(eng.e, fws_plan, req, &rep);
    if (rc != 0) return rc;
    if (show_trace)
      for (const json& l : rep["traceLog"])
        std::printf("%s\n", l.get<std::string>().c_str());
    std::printf("%s", rep["planDump"].get<std::string>().c_str());
  }
  return 0;
}
