#include "bench/gen.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace fws {

TimeMs period_from_hz(double hz) {
  require(hz > 0, Status::Usage, "frequency must be positive");
  const double p = 1000.0 / hz;
  const TimeMs ip = static_cast<TimeMs>(std::llround(p));
  if (ip < 1 || std::fabs(p - static_cast<double>(ip)) > 1e-9)
    fail(Status::Usage, "frequency " + std::to_string(hz) + " Hz has no integer-ms period");
  return ip;
}

namespace {

// deterministic unit double in [0,1) from the standardized mt19937_64 stream
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

float sample_value(const GenSpec& spec, std::mt19937_64& rng, TimeMs t) {
  if (spec.waveform == "sine+noise") {
    const double ts = static_cast<double>(t) / 1000.0;
    return static_cast<float>(100.0 + 20.0 * std::sin(2.0 * M_PI * 1.2 * ts) +
                              5.0 * (next_unit(rng) - 0.5));
  }
  return static_cast<float>(100.0 * next_unit(rng));  // random-uniform
}

std::vector<Interval> segment_layout(TimeMs total, double f, int count, TimeMs align) {
  if (f >= 1.0) return {Interval{0, total}};
  require(f >= 0, Status::Usage, "overlap fraction must be in [0, 1]");
  require(count >= 1, Status::Usage, "segment count must be >= 1");
  const TimeMs span = (total / count / align) * align;
  require(span >= align, Status::Usage, "duration too short for the segment count");
  const TimeMs on = static_cast<TimeMs>(std::llround(f * static_cast<double>(span) /
                                                     static_cast<double>(align))) *
                    align;
  std::vector<Interval> segs;
  for (int i = 0; i < count; ++i) {
    const TimeMs lo = i * span;
    if (on > 0) segs.push_back(Interval{lo, lo + on});
  }
  return segs;
}

}  // namespace

std::vector<float> builtin_line_zero_template() {
  // fall from baseline pressure to a flat zero plateau, then recover
  return {100.f, 101.f, 102.f, 80.f, 50.f, 20.f, 5.f, 1.f, 0.f, 0.f, 0.f, 0.f, 0.f,
          0.f,   0.f,   0.f,   1.f,  5.f,  20.f, 50.f, 80.f, 100.f, 101.f, 100.f};
}

GenOutput generate(const GenSpec& spec) {
  require(!spec.frequencies_hz.empty(), Status::Usage, "at least one stream frequency required");
  const TimeMs total = static_cast<TimeMs>(std::llround(spec.duration_minutes * 60000.0));
  require(total > 0, Status::Usage, "duration must be positive");

  GenOutput out;
  TimeMs used = total;
  const size_t n_streams = spec.frequencies_hz.size();
  for (size_t si = 0; si < n_streams; ++si) {
    const TimeMs period = period_from_hz(spec.frequencies_hz[si]);
    SourceData data(make_descriptor(0, period));
    std::mt19937_64 rng(spec.seed ^ (0x9e3779b97f4a7c15ull * (si + 1)));

    std::vector<Interval> segs;
    if (spec.divergent) {
      require(n_streams == 2, Status::Usage, "divergent mode needs exactly two streams");
      const TimeMs half = align_down(total / 2, 0, spec.window_ms);
      segs = {si == 0 ? Interval{0, half} : Interval{half, total}};
    } else if (si + 1 == n_streams) {
      segs = segment_layout(total, spec.overlap_fraction, spec.segment_count, spec.window_ms);
      if (spec.overlap_fraction < 1.0)
        used = std::min(used, (total / spec.segment_count / spec.window_ms) * spec.window_ms *
                                  spec.segment_count);
    } else {
      segs = {Interval{0, total}};
    }

    for (const Interval& seg : segs)
      for (TimeMs t = seg.lo; t < seg.hi; t += period)
        data.push_scalar(t, sample_value(spec, rng, t));
    out.streams.push_back(std::move(data));
  }

  if (spec.inject_count > 0) {
    std::vector<float> tmpl =
        spec.inject_template.empty() ? builtin_line_zero_template() : spec.inject_template;
    SourceData& s0 = out.streams[0];
    const TimeMs p = s0.desc.period;
    const std::int64_t m = static_cast<std::int64_t>(tmpl.size());
    const std::int64_t slots = total / p;
    require(slots > (m + 2) * (spec.inject_count + 1), Status::Usage,
            "stream too short for the requested injection count");
    for (int k = 0; k < spec.inject_count; ++k) {
      const std::int64_t start_slot = (slots * (k + 1)) / (spec.inject_count + 1);
      const TimeMs start = start_slot * p;
      for (std::int64_t j = 0; j < m; ++j) {
        const TimeMs t = start + j * p;
        const std::int64_t idx = s0.lower_bound(t);
        if (idx < s0.size() && s0.sync[static_cast<size_t>(idx)] == t)
          s0.payload[static_cast<size_t>(idx)] = tmpl[static_cast<size_t>(j)];
      }
      out.truth.push_back(Interval{start, start + m * p});
    }
  }

  out.range = Interval{0, used};
  return out;
}

void write_csv(const SourceData& s, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) fail(Status::Usage, "cannot open output file: " + path);
  const int lanes = lanes_of(s.desc.payload);
  for (std::int64_t i = 0; i < s.size(); ++i) {
    if (lanes == 1)
      std::fprintf(f, "%lld,%.9g\n", static_cast<long long>(s.sync[static_cast<size_t>(i)]),
                   static_cast<double>(s.payload[static_cast<size_t>(i)]));
    else
      std::fprintf(f, "%lld,%.9g,%.9g\n", static_cast<long long>(s.sync[static_cast<size_t>(i)]),
                   static_cast<double>(s.payload[static_cast<size_t>(i * 2)]),
                   static_cast<double>(s.payload[static_cast<size_t>(i * 2 + 1)]));
  }
  std::fclose(f);
}

}  // namespace fws
