#include "run/source.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fws {

void AvailabilityIndex::add(TimeMs s, TimeMs period) {
  TimeMs end = s + period;
  if (!segments_.empty() && s <= segments_.back().hi + merge_gap_) {
    if (end > segments_.back().hi) segments_.back().hi = end;
    return;
  }
  segments_.push_back(Interval{s, end});
}

bool AvailabilityIndex::covers_any(const Interval& iv) const {
  if (iv.empty()) return false;
  // first segment with hi > iv.lo
  auto it = std::upper_bound(segments_.begin(), segments_.end(), iv.lo,
                             [](TimeMs t, const Interval& s) { return t < s.hi; });
  return it != segments_.end() && it->lo < iv.hi;
}

TimeMs AvailabilityIndex::next_available(TimeMs t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](TimeMs v, const Interval& s) { return v < s.hi; });
  if (it == segments_.end()) return kNone;
  return std::max(t, it->lo);
}

void SourceData::push(TimeMs t, std::int64_t dur, const float* p) {
  if (!desc.on_grid(t)) {
    ++rejected_offgrid;
    return;
  }
  require(dur > 0 && dur <= desc.period, Status::Data,
          "event duration " + std::to_string(dur) + " outside (0, period] at sync " +
              std::to_string(t));
  const int lanes = lanes_of(desc.payload);
  if (!sync.empty()) {
    require(t >= sync.back(), Status::Data,
            "out-of-order sync " + std::to_string(t) + " after " + std::to_string(sync.back()));
    if (t == sync.back()) {  // duplicate: last wins
      duration.back() = dur;
      std::memcpy(&payload[payload.size() - static_cast<size_t>(lanes)], p,
                  sizeof(float) * static_cast<size_t>(lanes));
      ++deduplicated;
      return;
    }
  }
  sync.push_back(t);
  duration.push_back(dur);
  payload.insert(payload.end(), p, p + lanes);
  avail.add(t, desc.period);
}

Interval SourceData::extent() const {
  if (sync.empty()) return Interval{0, 0};
  return Interval{sync.front(), sync.back() + desc.period};
}

std::int64_t SourceData::lower_bound(TimeMs t) const {
  return std::lower_bound(sync.begin(), sync.end(), t) - sync.begin();
}

SourceData ingest_csv(const std::string& path, const StreamDescriptor& desc, TimeMs merge_gap) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (!f) fail(Status::Usage, "cannot open input file: " + path);
  SourceData data(desc, merge_gap);
  const int lanes = lanes_of(desc.payload);
  char line[512];
  std::int64_t lineno = 0;
  while (std::fgets(line, sizeof line, f)) {
    ++lineno;
    char* s = line;
    while (*s == ' ' || *s == '\t') ++s;
    if (*s == '\0' || *s == '\n' || *s == '#') continue;
    char* end = nullptr;
    errno = 0;
    long long t = std::strtoll(s, &end, 10);
    if (end == s) {
      if (lineno == 1) continue;  // header
      std::fclose(f);
      fail(Status::Data, path + ":" + std::to_string(lineno) + ": malformed sync column");
    }
    float vals[kMaxLanes] = {0.f, 0.f};
    std::int64_t dur = desc.period;
    int col = 0;
    s = end;
    while (*s == ',' && col < lanes + 1) {
      ++s;
      char* e2 = nullptr;
      double v = std::strtod(s, &e2);
      if (e2 == s) break;
      if (col < lanes)
        vals[col] = static_cast<float>(v);
      else
        dur = static_cast<std::int64_t>(v);
      ++col;
      s = e2;
    }
    if (col < lanes) {
      std::fclose(f);
      fail(Status::Data, path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(lanes) + " value column(s)");
    }
    try {
      data.push(t, dur, vals);
    } catch (const EngineError&) {
      std::fclose(f);
      throw;
    }
  }
  std::fclose(f);
  return data;
}

}  // namespace fws
