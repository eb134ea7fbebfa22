#pragma once

#include <string>
#include <vector>

#include "core/model.hpp"

namespace fws {

// Coarse per-source availability: merged [start, end) segments of ingested
// data. Gaps up to merge_gap ms are absorbed into one segment, so short
// dropouts stay inside segments (and inside window bitvectors) while long
// divergence shows up as separate segments the targeted executor can jump
// over.
class AvailabilityIndex {
 public:
  explicit AvailabilityIndex(TimeMs merge_gap = 60000) : merge_gap_(merge_gap) {}

  void add(TimeMs sync, TimeMs period);  // syncs arrive in ascending order

  bool covers_any(const Interval& iv) const;
  // Earliest available time >= t, or kNone when data never resumes.
  TimeMs next_available(TimeMs t) const;

  static constexpr TimeMs kNone = INT64_MAX;

  const std::vector<Interval>& segments() const { return segments_; }

 private:
  TimeMs merge_gap_;
  std::vector<Interval> segments_;
};

// In-memory ingested stream: parallel columns sorted by sync, plus the
// availability index. Ingestion enforces the stream model: on-grid syncs
// (off-grid rows are rejected and counted), ascending order (a step backward
// is a hard data error), duplicate syncs resolved last-wins, durations
// within (0, period].
struct SourceData {
  StreamDescriptor desc;
  std::vector<TimeMs> sync;
  std::vector<std::int64_t> duration;
  std::vector<float> payload;  // lanes-strided
  AvailabilityIndex avail;

  std::int64_t rejected_offgrid = 0;
  std::int64_t deduplicated = 0;

  explicit SourceData(const StreamDescriptor& d, TimeMs merge_gap = 60000)
      : desc(d), avail(merge_gap) {}

  std::int64_t size() const { return static_cast<std::int64_t>(sync.size()); }
  void push(TimeMs t, std::int64_t dur, const float* p);
  void push_scalar(TimeMs t, float v) { push(t, desc.period, &v); }

  // [first sync, last sync + period), or empty when no data
  Interval extent() const;

  // index of first event with sync >= t
  std::int64_t lower_bound(TimeMs t) const;
};

// Reads "sync,value[,value2[,duration]]" rows (optional header line, '#'
// comments skipped) into a SourceData.
SourceData ingest_csv(const std::string& path, const StreamDescriptor& desc,
                      TimeMs merge_gap = 60000);

}  // namespace fws
