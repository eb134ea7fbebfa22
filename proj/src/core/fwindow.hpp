#pragma once

#include <cstring>
#include <vector>

#include "core/model.hpp"

namespace fws {

// Number of slots of a window of length `dimension` over a stream with the
// given descriptor. Errors when the dimension does not tile the period.
std::int64_t window_capacity(const StreamDescriptor& desc, TimeMs dimension,
                             const std::string& context = "");

// Fixed-interval columnar window over a periodic stream. Slot i covers nominal
// time sync + i*period; parallel columns hold payload lanes, the event sync
// time (vsync), duration, and a per-slot presence flag (bitvector). Buffers
// are sized once and reused; slide() moves the window forward and clears it.
class FWindow {
 public:
  FWindow() = default;
  FWindow(const StreamDescriptor& desc, TimeMs sync, TimeMs dimension);

  const StreamDescriptor& descriptor() const { return desc_; }
  TimeMs sync() const { return sync_; }
  TimeMs end() const { return sync_ + dimension_; }
  TimeMs dimension() const { return dimension_; }
  TimeMs period() const { return desc_.period; }
  std::int64_t capacity() const { return capacity_; }
  int lanes() const { return lanes_; }

  std::int64_t slot_of(TimeMs t) const;
  TimeMs slot_time(std::int64_t i) const { return sync_ + i * desc_.period; }

  bool present(std::int64_t i) const { return bitvector_[static_cast<size_t>(i)] != 0; }
  TimeMs vsync(std::int64_t i) const { return vsync_[static_cast<size_t>(i)]; }
  std::int64_t duration(std::int64_t i) const { return duration_[static_cast<size_t>(i)]; }
  const float* payload(std::int64_t i) const { return &payload_[static_cast<size_t>(i * lanes_)]; }
  float* payload(std::int64_t i) { return &payload_[static_cast<size_t>(i * lanes_)]; }

  Event event(std::int64_t i) const;

  void set(std::int64_t i, TimeMs vsync, std::int64_t duration, const float* payload);
  void set_scalar(std::int64_t i, TimeMs vsync, std::int64_t duration, float v) {
    set(i, vsync, duration, &v);
  }
  void clear_slot(std::int64_t i) { bitvector_[static_cast<size_t>(i)] = 0; }

  // Moves the window forward in time, clearing all slots. The column buffers
  // are retained; no allocation happens. Backward moves are rejected.
  void slide(TimeMs new_sync);
  // Places the window at an arbitrary grid time and clears it. Used by the
  // executor when the cursor jumps; slide() covers the normal forward flow.
  void reposition(TimeMs new_sync);
  void clear();

  // Raw column access for slice-based transforms.
  const float* payload_data() const { return payload_.data(); }
  const TimeMs* vsync_data() const { return vsync_.data(); }
  const std::int64_t* duration_data() const { return duration_.data(); }
  const std::uint8_t* present_data() const { return bitvector_.data(); }
  float* payload_data() { return payload_.data(); }
  TimeMs* vsync_data() { return vsync_.data(); }
  std::int64_t* duration_data() { return duration_.data(); }
  std::uint8_t* present_data() { return bitvector_.data(); }

  std::int64_t present_count() const;

  // Checks the stream-model invariants (slot alignment, non-overlap, bounded
  // presence); throws Internal on violation. Used by tests and debug checks.
  void validate() const;

  bool bitwise_equal(const FWindow& o) const;

 private:
  StreamDescriptor desc_;
  TimeMs sync_ = 0;
  TimeMs dimension_ = 1;
  std::int64_t capacity_ = 0;
  int lanes_ = 1;
  std::vector<float> payload_;
  std::vector<TimeMs> vsync_;
  std::vector<std::int64_t> duration_;
  std::vector<std::uint8_t> bitvector_;
};

}  // namespace fws
