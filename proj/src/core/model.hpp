#pragma once

#include <string>

#include "core/base.hpp"

namespace fws {

// Payload cells are fixed-width groups of 32-bit float lanes. Scalar signals
// use one lane; composite payloads (e.g. joined pairs) use two.
enum class PayloadKind : int { F32 = 1, F32x2 = 2 };

inline int lanes_of(PayloadKind k) { return static_cast<int>(k); }

constexpr int kMaxLanes = 2;

// Symbolic identity of a periodic stream: every event sync satisfies
// (sync - offset) mod period == 0.
struct StreamDescriptor {
  TimeMs offset = 0;
  TimeMs period = 1;
  PayloadKind payload = PayloadKind::F32;

  bool on_grid(TimeMs t) const { return pos_mod(t - offset, period) == 0; }
  bool operator==(const StreamDescriptor& o) const {
    return offset == o.offset && period == o.period && payload == o.payload;
  }
  std::string str() const {
    return "(" + std::to_string(offset) + "," + std::to_string(period) + ")";
  }
};

inline StreamDescriptor make_descriptor(TimeMs offset, TimeMs period,
                                        PayloadKind k = PayloadKind::F32) {
  require(period >= 1, Status::Usage, "stream period must be >= 1 ms");
  StreamDescriptor d;
  d.offset = offset;
  d.period = period;
  d.payload = k;
  return d;
}

// One timestamped measurement. Active interval is [sync, sync + duration).
struct Event {
  TimeMs sync = 0;
  std::int64_t duration = 0;
  float payload[kMaxLanes] = {0.f, 0.f};
  bool present = false;

  TimeMs end() const { return sync + duration; }
};

}  // namespace fws
