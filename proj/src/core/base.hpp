#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fws {

// All times are integer milliseconds since an arbitrary epoch.
using TimeMs = std::int64_t;

enum class Status : int {
  Ok = 0,
  Usage = 1,    // bad arguments / plan-time parameter errors
  Data = 2,     // malformed or inconsistent input data
  Internal = 3  // engine invariant violation
};

class EngineError : public std::runtime_error {
 public:
  EngineError(Status s, std::string msg) : std::runtime_error(std::move(msg)), status_(s) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) { throw EngineError(s, msg); }

// const char* overload keeps hot-path checks allocation-free until failure
inline void require(bool cond, Status s, const char* msg) {
  if (!cond) throw EngineError(s, msg);
}

inline void require(bool cond, Status s, const std::string& msg) {
  if (!cond) fail(s, msg);
}

// Floor/ceil division for signed 64-bit times.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// a mod b in [0, b)
inline std::int64_t pos_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

// Align t down/up to grid {anchor + k*step}.
inline TimeMs align_down(TimeMs t, TimeMs anchor, TimeMs step) {
  return anchor + floor_div(t - anchor, step) * step;
}
inline TimeMs align_up(TimeMs t, TimeMs anchor, TimeMs step) {
  return anchor + ceil_div(t - anchor, step) * step;
}

// Half-open time interval [lo, hi). Empty when hi <= lo.
struct Interval {
  TimeMs lo = 0;
  TimeMs hi = 0;
  bool empty() const { return hi <= lo; }
  TimeMs length() const { return empty() ? 0 : hi - lo; }
  bool intersects(const Interval& o) const { return lo < o.hi && o.lo < hi; }
};

std::int64_t lcm_checked(std::int64_t a, std::int64_t b, std::int64_t cap,
                         const std::string& context);

}  // namespace fws
