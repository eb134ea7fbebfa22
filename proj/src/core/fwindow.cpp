#include "core/fwindow.hpp"

namespace fws {

std::int64_t lcm_checked(std::int64_t a, std::int64_t b, std::int64_t cap,
                         const std::string& context) {
  std::int64_t g = std::gcd(a, b);
  std::int64_t l = a / g;
  if (l > cap / b) fail(Status::Usage, "dimension overflow while unifying " + context);
  l *= b;
  if (l > cap)
    fail(Status::Usage, "locality trace exceeded dimension cap (incompatible periods) at " +
                            context);
  return l;
}

std::int64_t window_capacity(const StreamDescriptor& desc, TimeMs dimension,
                             const std::string& context) {
  require(dimension > 0, Status::Usage, "window dimension must be positive" +
                                            (context.empty() ? "" : " on " + context));
  if (dimension % desc.period != 0)
    fail(Status::Usage, "window dimension " + std::to_string(dimension) +
                            " not divisible by period " + std::to_string(desc.period) +
                            (context.empty() ? "" : " on " + context));
  return dimension / desc.period;
}

FWindow::FWindow(const StreamDescriptor& desc, TimeMs sync, TimeMs dimension)
    : desc_(desc), sync_(sync), dimension_(dimension) {
  capacity_ = window_capacity(desc, dimension);
  require(desc.on_grid(sync), Status::Internal, "FWindow sync not on the stream slot grid");
  lanes_ = lanes_of(desc.payload);
  payload_.assign(static_cast<size_t>(capacity_ * lanes_), 0.f);
  vsync_.assign(static_cast<size_t>(capacity_), 0);
  duration_.assign(static_cast<size_t>(capacity_), 0);
  bitvector_.assign(static_cast<size_t>(capacity_), 0);
}

std::int64_t FWindow::slot_of(TimeMs t) const {
  if (t < sync_ || t >= end())
    fail(Status::Internal, "time " + std::to_string(t) + " outside window [" +
                               std::to_string(sync_) + "," + std::to_string(end()) + ")");
  if ((t - sync_) % desc_.period != 0)
    fail(Status::Internal, "time " + std::to_string(t) + " off the slot grid");
  return (t - sync_) / desc_.period;
}

Event FWindow::event(std::int64_t i) const {
  Event e;
  e.present = present(i);
  e.sync = vsync(i);
  e.duration = duration(i);
  for (int l = 0; l < lanes_; ++l) e.payload[l] = payload(i)[l];
  return e;
}

void FWindow::set(std::int64_t i, TimeMs vs, std::int64_t dur, const float* pay) {
  require(i >= 0 && i < capacity_, Status::Internal, "slot index out of range");
  bitvector_[static_cast<size_t>(i)] = 1;
  vsync_[static_cast<size_t>(i)] = vs;
  duration_[static_cast<size_t>(i)] = dur;
  for (int l = 0; l < lanes_; ++l) payload_[static_cast<size_t>(i * lanes_ + l)] = pay[l];
}

void FWindow::slide(TimeMs new_sync) {
  require(new_sync >= sync_, Status::Internal, "FWindows can only move forward in time");
  require(desc_.on_grid(new_sync), Status::Internal, "slide target not on the slot grid");
  if (new_sync == sync_) return;
  sync_ = new_sync;
  clear();
}

void FWindow::reposition(TimeMs new_sync) {
  require(desc_.on_grid(new_sync), Status::Internal, "reposition target not on the slot grid");
  sync_ = new_sync;
  clear();
}

void FWindow::clear() {
  if (!bitvector_.empty()) std::memset(bitvector_.data(), 0, bitvector_.size());
}

std::int64_t FWindow::present_count() const {
  std::int64_t n = 0;
  for (std::int64_t i = 0; i < capacity_; ++i) n += present(i) ? 1 : 0;
  return n;
}

void FWindow::validate() const {
  require(dimension_ % desc_.period == 0, Status::Internal, "dimension not multiple of period");
  require(desc_.on_grid(sync_), Status::Internal, "window sync off the slot grid");
  TimeMs prev_end = sync_ - 1;
  bool have_prev = false;
  for (std::int64_t i = 0; i < capacity_; ++i) {
    if (!present(i)) continue;
    TimeMs vs = vsync(i);
    require(vs >= slot_time(i) && vs < slot_time(i + 1), Status::Internal,
            "vsync outside its slot");
    require(duration(i) > 0, Status::Internal, "present event with non-positive duration");
    if (have_prev)
      require(prev_end <= vs, Status::Internal, "overlapping active intervals in window");
    prev_end = vs + duration(i);
    have_prev = true;
  }
}

bool FWindow::bitwise_equal(const FWindow& o) const {
  if (capacity_ != o.capacity_ || sync_ != o.sync_ || lanes_ != o.lanes_) return false;
  for (std::int64_t i = 0; i < capacity_; ++i) {
    if (present(i) != o.present(i)) return false;
    if (!present(i)) continue;
    if (vsync(i) != o.vsync(i) || duration(i) != o.duration(i)) return false;
    for (int l = 0; l < lanes_; ++l) {
      if (std::memcmp(&payload(i)[l], &o.payload(i)[l], sizeof(float)) != 0) return false;
    }
  }
  return true;
}

}  // namespace fws
