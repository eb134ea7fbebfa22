#pragma once

#include <memory>

#include "compile/graph.hpp"
#include "core/alloc_counter.hpp"
#include "run/sink.hpp"
#include "run/source.hpp"

namespace fws {

struct ExecutionStats {
  std::int64_t windows_total = 0;      // sink windows in the run range
  std::int64_t windows_processed = 0;  // actually computed
  std::int64_t windows_skipped = 0;
  std::int64_t events_out = 0;
  // allocation delta after the first sink window was consumed
  std::int64_t steady_alloc_count = 0;
  std::int64_t steady_alloc_bytes = 0;
};

// One execution of a compiled plan over bound sources. All window rings and
// operator scratch are sized from the memory plan in the constructor; the run
// loops themselves do not allocate.
class Execution {
 public:
  Execution(const CompiledPlan& plan, std::vector<const SourceData*> sources);

  // Processes every sink window intersecting `range` (sink time, ms).
  ExecutionStats run_eager(const Interval& range, Sink& sink);
  // Same output, but evaluates the availability predicate per sink window and
  // jumps over provably empty stretches.
  ExecutionStats run_targeted(const Interval& range, Sink& sink);

  const CompiledPlan& plan() const { return *plan_; }

 private:
  struct EdgeRT {
    const Edge* edge = nullptr;
    TimeMs base = 0;  // window m covers [base + m*dim, base + (m+1)*dim)
    TimeMs dim = 1;
    int depth = 0;                // 0 for alias edges
    std::vector<FWindow> ring;    // depth windows, index = pos_mod(m, depth)
    std::vector<std::uint8_t> placed;
    std::int64_t low = 0;   // reads below this index are absent
    std::int64_t next = 0;  // next window index to produce
    bool started = false;
  };

  struct NodeRT {
    // kernels are stateless across windows; per-node scratch only
    std::vector<float> agg_scratch;          // Aggregate(User)
    std::unique_ptr<SliceTransform> slice;   // Transform
    // Transform warm-up slice output (discarded)
    std::vector<float> warm_payload;
    std::vector<TimeMs> warm_vsync;
    std::vector<std::int64_t> warm_duration;
    std::vector<std::uint8_t> warm_present;
    void reset() {
      if (slice) slice->reset();
    }
  };

  // Read access over a root edge's ring by absolute slot time.
  class Tape {
   public:
    Tape(const Execution& ex, int root_edge) : e_(&ex.edges_[static_cast<size_t>(root_edge)]) {}
    TimeMs period() const { return e_->edge->desc.period; }
    TimeMs offset() const { return e_->edge->desc.offset; }
    bool present_at(TimeMs t) const;
    Event at(TimeMs t) const;  // present==false when absent
    const float* payload_at(TimeMs t) const;
    // earliest on-grid present slot time in [from, to), or kNone
    TimeMs next_present(TimeMs from, TimeMs to) const;
    // latest on-grid present slot time in [from, to), or kNone
    TimeMs prev_present(TimeMs from, TimeMs to) const;
    // ring window covering t, or nullptr when outside the produced range
    const FWindow* window_of(TimeMs t) const;
    static constexpr TimeMs kNone = INT64_MAX;

   private:
    const EdgeRT* e_;
  };

  void ensure_interval(int edge, const Interval& iv);
  void produce(EdgeRT& e, std::int64_t m);
  void run_kernel(const Node& n, FWindow& out);

  std::int64_t sink_index_of(TimeMs t) const;
  TimeMs sink_window_start(std::int64_t m) const;

  bool skip_true(const SkipExpr& s, const Interval& win) const;
  // conservative lower bound on the next sink index >= m+1 whose predicate
  // might hold (callers re-check and iterate)
  std::int64_t skip_jump(const SkipExpr& s, std::int64_t m) const;

  const CompiledPlan* plan_;
  std::vector<const SourceData*> sources_;
  std::vector<EdgeRT> edges_;
  std::vector<NodeRT> nodes_;
  int sink_root_ = -1;
};

}  // namespace fws
