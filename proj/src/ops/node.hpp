#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "core/model.hpp"
#include "ops/affine.hpp"

namespace fws {

enum class OpKind {
  Source,
  Select,
  Where,
  Aggregate,
  Join,
  ClipJoin,
  Chop,
  Shift,
  AlterPeriod,
  AlterDuration,
  Multicast,
  Transform,
  FillConst,
  FillMean,
  Resample,
};

const char* op_name(OpKind k);

enum class JoinMode { Inner, Left, Outer };
enum class AggKind { Sum, Max, Min, Mean, Count, Std, User };

// Payload functors. Cells are lane pointers; a null side pointer in a combine
// marks the missing side of a Left/Outer join.
using MapFn = std::function<void(TimeMs sync, const float* in, float* out)>;
using PredFn = std::function<bool(TimeMs sync, const float* in)>;
using CombineFn = std::function<void(const float* left, const float* right, float* out)>;
using AggFn = std::function<float(const float* values, std::int64_t n)>;

// Stateful window-to-window transformation hosted by the Transform operator.
// apply() maps one w-sized slice; implementations may carry bounded state
// across consecutive slices (e.g. FIR history) and must reset() when the
// execution cursor jumps.
class SliceTransform {
 public:
  virtual ~SliceTransform() = default;
  struct Slice {
    std::int64_t n = 0;
    const float* payload = nullptr;
    const TimeMs* vsync = nullptr;
    const std::int64_t* duration = nullptr;
    const std::uint8_t* present = nullptr;
    TimeMs start = 0;
    TimeMs period = 1;
  };
  struct SliceOut {
    std::int64_t n = 0;
    float* payload = nullptr;
    TimeMs* vsync = nullptr;
    std::int64_t* duration = nullptr;
    std::uint8_t* present = nullptr;
  };
  virtual void apply(const Slice& in, const SliceOut& out) = 0;
  virtual void reset() {}
};

using SliceTransformFactory = std::function<std::unique_ptr<SliceTransform>()>;

struct OpParams {
  TimeMs w = 0;            // Aggregate/Transform/FillMean window, ms
  TimeMs p = 0;            // Aggregate stride, ms
  TimeMs k = 0;            // Shift constant, ms (may be negative)
  TimeMs c = 0;            // Chop boundary period, ms
  std::int64_t d = 0;      // AlterDuration new duration, ms
  TimeMs new_period = 0;   // AlterPeriod / Resample target period, ms
  TimeMs gap_limit = 0;    // Fill* maximum gap, ms
  float fill_value = 0.f;  // FillConst payload
  JoinMode join_mode = JoinMode::Inner;
  AggKind agg = AggKind::Sum;
  PayloadKind out_payload = PayloadKind::F32;
  MapFn map_fn;
  PredFn pred_fn;
  CombineFn combine_fn;
  AggFn agg_fn;
  SliceTransformFactory transform_factory;
};

// Static descriptor transform of each operator (the linearity property).
StreamDescriptor output_descriptor(OpKind kind, const OpParams& p,
                                   const std::vector<StreamDescriptor>& ins,
                                   const std::string& context);

// Lineage: required input interval for input edge `input_idx` given an output
// interval, as an affine endpoint map. `dimension` is the traced window
// dimension (resolves the ClipJoin lookahead bound).
AffineMap input_lineage(OpKind kind, const OpParams& p, int input_idx,
                        const StreamDescriptor& in_desc, const StreamDescriptor& out_desc,
                        TimeMs dimension);

// Extra time-lengths this operator's windows must tile (folded into the node's
// LCM during locality tracing so per-step lookahead stays within one window).
std::vector<TimeMs> window_params(OpKind kind, const OpParams& p);

// Validates kind-specific parameter constraints at plan time.
void validate_params(OpKind kind, const OpParams& p,
                     const std::vector<StreamDescriptor>& ins, const std::string& context);

}  // namespace fws
