#pragma once

#include <string>
#include <vector>

#include "compile/graph.hpp"

namespace fws {

// Windowed-sinc low-pass FIR (Hamming window, unit DC gain). num_taps must be
// odd; cutoff below Nyquist for the given sample period.
std::vector<float> design_lowpass(double cutoff_hz, int num_taps, TimeMs period_ms);

// Transform factory running an FIR over present slots. Carries the last n-1
// samples across slices; warm-up and any slot whose tap span crosses a gap
// (or a cursor discontinuity) stay absent — no zero padding.
SliceTransformFactory fir_transform(std::vector<float> taps);

// Standard-score normalization over tumbling w-windows, composed from
// primitives: the input fans out to itself and Mean/Std aggregates, two inner
// joins bring (x, mu, sigma) together, sigma = 0 maps to 0.
StreamExpr normalize_expr(const StreamExpr& in, TimeMs w);

StreamExpr pass_filter_expr(const StreamExpr& in, std::vector<float> taps, TimeMs w);

struct ToolkitParams {
  TimeMs window_ms = 60000;
  TimeMs gap_limit = 0;        // fillconst; 0 = window_ms
  float fill_value = 0.f;
  TimeMs target_period = 2;    // resample
  std::vector<float> taps;     // passfilter; empty = designed default
};

// name in {normalize, passfilter, fillconst, fillmean, resample}
Query make_toolkit_query(const std::string& name, const StreamDescriptor& in,
                         const ToolkitParams& p);

// Two-source pipeline: constant-fill both signals, upsample the slow one to
// the fast grid, normalize both, shrink durations to 1 and inner-join on
// exact sync. Sources: "ecg" (0,2), "abp" (0,8).
Query make_endtoend_query(const ToolkitParams& p);

// Reference two-signal query: a 2 ms signal mean-adjusted over 100 ms
// tumbling windows, inner-joined with a 5 ms signal.
Query make_listing1_query();

Query make_query_by_name(const std::string& name, const ToolkitParams& p);

}  // namespace fws
