#include "toolkit/toolkit.hpp"

#include <cmath>

namespace fws {

std::vector<float> design_lowpass(double cutoff_hz, int num_taps, TimeMs period_ms) {
  require(num_taps >= 1 && num_taps % 2 == 1, Status::Usage, "FIR designer needs an odd tap count");
  const double fs = 1000.0 / static_cast<double>(period_ms);
  require(cutoff_hz > 0 && cutoff_hz < fs / 2, Status::Usage,
          "FIR cutoff must lie in (0, Nyquist) for a " + std::to_string(period_ms) +
              " ms sample period");
  const double fc = cutoff_hz / fs;  // normalized cutoff
  const int mid = (num_taps - 1) / 2;
  std::vector<double> h(static_cast<size_t>(num_taps));
  double sum = 0;
  for (int k = 0; k < num_taps; ++k) {
    const double x = 2.0 * fc * (k - mid);
    const double sinc = x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
    const double window =
        num_taps == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * M_PI * k / (num_taps - 1));
    h[static_cast<size_t>(k)] = 2.0 * fc * sinc * window;
    sum += h[static_cast<size_t>(k)];
  }
  std::vector<float> taps(static_cast<size_t>(num_taps));
  for (int k = 0; k < num_taps; ++k)
    taps[static_cast<size_t>(k)] = static_cast<float>(h[static_cast<size_t>(k)] / sum);
  return taps;
}

namespace {

class FirTransform : public SliceTransform {
 public:
  explicit FirTransform(std::vector<float> taps) : taps_(std::move(taps)) {
    require(!taps_.empty(), Status::Usage, "FIR needs at least one tap");
    hist_.assign(taps_.size(), 0.f);
  }

  void apply(const Slice& in, const SliceOut& out) override {
    const std::int64_t n = static_cast<std::int64_t>(taps_.size());
    for (std::int64_t i = 0; i < in.n; ++i) {
      const TimeMs t = in.start + i * in.period;
      if (have_expected_ && t != expected_) run_ = 0;
      expected_ = t + in.period;
      have_expected_ = true;
      out.present[i] = 0;
      if (!in.present[i]) {
        run_ = 0;
        continue;
      }
      hist_[static_cast<size_t>(head_)] = in.payload[i];
      head_ = (head_ + 1) % n;
      ++run_;
      if (run_ < n) continue;  // warm-up after segment start or gap
      double acc = 0;
      for (std::int64_t j = 0; j < n; ++j) {
        // taps_[j] weights the sample j periods back
        const std::int64_t idx = pos_mod(head_ - 1 - j, n);
        acc += static_cast<double>(taps_[static_cast<size_t>(j)]) *
               hist_[static_cast<size_t>(idx)];
      }
      out.present[i] = 1;
      out.vsync[i] = in.vsync[i];
      out.duration[i] = in.duration[i];
      out.payload[i] = static_cast<float>(acc);
    }
  }

  void reset() override {
    run_ = 0;
    have_expected_ = false;
  }

 private:
  std::vector<float> taps_;
  std::vector<float> hist_;
  std::int64_t head_ = 0;
  std::int64_t run_ = 0;
  TimeMs expected_ = 0;
  bool have_expected_ = false;
};

}  // namespace

SliceTransformFactory fir_transform(std::vector<float> taps) {
  return [taps = std::move(taps)]() { return std::make_unique<FirTransform>(taps); };
}

StreamExpr normalize_expr(const StreamExpr& in, TimeMs w) {
  StreamExpr mean = in.aggregate(AggKind::Mean, w, w);
  StreamExpr sd = in.aggregate(AggKind::Std, w, w);
  StreamExpr with_mean = in.join(
      mean, JoinMode::Inner,
      [](const float* l, const float* r, float* out) {
        out[0] = l[0];
        out[1] = r[0];
      },
      PayloadKind::F32x2);
  return with_mean.join(
      sd, JoinMode::Inner,
      [](const float* l, const float* r, float* out) {
        const float sigma = r[0];
        out[0] = sigma == 0.f ? 0.f
                              : static_cast<float>((static_cast<double>(l[0]) - l[1]) / sigma);
      },
      PayloadKind::F32);
}

StreamExpr pass_filter_expr(const StreamExpr& in, std::vector<float> taps, TimeMs w) {
  return in.transform(w, fir_transform(std::move(taps)));
}

Query make_toolkit_query(const std::string& name, const StreamDescriptor& in,
                         const ToolkitParams& p) {
  Query q;
  StreamExpr src = q.source("sig", in);
  const TimeMs w = p.window_ms;
  if (name == "normalize") {
    q.sink(normalize_expr(src, w));
  } else if (name == "passfilter") {
    std::vector<float> taps =
        p.taps.empty() ? design_lowpass(0.1 * (1000.0 / in.period), 31, in.period) : p.taps;
    q.sink(pass_filter_expr(src, std::move(taps), w));
  } else if (name == "fillconst") {
    q.sink(src.fill_const(p.gap_limit > 0 ? p.gap_limit : w, p.fill_value));
  } else if (name == "fillmean") {
    q.sink(src.fill_mean(w));
  } else if (name == "resample") {
    q.sink(src.resample(p.target_period));
  } else {
    fail(Status::Usage, "unknown operation: " + name);
  }
  return q;
}

Query make_endtoend_query(const ToolkitParams& p) {
  Query q;
  StreamExpr ecg = q.source("ecg", make_descriptor(0, 2));
  StreamExpr abp = q.source("abp", make_descriptor(0, 8));
  const TimeMs w = p.window_ms;
  const TimeMs gap = p.gap_limit > 0 ? p.gap_limit : w;
  StreamExpr e = normalize_expr(ecg.fill_const(gap, p.fill_value), w).alter_duration(1);
  StreamExpr a =
      normalize_expr(abp.fill_const(gap, p.fill_value).resample(2), w).alter_duration(1);
  q.sink(e.join(
      a, JoinMode::Inner,
      [](const float* l, const float* r, float* out) {
        out[0] = l[0];
        out[1] = r[0];
      },
      PayloadKind::F32x2));
  return q;
}

Query make_listing1_query() {
  Query q;
  StreamExpr sig500 = q.source("sig500", make_descriptor(0, 2));
  StreamExpr sig200 = q.source("sig200", make_descriptor(0, 5));
  StreamExpr vals = sig500.select_values([](float v) { return v; });
  StreamExpr mean = sig500.aggregate(AggKind::Mean, 100, 100);
  StreamExpr left = vals.join(
      mean, JoinMode::Inner,
      [](const float* l, const float* r, float* out) { out[0] = l[0] - r[0]; },
      PayloadKind::F32);
  StreamExpr right = sig200.select_values([](float v) { return v; });
  q.sink(left.join(
      right, JoinMode::Inner,
      [](const float* l, const float* r, float* out) {
        out[0] = l[0];
        out[1] = r[0];
      },
      PayloadKind::F32x2));
  return q;
}

Query make_query_by_name(const std::string& name, const ToolkitParams& p) {
  if (name == "listing1") return make_listing1_query();
  if (name == "endtoend") return make_endtoend_query(p);
  if (name == "identity") {
    Query q;
    q.sink(q.source("sig", make_descriptor(0, 2)));
    return q;
  }
  return make_toolkit_query(name, make_descriptor(0, 2), p);
}

}  // namespace fws
