#include "ops/node.hpp"

namespace fws {

const char* op_name(OpKind k) {
  switch (k) {
    case OpKind::Source: return "Source";
    case OpKind::Select: return "Select";
    case OpKind::Where: return "Where";
    case OpKind::Aggregate: return "Aggregate";
    case OpKind::Join: return "Join";
    case OpKind::ClipJoin: return "ClipJoin";
    case OpKind::Chop: return "Chop";
    case OpKind::Shift: return "Shift";
    case OpKind::AlterPeriod: return "AlterPeriod";
    case OpKind::AlterDuration: return "AlterDuration";
    case OpKind::Multicast: return "Multicast";
    case OpKind::Transform: return "Transform";
    case OpKind::FillConst: return "FillConst";
    case OpKind::FillMean: return "FillMean";
    case OpKind::Resample: return "Resample";
  }
  return "?";
}

StreamDescriptor output_descriptor(OpKind kind, const OpParams& p,
                                   const std::vector<StreamDescriptor>& ins,
                                   const std::string& context) {
  switch (kind) {
    case OpKind::Source:
      fail(Status::Internal, "source has no input descriptor transform");
    case OpKind::Select: {
      StreamDescriptor d = ins[0];
      d.payload = p.out_payload;
      return d;
    }
    case OpKind::Where:
    case OpKind::AlterDuration:
    case OpKind::Multicast:
    case OpKind::Transform:
    case OpKind::FillConst:
    case OpKind::FillMean:
      return ins[0];
    case OpKind::Aggregate: {
      StreamDescriptor d = ins[0];
      d.period = p.p;
      d.payload = PayloadKind::F32;
      return d;
    }
    case OpKind::Join: {
      const StreamDescriptor &l = ins[0], &r = ins[1];
      StreamDescriptor d;
      TimeMs g = std::gcd(l.period, r.period);
      TimeMs skew = l.offset - r.offset;
      if (skew != 0) g = std::gcd(g, skew < 0 ? -skew : skew);
      d.period = g;
      d.offset = std::min(l.offset, r.offset);
      d.payload = p.out_payload;
      return d;
    }
    case OpKind::ClipJoin: {
      StreamDescriptor d = ins[0];
      d.payload = p.out_payload;
      return d;
    }
    case OpKind::Chop: {
      StreamDescriptor d = ins[0];
      d.period = std::gcd(d.period, p.c);
      // boundary cuts land at multiples of c; those must be on the output grid
      require(pos_mod(d.offset, d.period) == 0, Status::Usage,
              "Chop boundaries fall off the slot grid (offset not divisible by gcd(period, c)) at " +
                  context);
      return d;
    }
    case OpKind::Shift: {
      StreamDescriptor d = ins[0];
      d.offset += p.k;
      return d;
    }
    case OpKind::AlterPeriod:
    case OpKind::Resample: {
      StreamDescriptor d = ins[0];
      d.period = p.new_period;
      return d;
    }
  }
  fail(Status::Internal, "unhandled op kind in descriptor transform at " + context);
}

AffineMap input_lineage(OpKind kind, const OpParams& p, int input_idx,
                        const StreamDescriptor& in_desc, const StreamDescriptor& out_desc,
                        TimeMs dimension) {
  AffineMap m;
  switch (kind) {
    case OpKind::Source:
    case OpKind::Select:
    case OpKind::Where:
    case OpKind::AlterDuration:
    case OpKind::Multicast:
    case OpKind::Chop:
      break;
    case OpKind::Join:
      // a partner event may start up to one period before the output window
      m.ext_lo = in_desc.period;
      break;
    case OpKind::Transform:
      // bounded history (e.g. filter taps) never reaches further back than w
      m.ext_lo = p.w;
      break;
    case OpKind::Aggregate:
      m.ext_hi = p.w - p.p;
      break;
    case OpKind::ClipJoin:
      if (input_idx == 1) m.ext_hi = dimension;
      break;
    case OpKind::Shift:
      m.off = -p.k;
      break;
    case OpKind::AlterPeriod: {
      m.num = in_desc.period;
      m.den = out_desc.period;
      m.off = in_desc.offset * (out_desc.period - in_desc.period);
      break;
    }
    case OpKind::Resample:
      m.ext_lo = in_desc.period;
      m.ext_hi = in_desc.period;
      break;
    case OpKind::FillConst:
      m.ext_lo = p.gap_limit + in_desc.period;
      m.ext_hi = p.gap_limit + in_desc.period;
      break;
    case OpKind::FillMean:
      m.ext_lo = p.w + in_desc.period;
      m.ext_hi = p.w + in_desc.period;
      break;
  }
  return m;
}

std::vector<TimeMs> window_params(OpKind kind, const OpParams& p) {
  switch (kind) {
    case OpKind::Aggregate: return {p.w, p.p};
    case OpKind::Transform: return {p.w};
    case OpKind::Chop: return {p.c};
    case OpKind::FillConst: return {p.gap_limit};
    case OpKind::FillMean: return {p.w};
    case OpKind::Resample: return {p.new_period};
    default: return {};
  }
}

void validate_params(OpKind kind, const OpParams& p,
                     const std::vector<StreamDescriptor>& ins, const std::string& context) {
  auto usage = [&](bool ok, const std::string& msg) {
    if (!ok) fail(Status::Usage, msg + " at " + context);
  };
  switch (kind) {
    case OpKind::Select:
      usage(static_cast<bool>(p.map_fn), "Select requires a projection function");
      break;
    case OpKind::Where:
      usage(static_cast<bool>(p.pred_fn), "Where requires a predicate");
      break;
    case OpKind::Aggregate: {
      TimeMs pin = ins[0].period;
      usage(p.w > 0 && p.p > 0, "Aggregate window and stride must be positive");
      usage(p.w % pin == 0 && p.p % pin == 0,
            "Aggregate window and stride must be multiples of the input period");
      usage(p.w >= p.p, "Aggregate with w < p leaves gaps between windows (unsupported)");
      usage(p.agg != AggKind::User || static_cast<bool>(p.agg_fn),
            "user Aggregate requires a function");
      break;
    }
    case OpKind::Join:
      usage(static_cast<bool>(p.combine_fn), "Join requires a combine function");
      break;
    case OpKind::ClipJoin:
      usage(static_cast<bool>(p.combine_fn), "ClipJoin requires a combine function");
      break;
    case OpKind::Chop:
      usage(p.c > 0, "Chop boundary period must be positive");
      break;
    case OpKind::Shift:
      break;
    case OpKind::AlterPeriod:
      usage(p.new_period >= 1, "AlterPeriod target period must be >= 1");
      break;
    case OpKind::AlterDuration:
      usage(p.d >= 1, "AlterDuration requires duration >= 1");
      usage(p.d <= ins[0].period,
            "AlterDuration beyond the stream period would violate non-overlap");
      break;
    case OpKind::Transform:
      usage(p.w > 0 && p.w % ins[0].period == 0,
            "Transform window must be a positive multiple of the input period");
      usage(static_cast<bool>(p.transform_factory), "Transform requires a function");
      break;
    case OpKind::FillConst:
      usage(p.gap_limit >= ins[0].period && p.gap_limit % ins[0].period == 0,
            "fill gap limit must be a positive multiple of the input period");
      break;
    case OpKind::FillMean:
      usage(p.w >= ins[0].period && p.w % ins[0].period == 0,
            "fill window must be a positive multiple of the input period");
      break;
    case OpKind::Resample:
      usage(p.new_period >= 1, "Resample target period must be >= 1");
      break;
    case OpKind::Source:
    case OpKind::Multicast:
      break;
  }
}

}  // namespace fws
