#pragma once

// Independent straight-line reference implementations over plain event lists,
// used as oracles against the engine kernels, plus helpers to run a
// single-operator query through the engine and compare results.

#include <random>
#include <string>
#include <vector>

#include "compile/graph.hpp"
#include "run/executor.hpp"

namespace ref {

using fws::Event;
using fws::Interval;
using fws::StreamDescriptor;
using fws::TimeMs;

// present events sorted by sync, non-overlapping, durations in (0, period]
struct RefStream {
  StreamDescriptor desc;
  std::vector<Event> events;
};

RefStream select(const RefStream& in, const fws::MapFn& f, fws::PayloadKind out);
RefStream where(const RefStream& in, const fws::PredFn& pred);
RefStream aggregate(const RefStream& in, fws::AggKind agg, TimeMs w, TimeMs p,
                    const fws::AggFn& fn = nullptr);
RefStream join(const RefStream& l, const RefStream& r, fws::JoinMode mode,
               const fws::CombineFn& combine, fws::PayloadKind out);
RefStream clip_join(const RefStream& l, const RefStream& r, const fws::CombineFn& combine,
                    fws::PayloadKind out);
RefStream chop(const RefStream& in, TimeMs c);
RefStream shift(const RefStream& in, TimeMs k);
RefStream alter_period(const RefStream& in, TimeMs new_period);
RefStream alter_duration(const RefStream& in, std::int64_t d);
RefStream fill_const(const RefStream& in, TimeMs gap_limit, float value);
RefStream fill_mean(const RefStream& in, TimeMs w);
RefStream resample(const RefStream& in, TimeMs new_period);
RefStream normalize(const RefStream& in, TimeMs w);
RefStream pass_filter(const RefStream& in, const std::vector<float>& taps);

// full-matrix banded DTW, same cost/normalization conventions as the engine
double cdtw_full(const float* a, const float* b, std::int64_t m, int r);

// dense or gappy random stream on the descriptor grid starting at the offset
RefStream random_stream(std::mt19937_64& rng, const StreamDescriptor& desc,
                        std::int64_t slots, double gap_prob, bool full_durations);

fws::SourceData to_source(const RefStream& s);

// builds source -> op -> sink, runs eagerly over `range` (sink time) and
// returns the collected events
RefStream run_engine_op(fws::OpKind kind, fws::OpParams params,
                        const std::vector<RefStream>& ins, const Interval& range);

// run an arbitrary compiled query over sources
RefStream run_query(const fws::CompiledPlan& plan, const std::vector<RefStream>& ins,
                    const Interval& range, bool targeted = false,
                    fws::ExecutionStats* stats_out = nullptr);

// restricts to events with sync in [range.lo, range.hi)
RefStream clip_range(const RefStream& s, const Interval& range);

// bit-exact comparison; on mismatch fills *diff with a description
bool equal_streams(const RefStream& a, const RefStream& b, std::string* diff);

}  // namespace ref
