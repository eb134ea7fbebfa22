#include "run/executor.hpp"

#include <algorithm>
#include <cmath>

namespace fws {

// ---------------------------------------------------------------------------
// Tape

const FWindow* Execution::Tape::window_of(TimeMs t) const {
  const std::int64_t m = floor_div(t - e_->base, e_->dim);
  if (m < e_->low || m >= e_->next) return nullptr;
  require(m >= e_->next - e_->depth, Status::Internal, "ring underrun: read past retained windows");
  return &e_->ring[static_cast<size_t>(pos_mod(m, e_->depth))];
}

bool Execution::Tape::present_at(TimeMs t) const {
  const FWindow* w = window_of(t);
  if (!w) return false;
  return w->present((t - w->sync()) / w->period());
}

Event Execution::Tape::at(TimeMs t) const {
  const FWindow* w = window_of(t);
  if (!w) return Event{};
  const std::int64_t i = (t - w->sync()) / w->period();
  if (!w->present(i)) return Event{};
  return w->event(i);
}

const float* Execution::Tape::payload_at(TimeMs t) const {
  const FWindow* w = window_of(t);
  require(w != nullptr, Status::Internal, "payload read outside produced range");
  return w->payload((t - w->sync()) / w->period());
}

TimeMs Execution::Tape::next_present(TimeMs from, TimeMs to) const {
  const TimeMs p = period();
  for (TimeMs t = align_up(from, offset(), p); t < to; t += p)
    if (present_at(t)) return t;
  return kNone;
}

TimeMs Execution::Tape::prev_present(TimeMs from, TimeMs to) const {
  const TimeMs p = period();
  for (TimeMs t = align_down(to - 1, offset(), p); t >= from; t -= p)
    if (present_at(t)) return t;
  return kNone;
}

// ---------------------------------------------------------------------------
// Construction

Execution::Execution(const CompiledPlan& plan, std::vector<const SourceData*> sources)
    : plan_(&plan), sources_(std::move(sources)) {
  const Graph& g = plan.graph;
  require(sources_.size() == g.source_nodes.size(), Status::Usage,
          "expected " + std::to_string(g.source_nodes.size()) + " bound sources, got " +
              std::to_string(sources_.size()));
  for (size_t i = 0; i < sources_.size(); ++i) {
    const Node& sn = g.nodes[static_cast<size_t>(g.source_nodes[i])];
    const StreamDescriptor& want = g.edges[static_cast<size_t>(sn.outputs[0])].desc;
    require(sources_[i] != nullptr, Status::Usage, "null source binding");
    if (!(sources_[i]->desc == want))
      fail(Status::Usage, "source " + sn.name + " descriptor mismatch: query expects " +
                              want.str() + ", data is " + sources_[i]->desc.str());
  }

  edges_.resize(g.edges.size());
  for (const Edge& e : g.edges) {
    EdgeRT& er = edges_[static_cast<size_t>(e.id)];
    er.edge = &e;
    er.dim = e.dim;
    er.base = pos_mod(e.desc.offset, e.desc.period);
    if (e.alias_of >= 0) continue;  // shares the root edge's ring
    er.depth = e.ring_depth;
    er.ring.reserve(static_cast<size_t>(er.depth));
    for (int d = 0; d < er.depth; ++d) er.ring.emplace_back(e.desc, er.base, er.dim);
  }

  nodes_.resize(g.nodes.size());
  for (const Node& n : g.nodes) {
    NodeRT& nr = nodes_[static_cast<size_t>(n.id)];
    if (n.kind == OpKind::Aggregate && n.params.agg == AggKind::User) {
      const Edge& in = g.edges[static_cast<size_t>(n.inputs[0])];
      nr.agg_scratch.assign(static_cast<size_t>(n.params.w / in.desc.period), 0.f);
    }
    if (n.kind == OpKind::Transform) {
      nr.slice = n.params.transform_factory();
      const Edge& in = g.edges[static_cast<size_t>(n.inputs[0])];
      const size_t cap = static_cast<size_t>(n.params.w / in.desc.period);
      nr.warm_payload.assign(cap * static_cast<size_t>(lanes_of(in.desc.payload)), 0.f);
      nr.warm_vsync.assign(cap, 0);
      nr.warm_duration.assign(cap, 0);
      nr.warm_present.assign(cap, 0);
    }
  }
  sink_root_ = g.root_edge(g.sink_edge);
}

// ---------------------------------------------------------------------------
// Demand-driven production

void Execution::ensure_interval(int edge, const Interval& iv) {
  if (iv.empty()) return;
  EdgeRT& er = edges_[static_cast<size_t>(plan_->graph.root_edge(edge))];
  const std::int64_t m_lo = floor_div(iv.lo - er.base, er.dim);
  const std::int64_t m_hi = floor_div(iv.hi - 1 - er.base, er.dim);
  if (!er.started) {
    er.started = true;
    er.low = er.next = m_lo;
  } else if (m_lo > er.next) {
    // the execution cursor jumped over a skippable stretch: restart here
    er.low = er.next = m_lo;
    nodes_[static_cast<size_t>(er.edge->producer)].reset();
  } else if (m_lo < er.low) {
    // a consumer with a deeper lookback arrived after production started;
    // backfill while the ring still retains room for the earlier windows
    require(er.next - m_lo <= er.depth, Status::Internal,
            "ring too shallow to backfill an earlier window");
    for (std::int64_t m = m_lo; m < er.low; ++m) produce(er, m);
    er.low = m_lo;
  }
  while (er.next <= m_hi) {
    produce(er, er.next);
    ++er.next;
  }
}

void Execution::produce(EdgeRT& er, std::int64_t m) {
  const TimeMs wsync = er.base + m * er.dim;
  FWindow& w = er.ring[static_cast<size_t>(pos_mod(m, er.depth))];
  if (wsync > w.sync())
    w.slide(wsync);
  else if (wsync < w.sync())
    w.reposition(wsync);
  else
    w.clear();
  run_kernel(plan_->graph.nodes[static_cast<size_t>(er.edge->producer)], w);
}

// ---------------------------------------------------------------------------
// Kernels (all time-based: slot grids are absolute, reads go through tapes)

namespace {

// invoke fn(t) for every on-grid time of (offset, period) in [iv.lo, iv.hi)
template <typename Fn>
void for_grid(TimeMs offset, TimeMs period, const Interval& iv, Fn&& fn) {
  for (TimeMs t = align_up(iv.lo, offset, period); t < iv.hi; t += period) fn(t);
}

}  // namespace

void Execution::run_kernel(const Node& n, FWindow& out) {
  const Graph& g = plan_->graph;
  const Interval O{out.sync(), out.end()};

  if (n.kind == OpKind::Source) {
    const SourceData& sd = *sources_[static_cast<size_t>(n.source_idx)];
    const int lanes = out.lanes();
    for (std::int64_t i = sd.lower_bound(O.lo);
         i < sd.size() && sd.sync[static_cast<size_t>(i)] < O.hi; ++i) {
      const TimeMs t = sd.sync[static_cast<size_t>(i)];
      out.set(out.slot_of(t), t, sd.duration[static_cast<size_t>(i)],
              &sd.payload[static_cast<size_t>(i * lanes)]);
    }
    return;
  }

  // pull inputs through lineage first
  for (size_t i = 0; i < n.inputs.size(); ++i) {
    const Edge& in = g.edges[static_cast<size_t>(n.inputs[i])];
    const AffineMap m =
        input_lineage(n.kind, n.params, static_cast<int>(i), in.desc, out.descriptor(), out.dimension());
    ensure_interval(n.inputs[i], m.map(O));
  }

  NodeRT& nr = nodes_[static_cast<size_t>(n.id)];

  switch (n.kind) {
    case OpKind::Select: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      float tmp[kMaxLanes];
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const Event ev = in.at(out.slot_time(s));
        if (!ev.present) continue;
        n.params.map_fn(ev.sync, ev.payload, tmp);
        out.set(s, ev.sync, ev.duration, tmp);
      }
      break;
    }

    case OpKind::Where: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const Event ev = in.at(out.slot_time(s));
        if (ev.present && n.params.pred_fn(ev.sync, ev.payload))
          out.set(s, ev.sync, ev.duration, ev.payload);
      }
      break;
    }

    case OpKind::AlterDuration: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const Event ev = in.at(out.slot_time(s));
        if (ev.present) out.set(s, ev.sync, n.params.d, ev.payload);
      }
      break;
    }

    case OpKind::Shift: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const Event ev = in.at(out.slot_time(s) - n.params.k);
        if (ev.present) out.set(s, ev.sync + n.params.k, ev.duration, ev.payload);
      }
      break;
    }

    case OpKind::Chop: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs c = n.params.c;
      for_grid(in.offset(), in.period(), O, [&](TimeMs t) {
        const Event ev = in.at(t);
        if (!ev.present) return;
        require(ev.end() <= O.hi, Status::Internal,
                "Chop input event crosses the window boundary");
        TimeMs a = ev.sync;
        while (a < ev.end()) {
          TimeMs cut = align_down(a, 0, c) + c;  // next boundary strictly after a
          const TimeMs b = std::min(cut, ev.end());
          out.set(out.slot_of(a), a, b - a, ev.payload);
          a = b;
        }
      });
      break;
    }

    case OpKind::Aggregate: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs w = n.params.w;
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const TimeMs t0 = out.slot_time(s);
        double sum = 0, sumsq = 0;
        float mx = 0, mn = 0;
        std::int64_t cnt = 0;
        for_grid(in.offset(), in.period(), Interval{t0, t0 + w}, [&](TimeMs t) {
          const FWindow* iw = in.window_of(t);
          if (!iw) return;
          const std::int64_t i = (t - iw->sync()) / iw->period();
          if (!iw->present(i)) return;
          const float v = iw->payload(i)[0];
          if (cnt == 0) {
            mx = mn = v;
          } else {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
          }
          sum += v;
          sumsq += static_cast<double>(v) * v;
          if (n.params.agg == AggKind::User)
            nr.agg_scratch[static_cast<size_t>(cnt)] = v;
          ++cnt;
        });
        if (cnt == 0) continue;  // empty summary window stays absent
        float v = 0;
        switch (n.params.agg) {
          case AggKind::Sum: v = static_cast<float>(sum); break;
          case AggKind::Max: v = mx; break;
          case AggKind::Min: v = mn; break;
          case AggKind::Count: v = static_cast<float>(cnt); break;
          case AggKind::Mean: v = static_cast<float>(sum / static_cast<double>(cnt)); break;
          case AggKind::Std: {
            const double mean = sum / static_cast<double>(cnt);
            const double var = std::max(0.0, sumsq / static_cast<double>(cnt) - mean * mean);
            v = static_cast<float>(std::sqrt(var));
            break;
          }
          case AggKind::User: v = n.params.agg_fn(nr.agg_scratch.data(), cnt); break;
        }
        out.set_scalar(s, t0, n.params.p, v);
      }
      break;
    }

    case OpKind::Join: {
      Tape L(*this, g.root_edge(n.inputs[0]));
      Tape R(*this, g.root_edge(n.inputs[1]));
      const JoinMode mode = n.params.join_mode;
      float tmp[kMaxLanes];
      auto emit = [&](TimeMs sync, std::int64_t dur, const float* pl, const float* pr) {
        if (sync < O.lo || sync >= O.hi) return;  // emitted by a neighboring window
        require(out.descriptor().on_grid(sync), Status::Internal,
                "join result sync off the output slot grid");
        const std::int64_t slot = out.slot_of(sync);
        require(!out.present(slot), Status::Internal, "join slot collision");
        n.params.combine_fn(pl, pr, tmp);
        out.set(slot, sync, dur, tmp);
      };
      // left-anchored pass: pairs stamped at the left sync, plus left remainders
      for_grid(L.offset(), L.period(), O, [&](TimeMs tl) {
        const Event el = L.at(tl);
        if (!el.present) return;
        TimeMs cursor = el.sync;
        for_grid(R.offset(), R.period(),
                 Interval{el.sync - R.period() + 1, el.end()}, [&](TimeMs tr) {
          const Event er = R.at(tr);
          if (!er.present || er.end() <= el.sync || er.sync >= el.end()) return;
          const TimeMs s = std::max(el.sync, er.sync);
          if (er.sync <= el.sync)  // ties and earlier partners stamp at the left sync
            emit(s, std::min(el.end(), er.end()) - s, el.payload, er.payload);
          if (mode != JoinMode::Inner && er.sync > cursor)
            emit(cursor, std::min(er.sync, el.end()) - cursor, el.payload, nullptr);
          cursor = std::max(cursor, std::min(er.end(), el.end()));
        });
        if (mode != JoinMode::Inner && cursor < el.end())
          emit(cursor, el.end() - cursor, el.payload, nullptr);
      });
      // right-anchored pass: pairs whose sync is the (later) right sync
      for_grid(R.offset(), R.period(), O, [&](TimeMs tr) {
        const Event er = R.at(tr);
        if (!er.present) return;
        for_grid(L.offset(), L.period(),
                 Interval{er.sync - L.period() + 1, er.sync}, [&](TimeMs tl) {
          const Event el = L.at(tl);
          if (!el.present || el.end() <= er.sync) return;
          emit(er.sync, std::min(el.end(), er.end()) - er.sync, el.payload, er.payload);
        });
        if (mode == JoinMode::Outer) {
          // uncovered right remainders
          TimeMs cursor = er.sync;
          for_grid(L.offset(), L.period(),
                   Interval{er.sync - L.period() + 1, er.end()}, [&](TimeMs tl) {
            const Event el = L.at(tl);
            if (!el.present || el.end() <= er.sync || el.sync >= er.end()) return;
            if (el.sync > cursor) emit(cursor, std::min(el.sync, er.end()) - cursor, nullptr, er.payload);
            cursor = std::max(cursor, std::min(el.end(), er.end()));
          });
          if (cursor < er.end()) emit(cursor, er.end() - cursor, nullptr, er.payload);
        }
      });
      break;
    }

    case OpKind::ClipJoin: {
      Tape L(*this, g.root_edge(n.inputs[0]));
      Tape R(*this, g.root_edge(n.inputs[1]));
      float tmp[kMaxLanes];
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const Event el = L.at(out.slot_time(s));
        if (!el.present) continue;
        const TimeMs tr = R.next_present(el.sync, el.end());
        if (tr == Tape::kNone) {
          n.params.combine_fn(el.payload, nullptr, tmp);
          out.set(s, el.sync, el.duration, tmp);
        } else {
          const Event er = R.at(tr);
          n.params.combine_fn(el.payload, er.payload, tmp);
          // a co-located right event annotates without clipping
          out.set(s, el.sync, er.sync == el.sync ? el.duration : er.sync - el.sync, tmp);
        }
      }
      break;
    }

    case OpKind::AlterPeriod: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const Edge& ie = g.edges[static_cast<size_t>(n.inputs[0])];
      const AffineMap m =
          input_lineage(n.kind, n.params, 0, ie.desc, out.descriptor(), out.dimension());
      const TimeMs p_old = ie.desc.period, p_new = out.period();
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const TimeMs t = out.slot_time(s);
        const Event ev = in.at(m.point_floor(t));
        if (!ev.present) continue;
        const std::int64_t dur = std::max<std::int64_t>(1, ev.duration * p_new / p_old);
        out.set(s, t, dur, ev.payload);
      }
      break;
    }

    case OpKind::Resample: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs p_old = in.period(), p_new = out.period();
      const int lanes = out.lanes();
      float tmp[kMaxLanes];
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const TimeMs t = out.slot_time(s);
        const TimeMs t1 = align_down(t, in.offset(), p_old);
        if (t1 == t) {
          const Event ev = in.at(t1);
          if (ev.present) out.set(s, t, p_new, ev.payload);
          continue;
        }
        const Event e1 = in.at(t1);
        const Event e2 = in.at(t1 + p_old);
        if (!e1.present || !e2.present) continue;  // no adjacent support, leave the gap
        const double a = static_cast<double>(t - t1) / static_cast<double>(p_old);
        for (int l = 0; l < lanes; ++l)
          tmp[l] = static_cast<float>((1.0 - a) * e1.payload[l] + a * e2.payload[l]);
        out.set(s, t, p_new, tmp);
      }
      break;
    }

    case OpKind::FillConst: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs p = out.period(), limit = n.params.gap_limit;
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const TimeMs t = out.slot_time(s);
        const Event ev = in.at(t);
        if (ev.present) {
          out.set(s, ev.sync, ev.duration, ev.payload);
          continue;
        }
        // bridge iff the surrounding present samples are at most limit+p apart
        const TimeMs tp = in.prev_present(t - limit - p, t);
        if (tp == Tape::kNone) continue;
        const TimeMs tn = in.next_present(t + p, tp + limit + p + 1);
        if (tn != Tape::kNone) out.set_scalar(s, t, p, n.params.fill_value);
      }
      break;
    }

    case OpKind::FillMean: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs p = out.period(), w = n.params.w;
      for (std::int64_t s = 0; s < out.capacity(); ++s) {
        const TimeMs t = out.slot_time(s);
        const Event ev = in.at(t);
        if (ev.present) {
          out.set(s, ev.sync, ev.duration, ev.payload);
          continue;
        }
        // gap qualifies only when bounded by present samples within w
        const TimeMs tp = in.prev_present(t - w - p, t);
        if (tp == Tape::kNone) continue;
        if (in.next_present(t + p, tp + w + p + 1) == Tape::kNone) continue;
        const TimeMs b = align_down(t, in.offset(), w);
        double sum = 0;
        std::int64_t cnt = 0;
        for_grid(in.offset(), p, Interval{b, b + w}, [&](TimeMs u) {
          const Event e2 = in.at(u);
          if (!e2.present) return;
          sum += e2.payload[0];
          ++cnt;
        });
        if (cnt > 0) out.set_scalar(s, t, p, static_cast<float>(sum / static_cast<double>(cnt)));
      }
      break;
    }

    case OpKind::Transform: {
      Tape in(*this, g.root_edge(n.inputs[0]));
      const TimeMs w = n.params.w, p = out.period();
      const std::int64_t per_slice = w / p;
      // re-warm from the lookback slice so the result is independent of which
      // windows were previously produced (eager and targeted runs agree)
      nr.slice->reset();
      if (const FWindow* pw = in.window_of(O.lo - w)) {
        const std::int64_t islot = (O.lo - w - pw->sync()) / p;
        SliceTransform::Slice si;
        si.n = per_slice;
        si.payload = pw->payload_data() + islot * pw->lanes();
        si.vsync = pw->vsync_data() + islot;
        si.duration = pw->duration_data() + islot;
        si.present = pw->present_data() + islot;
        si.start = O.lo - w;
        si.period = p;
        SliceTransform::SliceOut so;
        so.n = per_slice;
        so.payload = nr.warm_payload.data();
        so.vsync = nr.warm_vsync.data();
        so.duration = nr.warm_duration.data();
        so.present = nr.warm_present.data();
        nr.slice->apply(si, so);
      }
      for (TimeMs a = O.lo; a < O.hi; a += w) {
        const FWindow* iw = in.window_of(a);
        require(iw != nullptr, Status::Internal, "transform slice outside produced input");
        const std::int64_t islot = (a - iw->sync()) / p;
        const std::int64_t oslot = out.slot_of(a);
        SliceTransform::Slice si;
        si.n = per_slice;
        si.payload = iw->payload_data() + islot * iw->lanes();
        si.vsync = iw->vsync_data() + islot;
        si.duration = iw->duration_data() + islot;
        si.present = iw->present_data() + islot;
        si.start = a;
        si.period = p;
        SliceTransform::SliceOut so;
        so.n = per_slice;
        so.payload = out.payload_data() + oslot * out.lanes();
        so.vsync = out.vsync_data() + oslot;
        so.duration = out.duration_data() + oslot;
        so.present = out.present_data() + oslot;
        nr.slice->apply(si, so);
      }
      break;
    }

    case OpKind::Source:
    case OpKind::Multicast:
      fail(Status::Internal, "kernel invoked for a non-producing node");
  }
}

// ---------------------------------------------------------------------------
// Run loops

std::int64_t Execution::sink_index_of(TimeMs t) const {
  const EdgeRT& er = edges_[static_cast<size_t>(sink_root_)];
  return floor_div(t - er.base, er.dim);
}

TimeMs Execution::sink_window_start(std::int64_t m) const {
  const EdgeRT& er = edges_[static_cast<size_t>(sink_root_)];
  return er.base + m * er.dim;
}

ExecutionStats Execution::run_eager(const Interval& range, Sink& sink) {
  require(!range.empty(), Status::Usage, "empty execution range");
  ExecutionStats st;
  const EdgeRT& er = edges_[static_cast<size_t>(sink_root_)];
  const std::int64_t n_lo = sink_index_of(range.lo);
  const std::int64_t n_hi = sink_index_of(range.hi - 1) + 1;
  AllocCounters mark{};
  bool marked = false;
  for (std::int64_t n = n_lo; n < n_hi; ++n) {
    const TimeMs t = sink_window_start(n);
    ensure_interval(sink_root_, Interval{t, t + er.dim});
    const FWindow& w = er.ring[static_cast<size_t>(pos_mod(n, er.depth))];
    sink.consume(w);
    st.events_out += w.present_count();
    ++st.windows_processed;
    ++st.windows_total;
    if (!marked) {
      mark = alloc_counters();
      marked = true;
    }
  }
  if (marked) {
    const AllocCounters end = alloc_counters();
    st.steady_alloc_count = end.count - mark.count;
    st.steady_alloc_bytes = end.bytes - mark.bytes;
  }
  return st;
}

bool Execution::skip_true(const SkipExpr& s, const Interval& win) const {
  switch (s.kind) {
    case SkipExpr::Kind::Leaf:
      return sources_[static_cast<size_t>(s.source_idx)]->avail.covers_any(s.map.map(win));
    case SkipExpr::Kind::And:
      for (const auto& c : s.children)
        if (!skip_true(c, win)) return false;
      return true;
    case SkipExpr::Kind::Or:
      for (const auto& c : s.children)
        if (skip_true(c, win)) return true;
      return false;
  }
  return true;
}

std::int64_t Execution::skip_jump(const SkipExpr& s, std::int64_t m) const {
  constexpr std::int64_t kFar = INT64_MAX / 4;
  switch (s.kind) {
    case SkipExpr::Kind::Leaf: {
      const EdgeRT& er = edges_[static_cast<size_t>(sink_root_)];
      const Interval win{sink_window_start(m), sink_window_start(m + 1)};
      const Interval iv = s.map.map(win);
      const TimeMs avail =
          sources_[static_cast<size_t>(s.source_idx)]->avail.next_available(iv.lo);
      if (avail == AvailabilityIndex::kNone) return kFar;
      // smallest window start whose (extended) lineage can reach `avail`;
      // conservative, the caller re-evaluates the predicate there
      const TimeMs t0 = s.map.inverse_at_least(avail - s.map.ext_hi) - er.dim;
      return std::max(m + 1, floor_div(t0 - er.base, er.dim));
    }
    case SkipExpr::Kind::And: {
      std::int64_t j = m + 1;
      for (const auto& c : s.children) j = std::max(j, skip_jump(c, m));
      return j;
    }
    case SkipExpr::Kind::Or: {
      std::int64_t j = kFar;
      for (const auto& c : s.children) j = std::min(j, skip_jump(c, m));
      return std::max(j, m + 1);
    }
  }
  return m + 1;
}

ExecutionStats Execution::run_targeted(const Interval& range, Sink& sink) {
  require(!range.empty(), Status::Usage, "empty execution range");
  ExecutionStats st;
  const EdgeRT& er = edges_[static_cast<size_t>(sink_root_)];
  const std::int64_t n_lo = sink_index_of(range.lo);
  const std::int64_t n_hi = sink_index_of(range.hi - 1) + 1;
  AllocCounters mark{};
  bool marked = false;
  std::int64_t n = n_lo;
  while (n < n_hi) {
    const TimeMs t = sink_window_start(n);
    const Interval win{t, t + er.dim};
    if (!skip_true(plan_->skip, win)) {
      std::int64_t nj = std::min(n_hi, skip_jump(plan_->skip, n));
      st.windows_skipped += nj - n;
      st.windows_total += nj - n;
      n = nj;
      continue;
    }
    ensure_interval(sink_root_, win);
    const FWindow& w = er.ring[static_cast<size_t>(pos_mod(n, er.depth))];
    sink.consume(w);
    st.events_out += w.present_count();
    ++st.windows_processed;
    ++st.windows_total;
    if (!marked) {
      mark = alloc_counters();
      marked = true;
    }
    ++n;
  }
  if (marked) {
    const AllocCounters end = alloc_counters();
    st.steady_alloc_count = end.count - mark.count;
    st.steady_alloc_bytes = end.bytes - mark.bytes;
  }
  return st;
}

}  // namespace fws
