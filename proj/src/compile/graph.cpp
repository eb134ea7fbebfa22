#include "compile/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fws {

namespace {

std::int64_t cell_bytes(const StreamDescriptor& d) {
  // payload lanes + vsync + duration + bitvector flag
  return lanes_of(d.payload) * 4 + 8 + 8 + 1;
}

std::int64_t state_bytes_estimate(const Node& n, const Graph& g) {
  auto cap = [&](int edge) {
    const Edge& e = g.edges[edge];
    return e.dim / e.desc.period;
  };
  switch (n.kind) {
    case OpKind::Join:
    case OpKind::ClipJoin: {
      std::int64_t c = cap(n.inputs[0]) + cap(n.inputs[1]) + 2;
      return c * static_cast<std::int64_t>(sizeof(Event));
    }
    case OpKind::Chop:
      return static_cast<std::int64_t>(sizeof(Event));
    case OpKind::Aggregate:
      return (n.params.w / g.edges[n.inputs[0]].desc.period) * 4;
    case OpKind::Transform:
      return (n.params.w / g.edges[n.inputs[0]].desc.period) *
             cell_bytes(g.edges[n.inputs[0]].desc);
    case OpKind::FillConst:
    case OpKind::FillMean:
    case OpKind::Resample:
      return 16;
    default:
      return 0;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Builder

StreamExpr Query::source(const std::string& name, const StreamDescriptor& desc) {
  require(!sunk_, Status::Usage, "query already has a sink");
  require(desc.period >= 1, Status::Usage, "source period must be >= 1 ms");
  Node n;
  n.id = static_cast<int>(g_.nodes.size());
  n.kind = OpKind::Source;
  n.source_idx = static_cast<int>(g_.source_nodes.size());
  n.name = "Source_" + std::to_string(n.source_idx + 1) + "(" + name + ")";
  Edge e;
  e.id = static_cast<int>(g_.edges.size());
  e.producer = n.id;
  e.desc = desc;
  e.dim = desc.period;
  n.outputs.push_back(e.id);
  g_.source_nodes.push_back(n.id);
  g_.nodes.push_back(n);
  g_.edges.push_back(e);
  StreamExpr s;
  s.q_ = this;
  s.edge_ = e.id;
  return s;
}

StreamExpr Query::apply(OpKind kind, OpParams params, const std::vector<StreamExpr>& ins) {
  require(!sunk_, Status::Usage, "query already has a sink");
  require(!ins.empty(), Status::Usage, "operator needs at least one input");
  std::vector<StreamDescriptor> in_descs;
  for (const auto& s : ins) {
    require(s.q_ == this, Status::Usage, "stream belongs to a different query");
    in_descs.push_back(g_.edges[s.edge_].desc);
  }
  int idx = ++kind_counts_[static_cast<int>(kind)];
  std::string name = std::string(op_name(kind)) + "_" + std::to_string(idx);
  validate_params(kind, params, in_descs, name);

  Node n;
  n.id = static_cast<int>(g_.nodes.size());
  n.kind = kind;
  n.name = name;
  n.params = std::move(params);
  for (const auto& s : ins) {
    n.inputs.push_back(s.edge_);
    g_.edges[s.edge_].consumers.push_back(n.id);
  }
  Edge e;
  e.id = static_cast<int>(g_.edges.size());
  e.producer = n.id;
  e.desc = output_descriptor(kind, n.params, in_descs, name);
  e.dim = e.desc.period;
  n.outputs.push_back(e.id);
  g_.nodes.push_back(n);
  g_.edges.push_back(e);
  StreamExpr s;
  s.q_ = this;
  s.edge_ = e.id;
  return s;
}

void Query::sink(const StreamExpr& s) {
  require(s.q_ == this, Status::Usage, "sink stream belongs to a different query");
  require(!sunk_, Status::Usage, "query already has a sink");
  g_.sink_edge = s.edge_;
  sunk_ = true;
}

const StreamDescriptor& StreamExpr::descriptor() const {
  return q_->g_.edges[edge_].desc;
}

StreamExpr StreamExpr::select(MapFn f, PayloadKind out) const {
  OpParams p;
  p.map_fn = std::move(f);
  p.out_payload = out;
  return q_->apply(OpKind::Select, std::move(p), {*this});
}

StreamExpr StreamExpr::select_values(std::function<float(float)> f) const {
  return select([f = std::move(f)](TimeMs, const float* in, float* out) { out[0] = f(in[0]); });
}

StreamExpr StreamExpr::where(PredFn pred) const {
  OpParams p;
  p.pred_fn = std::move(pred);
  return q_->apply(OpKind::Where, std::move(p), {*this});
}

StreamExpr StreamExpr::where_values(std::function<bool(float)> pred) const {
  return where([pred = std::move(pred)](TimeMs, const float* in) { return pred(in[0]); });
}

StreamExpr StreamExpr::aggregate(AggKind agg, TimeMs w, TimeMs p, AggFn fn) const {
  OpParams op;
  op.agg = agg;
  op.w = w;
  op.p = p;
  op.agg_fn = std::move(fn);
  return q_->apply(OpKind::Aggregate, std::move(op), {*this});
}

StreamExpr StreamExpr::join(const StreamExpr& right, JoinMode mode, CombineFn combine,
                            PayloadKind out) const {
  OpParams p;
  p.join_mode = mode;
  p.combine_fn = std::move(combine);
  p.out_payload = out;
  return q_->apply(OpKind::Join, std::move(p), {*this, right});
}

StreamExpr StreamExpr::clip_join(const StreamExpr& right, CombineFn combine,
                                 PayloadKind out) const {
  OpParams p;
  p.combine_fn = std::move(combine);
  p.out_payload = out;
  return q_->apply(OpKind::ClipJoin, std::move(p), {*this, right});
}

StreamExpr StreamExpr::chop(TimeMs c) const {
  OpParams p;
  p.c = c;
  return q_->apply(OpKind::Chop, std::move(p), {*this});
}

StreamExpr StreamExpr::shift(TimeMs k) const {
  OpParams p;
  p.k = k;
  return q_->apply(OpKind::Shift, std::move(p), {*this});
}

StreamExpr StreamExpr::alter_period(TimeMs new_period) const {
  OpParams p;
  p.new_period = new_period;
  return q_->apply(OpKind::AlterPeriod, std::move(p), {*this});
}

StreamExpr StreamExpr::alter_duration(std::int64_t d) const {
  OpParams p;
  p.d = d;
  return q_->apply(OpKind::AlterDuration, std::move(p), {*this});
}

StreamExpr StreamExpr::transform(TimeMs w, SliceTransformFactory factory) const {
  OpParams p;
  p.w = w;
  p.transform_factory = std::move(factory);
  return q_->apply(OpKind::Transform, std::move(p), {*this});
}

StreamExpr StreamExpr::fill_const(TimeMs gap_limit, float value) const {
  OpParams p;
  p.gap_limit = gap_limit;
  p.fill_value = value;
  return q_->apply(OpKind::FillConst, std::move(p), {*this});
}

StreamExpr StreamExpr::fill_mean(TimeMs w) const {
  OpParams p;
  p.w = w;
  return q_->apply(OpKind::FillMean, std::move(p), {*this});
}

StreamExpr StreamExpr::resample(TimeMs new_period) const {
  OpParams p;
  p.new_period = new_period;
  return q_->apply(OpKind::Resample, std::move(p), {*this});
}

// ---------------------------------------------------------------------------
// Compilation

std::vector<int> topo_order(const Graph& g) {
  std::vector<int> indeg(g.nodes.size(), 0);
  for (const Node& n : g.nodes) indeg[static_cast<size_t>(n.id)] = static_cast<int>(n.inputs.size());
  std::deque<int> ready;
  for (const Node& n : g.nodes)
    if (n.inputs.empty()) ready.push_back(n.id);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int eid : g.nodes[static_cast<size_t>(v)].outputs) {
      for (int c : g.edges[static_cast<size_t>(eid)].consumers) {
        if (--indeg[static_cast<size_t>(c)] == 0) ready.push_back(c);
      }
    }
  }
  require(order.size() == g.nodes.size(), Status::Usage, "query graph has a cycle");
  return order;
}

bool locality_trace(Graph& g, std::vector<std::string>& log, TimeMs dimension_cap) {
  std::vector<int> order = topo_order(g);
  std::reverse(order.begin(), order.end());  // sink toward sources
  bool any_change = false;
  size_t max_sweeps = g.nodes.size() * g.nodes.size() + 2;
  for (size_t sweep = 0;; ++sweep) {
    require(sweep < max_sweeps, Status::Internal, "locality trace failed to reach a fixed point");
    bool changed = false;
    for (int nid : order) {
      Node& n = g.nodes[static_cast<size_t>(nid)];
      std::vector<int> eids = n.inputs;
      eids.insert(eids.end(), n.outputs.begin(), n.outputs.end());
      std::int64_t l = 1;
      for (int e : eids) l = lcm_checked(l, g.edges[static_cast<size_t>(e)].dim, dimension_cap, n.name);
      for (TimeMs wp : window_params(n.kind, n.params))
        l = lcm_checked(l, wp, dimension_cap, n.name);
      bool mismatch = false;
      for (int e : eids) mismatch |= (g.edges[static_cast<size_t>(e)].dim != l);
      if (mismatch) {
        std::ostringstream os;
        os << "adjust " << n.name << ": dims [";
        for (size_t i = 0; i < eids.size(); ++i)
          os << (i ? ", " : "") << g.edges[static_cast<size_t>(eids[i])].dim;
        os << "] -> " << l;
        log.push_back(os.str());
        for (int e : eids) g.edges[static_cast<size_t>(e)].dim = l;
        changed = true;
      }
    }
    any_change |= changed;
    if (!changed) break;
  }
  // Post conditions: every edge dimension tiles its period; AlterPeriod
  // boundaries map to integral input times.
  for (const Edge& e : g.edges) window_capacity(e.desc, e.dim, "edge " + std::to_string(e.id));
  for (const Node& n : g.nodes) {
    if (n.kind == OpKind::AlterPeriod) {
      const Edge& in = g.edges[static_cast<size_t>(n.inputs[0])];
      const Edge& out = g.edges[static_cast<size_t>(n.outputs[0])];
      if ((out.dim * in.desc.period) % out.desc.period != 0)
        fail(Status::Usage, n.name + ": old period * dimension must be divisible by new period");
    }
  }
  return any_change;
}

MemoryPlan plan_memory(const Graph& g, std::int64_t budget) {
  MemoryPlan plan;
  for (const Edge& e : g.edges) {
    MemoryPlan::EdgeRow row;
    row.edge = e.id;
    row.capacity = e.dim / e.desc.period;
    if (e.alias_of >= 0) {
      row.depth = 0;
      row.bytes = 0;  // shares the producer's buffer
    } else {
      row.depth = e.ring_depth;
      row.bytes = row.capacity * cell_bytes(e.desc) * e.ring_depth;
    }
    plan.total_bytes += row.bytes;
    plan.edges.push_back(row);
  }
  for (const Node& n : g.nodes) {
    std::int64_t b = state_bytes_estimate(n, g);
    if (b > 0) {
      plan.state_bytes.emplace_back(n.id, b);
      plan.total_bytes += b;
    }
  }
  if (budget > 0 && plan.total_bytes > budget)
    fail(Status::Usage, "memory plan (" + std::to_string(plan.total_bytes) +
                            " bytes) exceeds the configured budget (" + std::to_string(budget) +
                            "); shrink window parameters");
  return plan;
}

namespace {

// Forward reach (ms beyond the current output window) of each node's input
// consumption, used to size edge rings.
void compute_ring_depths(Graph& g) {
  std::vector<int> order = topo_order(g);
  std::vector<std::int64_t> ahead(g.nodes.size(), 0);
  std::vector<std::int64_t> behind(g.nodes.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node& n = g.nodes[static_cast<size_t>(*it)];
    std::int64_t a = 0, b = 0;
    for (int eid : n.outputs) {
      const Edge& e = g.edges[static_cast<size_t>(eid)];
      for (int cid : e.consumers) {
        const Node& c = g.nodes[static_cast<size_t>(cid)];
        const Edge& cout = g.edges[static_cast<size_t>(c.outputs[0])];
        for (size_t i = 0; i < c.inputs.size(); ++i) {
          if (c.inputs[i] != eid) continue;
          AffineMap m = input_lineage(c.kind, c.params, static_cast<int>(i), e.desc, cout.desc,
                                      cout.dim);
          std::int64_t span = ceil_div(m.num * (cout.dim + ahead[static_cast<size_t>(cid)]), m.den);
          a = std::max(a, span - e.dim + m.ext_hi);
          b = std::max(b, m.ext_lo + behind[static_cast<size_t>(cid)]);
        }
      }
    }
    ahead[static_cast<size_t>(n.id)] = std::max<std::int64_t>(a, 0);
    behind[static_cast<size_t>(n.id)] = std::max<std::int64_t>(b, 0);
  }
  for (Edge& e : g.edges) {
    if (e.alias_of >= 0) {
      e.ring_depth = 0;
      continue;
    }
    const std::int64_t reach = ahead[static_cast<size_t>(e.producer)] +
                               behind[static_cast<size_t>(e.producer)] + e.dim;
    e.ring_depth = static_cast<int>(ceil_div(reach, e.dim)) + 1;
  }
}

void insert_multicasts(Graph& g, std::vector<std::string>& log, std::vector<int>& kind_counts) {
  size_t original_edges = g.edges.size();
  for (size_t ei = 0; ei < original_edges; ++ei) {
    int fanout = static_cast<int>(g.edges[ei].consumers.size()) +
                 (g.sink_edge == static_cast<int>(ei) ? 1 : 0);
    if (fanout == 0 && g.sink_edge != static_cast<int>(ei))
      log.push_back("warning: dead branch on edge " + std::to_string(ei) + " (" +
                    g.nodes[static_cast<size_t>(g.edges[ei].producer)].name + ")");
    if (fanout < 2) continue;

    std::vector<int> consumers = g.edges[ei].consumers;
    Node m;
    m.id = static_cast<int>(g.nodes.size());
    m.kind = OpKind::Multicast;
    m.name = "Multicast_" + std::to_string(++kind_counts[static_cast<int>(OpKind::Multicast)]);
    m.inputs.push_back(static_cast<int>(ei));
    g.edges[ei].consumers.assign(1, m.id);
    // one branch per consumer occurrence, all aliasing the producer buffer
    for (int cid : consumers) {
      Node& c = g.nodes[static_cast<size_t>(cid)];
      for (size_t i = 0; i < c.inputs.size(); ++i) {
        if (c.inputs[i] != static_cast<int>(ei)) continue;
        Edge b;
        b.id = static_cast<int>(g.edges.size());
        b.producer = m.id;
        b.consumers.push_back(cid);
        b.desc = g.edges[ei].desc;
        b.dim = g.edges[ei].dim;
        b.alias_of = static_cast<int>(ei);
        m.outputs.push_back(b.id);
        c.inputs[i] = b.id;
        g.edges.push_back(b);
      }
    }
    if (g.sink_edge == static_cast<int>(ei)) {
      Edge b;
      b.id = static_cast<int>(g.edges.size());
      b.producer = m.id;
      b.desc = g.edges[ei].desc;
      b.dim = g.edges[ei].dim;
      b.alias_of = static_cast<int>(ei);
      m.outputs.push_back(b.id);
      g.sink_edge = b.id;
      g.edges.push_back(b);
    }
    g.nodes.push_back(m);
  }
}

SkipExpr build_skip(const Graph& g, int edge, const AffineMap& acc) {
  const Edge& e = g.edges[static_cast<size_t>(edge)];
  const Node& n = g.nodes[static_cast<size_t>(e.producer)];
  if (n.kind == OpKind::Source) {
    SkipExpr s;
    s.kind = SkipExpr::Kind::Leaf;
    s.source_idx = n.source_idx;
    s.map = acc;
    return s;
  }
  auto child = [&](int i) {
    const Edge& in = g.edges[static_cast<size_t>(n.inputs[static_cast<size_t>(i)])];
    AffineMap m = input_lineage(n.kind, n.params, i, in.desc, e.desc, e.dim);
    return build_skip(g, n.inputs[static_cast<size_t>(i)], acc.then(m));
  };
  switch (n.kind) {
    case OpKind::Join: {
      if (n.params.join_mode == JoinMode::Left) return child(0);
      SkipExpr s;
      s.kind = n.params.join_mode == JoinMode::Inner ? SkipExpr::Kind::And : SkipExpr::Kind::Or;
      s.children.push_back(child(0));
      s.children.push_back(child(1));
      return s;
    }
    case OpKind::ClipJoin:
      return child(0);
    default:
      return child(0);
  }
}

void collect_leaves(const SkipExpr& s, std::vector<std::vector<AffineMap>>& maps) {
  if (s.kind == SkipExpr::Kind::Leaf) {
    maps[static_cast<size_t>(s.source_idx)].push_back(s.map);
    return;
  }
  for (const auto& c : s.children) collect_leaves(c, maps);
}

}  // namespace

CompiledPlan compile(Query q, const CompileOptions& opt) {
  require(q.g_.sink_edge >= 0, Status::Usage, "query has no sink");
  CompiledPlan plan;
  plan.graph = std::move(q.g_);
  insert_multicasts(plan.graph, plan.trace_log, q.kind_counts_);
  plan.topo_nodes = topo_order(plan.graph);  // also rejects cycles
  locality_trace(plan.graph, plan.trace_log, opt.dimension_cap);
  compute_ring_depths(plan.graph);
  plan.memory = plan_memory(plan.graph, opt.memory_budget);
  plan.skip = build_skip(plan.graph, plan.graph.sink_edge, AffineMap::identity());
  plan.source_maps.assign(plan.graph.source_nodes.size(), {});
  collect_leaves(plan.skip, plan.source_maps);
  return plan;
}

std::string CompiledPlan::plan_dump() const {
  std::ostringstream os;
  os << "plan dimension=" << dimension() << " ms\n";
  for (const Edge& e : graph.edges) {
    const MemoryPlan::EdgeRow& row = memory.edges[static_cast<size_t>(e.id)];
    os << "edge " << e.id << ": " << graph.nodes[static_cast<size_t>(e.producer)].name << " -> ";
    if (e.consumers.empty()) {
      os << (e.id == graph.sink_edge ? "sink" : "(dead)");
    } else {
      for (size_t i = 0; i < e.consumers.size(); ++i)
        os << (i ? "," : "") << graph.nodes[static_cast<size_t>(e.consumers[i])].name;
    }
    os << "  " << e.desc.str() << "[" << e.dim << "]"
       << " capacity=" << row.capacity;
    if (e.alias_of >= 0)
      os << " shared(edge " << graph.root_edge(e.id) << ")";
    else
      os << " depth=" << row.depth << " bytes=" << row.bytes;
    os << "\n";
  }
  for (const auto& [nid, bytes] : memory.state_bytes)
    os << "state " << graph.nodes[static_cast<size_t>(nid)].name << ": bytes=" << bytes << "\n";
  os << "total bytes=" << memory.total_bytes << "\n";
  return os.str();
}

std::string CompiledPlan::trace_text() const {
  std::string out;
  for (const auto& l : trace_log) out += l + "\n";
  return out;
}

std::vector<Interval> CompiledPlan::source_intervals(const Interval& sink) const {
  std::vector<Interval> out(source_maps.size(), Interval{0, 0});
  for (size_t s = 0; s < source_maps.size(); ++s) {
    bool first = true;
    for (const AffineMap& m : source_maps[s]) {
      Interval iv = m.map(sink);
      if (first) {
        out[s] = iv;
        first = false;
      } else {
        out[s].lo = std::min(out[s].lo, iv.lo);
        out[s].hi = std::max(out[s].hi, iv.hi);
      }
    }
  }
  return out;
}

}  // namespace fws
