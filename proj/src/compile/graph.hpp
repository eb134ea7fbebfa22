#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/fwindow.hpp"
#include "ops/node.hpp"

namespace fws {

struct Node {
  int id = -1;
  OpKind kind = OpKind::Source;
  std::string name;
  OpParams params;
  std::vector<int> inputs;   // edge ids
  std::vector<int> outputs;  // edge ids (Multicast has several)
  int source_idx = -1;       // for Source nodes: bind slot at run time
};

struct Edge {
  int id = -1;
  int producer = -1;
  std::vector<int> consumers;  // node ids; empty for the sink edge
  StreamDescriptor desc;
  TimeMs dim = 1;
  int alias_of = -1;  // multicast branches alias the producer's edge buffer
  int ring_depth = 1;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int sink_edge = -1;
  std::vector<int> source_nodes;  // in declaration order

  int root_edge(int e) const {
    while (edges[e].alias_of >= 0) e = edges[e].alias_of;
    return e;
  }
};

struct MemoryPlan {
  struct EdgeRow {
    int edge = -1;
    std::int64_t capacity = 0;
    int depth = 0;
    std::int64_t bytes = 0;
  };
  std::vector<EdgeRow> edges;
  std::vector<std::pair<int, std::int64_t>> state_bytes;  // node id -> bytes
  std::int64_t total_bytes = 0;
};

// Conjunction structure over source availability used by targeted execution:
// a sink window can be skipped iff the expression evaluates false on it.
struct SkipExpr {
  enum class Kind { Leaf, And, Or } kind = Kind::Leaf;
  int source_idx = -1;  // Leaf: index into Graph::source_nodes
  AffineMap map;        // Leaf: sink interval -> required source interval
  std::vector<SkipExpr> children;
};

struct CompileOptions {
  TimeMs dimension_cap = (std::int64_t{1} << 32);
  std::int64_t memory_budget = 0;  // bytes, 0 = unlimited
};

struct CompiledPlan {
  Graph graph;
  std::vector<std::string> trace_log;
  MemoryPlan memory;
  std::vector<int> topo_nodes;  // sources first
  SkipExpr skip;
  std::vector<std::vector<AffineMap>> source_maps;  // per source: sink->source paths
  TimeMs dimension() const { return graph.edges[graph.sink_edge].dim; }

  std::string plan_dump() const;
  std::string trace_text() const;
  // Lineage of a sink interval on every source (hull over paths).
  std::vector<Interval> source_intervals(const Interval& sink) const;
};

class Query;

// Fluent handle to a stream under construction.
class StreamExpr {
 public:
  StreamExpr() = default;
  StreamExpr select(MapFn f, PayloadKind out = PayloadKind::F32) const;
  StreamExpr select_values(std::function<float(float)> f) const;
  StreamExpr where(PredFn pred) const;
  StreamExpr where_values(std::function<bool(float)> pred) const;
  StreamExpr aggregate(AggKind agg, TimeMs w, TimeMs p, AggFn fn = nullptr) const;
  StreamExpr join(const StreamExpr& right, JoinMode mode, CombineFn combine,
                  PayloadKind out = PayloadKind::F32) const;
  StreamExpr clip_join(const StreamExpr& right, CombineFn combine,
                       PayloadKind out = PayloadKind::F32) const;
  StreamExpr chop(TimeMs c) const;
  StreamExpr shift(TimeMs k) const;
  StreamExpr alter_period(TimeMs new_period) const;
  StreamExpr alter_duration(std::int64_t d) const;
  StreamExpr transform(TimeMs w, SliceTransformFactory factory) const;
  StreamExpr fill_const(TimeMs gap_limit, float value) const;
  StreamExpr fill_mean(TimeMs w) const;
  StreamExpr resample(TimeMs new_period) const;

  const StreamDescriptor& descriptor() const;

 private:
  friend class Query;
  Query* q_ = nullptr;
  int edge_ = -1;
};

// Query under construction. Build a DAG of operators over declared sources,
// then mark one stream as the sink and compile.
class Query {
 public:
  StreamExpr source(const std::string& name, const StreamDescriptor& desc);
  void sink(const StreamExpr& s);

  StreamExpr apply(OpKind kind, OpParams params, const std::vector<StreamExpr>& ins);

  int num_sources() const { return static_cast<int>(g_.source_nodes.size()); }

 private:
  friend class StreamExpr;
  friend CompiledPlan compile(Query q, const CompileOptions& opt);
  Graph g_;
  std::vector<int> kind_counts_ = std::vector<int>(32, 0);
  bool sunk_ = false;
};

CompiledPlan compile(Query q, const CompileOptions& opt = {});

// Exposed separately for tests: runs the fixed-point dimension unification on
// a built graph, appending one log line per adjustment. Returns true if any
// dimension changed.
bool locality_trace(Graph& g, std::vector<std::string>& log, TimeMs dimension_cap);

MemoryPlan plan_memory(const Graph& g, std::int64_t budget);

std::vector<int> topo_order(const Graph& g);

}  // namespace fws
