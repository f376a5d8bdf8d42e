#ifndef MPTSP_GRAPH_HPP
#define MPTSP_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace mptsp {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Undirected unit-cost graph. Immutable after construction; adjacency lists
// are sorted by neighbor so every traversal below is deterministic.
class Graph {
 public:
  struct Incidence {
    Vertex neighbor;
    int edge;
  };

  Graph() = default;
  // Throws Error on self-loops, duplicate edges or out-of-range endpoints.
  // Connectivity is not required here; instances enforce it.
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const noexcept { return num_vertices_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  std::span<const Incidence> incident(Vertex v) const {
    return {incidence_.data() + offsets_[v],
            incidence_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Edge id joining u and v, or -1.
  int find_edge(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return find_edge(u, v) >= 0; }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Incidence> incidence_;
};

// Arc-doubled form of a Graph. Edge e = (u, v) yields arc 2e = u->v and arc
// 2e + 1 = v->u.
class BidirectedGraph {
 public:
  struct Arc {
    Vertex tail;
    Vertex head;
  };

  explicit BidirectedGraph(const Graph& base);

  const Graph& base() const noexcept { return base_; }
  int num_vertices() const noexcept { return base_.num_vertices(); }
  int num_arcs() const noexcept { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  static constexpr int edge_of(int arc) noexcept { return arc / 2; }
  static constexpr int reverse(int arc) noexcept { return arc ^ 1; }

  // Arc ids leaving / entering v, ascending.
  std::span<const int> out_arcs(Vertex v) const {
    return {out_.data() + out_offsets_[v], out_.data() + out_offsets_[v + 1]};
  }
  std::span<const int> in_arcs(Vertex v) const {
    return {in_.data() + in_offsets_[v], in_.data() + in_offsets_[v + 1]};
  }

  // Arc id for tail->head, or -1.
  int find_arc(Vertex tail, Vertex head) const;

 private:
  Graph base_;
  std::vector<Arc> arcs_;
  std::vector<int> out_offsets_, out_;
  std::vector<int> in_offsets_, in_;
};

// Arcs of a BidirectedGraph with a nonnegative capacity on each arc.
class CapacitatedNetwork {
 public:
  CapacitatedNetwork(const BidirectedGraph& graph, std::vector<double> capacity);

  const BidirectedGraph& graph() const noexcept { return *graph_; }
  double capacity(int arc) const { return capacity_[arc]; }
  std::span<const double> capacities() const noexcept { return capacity_; }

 private:
  const BidirectedGraph* graph_;
  std::vector<double> capacity_;
};

std::vector<int> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

// Shortest path as a vertex sequence from source to target. Each vertex's
// predecessor is its lowest-indexed neighbor one step closer to source.
// Returns an empty vector if target is unreachable.
std::vector<Vertex> shortest_path(const Graph& g, Vertex source, Vertex target);

// All-pairs hop distances, row-major n x n.
std::vector<int> all_pairs_distances(const Graph& g);

inline constexpr double kFlowEpsilon = 1e-9;

struct MinCut {
  double value = 0.0;
  std::vector<char> source_side;  // indicator of U, s in U, t not in U
};

// Reusable buffers for min_cut; one per concurrent caller.
struct MaxFlowScratch {
  std::vector<double> residual;
  std::vector<int> level;
  std::vector<int> next_arc;
  std::vector<Vertex> queue;
};

// Level-graph augmenting-path max flow on real capacities. Residuals at or
// below kFlowEpsilon count as saturated.
MinCut min_cut(const CapacitatedNetwork& net, Vertex s, Vertex t,
               MaxFlowScratch& scratch);
MinCut min_cut(const CapacitatedNetwork& net, Vertex s, Vertex t);

// Capacity of the arcs leaving the indicated vertex set.
double cut_capacity(const CapacitatedNetwork& net, const std::vector<char>& in_set);

}  // namespace mptsp

#endif  // MPTSP_GRAPH_HPP
