#include "mptsp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

// Residual flow of one commodity with the walk state used while peeling.
class Peeler {
 public:
  Peeler(const BidirectedGraph& g, std::vector<double> residual, double eps)
      : g_(g), residual_(std::move(residual)), eps_(eps),
        position_(g.num_vertices(), -1) {
    for (double& r : residual_) {
      if (r <= eps_) r = 0.0;
    }
  }

  double residual(int a) const { return residual_[a]; }
  double total() const {
    return std::accumulate(residual_.begin(), residual_.end(), 0.0);
  }
  double surplus(Vertex v) const {
    double s = 0.0;
    for (int a : g_.out_arcs(v)) s += residual_[a];
    for (int a : g_.in_arcs(v)) s -= residual_[a];
    return s;
  }

  // Walks from start along lowest-indexed residual arcs. Loops closed on the
  // way are peeled into cycles. Stops at target (returns the path) or when
  // a loop is peeled and stop_at_cycle is set. Returns false on a stall.
  bool walk(Vertex start, Vertex target, bool stop_at_cycle,
            CommodityDecomposition& out) {
    reset();
    push_vertex(start);
    Vertex cur = start;
    while (true) {
      if (cur == target) {
        out.paths.push_back(extract(0));
        reset();
        return true;
      }
      const int a = next_arc(cur);
      if (a < 0) {
        reset();
        return false;
      }
      const Vertex w = g_.arc(a).head;
      arcs_.push_back(a);
      if (position_[w] >= 0) {
        const int from = position_[w];
        out.cycles.push_back(extract(from));
        // Truncate the walk back to w and keep going from there.
        for (std::size_t j = from + 1; j < vertices_.size(); ++j) {
          position_[vertices_[j]] = -1;
        }
        vertices_.resize(from + 1);
        arcs_.resize(from);
        if (stop_at_cycle) {
          reset();
          return true;
        }
        cur = w;
        continue;
      }
      push_vertex(w);
      cur = w;
    }
  }

 private:
  int next_arc(Vertex v) const {
    for (int a : g_.out_arcs(v)) {
      if (residual_[a] > eps_) return a;
    }
    return -1;
  }

  void push_vertex(Vertex v) {
    position_[v] = static_cast<int>(vertices_.size());
    vertices_.push_back(v);
  }

  void reset() {
    for (Vertex v : vertices_) position_[v] = -1;
    vertices_.clear();
    arcs_.clear();
  }

  // Peels arcs_[from..] (with vertices_[from..]) at their bottleneck.
  WeightedWalk extract(int from) {
    WeightedWalk w;
    w.arcs.assign(arcs_.begin() + from, arcs_.end());
    w.vertices.assign(vertices_.begin() + from, vertices_.end());
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int a : w.arcs) bottleneck = std::min(bottleneck, residual_[a]);
    for (int a : w.arcs) {
      residual_[a] -= bottleneck;
      if (residual_[a] <= eps_) residual_[a] = 0.0;
    }
    w.weight = bottleneck;
    return w;
  }

  const BidirectedGraph& g_;
  std::vector<double> residual_;
  double eps_;
  std::vector<int> position_;
  std::vector<Vertex> vertices_;
  std::vector<int> arcs_;
};

}  // namespace

double CommodityDecomposition::path_weight() const {
  double total = 0.0;
  for (const auto& p : paths) total += p.weight;
  return total;
}

Decomposition decompose(const Instance& inst, const FractionalSolution& x, double eps) {
  const BidirectedGraph& g = *x.graph;
  Decomposition dec;
  dec.num_arcs = g.num_arcs();
  for (int i = 0; i < inst.num_commodities(); ++i) {
    const Commodity& c = inst.commodity(i);
    std::vector<double> residual(g.num_arcs());
    for (int a = 0; a < g.num_arcs(); ++a) residual[a] = x.flow(i, a);
    Peeler peeler(g, std::move(residual), eps);
    CommodityDecomposition out;

    if (!c.closed()) {
      while (peeler.surplus(c.source) > eps) {
        if (!peeler.walk(c.source, c.sink, false, out)) break;
      }
    }
    for (int a = 0; a < g.num_arcs(); ++a) {
      while (peeler.residual(a) > eps) {
        if (!peeler.walk(g.arc(a).tail, -1, true, out)) break;
      }
    }

    const double leftover = peeler.total();
    if (leftover > eps * g.num_arcs()) {
      throw Error(ErrorCode::kResidualNotDecomposable,
                  "commodity " + std::to_string(i) + " leaves residual " +
                      std::to_string(leftover));
    }
    dec.commodities.push_back(std::move(out));
  }
  return dec;
}

double reconstruction_error(const Decomposition& dec, const FractionalSolution& x) {
  Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(x.flow.rows(), x.flow.cols());
  for (int i = 0; i < static_cast<int>(dec.commodities.size()); ++i) {
    const auto& cd = dec.commodities[i];
    for (const auto* list : {&cd.paths, &cd.cycles}) {
      for (const auto& w : *list) {
        for (int a : w.arcs) rebuilt(i, a) += w.weight;
      }
    }
  }
  if (rebuilt.size() == 0) return 0.0;
  return (rebuilt - x.flow).cwiseAbs().maxCoeff();
}

PathMass path_mass(const Instance& inst, const Decomposition& dec) {
  const int k = inst.num_commodities();
  PathMass mass{Eigen::MatrixXd::Zero(k, inst.num_vertices())};
  for (int i = 0; i < k; ++i) {
    const Vertex sink = inst.commodity(i).sink;
    for (const auto& p : dec.commodities[i].paths) {
      for (Vertex v : p.vertices) {
        if (v != sink) mass.per_commodity(i, v) += p.weight;
      }
    }
  }
  return mass;
}

double expected_path_length(const CommodityDecomposition& dec) {
  double total = 0.0;
  for (const auto& p : dec.paths) total += p.weight * p.length();
  return total;
}

}  // namespace mptsp
