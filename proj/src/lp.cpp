#include "mptsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mptsp/error.hpp"

namespace mptsp {

LpModel::LpModel(const Instance& inst)
    : instance_(&inst),
      graph_(std::make_shared<const BidirectedGraph>(inst.graph())) {
  const BidirectedGraph& g = *graph_;
  const int n = g.num_vertices();
  const int k = inst.num_commodities();

  auto balance_row = [&](int i, Vertex v) {
    // out(v) - in(v)
    LinearRow row;
    for (int a : g.out_arcs(v)) row.terms.emplace_back(column(i, a), 1.0);
    for (int a : g.in_arcs(v)) row.terms.emplace_back(column(i, a), -1.0);
    std::sort(row.terms.begin(), row.terms.end());
    return row;
  };

  for (int i = 0; i < k; ++i) {
    const Commodity& c = inst.commodity(i);
    for (Vertex v = 0; v < n; ++v) {
      LinearRow row = balance_row(i, v);
      if (!c.closed() && v == c.source) {
        row.rhs = 1.0;
        row.name = "src_" + std::to_string(i);
      } else if (!c.closed() && v == c.sink) {
        for (auto& term : row.terms) term.second = -term.second;
        row.rhs = 1.0;
        row.name = "snk_" + std::to_string(i);
      } else {
        row.name = "bal_" + std::to_string(i) + "_" + std::to_string(v);
      }
      rows_.push_back(std::move(row));
    }
  }

  const auto sinks = inst.sink_mask();
  visit_slot_.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (sinks[v]) continue;
    visit_slot_[v] = static_cast<int>(visited_.size());
    visited_.push_back(v);
  }
  for (int i = 0; i < k; ++i) {
    for (Vertex v : visited_) {
      // y_{i,v} - x_i(out(v)) <= 0
      LinearRow row;
      for (int a : g.out_arcs(v)) row.terms.emplace_back(column(i, a), -1.0);
      row.terms.emplace_back(visit_column(i, v), 1.0);
      row.sense = RowSense::kLessEqual;
      row.name = "vis_" + std::to_string(i) + "_" + std::to_string(v);
      rows_.push_back(std::move(row));
    }
  }
  for (Vertex v : visited_) {
    LinearRow row;
    for (int i = 0; i < k; ++i) row.terms.emplace_back(visit_column(i, v), 1.0);
    row.sense = RowSense::kGreaterEqual;
    row.rhs = 1.0;
    row.name = "cov_" + std::to_string(v);
    rows_.push_back(std::move(row));
  }
  num_static_rows_ = static_cast<int>(rows_.size());
}

LpModel build_static(const Instance& inst) { return LpModel(inst); }

std::string LpModel::column_name(int col) const {
  if (col >= num_flow_columns()) {
    const int offset = col - num_flow_columns();
    const int per = static_cast<int>(visited_.size());
    return "y_" + std::to_string(offset / per) + "_" + std::to_string(visited_[offset % per]);
  }
  const int i = col / num_arcs();
  const auto& arc = graph_->arc(col % num_arcs());
  return "x_" + std::to_string(i) + "_" + std::to_string(arc.tail) + "_" +
         std::to_string(arc.head);
}

LinearRow LpModel::cut_row(const CutConstraint& cut) const {
  std::map<int, double> coeff;
  const auto& in = cut.in_set;
  for (int a = 0; a < num_arcs(); ++a) {
    const auto& arc = graph_->arc(a);
    if (in[arc.tail] && !in[arc.head]) coeff[column(cut.commodity, a)] += 1.0;
  }
  coeff[visit_column(cut.commodity, cut.vertex)] -= 1.0;
  LinearRow row;
  for (const auto& [col, value] : coeff) {
    if (value != 0.0) row.terms.emplace_back(col, value);
  }
  row.sense = RowSense::kGreaterEqual;
  row.rhs = 0.0;
  row.name = "cut_" + std::to_string(cuts_.size());
  return row;
}

void LpModel::add_cut(const CutConstraint& cut) {
  rows_.push_back(cut_row(cut));
  cuts_.push_back(cut);
}

std::string LpModel::to_lp_text() const {
  std::ostringstream out;
  auto write_terms = [&](const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    for (const auto& [col, value] : terms) {
      if (value < 0) {
        out << (first ? "-" : " - ");
      } else if (!first) {
        out << " + ";
      }
      if (std::abs(value) != 1.0) out << std::abs(value) << ' ';
      out << column_name(col);
      first = false;
    }
    if (first) out << "0";
  };
  out << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> objective;
  for (int c = 0; c < num_flow_columns(); ++c) objective.emplace_back(c, 1.0);
  write_terms(objective);
  out << "\nSubject To\n";
  for (const auto& row : rows_) {
    out << ' ' << row.name << ": ";
    write_terms(row.terms);
    switch (row.sense) {
      case RowSense::kEqual: out << " = "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
      case RowSense::kLessEqual: out << " <= "; break;
    }
    out << row.rhs << '\n';
  }
  if (!visited_.empty()) {
    out << "Bounds\n";
    for (int c = num_flow_columns(); c < num_columns(); ++c) out << " " << column_name(c) << " >= 0\n";
  }
  out << "End\n";
  return out.str();
}

double FractionalSolution::outflow(int commodity, Vertex v) const {
  double total = 0.0;
  for (int a : graph->out_arcs(v)) total += flow(commodity, a);
  return total;
}

double FractionalSolution::inflow(int commodity, Vertex v) const {
  double total = 0.0;
  for (int a : graph->in_arcs(v)) total += flow(commodity, a);
  return total;
}

double FractionalSolution::total_outflow(Vertex v) const {
  double total = 0.0;
  for (int i = 0; i < num_commodities(); ++i) total += outflow(i, v);
  return total;
}

Eigen::MatrixXd FractionalSolution::outflow_matrix() const {
  const int n = graph->num_vertices();
  Eigen::MatrixXd z(num_commodities(), n);
  for (int i = 0; i < num_commodities(); ++i) {
    for (Vertex v = 0; v < n; ++v) z(i, v) = outflow(i, v);
  }
  return z;
}

double FractionalSolution::flow_on(int commodity, const std::vector<char>& in_set) const {
  double total = 0.0;
  const auto& arcs = graph->arcs();
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    if (in_set[arcs[a].tail] && !in_set[arcs[a].head]) total += flow(commodity, a);
  }
  return total;
}

std::vector<CutConstraint> separate(const Instance& inst, const FractionalSolution& x,
                                    const LpTolerances& tol) {
  const BidirectedGraph& g = *x.graph;
  const int n = g.num_vertices();
  std::vector<CutConstraint> cuts;
  MaxFlowScratch scratch;
  for (int i = 0; i < inst.num_commodities(); ++i) {
    const Vertex sink = inst.commodity(i).sink;
    std::vector<double> capacity(g.num_arcs());
    for (int a = 0; a < g.num_arcs(); ++a) capacity[a] = std::max(0.0, x.flow(i, a));
    const CapacitatedNetwork net(g, std::move(capacity));
    for (Vertex v = 0; v < n; ++v) {
      if (v == sink) continue;
      const double y = x.visit(i, v);
      if (y <= tol.separation) continue;
      MinCut cut = min_cut(net, v, sink, scratch);
      if (cut.value < y - tol.separation) {
        cuts.push_back({i, v, std::move(cut.source_side), y - cut.value});
      }
    }
  }
  return cuts;
}

double max_static_violation(const LpModel& model, const FractionalSolution& x) {
  const int arcs = model.num_arcs();
  const int flow_columns = model.num_flow_columns();
  const int per = static_cast<int>(model.visited_vertices().size());
  auto value_of = [&](int col) {
    if (col < flow_columns) return x.flow(col / arcs, col % arcs);
    const int offset = col - flow_columns;
    return x.visit(offset / per, model.visited_vertices()[offset % per]);
  };
  double worst = 0.0;
  for (int r = 0; r < model.num_static_rows(); ++r) {
    const auto& row = model.rows()[r];
    double lhs = 0.0;
    for (const auto& [col, value] : row.terms) lhs += value * value_of(col);
    double violation = 0.0;
    switch (row.sense) {
      case RowSense::kEqual: violation = std::abs(lhs - row.rhs); break;
      case RowSense::kGreaterEqual: violation = row.rhs - lhs; break;
      case RowSense::kLessEqual: violation = lhs - row.rhs; break;
    }
    worst = std::max(worst, violation);
  }
  if (x.flow.size() > 0) worst = std::max(worst, -x.flow.minCoeff());
  if (x.visit.size() > 0) worst = std::max(worst, -x.visit.minCoeff());
  return worst;
}

LpResult solve_lp(const Instance& inst, const LpOptions& options) {
  LpModel model(inst);
  const int k = model.num_commodities();
  const int arcs = model.num_arcs();

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(model.num_columns());
  cost.head(model.num_flow_columns()).setOnes();
  DenseSimplex<double> simplex(std::move(cost));
  for (const auto& row : model.rows()) simplex.add_row({row.terms, row.sense, row.rhs});

  LpResult result;
  result.solution.graph = model.shared_graph();
  for (int round = 0;; ++round) {
    if (round >= options.tol.max_cut_rounds) {
      throw Error(ErrorCode::kIterationLimit,
                  "iteration limit exceeded after " + std::to_string(round) +
                      " cut rounds");
    }
    const SimplexStatus status = simplex.solve();
    if (status != SimplexStatus::kOptimal) {
      throw Error(status == SimplexStatus::kIterationLimit ? ErrorCode::kIterationLimit
                                                           : ErrorCode::kLpInfeasible,
                  "LP backend infeasible or unbounded");
    }
    FractionalSolution& x = result.solution;
    x.flow.resize(k, arcs);
    x.visit = Eigen::MatrixXd::Zero(k, inst.num_vertices());
    for (int i = 0; i < k; ++i) {
      for (int a = 0; a < arcs; ++a) x.flow(i, a) = simplex.primal()(model.column(i, a));
      for (Vertex v : model.visited_vertices()) {
        x.visit(i, v) = simplex.primal()(model.visit_column(i, v));
      }
    }
    x.objective = simplex.objective();

    auto cuts = separate(inst, x, options.tol);
    CutRound record;
    record.objective = x.objective;
    if (options.keep_iterates) {
      record.iterate = x.flow;
      record.visit = x.visit;
    }
    record.cuts = cuts;
    result.rounds.push_back(std::move(record));
    if (cuts.empty()) break;
    for (const auto& cut : cuts) {
      model.add_cut(cut);
      const auto& row = model.rows().back();
      simplex.add_row({row.terms, row.sense, row.rhs});
    }
  }
  if (options.dump_text) result.lp_text = model.to_lp_text();
  return result;
}

}  // namespace mptsp
