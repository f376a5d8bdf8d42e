#include "mptsp/matching.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

// Primal-dual blossom algorithm after Galil (1986), in the endpoint
// formulation: endpoint p = 2k or 2k + 1 of edge k, mate[v] is the remote
// endpoint of v's matched edge. Blossom ids run from n to 2n - 1.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
      : n_(n), edges_(edges), max_cardinality_(max_cardinality) {}

  std::vector<int> solve();

 private:
  using Weight = std::int64_t;

  Weight slack(int k) const {
    const auto& e = edges_[k];
    return dual_[e.u] + dual_[e.v] - 2 * e.weight;
  }

  int wrap(int b, int j) const {
    const int len = static_cast<int>(childs_[b].size());
    return ((j % len) + len) % len;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
    } else {
      for (int t : childs_[b]) leaves(t, out);
    }
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  const std::vector<WeightedEdge>& edges_;
  bool max_cardinality_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> base_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> bestedge_;
  std::vector<std::optional<std::vector<int>>> blossom_bestedges_;
  std::vector<int> unused_;
  std::vector<Weight> dual_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

void BlossomMatcher::assign_label(int w, int t, int p) {
  const int b = inblossom_[w];
  assert(label_[w] == 0 && label_[b] == 0);
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    const int base = base_[b];
    assert(mate_[base] >= 0);
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int BlossomMatcher::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    assert(label_[b] == 1);
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      assert(label_[b] == 2);
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void BlossomMatcher::add_blossom(int base, int k) {
  int v = edges_[k].u;
  int w = edges_[k].v;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  auto& path = childs_[b];
  auto& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  assert(label_[bb] == 1);
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;
  for (int leaf : leaves(b)) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  }

  std::vector<int> bestedgeto(2 * n_, -1);
  for (int sub : path) {
    std::vector<std::vector<int>> lists;
    if (!blossom_bestedges_[sub]) {
      for (int leaf : leaves(sub)) {
        std::vector<int> ks;
        for (int p : neighbend_[leaf]) ks.push_back(p / 2);
        lists.push_back(std::move(ks));
      }
    } else {
      lists.push_back(*blossom_bestedges_[sub]);
    }
    for (const auto& list : lists) {
      for (int kk : list) {
        int i = edges_[kk].u;
        int j = edges_[kk].v;
        if (inblossom_[j] == b) std::swap(i, j);
        const int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = kk;
        }
      }
    }
    blossom_bestedges_[sub].reset();
    bestedge_[sub] = -1;
  }
  std::vector<int> best;
  for (int kk : bestedgeto) {
    if (kk != -1) best.push_back(kk);
  }
  bestedge_[b] = -1;
  for (int kk : best) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
  blossom_bestedges_[b] = std::move(best);
}

void BlossomMatcher::expand_blossom(int b, bool endstage) {
  const std::vector<int> children = childs_[b];
  for (int s : children) {
    parent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int leaf : leaves(s)) inblossom_[leaf] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const auto& ch = childs_[b];
    const auto& ep = endps_[b];
    const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
    int jstep, endptrick;
    if (j & 1) {
      j -= static_cast<int>(ch.size());
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[ep[wrap(b, j - endptrick)] ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowedge_[ep[wrap(b, j - endptrick)] / 2] = 1;
      j += jstep;
      p = ep[wrap(b, j - endptrick)] ^ endptrick;
      allowedge_[p / 2] = 1;
      j += jstep;
    }
    int bv = ch[wrap(b, j)];
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (ch[wrap(b, j)] != entrychild) {
      bv = ch[wrap(b, j)];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      const auto bv_leaves = leaves(bv);
      int v = -1;
      for (int leaf : bv_leaves) {
        v = leaf;
        if (label_[leaf] != 0) break;
      }
      if (label_[v] != 0) {
        assert(label_[v] == 2);
        assert(inblossom_[v] == bv);
        label_[v] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(v, 2, labelend_[v]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  blossom_bestedges_[b].reset();
  bestedge_[b] = -1;
  unused_.push_back(b);
}

void BlossomMatcher::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) augment_blossom(t, v);
  auto& ch = childs_[b];
  auto& ep = endps_[b];
  const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep, endptrick;
  if (i & 1) {
    j -= static_cast<int>(ch.size());
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = ch[wrap(b, j)];
    const int p = ep[wrap(b, j - endptrick)] ^ endptrick;
    if (t >= n_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = ch[wrap(b, j)];
    if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
  assert(base_[b] == v);
}

void BlossomMatcher::augment_matching(int k) {
  const int v = edges_[k].u;
  const int w = edges_[k].v;
  const std::pair<int, int> starts[] = {{v, 2 * k + 1}, {w, 2 * k}};
  for (auto [s, p] : starts) {
    while (true) {
      const int bs = inblossom_[s];
      assert(label_[bs] == 1);
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint_[labelend_[bs]];
      const int bt = inblossom_[t];
      assert(label_[bt] == 2);
      s = endpoint_[labelend_[bt]];
      const int j = endpoint_[labelend_[bt] ^ 1];
      assert(base_[bt] == t);
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> BlossomMatcher::solve() {
  const int n = n_;
  const int m = static_cast<int>(edges_.size());
  if (m == 0 || n == 0) return std::vector<int>(n, -1);

  Weight max_weight = 0;
  for (const auto& e : edges_) max_weight = std::max(max_weight, e.weight);

  endpoint_.resize(2 * m);
  neighbend_.assign(n, {});
  for (int k = 0; k < m; ++k) {
    endpoint_[2 * k] = edges_[k].u;
    endpoint_[2 * k + 1] = edges_[k].v;
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  mate_.assign(n, -1);
  label_.assign(2 * n, 0);
  labelend_.assign(2 * n, -1);
  inblossom_.resize(n);
  for (int v = 0; v < n; ++v) inblossom_[v] = v;
  parent_.assign(2 * n, -1);
  childs_.assign(2 * n, {});
  base_.assign(2 * n, -1);
  for (int v = 0; v < n; ++v) base_[v] = v;
  endps_.assign(2 * n, {});
  bestedge_.assign(2 * n, -1);
  blossom_bestedges_.assign(2 * n, std::nullopt);
  unused_.clear();
  for (int b = n; b < 2 * n; ++b) unused_.push_back(b);
  dual_.assign(2 * n, 0);
  for (int v = 0; v < n; ++v) dual_[v] = max_weight;
  allowedge_.assign(m, 0);

  for (int stage = 0; stage < n; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n; b < 2 * n; ++b) blossom_bestedges_[b].reset();
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();
    for (int v = 0; v < n; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        assert(label_[inblossom_[v]] == 1);
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          Weight kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              assert(label_[inblossom_[w]] == 2);
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int delta_type = -1;
      Weight delta = 0;
      int delta_edge = -1, delta_blossom = -1;
      if (!max_cardinality_) {
        delta_type = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + n);
      }
      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const Weight d = slack(bestedge_[v]);
          if (delta_type == -1 || d < delta) {
            delta = d;
            delta_type = 2;
            delta_edge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const Weight kslack = slack(bestedge_[b]);
          assert(kslack % 2 == 0);
          const Weight d = kslack / 2;
          if (delta_type == -1 || d < delta) {
            delta = d;
            delta_type = 3;
            delta_edge = bestedge_[b];
          }
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
            (delta_type == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          delta_type = 4;
          delta_blossom = b;
        }
      }
      if (delta_type == -1) {
        // No further improvement; maximum cardinality reached.
        delta_type = 1;
        delta = std::max<Weight>(0, *std::min_element(dual_.begin(), dual_.begin() + n));
      }

      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (delta_type == 1) break;
      if (delta_type == 2) {
        allowedge_[delta_edge] = 1;
        int i = edges_[delta_edge].u;
        if (label_[inblossom_[i]] == 0) i = edges_[delta_edge].v;
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else if (delta_type == 3) {
        allowedge_[delta_edge] = 1;
        const int i = edges_[delta_edge].u;
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else {
        expand_blossom(delta_blossom, false);
      }
    }
    if (!augmented) break;

    for (int b = n; b < 2 * n; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
        expand_blossom(b, true);
      }
    }
  }

  std::vector<int> result(n, -1);
  for (int v = 0; v < n; ++v) {
    if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
  }
  return result;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  // Doubling keeps every dual update integral.
  std::vector<WeightedEdge> doubled = edges;
  for (auto& e : doubled) {
    if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw Error(ErrorCode::kInvalidArgument, "invalid matching edge");
    }
    e.weight *= 2;
  }
  BlossomMatcher matcher(num_vertices, doubled, max_cardinality);
  return matcher.solve();
}

std::vector<int> min_weight_perfect_matching(const CostMatrix& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n || n % 2 != 0) {
    throw Error(ErrorCode::kOddCardinality,
                "perfect matching needs an even square cost matrix");
  }
  if (n == 0) return {};
  const std::int64_t top = cost.maxCoeff() + 1;
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, top - cost(u, v)});
  }
  auto mate = max_weight_matching(n, edges, true);
  for (int v = 0; v < n; ++v) {
    if (mate[v] < 0) throw Error(ErrorCode::kParityViolation, "matching is not perfect");
  }
  return mate;
}

}  // namespace mptsp
