#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/point.hpp"
#include "frechet/random.hpp"

namespace frechet {

// A finite metric tree: a connected acyclic graph whose edges are real segments.
//
// Points are (edge, offset) pairs measured from the edge's `from` vertex. A vertex
// has many (edge, offset) representations; `canonical` maps all of them to the
// lowest-indexed incident edge so equality of canonical points is equality of
// locations.
class MetricTree {
 public:
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    double length = 1.0;
  };

  MetricTree(std::size_t num_vertices, std::vector<Edge> edges)
      : num_vertices_(num_vertices), edges_(std::move(edges)) {
    require(num_vertices_ >= 2, ErrorKind::InvalidArgument, "tree needs at least two vertices");
    require(edges_.size() + 1 == num_vertices_, ErrorKind::InvalidArgument,
            "tree must have exactly num_vertices - 1 edges");
    for (const auto& e : edges_) {
      require(e.from < num_vertices_ && e.to < num_vertices_ && e.from != e.to, ErrorKind::InvalidArgument,
              "edge endpoints out of range");
      require(std::isfinite(e.length) && e.length > 0.0, ErrorKind::InvalidArgument,
              "edge lengths must be positive");
    }
    build_tables();
  }

  // Three edges of equal length joined at vertex 0 ("pods" 0, 1, 2 measured from the hub).
  static MetricTree tripod(double length = 1.0) { return star(3, length); }

  static MetricTree star(std::size_t arms, double length) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < arms; ++i) edges.push_back({0, i + 1, length});
    return MetricTree(arms + 1, std::move(edges));
  }

  // Random recursive tree: vertex i attaches to a uniformly chosen earlier vertex.
  static MetricTree random(std::size_t num_edges, std::uint64_t seed, double min_length = 0.5,
                           double max_length = 2.0) {
    require(num_edges >= 1, ErrorKind::InvalidArgument, "random tree needs at least one edge");
    Rng rng(mix_seed(seed, {0x7472ULL}));
    std::vector<Edge> edges;
    for (std::size_t v = 1; v <= num_edges; ++v) {
      const auto parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
      edges.push_back({parent, v, uniform(rng, min_length, max_length)});
    }
    return MetricTree(num_edges + 1, std::move(edges));
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  double vertex_distance(std::size_t u, std::size_t v) const { return vdist_[u * num_vertices_ + v]; }

  double total_length() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.length;
    return s;
  }

  double diameter() const { return *std::max_element(vdist_.begin(), vdist_.end()); }

  TreePoint vertex_point(std::size_t v) const {
    require(v < num_vertices_, ErrorKind::PointNotInSpace, "vertex out of range");
    const auto e = vertex_edge_[v];
    return {e, edges_[e].from == v ? 0.0 : edges_[e].length};
  }

  bool contains(const TreePoint& p) const {
    if (p.edge >= edges_.size() || !std::isfinite(p.offset)) return false;
    const double len = edges_[p.edge].length;
    const double slack = kOffsetSlack * len;
    return p.offset >= -slack && p.offset <= len + slack;
  }

  TreePoint canonical(const TreePoint& p) const {
    if (!contains(p))
      fail(ErrorKind::PointNotInSpace,
           "tree point (" + std::to_string(p.edge) + ", " + std::to_string(p.offset) + ") not in tree");
    const auto& e = edges_[p.edge];
    if (p.offset <= 0.0) return vertex_point(e.from);
    if (p.offset >= e.length) return vertex_point(e.to);
    return p;
  }

  // Returns the vertex if the point sits on one.
  std::optional<std::size_t> as_vertex(const TreePoint& p) const {
    const auto c = canonical(p);
    const auto& e = edges_[c.edge];
    if (c.offset == 0.0) return e.from;
    if (c.offset == e.length) return e.to;
    return std::nullopt;
  }

  double distance(const TreePoint& a, const TreePoint& b) const {
    const auto ca = canonical(a);
    const auto cb = canonical(b);
    if (ca.edge == cb.edge) return std::abs(ca.offset - cb.offset);
    return best_route(ca, cb).length;
  }

  // Point z on the geodesic with d(a, z) = t d(a, b).
  TreePoint geodesic_point(const TreePoint& a, const TreePoint& b, double t) const {
    require(t >= 0.0 && t <= 1.0, ErrorKind::InvalidArgument, "geodesic parameter must lie in [0, 1]");
    const auto ca = canonical(a);
    const auto cb = canonical(b);
    if (t == 0.0) return ca;
    if (t == 1.0) return cb;
    if (ca.edge == cb.edge) return canonical({ca.edge, ca.offset + t * (cb.offset - ca.offset)});

    const auto route = best_route(ca, cb);
    double s = t * route.length;

    // Leg 1: from a to its exit vertex.
    const auto& ea = edges_[ca.edge];
    const bool exit_from = route.exit == ea.from;
    const double leg_a = exit_from ? ca.offset : ea.length - ca.offset;
    if (s <= leg_a) return canonical({ca.edge, exit_from ? ca.offset - s : ca.offset + s});
    s -= leg_a;

    // Vertex-to-vertex path.
    std::size_t cur = route.exit;
    while (cur != route.entry) {
      const auto eid = next_edge_[cur * num_vertices_ + route.entry];
      const auto& e = edges_[eid];
      if (s <= e.length) return canonical({eid, e.from == cur ? s : e.length - s});
      s -= e.length;
      cur = e.from == cur ? e.to : e.from;
    }

    // Leg 2: from the entry vertex to b.
    const auto& eb = edges_[cb.edge];
    const bool entry_from = route.entry == eb.from;
    s = std::min(s, entry_from ? cb.offset : eb.length - cb.offset);
    return canonical({cb.edge, entry_from ? s : eb.length - s});
  }

  // Uniform on the tree's total length.
  TreePoint sample(Rng& rng) const {
    const double u = uniform(rng, 0.0, cumulative_.back());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto eid = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), edges_.size() - 1);
    const double start = eid == 0 ? 0.0 : cumulative_[eid - 1];
    return canonical({eid, std::clamp(u - start, 0.0, edges_[eid].length)});
  }

 private:
  static constexpr double kOffsetSlack = 1e-12;

  struct Route {
    double length;
    std::size_t exit;   // vertex where the path leaves a's edge
    std::size_t entry;  // vertex where the path enters b's edge
  };

  Route best_route(const TreePoint& a, const TreePoint& b) const {
    const auto& ea = edges_[a.edge];
    const auto& eb = edges_[b.edge];
    const std::size_t exits[2] = {ea.from, ea.to};
    const double exit_len[2] = {a.offset, ea.length - a.offset};
    const std::size_t entries[2] = {eb.from, eb.to};
    const double entry_len[2] = {b.offset, eb.length - b.offset};
    Route best{std::numeric_limits<double>::infinity(), 0, 0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double len = exit_len[i] + vertex_distance(exits[i], entries[j]) + entry_len[j];
        if (len < best.length) best = {len, exits[i], entries[j]};
      }
    return best;
  }

  void build_tables() {
    const auto n = num_vertices_;
    cumulative_.clear();
    double acc = 0.0;
    for (const auto& e : edges_) cumulative_.push_back(acc += e.length);

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident[edges_[e].from].push_back(e);
      incident[edges_[e].to].push_back(e);
    }
    vertex_edge_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      require(!incident[v].empty(), ErrorKind::InvalidArgument, "tree is not connected");
      vertex_edge_[v] = *std::min_element(incident[v].begin(), incident[v].end());
    }

    vdist_.assign(n * n, -1.0);
    next_edge_.assign(n * n, 0);
    for (std::size_t src = 0; src < n; ++src) {
      std::vector<std::size_t> stack{src};
      vdist_[src * n + src] = 0.0;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto eid : incident[u]) {
          const auto& e = edges_[eid];
          const auto v = e.from == u ? e.to : e.from;
          if (vdist_[src * n + v] >= 0.0) continue;
          vdist_[src * n + v] = vdist_[src * n + u] + e.length;
          next_edge_[src * n + v] = u == src ? eid : next_edge_[src * n + u];
          stack.push_back(v);
        }
      }
      for (std::size_t v = 0; v < n; ++v)
        require(vdist_[src * n + v] >= 0.0, ErrorKind::InvalidArgument, "tree is not connected");
    }
  }

  std::size_t num_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> vertex_edge_;
  std::vector<double> vdist_;
  std::vector<std::size_t> next_edge_;
  std::vector<double> cumulative_;
};

}  // namespace frechet
