#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "generator.hpp"

namespace wold {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Vertex {
  // Sorted, duplicate-free. More than one token means the vertex was produced by
  // identification (or is the u*u = uu* vertex of a unitary).
  std::vector<ProjectionToken> tokens;

  std::string label() const {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) s += "=";
      s += tokens[i].str();
    }
    return s.empty() ? "v" : s;
  }

  bool has(const ProjectionToken& t) const { return std::binary_search(tokens.begin(), tokens.end(), t); }
};

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  std::string label;
};

// Finite-shift chain materialized to `depth` edges; the real chain continues.
struct ChainInfo {
  std::string generator;
  std::uint64_t defect = 0;
  unsigned depth = 0;
  bool operator==(const ChainInfo&) const = default;
};

// Vertex and edge ids are dense indices.
class DirectedGraph {
 public:
  VertexId add_vertex(std::vector<ProjectionToken> tokens = {}) {
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    vertices_.push_back({std::move(tokens)});
    return vertices_.size() - 1;
  }

  EdgeId add_edge(VertexId source, VertexId target, std::string label) {
    if (source >= vertices_.size() || target >= vertices_.size())
      throw std::out_of_range("edge endpoint is not a vertex of the graph");
    edges_.push_back({source, target, std::move(label)});
    return edges_.size() - 1;
  }

  void add_chain(ChainInfo c) { chains_.push_back(std::move(c)); }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<ChainInfo>& chains() const noexcept { return chains_; }
  bool truncated() const noexcept { return !chains_.empty(); }

  std::optional<VertexId> find_token(const ProjectionToken& t) const {
    for (VertexId v = 0; v < vertices_.size(); ++v)
      if (vertices_[v].has(t)) return v;
    return std::nullopt;
  }

  // Weakly connected component id per vertex, numbered by first appearance.
  std::vector<std::size_t> component_ids() const {
    std::vector<std::size_t> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& e : edges_) parent[find(e.source)] = find(e.target);
    std::vector<std::size_t> id(vertices_.size()), root_id(vertices_.size(), SIZE_MAX);
    std::size_t next = 0;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
      auto r = find(v);
      if (root_id[r] == SIZE_MAX) root_id[r] = next++;
      id[v] = root_id[r];
    }
    return id;
  }

  std::size_t component_count() const {
    auto ids = component_ids();
    return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  }

  bool is_loop_free() const {
    return std::none_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.source == e.target; });
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<ChainInfo> chains_;
};

inline DirectedGraph corresponding_graph(const GeneratorSpec& g, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("corresponding_graph: depth must be at least 1");
  DirectedGraph out;
  switch (g.kind) {
    case GeneratorKind::Unitary: {
      auto v = out.add_vertex({ProjectionToken::source(g.id), ProjectionToken::range(g.id)});
      out.add_edge(v, v, g.id);
      break;
    }
    case GeneratorKind::InfiniteShift: {
      auto a = out.add_vertex({ProjectionToken::source(g.id)});
      auto b = out.add_vertex({ProjectionToken::range(g.id)});
      out.add_edge(a, b, g.id);
      break;
    }
    case GeneratorKind::FiniteShift: {
      VertexId prev = out.add_vertex({ProjectionToken::source(g.id)});
      for (unsigned n = 1; n <= depth; ++n) {
        VertexId next = out.add_vertex({ProjectionToken::range(g.id, n)});
        out.add_edge(prev, next, g.id + "^(" + std::to_string(n) + ")");
        prev = next;
      }
      out.add_chain({g.id, g.defect, depth});
      break;
    }
  }
  return out;
}

// g2's ids are shifted past g1's.
inline DirectedGraph disjoint_union(const DirectedGraph& g1, const DirectedGraph& g2) {
  DirectedGraph out = g1;
  const std::size_t off = g1.vertex_count();
  for (const auto& v : g2.vertices()) out.add_vertex(v.tokens);
  for (const auto& e : g2.edges()) out.add_edge(e.source + off, e.target + off, e.label);
  for (const auto& c : g2.chains()) out.add_chain(c);
  return out;
}

// Identifies each listed vertex pair. A merged vertex takes the slot of its
// first member and carries the union of the merged token sets.
inline DirectedGraph identify_vertices(const DirectedGraph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("identify_vertices: vertex not in graph");
    auto ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<ProjectionToken>> tokens(n);
  for (VertexId v = 0; v < n; ++v) {
    auto& t = tokens[find(v)];
    t.insert(t.end(), g.vertex(v).tokens.begin(), g.vertex(v).tokens.end());
  }
  DirectedGraph out;
  std::vector<VertexId> new_id(n, SIZE_MAX);
  for (VertexId v = 0; v < n; ++v)
    if (find(v) == v) new_id[v] = out.add_vertex(tokens[v]);
  for (const auto& e : g.edges()) out.add_edge(new_id[find(e.source)], new_id[find(e.target)], e.label);
  for (const auto& c : g.chains()) out.add_chain(c);
  return out;
}

inline DirectedGraph glue(const DirectedGraph& g1, VertexId v1, const DirectedGraph& g2, VertexId v2) {
  if (v1 >= g1.vertex_count()) throw std::out_of_range("glue: vertex " + std::to_string(v1) + " not in first graph");
  if (v2 >= g2.vertex_count()) throw std::out_of_range("glue: vertex " + std::to_string(v2) + " not in second graph");
  return identify_vertices(disjoint_union(g1, g2), {{v1, g1.vertex_count() + v2}});
}

namespace detail {

// A graph that is exactly one materialized finite-shift chain.
inline const ChainInfo* single_chain(const DirectedGraph& g) {
  if (g.chains().size() != 1) return nullptr;
  const auto& c = g.chains().front();
  return g.edge_count() == c.depth ? &c : nullptr;
}

// Label- and incidence-preserving injective embedding of g1's edges into g2's.
inline bool embeds(const DirectedGraph& g1, const DirectedGraph& g2) {
  const std::size_t n1 = g1.vertex_count();
  std::vector<bool> incident(n1, false);
  for (const auto& e : g1.edges()) incident[e.source] = incident[e.target] = true;
  if (std::find(incident.begin(), incident.end(), false) != incident.end()) return false;
  if (g1.edge_count() > g2.edge_count() || n1 > g2.vertex_count()) return false;

  std::vector<VertexId> vmap(n1, SIZE_MAX);
  std::vector<bool> vused(g2.vertex_count(), false), eused(g2.edge_count(), false);
  std::function<bool(std::size_t)> step = [&](std::size_t i) -> bool {
    if (i == g1.edge_count()) return true;
    const Edge& e = g1.edge(i);
    for (EdgeId j = 0; j < g2.edge_count(); ++j) {
      const Edge& f = g2.edge(j);
      if (eused[j] || f.label != e.label) continue;
      if ((e.source == e.target) != (f.source == f.target)) continue;
      std::vector<std::pair<VertexId, VertexId>> bound;
      bool ok = true;
      for (auto [a, b] : {std::pair{e.source, f.source}, std::pair{e.target, f.target}}) {
        if (vmap[a] == b) continue;
        if (vmap[a] != SIZE_MAX || vused[b]) {
          ok = false;
          break;
        }
        vmap[a] = b;
        vused[b] = true;
        bound.emplace_back(a, b);
      }
      if (ok) {
        eused[j] = true;
        if (step(i + 1)) return true;
        eused[j] = false;
      }
      for (auto [a, b] : bound) {
        vmap[a] = SIZE_MAX;
        vused[b] = false;
      }
    }
    return false;
  };
  return step(0);
}

}  // namespace detail

// Full-subgraph order. A lone finite-shift chain G_x sits below any graph holding
// a chain G_y with defect(y) | defect(x), since x^n then runs along y's chain.
inline bool full_subgraph_leq(const DirectedGraph& g1, const DirectedGraph& g2) {
  if (const ChainInfo* c1 = detail::single_chain(g1)) {
    for (const auto& c2 : g2.chains())
      if (c2.defect != 0 && c1->defect % c2.defect == 0) return true;
  }
  return detail::embeds(g1, g2);
}

inline std::vector<std::pair<VertexId, VertexId>> admissible_pairs(const DirectedGraph& g1, const DirectedGraph& g2,
                                                                   const AdmissibilityTable& pi) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId p = 0; p < g1.vertex_count(); ++p)
    for (VertexId q = 0; q < g2.vertex_count(); ++q)
      if (pi.vertices_admissible(g1.vertex(p).tokens, g2.vertex(q).tokens)) out.emplace_back(p, q);
  return out;
}

namespace detail {

// full_subgraph_leq, except that a lone chain only sinks into a chain of a
// pi-connected generator.
inline bool absorbed_by(const DirectedGraph& g1, const DirectedGraph& g2, const AdmissibilityTable& pi) {
  if (const ChainInfo* c1 = single_chain(g1)) {
    for (const auto& c2 : g2.chains())
      if (c2.defect != 0 && c1->defect % c2.defect == 0 &&
          (c1->generator == c2.generator || pi.connected(c1->generator, c2.generator)))
        return true;
  }
  return embeds(g1, g2);
}

}  // namespace detail

// All admissible pairs are identified at once, so the result does not depend
// on the order in which pairs are visited.
inline DirectedGraph conditional_glue(const DirectedGraph& g1, const DirectedGraph& g2, const AdmissibilityTable& pi) {
  auto pairs = admissible_pairs(g1, g2, pi);
  if (pairs.empty()) return disjoint_union(g1, g2);
  if (detail::absorbed_by(g1, g2, pi)) return g2;
  if (detail::absorbed_by(g2, g1, pi)) return g1;
  const std::size_t off = g1.vertex_count();
  for (auto& [p, q] : pairs) q += off;
  return identify_vertices(disjoint_union(g1, g2), pairs);
}

// x is dropped when an admissible y has G_x strictly below G_y in the
// full-subgraph order.
inline std::vector<GeneratorSpec> minimal_finite_shifts(const std::vector<GeneratorSpec>& finite_shifts,
                                                        const AdmissibilityTable& pi, unsigned depth) {
  std::vector<DirectedGraph> graphs;
  for (const auto& g : finite_shifts) graphs.push_back(corresponding_graph(g, depth));
  std::vector<GeneratorSpec> out;
  for (std::size_t i = 0; i < finite_shifts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < finite_shifts.size() && !dominated; ++j) {
      if (i == j || !pi.connected(finite_shifts[i].id, finite_shifts[j].id)) continue;
      dominated = full_subgraph_leq(graphs[i], graphs[j]) && !full_subgraph_leq(graphs[j], graphs[i]);
    }
    if (!dominated) out.push_back(finite_shifts[i]);
  }
  return out;
}

// Dominated finite shifts are dropped up front: folding them in would make the
// result depend on whether the dominating chain arrives first.
inline DirectedGraph g_graph(const std::vector<GeneratorSpec>& family, const AdmissibilityTable& pi, unsigned depth) {
  std::vector<GeneratorSpec> finite;
  for (const auto& g : family)
    if (g.kind == GeneratorKind::FiniteShift) finite.push_back(g);
  const auto minimal = minimal_finite_shifts(finite, pi, depth);
  DirectedGraph acc;
  for (const auto& g : family) {
    const bool keep = g.kind != GeneratorKind::FiniteShift ||
                      std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) { return m.id == g.id; });
    if (keep) acc = conditional_glue(acc, corresponding_graph(g, depth), pi);
  }
  return acc;
}

inline constexpr std::size_t kIsomorphismVertexBound = 10;

// Labels ignored. Brute force over vertex bijections with degree pruning.
inline bool graphs_isomorphic(const DirectedGraph& g1, const DirectedGraph& g2) {
  if (g1.vertex_count() > kIsomorphismVertexBound || g2.vertex_count() > kIsomorphismVertexBound)
    throw std::length_error("graphs_isomorphic: more than " + std::to_string(kIsomorphismVertexBound) + " vertices");
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;

  auto multiplicity = [n](const DirectedGraph& g) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) ++m[e.source][e.target];
    return m;
  };
  const auto m1 = multiplicity(g1), m2 = multiplicity(g2);
  auto signature = [n](const std::vector<std::vector<int>>& m, std::size_t v) {
    int out = 0, in = 0;
    for (std::size_t w = 0; w < n; ++w) {
      out += m[v][w];
      in += m[w][v];
    }
    return std::tuple{out, in, m[v][v]};
  };

  std::vector<std::size_t> map(n, SIZE_MAX);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> step = [&](std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || signature(m1, v) != signature(m2, w)) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = m1[v][u] == m2[w][map[u]] && m1[u][v] == m2[map[u]][w];
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (step(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return step(0);
}

// Vertices are circles labeled by projection tokens; shadow edges are dashed.
inline std::string to_dot(const DirectedGraph& g, bool include_shadow = false, const std::string& name = "G") {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    os << "  v" << v << " [label=" << quote(g.vertex(v).label()) << "];\n";
  for (const auto& e : g.edges()) os << "  v" << e.source << " -> v" << e.target << " [label=" << quote(e.label) << "];\n";
  if (include_shadow)
    for (const auto& e : g.edges())
      os << "  v" << e.target << " -> v" << e.source << " [label=" << quote(e.label + "^-1") << ", style=dashed];\n";
  if (g.truncated()) os << "  // finite-shift chains truncated; the graph continues past the last chain vertex\n";
  os << "}\n";
  return os.str();
}

}  // namespace wold
