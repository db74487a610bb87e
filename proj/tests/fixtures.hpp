#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <woldgraph/woldgraph.hpp>

namespace fixtures {

using namespace wold;

inline SignedPower sp(const std::string& text) { return SignedPower::parse(text); }

inline DirectedGraph loop_graph() { return corresponding_graph(GeneratorSpec::unitary("u"), 1); }
inline DirectedGraph one_edge_graph() { return corresponding_graph(GeneratorSpec::infinite_shift("s"), 1); }

inline DirectedGraph path_graph(std::size_t edges) {
  DirectedGraph g;
  VertexId prev = g.add_vertex();
  for (std::size_t k = 0; k < edges; ++k) {
    VertexId next = g.add_vertex();
    g.add_edge(prev, next, "s" + std::to_string(k + 1));
    prev = next;
  }
  return g;
}

// s1, s2 infinite shifts with s2s2* = s1*s1.
inline DirectedGraph delta_graph() {
  AdmissibilityTable pi;
  pi.set_symmetric(sp("s1"), sp("s2"));
  return g_graph({GeneratorSpec::infinite_shift("s1"), GeneratorSpec::infinite_shift("s2")}, pi, 1);
}

// u glued to ss*: loop with an incoming tail.
inline DirectedGraph k_graph() {
  AdmissibilityTable pi;
  pi.set_symmetric(sp("u"), sp("s"));
  return g_graph({GeneratorSpec::unitary("u"), GeneratorSpec::infinite_shift("s")}, pi, 1);
}

inline DirectedGraph two_loop_graph() {
  AdmissibilityTable pi;
  for (auto a : {"u1", "u1*"})
    for (auto b : {"u2", "u2*"}) pi.set_symmetric(sp(a), sp(b));
  return g_graph({GeneratorSpec::unitary("u1"), GeneratorSpec::unitary("u2")}, pi, 1);
}

// Cancels a uniformly chosen eligible adjacent pair until none is left.
// Independent of the stack reduction in the library.
inline GroupoidElement random_order_reduce(const ShadowedGraph& g, std::vector<SignedEdge> w, std::mt19937_64& rng) {
  if (w.empty()) return GroupoidElement::zero();
  for (std::size_t i = 1; i < w.size(); ++i)
    if (g.target(w[i - 1]) != g.source(w[i])) return GroupoidElement::zero();
  const VertexId start = g.source(w.front());
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i - 1].edge == w[i].edge && w[i - 1].inverse != w[i].inverse) spots.push_back(i - 1);
    if (spots.empty()) break;
    const std::size_t at = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(at), w.begin() + static_cast<std::ptrdiff_t>(at) + 2);
  }
  if (w.empty()) return GroupoidElement::vertex(start);
  return GroupoidElement::reduced_path(w);
}

// Admissible raw word by random walk on the shadowed graph, with frequent
// backtracking so that cancellations occur.
inline std::vector<SignedEdge> random_walk(const ShadowedGraph& g, std::size_t len, std::mt19937_64& rng) {
  std::vector<SignedEdge> w;
  if (g.edge_count() == 0 || len == 0) return w;
  auto all = g.signed_edges();
  w.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
  while (w.size() < len) {
    const auto& out = g.outgoing(g.target(w.back()));
    if (std::bernoulli_distribution(0.3)(rng)) {
      w.push_back(w.back().flipped());
      continue;
    }
    w.push_back(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]);
  }
  return w;
}

// Every raw word of length <= max_len over signed edges, reduced by the
// random-order oracle, plus Zero and the vertices.
inline std::set<GroupoidElement> brute_force_groupoid(const ShadowedGraph& g, std::size_t max_len) {
  std::mt19937_64 rng(7);
  std::set<GroupoidElement> out{GroupoidElement::zero()};
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.insert(GroupoidElement::vertex(v));
  const auto letters = g.signed_edges();
  std::vector<std::vector<SignedEdge>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<SignedEdge>> next;
    for (const auto& w : layer)
      for (const auto& s : letters) {
        auto ext = w;
        ext.push_back(s);
        out.insert(random_order_reduce(g, ext, rng));
        next.push_back(std::move(ext));
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace fixtures
