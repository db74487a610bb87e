#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace wold {

// Edge of the shadowed graph: e or its shadow e^-1.
struct SignedEdge {
  EdgeId edge = 0;
  bool inverse = false;

  auto operator<=>(const SignedEdge&) const = default;
  SignedEdge flipped() const { return {edge, !inverse}; }
};

// G together with its reversed copy. E(G^) = E(G) u E(G^-1), V(G^) = V(G).
class ShadowedGraph {
 public:
  explicit ShadowedGraph(DirectedGraph g) : base_(std::move(g)), outgoing_(base_.vertex_count()) {
    for (EdgeId e = 0; e < base_.edge_count(); ++e) {
      outgoing_[base_.edge(e).source].push_back({e, false});
      outgoing_[base_.edge(e).target].push_back({e, true});
    }
  }

  const DirectedGraph& base() const noexcept { return base_; }
  std::size_t vertex_count() const noexcept { return base_.vertex_count(); }
  std::size_t edge_count() const noexcept { return base_.edge_count(); }

  void check(SignedEdge s) const {
    if (s.edge >= base_.edge_count()) throw std::out_of_range("unknown edge id " + std::to_string(s.edge));
  }
  VertexId source(SignedEdge s) const {
    check(s);
    const Edge& e = base_.edge(s.edge);
    return s.inverse ? e.target : e.source;
  }
  VertexId target(SignedEdge s) const {
    check(s);
    const Edge& e = base_.edge(s.edge);
    return s.inverse ? e.source : e.target;
  }

  // Signed edges whose source is v.
  const std::vector<SignedEdge>& outgoing(VertexId v) const { return outgoing_.at(v); }

  std::vector<SignedEdge> signed_edges() const {
    std::vector<SignedEdge> out;
    for (EdgeId e = 0; e < base_.edge_count(); ++e) {
      out.push_back({e, false});
      out.push_back({e, true});
    }
    return out;
  }

  std::string name(SignedEdge s) const {
    check(s);
    return base_.edge(s.edge).label + (s.inverse ? "^-1" : "");
  }

 private:
  DirectedGraph base_;
  std::vector<std::vector<SignedEdge>> outgoing_;
};

// Zero (also standing for the empty word), a vertex, or a nonempty reduced path.
class GroupoidElement {
 public:
  enum class Kind { Zero, Vertex, Path };

  GroupoidElement() = default;
  static GroupoidElement zero() { return {}; }
  static GroupoidElement vertex(VertexId v) {
    GroupoidElement g;
    g.kind_ = Kind::Vertex;
    g.vertex_ = v;
    return g;
  }
  // Caller guarantees the word is nonempty, admissible and reduced.
  static GroupoidElement reduced_path(std::vector<SignedEdge> word) {
    if (word.empty()) throw std::invalid_argument("reduced_path: empty word");
    GroupoidElement g;
    g.kind_ = Kind::Path;
    g.path_ = std::move(word);
    return g;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  VertexId vertex_id() const {
    if (kind_ != Kind::Vertex) throw std::logic_error("not a vertex element");
    return vertex_;
  }
  const std::vector<SignedEdge>& path() const noexcept { return path_; }
  std::size_t length() const noexcept { return path_.size(); }

  auto operator<=>(const GroupoidElement&) const = default;

 private:
  Kind kind_ = Kind::Zero;
  VertexId vertex_ = 0;
  std::vector<SignedEdge> path_;
};

inline VertexId element_source(const ShadowedGraph& g, const GroupoidElement& a) {
  switch (a.kind()) {
    case GroupoidElement::Kind::Zero: throw std::invalid_argument("Zero has no source");
    case GroupoidElement::Kind::Vertex: return a.vertex_id();
    case GroupoidElement::Kind::Path: return g.source(a.path().front());
  }
  return 0;
}

inline VertexId element_target(const ShadowedGraph& g, const GroupoidElement& a) {
  switch (a.kind()) {
    case GroupoidElement::Kind::Zero: throw std::invalid_argument("Zero has no target");
    case GroupoidElement::Kind::Vertex: return a.vertex_id();
    case GroupoidElement::Kind::Path: return g.target(a.path().back());
  }
  return 0;
}

inline void validate_element(const ShadowedGraph& g, const GroupoidElement& a) {
  if (a.kind() == GroupoidElement::Kind::Vertex && a.vertex_id() >= g.vertex_count())
    throw std::out_of_range("unknown vertex id " + std::to_string(a.vertex_id()));
  const auto& p = a.path();
  for (std::size_t i = 0; i < p.size(); ++i) {
    g.check(p[i]);
    if (i && g.target(p[i - 1]) != g.source(p[i])) throw std::invalid_argument("path is not admissible");
    if (i && p[i - 1] == p[i].flipped()) throw std::invalid_argument("path is not reduced");
  }
}

// Normal form of a raw word: Zero when two neighbours are not admissible,
// otherwise stack cancellation of e e^-1 and e^-1 e. A fully cancelled word is
// the vertex it started from.
inline GroupoidElement reduce_word(const ShadowedGraph& g, const std::vector<SignedEdge>& word) {
  if (word.empty()) return GroupoidElement::zero();
  for (std::size_t i = 0; i < word.size(); ++i) {
    g.check(word[i]);
    if (i && g.target(word[i - 1]) != g.source(word[i])) return GroupoidElement::zero();
  }
  std::vector<SignedEdge> stack;
  for (const auto& s : word) {
    if (!stack.empty() && stack.back() == s.flipped())
      stack.pop_back();
    else
      stack.push_back(s);
  }
  if (stack.empty()) return GroupoidElement::vertex(g.source(word.front()));
  return GroupoidElement::reduced_path(std::move(stack));
}

inline GroupoidElement multiply(const ShadowedGraph& g, const GroupoidElement& a, const GroupoidElement& b) {
  validate_element(g, a);
  validate_element(g, b);
  if (a.is_zero() || b.is_zero()) return GroupoidElement::zero();
  if (element_target(g, a) != element_source(g, b)) return GroupoidElement::zero();
  if (a.kind() == GroupoidElement::Kind::Vertex) return b;
  if (b.kind() == GroupoidElement::Kind::Vertex) return a;
  std::vector<SignedEdge> left = a.path();
  std::size_t j = 0;
  const auto& right = b.path();
  while (!left.empty() && j < right.size() && left.back() == right[j].flipped()) {
    left.pop_back();
    ++j;
  }
  if (left.empty() && j == right.size()) return GroupoidElement::vertex(element_source(g, a));
  left.insert(left.end(), right.begin() + static_cast<std::ptrdiff_t>(j), right.end());
  return GroupoidElement::reduced_path(std::move(left));
}

inline GroupoidElement inverse(const GroupoidElement& a) {
  switch (a.kind()) {
    case GroupoidElement::Kind::Zero: throw std::invalid_argument("Zero has no groupoid inverse");
    case GroupoidElement::Kind::Vertex: return a;
    case GroupoidElement::Kind::Path: {
      std::vector<SignedEdge> w(a.path().rbegin(), a.path().rend());
      for (auto& s : w) s = s.flipped();
      return GroupoidElement::reduced_path(std::move(w));
    }
  }
  return a;
}

inline std::string to_string(const ShadowedGraph& g, const GroupoidElement& a) {
  switch (a.kind()) {
    case GroupoidElement::Kind::Zero: return "0";
    case GroupoidElement::Kind::Vertex: return "[" + g.base().vertex(a.vertex_id()).label() + "]";
    case GroupoidElement::Kind::Path: {
      std::string s;
      for (std::size_t i = 0; i < a.length(); ++i) s += (i ? " " : "") + g.name(a.path()[i]);
      return s;
    }
  }
  return {};
}

inline constexpr std::size_t kEnumerationCap = 1'000'000;

// Breadth-first by length: Zero, vertices, then reduced paths of length
// 1..max_len. Throws std::length_error past `cap` elements.
inline std::vector<GroupoidElement> enumerate(const ShadowedGraph& g, std::size_t max_len,
                                              std::size_t cap = kEnumerationCap) {
  std::vector<GroupoidElement> out;
  auto push = [&](GroupoidElement e) {
    if (out.size() >= cap) throw std::length_error("groupoid enumeration exceeds " + std::to_string(cap) + " elements");
    out.push_back(std::move(e));
  };
  push(GroupoidElement::zero());
  for (VertexId v = 0; v < g.vertex_count(); ++v) push(GroupoidElement::vertex(v));
  std::vector<std::vector<SignedEdge>> frontier;
  if (max_len >= 1)
    for (const auto& s : g.signed_edges()) frontier.push_back({s});
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::vector<SignedEdge>> next;
    for (auto& w : frontier) {
      push(GroupoidElement::reduced_path(w));
      if (len == max_len) continue;
      for (const auto& s : g.outgoing(g.target(w.back()))) {
        if (s == w.back().flipped()) continue;
        auto ext = w;
        ext.push_back(s);
        next.push_back(std::move(ext));
        // Every word in next is pushed in the next round.
        if (out.size() + next.size() > cap)
          throw std::length_error("groupoid enumeration exceeds " + std::to_string(cap) + " elements");
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Element count per length; index 0 holds Zero plus the vertices.
inline std::vector<std::size_t> counts_by_length(const std::vector<GroupoidElement>& elems) {
  std::vector<std::size_t> counts(1, 0);
  for (const auto& e : elems) {
    if (e.length() >= counts.size()) counts.resize(e.length() + 1, 0);
    ++counts[e.length()];
  }
  return counts;
}

}  // namespace wold
