#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "graph.hpp"
#include "groupoid.hpp"
#include "index.hpp"
#include "numeric.hpp"

namespace wold {

struct WoldPartition {
  std::vector<GeneratorSpec> unitaries;
  std::vector<GeneratorSpec> infinite_shifts;
  std::vector<GeneratorSpec> finite_shifts;
};

inline WoldPartition wold_partition(const std::vector<GeneratorSpec>& family) {
  WoldPartition p;
  for (const auto& g : family) {
    switch (g.kind) {
      case GeneratorKind::Unitary: p.unitaries.push_back(g); break;
      case GeneratorKind::InfiniteShift: p.infinite_shifts.push_back(g); break;
      case GeneratorKind::FiniteShift: p.finite_shifts.push_back(g); break;
    }
  }
  return p;
}

// Classes of the undirected relation "some pi entry couples the pair", in order
// of first appearance; members keep input order.
inline std::vector<std::vector<GeneratorSpec>> pi_components(const std::vector<GeneratorSpec>& gens,
                                                             const AdmissibilityTable& pi) {
  const std::size_t n = gens.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pi.connected(gens[i].id, gens[j].id)) parent[find(i)] = find(j);
  std::vector<std::vector<GeneratorSpec>> out;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = slot.try_emplace(find(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(gens[i]);
  }
  return out;
}

namespace detail {

// One pi-connected family: closure of the free product of its unitary, M2 and
// Toeplitz-sum blocks.
inline AlgebraExpr connected_block_structure(const std::vector<GeneratorSpec>& family, const AdmissibilityTable& pi,
                                             unsigned depth) {
  const WoldPartition part = wold_partition(family);
  std::vector<AlgebraExpr> factors;
  for (const auto& u : part.unitaries) factors.push_back(unitary_block(u.spectrum, "H_" + u.id));
  for (const auto& s : part.infinite_shifts) factors.push_back(infinite_shift_block("H_" + s.id));
  const auto minimal = minimal_finite_shifts(part.finite_shifts, pi, depth);
  if (!minimal.empty()) {
    std::vector<AlgebraExpr> toeplitz;
    for (const auto& comp : pi_components(minimal, pi)) {
      const auto smallest = std::min_element(comp.begin(), comp.end(), [](const auto& a, const auto& b) {
        return a.defect < b.defect;
      });
      toeplitz.push_back(AlgebraExpr::toeplitz("H_" + smallest->id));
    }
    factors.push_back(AlgebraExpr::direct_sum(std::move(toeplitz)));
  }
  return AlgebraExpr::free_product(std::move(factors), AlgebraExpr::Closure::Closed);
}

}  // namespace detail

// Unit tensor the closed free product over blocks; pi-disconnected parts of the
// family split into a direct sum. The empty family generates the scalars.
inline AlgebraExpr block_structure(const std::vector<GeneratorSpec>& family, const AdmissibilityTable& pi,
                                   unsigned depth) {
  if (family.empty()) return AlgebraExpr::scalar_unit("H_G");
  std::vector<AlgebraExpr> parts;
  for (const auto& comp : pi_components(family, pi))
    parts.push_back(detail::connected_block_structure(comp, pi, depth));
  return normalize(AlgebraExpr::tensor(AlgebraExpr::scalar_unit("H_G"), AlgebraExpr::direct_sum(std::move(parts))));
}

// Matricial representation ----------------------------------------------------

struct MatricialRepresentation {
  std::vector<ComplexMatrix> vertex_projections;  // P_j = e_j e_j^T
  std::vector<ComplexMatrix> edge_matrices;       // one per edge, by edge id
};

// thetas are consumed by loops in edge order; per vertex they must be distinct
// and nonzero mod 2 pi.
inline MatricialRepresentation matricial_representation(const DirectedGraph& g, const std::vector<double>& thetas) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  if (n == 0) throw std::invalid_argument("matricial_representation: empty graph");
  if (g.component_count() != 1) throw std::invalid_argument("matricial_representation: graph is not connected");

  MatricialRepresentation r;
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p(j, j) = 1.0;
    r.vertex_projections.push_back(std::move(p));
  }

  std::map<std::pair<VertexId, VertexId>, std::size_t> multiplicity, seen;
  for (const auto& e : g.edges())
    if (e.source != e.target) ++multiplicity[{e.source, e.target}];

  std::size_t next_theta = 0;
  std::map<VertexId, std::vector<double>> loop_angles;
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& e : g.edges()) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    const auto i = static_cast<Eigen::Index>(e.source), j = static_cast<Eigen::Index>(e.target);
    if (e.source == e.target) {
      if (next_theta >= thetas.size()) throw std::invalid_argument("matricial_representation: too few thetas for loops");
      const double theta = thetas[next_theta++];
      const double reduced = std::remainder(theta, two_pi);
      if (std::abs(reduced) < 1e-12) throw std::invalid_argument("matricial_representation: loop angle must be nonzero");
      for (double other : loop_angles[e.source])
        if (std::abs(std::remainder(theta - other, two_pi)) < 1e-12)
          throw std::invalid_argument("matricial_representation: repeated loop angle at one vertex");
      loop_angles[e.source].push_back(theta);
      m(i, i) = std::polar(1.0, theta);
    } else {
      const std::size_t k = multiplicity[{e.source, e.target}];
      const std::size_t idx = ++seen[{e.source, e.target}];
      m(i, j) = std::polar(1.0, two_pi * static_cast<double>(idx % k) / static_cast<double>(k));
    }
    r.edge_matrices.push_back(std::move(m));
  }
  if (next_theta != thetas.size()) throw std::invalid_argument("matricial_representation: unused thetas");
  return r;
}

// Product of the letters of an element; shadow edges map to adjoints.
inline ComplexMatrix element_matrix(const MatricialRepresentation& r, const GroupoidElement& a) {
  const auto n = r.vertex_projections.front().rows();
  switch (a.kind()) {
    case GroupoidElement::Kind::Zero: return ComplexMatrix::Zero(n, n);
    case GroupoidElement::Kind::Vertex: return r.vertex_projections.at(a.vertex_id());
    case GroupoidElement::Kind::Path: break;
  }
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (const auto& s : a.path()) {
    const ComplexMatrix& e = r.edge_matrices.at(s.edge);
    m = m * (s.inverse ? ComplexMatrix(e.adjoint()) : e);
  }
  return m;
}

// Orbit family of f(m) = 2m + 1 -------------------------------------------------

struct OrbitFamily {
  std::uint64_t n_max = 0;
  std::vector<std::vector<std::uint64_t>> orbits;  // orbits[n] = X_(n) cut at n_max, increasing
  std::vector<std::uint64_t> maximal;              // indices of maximal orbits
  std::vector<GeneratorSpec> generators;           // y_n: K_n -> K_{f(n)}, one per n <= n_max
  AdmissibilityTable pi;                           // y_n y_n* = y_{f(n)}* y_{f(n)}

  bool contains(std::uint64_t outer, std::uint64_t inner) const {
    const auto& o = orbits.at(outer);
    const auto& i = orbits.at(inner);
    return std::includes(o.begin(), o.end(), i.begin(), i.end());
  }
};

inline std::uint64_t odd_successor(std::uint64_t m) { return 2 * m + 1; }

inline OrbitFamily generate_odd_orbit_family(std::uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("generate_odd_orbit_family: n_max must be positive");
  if (n_max > (1u << 20)) throw std::invalid_argument("generate_odd_orbit_family: n_max too large for desk scale");
  OrbitFamily f;
  f.n_max = n_max;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    std::vector<std::uint64_t> orbit;
    for (std::uint64_t m = n; m <= n_max; m = odd_successor(m)) orbit.push_back(m);
    f.orbits.push_back(std::move(orbit));
    // X_(n) is contained in X_(m) exactly when n lies on m's orbit, so X_(n) is
    // maximal iff n has no preimage under f.
    if (n % 2 == 0) f.maximal.push_back(n);
  }
  for (std::uint64_t n = 0; n <= n_max; ++n) f.generators.push_back(GeneratorSpec::infinite_shift("y" + std::to_string(n)));
  for (std::uint64_t n = 0; 2 * n + 1 <= n_max; ++n) {
    const std::string a = "y" + std::to_string(odd_successor(n)), b = "y" + std::to_string(n);
    f.pi.set_symmetric({a, 1, false}, {b, 1, false});
  }
  return f;
}

}  // namespace wold
