// Acceptance criteria AC1..AC10: one PASS/FAIL line each; exit status is the
// number of failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <woldgraph/report.hpp>

#include "fixtures.hpp"

using namespace wold;
using fixtures::sp;

namespace {

using Clock = std::chrono::steady_clock;
using Word = std::vector<SignedEdge>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("AC%-2d %s  %s (%s)\n", n, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

// All irreducible words reachable by cancelling adjacent e e^-1 pairs in any
// order. Confluence means the set is a singleton.
std::set<Word> all_normal_forms(const Word& w, std::map<Word, std::set<Word>>& memo) {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  std::set<Word> out;
  bool reducible = false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1] != w[i].flipped()) continue;
    reducible = true;
    Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i - 1));
    shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1), w.end());
    const auto sub = all_normal_forms(shorter, memo);
    out.insert(sub.begin(), sub.end());
  }
  if (!reducible) out.insert(w);
  memo[w] = out;
  return out;
}

struct Fixture {
  std::string name;
  DirectedGraph g;
};

std::vector<Fixture> confluence_fixtures() {
  return {{"loop", fixtures::loop_graph()},
          {"one-edge", fixtures::one_edge_graph()},
          {"path-2", fixtures::path_graph(2)},
          {"delta", fixtures::delta_graph()},
          {"K", fixtures::k_graph()}};
}

void ac1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  bool ok = true;
  std::size_t words = 0;
  for (const auto& f : confluence_fixtures()) {
    const ShadowedGraph g(f.g);
    for (int k = 0; k < 200; ++k) {
      const Word raw = fixtures::random_walk(g, 1 + static_cast<std::size_t>(k % 14), rng);
      std::map<Word, std::set<Word>> memo;
      const auto forms = all_normal_forms(raw, memo);
      const GroupoidElement lib = reduce_word(g, raw);
      const Word expected = lib.kind() == GroupoidElement::Kind::Path ? lib.path() : Word{};
      ok = ok && forms.size() == 1 && *forms.begin() == expected;
      ++words;
    }
  }
  const double t = seconds_since(t0);
  report(1, ok && t < 5.0, "rewriting confluence",
         std::to_string(words) + " words over 5 fixtures, all orders explored, " + std::to_string(t) + " s");
}

void ac2() {
  const auto one_edge = enumerate(ShadowedGraph(fixtures::one_edge_graph()), 1).size();
  const ShadowedGraph p2(fixtures::path_graph(2));
  const auto path2 = enumerate(p2, 2).size();
  std::size_t oracle = 0;
  for (const auto& e : fixtures::brute_force_groupoid(p2, 2)) oracle += e.length() <= 2;
  bool loops = true;
  for (std::size_t len = 1; len <= 10; ++len)
    loops = loops && enumerate(ShadowedGraph(fixtures::loop_graph()), len).size() == 2 * len + 2;
  report(2, one_edge == 5 && path2 == 10 && oracle == 10 && loops, "groupoid counts",
         "one-edge " + std::to_string(one_edge) + ", path-2 " + std::to_string(path2) + " (oracle " +
             std::to_string(oracle) + "), loop 2L+2 for L<=10 " + (loops ? "holds" : "fails"));
}

void ac3() {
  bool ok = true;
  std::size_t triples = 0, fixtures_checked = 0;
  std::vector<Fixture> fs = confluence_fixtures();
  fs.push_back({"two-loop", fixtures::two_loop_graph()});
  for (const auto& f : fs) {
    const ShadowedGraph g(f.g);
    std::vector<GroupoidElement> elems;
    for (std::size_t len = 1; len <= 12; ++len) {
      auto next = enumerate(g, len);
      if (next.size() > 50 || next.size() == elems.size()) break;
      elems = std::move(next);
    }
    ++fixtures_checked;
    std::vector<GroupoidElement> nonzero;
    for (const auto& e : elems)
      if (!e.is_zero()) nonzero.push_back(e);
    for (const auto& a : nonzero) {
      const auto sa = GroupoidElement::vertex(element_source(g, a));
      const auto ta = GroupoidElement::vertex(element_target(g, a));
      ok = ok && multiply(g, sa, a) == a && multiply(g, a, ta) == a;
      std::size_t inverses = 0;
      for (const auto& b : nonzero)
        if (multiply(g, a, b) == sa && multiply(g, b, a) == ta) ++inverses;
      ok = ok && inverses == 1;
      for (const auto& b : nonzero) {
        const auto ab = multiply(g, a, b);
        const bool composable = element_target(g, a) == element_source(g, b);
        ok = ok && (ab.is_zero() != composable);
        if (!composable) continue;
        ok = ok && element_source(g, ab) == element_source(g, a) && element_target(g, ab) == element_target(g, b);
        for (const auto& c : nonzero) {
          if (element_target(g, b) != element_source(g, c)) continue;
          ok = ok && multiply(g, ab, c) == multiply(g, a, multiply(g, b, c));
          ++triples;
        }
      }
    }
  }
  report(3, ok, "groupoid axioms",
         std::to_string(fixtures_checked) + " fixtures, " + std::to_string(triples) + " composable triples");
}

void ac4() {
  using E = AlgebraExpr;
  const auto su_c = E::tensor(E::scalar_unit(), E::continuous_functions("T"));
  const bool unitary = classify_single({ExtNat(3), ExtNat(0), ExtNat(0), ExtNat(0)}, "T") == su_c;
  const bool finite = classify_single({ExtNat(0), ExtNat(0), ExtNat(2), ExtNat(0)}, "T") == E::toeplitz();
  const bool infinite = classify_single({ExtNat(0), ExtNat(0), INF, ExtNat(0)}, "T") ==
                        E::tensor(E::scalar_unit(), E::matrix_alg(2));
  const auto mixed = classify_single({ExtNat(3), INF, ExtNat(1), INF}, "T");
  const bool mixed_ok = mixed == normalize(E::direct_sum({su_c, E::toeplitz()}));
  report(4, unitary && finite && infinite && mixed_ok, "classification table",
         "mixed (n,INF,1,INF) -> " + mixed.pretty());
}

void ac5() {
  const StarIndex z3{ExtNat(0), ExtNat(0), ExtNat(3), ExtNat(0)}, z5{ExtNat(0), ExtNat(0), ExtNat(5), ExtNat(0)};
  const StarIndex zinf{ExtNat(0), ExtNat(0), INF, ExtNat(0)};
  bool ok = star_equivalent(z3, z5, true) && classify_single(z3, "s") == AlgebraExpr::toeplitz() &&
            classify_single(z5, "s") == AlgebraExpr::toeplitz();
  ok = ok && !star_equivalent(zinf, z3, true) && !(classify_single(zinf, "s") == classify_single(z3, "s"));
  const ExtNat vals[5] = {ExtNat(0), ExtNat(1), ExtNat(2), ExtNat(3), INF};
  std::vector<StarIndex> grid;
  for (auto a : vals)
    for (auto b : vals)
      for (auto c : vals)
        for (auto d : vals) grid.push_back({a, b, c, d});
  std::vector<AlgebraExpr> cls;
  for (const auto& i : grid) cls.push_back(classify_single(i, "spec"));
  std::size_t equivalent = 0, bad = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (star_equivalent(grid[i], grid[j], true)) {
        ++equivalent;
        if (!(cls[i] == cls[j])) ++bad;
      }
  report(5, ok && bad == 0, "index equivalence vs classification",
         std::to_string(equivalent) + " equivalent pairs on the 625-index grid, " + std::to_string(bad) +
             " with differing classes");
}

AdmissibilityTable all_cross(const std::string& x, const std::string& y) {
  AdmissibilityTable pi;
  for (auto a : {x, x + "*"})
    for (auto b : {y, y + "*"}) {
      pi.set_symmetric(sp(a), sp(b));
      pi.set_symmetric(sp(b), sp(a));
    }
  return pi;
}

void ac6() {
  using E = AlgebraExpr;
  AdmissibilityTable us;
  us.set_symmetric(sp("u"), sp("s"));
  const bool pairwise = block_structure({GeneratorSpec::unitary("u", "T"), GeneratorSpec::infinite_shift("s")}, us, 4) ==
                     normalize(E::free_product({E::tensor(E::scalar_unit(), E::continuous_functions("T")),
                                                E::tensor(E::scalar_unit(), E::matrix_alg(2))}));
  const bool collapse = block_structure({GeneratorSpec::finite_shift("x1", 6), GeneratorSpec::finite_shift("x2", 3)},
                                        all_cross("x1", "x2"), 4) == E::toeplitz();
  const bool split = block_structure({GeneratorSpec::finite_shift("x", 2), GeneratorSpec::finite_shift("y", 3)}, {}, 4) ==
                     E::direct_sum({E::toeplitz(), E::toeplitz()});
  const auto ex3 = block_structure({GeneratorSpec::finite_shift("x1", 2), GeneratorSpec::infinite_shift("x2")},
                                   all_cross("x1", "x2"), 4);
  const bool shift_transfer = ex3 == normalize(E::free_product({E::toeplitz(), E::tensor(E::scalar_unit(), E::matrix_alg(2))}));
  report(6, pairwise && collapse && split && shift_transfer, "block structures",
         std::string("unitary+shift ") + (pairwise ? "ok" : "differs") + ", divisibility " + (collapse ? "ok" : "differs") +
             ", pi=0 split " + (split ? "ok" : "differs") + ", {U^k, V} -> " + ex3.pretty());
}

void ac7() {
  const auto t0 = Clock::now();
  constexpr std::size_t n = 64;
  std::vector<double> thetas;
  for (int j = 0; j < 5; ++j) thetas.push_back(0.4 + 0.9 * j);
  std::vector<ComplexMatrix> built = {make_block_transfer(n / 2), make_diagonal_unitary(std::vector<double>(n, 1.3)),
                                      make_unitary_plus_shift(thetas, 50, 3, 9)};
  for (std::size_t k = 1; k < n; k += 5) built.push_back(make_truncated_shift(k, n));
  double worst = 0.0;
  for (const auto& a : built) worst = std::max(worst, check_partial_isometry(a).identity_residual);
  bool ok = worst <= 1e-12;

  // diag(theta) + shift(3) on 50 + zero on 9: dims are exact integers.
  const auto w = wold_split(built[2]);
  const bool dims = w.h_u.cols() == 5 && w.h_s.cols() == 47 && w.ker_a.cols() == 12 && w.ker_s_adj.cols() == 3;
  const bool blocks =
      op_norm(w.unitary_part - block_diagonal({make_diagonal_unitary(thetas), ComplexMatrix::Zero(59, 59)})) <= 1e-10;
  const auto idx = star_index_numeric(built[2]).index;
  const bool idx_ok = idx == StarIndex{ExtNat(5), ExtNat(12), ExtNat(3), ExtNat(9)};
  ok = ok && dims && blocks && idx_ok;

  // Declared indices after the truncation map, and the pi tables, on the sample families.
  bool verify_ok = true;
  for (const char* name : {"shift_and_transfer", "unitary_plus_shift"}) {
    const auto r = cmd_verify(load_family(std::string(WOLDGRAPH_SAMPLES_DIR) + "/" + name + ".yaml"));
    verify_ok = verify_ok && r.exit_code == 0;
  }
  const auto f = load_family(std::string(WOLDGRAPH_SAMPLES_DIR) + "/shift_and_transfer.yaml");
  const auto numeric = derive_pi_table({{"x1", make_truncated_shift(2, n)}, {"x2", make_block_transfer(n / 2)}});
  bool pi_ok = true;
  for (const auto& [key, v] : numeric.entries()) pi_ok = pi_ok && f.pi(key.first, key.second) == v;
  ok = ok && verify_ok && pi_ok;
  const double t = seconds_since(t0);
  report(7, ok && t < 10.0, "numeric oracle",
         "max ||AA*A - A|| " + std::to_string(worst) + ", split dims " + (dims ? "exact" : "wrong") + ", index " +
             idx.str() + ", verify " + (verify_ok ? "ok" : "mismatch") + ", pi table n=64 " +
             (pi_ok ? "equal" : "differs") + ", " + std::to_string(t) + " s");
}

void ac8() {
  double worst = 0.0;
  bool ok = true;
  std::size_t pairs = 0;
  const std::vector<std::pair<DirectedGraph, std::vector<double>>> cases = {{fixtures::one_edge_graph(), {}},
                                                                           {fixtures::two_loop_graph(), {0.9, 2.3}}};
  for (const auto& [graph, thetas] : cases) {
    const auto r = matricial_representation(graph, thetas);
    for (const auto& p : r.vertex_projections)
      worst = std::max({worst, op_norm(p * p - p), op_norm(p - p.adjoint())});
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      const auto& m = r.edge_matrices[e];
      worst = std::max({worst, op_norm(m.adjoint() * m - r.vertex_projections[graph.edge(e).target]),
                        op_norm(m * m.adjoint() - r.vertex_projections[graph.edge(e).source])});
    }
    const ShadowedGraph g(graph);
    const auto elems = enumerate(g, 3);
    for (const auto& a : elems)
      for (const auto& b : elems) {
        const double norm = op_norm(element_matrix(r, a) * element_matrix(r, b));
        ok = ok && (multiply(g, a, b).is_zero() == (norm <= 1e-12));
        ++pairs;
      }
  }
  report(8, ok && worst <= 1e-12, "matricial representation",
         "max residual " + std::to_string(worst) + ", " + std::to_string(pairs) + " products checked");
}

void ac9() {
  const auto r = cmd_cayley(8, 1);
  const auto& res = r.report["residuals"];
  const double roundtrip = res["roundtrip"], defect = res["defect_identity"], norm = res["defect_power_norm"],
               ext = res["extension_unitarity"];
  const bool ok = roundtrip <= 1e-8 && defect <= 1e-12 && norm <= 1e-12 && ext <= 1e-12 && r.exit_code == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "roundtrip %.2e, W^(n+1)=alpha^n W %.2e, ||W^n|| %.2e, extension %.2e", roundtrip,
                defect, norm, ext);
  report(9, ok, "Cayley suite", buf);
}

void ac10() {
  const auto f = generate_odd_orbit_family(15);
  const bool chain = f.contains(3, 7) && f.contains(1, 3) && f.contains(0, 1) && !f.contains(7, 3);
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t n = 0; n <= 15; ++n) {
    bool inside = false;
    for (std::uint64_t m = 0; m <= 15 && !inside; ++m)
      inside = m != n && f.orbits[m] != f.orbits[n] && f.contains(m, n);
    if (!inside) oracle.push_back(n);
  }
  bool listed_first = true;
  for (std::uint64_t n : {0, 2, 4, 6}) listed_first = listed_first && std::count(oracle.begin(), oracle.end(), n);
  const std::vector<std::uint64_t> evens = {0, 2, 4, 6, 8, 10, 12, 14};
  std::string listed;
  for (auto n : f.maximal) listed += (listed.empty() ? "" : ",") + std::to_string(n);
  report(10, chain && listed_first && f.maximal == oracle && oracle == evens, "orbit family",
         "maximal orbits below 16: {" + listed + "}");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "threw", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
