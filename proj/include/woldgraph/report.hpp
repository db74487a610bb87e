#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blocks.hpp"
#include "cayley.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "groupoid.hpp"
#include "numeric.hpp"

namespace wold {

using nlohmann::json;

struct CommandResult {
  json report;
  int exit_code = 0;  // 0 all checks pass, 1 mismatch, 2 input error
};

struct Options {
  std::optional<unsigned> depth;
  std::optional<std::size_t> max_len;
  std::optional<double> tol;
  bool emit_dot = false;
  std::string dot_path;
};

inline constexpr std::size_t kElementListLimit = 10'000;

// FNV-1a over a canonical rendering of the parsed input, so generator order and
// formatting do not change it.
inline std::string inputs_digest(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string canonical_input(const FamilyFile& f, const Options& o) {
  std::vector<const FamilyGenerator*> gens;
  for (const auto& g : f.generators) gens.push_back(&g);
  std::sort(gens.begin(), gens.end(), [](auto* a, auto* b) { return a->spec.id < b->spec.id; });
  std::ostringstream os;
  os.precision(17);
  os << "depth=" << o.depth.value_or(f.depth) << ";max_len=" << o.max_len.value_or(f.max_len)
     << ";tol=" << o.tol.value_or(f.tol) << ";";
  for (const auto* g : gens) {
    os << "gen " << g->spec.id << " " << g->declared_kind << " " << g->spec.spectrum << " " << g->spec.defect << " "
       << g->spec.index().str();
    if (g->matrix) {
      os << " m" << g->matrix->rows();
      for (Eigen::Index r = 0; r < g->matrix->rows(); ++r)
        for (Eigen::Index c = 0; c < g->matrix->cols(); ++c)
          os << " " << (*g->matrix)(r, c).real() << "," << (*g->matrix)(r, c).imag();
    }
    for (const auto& [field, rules] : g->truncation)
      for (const auto& r : rules) os << " t" << field << ":" << r.numeric.str() << ">" << r.symbolic.str();
    os << ";";
  }
  for (const auto& [k, v] : f.pi.entries()) os << "pi " << k.first.str() << " " << k.second.str() << " " << v << ";";
  return os.str();
}

inline json index_json(const StarIndex& i) {
  return json::array({i.eps0.str(), i.eps_plus.str(), i.eps_minus.str(), i.eps_minus_minus.str()});
}

inline json algebra_json(const AlgebraExpr& e) {
  return {{"pretty", e.pretty()}, {"canonical", e.canonical()}, {"ast", e.to_json()}};
}

inline json envelope(const std::string& command, const std::string& digest) {
  return {{"command", command}, {"inputs_digest", digest}, {"results", json::object()},
          {"residuals", json::object()}, {"status", "ok"}};
}

inline std::vector<std::string> sorted_ids(const std::vector<GeneratorSpec>& gens) {
  std::vector<std::string> ids;
  for (const auto& g : gens) ids.push_back(g.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline json graph_summary(const DirectedGraph& g, unsigned depth) {
  std::size_t loops = 0;
  for (const auto& e : g.edges()) loops += e.source == e.target;
  return {{"depth", depth},       {"vertices", g.vertex_count()}, {"edges", g.edge_count()},
          {"loops", loops},       {"components", g.component_count()}, {"truncated", g.truncated()}};
}

inline CommandResult cmd_classify(const FamilyFile& f, const Options& o = {}) {
  const unsigned depth = o.depth.value_or(f.depth);
  CommandResult r{envelope("classify", inputs_digest(canonical_input(f, o)))};
  json& res = r.report["results"];

  std::vector<const FamilyGenerator*> gens;
  for (const auto& g : f.generators) gens.push_back(&g);
  std::sort(gens.begin(), gens.end(), [](auto* a, auto* b) { return a->spec.id < b->spec.id; });
  res["generators"] = json::array();
  for (const auto* g : gens) {
    const StarIndex i = g->spec.index();
    res["generators"].push_back({{"id", g->spec.id},
                                 {"kind", g->declared_kind},
                                 {"index", index_json(i)},
                                 {"parts", sorted_ids(g->parts)},
                                 {"algebra", algebra_json(classify_single(i, g->spec.spectrum))}});
  }

  const auto family = f.symbolic_family();
  const WoldPartition part = wold_partition(family);
  res["wold_partition"] = {{"unitaries", sorted_ids(part.unitaries)},
                           {"infinite_shifts", sorted_ids(part.infinite_shifts)},
                           {"finite_shifts", sorted_ids(part.finite_shifts)}};
  res["minimal_finite_shifts"] = sorted_ids(minimal_finite_shifts(part.finite_shifts, f.pi, depth));
  res["g_graph"] = graph_summary(g_graph(family, f.pi, depth), depth);

  std::vector<std::vector<std::string>> comps;
  for (const auto& c : pi_components(family, f.pi)) comps.push_back(sorted_ids(c));
  std::sort(comps.begin(), comps.end());
  res["pi_components"] = comps;
  res["algebra"] = algebra_json(block_structure(family, f.pi, depth));
  return r;
}

inline CommandResult cmd_groupoid(const FamilyFile& f, const Options& o = {}) {
  const unsigned depth = o.depth.value_or(f.depth);
  const std::size_t max_len = o.max_len.value_or(f.max_len);
  CommandResult r{envelope("groupoid", inputs_digest(canonical_input(f, o)))};
  json& res = r.report["results"];
  const ShadowedGraph g(g_graph(f.symbolic_family(), f.pi, depth));
  res["g_graph"] = graph_summary(g.base(), depth);
  res["max_len"] = max_len;
  std::vector<GroupoidElement> elems;
  try {
    elems = enumerate(g, max_len);
  } catch (const std::length_error& e) {
    r.report["status"] = "error";
    r.report["errors"] = json::array({e.what()});
    r.exit_code = 2;
    return r;
  }
  res["count"] = elems.size();
  res["counts_by_length"] = counts_by_length(elems);
  if (elems.size() <= kElementListLimit) {
    json list = json::array();
    for (const auto& e : elems) list.push_back(to_string(g, e));
    res["elements"] = list;
  }
  if (o.emit_dot) {
    const std::string path = o.dot_path.empty() ? f.source + ".dot" : o.dot_path;
    std::ofstream out(path);
    if (!out) {
      r.report["status"] = "error";
      r.report["errors"] = json::array({"cannot write " + path});
      r.exit_code = 2;
      return r;
    }
    out << to_dot(g.base());
    res["dot_file"] = path;
  }
  return r;
}

inline CommandResult cmd_verify(const FamilyFile& f, const Options& o = {}) {
  const double tol = o.tol.value_or(f.tol);
  CommandResult r{envelope("verify", inputs_digest(canonical_input(f, o)))};
  json& res = r.report["results"];
  json& resid = r.report["residuals"];
  std::vector<std::string> mismatches;

  std::vector<const FamilyGenerator*> gens;
  for (const auto& g : f.generators)
    if (g.matrix) gens.push_back(&g);
  std::sort(gens.begin(), gens.end(), [](auto* a, auto* b) { return a->spec.id < b->spec.id; });
  if (gens.empty()) {
    r.report["status"] = "error";
    r.report["errors"] = json::array({"no matrix generators to verify"});
    r.exit_code = 2;
    return r;
  }

  res["dimension"] = gens.front()->matrix->rows();
  res["generators"] = json::array();
  double max_identity = 0.0, max_wold = 0.0;
  for (const auto* g : gens) {
    const ComplexMatrix& a = *g->matrix;
    json entry = {{"id", g->spec.id}};
    const auto pic = check_partial_isometry(a, tol);
    entry["partial_isometry"] = {{"ok", pic.ok},
                                 {"identity_residual", pic.identity_residual},
                                 {"idempotent_residual", pic.idempotent_residual},
                                 {"selfadjoint_residual", pic.selfadjoint_residual}};
    max_identity = std::max(max_identity, pic.identity_residual);
    if (!pic.ok) {
      mismatches.push_back(g->spec.id + ": identity check a = aa*a failed (residual " +
                           std::to_string(pic.identity_residual) + ")");
      res["generators"].push_back(entry);
      continue;
    }
    try {
      const WoldSplit w = wold_split(a, tol);
      entry["wold"] = {{"dim_h_u", w.h_u.cols()},
                       {"dim_h_s", w.h_s.cols()},
                       {"dim_ker_a", w.ker_a.cols()},
                       {"dim_ker_a_adj", w.ker_a_adj.cols()},
                       {"dim_ker_s_adj", w.ker_s_adj.cols()}};
      max_wold = std::max({max_wold, w.sum_residual, w.normality_residual, w.projection_residual,
                           w.orthogonality_residual});
      const NumericIndex ni = star_index_numeric(a, tol);
      const StarIndex mapped = apply_truncation(ni.index, g->truncation);
      const StarIndex declared = g->spec.index();
      entry["index"] = {{"numeric", index_json(ni.index)},
                        {"mapped", index_json(mapped)},
                        {"declared", index_json(declared)},
                        {"degenerate", ni.degenerate},
                        {"match", mapped == declared}};
      if (!(mapped == declared))
        mismatches.push_back(g->spec.id + ": numeric index " + mapped.str() + " (raw " + ni.index.str() +
                             ") differs from declared " + declared.str());
    } catch (const std::exception& e) {
      mismatches.push_back(g->spec.id + ": " + e.what());
    }
    res["generators"].push_back(entry);
  }

  // Only generators that are themselves Wold-family members carry pi entries.
  std::vector<std::pair<std::string, ComplexMatrix>> members;
  for (const auto* g : gens)
    if (g->parts.size() == 1 && g->parts.front().id == g->spec.id) members.emplace_back(g->spec.id, *g->matrix);
  json table = json::array();
  std::size_t pi_mismatch = 0;
  for (const auto& [xi, x] : members)
    for (const auto& [yi, y] : members)
      for (bool xs : {false, true})
        for (bool ys : {false, true}) {
          const SignedPower a{xi, 1, xs}, b{yi, 1, ys};
          const auto num = pi_numeric(xs ? ComplexMatrix(x.adjoint()) : x, ys ? ComplexMatrix(y.adjoint()) : y, tol);
          const bool sym = f.pi(a, b);
          table.push_back({{"pair", json::array({a.str(), b.str()})},
                           {"numeric", num.nonzero},
                           {"declared", sym},
                           {"case", to_string(num.which)}});
          if (num.nonzero != sym) {
            ++pi_mismatch;
            mismatches.push_back("pi(" + a.str() + ", " + b.str() + "): numeric " + (num.nonzero ? "nonzero" : "zero") +
                                 ", declared " + (sym ? "nonzero" : "zero"));
          }
        }
  res["pi_table"] = table;
  res["pi_mismatches"] = pi_mismatch;
  resid["max_identity"] = max_identity;
  resid["max_wold"] = max_wold;
  if (!mismatches.empty()) {
    r.report["status"] = "mismatch";
    r.report["errors"] = mismatches;
    r.exit_code = 1;
  }
  return r;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = Complex(d(rng), d(rng));
  return (a + a.adjoint()) / 2.0;
}

inline ComplexVector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(d(rng), d(rng));
  return v / v.norm();
}

inline bool is_permutation_matrix(const ComplexMatrix& u, double tol) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const Complex z = u(i, j);
      if (std::abs(z - 1.0) <= tol)
        ++ones;
      else if (std::abs(z) > tol)
        return false;
    }
    if (ones != 1) return false;
  }
  return unitarity_residual(u) <= tol;
}

inline constexpr std::size_t kCayleyInstances = 20;

// The shift fixture: V = truncated shift(1, n) (zero for n = 1), e+ = e_{n-1},
// e- = e_0.
inline std::pair<ComplexMatrix, DefectData> shift_extension_fixture(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix v = n >= 2 ? make_truncated_shift(1, n) : ComplexMatrix::Zero(m, m);
  return {v, rank1_defect(ComplexVector::Unit(m, m - 1), ComplexVector::Unit(m, 0))};
}

inline CommandResult cmd_cayley(std::size_t dim, std::uint64_t seed, const Options& o = {}) {
  const double tol = o.tol.value_or(kIdentityTol);
  CommandResult r{envelope("cayley", inputs_digest("cayley;dim=" + std::to_string(dim) + ";seed=" +
                                                   std::to_string(seed)))};
  json& res = r.report["results"];
  json& resid = r.report["residuals"];
  if (dim == 0) {
    r.report["status"] = "error";
    r.report["errors"] = json::array({"dimension must be positive"});
    r.exit_code = 2;
    return r;
  }
  std::mt19937_64 rng(seed);
  const auto m = static_cast<Eigen::Index>(dim);
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);

  const ComplexMatrix u0 = cayley_of_selfadjoint(ComplexMatrix::Zero(m, m));
  const double zero_case = op_norm(u0 + id);
  const double zero_roundtrip = op_norm(inverse_cayley(u0, tol));

  double roundtrip = 0.0, unitarity = 0.0;
  for (std::size_t k = 0; k < kCayleyInstances; ++k) {
    const ComplexMatrix t = random_hermitian(dim, rng);
    const ComplexMatrix u = cayley_of_selfadjoint(t);
    unitarity = std::max(unitarity, unitarity_residual(u));
    roundtrip = std::max(roundtrip, op_norm(inverse_cayley(u, tol) - t));
  }

  double defect_identity = 0.0, defect_norm = 0.0;
  for (std::size_t k = 0; k < kCayleyInstances; ++k) {
    const DefectData d = rank1_defect(random_unit_vector(dim, rng), random_unit_vector(dim, rng));
    defect_identity = std::max(defect_identity, d.identity_residual);
    ComplexMatrix power = d.w;
    for (int n = 1; n <= kDefectPowerBound; ++n) {
      defect_norm = std::max(defect_norm, std::abs(op_norm(power) - std::pow(std::abs(d.alpha), n - 1)));
      power = power * d.w;
    }
  }

  const auto [v, defect] = shift_extension_fixture(dim);
  const ComplexMatrix ext = unitary_extension(v, defect, tol);
  const double extension = unitarity_residual(ext);

  res["dimension"] = dim;
  res["seed"] = seed;
  res["instances"] = kCayleyInstances;
  res["zero_case_u_is_minus_identity"] = zero_case <= tol;
  res["extension_is_permutation"] = is_permutation_matrix(ext, tol);
  resid["zero_case"] = zero_case;
  resid["zero_roundtrip"] = zero_roundtrip;
  resid["cayley_unitarity"] = unitarity;
  resid["roundtrip"] = roundtrip;
  resid["defect_identity"] = defect_identity;
  resid["defect_power_norm"] = defect_norm;
  resid["extension_unitarity"] = extension;

  std::vector<std::string> failures;
  if (zero_case > tol || zero_roundtrip > tol) failures.push_back("T = 0 case");
  if (unitarity > tol) failures.push_back("Cayley transform not unitary");
  if (roundtrip > kRoundtripTol) failures.push_back("roundtrip residual above 1e-8");
  if (defect_identity > 1e-12 || defect_norm > 1e-12) failures.push_back("rank-one defect identities");
  if (extension > 1e-12) failures.push_back("unitary extension");
  if (!failures.empty()) {
    r.report["status"] = "mismatch";
    r.report["errors"] = failures;
    r.exit_code = 1;
  }
  return r;
}

}  // namespace wold
