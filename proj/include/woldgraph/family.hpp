#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "generator.hpp"
#include "numeric.hpp"

namespace wold {

// Parse or validation failure, tagged with a 1-based line when one is known.
class FamilyError : public std::runtime_error {
 public:
  FamilyError(const std::string& source, int line, const std::string& message,
              std::vector<std::string> details = {})
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
        line_(line),
        details_(std::move(details)) {}

  int line() const noexcept { return line_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  int line_;
  std::vector<std::string> details_;
};

// "a", "bi", "a+bi", "a-bi", "i", "-i"; j is accepted for i.
inline Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ' && c != '\t') s += c;
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad complex literal '" + raw + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument("bad complex literal '" + raw + "'");
    return v;
  };
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : number(re), number(im)};
}

// Which numeric index entry stands for which symbolic value on a truncation.
struct TruncationRule {
  ExtNat numeric;
  ExtNat symbolic;
};

using TruncationMap = std::map<int, std::vector<TruncationRule>>;  // key: entry 0..3

inline constexpr const char* kIndexFields[4] = {"eps0", "eps_plus", "eps_minus", "eps_minus_minus"};

inline StarIndex apply_truncation(const StarIndex& numeric, const TruncationMap& map) {
  auto e = numeric.entries();
  for (const auto& [field, rules] : map)
    for (const auto& r : rules)
      if (e[static_cast<std::size_t>(field)] == r.numeric) {
        e[static_cast<std::size_t>(field)] = r.symbolic;
        break;
      }
  return {e[0], e[1], e[2], e[3]};
}

struct FamilyGenerator {
  GeneratorSpec spec;
  std::string declared_kind;          // as written in the file
  std::vector<GeneratorSpec> parts;   // Wold family members it contributes
  std::optional<ComplexMatrix> matrix;
  TruncationMap truncation;
  int line = 0;
};

struct FamilyFile {
  std::string source = "<input>";
  std::vector<FamilyGenerator> generators;
  AdmissibilityTable pi;
  std::map<AdmissibilityTable::Key, int> pi_lines;
  unsigned depth = 4;
  std::size_t max_len = 3;
  double tol = kIdentityTol;

  std::vector<GeneratorSpec> symbolic_family() const {
    std::vector<GeneratorSpec> out;
    for (const auto& g : generators) out.insert(out.end(), g.parts.begin(), g.parts.end());
    return out;
  }

  const FamilyGenerator* find(const std::string& id) const {
    for (const auto& g : generators)
      if (g.spec.id == id) return &g;
    return nullptr;
  }
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

template <class T>
T scalar_as(const YAML::Node& n, const std::string& what, const std::string& src) {
  if (!n.IsScalar()) throw FamilyError(src, line_of(n), what + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw FamilyError(src, line_of(n), "cannot read " + what + " from '" + n.Scalar() + "'");
  }
}

inline ExtNat extnat_of(const YAML::Node& n, const std::string& src) {
  if (!n.IsScalar()) throw FamilyError(src, line_of(n), "index entry must be a scalar");
  try {
    return ExtNat::parse(n.Scalar());
  } catch (const std::exception& e) {
    throw FamilyError(src, line_of(n), e.what());
  }
}

inline std::vector<double> doubles_of(const YAML::Node& n, const std::string& what, const std::string& src) {
  if (!n.IsSequence()) throw FamilyError(src, line_of(n), what + " must be a list");
  std::vector<double> out;
  for (const auto& x : n) out.push_back(scalar_as<double>(x, what, src));
  return out;
}

inline std::size_t size_of(const YAML::Node& map, const char* key, const std::string& src, std::size_t fallback = 0,
                           bool required = true) {
  const YAML::Node n = map[key];
  if (!n) {
    if (required) throw FamilyError(src, line_of(map), std::string("missing key '") + key + "'");
    return fallback;
  }
  const auto v = scalar_as<long long>(n, key, src);
  if (v < 0 || v > 4096) throw FamilyError(src, line_of(n), std::string(key) + " out of range [0, 4096]");
  return static_cast<std::size_t>(v);
}

inline ComplexMatrix matrix_of(const YAML::Node& n, const std::string& src) {
  try {
    if (n.IsSequence()) {
      const auto rows = static_cast<Eigen::Index>(n.size());
      if (rows == 0) throw FamilyError(src, line_of(n), "matrix literal is empty");
      const auto cols = static_cast<Eigen::Index>(n[0].size());
      ComplexMatrix m(rows, cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        const YAML::Node row = n[static_cast<std::size_t>(r)];
        if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != cols)
          throw FamilyError(src, line_of(row), "matrix rows must be lists of equal length");
        for (Eigen::Index c = 0; c < cols; ++c) {
          const YAML::Node cell = row[static_cast<std::size_t>(c)];
          try {
            m(r, c) = parse_complex(cell.Scalar());
          } catch (const std::invalid_argument& e) {
            throw FamilyError(src, line_of(cell), e.what());
          }
        }
      }
      return m;
    }
    if (!n.IsMap() || n.size() != 1)
      throw FamilyError(src, line_of(n), "matrix must be a list of rows or a single-key constructor map");
    const std::string kind = n.begin()->first.Scalar();
    const YAML::Node args = n.begin()->second;
    if (kind == "shift") return make_truncated_shift(size_of(args, "k", src), size_of(args, "n", src));
    if (kind == "diagonal_unitary") return make_diagonal_unitary(doubles_of(args["thetas"], "thetas", src));
    if (kind == "block_transfer") return make_block_transfer(size_of(args, "m", src));
    if (kind == "unitary_plus_shift") {
      std::vector<double> thetas;
      if (args["thetas"]) thetas = doubles_of(args["thetas"], "thetas", src);
      return make_unitary_plus_shift(thetas, size_of(args, "shift_dim", src, 0, false), size_of(args, "k", src, 1, false),
                                     size_of(args, "zero_dim", src, 0, false));
    }
    throw FamilyError(src, line_of(n), "unknown matrix constructor '" + kind + "'");
  } catch (const std::invalid_argument& e) {
    throw FamilyError(src, line_of(n), e.what());
  }
}

inline TruncationMap truncation_of(const YAML::Node& n, const std::string& src) {
  if (!n.IsMap()) throw FamilyError(src, line_of(n), "truncation must map index fields to rules");
  TruncationMap out;
  for (const auto& kv : n) {
    const std::string field = kv.first.Scalar();
    int slot = -1;
    for (int k = 0; k < 4; ++k)
      if (field == kIndexFields[k]) slot = k;
    if (slot < 0) throw FamilyError(src, line_of(kv.first), "unknown index field '" + field + "'");
    std::vector<YAML::Node> rules;
    if (kv.second.IsSequence())
      for (const auto& r : kv.second) rules.push_back(r);
    else
      rules.push_back(kv.second);
    for (const auto& r : rules) {
      const std::string text = scalar_as<std::string>(r, "truncation rule", src);
      const auto arrow = text.find("->");
      if (arrow == std::string::npos) throw FamilyError(src, line_of(r), "truncation rule must read 'numeric->symbolic'");
      try {
        out[slot].push_back({ExtNat::parse(text.substr(0, arrow)), ExtNat::parse(text.substr(arrow + 2))});
      } catch (const std::exception& e) {
        throw FamilyError(src, line_of(r), e.what());
      }
    }
  }
  return out;
}

inline StarIndex index_of(const YAML::Node& n, const std::string& src) {
  if (!n.IsSequence() || n.size() != 4) throw FamilyError(src, line_of(n), "index must be a list of four entries");
  return {extnat_of(n[0], src), extnat_of(n[1], src), extnat_of(n[2], src), extnat_of(n[3], src)};
}

inline FamilyGenerator generator_of(const YAML::Node& n, const std::string& src) {
  if (!n.IsMap()) throw FamilyError(src, line_of(n), "generator entry must be a map");
  static const std::set<std::string> known = {"id", "kind", "spectrum", "defect", "index", "matrix", "truncation"};
  for (const auto& kv : n)
    if (!known.count(kv.first.Scalar()))
      throw FamilyError(src, line_of(kv.first), "unknown generator key '" + kv.first.Scalar() + "'");
  if (!n["id"]) throw FamilyError(src, line_of(n), "generator needs an id");
  if (!n["kind"]) throw FamilyError(src, line_of(n), "generator needs a kind");
  FamilyGenerator g;
  g.line = line_of(n);
  const std::string id = scalar_as<std::string>(n["id"], "id", src);
  if (id.empty() || id.find_first_of("*^ \t") != std::string::npos)
    throw FamilyError(src, line_of(n["id"]), "generator id '" + id + "' must be nonempty without '*', '^' or spaces");
  g.declared_kind = scalar_as<std::string>(n["kind"], "kind", src);
  const std::string spectrum = n["spectrum"] ? scalar_as<std::string>(n["spectrum"], "spectrum", src) : "";
  std::optional<StarIndex> index;
  if (n["index"]) index = index_of(n["index"], src);

  try {
    if (g.declared_kind == "unitary") {
      g.spec = GeneratorSpec::unitary(id, spectrum);
    } else if (g.declared_kind == "infinite_shift") {
      g.spec = GeneratorSpec::infinite_shift(id);
    } else if (g.declared_kind == "finite_shift") {
      if (!n["defect"]) throw FamilyError(src, g.line, "finite_shift '" + id + "' needs a defect");
      const auto k = scalar_as<long long>(n["defect"], "defect", src);
      if (k <= 0) throw FamilyError(src, line_of(n["defect"]), "defect must be positive");
      g.spec = GeneratorSpec::finite_shift(id, static_cast<std::uint64_t>(k));
    } else if (g.declared_kind == "partial_isometry") {
      if (!index) throw FamilyError(src, g.line, "partial_isometry '" + id + "' needs an index");
      // Stands for its Wold parts: id_u (unitary part) and id_s (shift part).
      g.spec = GeneratorSpec::unitary(id, spectrum);
      g.spec.declared_index = index;
      if (!index->eps0.is_zero()) {
        auto u = GeneratorSpec::unitary(id + "_u", g.spec.spectrum);
        u.declared_index = StarIndex{index->eps0, 0, 0, 0};
        g.parts.push_back(u);
      }
      if (index->eps_minus.is_inf())
        g.parts.push_back(GeneratorSpec::infinite_shift(id + "_s"));
      else if (!index->eps_minus.is_zero())
        g.parts.push_back(GeneratorSpec::finite_shift(id + "_s", index->eps_minus.value()));
      if (g.parts.empty()) throw FamilyError(src, g.line, "partial_isometry '" + id + "' has neither part");
    } else {
      throw FamilyError(src, line_of(n["kind"]), "unknown kind '" + g.declared_kind + "'");
    }
    if (g.declared_kind != "partial_isometry") {
      g.spec.declared_index = index;
      g.spec.validate();
      g.parts.push_back(g.spec);
    }
  } catch (const std::invalid_argument& e) {
    throw FamilyError(src, g.line, e.what());
  }
  if (n["matrix"]) g.matrix = matrix_of(n["matrix"], src);
  if (n["truncation"]) g.truncation = truncation_of(n["truncation"], src);
  return g;
}

}  // namespace detail

// Runs all FamilyFile invariants: unique ids, known pi generators, pi_validate,
// square matrices of one shared dimension.
inline void validate_family(const FamilyFile& f) {
  std::map<std::string, int> seen;
  for (const auto& g : f.generators) {
    std::vector<std::string> ids = {g.spec.id};
    for (const auto& p : g.parts)
      if (p.id != g.spec.id) ids.push_back(p.id);
    for (const auto& id : ids)
      if (auto [it, fresh] = seen.try_emplace(id, g.line); !fresh)
        throw FamilyError(f.source, g.line, "duplicate generator id '" + id + "' (first at line " +
                                                std::to_string(it->second) + ")");
  }
  const auto violations = pi_validate(f.symbolic_family(), f.pi);
  if (!violations.empty()) {
    std::vector<std::string> details;
    int first_line = 0;
    for (const auto& v : violations) {
      auto it = f.pi_lines.find({v.a, v.b});
      const int line = it == f.pi_lines.end() ? 0 : it->second;
      if (!first_line) first_line = line;
      details.push_back((line ? "line " + std::to_string(line) + ": " : std::string()) + v.message);
    }
    throw FamilyError(f.source, first_line, "invalid pi table: " + details.front(), details);
  }
  std::optional<Eigen::Index> dim;
  for (const auto& g : f.generators) {
    if (!g.matrix) continue;
    if (g.matrix->rows() != g.matrix->cols())
      throw FamilyError(f.source, g.line, "matrix of '" + g.spec.id + "' is not square");
    if (dim && *dim != g.matrix->rows())
      throw FamilyError(f.source, g.line, "matrix of '" + g.spec.id + "' has dimension " +
                                              std::to_string(g.matrix->rows()) + ", expected " + std::to_string(*dim));
    dim = g.matrix->rows();
  }
}

inline FamilyFile parse_family(const std::string& text, const std::string& source = "<input>") {
  FamilyFile f;
  f.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw FamilyError(source, e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) throw FamilyError(source, detail::line_of(root), "family file must be a map");
  static const std::set<std::string> known = {"depth", "max_len", "tol", "generators", "pi"};
  for (const auto& kv : root)
    if (!known.count(kv.first.Scalar()))
      throw FamilyError(source, detail::line_of(kv.first), "unknown top-level key '" + kv.first.Scalar() + "'");

  if (root["depth"]) {
    const auto d = detail::scalar_as<long long>(root["depth"], "depth", source);
    if (d < 1 || d > 64) throw FamilyError(source, detail::line_of(root["depth"]), "depth must lie in [1, 64]");
    f.depth = static_cast<unsigned>(d);
  }
  if (root["max_len"]) {
    const auto m = detail::scalar_as<long long>(root["max_len"], "max_len", source);
    if (m < 1 || m > 64) throw FamilyError(source, detail::line_of(root["max_len"]), "max_len must lie in [1, 64]");
    f.max_len = static_cast<std::size_t>(m);
  }
  if (root["tol"]) {
    f.tol = detail::scalar_as<double>(root["tol"], "tol", source);
    if (!(f.tol > 0.0)) throw FamilyError(source, detail::line_of(root["tol"]), "tol must be positive");
  }

  const YAML::Node gens = root["generators"];
  if (!gens || !gens.IsSequence()) throw FamilyError(source, detail::line_of(root), "missing 'generators' list");
  for (const auto& g : gens) f.generators.push_back(detail::generator_of(g, source));

  if (const YAML::Node pi = root["pi"]) {
    if (!pi.IsSequence()) throw FamilyError(source, detail::line_of(pi), "'pi' must be a list of [a, b] entries");
    for (const auto& entry : pi) {
      const int line = detail::line_of(entry);
      if (!entry.IsSequence() || entry.size() < 2 || entry.size() > 3)
        throw FamilyError(source, line, "pi entry must read [a, b] or [a, b, false]");
      SignedPower a, b;
      try {
        a = SignedPower::parse(detail::scalar_as<std::string>(entry[0], "pi operand", source));
        b = SignedPower::parse(detail::scalar_as<std::string>(entry[1], "pi operand", source));
      } catch (const std::invalid_argument& e) {
        throw FamilyError(source, line, e.what());
      }
      const bool value = entry.size() == 3 ? detail::scalar_as<bool>(entry[2], "pi value", source) : true;
      f.pi.set(a, b, value);
      f.pi_lines[{a, b}] = line;
    }
  }
  validate_family(f);
  return f;
}

inline FamilyFile load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FamilyError(path, 0, "cannot open family file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family(ss.str(), path);
}

}  // namespace wold
