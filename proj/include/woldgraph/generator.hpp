#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "index.hpp"

namespace wold {

enum class GeneratorKind { Unitary, InfiniteShift, FiniteShift };

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Unitary: return "unitary";
    case GeneratorKind::InfiniteShift: return "infinite_shift";
    case GeneratorKind::FiniteShift: return "finite_shift";
  }
  return {};
}

// Symbolic description of one Wold-family member. The declared index, when
// present, overrides the default index of the kind but must agree with it.
struct GeneratorSpec {
  std::string id;
  GeneratorKind kind = GeneratorKind::Unitary;
  SpectrumTag spectrum;
  std::uint64_t defect = 0;
  std::optional<StarIndex> declared_index;

  static GeneratorSpec unitary(std::string id, SpectrumTag spectrum = {}) {
    GeneratorSpec g{std::move(id), GeneratorKind::Unitary, std::move(spectrum), 0, std::nullopt};
    if (g.spectrum.empty()) g.spectrum = "spec(" + g.id + ")";
    return g;
  }
  static GeneratorSpec infinite_shift(std::string id) {
    return {std::move(id), GeneratorKind::InfiniteShift, {}, 0, std::nullopt};
  }
  static GeneratorSpec finite_shift(std::string id, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("finite shift '" + id + "': defect must be positive");
    return {std::move(id), GeneratorKind::FiniteShift, {}, k, std::nullopt};
  }

  StarIndex index() const {
    if (declared_index) return *declared_index;
    switch (kind) {
      case GeneratorKind::Unitary: return {INF, 0, 0, 0};
      case GeneratorKind::InfiniteShift: return {0, 0, INF, 0};
      case GeneratorKind::FiniteShift: return {0, 0, defect, 0};
    }
    return {};
  }

  // Throws when the declared index contradicts the kind.
  void validate() const {
    const StarIndex i = index();
    switch (kind) {
      case GeneratorKind::Unitary:
        if (!i.eps_minus.is_zero() || i.eps0.is_zero())
          throw std::invalid_argument("unitary '" + id + "' needs eps0 > 0 and eps_minus = 0, got " + i.str());
        break;
      case GeneratorKind::InfiniteShift:
        if (!i.eps_minus.is_inf())
          throw std::invalid_argument("infinite shift '" + id + "' needs eps_minus = INF, got " + i.str());
        break;
      case GeneratorKind::FiniteShift:
        if (defect == 0) throw std::invalid_argument("finite shift '" + id + "': defect must be positive");
        if (!(i.eps_minus == ExtNat(defect)))
          throw std::invalid_argument("finite shift '" + id + "' needs eps_minus = " + std::to_string(defect) +
                                      ", got " + i.str());
        break;
    }
  }
};

// x, x*, x^n, (x^n)*. Powers above 1 are meaningful for finite shifts only.
struct SignedPower {
  std::string gen;
  unsigned power = 1;
  bool adjoint = false;

  auto operator<=>(const SignedPower&) const = default;

  SignedPower star() const { return {gen, power, !adjoint}; }

  std::string str() const {
    std::string s = gen;
    if (power != 1) s += "^" + std::to_string(power);
    if (adjoint) s += "*";
    return s;
  }

  // "x", "x*", "x^3", "x^3*".
  static SignedPower parse(std::string text) {
    SignedPower p;
    if (!text.empty() && text.back() == '*') {
      p.adjoint = true;
      text.pop_back();
    }
    if (auto caret = text.find('^'); caret != std::string::npos) {
      const std::string exp = text.substr(caret + 1);
      if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos || exp.size() > 9)
        throw std::invalid_argument("bad power in signed generator '" + text + "'");
      p.power = static_cast<unsigned>(std::stoul(exp));
      if (p.power == 0) throw std::invalid_argument("power must be positive in '" + text + "'");
      text.resize(caret);
    }
    if (text.empty()) throw std::invalid_argument("empty generator name");
    p.gen = text;
    return p;
  }
};

// Formal projection naming a corresponding-graph vertex: x*x (Source) or
// x^n x^n* (Range, power n).
struct ProjectionToken {
  enum class Role { Source, Range };
  std::string gen;
  Role role = Role::Source;
  unsigned power = 1;

  auto operator<=>(const ProjectionToken&) const = default;

  static ProjectionToken source(std::string g) { return {std::move(g), Role::Source, 1}; }
  static ProjectionToken range(std::string g, unsigned n = 1) { return {std::move(g), Role::Range, n}; }

  std::string str() const {
    if (role == Role::Source) return gen + "*" + gen;
    if (power == 1) return gen + gen + "*";
    const std::string p = gen + "^" + std::to_string(power);
    return p + p + "*";
  }
};

// a*a as a vertex token.
inline ProjectionToken initial_token(const SignedPower& a) {
  return a.adjoint ? ProjectionToken::range(a.gen, a.power) : ProjectionToken::source(a.gen);
}

// b b* as a vertex token.
inline ProjectionToken final_token(const SignedPower& b) {
  return b.adjoint ? ProjectionToken::source(b.gen) : ProjectionToken::range(b.gen, b.power);
}

// pi(a, b) != 0 table. Unspecified pairs read as false, except the self rows
// pi(x^n, (x^n)*) and pi((x^n)*, x^n), which are nonzero for any nonzero x.
class AdmissibilityTable {
 public:
  using Key = std::pair<SignedPower, SignedPower>;

  void set(const SignedPower& a, const SignedPower& b, bool nonzero = true) { declared_[{a, b}] = nonzero; }

  // Sets pi(a, b) and its adjoint partner pi(b*, a*).
  void set_symmetric(const SignedPower& a, const SignedPower& b, bool nonzero = true) {
    set(a, b, nonzero);
    set(b.star(), a.star(), nonzero);
  }

  std::optional<bool> declared(const SignedPower& a, const SignedPower& b) const {
    auto it = declared_.find({a, b});
    if (it == declared_.end()) return std::nullopt;
    return it->second;
  }

  static bool is_self_row(const SignedPower& a, const SignedPower& b) {
    return a.gen == b.gen && a.power == b.power && a.adjoint != b.adjoint;
  }

  bool operator()(const SignedPower& a, const SignedPower& b) const {
    if (auto d = declared(a, b)) return *d;
    return is_self_row(a, b);
  }

  const std::map<Key, bool>& entries() const noexcept { return declared_; }

  // Some declared nonzero entry couples the two distinct generators.
  bool connected(const std::string& x, const std::string& y) const {
    for (const auto& [k, v] : declared_) {
      if (!v) continue;
      if ((k.first.gen == x && k.second.gen == y) || (k.first.gen == y && k.second.gen == x)) return true;
    }
    return false;
  }

  // The vertices p and q are identified by some nonzero entry pi(a, b), i.e.
  // {a*a, bb*} = {p, q}.
  bool tokens_admissible(const ProjectionToken& p, const ProjectionToken& q) const {
    for (const auto& [k, v] : declared_) {
      if (!v) continue;
      const ProjectionToken s = initial_token(k.first), r = final_token(k.second);
      if ((s == p && r == q) || (s == q && r == p)) return true;
    }
    return false;
  }

  bool vertices_admissible(const std::vector<ProjectionToken>& p, const std::vector<ProjectionToken>& q) const {
    for (const auto& a : p)
      for (const auto& b : q)
        if (tokens_admissible(a, b)) return true;
    return false;
  }

 private:
  std::map<Key, bool> declared_;
};

struct PiViolation {
  SignedPower a;
  SignedPower b;
  std::string message;
};

inline std::vector<PiViolation> pi_validate(const std::vector<GeneratorSpec>& family, const AdmissibilityTable& pi) {
  std::map<std::string, const GeneratorSpec*> by_id;
  for (const auto& g : family) by_id[g.id] = &g;

  std::vector<PiViolation> out;
  auto check_gen = [&](const SignedPower& s, const SignedPower& a, const SignedPower& b) {
    auto it = by_id.find(s.gen);
    if (it == by_id.end()) {
      out.push_back({a, b, "unknown generator '" + s.gen + "' in pi(" + a.str() + ", " + b.str() + ")"});
      return false;
    }
    if (s.power != 1 && it->second->kind != GeneratorKind::FiniteShift) {
      out.push_back({a, b, "power " + s.str() + " is only meaningful for finite shifts"});
      return false;
    }
    return true;
  };

  for (const auto& [key, v] : pi.entries()) {
    const auto& [a, b] = key;
    if (!check_gen(a, a, b) || !check_gen(b, a, b)) continue;
    if (!v && AdmissibilityTable::is_self_row(a, b))
      out.push_back({a, b, "self row pi(" + a.str() + ", " + b.str() + ") declared zero"});
    if (v && !pi(b.star(), a.star()))
      out.push_back({a, b,
                     "asymmetric pair: pi(" + a.str() + ", " + b.str() + ") != 0 but pi(" + b.star().str() + ", " +
                         a.star().str() + ") = 0"});
  }

  // x*x >= xx* >= x^2x^2* >= ...: a nonzero entry at x^m propagates to deeper
  // powers, so an explicit zero further down the chain contradicts it.
  for (const auto& [key, v] : pi.entries()) {
    if (!v) continue;
    const auto& [a, b] = key;
    for (const auto& [key2, v2] : pi.entries()) {
      if (v2) continue;
      const auto& [c, d] = key2;
      const bool left = !a.adjoint && !c.adjoint && a.gen == c.gen && b == d && c.power > a.power;
      const bool right = b.adjoint && d.adjoint && b.gen == d.gen && a == c && d.power > b.power;
      if (left || right)
        out.push_back({c, d,
                       "chain monotonicity: pi(" + a.str() + ", " + b.str() + ") != 0 but pi(" + c.str() + ", " +
                           d.str() + ") declared zero"});
    }
  }
  return out;
}

}  // namespace wold
