#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace wold {

using SpectrumTag = std::string;

// Symbolic C*-algebra expression. Space tags are annotations: they are kept for
// reports but do not take part in equality or the canonical key.
class AlgebraExpr {
 public:
  enum class Kind { ScalarUnit, ContinuousFunctions, MatrixAlg, Toeplitz, Tensor, DirectSum, FreeProduct };
  enum class Closure { Algebraic, Closed };

  static AlgebraExpr scalar_unit(std::string space = "H") {
    AlgebraExpr e(Kind::ScalarUnit);
    e.tag_ = std::move(space);
    return e;
  }
  static AlgebraExpr continuous_functions(SpectrumTag spectrum) {
    AlgebraExpr e(Kind::ContinuousFunctions);
    e.tag_ = std::move(spectrum);
    return e;
  }
  static AlgebraExpr matrix_alg(unsigned n) {
    if (n == 0) throw std::invalid_argument("MatrixAlg: size must be positive");
    AlgebraExpr e(Kind::MatrixAlg);
    e.size_ = n;
    return e;
  }
  static AlgebraExpr toeplitz(std::string space = "H") {
    AlgebraExpr e(Kind::Toeplitz);
    e.tag_ = std::move(space);
    return e;
  }
  static AlgebraExpr tensor(AlgebraExpr left, AlgebraExpr right) {
    AlgebraExpr e(Kind::Tensor);
    e.children_.push_back(std::move(left));
    e.children_.push_back(std::move(right));
    return e;
  }
  static AlgebraExpr direct_sum(std::vector<AlgebraExpr> terms) {
    if (terms.empty()) throw std::invalid_argument("DirectSum: operand list must be nonempty");
    AlgebraExpr e(Kind::DirectSum);
    e.children_ = std::move(terms);
    return e;
  }
  static AlgebraExpr free_product(std::vector<AlgebraExpr> factors, Closure closure = Closure::Closed) {
    if (factors.empty()) throw std::invalid_argument("FreeProduct: operand list must be nonempty");
    AlgebraExpr e(Kind::FreeProduct);
    e.children_ = std::move(factors);
    e.closure_ = closure;
    return e;
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& tag() const noexcept { return tag_; }
  unsigned size() const noexcept { return size_; }
  Closure closure() const noexcept { return closure_; }
  const std::vector<AlgebraExpr>& children() const noexcept { return children_; }

  // Atoms keep an explicit scalar-unit tensor factor; anything else absorbs it.
  bool is_atomic() const noexcept {
    return kind_ == Kind::ScalarUnit || kind_ == Kind::ContinuousFunctions || kind_ == Kind::MatrixAlg;
  }

  std::string canonical() const {
    switch (kind_) {
      case Kind::ScalarUnit: return "(unit)";
      case Kind::ContinuousFunctions: return "(C " + tag_ + ")";
      case Kind::MatrixAlg: return "(M " + std::to_string(size_) + ")";
      case Kind::Toeplitz: return "(toeplitz)";
      case Kind::Tensor: return "(tensor " + children_[0].canonical() + " " + children_[1].canonical() + ")";
      case Kind::DirectSum: return "(sum" + joined_canonical() + ")";
      case Kind::FreeProduct:
        return std::string(closure_ == Closure::Closed ? "(free-closed" : "(free-alg") + joined_canonical() + ")";
    }
    return {};
  }

  std::string pretty() const { return pretty_impl(true); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    switch (kind_) {
      case Kind::ScalarUnit: j = {{"kind", "ScalarUnit"}, {"space", tag_}}; break;
      case Kind::ContinuousFunctions: j = {{"kind", "ContinuousFunctions"}, {"spectrum", tag_}}; break;
      case Kind::MatrixAlg: j = {{"kind", "MatrixAlg"}, {"n", size_}}; break;
      case Kind::Toeplitz: j = {{"kind", "Toeplitz"}, {"space", tag_}}; break;
      case Kind::Tensor: j = {{"kind", "Tensor"}}; break;
      case Kind::DirectSum: j = {{"kind", "DirectSum"}}; break;
      case Kind::FreeProduct:
        j = {{"kind", "FreeProduct"}, {"closure", closure_ == Closure::Closed ? "closed" : "algebraic"}};
        break;
    }
    if (!children_.empty()) {
      j["operands"] = nlohmann::json::array();
      for (const auto& c : children_) j["operands"].push_back(c.to_json());
    }
    return j;
  }

  friend bool operator==(const AlgebraExpr& a, const AlgebraExpr& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::ContinuousFunctions:
        if (a.tag_ != b.tag_) return false;
        break;
      case Kind::MatrixAlg:
        if (a.size_ != b.size_) return false;
        break;
      case Kind::FreeProduct:
        if (a.closure_ != b.closure_) return false;
        break;
      default: break;
    }
    return a.children_ == b.children_;
  }

 private:
  explicit AlgebraExpr(Kind k) : kind_(k) {}

  std::string joined_canonical() const {
    std::string s;
    for (const auto& c : children_) s += " " + c.canonical();
    return s;
  }

  std::string pretty_impl(bool top) const {
    auto join = [&](const char* sep) {
      std::string s;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += sep;
        s += children_[i].pretty_impl(false);
      }
      return s;
    };
    std::string s;
    switch (kind_) {
      case Kind::ScalarUnit: return "ScalarUnit";
      case Kind::ContinuousFunctions: return "C(" + tag_ + ")";
      case Kind::MatrixAlg: return "M" + std::to_string(size_);
      case Kind::Toeplitz: return "Toeplitz";
      case Kind::Tensor: s = join(" ⊗ "); break;
      case Kind::DirectSum: s = join(" ⊕ "); break;
      case Kind::FreeProduct:
        s = join(" *_alg ");
        return closure_ == Closure::Closed ? "closure(" + s + ")" : (top ? s : "(" + s + ")");
    }
    return top ? s : "(" + s + ")";
  }

  Kind kind_;
  std::string tag_;
  unsigned size_ = 0;
  Closure closure_ = Closure::Closed;
  std::vector<AlgebraExpr> children_;
};

// Flattens nested sums and same-closure free products, sorts their operands by
// canonical key, collapses singletons, and absorbs a scalar unit tensored onto a
// non-atomic algebra. Idempotent.
inline AlgebraExpr normalize(const AlgebraExpr& e) {
  using K = AlgebraExpr::Kind;
  std::vector<AlgebraExpr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(normalize(c));

  auto sorted = [](std::vector<AlgebraExpr> v) {
    std::stable_sort(v.begin(), v.end(),
                     [](const AlgebraExpr& a, const AlgebraExpr& b) { return a.canonical() < b.canonical(); });
    return v;
  };

  switch (e.kind()) {
    case K::Tensor: {
      AlgebraExpr l = kids[0], r = kids[1];
      if (r.kind() == K::ScalarUnit && l.kind() != K::ScalarUnit) std::swap(l, r);
      if (l.kind() == K::ScalarUnit && r.kind() == K::ScalarUnit) return l;
      if (l.kind() == K::ScalarUnit && !r.is_atomic()) return r;
      return AlgebraExpr::tensor(std::move(l), std::move(r));
    }
    case K::DirectSum: {
      std::vector<AlgebraExpr> flat;
      for (auto& k : kids) {
        if (k.kind() == K::DirectSum)
          flat.insert(flat.end(), k.children().begin(), k.children().end());
        else
          flat.push_back(std::move(k));
      }
      if (flat.size() == 1) return flat.front();
      return AlgebraExpr::direct_sum(sorted(std::move(flat)));
    }
    case K::FreeProduct: {
      std::vector<AlgebraExpr> flat;
      for (auto& k : kids) {
        if (k.kind() == K::FreeProduct && k.closure() == e.closure())
          flat.insert(flat.end(), k.children().begin(), k.children().end());
        else
          flat.push_back(std::move(k));
      }
      if (flat.size() == 1) return flat.front();
      return AlgebraExpr::free_product(sorted(std::move(flat)), e.closure());
    }
    default: return e;
  }
}

}  // namespace wold
