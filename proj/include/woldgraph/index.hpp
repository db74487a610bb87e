#pragma once

#include <array>
#include <ostream>
#include <string>

#include "algebra.hpp"
#include "ext_nat.hpp"

namespace wold {

// (eps0, eps_plus, eps_minus, eps_minus_minus) =
// (dim H_u, dim ker a, dim ker s*, dim ker a* - dim ker s*).
struct StarIndex {
  ExtNat eps0;
  ExtNat eps_plus;
  ExtNat eps_minus;
  ExtNat eps_minus_minus;

  bool operator==(const StarIndex&) const = default;

  std::array<ExtNat, 4> entries() const { return {eps0, eps_plus, eps_minus, eps_minus_minus}; }

  std::string str() const {
    return "(" + eps0.str() + "," + eps_plus.str() + "," + eps_minus.str() + "," + eps_minus_minus.str() + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const StarIndex& i) { return os << i.str(); }

inline StarIndex index_subtract(const StarIndex& a, const StarIndex& b) {
  return {extnat_absdiff(a.eps0, b.eps0), extnat_absdiff(a.eps_plus, b.eps_plus),
          extnat_absdiff(a.eps_minus, b.eps_minus), extnat_absdiff(a.eps_minus_minus, b.eps_minus_minus)};
}

// Difference must be (0, k1, k2, 0) with k1, k2 finite. A shift part present on
// one side only is treated like a unitary part present on one side only: not
// equivalent.
inline bool star_equivalent(const StarIndex& a, const StarIndex& b, bool spectra_equal) {
  if (!spectra_equal) return false;
  const StarIndex d = index_subtract(a, b);
  if (!d.eps0.is_zero() || !d.eps_minus_minus.is_zero()) return false;
  if (d.eps_plus.is_inf() || d.eps_minus.is_inf()) return false;
  return a.eps_minus.is_zero() == b.eps_minus.is_zero();
}

inline AlgebraExpr unitary_block(const SpectrumTag& spectrum, const std::string& space = "H_u") {
  return AlgebraExpr::tensor(AlgebraExpr::scalar_unit(space), AlgebraExpr::continuous_functions(spectrum));
}

inline AlgebraExpr infinite_shift_block(const std::string& space = "H_s") {
  return AlgebraExpr::tensor(AlgebraExpr::scalar_unit(space), AlgebraExpr::matrix_alg(2));
}

inline AlgebraExpr classify_single(const StarIndex& i, const SpectrumTag& spectrum) {
  if (i.eps_minus.is_zero()) return unitary_block(spectrum);
  AlgebraExpr shift = i.eps_minus.is_inf() ? infinite_shift_block() : AlgebraExpr::toeplitz("H_s");
  if (i.eps0.is_zero()) return shift;
  return normalize(AlgebraExpr::direct_sum({unitary_block(spectrum), std::move(shift)}));
}

}  // namespace wold
