#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "numeric.hpp"

namespace wold {

inline double hermitian_residual(const ComplexMatrix& t) { return op_norm(t - t.adjoint()); }

inline double unitarity_residual(const ComplexMatrix& u) {
  const auto n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return std::max(op_norm(u.adjoint() * u - id), op_norm(u * u.adjoint() - id));
}

// U = (T + i)(T - i)^{-1}. T - i is invertible for Hermitian T.
inline ComplexMatrix cayley_of_selfadjoint(const ComplexMatrix& t, double tol = kIdentityTol) {
  require_square(t, "cayley_of_selfadjoint");
  if (hermitian_residual(t) > tol * std::max(1.0, op_norm(t)))
    throw std::invalid_argument("cayley_of_selfadjoint: matrix is not Hermitian");
  const auto n = t.rows();
  const ComplexMatrix shift = Complex(0.0, 1.0) * ComplexMatrix::Identity(n, n);
  // (T + i) and (T - i)^{-1} commute, so a left solve gives the same product.
  return (t - shift).partialPivLu().solve(t + shift);
}

// T = i (U + 1)(U - 1)^{-1}. Requires 1 outside the spectrum of U.
inline ComplexMatrix inverse_cayley(const ComplexMatrix& u, double tol = kIdentityTol) {
  require_square(u, "inverse_cayley");
  if (unitarity_residual(u) > tol) throw std::invalid_argument("inverse_cayley: matrix is not unitary");
  const auto n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix d = u - id;
  if (n > 0) {
    Eigen::JacobiSVD<ComplexMatrix> svd(d);
    if (svd.singularValues()(n - 1) <= tol)
      throw std::domain_error("inverse_cayley: 1 lies in the spectrum of U");
  }
  return Complex(0.0, 1.0) * d.partialPivLu().solve(u + id);
}

struct DefectData {
  ComplexVector e_plus;
  ComplexVector e_minus;
  Complex alpha;  // <e+, e->
  ComplexMatrix w;  // |e-><e+|
  double identity_residual = 0.0;  // max_n ||W^{n+1} - alpha^n W||, n <= 20
};

inline constexpr int kDefectPowerBound = 20;

inline DefectData rank1_defect(const ComplexVector& e_plus, const ComplexVector& e_minus, double tol = kIdentityTol) {
  if (e_plus.size() != e_minus.size()) throw std::invalid_argument("rank1_defect: vectors differ in dimension");
  if (std::abs(e_plus.norm() - 1.0) > tol || std::abs(e_minus.norm() - 1.0) > tol)
    throw std::invalid_argument("rank1_defect: defect vectors must have unit norm");
  DefectData d;
  d.e_plus = e_plus;
  d.e_minus = e_minus;
  d.alpha = e_plus.dot(e_minus);
  d.w = e_minus * e_plus.adjoint();
  ComplexMatrix power = d.w;
  Complex alpha_n = 1.0;
  for (int n = 1; n <= kDefectPowerBound; ++n) {
    power = power * d.w;
    alpha_n *= d.alpha;
    d.identity_residual = std::max(d.identity_residual, op_norm(power - alpha_n * d.w));
  }
  return d;
}

// U = V + W. Without defect data V must already be unitary.
inline ComplexMatrix unitary_extension(const ComplexMatrix& v, const std::optional<DefectData>& defect,
                                       double tol = kIdentityTol) {
  require_square(v, "unitary_extension");
  if (!defect) {
    if (unitarity_residual(v) > tol) throw std::invalid_argument("unitary_extension: V has a defect but no W given");
    return v;
  }
  if (!is_partial_isometry(v, tol)) throw std::invalid_argument("unitary_extension: V is not a partial isometry");
  if (defect->e_plus.size() != v.rows()) throw std::invalid_argument("unitary_extension: dimension mismatch");
  const auto n = v.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (numeric_rank(id - v.adjoint() * v, tol, 1.0) != 1 || (v * defect->e_plus).norm() > tol)
    throw std::invalid_argument("unitary_extension: e+ does not span ker V");
  if (numeric_rank(id - v * v.adjoint(), tol, 1.0) != 1 || (v.adjoint() * defect->e_minus).norm() > tol)
    throw std::invalid_argument("unitary_extension: e- does not span ker V*");
  ComplexMatrix u = v + defect->w;
  if (unitarity_residual(u) > tol) throw std::runtime_error("unitary_extension: V + W is not unitary");
  return u;
}

}  // namespace wold
