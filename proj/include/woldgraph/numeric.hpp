#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "generator.hpp"
#include "index.hpp"

namespace wold {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kRoundtripTol = 1e-8;

// Largest singular value.
inline double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

inline void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
}

// Singular values at or below tol * scale count as zero; scale defaults to
// sigma_max of a itself. Pass the scale of a parent operator when a may be pure
// rounding noise (e.g. a nilpotent power).
inline std::size_t numeric_rank(const ComplexMatrix& a, double tol = kIdentityTol, double scale = -1.0) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<std::size_t>((s.array() > tol * (scale < 0.0 ? s(0) : scale)).count());
}

// Orthonormal basis (columns) of range(a).
inline ComplexMatrix range_basis(const ComplexMatrix& a, double tol = kIdentityTol, double scale = -1.0) {
  if (a.size() == 0) return ComplexMatrix(a.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() && s(0) > 0.0) r = (s.array() > tol * (scale < 0.0 ? s(0) : scale)).count();
  return svd.matrixU().leftCols(r);
}

// Orthonormal basis (columns) of ker(a).
inline ComplexMatrix kernel_basis(const ComplexMatrix& a, double tol = kIdentityTol, double scale = -1.0) {
  if (a.rows() == 0) return ComplexMatrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() && s(0) > 0.0) r = (s.array() > tol * (scale < 0.0 ? s(0) : scale)).count();
  return svd.matrixV().rightCols(a.cols() - r);
}

inline ComplexMatrix projector(const ComplexMatrix& basis) { return basis * basis.adjoint(); }

// span(x) + span(y), orthonormalized.
inline ComplexMatrix subspace_join(const ComplexMatrix& x, const ComplexMatrix& y, double tol = kIdentityTol) {
  ComplexMatrix stacked(x.rows(), x.cols() + y.cols());
  stacked << x, y;
  return range_basis(stacked, tol);
}

// span(x) n span(y) as ker [I - Px; I - Py].
inline ComplexMatrix subspace_intersection(const ComplexMatrix& x, const ComplexMatrix& y, double tol = kIdentityTol) {
  const Eigen::Index n = x.rows();
  if (x.cols() == 0 || y.cols() == 0) return ComplexMatrix(n, 0);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix stacked(2 * n, n);
  stacked << id - projector(x), id - projector(y);
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index r = (s.array() > tol).count();
  return svd.matrixV().rightCols(n - r);
}

// Structured constructors -------------------------------------------------

// e_i -> e_{i+k} for i < n - k.
inline ComplexMatrix make_truncated_shift(std::size_t k, std::size_t n) {
  if (k == 0) throw std::invalid_argument("make_truncated_shift: k must be positive");
  if (k >= n) throw std::invalid_argument("make_truncated_shift: need k < n, got k=" + std::to_string(k) +
                                          " n=" + std::to_string(n));
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + k < n; ++i) a(static_cast<Eigen::Index>(i + k), static_cast<Eigen::Index>(i)) = 1.0;
  return a;
}

// diag(e^{i theta_j}).
inline ComplexMatrix make_diagonal_unitary(const std::vector<double>& thetas) {
  const auto n = static_cast<Eigen::Index>(thetas.size());
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a(j, j) = std::polar(1.0, thetas[static_cast<std::size_t>(j)]);
  return a;
}

inline ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) {
    require_square(b, "block_diagonal");
    n += b.rows();
  }
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    a.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return a;
}

// diag(e^{i theta}) on the first block, truncated shift by k on the second,
// zero on the last.
inline ComplexMatrix make_unitary_plus_shift(const std::vector<double>& thetas, std::size_t shift_dim, std::size_t k,
                                             std::size_t zero_dim) {
  std::vector<ComplexMatrix> blocks;
  if (!thetas.empty()) blocks.push_back(make_diagonal_unitary(thetas));
  if (shift_dim) blocks.push_back(make_truncated_shift(k, shift_dim));
  if (zero_dim) blocks.push_back(ComplexMatrix::Zero(static_cast<Eigen::Index>(zero_dim), static_cast<Eigen::Index>(zero_dim)));
  if (blocks.empty()) throw std::invalid_argument("make_unitary_plus_shift: all blocks empty");
  return block_diagonal(blocks);
}

// [[0, 0], [I, 0]] on C^m + C^m: the first summand onto the second.
inline ComplexMatrix make_block_transfer(std::size_t m) {
  if (m == 0) throw std::invalid_argument("make_block_transfer: block size must be positive");
  const auto h = static_cast<Eigen::Index>(m);
  ComplexMatrix a = ComplexMatrix::Zero(2 * h, 2 * h);
  a.block(h, 0, h, h) = ComplexMatrix::Identity(h, h);
  return a;
}

// Identity checks ----------------------------------------------------------

struct PartialIsometryCheck {
  bool ok = false;
  double identity_residual = 0.0;    // ||A A* A - A||
  double idempotent_residual = 0.0;  // ||(A*A)^2 - A*A||
  double selfadjoint_residual = 0.0;  // ||A*A - (A*A)*||
};

inline PartialIsometryCheck check_partial_isometry(const ComplexMatrix& a, double tol = kIdentityTol) {
  require_square(a, "is_partial_isometry");
  const ComplexMatrix p = a.adjoint() * a;
  PartialIsometryCheck c;
  c.identity_residual = op_norm(a * p - a);
  c.idempotent_residual = op_norm(p * p - p);
  c.selfadjoint_residual = op_norm(p - p.adjoint());
  c.ok = c.identity_residual <= tol && c.idempotent_residual <= tol && c.selfadjoint_residual <= tol;
  return c;
}

inline bool is_partial_isometry(const ComplexMatrix& a, double tol = kIdentityTol) {
  return check_partial_isometry(a, tol).ok;
}

inline void require_projection(const ComplexMatrix& p, double tol, const char* who) {
  require_square(p, who);
  if (op_norm(p * p - p) > tol || op_norm(p - p.adjoint()) > tol)
    throw std::invalid_argument(std::string(who) + ": input is not an orthogonal projection");
}

// p <= q iff pH is contained in qH.
inline bool projection_leq(const ComplexMatrix& p, const ComplexMatrix& q, double tol = kIdentityTol) {
  require_projection(p, tol, "projection_leq");
  require_projection(q, tol, "projection_leq");
  if (p.rows() != q.rows()) throw std::invalid_argument("projection_leq: dimension mismatch");
  return op_norm(q * p - p) <= tol;
}

// Which branch of the pi case table holds for (x*x)(yy*).
enum class PiCase { InitialBelow, FinalBelow, Product, Zero };

inline std::string to_string(PiCase c) {
  switch (c) {
    case PiCase::InitialBelow: return "x*x <= yy*";
    case PiCase::FinalBelow: return "yy* <= x*x";
    case PiCase::Product: return "product";
    case PiCase::Zero: return "zero";
  }
  return {};
}

struct PiNumeric {
  bool nonzero = false;
  ComplexMatrix product;
  PiCase which = PiCase::Zero;
};

inline PiNumeric pi_numeric(const ComplexMatrix& x, const ComplexMatrix& y, double tol = kIdentityTol) {
  require_square(x, "pi_numeric");
  require_square(y, "pi_numeric");
  if (x.rows() != y.rows()) throw std::invalid_argument("pi_numeric: dimension mismatch");
  const ComplexMatrix init = x.adjoint() * x, fin = y * y.adjoint();
  PiNumeric r;
  r.product = init * fin;
  r.nonzero = op_norm(r.product) > tol;
  if (!r.nonzero)
    r.which = PiCase::Zero;
  else if (op_norm(fin * init - init) <= tol)
    r.which = PiCase::InitialBelow;
  else if (op_norm(init * fin - fin) <= tol)
    r.which = PiCase::FinalBelow;
  else
    r.which = PiCase::Product;
  return r;
}

// Symbolic table read off concrete matrices, over all signed generator pairs.
inline AdmissibilityTable derive_pi_table(const std::vector<std::pair<std::string, ComplexMatrix>>& gens,
                                          double tol = kIdentityTol) {
  AdmissibilityTable t;
  for (const auto& [xi, x] : gens)
    for (const auto& [yi, y] : gens)
      for (bool xs : {false, true})
        for (bool ys : {false, true}) {
          const ComplexMatrix xm = xs ? ComplexMatrix(x.adjoint()) : x;
          const ComplexMatrix ym = ys ? ComplexMatrix(y.adjoint()) : y;
          t.set({xi, 1, xs}, {yi, 1, ys}, pi_numeric(xm, ym, tol).nonzero);
        }
  return t;
}

// Wold split ---------------------------------------------------------------

struct WoldSplit {
  ComplexMatrix unitary_part;
  ComplexMatrix shift_part;
  ComplexMatrix h_u;        // basis of H_u
  ComplexMatrix h_s;        // basis of H_s = initial space minus H_u
  ComplexMatrix ker_a;      // basis of ker a
  ComplexMatrix ker_a_adj;  // basis of ker a*
  ComplexMatrix ker_s_adj;  // basis of ker s* inside span(H_s u range s)
  double sum_residual = 0.0;          // ||a - (u + s)||
  double normality_residual = 0.0;    // ||u*u - uu*||
  double projection_residual = 0.0;   // ||u*u - P_{H_u}||
  double orthogonality_residual = 0.0;  // ||h_u* h_s||
};

namespace detail {

// Decreasing chain range(b) >= range(b^2) >= ... stops once the rank repeats.
// Ranks are measured against ||b|| = 1, so a power that is rounding noise
// counts as zero.
inline ComplexMatrix stable_range(const ComplexMatrix& b, double tol) {
  const Eigen::Index n = b.rows();
  ComplexMatrix power = b;
  std::size_t rank = numeric_rank(power, tol, 1.0);
  for (Eigen::Index m = 0; m <= n; ++m) {
    ComplexMatrix next = b * power;
    const std::size_t r = numeric_rank(next, tol, 1.0);
    if (r == rank) return range_basis(power, tol, 1.0);
    power = std::move(next);
    rank = r;
  }
  throw std::runtime_error("wold_split: range chain did not stabilize within the dimension");
}

}  // namespace detail

inline WoldSplit wold_split(const ComplexMatrix& a, double tol = kIdentityTol) {
  const auto pi_check = check_partial_isometry(a, tol);
  if (!pi_check.ok)
    throw std::invalid_argument("wold_split: not a partial isometry (||AA*A - A|| = " +
                                std::to_string(pi_check.identity_residual) + ")");
  const Eigen::Index n = a.rows();
  WoldSplit w;
  w.h_u = subspace_intersection(detail::stable_range(a, tol), detail::stable_range(a.adjoint(), tol), tol);
  const ComplexMatrix pu = projector(w.h_u);
  w.unitary_part = a * pu;
  w.shift_part = a - w.unitary_part;
  // Every operand below has norm 0 or 1; ranks are taken against 1.
  w.h_s = range_basis(a.adjoint() * a - pu, tol, 1.0);
  w.ker_a = kernel_basis(a, tol, 1.0);
  w.ker_a_adj = kernel_basis(a.adjoint(), tol, 1.0);
  const ComplexMatrix range_s = range_basis(w.shift_part, tol, 1.0);
  const ComplexMatrix span = subspace_join(w.h_s, range_s, tol);
  w.ker_s_adj = range_basis(projector(span) - projector(range_s), tol, 1.0);

  const ComplexMatrix& u = w.unitary_part;
  w.sum_residual = op_norm(a - (u + w.shift_part));
  w.normality_residual = op_norm(u.adjoint() * u - u * u.adjoint());
  w.projection_residual = n ? op_norm(u.adjoint() * u - pu) : 0.0;
  w.orthogonality_residual = (w.h_u.cols() && w.h_s.cols()) ? op_norm(w.h_u.adjoint() * w.h_s) : 0.0;
  const double bound = tol * std::max<double>(1.0, static_cast<double>(n));
  if (w.sum_residual > bound || w.normality_residual > bound || w.projection_residual > bound ||
      w.orthogonality_residual > bound)
    throw std::runtime_error("wold_split: split fails its invariants on this matrix");
  return w;
}

struct NumericIndex {
  StarIndex index;
  bool degenerate = false;  // a = 0: not a nonzero partial isometry
};

inline NumericIndex star_index_numeric(const ComplexMatrix& a, double tol = kIdentityTol) {
  const WoldSplit w = wold_split(a, tol);
  const auto dim = [](const ComplexMatrix& b) { return ExtNat(static_cast<std::uint64_t>(b.cols())); };
  NumericIndex r;
  const auto ker_adj = static_cast<std::uint64_t>(w.ker_a_adj.cols());
  const auto ker_s = static_cast<std::uint64_t>(w.ker_s_adj.cols());
  r.index = {dim(w.h_u), dim(w.ker_a), ExtNat(ker_s), ExtNat(ker_adj - std::min(ker_adj, ker_s))};
  r.degenerate = op_norm(a) <= tol;
  return r;
}

// Lattice operations of the subspace representation -------------------------

struct MeetJoin {
  ComplexMatrix meet;
  // Inside the ambient space when admissible; otherwise a basis of the external
  // direct sum, living in twice the ambient dimension.
  ComplexMatrix join;
};

inline MeetJoin subspace_meet_join(const ComplexMatrix& hx, const ComplexMatrix& hy, bool admissible,
                                   double tol = kIdentityTol) {
  if (hx.rows() != hy.rows()) throw std::invalid_argument("subspace_meet_join: ambient dimensions differ");
  const Eigen::Index n = hx.rows();
  MeetJoin r;
  if (admissible) {
    r.meet = subspace_intersection(hx, hy, tol);
    r.join = subspace_join(hx, hy, tol);
  } else {
    r.meet = ComplexMatrix(n, 0);
    r.join = ComplexMatrix::Zero(2 * n, hx.cols() + hy.cols());
    r.join.block(0, 0, n, hx.cols()) = hx;
    r.join.block(n, hx.cols(), n, hy.cols()) = hy;
  }
  return r;
}

}  // namespace wold
