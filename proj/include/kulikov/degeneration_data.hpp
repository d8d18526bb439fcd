#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kulikov/error.hpp"
#include "kulikov/lattice_core.hpp"
#include "kulikov/matrix.hpp"
#include "kulikov/numeric.hpp"

namespace kulikov {

/// Split degeneration data (X, Y, phi, a, b) of toric rank t <= 2, with X and Y
/// identified with Z^t through fixed bases.
///
/// phi is the matrix of phi: Y -> X in column convention, phi(e_j) = sum_k phi(k, j) e_k.
/// b(i, j) = b(e_i^Y, e_j^X). The quadratic function a is stored through its
/// values on the basis of Y; the identity a(y + y') - a(y) - a(y') = b(y, phi(y'))
/// determines it everywhere.
struct DegenerationData {
  std::size_t rank = 0;
  IntMatrix phi;
  IntMatrix b;
  std::vector<Rational> a_basis;

  /// M(i, j) = b(e_i, phi(e_j)).
  IntMatrix pairing() const { return b * phi; }

  friend bool operator==(const DegenerationData&, const DegenerationData&) = default;
};

inline void check_shapes(const DegenerationData& d) {
  if (d.rank > 2) throw Error(ErrorCode::UnsupportedRank, "toric rank must be 0, 1 or 2");
  if (d.phi.rows() != d.rank || d.phi.cols() != d.rank || d.b.rows() != d.rank || d.b.cols() != d.rank ||
      d.a_basis.size() != d.rank)
    throw Error(ErrorCode::DimensionMismatch, "phi, b and a_basis must all match the rank");
}

/// Data with a_basis[i] = M_ii / 2, the H-invariant choice.
inline DegenerationData make_degeneration_data(std::size_t rank, IntMatrix phi, IntMatrix b) {
  DegenerationData d{rank, std::move(phi), std::move(b), {}};
  if (d.phi.rows() != rank || d.b.rows() != rank)
    throw Error(ErrorCode::DimensionMismatch, "phi and b must match the rank");
  const IntMatrix m = d.pairing();
  for (std::size_t i = 0; i < rank; ++i) d.a_basis.emplace_back(Rational(m(i, i)) / 2);
  check_shapes(d);
  return d;
}

inline DegenerationData make_degeneration_data(std::size_t rank, IntMatrix phi, IntMatrix b, std::vector<Integer> a) {
  DegenerationData d{rank, std::move(phi), std::move(b), {}};
  for (const auto& x : a) d.a_basis.emplace_back(x);
  check_shapes(d);
  return d;
}

/// Rank t with phi = Id.
inline DegenerationData make_degeneration_data(const IntMatrix& b) {
  return make_degeneration_data(b.rows(), IntMatrix::identity(b.rows()), b);
}

struct AxiomCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool h_invariant = false;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Leading principal minors of a symmetric integer matrix, all > 0.
inline bool is_positive_definite(const IntMatrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

/// a(-y) = a(y) for all y, i.e. a_basis[i] = M_ii / 2.
inline bool h_invariance_check(const DegenerationData& d) {
  const IntMatrix m = d.pairing();
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.a_basis[i] != Rational(m(i, i)) / 2) return false;
  return true;
}

inline ValidationReport validate(const DegenerationData& d) {
  check_shapes(d);
  ValidationReport report;
  const IntMatrix m = d.pairing();

  const Integer det_phi = determinant(d.phi);
  report.checks.push_back({"phi_injective", d.rank == 0 || det_phi != 0, "det(phi) = " + to_string(det_phi)});

  const bool symmetric = m.is_symmetric();
  report.checks.push_back({"pairing_symmetric", symmetric, symmetric ? "" : "b(y, phi(y')) is not symmetric"});

  const bool definite = symmetric && is_positive_definite(m);
  report.checks.push_back(
      {"pairing_positive_definite", definite, definite ? "" : "a leading principal minor is not positive"});

  bool integral = true;
  std::string bad;
  for (std::size_t i = 0; i < d.rank; ++i)
    if (!is_integral(d.a_basis[i])) {
      integral = false;
      bad += (bad.empty() ? "" : ", ") + ("a(e_" + std::to_string(i + 1) + ") = " + to_string(d.a_basis[i]));
    }
  report.checks.push_back({"a_integral", integral, bad});

  report.h_invariant = symmetric && h_invariance_check(d);
  return report;
}

/// a(y) = sum_i a_i y_i + sum_{i<j} M_ij y_i y_j + sum_i M_ii y_i (y_i - 1) / 2.
inline Integer a_value(const DegenerationData& d, const IntVector& y) {
  check_shapes(d);
  if (y.size() != d.rank) throw Error(ErrorCode::DimensionMismatch, "vector length must equal the rank");
  const IntMatrix m = d.pairing();
  Rational value = 0;
  for (std::size_t i = 0; i < d.rank; ++i) {
    value += d.a_basis[i] * y[i];
    value += Rational(m(i, i) * y[i] * (y[i] - 1)) / 2;
    for (std::size_t j = i + 1; j < d.rank; ++j) value += Rational(m(i, j) * y[i] * y[j]);
  }
  if (!is_integral(value)) throw Error(ErrorCode::InvalidInput, "a is not integral on this data");
  return numerator_of(value);
}

/// An element (y, h) of Y x| H, h = +1 for Id and -1 for [-1].
struct GammaElement {
  IntVector y;
  int h = 1;

  friend bool operator==(const GammaElement&, const GammaElement&) = default;
};

/// (y1, h1) * (y2, h2) = (y1 + h1 y2, h1 h2).
inline GammaElement compose(const GammaElement& g1, const GammaElement& g2) {
  if (g1.y.size() != g2.y.size()) throw Error(ErrorCode::DimensionMismatch, "Gamma elements of different rank");
  GammaElement g{g1.y, g1.h * g2.h};
  for (std::size_t i = 0; i < g.y.size(); ++i) g.y[i] += g1.h * g2.y[i];
  return g;
}

/// (l, s) in X^dual + Z, s >= 0.
struct ConePoint {
  IntVector l;
  Integer s = 0;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// b(y, -) as a row vector of X^dual.
inline IntVector pairing_row(const DegenerationData& d, const IntVector& y) { return row_times(y, d.b); }

/// S_{(y,h)}(l, s) = (h l + s b(y, -), s).
inline ConePoint gamma_act(const DegenerationData& d, const GammaElement& g, const ConePoint& p) {
  if (g.y.size() != d.rank || p.l.size() != d.rank)
    throw Error(ErrorCode::DimensionMismatch, "Gamma element and point must match the rank");
  if (g.h != 1 && g.h != -1) throw Error(ErrorCode::InvalidInput, "h must be +1 or -1");
  const IntVector shift = pairing_row(d, g.y);
  ConePoint out{p.l, p.s};
  for (std::size_t i = 0; i < d.rank; ++i) out.l[i] = g.h * p.l[i] + p.s * shift[i];
  return out;
}

inline bool is_even(const DegenerationData& d) {
  for (const auto& x : d.b.data())
    if (x % 2 != 0) return false;
  return true;
}

/// (X, Y, phi, nu a, nu b).
inline DegenerationData base_change(const DegenerationData& d, const Integer& nu) {
  if (nu <= 0) throw Error(ErrorCode::InvalidScale, "scale factor must be positive");
  DegenerationData out = d;
  out.b = nu * d.b;
  for (auto& a : out.a_basis) a *= Rational(nu);
  return out;
}

inline std::size_t toric_rank(const DegenerationData& d) { return d.rank; }

}  // namespace kulikov
