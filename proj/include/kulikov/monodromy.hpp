#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kulikov/error.hpp"
#include "kulikov/matrix.hpp"
#include "kulikov/numeric.hpp"
#include "kulikov/strata_complex.hpp"

namespace kulikov {

using RationalOperator = RationalMatrix;

/// Coefficients c_0..c_n of det(x Id - M), by Faddeev-LeVerrier.
inline std::vector<Rational> characteristic_polynomial(const RationalOperator& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RationalOperator mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    const RationalOperator amk = m * mk;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    c[n - k] = -trace / static_cast<long long>(k);
  }
  return c;
}

/// Characteristic polynomial equal to (x - 1)^n.
inline bool is_unipotent(const RationalOperator& m) {
  const auto c = characteristic_polynomial(m);
  const std::size_t n = m.rows();
  Integer binom = 1;  // C(n, i)
  for (std::size_t i = 0; i <= n; ++i) {
    const Integer expected = ((n - i) % 2 == 0) ? binom : Integer(-binom);
    if (c[i] != Rational(expected)) return false;
    binom = binom * (n - i) / (i + 1);
  }
  return true;
}

inline bool is_nilpotent(const RationalOperator& m) {
  if (!m.is_square()) return false;
  return power(m, static_cast<unsigned>(m.rows())).is_zero();
}

/// log sigma = sum_{m >= 1} (-1)^{m+1} / m (sigma - 1)^m; the series stops
/// because sigma - 1 is nilpotent.
inline RationalOperator log_unipotent(const RationalOperator& sigma) {
  if (!sigma.is_square()) throw Error(ErrorCode::DimensionMismatch, "log of a non-square matrix");
  if (!is_unipotent(sigma)) throw Error(ErrorCode::NotUnipotent, "characteristic polynomial is not (x-1)^n");
  const std::size_t n = sigma.rows();
  const RationalOperator u = sigma - RationalOperator::identity(n);
  RationalOperator result(n, n);
  RationalOperator term = u;
  for (std::size_t m = 1; m <= n && !term.is_zero(); ++m) {
    const Rational coeff = Rational(m % 2 == 1 ? 1 : -1, static_cast<long long>(m));
    result = result + coeff * term;
    term = term * u;
  }
  return result;
}

/// exp N = sum N^k / k!, finite for nilpotent N.
inline RationalOperator exp_nilpotent(const RationalOperator& n_op) {
  if (!is_nilpotent(n_op)) throw Error(ErrorCode::NotNilpotent, "exp is only evaluated on nilpotent operators");
  const std::size_t n = n_op.rows();
  RationalOperator result = RationalOperator::identity(n);
  RationalOperator term = RationalOperator::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = Rational(1, static_cast<long long>(k)) * (term * n_op);
    if (term.is_zero()) break;
    result = result + term;
  }
  return result;
}

/// 4x4 nilpotent with N^2 = 0 and rank t: N e_2 = e_1 and, for t = 2, N e_4 = e_3.
inline RationalOperator standard_N(std::size_t t) {
  if (t > 2) throw Error(ErrorCode::UnsupportedRank, "toric rank must be 0, 1 or 2");
  RationalOperator n(4, 4);
  if (t >= 1) n(0, 1) = 1;
  if (t >= 2) n(2, 3) = 1;
  return n;
}

/// Basis of wedge^2 of a 4-dimensional space, lexicographic:
/// e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4 (zero-based indices).
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kWedgeBasis{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Matrix of wedge^2 f: entry ((i,j),(k,l)) is the 2x2 minor f_ik f_jl - f_il f_jk.
inline RationalOperator wedge_square(const RationalOperator& f) {
  if (f.rows() != 4 || f.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "wedge_square expects a 4x4 operator");
  RationalOperator w(6, 6);
  for (std::size_t r = 0; r < 6; ++r) {
    const auto [i, j] = kWedgeBasis[r];
    for (std::size_t c = 0; c < 6; ++c) {
      const auto [k, l] = kWedgeBasis[c];
      w(r, c) = f(i, k) * f(j, l) - f(i, l) * f(j, k);
    }
  }
  return w;
}

/// N ^ Id + Id ^ N on wedge^2: e_k ^ e_l -> N e_k ^ e_l + e_k ^ N e_l.
inline RationalOperator wedge_derivation(const RationalOperator& n) {
  if (n.rows() != 4 || n.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "wedge_derivation expects 4x4");
  RationalOperator w(6, 6);
  for (std::size_t r = 0; r < 6; ++r) {
    const auto [i, j] = kWedgeBasis[r];
    for (std::size_t c = 0; c < 6; ++c) {
      const auto [k, l] = kWedgeBasis[c];
      Rational v = 0;
      if (l == j) v += n(i, k);
      if (l == i) v -= n(j, k);
      if (k == i) v += n(j, l);
      if (k == j) v -= n(i, l);
      w(r, c) = v;
    }
  }
  return w;
}

/// Monodromy on H^2 = wedge^2 H^1 + W(-1), kept block-diagonal: a 6x6
/// block on wedge^2 and a 16x16 block on the two-torsion permutation part.
struct KummerMonodromy {
  RationalOperator wedge_block;
  RationalOperator permutation_block;

  RationalOperator dense() const {
    RationalOperator m(22, 22);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = wedge_block(i, j);
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j) m(6 + i, 6 + j) = permutation_block(i, j);
    return m;
  }
};

namespace detail {

inline void require_square_zero(const RationalOperator& n) {
  if (n.rows() != 4 || n.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 operator on H^1");
  if (!is_nilpotent(n)) throw Error(ErrorCode::NotNilpotent, "operator is not nilpotent");
  if (!(n * n).is_zero()) throw Error(ErrorCode::BadSquare, "operator does not square to zero");
}

}  // namespace detail

/// N_X = (N ^ Id + Id ^ N) + 0.
inline KummerMonodromy kummer_monodromy(const RationalOperator& n) {
  detail::require_square_zero(n);
  return {wedge_derivation(n), RationalOperator(16, 16)};
}

/// Smallest m >= 1 with M^m = 0.
inline unsigned nilpotency_index(const RationalOperator& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "nilpotency index of a non-square matrix");
  RationalOperator p = m;
  for (unsigned k = 1; k <= std::max<std::size_t>(m.rows(), 1); ++k) {
    if (p.is_zero()) return k;
    p = p * m;
  }
  throw Error(ErrorCode::NotNilpotent, "no power up to the dimension vanishes");
}

inline unsigned nilpotency_index(const KummerMonodromy& m) {
  return std::max(nilpotency_index(m.wedge_block), nilpotency_index(m.permutation_block));
}

inline KulikovType type_from_index(unsigned m) {
  switch (m) {
    case 1: return KulikovType::I;
    case 2: return KulikovType::II;
    case 3: return KulikovType::III;
    default: throw Error(ErrorCode::InvalidIndex, "nilpotency index must be 1, 2 or 3");
  }
}

inline std::size_t toric_rank_from_N(const RationalOperator& n) {
  detail::require_square_zero(n);
  return rank(n);
}

/// s in {+1, -1} with s f unipotent, for f whose wedge square is unipotent.
inline int unipotent_or_negative(const RationalOperator& f) {
  if (f.rows() != 4 || f.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 operator");
  if (!is_unipotent(wedge_square(f))) throw Error(ErrorCode::HypothesisFailed, "wedge^2 f is not unipotent");
  const bool plus = is_unipotent(f);
  const bool minus = is_unipotent(-f);
  if (plus == minus) throw Error(ErrorCode::HypothesisFailed, "neither or both of f, -f are unipotent");
  return plus ? 1 : -1;
}

/// Product sample for the multiplicativity check: sigma_left * sigma_right.
struct ProductSample {
  std::size_t left = 0;
  std::size_t right = 0;
  RationalOperator product;
};

inline std::vector<int> quadratic_twist_character(const std::vector<RationalOperator>& sigmas,
                                                  const std::vector<ProductSample>& products = {}) {
  std::vector<int> signs;
  signs.reserve(sigmas.size());
  for (const auto& s : sigmas) signs.push_back(unipotent_or_negative(s));
  for (const auto& p : products) {
    if (p.left >= sigmas.size() || p.right >= sigmas.size())
      throw Error(ErrorCode::InvalidInput, "product sample refers to a missing operator");
    if (unipotent_or_negative(p.product) != signs[p.left] * signs[p.right])
      throw Error(ErrorCode::NotMultiplicative, "character is not multiplicative on the sample");
  }
  return signs;
}

/// Permutation of the 16 points of A[2], labels 1..16; perm[i] is the image of i + 1.
struct TwoTorsionPermutation {
  std::vector<int> perm;

  explicit TwoTorsionPermutation(std::vector<int> p) : perm(std::move(p)) {
    if (perm.size() != 16) throw Error(ErrorCode::InvalidInput, "permutation must have 16 entries");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 16; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i + 1)
        throw Error(ErrorCode::InvalidInput, "permutation must be a bijection of 1..16");
  }

  static TwoTorsionPermutation identity() {
    std::vector<int> p(16);
    for (int i = 0; i < 16; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    return TwoTorsionPermutation(std::move(p));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < 16; ++i)
      if (perm[i] != static_cast<int>(i) + 1) return false;
    return true;
  }

  /// Column i carries basis vector i to basis vector perm[i].
  RationalOperator matrix() const {
    RationalOperator m(16, 16);
    for (std::size_t i = 0; i < 16; ++i) m(static_cast<std::size_t>(perm[i] - 1), i) = 1;
    return m;
  }
};

/// A permutation matrix is unipotent exactly when the permutation is trivial.
inline bool two_torsion_trivial(const TwoTorsionPermutation& p) {
  const bool unipotent = is_unipotent(p.matrix());
  if (unipotent != p.is_identity())
    throw Error(ErrorCode::HypothesisFailed, "unipotent permutation matrix that is not the identity");
  return unipotent;
}

}  // namespace kulikov
