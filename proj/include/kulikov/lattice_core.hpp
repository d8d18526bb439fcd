#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kulikov/error.hpp"
#include "kulikov/matrix.hpp"
#include "kulikov/numeric.hpp"

namespace kulikov {

struct SmithForm {
  IntMatrix diagonal;   // D
  IntMatrix left;       // U, unimodular
  IntMatrix right;      // V, unimodular
};

namespace detail {

// Smallest |entry| in the trailing block starting at (k,k); ties go to the
// first entry in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& d, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = k; i < d.rows(); ++i)
    for (std::size_t j = k; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs_value(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  return best;
}

}  // namespace detail

/// U * M * V = D with D diagonal, d_1 | d_2 | ..., entries >= 0.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      auto pivot = detail::smallest_pivot(d, k);
      if (!pivot) return {d, u, v};
      d.swap_rows(k, pivot->first);
      u.swap_rows(k, pivot->first);
      d.swap_cols(k, pivot->second);
      v.swap_cols(k, pivot->second);

      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (d(i, k) == 0) continue;
        const Integer q = d(i, k) / d(k, k);
        d.add_row_multiple(i, k, Integer(-q));
        u.add_row_multiple(i, k, Integer(-q));
        if (d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (d(k, j) == 0) continue;
        const Integer q = d(k, j) / d(k, k);
        d.add_col_multiple(j, k, Integer(-q));
        v.add_col_multiple(j, k, Integer(-q));
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row k and go again.
      std::optional<std::size_t> offending;
      for (std::size_t i = k + 1; i < rows && !offending; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (d(i, j) % d(k, k) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      d.add_row_multiple(k, *offending, Integer(1));
      u.add_row_multiple(k, *offending, Integer(1));
    }
    if (d(k, k) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(k, j) = -d(k, j);
      for (std::size_t j = 0; j < rows; ++j) u(k, j) = -u(k, j);
    }
  }
  return {d, u, v};
}

/// Finite abelian group Z/d_1 + ... + Z/d_r with d_1 | ... | d_r and every d_i > 1.
struct ComponentGroup {
  std::vector<Integer> divisors;

  Integer order() const {
    Integer n = 1;
    for (const auto& d : divisors) n *= d;
    return n;
  }

  bool is_trivial() const { return divisors.empty(); }
  friend bool operator==(const ComponentGroup&, const ComponentGroup&) = default;
};

/// Cokernel of y -> b(y, -), Z^t -> Z^t.
inline ComponentGroup component_group(const IntMatrix& b) {
  if (!b.is_square()) throw Error(ErrorCode::DimensionMismatch, "pairing matrix must be square");
  if (b.rows() == 0) return {};
  if (determinant(b) == 0) throw Error(ErrorCode::SingularPairing, "pairing b has zero determinant");
  const SmithForm snf = smith_normal_form(b);
  ComponentGroup g;
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (snf.diagonal(i, i) != 1) g.divisors.push_back(snf.diagonal(i, i));
  return g;
}

/// #Phi[2] = prod gcd(d_i, 2).
inline Integer two_torsion_order(const ComponentGroup& g) {
  Integer n = 1;
  for (const auto& d : g.divisors) n *= gcd(d, Integer(2));
  return n;
}

inline IntVector primitive_vector(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive_vector of the zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

/// Z^t modulo a full-rank sublattice spanned by the rows of `basis`.
///
/// Reduction goes through the Smith form U B V = D: x lies in the lattice iff
/// every coordinate of x V is divisible by the matching d_i, so reducing those
/// coordinates into [0, d_i) gives a canonical representative.
class LatticeQuotient {
 public:
  LatticeQuotient() = default;

  explicit LatticeQuotient(IntMatrix basis) : basis_(std::move(basis)) {
    if (!basis_.is_square()) throw Error(ErrorCode::DimensionMismatch, "lattice basis must be square");
    if (basis_.rows() > 0 && determinant(basis_) == 0)
      throw Error(ErrorCode::SingularPairing, "lattice basis is not of full rank");
    SmithForm snf = smith_normal_form(basis_);
    right_ = snf.right;
    const RationalMatrix inv = inverse(to_rational(right_));
    right_inverse_ = IntMatrix(inv.rows(), inv.cols());
    for (std::size_t i = 0; i < inv.rows(); ++i)
      for (std::size_t j = 0; j < inv.cols(); ++j) right_inverse_(i, j) = numerator_of(inv(i, j));
    for (std::size_t i = 0; i < basis_.rows(); ++i) moduli_.push_back(snf.diagonal(i, i));
  }

  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }

  Integer index() const {
    Integer n = 1;
    for (const auto& d : moduli_) n *= d;
    return n;
  }

  /// Coordinates of the class of x in Z/d_1 + ... + Z/d_t.
  IntVector coordinates(const IntVector& x) const {
    IntVector c = row_times(x, right_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], moduli_[i]);
    return c;
  }

  IntVector reduce(const IntVector& x) const { return row_times(coordinates(x), right_inverse_); }

  bool contains(const IntVector& x) const {
    for (const auto& c : coordinates(x))
      if (c != 0) return false;
    return true;
  }

  /// One canonical representative per coset, in coordinate order.
  std::vector<IntVector> coset_representatives() const {
    std::vector<IntVector> reps;
    IntVector c(rank(), Integer(0));
    for (;;) {
      reps.push_back(row_times(c, right_inverse_));
      std::size_t i = 0;
      while (i < c.size()) {
        if (++c[i] < moduli_[i]) break;
        c[i] = 0;
        ++i;
      }
      if (i == c.size()) break;
    }
    return reps;
  }

 private:
  IntMatrix basis_;
  IntMatrix right_;
  IntMatrix right_inverse_;
  std::vector<Integer> moduli_;
};

}  // namespace kulikov
