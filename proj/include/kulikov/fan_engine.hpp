#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "kulikov/degeneration_data.hpp"
#include "kulikov/error.hpp"
#include "kulikov/lattice_core.hpp"
#include "kulikov/matrix.hpp"
#include "kulikov/numeric.hpp"

// Semistable fans of the cone C in X^dual_R + R are handled through their
// height-one slice: every ray is (l, 1), so a cone is the cone over a lattice
// simplex in X^dual = Z^t and the fan is a periodic triangulation of R^t.

namespace kulikov {

inline IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline IntVector subtract(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline IntVector negate(IntVector a) {
  for (auto& x : a) x = -x;
  return a;
}

inline Integer inf_norm(const IntVector& a) {
  Integer n = 0;
  for (const auto& x : a) n = std::max(n, abs_value(x));
  return n;
}

/// Vertices of a lattice simplex in X^dual. Kept sorted lexicographically.
struct LatticeSimplex {
  std::vector<IntVector> vertices;

  LatticeSimplex() = default;
  explicit LatticeSimplex(std::vector<IntVector> vs) : vertices(std::move(vs)) {
    std::sort(vertices.begin(), vertices.end());
  }

  std::size_t dimension() const { return vertices.empty() ? 0 : vertices.size() - 1; }

  LatticeSimplex translated(const IntVector& shift) const {
    LatticeSimplex s;
    s.vertices.reserve(vertices.size());
    for (const auto& v : vertices) s.vertices.push_back(add(v, shift));
    return s;  // translation preserves the lexicographic order
  }

  LatticeSimplex negated() const {
    std::vector<IntVector> vs;
    for (const auto& v : vertices) vs.push_back(negate(v));
    return LatticeSimplex(std::move(vs));
  }

  /// Face omitting vertex i.
  LatticeSimplex facet(std::size_t i) const {
    LatticeSimplex s;
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if (k != i) s.vertices.push_back(vertices[k]);
    return s;
  }

  Integer diameter() const {
    Integer d = 0;
    for (const auto& v : vertices)
      for (const auto& w : vertices) d = std::max(d, inf_norm(subtract(v, w)));
    return d;
  }

  friend bool operator==(const LatticeSimplex&, const LatticeSimplex&) = default;
  friend auto operator<=>(const LatticeSimplex& a, const LatticeSimplex& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() <=> b.vertices.size();
    if (a.vertices < b.vertices) return std::strong_ordering::less;
    if (b.vertices < a.vertices) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// True iff the vectors (v, 1) extend to a basis of Z^{t+1}.
inline bool is_unimodular(const LatticeSimplex& s) {
  if (s.vertices.empty()) return false;
  const std::size_t t = s.vertices.front().size();
  if (s.vertices.size() > t + 1) return false;
  IntMatrix m(s.vertices.size(), t + 1);
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (s.vertices[i].size() != t) throw Error(ErrorCode::DimensionMismatch, "simplex vertices of mixed length");
    for (std::size_t j = 0; j < t; ++j) m(i, j) = s.vertices[i][j];
    m(i, t) = 1;
  }
  const SmithForm snf = smith_normal_form(m);
  for (std::size_t i = 0; i < s.vertices.size(); ++i)
    if (snf.diagonal(i, i) != 1) return false;
  return true;
}

/// Representative of the class of s modulo the lattice: the lexicographically
/// first vertex is moved to its canonical coset representative.
inline LatticeSimplex canonical_simplex(const LatticeSimplex& s, const LatticeQuotient& q, IntVector* shift = nullptr) {
  if (s.vertices.empty()) return s;
  const IntVector& anchor = s.vertices.front();
  IntVector delta = subtract(q.reduce(anchor), anchor);
  LatticeSimplex c = s.translated(delta);
  if (shift) *shift = std::move(delta);
  return c;
}

/// A Lambda-periodic triangulation of R^t, stored as one representative per
/// class of simplices modulo the lattice, closed under taking faces.
class PeriodicTriangulation {
 public:
  PeriodicTriangulation() = default;

  /// `lattice` rows span the period lattice; `simplices` may list only the
  /// maximal cells, faces are added.
  PeriodicTriangulation(std::size_t rank, IntMatrix lattice, const std::vector<LatticeSimplex>& simplices)
      : rank_(rank), quotient_(std::move(lattice)) {
    if (rank > 2) throw Error(ErrorCode::UnsupportedRank, "only ranks 0, 1, 2 are supported");
    if (quotient_.rank() != rank) throw Error(ErrorCode::DimensionMismatch, "lattice basis must be rank x rank");
    std::set<LatticeSimplex> closed;
    std::vector<LatticeSimplex> pending;
    for (const auto& s : simplices) {
      if (s.vertices.empty()) throw Error(ErrorCode::InvalidInput, "empty simplex");
      for (const auto& v : s.vertices)
        if (v.size() != rank) throw Error(ErrorCode::DimensionMismatch, "vertex length must equal the rank");
      LatticeSimplex sorted(s.vertices);
      if (std::adjacent_find(sorted.vertices.begin(), sorted.vertices.end()) != sorted.vertices.end())
        throw Error(ErrorCode::InvalidInput, "simplex has repeated vertices");
      pending.push_back(canonical_simplex(sorted, quotient_));
    }
    while (!pending.empty()) {
      LatticeSimplex s = std::move(pending.back());
      pending.pop_back();
      if (!closed.insert(s).second) continue;
      if (s.vertices.size() > 1)
        for (std::size_t i = 0; i < s.vertices.size(); ++i)
          pending.push_back(canonical_simplex(s.facet(i), quotient_));
    }
    simplices_.assign(closed.begin(), closed.end());
    for (std::size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i], i);
  }

  std::size_t rank() const noexcept { return rank_; }
  const IntMatrix& lattice() const noexcept { return quotient_.basis(); }
  const LatticeQuotient& quotient() const noexcept { return quotient_; }

  /// Sorted by dimension, then lexicographically.
  const std::vector<LatticeSimplex>& simplices() const noexcept { return simplices_; }

  std::vector<LatticeSimplex> simplices_of_dimension(std::size_t k) const {
    std::vector<LatticeSimplex> out;
    for (const auto& s : simplices_)
      if (s.vertices.size() == k + 1) out.push_back(s);
    return out;
  }

  std::size_t max_dimension() const {
    std::size_t d = 0;
    for (const auto& s : simplices_) d = std::max(d, s.dimension());
    return d;
  }

  LatticeSimplex canonical(const LatticeSimplex& s, IntVector* shift = nullptr) const {
    return canonical_simplex(s, quotient_, shift);
  }

  /// Index of the class of s, if s belongs to the developed triangulation.
  std::optional<std::size_t> find(const LatticeSimplex& s) const {
    auto it = index_.find(canonical(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool empty() const noexcept { return simplices_.empty(); }

 private:
  std::size_t rank_ = 0;
  LatticeQuotient quotient_;
  std::vector<LatticeSimplex> simplices_;
  std::map<LatticeSimplex, std::size_t> index_;
};

/// Unimodular triangulation of R^t with period Z^t: t = 1 unit edges, t = 2 unit
/// squares cut along the (1,1) diagonal.
inline PeriodicTriangulation standard_triangulation(std::size_t t) {
  auto v = [](std::initializer_list<int> xs) {
    IntVector out;
    for (int x : xs) out.emplace_back(x);
    return out;
  };
  switch (t) {
    case 0:
      return PeriodicTriangulation(0, IntMatrix(0, 0), {LatticeSimplex({IntVector{}})});
    case 1:
      return PeriodicTriangulation(1, IntMatrix::identity(1), {LatticeSimplex({v({0}), v({1})})});
    case 2:
      return PeriodicTriangulation(2, IntMatrix::identity(2),
                                   {LatticeSimplex({v({0, 0}), v({1, 0}), v({1, 1})}),
                                    LatticeSimplex({v({0, 0}), v({1, 1}), v({0, 1})})});
    default:
      throw Error(ErrorCode::UnsupportedRank, "standard triangulation exists here only for t <= 2");
  }
}

/// Re-express T modulo a finer-period sublattice `lattice` of its current period lattice.
inline PeriodicTriangulation attach_lattice(const PeriodicTriangulation& t, const IntMatrix& lattice) {
  const std::size_t n = t.rank();
  if (lattice.rows() != n || lattice.cols() != n) throw Error(ErrorCode::DimensionMismatch, "lattice must be rank x rank");
  // Coordinates of the new basis in the old one must be integral.
  const RationalMatrix coords = to_rational(lattice) * inverse(to_rational(t.lattice()));
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_integral(coords(i, j)))
        throw Error(ErrorCode::InvalidInput, "new lattice is not contained in the period lattice");
      c(i, j) = numerator_of(coords(i, j));
    }
  const LatticeQuotient cosets(c);
  std::vector<LatticeSimplex> expanded;
  for (const auto& rep : cosets.coset_representatives()) {
    const IntVector shift = row_times(rep, t.lattice());
    for (const auto& s : t.simplices()) expanded.push_back(s.translated(shift));
  }
  return PeriodicTriangulation(n, lattice, expanded);
}

/// Lambda_b: rows b(e_i, -) of the pairing.
inline IntMatrix pairing_lattice(const DegenerationData& d) { return d.b; }

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Semistable: every ray is (l, 1) and the vertical ray over 0 is a cone.
/// Vertices are integral by construction, so this reduces to 0 being a vertex.
inline bool check_semistable(const PeriodicTriangulation& t) {
  if (t.empty()) return false;
  return t.find(LatticeSimplex({IntVector(t.rank(), Integer(0))})).has_value();
}

/// Every lattice point of X^dual is a vertex.
inline bool check_vertex_cover(const PeriodicTriangulation& t) {
  return Integer(t.simplices_of_dimension(0).size()) == t.quotient().index();
}

inline bool check_unimodular(const PeriodicTriangulation& t) {
  if (t.empty()) return false;
  return std::all_of(t.simplices().begin(), t.simplices().end(), [](const auto& s) { return is_unimodular(s); });
}

/// Combinatorial cover test: the complex is pure of dimension t, every facet
/// class bounds exactly two top cells, and the top cells (all of normalized
/// volume one) fill t! * [Z^t : Lambda].
inline bool check_cover(const PeriodicTriangulation& t) {
  const std::size_t n = t.rank();
  const auto top = t.simplices_of_dimension(n);
  if (top.empty()) return false;
  if (Integer(top.size()) != exact_factorial(static_cast<unsigned>(n)) * t.quotient().index()) return false;
  if (n == 0) return true;
  std::map<LatticeSimplex, int> incidences;
  for (const auto& s : top)
    for (std::size_t i = 0; i < s.vertices.size(); ++i) ++incidences[t.canonical(s.facet(i))];
  for (const auto& s : t.simplices()) {
    if (s.dimension() + 1 != n) continue;
    auto it = incidences.find(s);
    if (it == incidences.end() || it->second != 2) return false;
  }
  // No lower-dimensional maximal cell.
  for (const auto& [face, count] : incidences)
    if (count != 2) return false;
  return true;
}

struct WindowOptions {
  std::optional<Integer> radius;  // defaults to the safe bound
  bool allow_unsafe = false;      // permit radius below the safe bound
};

namespace detail {

inline Integer max_basis_norm(const PeriodicTriangulation& t) {
  Integer m = 0;
  for (std::size_t i = 0; i < t.lattice().rows(); ++i) m = std::max(m, inf_norm(t.lattice().row(i)));
  return m;
}

inline Integer resolve_window(const Integer& safe, const WindowOptions& opts) {
  if (!opts.radius) return safe;
  if (*opts.radius < safe && !opts.allow_unsafe)
    throw Error(ErrorCode::WindowTooSmall, "window " + to_string(*opts.radius) + " is below the safe bound " +
                                               to_string(safe));
  return *opts.radius;
}

}  // namespace detail

/// max simplex diameter + max |basis vector| + 1.
inline Integer safe_window_property_d(const PeriodicTriangulation& t) {
  Integer diam = 0;
  for (const auto& s : t.simplices()) diam = std::max(diam, s.diameter());
  return diam + detail::max_basis_norm(t) + 1;
}

/// A translate with -S = S + lambda has |lambda| <= 2 max|v|, so the reach of
/// the representatives replaces the diameter.
inline Integer safe_window_h_freeness(const PeriodicTriangulation& t) {
  Integer reach = 0;
  for (const auto& s : t.simplices())
    for (const auto& v : s.vertices) reach = std::max(reach, inf_norm(v));
  return 2 * reach + detail::max_basis_norm(t) + 1;
}

/// Lattice vectors lambda = y B with |lambda|_inf <= radius, zero included.
inline std::vector<IntVector> lattice_vectors_in_window(const PeriodicTriangulation& t, const Integer& radius) {
  const std::size_t n = t.rank();
  if (n == 0) return {IntVector{}};
  const RationalMatrix inv = inverse(to_rational(t.lattice()));
  // |y_i| <= radius * sum_j |inv(j, i)|
  IntVector bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += inv(j, i) < 0 ? Rational(-inv(j, i)) : inv(j, i);
    s *= radius;
    bound[i] = numerator_of(s) / denominator_of(s) + 1;
  }
  std::vector<IntVector> out;
  IntVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = -bound[i];
  for (;;) {
    IntVector lambda = row_times(y, t.lattice());
    if (inf_norm(lambda) <= radius) out.push_back(std::move(lambda));
    std::size_t i = 0;
    while (i < n) {
      if (++y[i] <= bound[i]) break;
      y[i] = -bound[i];
      ++i;
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Projections of both simplices onto an axis; true if they separate.
inline bool separated_along(const LatticeSimplex& a, const LatticeSimplex& b, const IntVector& axis) {
  auto project = [&](const IntVector& v) {
    Integer s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * axis[i];
    return s;
  };
  Integer amin = project(a.vertices.front()), amax = amin;
  for (const auto& v : a.vertices) {
    const Integer p = project(v);
    amin = std::min(amin, p);
    amax = std::max(amax, p);
  }
  Integer bmin = project(b.vertices.front()), bmax = bmin;
  for (const auto& v : b.vertices) {
    const Integer p = project(v);
    bmin = std::min(bmin, p);
    bmax = std::max(bmax, p);
  }
  return amax < bmin || bmax < amin;
}

}  // namespace detail

/// Whether the closed convex hulls of two simplices in R^t (t <= 2) meet.
///
/// Separating-axis test: two disjoint compact convex polygons in the plane are
/// strictly separated along the normal of an edge of one of them, or, when
/// both are collinear, along an edge direction or a coordinate axis.
inline bool simplices_intersect(const LatticeSimplex& a, const LatticeSimplex& b) {
  const std::size_t n = a.vertices.front().size();
  if (n == 0) return true;
  if (n > 2) throw Error(ErrorCode::UnsupportedRank, "intersection test implemented for t <= 2");
  std::vector<IntVector> axes;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    axes.push_back(std::move(e));
  }
  if (n == 2) {
    for (const auto* s : {&a, &b})
      for (std::size_t i = 0; i < s->vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s->vertices.size(); ++j) {
          const IntVector dir = subtract(s->vertices[j], s->vertices[i]);
          axes.push_back(dir);
          axes.push_back(IntVector{-dir[1], dir[0]});
        }
  }
  for (const auto& axis : axes)
    if (detail::separated_along(a, b, axis)) return false;
  return true;
}

struct Violation {
  IntVector lambda;
  LatticeSimplex simplex;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Cones never meet their own nonzero Y-translates (away from the apex):
/// S and S + lambda are disjoint for all nonzero lambda in the window.
inline std::vector<Violation> check_property_d(const PeriodicTriangulation& t, const WindowOptions& opts = {}) {
  const Integer radius = detail::resolve_window(safe_window_property_d(t), opts);
  const auto lambdas = lattice_vectors_in_window(t, radius);
  std::vector<Violation> out;
  for (const auto& s : t.simplices()) {
    // A common point q gives q, q - lambda in S, so |lambda|_inf <= diam S.
    const Integer diam = s.diameter();
    for (const auto& lambda : lambdas) {
      const Integer norm = inf_norm(lambda);
      if (norm == 0 || norm > diam) continue;
      if (simplices_intersect(s, s.translated(lambda))) out.push_back({lambda, s});
    }
  }
  return out;
}

/// H acts freely on classes of cones of dimension >= 2: no simplex with at
/// least two vertices satisfies -S = S + lambda for lambda in Lambda.
inline std::vector<Violation> check_h_freeness(const PeriodicTriangulation& t, const WindowOptions& opts = {}) {
  const Integer radius = detail::resolve_window(safe_window_h_freeness(t), opts);
  std::vector<Violation> out;
  for (const auto& s : t.simplices()) {
    if (s.vertices.size() < 2) continue;
    // Matching least vertices of -S and S + lambda pins lambda down.
    const IntVector lambda = subtract(negate(s.vertices.back()), s.vertices.front());
    if (inf_norm(lambda) > radius || !t.quotient().contains(lambda)) continue;
    if (s.negated() == s.translated(lambda)) out.push_back({lambda, s});
  }
  return out;
}

struct GammaViolation {
  IntVector y;
  int h = 1;
  LatticeSimplex simplex;
};

/// Every image h S + b(y, -), |y|_inf <= y_radius, h = +-1, is again a cell.
inline std::vector<GammaViolation> check_gamma_admissible(const PeriodicTriangulation& t, int y_radius = 3) {
  const std::size_t n = t.rank();
  std::vector<GammaViolation> out;
  std::vector<IntVector> ys;
  IntVector y(n, Integer(-y_radius));
  for (;;) {
    ys.push_back(y);
    std::size_t i = 0;
    while (i < n) {
      if (++y[i] <= y_radius) break;
      y[i] = -y_radius;
      ++i;
    }
    if (i == n) break;
  }
  // b(y, -) lies in Lambda_b, so h S + b(y, -) is in the class of h S once
  // that membership holds: one lookup per simplex and sign covers every y.
  std::vector<bool> shift_ok;
  for (const auto& yy : ys) shift_ok.push_back(t.quotient().contains(row_times(yy, t.lattice())));
  for (const auto& s : t.simplices())
    for (int h : {1, -1}) {
      const bool present = t.find(h == 1 ? s : s.negated()).has_value();
      for (std::size_t k = 0; k < ys.size(); ++k)
        if (!present || !shift_ok[k]) out.push_back({ys[k], h, s});
    }
  return out;
}

/// Quadratic form l -> l^T Q l used as vertex values of a piecewise-linear
/// function. Off-diagonal entries may be half-integers.
struct PolarizationForm {
  RationalMatrix q;

  Rational value(const IntVector& l) const {
    Rational s = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) s += q(i, j) * Rational(l[i] * l[j]);
    return s;
  }

  /// Symmetric, positive definite, integral on Z^t.
  bool is_admissible() const {
    if (!q.is_symmetric()) return false;
    for (std::size_t i = 0; i < q.rows(); ++i) {
      if (!is_integral(q(i, i))) return false;
      for (std::size_t j = i + 1; j < q.cols(); ++j)
        if (!is_integral(Rational(2 * q(i, j)))) return false;
    }
    for (std::size_t k = 1; k <= q.rows(); ++k) {
      // 4^k * minor is an integer determinant with the same sign.
      IntMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = numerator_of(Rational(2 * q(i, j)));
      if (determinant(minor) <= 0) return false;
    }
    return true;
  }
};

/// t = 1: n^2; t = 2: m^2 + n^2 - mn, whose Delaunay subdivision is the
/// standard triangulation.
inline PolarizationForm default_polarization(std::size_t t) {
  switch (t) {
    case 0: return {RationalMatrix(0, 0)};
    case 1: return {RationalMatrix{{Rational(1)}}};
    case 2: return {RationalMatrix{{Rational(1), Rational(-1, 2)}, {Rational(-1, 2), Rational(1)}}};
    default: throw Error(ErrorCode::UnsupportedRank, "no default polarization for t > 2");
  }
}

struct Wall {
  LatticeSimplex wall;
  IntVector left;   // opposite vertex of one adjacent top cell
  IntVector right;  // opposite vertex of the other
};

/// Each wall class with the opposite vertices of its two adjacent top cells.
inline std::vector<Wall> walls(const PeriodicTriangulation& t) {
  const std::size_t n = t.rank();
  if (n == 0) return {};
  std::map<LatticeSimplex, std::vector<IntVector>> opposite;
  for (const auto& s : t.simplices_of_dimension(n))
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      IntVector shift;
      const LatticeSimplex wall = t.canonical(s.facet(i), &shift);
      opposite[wall].push_back(add(s.vertices[i], shift));
    }
  std::vector<Wall> out;
  for (auto& [wall, opp] : opposite) {
    if (opp.size() != 2) throw Error(ErrorCode::InvalidInput, "a wall does not bound exactly two cells");
    out.push_back({wall, opp[0], opp[1]});
  }
  return out;
}

/// Q(right) minus the affine function through the wall and `left`, evaluated
/// at `right`. Strict convexity across the wall means this is > 0.
inline Rational convexity_margin(const Wall& w, const PolarizationForm& p) {
  // Barycentric coordinates of `right` in the simplex wall + left, by Cramer:
  // columns are (p_i, 1), right-hand side (right, 1).
  const std::size_t n = w.left.size();
  std::vector<IntVector> pts = w.wall.vertices;
  pts.push_back(w.left);
  auto system = [&](std::optional<std::size_t> replaced) {
    IntMatrix m(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      const IntVector& col = replaced == j ? w.right : pts[j];
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
      m(n, j) = 1;
    }
    return m;
  };
  const Integer det = determinant(system(std::nullopt));
  if (det == 0) throw Error(ErrorCode::SingularPairing, "degenerate wall");
  Rational interpolated = 0;
  for (std::size_t j = 0; j <= n; ++j) interpolated += Rational(determinant(system(j))) / Rational(det) * p.value(pts[j]);
  return p.value(w.right) - interpolated;
}

/// Strict convexity of the interpolation of Q across every wall class.
/// Q(l + lambda) - Q(l) is affine in l, so the margin of a wall does not
/// change under translation and one representative per class suffices; the
/// same fact gives central symmetry and the periodicity twist for free.
inline bool check_polarization(const PeriodicTriangulation& t, const PolarizationForm& p) {
  if (p.q.rows() != t.rank() || p.q.cols() != t.rank()) throw Error(ErrorCode::DimensionMismatch, "form size");
  if (!p.is_admissible()) return false;
  for (const auto& w : walls(t))
    if (convexity_margin(w, p) <= 0) return false;
  return true;
}

struct Certificates {
  bool semistable = false;
  bool vertex_cover = false;
  bool unimodular = false;
  bool cover = false;
  bool property_d = false;
  bool h_free = false;
  bool gamma_admissible = false;
  bool polarization = false;

  /// What the dual-complex construction needs.
  bool sufficient_for_dual_complex() const { return semistable && unimodular && property_d; }

  bool all() const {
    return semistable && vertex_cover && unimodular && cover && property_d && h_free && gamma_admissible &&
           polarization;
  }
};

struct CertifiedFan {
  PeriodicTriangulation triangulation;
  Certificates certificates;
  std::vector<Violation> property_d_violations;
  std::vector<Violation> h_violations;
};

namespace detail {

inline CertifiedFan certify_with(const PeriodicTriangulation& t, const PolarizationForm& p,
                                 std::vector<Violation> property_d, std::vector<Violation> h_free) {
  CertifiedFan out{t, {}, std::move(property_d), std::move(h_free)};
  Certificates& c = out.certificates;
  c.semistable = check_semistable(t);
  c.vertex_cover = check_vertex_cover(t);
  c.unimodular = check_unimodular(t);
  c.cover = check_cover(t);
  c.property_d = out.property_d_violations.empty();
  c.h_free = out.h_violations.empty();
  c.gamma_admissible = check_gamma_admissible(t).empty();
  c.polarization = c.cover && c.unimodular && check_polarization(t, p);
  return out;
}

}  // namespace detail

inline CertifiedFan certify(const PeriodicTriangulation& t, const PolarizationForm& p, const WindowOptions& opts = {}) {
  return detail::certify_with(t, p, check_property_d(t, opts), check_h_freeness(t, opts));
}

inline CertifiedFan certify(const PeriodicTriangulation& t, const WindowOptions& opts = {}) {
  return certify(t, default_polarization(t.rank()), opts);
}

struct ScaledFan {
  Integer nu;
  CertifiedFan fan;
};

/// Smallest nu such that the standard triangulation, taken modulo
/// Lambda_{nu b}, is semistable, unimodular, satisfies property (d) and is
/// H-free. The result is a certified fan for base_change(d, nu).
inline ScaledFan auto_scale(const DegenerationData& d, unsigned max_nu = 1024) {
  if (!validate(d).ok()) throw Error(ErrorCode::InvalidInput, "degeneration data fails validation");
  const PeriodicTriangulation standard = standard_triangulation(d.rank);
  for (unsigned nu = 1; nu <= max_nu; ++nu) {
    const PeriodicTriangulation t = attach_lattice(standard, Integer(nu) * pairing_lattice(d));
    if (!check_semistable(t) || !check_unimodular(t)) continue;
    auto property_d = check_property_d(t);
    if (!property_d.empty()) continue;
    auto h_free = check_h_freeness(t);
    if (!h_free.empty()) continue;
    return {Integer(nu), detail::certify_with(t, default_polarization(t.rank()), std::move(property_d), std::move(h_free))};
  }
  throw Error(ErrorCode::InvalidInput, "no admissible scale found below the search cap");
}

}  // namespace kulikov
