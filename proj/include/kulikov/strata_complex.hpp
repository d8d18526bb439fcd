#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <string_view>
#include <vector>

#include "kulikov/degeneration_data.hpp"
#include "kulikov/error.hpp"
#include "kulikov/fan_engine.hpp"
#include "kulikov/lattice_core.hpp"

namespace kulikov {

/// A cell of a Delta-complex. faces[i] is the (k-1)-cell obtained by dropping
/// the i-th vertex of the label; the label is the simplex class it came from.
struct Cell {
  std::vector<std::size_t> faces;
  LatticeSimplex label;
};

/// Cells in dimensions 0..2 with ordered face maps. Several faces of one cell
/// may coincide, which is why quotients stay in this category.
struct DeltaComplex {
  std::array<std::vector<Cell>, 3> cells;

  std::size_t count(std::size_t k) const { return k < cells.size() ? cells[k].size() : 0; }
};

/// Permutation of cells in each dimension induced by l -> -l.
struct InvolutionAction {
  std::array<std::vector<std::size_t>, 3> images;
};

enum class KulikovType { I, II, III };

inline std::string_view to_string(KulikovType t) {
  switch (t) {
    case KulikovType::I: return "I";
    case KulikovType::II: return "II";
    case KulikovType::III: return "III";
  }
  return "?";
}

struct DualComplex {
  DeltaComplex complex;
  InvolutionAction action;
};

/// k-cells are the classes of k-simplices of the certified triangulation
/// modulo Lambda_b, i.e. the Y-orbits of (k+1)-dimensional cones.
inline DualComplex dual_complex(const CertifiedFan& fan) {
  if (!fan.certificates.sufficient_for_dual_complex())
    throw Error(ErrorCode::UncertifiedFan, "fan is not certified semistable, unimodular and (d)");
  const PeriodicTriangulation& t = fan.triangulation;
  if (t.max_dimension() > 2) throw Error(ErrorCode::UnsupportedRank, "cells above dimension 2");

  std::map<LatticeSimplex, std::size_t> position;
  DualComplex out;
  for (const auto& s : t.simplices()) {
    auto& bucket = out.complex.cells[s.dimension()];
    position.emplace(s, bucket.size());
    bucket.push_back({{}, s});
  }
  auto locate = [&](const LatticeSimplex& s) {
    auto it = position.find(t.canonical(s));
    if (it == position.end()) throw Error(ErrorCode::UncertifiedFan, "triangulation is not closed under faces");
    return it->second;
  };
  for (std::size_t k = 0; k < 3; ++k)
    for (auto& cell : out.complex.cells[k]) {
      if (k > 0)
        for (std::size_t i = 0; i < cell.label.vertices.size(); ++i) cell.faces.push_back(locate(cell.label.facet(i)));
      out.action.images[k].push_back(locate(cell.label.negated()));
    }
  return out;
}

/// act^2 = id and act(faces(c)) = faces(act(c)) as multisets.
inline bool is_valid_involution(const DeltaComplex& c, const InvolutionAction& act) {
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& img = act.images[k];
    if (img.size() != c.count(k)) return false;
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (img[i] >= img.size() || img[img[i]] != i) return false;
      if (k == 0) continue;
      std::vector<std::size_t> mapped;
      for (auto f : c.cells[k][i].faces) mapped.push_back(act.images[k - 1][f]);
      std::vector<std::size_t> target = c.cells[k][img[i]].faces;
      std::sort(mapped.begin(), mapped.end());
      std::sort(target.begin(), target.end());
      if (mapped != target) return false;
    }
  }
  return true;
}

/// Orbit complex. Each orbit is represented by its lowest-numbered cell, whose
/// faces are pushed down to orbits.
inline DeltaComplex h_quotient(const DeltaComplex& c, const InvolutionAction& act) {
  if (!is_valid_involution(c, act)) throw Error(ErrorCode::InvalidInput, "action is not an involution commuting with faces");
  std::array<std::vector<std::size_t>, 3> orbit;
  DeltaComplex q;
  for (std::size_t k = 0; k < 3; ++k) {
    orbit[k].assign(c.count(k), 0);
    std::vector<bool> seen(c.count(k), false);
    for (std::size_t i = 0; i < c.count(k); ++i) {
      if (seen[i]) continue;
      const std::size_t id = q.cells[k].size();
      seen[i] = seen[act.images[k][i]] = true;
      orbit[k][i] = orbit[k][act.images[k][i]] = id;
      Cell cell{{}, c.cells[k][i].label};
      for (auto f : c.cells[k][i].faces) cell.faces.push_back(orbit[k - 1][f]);
      q.cells[k].push_back(std::move(cell));
    }
  }
  return q;
}

inline long long euler_characteristic(const DeltaComplex& c) {
  return static_cast<long long>(c.count(0)) - static_cast<long long>(c.count(1)) + static_cast<long long>(c.count(2));
}

namespace detail {

inline bool one_skeleton_connected(const DeltaComplex& c) {
  const std::size_t n = c.count(0);
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : c.cells[1]) parent[root(e.faces[0])] = root(e.faces[1]);
  for (std::size_t v = 0; v < n; ++v)
    if (root(v) != root(0)) return false;
  return true;
}

}  // namespace detail

inline bool is_point(const DeltaComplex& c) { return c.count(0) == 1 && c.count(1) == 0 && c.count(2) == 0; }

/// Connected graph, degrees <= 2, exactly two vertices of degree <= 1, no 2-cells.
inline bool is_chain(const DeltaComplex& c) {
  if (c.count(2) != 0 || !detail::one_skeleton_connected(c)) return false;
  std::vector<std::size_t> degree(c.count(0), 0);
  for (const auto& e : c.cells[1])
    for (auto v : e.faces) ++degree[v];
  std::size_t ends = 0;
  for (auto deg : degree) {
    if (deg > 2) return false;
    if (deg <= 1) ++ends;
  }
  return ends == 2;
}

/// No cell has repeated faces and distinct cells have distinct vertex sets.
inline bool is_simplicial(const DeltaComplex& c) {
  auto vertex_set = [&](std::size_t k, std::size_t i) {
    std::vector<std::size_t> vs;
    if (k == 1) vs = c.cells[1][i].faces;
    if (k == 2)
      for (auto e : c.cells[2][i].faces) vs.insert(vs.end(), c.cells[1][e].faces.begin(), c.cells[1][e].faces.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  };
  for (std::size_t k = 1; k < 3; ++k) {
    std::map<std::vector<std::size_t>, std::size_t> sets;
    for (std::size_t i = 0; i < c.count(k); ++i) {
      auto faces = c.cells[k][i].faces;
      std::sort(faces.begin(), faces.end());
      if (std::adjacent_find(faces.begin(), faces.end()) != faces.end()) return false;
      auto vs = vertex_set(k, i);
      if (vs.size() != k + 1) return false;
      if (!sets.emplace(vs, i).second) return false;
    }
  }
  return true;
}

/// Link of every vertex is a single cycle (simplicial complexes only).
inline bool vertex_links_are_circles(const DeltaComplex& c) {
  for (std::size_t v = 0; v < c.count(0); ++v) {
    // Link edges: for each triangle at v, the edge not containing v.
    std::map<std::size_t, std::vector<std::size_t>> adjacency;
    std::size_t link_edges = 0;
    for (const auto& tri : c.cells[2]) {
      for (auto e : tri.faces) {
        const auto& ends = c.cells[1][e].faces;
        if (ends[0] == v || ends[1] == v) continue;
        bool touches = false;
        for (auto e2 : tri.faces) {
          const auto& f = c.cells[1][e2].faces;
          if (f[0] == v || f[1] == v) touches = true;
        }
        if (!touches) continue;
        adjacency[ends[0]].push_back(ends[1]);
        adjacency[ends[1]].push_back(ends[0]);
        ++link_edges;
      }
    }
    if (adjacency.size() < 3 || link_edges != adjacency.size()) return false;
    for (const auto& [w, nbrs] : adjacency)
      if (nbrs.size() != 2) return false;
    // Connected.
    std::vector<std::size_t> stack{adjacency.begin()->first};
    std::map<std::size_t, bool> seen{{stack.back(), true}};
    while (!stack.empty()) {
      const auto w = stack.back();
      stack.pop_back();
      for (auto x : adjacency[w])
        if (!seen[x]) {
          seen[x] = true;
          stack.push_back(x);
        }
    }
    if (seen.size() != adjacency.size()) return false;
  }
  return true;
}

/// Connected, every edge in exactly two 2-cells, chi = 2; vertex links are
/// also checked when the complex is simplicial.
inline bool is_sphere_like(const DeltaComplex& c) {
  if (c.count(2) == 0 || !detail::one_skeleton_connected(c)) return false;
  std::vector<std::size_t> incidence(c.count(1), 0);
  for (const auto& tri : c.cells[2])
    for (auto e : tri.faces) ++incidence[e];
  if (std::any_of(incidence.begin(), incidence.end(), [](std::size_t n) { return n != 2; })) return false;
  if (euler_characteristic(c) != 2) return false;
  if (is_simplicial(c) && !vertex_links_are_circles(c)) return false;
  return true;
}

/// Torus-like: connected, every edge in two 2-cells, chi = 0.
inline bool is_closed_surface_with_chi(const DeltaComplex& c, long long chi) {
  if (c.count(2) == 0 || !detail::one_skeleton_connected(c)) return false;
  std::vector<std::size_t> incidence(c.count(1), 0);
  for (const auto& tri : c.cells[2])
    for (auto e : tri.faces) ++incidence[e];
  if (std::any_of(incidence.begin(), incidence.end(), [](std::size_t n) { return n != 2; })) return false;
  return euler_characteristic(c) == chi;
}

/// Cycle graph: connected, every vertex of degree 2, #E = #V, no 2-cells.
inline bool is_cycle(const DeltaComplex& c) {
  if (c.count(2) != 0 || c.count(1) != c.count(0) || !detail::one_skeleton_connected(c)) return false;
  std::vector<std::size_t> degree(c.count(0), 0);
  for (const auto& e : c.cells[1])
    for (auto v : e.faces) ++degree[v];
  return std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d == 2; });
}

inline KulikovType type_from_toric_rank(std::size_t t) {
  switch (t) {
    case 0: return KulikovType::I;
    case 1: return KulikovType::II;
    case 2: return KulikovType::III;
    default: throw Error(ErrorCode::UnsupportedRank, "toric rank must be 0, 1 or 2");
  }
}

/// Type by toric rank, confirmed against the shape of the quotient complex.
inline KulikovType classify_kummer_type(const DegenerationData& d, const DeltaComplex& quotient) {
  const KulikovType type = type_from_toric_rank(toric_rank(d));
  bool shape_ok = false;
  switch (type) {
    case KulikovType::I: shape_ok = is_point(quotient); break;
    case KulikovType::II: shape_ok = is_chain(quotient); break;
    case KulikovType::III: shape_ok = is_sphere_like(quotient); break;
  }
  if (!shape_ok)
    throw Error(ErrorCode::ShapeMismatch,
                "quotient complex does not have the shape of type " + std::string(to_string(type)));
  return type;
}

struct ComponentCounts {
  Integer n_a;  // #Phi
  Integer n_x;  // #Phi[2] + (#Phi - #Phi[2]) / 2
};

namespace detail {

inline void require_kummer_data(const DegenerationData& d) {
  check_shapes(d);
  if (!is_even(d)) throw Error(ErrorCode::OddData, "b has odd entries");
  if (!h_invariance_check(d)) throw Error(ErrorCode::NotHInvariant, "a is not invariant under [-1]");
}

}  // namespace detail

inline ComponentCounts component_counts(const DegenerationData& d) {
  detail::require_kummer_data(d);
  if (d.rank == 0) return {1, 1};
  const ComponentGroup phi = component_group(d.b);
  const Integer order = phi.order();
  const Integer fixed = two_torsion_order(phi);
  return {order, fixed + (order - fixed) / 2};
}

/// e^t N - 2^{t-1} (e^t - 1), evaluated as (2 e^t N - 2^t (e^t - 1)) / 2.
inline Integer base_change_formula(std::size_t t, const Integer& n, const Integer& e) {
  const Integer et = pow_int(e, static_cast<unsigned>(t));
  const Integer twice = 2 * et * n - pow_int(Integer(2), static_cast<unsigned>(t)) * (et - 1);
  if (twice % 2 != 0) throw Error(ErrorCode::FormulaMismatch, "base-change formula is not integral");
  return twice / 2;
}

struct BaseChangeCounts {
  Integer e;
  Integer n;            // components before the extension
  Integer n_l;          // recounted on base_change(d, e)
  Integer formula_n_l;  // closed formula
  Integer phi_order;
  Integer phi_l_order;

  bool consistent(std::size_t t) const {
    return n_l == formula_n_l && phi_l_order == pow_int(e, static_cast<unsigned>(t)) * phi_order;
  }
};

inline BaseChangeCounts base_change_counts(const DegenerationData& d, const Integer& e) {
  if (e <= 0) throw Error(ErrorCode::InvalidScale, "ramification index must be positive");
  const ComponentCounts before = component_counts(d);
  const ComponentCounts after = component_counts(base_change(d, e));
  BaseChangeCounts r{e, before.n_x, after.n_x, base_change_formula(d.rank, before.n_x, e), before.n_a, after.n_a};
  if (!r.consistent(d.rank))
    throw Error(ErrorCode::FormulaMismatch, "base-change count " + to_string(r.n_l) + " differs from formula " +
                                                to_string(r.formula_n_l));
  return r;
}

}  // namespace kulikov
