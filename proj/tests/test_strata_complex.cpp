#include <catch2/catch_amalgamated.hpp>

#include "kulikov/strata_complex.hpp"
#include "oracles.hpp"

using namespace kulikov;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

DualComplex dual_of(const IntMatrix& b) {
  const ScaledFan s = auto_scale(make_degeneration_data(b));
  REQUIRE(s.nu == 1);
  return dual_complex(s.fan);
}

std::array<std::size_t, 3> counts(const DeltaComplex& c) { return {c.count(0), c.count(1), c.count(2)}; }

}  // namespace

TEST_CASE("dual complex of the torus example") {
  const DualComplex d = dual_of(IntMatrix{{2, 0}, {0, 2}});
  CHECK(counts(d.complex) == std::array<std::size_t, 3>{4, 12, 8});
  CHECK(euler_characteristic(d.complex) == 0);
  CHECK(is_closed_surface_with_chi(d.complex, 0));
  CHECK(is_valid_involution(d.complex, d.action));

  const DeltaComplex q = h_quotient(d.complex, d.action);
  CHECK(counts(q) == std::array<std::size_t, 3>{4, 6, 4});
  CHECK(euler_characteristic(q) == 2);
  CHECK(is_sphere_like(q));
}

TEST_CASE("dual complex in rank one") {
  const DualComplex d = dual_of(IntMatrix{{2}});
  CHECK(counts(d.complex) == std::array<std::size_t, 3>{2, 2, 0});
  CHECK(is_cycle(d.complex));
  const DeltaComplex q = h_quotient(d.complex, d.action);
  CHECK(counts(q) == std::array<std::size_t, 3>{2, 1, 0});
  CHECK(is_chain(q));

  const DualComplex d4 = dual_of(IntMatrix{{4}});
  const DeltaComplex q4 = h_quotient(d4.complex, d4.action);
  CHECK(counts(q4) == std::array<std::size_t, 3>{3, 2, 0});
  CHECK(is_chain(q4));
}

TEST_CASE("dual complex in rank zero is a point") {
  const DualComplex d = dual_of(IntMatrix(0, 0));
  CHECK(is_point(d.complex));
  CHECK(euler_characteristic(d.complex) == 1);
  CHECK(is_point(h_quotient(d.complex, d.action)));
}

TEST_CASE("cell and orbit counts agree with direct enumeration") {
  for (oracle::i64 d1 : {2, 4, 6})
    for (oracle::i64 d2 : {2, 4, 6, 10}) {
      const DualComplex d = dual_of(IntMatrix{{d1, 0}, {0, d2}});
      const DeltaComplex q = h_quotient(d.complex, d.action);
      const oracle::CellCensus census = oracle::census_standard_diag(d1, d2);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(static_cast<oracle::i64>(d.complex.count(k)) == census.cells[k]);
        CHECK(static_cast<oracle::i64>(q.count(k)) == census.orbits[k]);
      }
    }
  for (oracle::i64 m = 2; m <= 10; m += 2) {
    const DualComplex d = dual_of(IntMatrix{{m}});
    const DeltaComplex q = h_quotient(d.complex, d.action);
    const oracle::CellCensus census = oracle::census_standard_rank1(m);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(static_cast<oracle::i64>(d.complex.count(k)) == census.cells[k]);
      CHECK(static_cast<oracle::i64>(q.count(k)) == census.orbits[k]);
    }
  }
}

TEST_CASE("quotient vertex counts match the component formula on the test family") {
  std::vector<IntMatrix> family;
  for (int k = 1; k <= 5; ++k) {
    family.push_back(IntMatrix{{2 * k, 0}, {0, 2 * k}});
    family.push_back(IntMatrix{{2 * k}});
  }
  family.push_back(IntMatrix{{2, 0}, {0, 4}});
  family.push_back(IntMatrix{{4, 2}, {2, 4}});
  for (const auto& b : family) {
    const auto data = make_degeneration_data(b);
    const DualComplex d = dual_of(b);
    const DeltaComplex q = h_quotient(d.complex, d.action);
    const ComponentGroup phi = component_group(b);
    const Integer fixed = two_torsion_order(phi);
    CHECK(Integer(q.count(0)) == fixed + (phi.order() - fixed) / 2);
    CHECK(Integer(q.count(0)) == component_counts(data).n_x);
    CHECK(Integer(d.complex.count(0)) == component_counts(data).n_a);
    CHECK(is_valid_involution(d.complex, d.action));
    if (b.rows() == 2) {
      CHECK(is_closed_surface_with_chi(d.complex, 0));
      CHECK(euler_characteristic(q) == 2);
      CHECK(classify_kummer_type(data, q) == KulikovType::III);
    } else {
      CHECK(is_cycle(d.complex));
      CHECK(Integer(d.complex.count(0)) == phi.order());
      CHECK(Integer(q.count(0)) == phi.order() / 2 + 1);
      CHECK(classify_kummer_type(data, q) == KulikovType::II);
    }
  }
}

TEST_CASE("non-diagonal lattices give simplicial sphere quotients") {
  const DualComplex d = dual_of(IntMatrix{{4, 2}, {2, 4}});
  const DeltaComplex q = h_quotient(d.complex, d.action);
  CHECK(euler_characteristic(q) == 2);
  CHECK(is_sphere_like(q));
}

TEST_CASE("involution validity detects broken actions") {
  const DualComplex d = dual_of(IntMatrix{{2, 0}, {0, 2}});
  InvolutionAction bad = d.action;
  std::swap(bad.images[1][0], bad.images[1][1]);
  CHECK_FALSE(is_valid_involution(d.complex, bad));
  InvolutionAction identity = d.action;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < identity.images[k].size(); ++i) identity.images[k][i] = i;
  CHECK(is_valid_involution(d.complex, identity));
}

TEST_CASE("type classification") {
  CHECK(type_from_toric_rank(0) == KulikovType::I);
  CHECK(type_from_toric_rank(1) == KulikovType::II);
  CHECK(type_from_toric_rank(2) == KulikovType::III);
  const auto t0 = make_degeneration_data(IntMatrix(0, 0));
  const DualComplex d0 = dual_of(IntMatrix(0, 0));
  CHECK(classify_kummer_type(t0, h_quotient(d0.complex, d0.action)) == KulikovType::I);
  // The torus itself is not a sphere.
  const auto two = make_degeneration_data(IntMatrix{{2, 0}, {0, 2}});
  const DualComplex d2 = dual_of(IntMatrix{{2, 0}, {0, 2}});
  CHECK(code_of([&] { classify_kummer_type(two, d2.complex); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("dual_complex requires certification") {
  const PeriodicTriangulation t = attach_lattice(standard_triangulation(2), IntMatrix::identity(2));
  const CertifiedFan fan = certify(t);
  CHECK_FALSE(fan.certificates.property_d);
  CHECK(code_of([&] { dual_complex(fan); }) == ErrorCode::UncertifiedFan);
}

TEST_CASE("component counts") {
  const auto two = component_counts(make_degeneration_data(IntMatrix{{2, 0}, {0, 2}}));
  CHECK(two.n_a == 4);
  CHECK(two.n_x == 4);
  const auto four = component_counts(make_degeneration_data(IntMatrix{{4}}));
  CHECK(four.n_a == 4);
  CHECK(four.n_x == 3);
  const auto zero = component_counts(make_degeneration_data(IntMatrix(0, 0)));
  CHECK(zero.n_a == 1);
  CHECK(zero.n_x == 1);
  CHECK(code_of([] { component_counts(make_degeneration_data(IntMatrix{{2, 1}, {1, 2}})); }) == ErrorCode::OddData);
  CHECK(code_of([] {
          component_counts(make_degeneration_data(1, IntMatrix{{1}}, IntMatrix{{2}}, std::vector<Integer>{2}));
        }) == ErrorCode::NotHInvariant);
}

TEST_CASE("closed component formula") {
  for (int k = 1; k <= 6; ++k) {
    const auto r1 = component_counts(make_degeneration_data(IntMatrix{{2 * k}}));
    CHECK(r1.n_x == r1.n_a / 2 + 1);
    const auto r2 = component_counts(make_degeneration_data(IntMatrix{{2 * k, 0}, {0, 2 * (k + 1)}}));
    CHECK(r2.n_x == r2.n_a / 2 + 2);
  }
}

TEST_CASE("base change counts") {
  const auto four = make_degeneration_data(IntMatrix{{4}});
  const auto r = base_change_counts(four, 3);
  CHECK(r.n == 3);
  CHECK(r.n_l == 7);
  CHECK(r.formula_n_l == 7);
  CHECK(r.phi_l_order == 12);

  const auto two = make_degeneration_data(IntMatrix{{2, 0}, {0, 2}});
  const auto r2 = base_change_counts(two, 2);
  CHECK(r2.n == 4);
  CHECK(r2.n_l == 10);
  CHECK(r2.phi_l_order == 16);

  for (int e = 1; e <= 6; ++e) CHECK(base_change_counts(two, e).consistent(2));
  CHECK(base_change_counts(two, 1).n_l == 4);
  CHECK(base_change_formula(0, 1, 5) == 1);
  CHECK(code_of([&] { base_change_counts(two, 0); }) == ErrorCode::InvalidScale);
}
