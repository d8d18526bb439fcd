#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "kulikov/monodromy.hpp"
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

RationalOperator elementary(std::size_t n, std::size_t i, std::size_t j) {
  RationalOperator m(n, n);
  m(i, j) = 1;
  return m;
}

RationalOperator id4() { return RationalOperator::identity(4); }

std::size_t wedge_index(std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < kWedgeBasis.size(); ++k)
    if (kWedgeBasis[k] == std::pair{i, j}) return k;
  FAIL("bad wedge pair");
  return 0;
}

std::vector<Rational> column(const RationalOperator& m, std::size_t j) {
  std::vector<Rational> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

std::vector<Rational> unit6(std::initializer_list<std::pair<std::size_t, int>> terms) {
  std::vector<Rational> v(6);
  for (const auto& [k, c] : terms) v[k] = c;
  return v;
}

}  // namespace

TEST_CASE("log of unipotent operators") {
  CHECK(log_unipotent(id4()).is_zero());
  const RationalOperator e12 = elementary(4, 0, 1);
  CHECK(log_unipotent(id4() + e12) == e12);
  CHECK(code_of([] { log_unipotent(-RationalOperator::identity(4)); }) == ErrorCode::NotUnipotent);
  CHECK(code_of([] { exp_nilpotent(RationalOperator::identity(4)); }) == ErrorCode::NotNilpotent);
}

TEST_CASE("characteristic polynomial") {
  // x^4 - 1 for the 4-cycle
  RationalOperator c(4, 4);
  for (std::size_t i = 0; i < 4; ++i) c((i + 1) % 4, i) = 1;
  CHECK(characteristic_polynomial(c) == std::vector<Rational>{-1, 0, 0, 0, 1});
  CHECK(is_unipotent(id4() + elementary(4, 0, 3)));
  CHECK_FALSE(is_unipotent(c));
  CHECK(is_nilpotent(elementary(4, 1, 2)));
  CHECK_FALSE(is_nilpotent(c));
}

TEST_CASE("standard N") {
  CHECK(standard_N(0).is_zero());
  const RationalOperator n1 = standard_N(1);
  CHECK(n1 == elementary(4, 0, 1));
  const RationalOperator n2 = standard_N(2);
  CHECK(n2 == elementary(4, 0, 1) + elementary(4, 2, 3));
  CHECK((n2 * n2).is_zero());
}

TEST_CASE("monodromy on H^2") {
  const KummerMonodromy z = kummer_monodromy(standard_N(0));
  CHECK(z.dense().is_zero());
  CHECK(z.dense().rows() == 22);

  const RationalOperator w1 = kummer_monodromy(standard_N(1)).wedge_block;
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kWedgeBasis[k];
    std::vector<Rational> expected(6);
    if (i == 1 && j == 2) expected = unit6({{wedge_index(0, 2), 1}});
    if (i == 1 && j == 3) expected = unit6({{wedge_index(0, 3), 1}});
    CHECK(column(w1, k) == expected);
  }

  const RationalOperator w2 = kummer_monodromy(standard_N(2)).wedge_block;
  const std::size_t e24 = wedge_index(1, 3);
  CHECK(column(w2, e24) == unit6({{wedge_index(0, 3), 1}, {wedge_index(1, 2), 1}}));
  CHECK(column(w2 * w2, e24) == unit6({{wedge_index(0, 2), 2}}));

  RationalOperator sq(4, 4);
  sq(0, 1) = 1;
  sq(1, 2) = 1;
  CHECK(code_of([&] { kummer_monodromy(sq); }) == ErrorCode::BadSquare);
  CHECK(code_of([] { kummer_monodromy(RationalOperator::identity(4)); }) == ErrorCode::NotNilpotent);
}

TEST_CASE("nilpotency indices and types") {
  CHECK(nilpotency_index(RationalOperator(3, 3)) == 1);
  CHECK(nilpotency_index(kummer_monodromy(standard_N(0))) == 1);
  CHECK(nilpotency_index(kummer_monodromy(standard_N(1))) == 2);
  CHECK(nilpotency_index(kummer_monodromy(standard_N(2))) == 3);
  CHECK(type_from_index(1) == KulikovType::I);
  CHECK(type_from_index(2) == KulikovType::II);
  CHECK(type_from_index(3) == KulikovType::III);
  CHECK(code_of([] { type_from_index(4); }) == ErrorCode::InvalidIndex);
  CHECK(code_of([] { type_from_index(0); }) == ErrorCode::InvalidIndex);
}

TEST_CASE("toric rank from N") {
  CHECK(toric_rank_from_N(RationalOperator(4, 4)) == 0);
  CHECK(toric_rank_from_N(standard_N(1)) == 1);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [g, g_inv] = oracle::random_unimodular(rng);
    CHECK(toric_rank_from_N(g * standard_N(2) * g_inv) == 2);
    CHECK(toric_rank_from_N(g * standard_N(1) * g_inv) == 1);
  }
}

TEST_CASE("wedge squares") {
  CHECK(wedge_square(id4()) == RationalOperator::identity(6));
  CHECK(wedge_square(-id4()) == RationalOperator::identity(6));
  CHECK(wedge_square(RationalOperator::diagonal({1, 1, 1, 2})) == RationalOperator::diagonal({1, 1, 2, 1, 2, 2}));
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [f, f_inv] = oracle::random_unimodular(rng);
    const auto [g, g_inv] = oracle::random_unimodular(rng);
    CHECK(wedge_square(f * g) == wedge_square(f) * wedge_square(g));
    CHECK(wedge_square(f) * wedge_square(f_inv) == RationalOperator::identity(6));
  }
}

TEST_CASE("sign recovery") {
  CHECK(unipotent_or_negative(id4()) == 1);
  CHECK(unipotent_or_negative(-id4()) == -1);
  CHECK(unipotent_or_negative(-(id4() + elementary(4, 0, 1))) == -1);
  CHECK(code_of([] { unipotent_or_negative(RationalOperator::diagonal({1, 1, 1, 2})); }) ==
        ErrorCode::HypothesisFailed);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int s = trial % 2 == 0 ? 1 : -1;
    const RationalOperator u = id4() + oracle::random_strictly_upper(rng, false);
    const auto [g, g_inv] = oracle::random_unimodular(rng);
    CHECK(unipotent_or_negative(Rational(s) * (g * u * g_inv)) == s);
  }
}

TEST_CASE("quadratic twist character") {
  CHECK(quadratic_twist_character({id4(), -id4()}) == std::vector<int>{1, -1});
  CHECK(quadratic_twist_character({-(id4() + elementary(4, 0, 1))}) == std::vector<int>{-1});
  CHECK(quadratic_twist_character({id4() + elementary(4, 0, 1)}) == std::vector<int>{1});
  const RationalOperator a = -(id4() + elementary(4, 0, 1));
  const RationalOperator b = -(id4() + elementary(4, 2, 3));
  CHECK(quadratic_twist_character({a, b}, {{0, 1, a * b}}) == std::vector<int>{-1, -1});
  CHECK(code_of([&] { quadratic_twist_character({a, b}, {{0, 1, -(a * b)}}); }) == ErrorCode::NotMultiplicative);
}

TEST_CASE("two-torsion permutations") {
  CHECK(two_torsion_trivial(TwoTorsionPermutation::identity()));
  std::vector<int> swap(16);
  for (int i = 0; i < 16; ++i) swap[static_cast<std::size_t>(i)] = i + 1;
  std::swap(swap[0], swap[1]);
  CHECK_FALSE(two_torsion_trivial(TwoTorsionPermutation(swap)));
  std::vector<int> cycle(16);
  for (int i = 0; i < 16; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % 16 + 1;
  CHECK_FALSE(two_torsion_trivial(TwoTorsionPermutation(cycle)));
  CHECK(code_of([] { TwoTorsionPermutation(std::vector<int>(16, 1)); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { TwoTorsionPermutation(std::vector<int>(15, 1)); }) == ErrorCode::InvalidInput);
}

TEST_CASE("exp and log are inverse on unipotent operators") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [g, g_inv] = oracle::random_unimodular(rng);
    const RationalOperator sigma = g * (id4() + oracle::random_strictly_upper(rng, true)) * g_inv;
    REQUIRE(exp_nilpotent(log_unipotent(sigma)) == sigma);
  }
}

TEST_CASE("derivation rule on wedge squares") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    // Square-zero: maps span(e3, e4) into span(e1, e2) and kills e1, e2.
    RationalOperator block(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 2; j < 4; ++j) block(i, j) = coeff(rng);
    const auto [g, g_inv] = oracle::random_unimodular(rng);
    const RationalOperator n = g * block * g_inv;
    REQUIRE((n * n).is_zero());
    REQUIRE(log_unipotent(wedge_square(exp_nilpotent(n))) == wedge_derivation(n));
    REQUIRE(kummer_monodromy(n).wedge_block == wedge_derivation(n));
  }
}

TEST_CASE("nilpotency index is conjugation invariant") {
  std::mt19937_64 rng(41);
  for (std::size_t t = 0; t <= 2; ++t)
    for (int trial = 0; trial < 20; ++trial) {
      const auto [g, g_inv] = oracle::random_unimodular(rng);
      CHECK(nilpotency_index(kummer_monodromy(g * standard_N(t) * g_inv)) == t + 1);
    }
}

TEST_CASE("wedge square identity forces plus or minus identity") {
  const auto found = oracle::wedge_identity_search(2);
  REQUIRE(found.size() == 2);
  for (const auto& f : found) {
    RationalOperator m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = f[i][j];
    CHECK(wedge_square(m) == RationalOperator::identity(6));
    CHECK((m == id4() || m == -id4()));
  }
}
