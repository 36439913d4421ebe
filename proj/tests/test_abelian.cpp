#include "doctest.h"
#include "test_util.hpp"

#include "locind/abelian.hpp"

#include <random>

using namespace locind;
using namespace testutil;

namespace {

  IntMatrix mat(std::size_t r, std::size_t c, std::vector<long> v) {
    std::vector<BigInt> e(v.begin(), v.end());
    return IntMatrix(r, c, e);
  }

  bool contains_phi(std::vector<Weighting> const& list, Weighting const& phi) {
    for (auto const& w : list) {
      if (w == phi) {
        return true;
      }
    }
    return false;
  }

}  // namespace

TEST_SUITE("abelian") {
  TEST_CASE("relation matrices") {
    auto m = relation_matrix(pres("pesos_example.pres"));
    CHECK(m == mat(2, 3, {2, 0, -1, 1, -1, 0}));
    Presentation comm{gens({"a", "b"}), {W("a b a^-1 b^-1")}};
    CHECK(relation_matrix(comm) == mat(1, 2, {0, 0}));
    auto l = relation_matrix(lot_to_presentation(lot("first_lot.lot")));
    for (std::size_t i = 0; i < l.rows(); ++i) {
      BigInt sum = 0;
      for (std::size_t j = 0; j < l.cols(); ++j) {
        sum += l(i, j);
      }
      CHECK(sum == 0);
    }
  }

  TEST_CASE("Smith normal form examples") {
    CHECK(smith_normal_form(IntMatrix::identity(2)).invariant_factors == std::vector<BigInt>{1, 1});
    auto d = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
    CHECK(d.invariant_factors == std::vector<BigInt>{2, 4});
    CHECK(d.U * mat(2, 2, {2, 4, 6, 8}) * d.V == d.D);
    CHECK(smith_normal_form(mat(2, 3, {2, 0, -1, 1, -1, 0})).invariant_factors == std::vector<BigInt>{1, 1});
    CHECK(smith_normal_form(mat(0, 3, {})).rank() == 0);
  }

  TEST_CASE("Smith normal form on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      std::vector<long> v(r * c);
      for (auto& x : v) {
        x = static_cast<long>(rng() % 11) - 5;
      }
      auto m = mat(r, c, v);
      auto s = smith_normal_form(m);
      CHECK(s.U * m * s.V == s.D);
      CHECK(abs(determinant(s.U)) == 1);
      CHECK(abs(determinant(s.V)) == 1);
      for (std::size_t i = 1; i < s.invariant_factors.size(); ++i) {
        CHECK(s.invariant_factors[i] % s.invariant_factors[i - 1] == 0);
      }
    }
  }

  TEST_CASE("first homology") {
    CHECK(h1(pres("pesos_example.pres")) == HomologySummary{1, {}});
    CHECK(h1(pres("torsion.pres")) == HomologySummary{0, {2}});
    CHECK(is_homology_circle(pres("pesos_example.pres")));
    CHECK(is_homology_wedge(pres("weak_example.pres")));
    Presentation comm{gens({"a", "b"}), {W("a b a^-1 b^-1")}};
    CHECK(h1(comm) == HomologySummary{2, {}});
    CHECK_FALSE(is_homology_circle(comm));
    CHECK_FALSE(is_homology_wedge(comm));
  }

  TEST_CASE("surjective weightings") {
    auto p    = pres("pesos_example.pres");
    auto list = enumerate_weightings(p, 3, false);
    CHECK(contains_phi(list, weights({{"a", 1}, {"b", 1}, {"c", 2}})));
    CHECK(is_surjective_weighting(p, weights({{"a", 1}, {"b", 1}, {"c", 2}})));
    CHECK_FALSE(is_surjective_weighting(p, weights({{"a", 1}, {"b", 1}, {"c", 1}})));

    auto m = pres("main_example.pres");
    auto l = enumerate_weightings(m, 2, false);
    REQUIRE_FALSE(l.empty());
    CHECK(l.front() == Weighting::ones(m.generators));

    Presentation trivial{gens({"a"}), {W("a")}};
    CHECK(enumerate_weightings(trivial, 3, false).empty());
  }
}
