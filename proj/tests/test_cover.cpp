#include "doctest.h"
#include "test_util.hpp"

#include "locind/cover.hpp"
#include "locind/criteria.hpp"
#include "locind/graphs.hpp"

#include <map>

using namespace locind;
using namespace testutil;

namespace {

  std::map<std::string, std::vector<long>> cells_by_generator(CoverComplex const& c) {
    std::map<std::string, std::vector<long>> out;
    for (auto const& cell : c.one_cells) {
      out[cell.gen.name()].push_back(cell.base);
    }
    return out;
  }

  CoverPath shifted(CoverPath p, long by) {
    p.start += by;
    for (auto& s : p.steps) {
      s.cell.base += by;
    }
    return p;
  }

  RewriteSystem main_system() {
    auto p = pres("main_example.pres");
    return rewrite_system(p, *check_main(p).certificate);
  }

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("lifts") {
    auto ones = Weighting::ones(gens({"a", "b"}));
    auto up   = lift(W("a b"), ones, 0);
    CHECK(up.start == 0);
    CHECK(up.steps == std::vector<PathStep>{{{G("a"), 0}, 1}, {{G("b"), 1}, 1}});
    auto down = lift(W("a^-1"), ones, 3);
    CHECK(down.start == 4);
    CHECK(down.steps == std::vector<PathStep>{{{G("a"), 3}, -1}});
    CHECK(path_minimum(down, ones) == 3);
    CHECK(path_maximum(down, ones) == 4);
  }

  TEST_CASE("slab census") {
    auto p = pres("pesos_example.pres");
    auto c = build_cover_slab(p, weights({{"a", 1}, {"b", 1}, {"c", 2}}), 0, 4);
    auto m = cells_by_generator(c);
    CHECK(m["a"] == std::vector<long>{0, 1, 2, 3});
    CHECK(m["b"] == std::vector<long>{0, 1, 2, 3});
    CHECK(m["c"] == std::vector<long>{0, 1, 2});
    CHECK(c.vertex_count() == 5);

    auto e = build_cover_slab(p, weights({{"a", 1}, {"b", 1}, {"c", 2}}), 0, 0);
    CHECK(e.vertex_count() == 1);
    CHECK(e.one_cells.empty());
    CHECK(e.two_cells.empty());
    CHECK(e.euler_characteristic() == 1);

    CHECK_THROWS_AS(build_cover_slab(p, weights({{"a", 1}, {"b", 1}, {"c", 2}}), 3, 1), InvalidInput);
    CHECK_THROWS_AS(build_cover_slab(p, weights({{"a", 1}, {"b", 1}, {"c", 1}}), 0, 4), InvalidInput);
    CHECK(census_table(c).find("c") != std::string::npos);
  }

  TEST_CASE("one-cell census formula") {
    auto p   = pres("pesos_example.pres");
    auto phi = weights({{"a", 1}, {"b", 1}, {"c", 2}});
    for (long n = 2; n < 9; ++n) {
      auto m = cells_by_generator(build_cover_slab(p, phi, 0, n));
      CHECK(m["a"].size() == static_cast<std::size_t>(n));
      CHECK(m["c"].size() == static_cast<std::size_t>(n - 1));
    }
  }

  TEST_CASE("rewrite system and first round") {
    auto sys = main_system();
    CHECK(sys.order == std::vector<std::size_t>{0, 1});
    CHECK(sys.s == 2);
    CHECK(iterated_rewrite(sys, 0, 0) == lift(sys.presentation.relators[sys.s], sys.phi, 0));
    auto first = iterated_rewrite(sys, 0, 1);
    for (auto const& step : first.steps) {
      for (auto const& a : sys.witnesses) {
        CHECK_FALSE(step.cell == CoverCell{a, 0});
      }
    }
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(iterated_rewrite(sys, 1, j) == shifted(iterated_rewrite(sys, 0, j), 1));
    }
    auto p = lot("first_lot.lot");
    CHECK_THROWS_AS(rewrite_system(lot_to_presentation(p), *check_ciclos(p).certificate), InvalidInput);
  }

  TEST_CASE("alpha sequence") {
    auto sys = main_system();
    auto rep = alpha_sequence(sys, 8);
    CHECK(rep.alphas.size() == 8);
    CHECK(rep.bound == sys.rho + sys.sigma + 1);
    CHECK(rep.non_decreasing);
    CHECK(rep.within_bound);
    CHECK(rep.stabilized_at.has_value());

    auto p  = pres("pesos_example.pres");
    auto ps = rewrite_system(p, *check_pesos(p, std::nullopt).certificate);
    auto pr = alpha_sequence(ps, 8);
    CHECK(pr.bound == ps.rho + ps.sigma + ps.max_phi);
    CHECK(pr.non_decreasing);
    CHECK(pr.within_bound);
  }

  TEST_CASE("alpha is constant when s avoids the witnesses") {
    Presentation p{gens({"a", "b", "c"}), {W("a^-1 b"), W("c^-1 b")}};
    auto         r = check_main(p);
    REQUIRE(r);
    auto sys = rewrite_system(p, *r.certificate);
    auto rep = alpha_sequence(sys, 6);
    for (auto a : rep.alphas) {
      CHECK(a == rep.alphas.front());
    }
    CHECK(rep.stabilized_at == std::size_t{1});
  }

  TEST_CASE("alpha stops at the length cap") {
    auto rep = alpha_sequence(main_system(), 30, 2000);
    CHECK(rep.length_capped);
    CHECK(rep.alphas.size() < 30);
    CHECK(rep.requested == 30);
  }

  TEST_CASE("Euler characteristic of the proof slab") {
    auto sys = main_system();
    auto g   = static_cast<long>(sys.presentation.generators.size());
    for (long n : {0L, 1L, 3L}) {
      auto c = build_cover_slab(sys.presentation, sys.phi, 0, n + sys.rho + sys.sigma);
      CHECK(c.euler_characteristic() == predicted_euler_characteristic(sys));
      CHECK(c.one_cells.size() == static_cast<std::size_t>(g * (n + sys.rho + sys.sigma)));
    }
  }

  TEST_CASE("homological reductions") {
    auto forest = parse_lot("verts: a b c\na c b\nb a c\n");
    auto p      = lot_to_presentation(forest);
    auto c      = build_cover_slab(p, Weighting::ones(p.generators), 0, 8);
    auto t      = homological_reduce(c);
    CHECK(t.remaining_two_cells == 0);
    CHECK(replay_reduction(c, t));
    CHECK(trace_to_json(c, t).find("steps") != std::string::npos);

    auto broken = t;
    REQUIRE_FALSE(broken.steps.empty());
    std::swap(broken.steps.front(), broken.steps.back());
    broken.steps.push_back(broken.steps.front());
    CHECK_FALSE(replay_reduction(c, broken));

    // Commutator: the a-cell is balanced, the two b-cells are not.
    Presentation comm{gens({"a", "b"}), {W("a b a^-1 b^-1")}};
    auto         cc = build_cover_slab(comm, weights({{"a", 1}, {"b", 0}}), 0, 1);
    REQUIRE(cc.two_cells.size() == 1);
    CHECK(signed_counts(cc.two_cells[0], CoverCell{G("a"), 0}) == std::pair<std::size_t, std::size_t>{1, 1});
    auto ct = homological_reduce(cc);
    REQUIRE(ct.steps.size() == 1);
    CHECK(ct.steps[0].one_cell.gen == G("b"));
  }

  TEST_CASE("weak example cells reduce through their witnesses") {
    auto p   = pres("weak_example.pres");
    auto phi = Weighting::ones(p.generators);
    auto c   = build_cover_slab(p, phi, 0, 8);
    std::map<std::size_t, Generator> witness{{0, G("a")}, {1, G("b")}};
    REQUIRE_FALSE(c.two_cells.empty());
    for (auto const& t : c.two_cells) {
      auto [pos, neg] = signed_counts(t, CoverCell{witness[t.relator], t.base});
      CHECK(pos != neg);
    }
  }

  TEST_CASE("forbidden factorizations") {
    CHECK_FALSE(techlemma_search(W("a b a^-1 b^-1"), 1, 3).has_value());
    auto f = techlemma_search(W("a b a^-1 b^-1"), 1, 3, true);
    REQUIRE(f.has_value());
    CHECK(free_reduce(factorization_product(*f)) == W("a b a^-1 b^-1"));
    CHECK_THROWS_AS(techlemma_search(W("a a^-1"), 1, 3), DomainError);

    auto s = W("b a b^-1 b^-1 a b a^-1 a^-1");
    auto g = techlemma_search(s, 1, 2);
    REQUIRE(g.has_value());
    CHECK(free_reduce(factorization_product(*g)) == s);
    CHECK(g->w[0].total_exponent() == 1);
    CHECK(g->w[1].total_exponent() >= 1);
    CHECK_THROWS_AS(techlemma_search(W("a b"), 1, 3), DomainError);
  }
}
