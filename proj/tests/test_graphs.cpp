#include "doctest.h"
#include "test_util.hpp"

#include "locind/fuzz.hpp"
#include "locind/graphs.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace locind;
using namespace testutil;

namespace {

  std::set<std::set<std::string>> undirected(LabelledDigraph const& g) {
    std::set<std::set<std::string>> out;
    for (auto const& a : g.arcs) {
      out.insert({a.from.name(), a.to.name()});
    }
    return out;
  }

  std::set<std::string> node_set(Component const& c) {
    std::set<std::string> out;
    for (auto const& n : c.nodes) {
      out.insert(n.name());
    }
    return out;
  }

  std::vector<std::string> node_names(std::vector<Generator> const& gs) {
    std::vector<std::string> out;
    for (auto const& g : gs) {
      out.push_back(g.name());
    }
    return out;
  }

  // Equal as closed walks, up to reversal.
  bool same_cycle(std::vector<std::string> got, std::vector<std::string> want) {
    if (got == want) {
      return true;
    }
    std::reverse(got.begin(), got.end());
    return got == want;
  }

}  // namespace

TEST_SUITE("graphs") {
  TEST_CASE("single edge graphs") {
    Lot  single{gens({"a", "b", "c"}), {{G("a"), G("b"), G("c")}}};
    auto t = t_graph(single);
    auto i = i_graph(single);
    REQUIRE(t.arcs.size() == 1);
    CHECK(t.arcs[0] == Arc{G("a"), G("c"), G("b"), 0});
    REQUIRE(i.arcs.size() == 1);
    CHECK(i.arcs[0] == Arc{G("c"), G("b"), G("a"), 0});
  }

  TEST_CASE("first LOT: T graph") {
    auto first = lot("first_lot.lot");
    auto t     = t_graph(first);
    CHECK(undirected(t) == std::set<std::set<std::string>>{
                               {"a", "1"}, {"d", "1"}, {"b", "0"}, {"e", "d"}, {"c", "1"}, {"f", "1"}, {"a", "c"}, {"a", "2"}});
    CHECK(cyclomatic_number(t) == 1);
    auto cs = enumerate_simple_cycles(t, 100);
    REQUIRE(cs.cycles.size() == 1);
    CHECK(same_cycle(node_names(cycle_nodes(t, cs.cycles[0])), {"1", "a", "c", "1"}));
    CHECK(cyclomatic_number(i_graph(first)) == 1);
  }

  TEST_CASE("last LOT: I graph") {
    auto last = lot("last_lot.lot");
    auto g    = i_graph(last);
    CHECK(cyclomatic_number(g) == 2);
    CHECK(cyclomatic_number(t_graph(last)) == 2);
    auto comps = components(g);
    REQUIRE(comps.size() == 3);
    std::set<std::set<std::string>> sets;
    for (auto const& c : comps) {
      sets.insert(node_set(c));
      CHECK(c.cyclomatic == (c.nodes.size() == 6 ? 2u : 0u));
    }
    CHECK(sets == std::set<std::set<std::string>>{{"b", "d", "1", "e", "a", "f"}, {"0"}, {"2", "c"}});

    auto cs = enumerate_simple_cycles(g, 100);
    REQUIRE(cs.cycles.size() == 2);
    CHECK_FALSE(cs.truncated);
    auto c0 = node_names(cycle_nodes(g, cs.cycles[0]));
    auto c1 = node_names(cycle_nodes(g, cs.cycles[1]));
    CHECK(same_cycle(c0, {"1", "b", "d", "1"}));
    CHECK(same_cycle(c1, {"1", "a", "e", "1"}));
    for (auto const& c : cs.cycles) {
      validate_cycle(g, c);
    }

    // The arc labelled 0 on the first cycle is properly labelled.
    bool found = false;
    for (auto const& a : cs.cycles[0].arcs) {
      if (g.arcs[a.edge].label == G("0")) {
        CHECK(properly_labelled(g, cs.cycles[0], a.edge));
        found = true;
      }
    }
    CHECK(found);

    auto p   = mirror(lot_to_presentation(last));
    auto t   = ciclo_transform(p, g, cs.cycles[0], cs.cycles[0].arcs[0].edge);
    auto rel = t.presentation.relators[g.arcs[cs.cycles[0].arcs[0].edge].source];
    CHECK(rel.size() == 6);
    CHECK(is_zigzag(rel));
    CHECK(rel.support().count(G("0")) == 1);
  }

  TEST_CASE("trees have no cycles") {
    Lot  path{gens({"a", "b", "c"}), {{G("a"), G("b"), G("c")}, {G("b"), G("c"), G("a")}}};
    auto t = t_graph(path);
    CHECK(cyclomatic_number(t) == 0);
    CHECK(enumerate_simple_cycles(t, 100).cycles.empty());
  }

  TEST_CASE("proper labelling on hand-built cycles") {
    LabelledDigraph g;
    g.nodes = gens({"x", "y", "z", "w"});
    g.arcs  = {{G("x"), G("y"), G("z"), 0}, {G("x"), G("y"), G("z"), 1}};
    Cycle same{{{0, true}, {1, false}}};
    validate_cycle(g, same);
    CHECK_FALSE(properly_labelled(g, same, 0));

    g.arcs[1].label = G("w");
    CHECK(properly_labelled(g, same, 0));
    CHECK_THROWS_AS(properly_labelled(g, same, 5), InvalidInput);
  }

  TEST_CASE("base label on the cycle is rejected") {
    // I-graph arcs lambda -> t labelled i, relators t^-1 lambda^-1 i lambda.
    LabelledDigraph g;
    g.nodes = gens({"x", "y", "z"});
    g.arcs  = {{G("x"), G("y"), G("y"), 0}, {G("y"), G("x"), G("z"), 1}};
    Presentation p{gens({"x", "y", "z"}), {W("y^-1 x^-1 y x"), W("x^-1 y^-1 z y")}};
    Cycle        c{{{0, true}, {1, true}}};
    CHECK_THROWS(ciclo_transform(p, g, c, 0));
  }

  TEST_CASE("Ciclos") {
    auto first = lot("first_lot.lot");
    auto r     = check_ciclos(first);
    REQUIRE(r);
    auto const& w = *r.certificate->graph;
    CHECK(w.side == 'T');
    CHECK(w.cyclomatic == 1);
    REQUIRE(w.removed_edge.has_value());
    auto t  = t_graph(first);
    auto cs = enumerate_simple_cycles(t, 100);
    bool on = false;
    for (auto const& a : cs.cycles[0].arcs) {
      on = on || a.edge == *w.removed_edge;
    }
    CHECK(on);
    CHECK(verify_lot_certificate(first, *r.certificate));
    CHECK_FALSE(check_ciclos(lot("last_lot.lot")));
  }

  TEST_CASE("Ciclos on forests") {
    std::mt19937_64 rng(3);
    int             forests = 0;
    for (int trial = 0; trial < 400 && forests < 25; ++trial) {
      auto l = random_lot(5, rng);
      if (!lot_is_reduced(l) || cyclomatic_number(t_graph(l)) != 0) {
        continue;
      }
      ++forests;
      auto r = check_ciclos(l);
      REQUIRE(r);
      CHECK(verify_lot_certificate(l, *r.certificate));
    }
    CHECK(forests > 0);
  }

  TEST_CASE("Ciclosetiq") {
    auto last = lot("last_lot.lot");
    auto r    = check_ciclosetiq(last);
    REQUIRE(r);
    auto const& w = *r.certificate->graph;
    CHECK(w.side == 'I');
    REQUIRE(w.assignments.size() == 2);
    std::set<std::string> labels;
    for (auto const& a : w.assignments) {
      labels.insert(a.label.name());
    }
    CHECK(labels == std::set<std::string>{"0", "2"});
    REQUIRE(r.certificate->inner);
    CHECK(r.certificate->inner->method == Method::Weak);
    CHECK(verify_lot_certificate(last, *r.certificate));

    // Both sides of the first LOT have a single nontrivial component and no
    // tree components to pair with it.
    CHECK_FALSE(check_ciclosetiq(lot("first_lot.lot")));
  }

  TEST_CASE("Adian graphs and checker") {
    auto p      = parse_adian(read_data("adian_example.adian"));
    auto [t, i] = adian_graphs(p);
    CHECK(undirected(t) == std::set<std::set<std::string>>{{"a", "c"}, {"b", "a"}});
    CHECK(undirected(i) == std::set<std::set<std::string>>{{"b", "a"}, {"c", "b"}});
    auto r = check_adian(p);
    REQUIRE(r);
    CHECK(verify_adian_certificate(p, *r.certificate));

    auto weighted = parse_adian(read_data("adian_weighted.adian"));
    auto rw       = check_adian(weighted);
    REQUIRE(rw);
    CHECK(verify_adian_certificate(weighted, *rw.certificate));

    auto one = parse_adian("gens: a b\na b a = b a b\n");
    auto ro  = check_adian(one);
    REQUIRE(ro);
    CHECK(verify_adian_certificate(one, *ro.certificate));
    auto pres1 = adian_to_presentation(one);
    auto r1    = check_one_relator(pres1);
    REQUIRE(r1);
    CHECK(verify_presentation_certificate(pres1, *r1.certificate));

    auto cyclic = parse_adian("gens: a b c\na b = b a\nb c = c b\nc a = a c\nb a = a b\n");
    CHECK_FALSE(check_adian(cyclic));
  }

  TEST_CASE("LOT as Adian has the LOT edge set") {
    auto first = lot("first_lot.lot");
    AdianPresentation a;
    a.generators = first.vertices;
    for (auto const& e : first.edges) {
      Word u, v;
      u.push_back(Letter(e.label, 1));
      u.push_back(Letter(e.initial, 1));
      v.push_back(Letter(e.terminal, 1));
      v.push_back(Letter(e.label, 1));
      a.relations.push_back({u, v});
    }
    auto [t, i] = adian_graphs(a);
    std::set<std::set<std::string>> want;
    for (auto const& e : first.edges) {
      want.insert({e.label.name(), e.initial.name()});
    }
    CHECK(undirected(i) == want);
    CHECK(undirected(i) == undirected(t_graph(first)));
  }

  TEST_CASE("DOT and text output") {
    auto g   = i_graph(lot("last_lot.lot"));
    auto dot = to_dot(g, "I");
    CHECK(dot.find("digraph") != std::string::npos);
    std::multiset<std::pair<std::size_t, std::string>> comps;
    std::istringstream lines(dot);
    for (std::string line; std::getline(lines, line);) {
      auto at = line.find("// component ");
      if (at == std::string::npos) {
        continue;
      }
      std::istringstream words(line.substr(line.find(':') + 1));
      std::size_t        count = 0;
      std::string        word, cyc;
      while (words >> word && word != "cyclomatic") {
        ++count;
      }
      words >> cyc;
      comps.insert({count, cyc});
    }
    CHECK(comps == std::multiset<std::pair<std::size_t, std::string>>{{6, "2"}, {2, "0"}, {1, "0"}});
    CHECK(to_text(g, "I").find("cyclomatic number 2") != std::string::npos);
  }
}
