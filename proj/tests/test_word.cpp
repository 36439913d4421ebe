#include "doctest.h"
#include "test_util.hpp"

#include "locind/word.hpp"

#include <algorithm>
#include <array>
#include <random>

using namespace locind;
using namespace testutil;

namespace {

  std::vector<std::string> sorted_names(std::vector<Generator> const& gs) {
    std::vector<std::string> out;
    for (auto const& g : gs) {
      out.push_back(g.name());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> names(std::vector<Generator> const& gs) {
    std::vector<std::string> out;
    for (auto const& g : gs) {
      out.push_back(g.name());
    }
    return out;
  }

}  // namespace

TEST_SUITE("word") {
  TEST_CASE("free reduction") {
    CHECK(free_reduce(W("a a^-1")).empty());
    CHECK(free_reduce(W("a b b^-1 a")) == W("a a"));
    CHECK(free_reduce(W("a^-1 b^-1 c b^-1 a b")) == W("a^-1 b^-1 c b^-1 a b"));
    CHECK(free_reduce(W("a b c c^-1 b^-1 a^-1")).empty());
  }

  TEST_CASE("cyclic reduction") {
    auto r = cyclic_reduce(W("b^-1 a b"));
    CHECK(r.word == W("a"));
    CHECK(r.offset == 1);
    auto s = cyclic_reduce(W("a^-1 b^-1 c b^-1 a b"));
    CHECK(s.word == W("a^-1 b^-1 c b^-1 a b"));
    CHECK(s.offset == 0);
    CHECK(cyclic_reduce(Word{}).word.empty());
    CHECK(reduce_fully(W("a b b^-1 c a^-1")) == W("c"));
  }

  TEST_CASE("mirror and flips") {
    CHECK(mirror(W("a^-1 b^-1 c b^-1 a b")) == W("a b c^-1 b a^-1 b^-1"));
    CHECK(mirror(Word{}).empty());
    CHECK(mirror(W("a a")) == W("a^-1 a^-1"));
    CHECK(flip_generator(W("a b a^-1"), G("a")) == W("a^-1 b a"));
  }

  TEST_CASE("parse and print") {
    CHECK(to_string(W("a b^-1 c")) == "a b^-1 c");
    CHECK_THROWS(parse_word("a^-2"));
    CHECK(W("a b").total_exponent() == 2);
    CHECK(W("a b a^-1").exponent_sum(G("a")) == 0);
  }

  TEST_CASE("weight sequences") {
    auto ones = Weighting::ones(gens({"a", "b", "c"}));
    CHECK(as_longs(weight_sequence(W("a^-1 b^-1 c b^-1 a b"), ones)) == std::vector<long>{-1, -2, -1, -2, -1, 0});
    CHECK(as_longs(weight_sequence(W("a b c^-1 b b"), weights({{"a", 3}, {"b", 2}, {"c", 9}}))) ==
          std::vector<long>{3, 5, -4, -2, 0});
    CHECK(as_longs(weight_sequence(W("a^-1 b a c^-1 b b c^-1 b"), weights({{"a", 1}, {"b", 2}, {"c", 4}}))) ==
          std::vector<long>{-1, 1, 2, -2, 0, 2, -2, 0});
    CHECK_THROWS_AS(weight_sequence(W("a d"), ones), DomainError);
  }

  TEST_CASE("I-value sequences") {
    auto ones = Weighting::ones(gens({"a", "b", "c"}));
    CHECK(as_longs(i_value_sequence(W("a^-1 c^-1 a a a b^-1 b^-1 c^-1 a b"), ones)) ==
          std::vector<long>{-1, -2, -2, -1, 0, 0, -1, -2, -2, -1});
    CHECK(as_longs(i_value_sequence(W("a"), ones)) == std::vector<long>{0});
    CHECK(as_longs(i_value_sequence(W("a^-1"), ones)) == std::vector<long>{-1});
  }

  TEST_CASE("minima multisets") {
    auto ones3 = Weighting::ones(gens({"a", "b", "c"}));
    auto m     = minima_multiset(W("a^-1 b^-1 c b^-1 a b"), ones3);
    CHECK(names(m.entries) == std::vector<std::string>{"b", "c", "b", "a"});
    CHECK(m.min_value == -2);
    CHECK(m.multiplicity(G("b")) == 2);

    auto pesos = minima_multiset(W("c^-1 b^-1 c^-1 a b c a"), weights({{"a", 1}, {"b", 1}, {"c", 2}}));
    CHECK(sorted_names(pesos.entries) == std::vector<std::string>{"a", "c"});

    auto ones4 = Weighting::ones(gens({"a", "b", "c", "d"}));
    auto main1 = minima_multiset(W("a^-1 c^-1 b^-1 a^-1 b a d c b^-1 d"), ones4);
    CHECK(sorted_names(main1.entries) == std::vector<std::string>{"a", "b"});

    auto weak = minima_multiset(W("a^-1 c^-1 a a a b^-1 b^-1 c^-1 a b"), ones3);
    CHECK(names(weak.entries) == std::vector<std::string>{"c", "a", "c", "a"});
  }

  TEST_CASE("maxima multisets") {
    auto ones3 = Weighting::ones(gens({"a", "b", "c"}));
    CHECK(sorted_names(maxima_multiset(W("a^-1 b^-1 c b^-1 a b"), ones3).entries) ==
          std::vector<std::string>{"a", "b"});
    auto lot = Weighting::ones(gens({"t", "l", "i"}));
    CHECK(sorted_names(maxima_multiset(W("t^-1 l^-1 i l"), lot).entries) == std::vector<std::string>{"l", "t"});
    CHECK(names(maxima_multiset(W("a b"), ones3).entries) == std::vector<std::string>{"b"});
  }

  TEST_CASE("maxima are minima of the mirror") {
    std::mt19937_64 rng(7);
    auto            phi = weights({{"a", 1}, {"b", 2}, {"c", 3}});
    std::array<char const*, 3> letters{"a", "b", "c"};
    for (int trial = 0; trial < 200; ++trial) {
      Word w;
      auto len = 1 + rng() % 10;
      for (std::size_t k = 0; k < len; ++k) {
        w.push_back(Letter(G(letters[rng() % 3]), rng() % 2 ? 1 : -1));
      }
      CHECK(sorted_names(maxima_multiset(w, phi).entries) == sorted_names(minima_multiset(mirror(w), phi).entries));
    }
  }

  TEST_CASE("unique relative minimum") {
    auto phi = weights({{"a", 1}, {"b", 2}, {"c", 4}});
    auto w   = W("a^-1 b a c^-1 b b c^-1 b");
    auto rm  = unique_relative_minimum(w, phi, G("a"));
    REQUIRE(rm.has_value());
    CHECK(rm->value == -1);
    CHECK(rm->prefix_length() == 1);
    CHECK(rm->which == RelativeMinimumCase::NegativeLetter);
    CHECK_FALSE(unique_relative_minimum(w, phi, G("c")).has_value());
    CHECK_FALSE(unique_relative_minimum(W("a b a^-1 b^-1"), weights({{"a", 1}, {"b", 1}, {"c", 1}}), G("c")).has_value());
  }

  TEST_CASE("proper powers") {
    auto p = is_proper_power(W("a b a b"));
    REQUIRE(p.has_value());
    CHECK(p->root == W("a b"));
    CHECK(p->exponent == 2);
    CHECK_FALSE(is_proper_power(W("a^-1 b^-1 c b^-1 a b")).has_value());
    CHECK_FALSE(is_proper_power(W("a")).has_value());
  }

  TEST_CASE("zig-zags") {
    CHECK(is_zigzag(W("l t^-1")));
    CHECK_FALSE(is_zigzag(W("a b")));
    CHECK(is_zigzag(Word{}));
  }

  TEST_CASE("count signatures") {
    auto ones = Weighting::ones(gens({"a", "b", "c"}));
    CHECK(min_count_signature(W("c^-1 b^-1 c b^-1 c a b a^-1 b a^-1"), ones, G("b")) == CountSignature{2, 0});
    CHECK(min_count_signature(W("a^-1 c^-1 a a a b^-1 b^-1 c^-1 a b"), ones, G("a")) == CountSignature{0, 2});
    CHECK(min_count_signature(W("a b"), ones, G("c")) == CountSignature{0, 0});
  }
}
