#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "wordser/coeffmap.hpp"

using namespace wordser;
using wordser::testing::Rng;
using GR = GaussianRational;
using Map = CoeffMap<GR>;

TEST_CASE("convolution unit") {
  Rng rng(11);
  Map d = testing::random_map(rng, 2, 3);
  REQUIRE(convolve(Map::unit(2, 3), d) == d);
  REQUIRE(convolve(d, Map::unit(2, 3)) == d);
}

TEST_CASE("convolution follows the deconcatenation formula on two-letter words") {
  Rng rng(12);
  Map d = testing::random_map(rng, 2, 2);
  Map d2 = testing::random_map(rng, 2, 2);
  Map p = convolve(d, d2);
  for (Letter l1 = 0; l1 < 2; ++l1) {
    for (Letter l2 = 0; l2 < 2; ++l2) {
      Word w({l1, l2});
      GR expect = d.empty_word() * d2.at(w) + d.at(Word{l1}) * d2.at(Word{l2}) +
                  d.at(w) * d2.empty_word();
      REQUIRE(p.at(w) == expect);
    }
  }
  REQUIRE(p.empty_word() == d.empty_word() * d2.empty_word());
}

TEST_CASE("convolution is associative on random exact inputs") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Map a = testing::random_map(rng, 2, 3);
    Map b = testing::random_map(rng, 2, 3);
    Map c = testing::random_map(rng, 2, 3);
    REQUIRE(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
  }
}

TEST_CASE("convolution rejects alphabet mismatch") {
  REQUIRE_THROWS_AS(convolve(Map::unit(2, 3), Map::unit(3, 3)), ConfigError);
}

TEST_CASE("binary operations truncate to the smaller order") {
  Rng rng(14);
  Map a = testing::random_map(rng, 2, 4);
  Map b = testing::random_map(rng, 2, 2);
  REQUIRE(convolve(a, b).order() == 2);
}

TEST_CASE("inverse of the unit is the unit") {
  REQUIRE(star_inverse(Map::unit(2, 4)) == Map::unit(2, 4));
}

TEST_CASE("inverse of 1 + c*a is the geometric series") {
  GR c(Rational(3, 2), Rational(-1, 4));
  Map g(1, 5);
  g.at(Word{}) = GR(1);
  g.at(Word{0}) = c;
  Map h = star_inverse(g);
  GR expect(1);
  for (int n = 1; n <= 5; ++n) {
    expect = expect * (-c);
    REQUIRE(h.at(Word(std::vector<Letter>(static_cast<std::size_t>(n), 0))) == expect);
  }
  REQUIRE(convolve(g, h) == Map::unit(1, 5));
}

TEST_CASE("characters invert exactly") {
  Rng rng(15);
  Map g = testing::random_character(rng, 2, 4);
  REQUIRE(convolve(g, star_inverse(g)) == Map::unit(2, 4));
  REQUIRE(convolve(star_inverse(g), g) == Map::unit(2, 4));
}

TEST_CASE("maps vanishing on the empty word are not invertible") {
  Map g(2, 2);
  g.at(Word{0}) = GR(1);
  REQUIRE_THROWS_AS(star_inverse(g), ConfigError);
}

TEST_CASE("the unit is a character") { REQUIRE(is_character(Map::unit(2, 4))); }

TEST_CASE("a single-letter map is infinitesimal") {
  Map b(2, 3);
  b.at(Word{0}) = GR(1);
  auto chk = check_infinitesimal(b);
  REQUIRE(chk.ok);
  // the order-2 relation behind it: values at ab and ba cancel
  REQUIRE(b.at(Word({0, 1})) + b.at(Word({1, 0})) == GR(0));
}

TEST_CASE("shuffle relation count matches the pair count") {
  // ordered pairs of nonempty words over two letters with combined length <= 4
  auto chk = check_character(Map::unit(2, 4));
  REQUIRE(chk.relations_checked == 68);
}

TEST_CASE("exponentials of infinitesimals are characters, and back") {
  Rng rng(16);
  for (int trial = 0; trial < 5; ++trial) {
    Map b = testing::random_infinitesimal(rng, 2, 4);
    REQUIRE(check_infinitesimal(b).ok);
    Map g = exp_star(b);
    REQUIRE(check_character(g).ok);
    REQUIRE(log_star(g) == b);
  }
}

TEST_CASE("character group is closed under product and inverse") {
  Rng rng(17);
  Map g1 = testing::random_character(rng, 2, 4);
  Map g2 = testing::random_character(rng, 2, 4);
  REQUIRE(is_character(convolve(g1, g2)));
  REQUIRE(is_character(star_inverse(g1)));
}

TEST_CASE("exp_star of zero is the unit") {
  REQUIRE(exp_star(Map(2, 4)) == Map::unit(2, 4));
}

TEST_CASE("exp_star on a single-letter support gives powers over factorials") {
  GR c(Rational(3, 2));
  Map b(1, 5);
  b.at(Word{0}) = c;
  Map g = exp_star(b);
  GR pw(1), fact(1);
  for (int n = 1; n <= 5; ++n) {
    pw = pw * c;
    fact = fact * GR(n);
    REQUIRE(g.at(Word(std::vector<Letter>(static_cast<std::size_t>(n), 0))) == pw / fact);
  }
}

TEST_CASE("exp and log check their preconditions") {
  Rng rng(18);
  Map m = testing::random_map(rng, 2, 3);
  m.at(Word{}) = GR(Rational(1, 2));
  REQUIRE_THROWS_AS(exp_star(m), ConfigError);
  REQUIRE_THROWS_AS(log_star(m), ConfigError);
}

TEST_CASE("bracket is alternating and antisymmetric") {
  Rng rng(19);
  Map b1 = testing::random_infinitesimal(rng, 2, 4);
  Map b2 = testing::random_infinitesimal(rng, 2, 4);
  REQUIRE(is_zero_map(bracket(b1, b1)));
  REQUIRE(is_zero_map(bracket(b1, b2) + bracket(b2, b1)));
}

TEST_CASE("bracket satisfies the Jacobi identity and closes on infinitesimals") {
  Rng rng(20);
  Map a = testing::random_infinitesimal(rng, 2, 4);
  Map b = testing::random_infinitesimal(rng, 2, 4);
  Map c = testing::random_infinitesimal(rng, 2, 4);
  Map jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  REQUIRE(is_zero_map(jac));
  REQUIRE(check_infinitesimal(bracket(a, b)).ok);
}

TEST_CASE("dynkin expansion divides by the word length") {
  Map b(2, 2);
  b.at(Word{0}) = GR(2);
  b.at(Word({0, 1})) = GR(1);
  auto terms = dynkin_expansion(b);
  REQUIRE(terms.size() == b.size() - 1);
  for (const auto& [w, coef] : terms) {
    if (w == Word{0}) REQUIRE(coef == GR(2));
    if (w == Word({0, 1})) REQUIRE(coef == GR(Rational(1, 2)));
  }
}
