#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "wordser/word.hpp"

using namespace wordser;

namespace {

// Independent interleaving oracle: pick the slots of the first word among all
// n+m positions by bitmask instead of recursing.
std::vector<Word> shuffle_by_subsets(const Word& a, const Word& b) {
  const std::size_t n = a.size(), m = b.size(), total = n + m;
  std::vector<Word> out;
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    std::vector<Letter> ls;
    std::size_t ia = 0, ib = 0;
    for (std::size_t pos = 0; pos < total; ++pos)
      ls.push_back((mask >> pos) & 1u ? a[ia++] : b[ib++]);
    out.emplace_back(std::move(ls));
  }
  return out;
}

std::vector<Word> sorted(std::vector<Word> ws) {
  std::sort(ws.begin(), ws.end());
  return ws;
}

}  // namespace

TEST_CASE("word indexer enumerates in length-then-lex order") {
  WordIndexer idx(3, 4);
  REQUIRE(idx.count() == 1 + 3 + 9 + 27 + 81);
  Word prev = idx.word(0);
  REQUIRE(prev.empty());
  for (std::size_t i = 1; i < idx.count(); ++i) {
    Word w = idx.word(i);
    REQUIRE(prev < w);
    REQUIRE(idx.index(w) == i);
    prev = w;
  }
}

TEST_CASE("word indexer handles one-letter alphabets") {
  WordIndexer idx(1, 5);
  REQUIRE(idx.count() == 6);
  REQUIRE(idx.word(5) == Word({0, 0, 0, 0, 0}));
  REQUIRE(idx.index(Word({0, 0, 0})) == 3);
}

TEST_CASE("word table cap is enforced") {
  REQUIRE_THROWS_AS(WordIndexer(100, 3), TruncationError);  // 1 + 100 + 1e4 + 1e6 words
}

TEST_CASE("shuffle of the empty word is the identity") {
  Word ab({0, 1});
  auto s = shuffle(Word{}, ab, 4);
  REQUIRE(s == std::vector<Word>{ab});
}

TEST_CASE("shuffle of two letters") {
  auto s = sorted(shuffle(Word{0}, Word{1}, 4));
  REQUIRE(s == sorted({Word({0, 1}), Word({1, 0})}));
}

TEST_CASE("shuffle of ab with c") {
  Letter a = 0, b = 1, c = 2;
  auto s = sorted(shuffle(Word({a, b}), Word{c}, 4));
  REQUIRE(s == sorted({Word({a, b, c}), Word({a, c, b}), Word({c, a, b})}));
}

TEST_CASE("shuffle matches the subset oracle and the binomial count") {
  WordIndexer idx(2, 3);
  for (std::size_t i = 0; i < idx.count(); ++i) {
    for (std::size_t j = 0; j < idx.count(); ++j) {
      Word a = idx.word(i), b = idx.word(j);
      if (a.size() + b.size() > 6) continue;
      auto got = sorted(shuffle(a, b, 6));
      REQUIRE(got == sorted(shuffle_by_subsets(a, b)));
      std::size_t n = a.size() + b.size(), k = a.size(), binom = 1;
      for (std::size_t t = 1; t <= k; ++t) binom = binom * (n - k + t) / t;
      REQUIRE(got.size() == binom);
    }
  }
}

TEST_CASE("shuffle past the truncation order is rejected") {
  REQUIRE_THROWS_AS(shuffle(Word({0, 1}), Word({0, 1, 1}), 4), TruncationError);
}
