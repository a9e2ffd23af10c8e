#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wordser/errors.hpp"

namespace wordser {

// Letters are indices into the model's alphabet; payloads (integer vectors,
// frequencies) live in the model, not here.
using Letter = int;

// A finite sequence of letters. Empty word allowed.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> ls) : ls_(std::move(ls)) {}
  Word(std::initializer_list<Letter> ls) : ls_(ls) {}

  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  Letter operator[](std::size_t i) const { return ls_[i]; }
  const std::vector<Letter>& letters() const { return ls_; }

  Word prefix(std::size_t n) const {  // first n letters
    return Word(std::vector<Letter>(ls_.begin(), ls_.begin() + n));
  }
  Word suffix_from(std::size_t j) const {  // letters j..end
    return Word(std::vector<Letter>(ls_.begin() + j, ls_.end()));
  }
  Word dropped_last() const { return prefix(ls_.size() - 1); }
  Word dropped_first() const { return suffix_from(1); }

  friend Word concat(const Word& a, const Word& b) {
    std::vector<Letter> v = a.ls_;
    v.insert(v.end(), b.ls_.begin(), b.ls_.end());
    return Word(std::move(v));
  }
  Word prepended(Letter l) const {
    std::vector<Letter> v;
    v.reserve(ls_.size() + 1);
    v.push_back(l);
    v.insert(v.end(), ls_.begin(), ls_.end());
    return Word(std::move(v));
  }
  Word appended(Letter l) const {
    std::vector<Letter> v = ls_;
    v.push_back(l);
    return Word(std::move(v));
  }

  friend bool operator==(const Word& a, const Word& b) { return a.ls_ == b.ls_; }
  // length-then-lex; this is the canonical storage and export order
  friend bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.ls_ < b.ls_;
  }

  std::string str() const {
    if (ls_.empty()) return "()";
    std::string s;
    for (std::size_t i = 0; i < ls_.size(); ++i) {
      if (i) s += ".";
      s += std::to_string(ls_[i]);
    }
    return s;
  }

private:
  std::vector<Letter> ls_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w.letters()) {
      h ^= static_cast<std::size_t>(l) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Enumerates all words of length <= order over an alphabet, in
// length-then-lex order, and converts between words and dense indices.
class WordIndexer {
public:
  static constexpr std::size_t kWordCap = 1000000;  // hard cap on total word count

  WordIndexer(int alphabet_size, int order) : a_(alphabet_size), n_(order) {
    if (alphabet_size < 1) throw ConfigError("alphabet size must be >= 1");
    if (order < 0) throw ConfigError("truncation order must be >= 0");
    offsets_.resize(static_cast<std::size_t>(order) + 2);
    offsets_[0] = 0;
    std::size_t level = 1;
    for (int k = 0; k <= order; ++k) {
      offsets_[k + 1] = offsets_[k] + level;
      if (offsets_[k + 1] > kWordCap)
        throw TruncationError("word table over the " + std::to_string(kWordCap) + " cap");
      level *= static_cast<std::size_t>(alphabet_size);
    }
  }

  int alphabet_size() const { return a_; }
  int order() const { return n_; }
  std::size_t count() const { return offsets_[n_ + 1]; }
  std::size_t count_up_to(int len) const { return offsets_[len + 1]; }
  std::size_t level_offset(int len) const { return offsets_[len]; }
  std::size_t level_size(int len) const { return offsets_[len + 1] - offsets_[len]; }

  std::size_t index(const Word& w) const {
    const int len = static_cast<int>(w.size());
    if (len > n_) throw TruncationError("word " + w.str() + " longer than order " + std::to_string(n_));
    std::size_t code = 0;
    for (Letter l : w.letters()) {
      if (l < 0 || l >= a_) throw ConfigError("letter id " + std::to_string(l) + " outside alphabet");
      code = code * static_cast<std::size_t>(a_) + static_cast<std::size_t>(l);
    }
    return offsets_[len] + code;
  }

  Word word(std::size_t idx) const {
    int len = 0;
    while (idx >= offsets_[len + 1]) ++len;
    std::size_t code = idx - offsets_[len];
    std::vector<Letter> ls(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
      ls[static_cast<std::size_t>(i)] = static_cast<Letter>(code % static_cast<std::size_t>(a_));
      code /= static_cast<std::size_t>(a_);
    }
    return Word(std::move(ls));
  }

  int length_of(std::size_t idx) const {
    int len = 0;
    while (idx >= offsets_[len + 1]) ++len;
    return len;
  }

  friend bool operator==(const WordIndexer& x, const WordIndexer& y) {
    return x.a_ == y.a_ && x.n_ == y.n_;
  }

private:
  int a_;
  int n_;
  std::vector<std::size_t> offsets_;
};

// All riffle interleavings of w and w2 preserving internal order, as a
// multiset (binomial(|w|+|w2|, |w|) entries, with repeats).
inline void shuffle_rec(const std::vector<Letter>& a, std::size_t ia,
                        const std::vector<Letter>& b, std::size_t ib,
                        std::vector<Letter>& cur, std::vector<Word>& out) {
  if (ia == a.size() && ib == b.size()) {
    out.emplace_back(cur);
    return;
  }
  if (ia < a.size()) {
    cur.push_back(a[ia]);
    shuffle_rec(a, ia + 1, b, ib, cur, out);
    cur.pop_back();
  }
  if (ib < b.size()) {
    cur.push_back(b[ib]);
    shuffle_rec(a, ia, b, ib + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Word> shuffle(const Word& w, const Word& w2, int max_order) {
  if (w.size() + w2.size() > static_cast<std::size_t>(max_order))
    throw TruncationError("shuffle of " + w.str() + " and " + w2.str() + " exceeds order " +
                          std::to_string(max_order));
  std::vector<Word> out;
  std::vector<Letter> cur;
  cur.reserve(w.size() + w2.size());
  shuffle_rec(w.letters(), 0, w2.letters(), 0, cur, out);
  return out;
}

}  // namespace wordser
