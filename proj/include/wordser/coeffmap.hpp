#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordser/rational.hpp"
#include "wordser/word.hpp"

namespace wordser {

// A total mapping from every word of length <= order to a coefficient.
// Dense storage in canonical (length-then-lex) index order. Immutable by
// convention after construction: all algebra below returns fresh values.
template <class S>
class CoeffMap {
public:
  CoeffMap(int alphabet_size, int order)
      : idx_(alphabet_size, order), vals_(idx_.count(), ScalarOps<S>::zero()) {}

  static CoeffMap unit(int alphabet_size, int order) {
    CoeffMap m(alphabet_size, order);
    m.vals_[0] = ScalarOps<S>::one();
    return m;
  }

  const WordIndexer& indexer() const { return idx_; }
  int alphabet_size() const { return idx_.alphabet_size(); }
  int order() const { return idx_.order(); }
  std::size_t size() const { return vals_.size(); }

  const S& at_index(std::size_t i) const { return vals_[i]; }
  S& at_index(std::size_t i) { return vals_[i]; }
  const S& at(const Word& w) const { return vals_[idx_.index(w)]; }
  S& at(const Word& w) { return vals_[idx_.index(w)]; }
  const S& empty_word() const { return vals_[0]; }

  CoeffMap truncated(int new_order) const {
    CoeffMap out(alphabet_size(), new_order);
    const std::size_t n = std::min(out.vals_.size(), vals_.size());
    for (std::size_t i = 0; i < n; ++i) out.vals_[i] = vals_[i];
    return out;
  }

  friend bool operator==(const CoeffMap& a, const CoeffMap& b) {
    return a.idx_ == b.idx_ && a.vals_ == b.vals_;
  }

private:
  WordIndexer idx_;
  std::vector<S> vals_;
};

template <class S>
inline void require_compatible(const CoeffMap<S>& a, const CoeffMap<S>& b, const char* op) {
  if (a.alphabet_size() != b.alphabet_size())
    throw ConfigError(std::string(op) + ": alphabet size mismatch (" +
                      std::to_string(a.alphabet_size()) + " vs " +
                      std::to_string(b.alphabet_size()) + ")");
}

template <class S>
CoeffMap<S> operator+(const CoeffMap<S>& a, const CoeffMap<S>& b) {
  require_compatible(a, b, "add");
  CoeffMap<S> out(a.alphabet_size(), std::min(a.order(), b.order()));
  for (std::size_t i = 0; i < out.size(); ++i) out.at_index(i) = a.at_index(i) + b.at_index(i);
  return out;
}

template <class S>
CoeffMap<S> operator-(const CoeffMap<S>& a, const CoeffMap<S>& b) {
  require_compatible(a, b, "sub");
  CoeffMap<S> out(a.alphabet_size(), std::min(a.order(), b.order()));
  for (std::size_t i = 0; i < out.size(); ++i) out.at_index(i) = a.at_index(i) - b.at_index(i);
  return out;
}

template <class S>
CoeffMap<S> operator*(const S& c, const CoeffMap<S>& a) {
  CoeffMap<S> out(a.alphabet_size(), a.order());
  for (std::size_t i = 0; i < out.size(); ++i) out.at_index(i) = c * a.at_index(i);
  return out;
}

template <class S>
CoeffMap<S> operator-(const CoeffMap<S>& a) {
  return ScalarOps<S>::from_int(-1) * a;
}

// Convolution product: (a*b)_w = sum over deconcatenations w = uv of a_u b_v,
// including the empty prefix and suffix. Associative, unit CoeffMap::unit.
template <class S>
CoeffMap<S> convolve(const CoeffMap<S>& a, const CoeffMap<S>& b) {
  require_compatible(a, b, "convolve");
  CoeffMap<S> out(a.alphabet_size(), std::min(a.order(), b.order()));
  const WordIndexer& idx = out.indexer();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Word w = idx.word(i);
    S acc = ScalarOps<S>::zero();
    for (std::size_t j = 0; j <= w.size(); ++j)
      acc += a.at(w.prefix(j)) * b.at(w.suffix_from(j));
    out.at_index(i) = acc;
  }
  return out;
}

// Word-by-word solve of g * h = unit by increasing length. Works for any
// g with nonzero empty-word coefficient, characters included.
template <class S>
CoeffMap<S> star_inverse(const CoeffMap<S>& g) {
  if (ScalarOps<S>::is_zero(g.empty_word()))
    throw ConfigError("star_inverse: empty-word coefficient is zero, not invertible");
  CoeffMap<S> h(g.alphabet_size(), g.order());
  const WordIndexer& idx = g.indexer();
  const S inv0 = ScalarOps<S>::one() / g.empty_word();
  h.at_index(0) = inv0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const Word w = idx.word(i);
    S acc = ScalarOps<S>::zero();
    for (std::size_t j = 1; j <= w.size(); ++j)
      acc += g.at(w.prefix(j)) * h.at(w.suffix_from(j));
    h.at_index(i) = -(inv0 * acc);
  }
  return h;
}

// Truncated star-power series; the length grading kills terms past order.
template <class S>
CoeffMap<S> exp_star(const CoeffMap<S>& b) {
  if (!ScalarOps<S>::is_zero(b.empty_word()))
    throw ConfigError("exp_star: input must vanish on the empty word");
  CoeffMap<S> acc = CoeffMap<S>::unit(b.alphabet_size(), b.order());
  CoeffMap<S> pw = CoeffMap<S>::unit(b.alphabet_size(), b.order());
  S fact = ScalarOps<S>::one();
  for (int k = 1; k <= b.order(); ++k) {
    pw = convolve(pw, b);
    fact = fact * ScalarOps<S>::from_int(k);
    acc = acc + (ScalarOps<S>::one() / fact) * pw;
  }
  return acc;
}

template <class S>
CoeffMap<S> log_star(const CoeffMap<S>& g) {
  if (!ScalarOps<S>::eq(g.empty_word(), ScalarOps<S>::one()))
    throw ConfigError("log_star: input must be 1 on the empty word");
  CoeffMap<S> x = g - CoeffMap<S>::unit(g.alphabet_size(), g.order());
  CoeffMap<S> acc(g.alphabet_size(), g.order());
  CoeffMap<S> pw = CoeffMap<S>::unit(g.alphabet_size(), g.order());
  for (int k = 1; k <= g.order(); ++k) {
    pw = convolve(pw, x);
    S coef = ScalarOps<S>::one() / ScalarOps<S>::from_int(k % 2 ? k : -k);
    acc = acc + coef * pw;
  }
  return acc;
}

template <class S>
CoeffMap<S> bracket(const CoeffMap<S>& a, const CoeffMap<S>& b) {
  return convolve(a, b) - convolve(b, a);
}

// ----- shuffle-relation membership tests ------------------------------------

struct ShuffleCheck {
  bool ok = true;
  std::size_t relations_checked = 0;
  std::optional<std::pair<Word, Word>> first_failure;
};

namespace detail {

// Runs fn over every ordered pair of nonempty words with combined length
// <= order; fn(w, w2, shuffle terms) returns pass/fail.
template <class Fn>
ShuffleCheck for_each_shuffle_relation(const WordIndexer& idx, Fn&& fn) {
  ShuffleCheck res;
  const int n = idx.order();
  for (int la = 1; la < n; ++la) {
    for (int lb = 1; la + lb <= n; ++lb) {
      for (std::size_t ia = idx.level_offset(la); ia < idx.count_up_to(la); ++ia) {
        const Word wa = idx.word(ia);
        for (std::size_t ib = idx.level_offset(lb); ib < idx.count_up_to(lb); ++ib) {
          const Word wb = idx.word(ib);
          ++res.relations_checked;
          if (!fn(wa, wb, shuffle(wa, wb, n))) {
            if (res.ok) res.first_failure = std::make_pair(wa, wb);
            res.ok = false;
          }
        }
      }
    }
  }
  return res;
}

}  // namespace detail

// gamma in the group: gamma_empty = 1 and gamma_w gamma_w2 = sum over the
// shuffle of (w, w2). Exact in rational mode, |.| <= tol in float mode.
template <class S>
ShuffleCheck check_character(const CoeffMap<S>& g, double tol = 1e-12) {
  ShuffleCheck res;
  if (!ScalarOps<S>::eq(g.empty_word(), ScalarOps<S>::one(), tol)) {
    res.ok = false;
    res.first_failure = std::make_pair(Word{}, Word{});
    return res;
  }
  res = detail::for_each_shuffle_relation(g.indexer(), [&](const Word& wa, const Word& wb,
                                                           const std::vector<Word>& sh) {
    S rhs = ScalarOps<S>::zero();
    for (const Word& t : sh) rhs += g.at(t);
    return ScalarOps<S>::eq(g.at(wa) * g.at(wb), rhs, tol);
  });
  return res;
}

// beta in the Lie algebra: beta_empty = 0 and the shuffle sums vanish.
template <class S>
ShuffleCheck check_infinitesimal(const CoeffMap<S>& b, double tol = 1e-12) {
  ShuffleCheck res;
  if (!ScalarOps<S>::eq(b.empty_word(), ScalarOps<S>::zero(), tol)) {
    res.ok = false;
    res.first_failure = std::make_pair(Word{}, Word{});
    return res;
  }
  res = detail::for_each_shuffle_relation(b.indexer(), [&](const Word&, const Word&,
                                                           const std::vector<Word>& sh) {
    S acc = ScalarOps<S>::zero();
    for (const Word& t : sh) acc += b.at(t);
    return ScalarOps<S>::eq(acc, ScalarOps<S>::zero(), tol);
  });
  return res;
}

template <class S>
bool is_character(const CoeffMap<S>& g, double tol = 1e-12) {
  return check_character(g, tol).ok;
}

template <class S>
bool is_infinitesimal(const CoeffMap<S>& b, double tol = 1e-12) {
  return check_infinitesimal(b, tol).ok;
}

// Coefficient side of the iterated-commutator rewriting: emits
// (w, b_w / |w|) for every nonempty word. The model layer turns each word
// into its left-nested commutator field.
template <class S>
std::vector<std::pair<Word, S>> dynkin_expansion(const CoeffMap<S>& b) {
  if (!ScalarOps<S>::is_zero(b.empty_word()))
    throw ConfigError("dynkin_expansion: input must vanish on the empty word");
  std::vector<std::pair<Word, S>> out;
  out.reserve(b.size() - 1);
  const WordIndexer& idx = b.indexer();
  for (std::size_t i = 1; i < b.size(); ++i) {
    const Word w = idx.word(i);
    out.emplace_back(w, b.at_index(i) / ScalarOps<S>::from_int(static_cast<long>(w.size())));
  }
  return out;
}

// Largest |coefficient| in float terms; handy for residual reporting.
template <class S>
double max_abs(const CoeffMap<S>& m) {
  double mx = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    mx = std::max(mx, std::abs(ScalarOps<S>::to_complex(m.at_index(i))));
  return mx;
}

template <class S>
bool is_zero_map(const CoeffMap<S>& m, double tol = 0.0) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!ScalarOps<S>::eq(m.at_index(i), ScalarOps<S>::zero(), tol)) return false;
  return true;
}

inline CoeffMap<complexd> to_float_map(const CoeffMap<GaussianRational>& m) {
  CoeffMap<complexd> out(m.alphabet_size(), m.order());
  for (std::size_t i = 0; i < m.size(); ++i) out.at_index(i) = m.at_index(i).to_complex();
  return out;
}

inline const CoeffMap<complexd>& to_float_map(const CoeffMap<complexd>& m) { return m; }

}  // namespace wordser
