#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wordser/rational.hpp"
#include "wordser/word.hpp"

namespace wordser {

// Finite sums  sum_j c_j * t^k_j * exp(mu_j * t), closed under product,
// differentiation and integration. Canonical form: terms sorted by (mu, k),
// equal (mu, k) merged, zero coefficients dropped. Exponent merging uses the
// scalar's own equality, so distinct-but-close float exponents never merge
// by tolerance.
template <class S>
class ExpPoly {
public:
  struct Term {
    S c{};
    int k = 0;  // power of t, >= 0
    S mu{};     // exponent factor
  };

  ExpPoly() = default;
  explicit ExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

  static ExpPoly zero() { return ExpPoly(); }
  static ExpPoly constant(S c) { return ExpPoly({Term{std::move(c), 0, ScalarOps<S>::zero()}}); }
  static ExpPoly one() { return constant(ScalarOps<S>::one()); }
  // c * t^k * exp(mu t)
  static ExpPoly term(S c, int k, S mu) { return ExpPoly({Term{std::move(c), k, std::move(mu)}}); }
  static ExpPoly exponential(S mu) { return term(ScalarOps<S>::one(), 0, std::move(mu)); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return ExpPoly(std::move(t));
  }
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) {
    std::vector<Term> t = a.terms_;
    for (const Term& x : b.terms_) t.push_back(Term{-x.c, x.k, x.mu});
    return ExpPoly(std::move(t));
  }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    std::vector<Term> t;
    t.reserve(a.terms_.size() * b.terms_.size());
    for (const Term& x : a.terms_)
      for (const Term& y : b.terms_)
        t.push_back(Term{x.c * y.c, x.k + y.k, x.mu + y.mu});
    return ExpPoly(std::move(t));
  }
  friend ExpPoly operator*(const S& c, const ExpPoly& a) {
    std::vector<Term> t = a.terms_;
    for (Term& x : t) x.c = c * x.c;
    return ExpPoly(std::move(t));
  }

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const Term& x = a.terms_[i];
      const Term& y = b.terms_[i];
      if (x.k != y.k || !ScalarOps<S>::eq(x.mu, y.mu, 0.0) || !ScalarOps<S>::eq(x.c, y.c, 0.0))
        return false;
    }
    return true;
  }

  complexd eval(complexd t) const {
    complexd acc = 0;
    for (const Term& x : terms_) {
      complexd v = ScalarOps<S>::to_complex(x.c);
      for (int i = 0; i < x.k; ++i) v *= t;
      acc += v * std::exp(ScalarOps<S>::to_complex(x.mu) * t);
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const Term& x = terms_[i];
      if (i) s += " + ";
      s += ScalarOps<S>::str(x.c);
      if (x.k > 0) s += "*t^" + std::to_string(x.k);
      if (!ScalarOps<S>::is_zero(x.mu)) s += "*exp(" + ScalarOps<S>::str(x.mu) + "*t)";
    }
    return s;
  }

private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
      if (!ScalarOps<S>::eq(x.mu, y.mu, 0.0)) return ScalarOps<S>::less(x.mu, y.mu);
      return x.k < y.k;
    });
    std::vector<Term> merged;
    for (Term& x : terms_) {
      if (!merged.empty() && merged.back().k == x.k &&
          ScalarOps<S>::eq(merged.back().mu, x.mu, 0.0)) {
        merged.back().c += x.c;
      } else {
        merged.push_back(std::move(x));
      }
    }
    std::erase_if(merged, [](const Term& x) { return ScalarOps<S>::is_zero(x.c); });
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

template <class S>
ExpPoly<S> derivative(const ExpPoly<S>& p) {
  std::vector<typename ExpPoly<S>::Term> t;
  for (const auto& x : p.terms()) {
    if (x.k > 0) t.push_back({x.c * ScalarOps<S>::from_int(x.k), x.k - 1, x.mu});
    if (!ScalarOps<S>::is_zero(x.mu)) t.push_back({x.c * x.mu, x.k, x.mu});
  }
  return ExpPoly<S>(std::move(t));
}

// Antiderivative q with q(0) = 0 and q' = p. For mu != 0 the closed form
// exp(mu t) * sum a_j t^j is built by descending-degree elimination (a loop,
// so stack depth never depends on k).
template <class S>
ExpPoly<S> integrate_from_zero(const ExpPoly<S>& p) {
  std::vector<typename ExpPoly<S>::Term> t;
  for (const auto& x : p.terms()) {
    if (ScalarOps<S>::is_zero(x.mu)) {
      t.push_back({x.c / ScalarOps<S>::from_int(x.k + 1), x.k + 1, x.mu});
      continue;
    }
    // mu a_k = c;  mu a_j = -(j+1) a_{j+1}
    std::vector<S> a(static_cast<std::size_t>(x.k) + 1, ScalarOps<S>::zero());
    a[static_cast<std::size_t>(x.k)] = x.c / x.mu;
    for (int j = x.k - 1; j >= 0; --j)
      a[static_cast<std::size_t>(j)] =
          -(ScalarOps<S>::from_int(j + 1) * a[static_cast<std::size_t>(j + 1)]) / x.mu;
    for (int j = 0; j <= x.k; ++j)
      t.push_back({a[static_cast<std::size_t>(j)], j, x.mu});
    // constant so the value at 0 vanishes
    t.push_back({-a[0], 0, ScalarOps<S>::zero()});
  }
  return ExpPoly<S>(std::move(t));
}

// Nested integral coefficient of a word: first letter innermost, so
// alpha_{w.l}(t) = int_0^t exp(nu_l s) alpha_w(s) ds with alpha_empty = 1.
// nu_per_letter[l] is the exponent attached to letter l.
template <class S>
ExpPoly<S> iterated_integral(const Word& w, const std::vector<S>& nu_per_letter) {
  if (w.empty()) throw ConfigError("iterated_integral: word must be nonempty");
  ExpPoly<S> acc = ExpPoly<S>::one();
  for (Letter l : w.letters()) {
    const S& nu = nu_per_letter.at(static_cast<std::size_t>(l));
    acc = integrate_from_zero(ExpPoly<S>::exponential(nu) * acc);
  }
  return acc;
}

}  // namespace wordser
