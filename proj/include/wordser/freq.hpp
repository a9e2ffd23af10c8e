#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordser/coeffmap.hpp"
#include "wordser/rational.hpp"
#include "wordser/word.hpp"

namespace wordser {

// Adjoint eigenvalue table: for each letter l, the exact d-vector of
// eigenvalues of f_l under the d commuting directions.
class FreqTable {
public:
  FreqTable(int d, std::vector<std::vector<GaussianRational>> per_letter)
      : d_(d), nu_(std::move(per_letter)) {
    for (const auto& row : nu_)
      if (static_cast<int>(row.size()) != d)
        throw ConfigError("FreqTable: letter entry dimension != d");
  }

  int dim() const { return d_; }
  int letters() const { return static_cast<int>(nu_.size()); }
  const std::vector<GaussianRational>& letter(Letter l) const {
    return nu_.at(static_cast<std::size_t>(l));
  }

  // Sum of the per-letter eigenvalue vectors over the word's letters.
  std::vector<GaussianRational> letter_sum(const Word& w) const {
    std::vector<GaussianRational> s(static_cast<std::size_t>(d_));
    for (Letter l : w.letters()) {
      const auto& row = letter(l);
      for (int j = 0; j < d_; ++j) s[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
    }
    return s;
  }

private:
  int d_;
  std::vector<std::vector<GaussianRational>> nu_;
};

// A direction v in the space of commuting fields, together with the exact
// rule that decides whether nu_w^v vanishes. Numeric components are never
// consulted for zero tests.
class FreqVector {
public:
  enum class Rule {
    GenericIndependent,  // nu_w^v = 0 iff the letter-sum vector is exactly 0
    ExplicitRational,    // v = unit * p, p exact; nu_w^v = 0 iff p . s(w) = 0
  };

  static FreqVector generic(std::vector<complexd> v) {
    FreqVector f;
    f.rule_ = Rule::GenericIndependent;
    f.numeric_ = std::move(v);
    return f;
  }

  // v_j = unit * p_j. unit_exact (if set) makes exact nu values available;
  // exp_unit_exact declares an exact value of exp(unit) so that exponential
  // weights exp(nu_w^v) stay exact on integer multiples of the unit.
  static FreqVector explicit_rational(std::vector<GaussianRational> p, complexd unit_numeric,
                                      std::optional<GaussianRational> unit_exact = std::nullopt,
                                      std::optional<GaussianRational> exp_unit_exact = std::nullopt) {
    FreqVector f;
    f.rule_ = Rule::ExplicitRational;
    f.p_ = std::move(p);
    f.unit_numeric_ = unit_numeric;
    f.unit_exact_ = std::move(unit_exact);
    f.exp_unit_exact_ = std::move(exp_unit_exact);
    if (f.unit_exact_ && std::abs(f.unit_exact_->to_complex() - unit_numeric) > 1e-12)
      throw ConfigError("FreqVector: exact unit disagrees with numeric unit");
    if (f.exp_unit_exact_ &&
        std::abs(f.exp_unit_exact_->to_complex() - std::exp(unit_numeric)) > 1e-9)
      throw ConfigError("FreqVector: exact exp(unit) disagrees with exp of numeric unit");
    f.numeric_.reserve(f.p_.size());
    for (const auto& pj : f.p_) f.numeric_.push_back(unit_numeric * pj.to_complex());
    return f;
  }

  // Exact vector acting only through inner products (used for u in V(v)).
  static FreqVector exact_vector(std::vector<GaussianRational> u) {
    return explicit_rational(std::move(u), complexd{1.0, 0.0}, GaussianRational(1),
                             std::nullopt);
  }

  Rule rule() const { return rule_; }
  int dim() const { return static_cast<int>(numeric_.size()); }
  complexd component(int j) const { return numeric_.at(static_cast<std::size_t>(j)); }
  const std::vector<complexd>& numeric() const { return numeric_; }
  const std::vector<GaussianRational>& exact_multiples() const { return p_; }
  const std::optional<GaussianRational>& unit_exact() const { return unit_exact_; }
  const std::optional<GaussianRational>& exp_unit_exact() const { return exp_unit_exact_; }
  complexd unit_numeric() const { return unit_numeric_; }

  // Exact inner product p . s, defined for the ExplicitRational rule.
  GaussianRational reduced_sum(const std::vector<GaussianRational>& s) const {
    GaussianRational acc;
    for (std::size_t j = 0; j < p_.size(); ++j) acc += p_[j] * s[j];
    return acc;
  }

  bool nu_is_zero(const std::vector<GaussianRational>& s) const {
    if (rule_ == Rule::GenericIndependent) {
      for (const auto& c : s)
        if (!c.is_zero()) return false;
      return true;
    }
    return reduced_sum(s).is_zero();
  }

  complexd nu_numeric(const std::vector<GaussianRational>& s) const {
    if (rule_ == Rule::ExplicitRational) return unit_numeric_ * reduced_sum(s).to_complex();
    complexd acc = 0;
    for (std::size_t j = 0; j < numeric_.size(); ++j) acc += numeric_[j] * s[j].to_complex();
    return acc;
  }

  std::optional<GaussianRational> nu_exact(const std::vector<GaussianRational>& s) const {
    if (rule_ != Rule::ExplicitRational || !unit_exact_) return std::nullopt;
    return *unit_exact_ * reduced_sum(s);
  }

  // exp(nu) exactly: 1 on resonant sums, else (exp unit)^m for integer m.
  std::optional<GaussianRational> exp_nu_exact(const std::vector<GaussianRational>& s) const {
    if (nu_is_zero(s)) return GaussianRational(1);
    if (rule_ != Rule::ExplicitRational || !exp_unit_exact_) return std::nullopt;
    GaussianRational r = reduced_sum(s);
    if (!r.is_real() || denominator(r.re) != 1) return std::nullopt;
    const BigInt n = numerator(r.re);
    if (n > 1000 || n < -1000) return std::nullopt;  // keep powers sane
    return pow_int(*exp_unit_exact_, static_cast<long>(n));
  }

private:
  Rule rule_ = Rule::GenericIndependent;
  std::vector<complexd> numeric_;
  std::vector<GaussianRational> p_;
  complexd unit_numeric_{0.0, 0.0};
  std::optional<GaussianRational> unit_exact_;
  std::optional<GaussianRational> exp_unit_exact_;
};

struct NuValue {
  complexd value{0.0, 0.0};
  bool is_zero = false;
};

inline NuValue nu_word(const FreqTable& table, const FreqVector& v, const Word& w) {
  const auto s = table.letter_sum(w);
  return NuValue{v.nu_numeric(s), v.nu_is_zero(s)};
}

// Per-word-index cache of resonance flags and nu values in the scalar mode S.
// Exact construction requires an exact unit on the frequency vector.
template <class S>
struct NuTable {
  WordIndexer idx;
  std::vector<char> resonant;
  std::vector<S> value;

  bool is_resonant(std::size_t i) const { return resonant[i] != 0; }
  const S& nu(std::size_t i) const { return value[i]; }
};

namespace detail {

inline GaussianRational nu_value_as(const FreqTable&, const FreqVector& v,
                                    const std::vector<GaussianRational>& s, bool zero,
                                    const Word& w, GaussianRational* /*tag*/) {
  if (zero) return GaussianRational(0);
  auto e = v.nu_exact(s);
  if (!e)
    throw ModeError("exact nu value unavailable at word " + w.str() +
                    " (frequency vector has no exact unit)");
  return *e;
}

inline complexd nu_value_as(const FreqTable&, const FreqVector& v,
                            const std::vector<GaussianRational>& s, bool zero, const Word&,
                            complexd* /*tag*/) {
  if (zero) return complexd{0.0, 0.0};
  return v.nu_numeric(s);
}

}  // namespace detail

template <class S>
NuTable<S> make_nu_table(const FreqTable& table, const FreqVector& v, int alphabet_size,
                         int order) {
  if (table.letters() != alphabet_size)
    throw ConfigError("make_nu_table: table letter count != alphabet size");
  NuTable<S> t{WordIndexer(alphabet_size, order), {}, {}};
  t.resonant.resize(t.idx.count());
  t.value.resize(t.idx.count(), ScalarOps<S>::zero());
  for (std::size_t i = 0; i < t.idx.count(); ++i) {
    const Word w = t.idx.word(i);
    const auto s = table.letter_sum(w);
    const bool zero = v.nu_is_zero(s);
    t.resonant[i] = zero ? 1 : 0;
    t.value[i] = detail::nu_value_as(table, v, s, zero, w, static_cast<S*>(nullptr));
  }
  return t;
}

// exp(nu_w^v) per word. Resonant words get exactly one.
template <class S>
struct ExpNuTable {
  WordIndexer idx;
  std::vector<char> resonant;
  std::vector<S> value;
};

inline ExpNuTable<complexd> make_exp_nu_table_float(const FreqTable& table, const FreqVector& v,
                                                    int alphabet_size, int order) {
  ExpNuTable<complexd> t{WordIndexer(alphabet_size, order), {}, {}};
  t.resonant.resize(t.idx.count());
  t.value.resize(t.idx.count());
  for (std::size_t i = 0; i < t.idx.count(); ++i) {
    const auto s = table.letter_sum(t.idx.word(i));
    const bool zero = v.nu_is_zero(s);
    t.resonant[i] = zero ? 1 : 0;
    t.value[i] = zero ? complexd{1.0, 0.0} : std::exp(v.nu_numeric(s));
  }
  return t;
}

inline ExpNuTable<GaussianRational> make_exp_nu_table_exact(const FreqTable& table,
                                                            const FreqVector& v,
                                                            int alphabet_size, int order) {
  ExpNuTable<GaussianRational> t{WordIndexer(alphabet_size, order), {}, {}};
  t.resonant.resize(t.idx.count());
  t.value.resize(t.idx.count());
  for (std::size_t i = 0; i < t.idx.count(); ++i) {
    const Word w = t.idx.word(i);
    const auto s = table.letter_sum(w);
    t.resonant[i] = v.nu_is_zero(s) ? 1 : 0;
    auto e = v.exp_nu_exact(s);
    if (!e)
      throw ModeError("exact exp(nu) unavailable at word " + w.str() +
                      "; use float mode or declare an exact exponential unit");
    t.value[i] = *e;
  }
  return t;
}

template <class S>
ExpNuTable<S> make_exp_nu_table(const FreqTable& table, const FreqVector& v, int alphabet_size,
                                int order) {
  if constexpr (is_exact_scalar_v<S>)
    return make_exp_nu_table_exact(table, v, alphabet_size, order);
  else
    return make_exp_nu_table_float(table, v, alphabet_size, order);
}

// ----- resonance space V(v) -------------------------------------------------
//
// V(v) = exact kernel of { s(w) : w resonant, |w| <= order }, i.e. all
// d-vectors u with u . s(w) = 0 on every v-resonant word. Basis returned in
// reduced row echelon convention so equal spaces give equal bases.

namespace detail {

// RREF over the Gaussian rationals, in place. Returns pivot columns.
inline std::vector<int> rref(std::vector<std::vector<GaussianRational>>& rows, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(c)].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const GaussianRational piv = rows[r][static_cast<std::size_t>(c)];
    for (int j = 0; j < cols; ++j) rows[r][static_cast<std::size_t>(j)] /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const GaussianRational f = rows[i][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = 0; j < cols; ++j)
        rows[i][static_cast<std::size_t>(j)] -= f * rows[r][static_cast<std::size_t>(j)];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace detail

inline std::vector<std::vector<GaussianRational>> resonance_space(const FreqTable& table,
                                                                  const FreqVector& v,
                                                                  int alphabet_size, int order) {
  const int d = table.dim();
  WordIndexer idx(alphabet_size, order);
  std::vector<std::vector<GaussianRational>> rows;
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const auto s = table.letter_sum(idx.word(i));
    if (!v.nu_is_zero(s)) continue;
    bool all_zero = true;
    for (const auto& c : s) all_zero = all_zero && c.is_zero();
    if (all_zero) continue;
    if (std::find(rows.begin(), rows.end(), s) == rows.end()) rows.push_back(s);
  }
  const std::vector<int> pivots = detail::rref(rows, d);
  // kernel basis: one vector per free column
  std::vector<std::vector<GaussianRational>> basis;
  std::size_t p = 0;
  for (int c = 0; c < d; ++c) {
    if (p < pivots.size() && pivots[p] == c) {
      ++p;
      continue;
    }
    std::vector<GaussianRational> u(static_cast<std::size_t>(d));
    u[static_cast<std::size_t>(c)] = GaussianRational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      u[static_cast<std::size_t>(pivots[r])] = -rows[r][static_cast<std::size_t>(c)];
    basis.push_back(std::move(u));
  }
  return basis;
}

inline bool in_resonance_space(const FreqTable& table, const FreqVector& v,
                               const std::vector<GaussianRational>& u, int alphabet_size,
                               int order) {
  WordIndexer idx(alphabet_size, order);
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const auto s = table.letter_sum(idx.word(i));
    if (!v.nu_is_zero(s)) continue;
    GaussianRational dot;
    for (std::size_t j = 0; j < u.size(); ++j) dot += u[j] * s[j];
    if (!dot.is_zero()) return false;
  }
  return true;
}

}  // namespace wordser
