#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wordser/extended.hpp"

namespace wordser {

// Change of variables kappa (a character) and normal-form coefficients
// beta_hat produced by the order-by-order homological solve. The gauge fixes
// kappa_w = 0 on resonant words, which picks one representative out of the
// freedom class.
template <class S>
struct NormalFormResult {
  CoeffMap<S> kappa;
  CoeffMap<S> beta_hat;
  std::size_t resonant_word_count = 0;
};

// Solve  beta_hat * kappa = kappa * beta - freq_scale_v(kappa)  word by word.
// At word w the unknowns enter as beta_hat_w + nu_w kappa_w = (lower-order
// data); nonresonant words put everything into kappa, resonant words into
// beta_hat. Always solvable.
template <class S>
NormalFormResult<S> normal_form(const FreqTable& table, const FreqVector& v,
                                const CoeffMap<S>& beta) {
  const WordIndexer& idx = beta.indexer();
  const auto nut = make_nu_table<S>(table, v, beta.alphabet_size(), beta.order());
  NormalFormResult<S> r{CoeffMap<S>::unit(beta.alphabet_size(), beta.order()),
                        CoeffMap<S>(beta.alphabet_size(), beta.order()), 0};
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const Word w = idx.word(i);
    S known = ScalarOps<S>::zero();
    for (std::size_t j = 0; j < w.size(); ++j)
      known += r.kappa.at(w.prefix(j)) * beta.at(w.suffix_from(j));
    for (std::size_t j = 1; j < w.size(); ++j)
      known -= r.beta_hat.at(w.prefix(j)) * r.kappa.at(w.suffix_from(j));
    if (nut.is_resonant(i)) {
      ++r.resonant_word_count;
      r.beta_hat.at_index(i) = known;
    } else {
      r.kappa.at_index(i) = known / nut.nu(i);
    }
  }
  return r;
}

// beta_hat - (kappa * beta * kappa^{-1} - freq_scale_v(kappa) * kappa^{-1});
// zero word by word for a valid result.
template <class S>
CoeffMap<S> normal_form_residual(const FreqTable& table, const FreqVector& v,
                                 const CoeffMap<S>& kappa, const CoeffMap<S>& beta_hat,
                                 const CoeffMap<S>& beta) {
  return beta_hat - change_of_variables(table, kappa, zero_freq_vector(table.dim()), v, beta);
}

template <class S>
bool beta_hat_supported_on_resonant(const FreqTable& table, const FreqVector& v,
                                    const CoeffMap<S>& beta_hat) {
  const auto nut = make_nu_table<complexd>(table, v, beta_hat.alphabet_size(), beta_hat.order());
  for (std::size_t i = 0; i < beta_hat.size(); ++i)
    if (!nut.is_resonant(i) && !ScalarOps<S>::is_zero(beta_hat.at_index(i))) return false;
  return true;
}

// Move to another representative of the freedom class: kappa~ = delta * kappa,
// beta_hat~ = delta * beta_hat * delta^{-1}. delta must be a character with
// freq_scale_v(delta) = 0, i.e. supported on resonant words.
template <class S>
NormalFormResult<S> gauge_transform(const FreqTable& table, const FreqVector& v,
                                    const NormalFormResult<S>& r, const CoeffMap<S>& delta,
                                    double tol = 1e-12) {
  if (!is_character(delta, tol))
    throw ConfigError("gauge_transform: delta is not a character");
  const auto nut = make_nu_table<complexd>(table, v, delta.alphabet_size(), delta.order());
  for (std::size_t i = 1; i < delta.size(); ++i)
    if (!nut.is_resonant(i) && !ScalarOps<S>::is_zero(delta.at_index(i)))
      throw ConfigError("gauge_transform: delta has support off the resonant words (word " +
                        nut.idx.word(i).str() + ")");
  NormalFormResult<S> out{convolve(delta, r.kappa),
                          convolve(convolve(delta, r.beta_hat), star_inverse(delta)),
                          r.resonant_word_count};
  return out;
}

// ----- commuting decomposition in the original variables ----------------------

// rho(u) = kappa^{-1} * freq_scale_u(kappa) for a direction u; the piece of
// the field conjugate to the u-flow.
template <class S>
CoeffMap<S> conjugated_freq_scale(const FreqTable& table, const FreqVector& u,
                                  const CoeffMap<S>& kappa) {
  const CoeffMap<S> kinv = star_inverse(kappa);
  return convolve(kinv, freq_scale(make_nu_table<S>(table, u, kappa.alphabet_size(),
                                                    kappa.order()),
                                   kappa));
}

template <class S>
struct Decomposition {
  CoeffMap<S> beta_bar;              // kappa^{-1} * beta_hat * kappa
  CoeffMap<S> rho_v;                 // kappa^{-1} * freq_scale_v(kappa)
  std::vector<CoeffMap<S>> rho_u;    // one per basis vector of V(v)
};

template <class S>
Decomposition<S> decompose(const FreqTable& table, const FreqVector& v,
                           const NormalFormResult<S>& nf,
                           const std::vector<std::vector<GaussianRational>>& v_space_basis) {
  const CoeffMap<S> kinv = star_inverse(nf.kappa);
  Decomposition<S> d{convolve(convolve(kinv, nf.beta_hat), nf.kappa),
                     conjugated_freq_scale(table, v, nf.kappa),
                     {}};
  d.rho_u.reserve(v_space_basis.size());
  for (const auto& u : v_space_basis)
    d.rho_u.push_back(conjugated_freq_scale(table, FreqVector::exact_vector(u), nf.kappa));
  return d;
}

// (u, rho(u)): the coefficient family whose word-Hamiltonian assembly is a
// formal first integral. u must lie in V(v).
template <class S>
ExtCoeff<S> invariant_coefficients(const FreqTable& table,
                                   const std::vector<GaussianRational>& u, const FreqVector& v,
                                   const CoeffMap<S>& beta) {
  if (!in_resonance_space(table, v, u, beta.alphabet_size(), beta.order()))
    throw ConfigError("invariant_coefficients: u is outside V(v)");
  const NormalFormResult<S> nf = normal_form(table, v, beta);
  return ExtCoeff<S>{FreqVector::exact_vector(u),
                     conjugated_freq_scale(table, FreqVector::exact_vector(u), nf.kappa),
                     MemberClass::Algebra};
}

// ----- direct recursions (perturbation given by the letters indicator) -------
//
// For beta equal to 1 on letters and 0 elsewhere, beta_bar and rho(u) satisfy
// closed recursions. The branch at resonant words with a mixed letter set
// rewrites the word with a resonant letter prepended and the last letter
// dropped, so intermediate words can fall outside the truncated table; a
// memo keyed on the word itself handles them.

namespace detail {

template <class S>
S nu_value_of(const FreqTable& table, const FreqVector& v, const Word& w) {
  const auto s = table.letter_sum(w);
  if (v.nu_is_zero(s)) return ScalarOps<S>::zero();
  if constexpr (is_exact_scalar_v<S>) {
    auto e = v.nu_exact(s);
    if (!e) throw ModeError("exact nu value unavailable at word " + w.str());
    return *e;
  } else {
    return v.nu_numeric(s);
  }
}

template <class S>
struct LetterRecursion {
  const FreqTable& table;
  const FreqVector& v;
  Letter zero_letter;
  std::vector<char> letter_resonant;
  std::vector<S> base;  // value on single letters
  std::unordered_map<Word, S, WordHash> memo;

  S eval(const Word& w) {
    if (w.size() == 1) return base[static_cast<std::size_t>(w[0])];
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const auto s = table.letter_sum(w);
    S value;
    if (!v.nu_is_zero(s)) {
      const S nu = nu_value_of<S>(table, v, w);
      value = (eval(w.dropped_last()) - eval(w.dropped_first())) / nu;
    } else {
      bool all_resonant = true;
      for (Letter l : w.letters()) all_resonant = all_resonant && letter_resonant[static_cast<std::size_t>(l)];
      if (all_resonant) {
        value = ScalarOps<S>::zero();
      } else {
        value = eval(w.dropped_last().prepended(zero_letter));
      }
    }
    memo.emplace(w, value);
    return value;
  }
};

template <class S>
LetterRecursion<S> make_letter_recursion(const FreqTable& table, const FreqVector& v,
                                         int alphabet_size) {
  LetterRecursion<S> rec{table, v, -1, {}, {}, {}};
  rec.letter_resonant.resize(static_cast<std::size_t>(alphabet_size));
  for (Letter l = 0; l < alphabet_size; ++l) {
    rec.letter_resonant[static_cast<std::size_t>(l)] =
        v.nu_is_zero(table.letter_sum(Word{l})) ? 1 : 0;
    if (rec.letter_resonant[static_cast<std::size_t>(l)] && rec.zero_letter < 0)
      rec.zero_letter = l;
  }
  if (rec.zero_letter < 0)
    throw ConfigError("recursion requires a letter with vanishing nu (none in this model)");
  return rec;
}

}  // namespace detail

template <class S>
CoeffMap<S> beta_bar_recursion(const FreqTable& table, const FreqVector& v, int alphabet_size,
                               int order) {
  auto rec = detail::make_letter_recursion<S>(table, v, alphabet_size);
  rec.base.resize(static_cast<std::size_t>(alphabet_size));
  for (Letter l = 0; l < alphabet_size; ++l)
    rec.base[static_cast<std::size_t>(l)] = rec.letter_resonant[static_cast<std::size_t>(l)]
                                                ? ScalarOps<S>::one()
                                                : ScalarOps<S>::zero();
  CoeffMap<S> out(alphabet_size, order);
  for (std::size_t i = 1; i < out.size(); ++i) out.at_index(i) = rec.eval(out.indexer().word(i));
  return out;
}

template <class S>
CoeffMap<S> rho_recursion(const FreqTable& table, const std::vector<GaussianRational>& u,
                          const FreqVector& v, int alphabet_size, int order) {
  auto rec = detail::make_letter_recursion<S>(table, v, alphabet_size);
  const FreqVector fu = FreqVector::exact_vector(u);
  rec.base.resize(static_cast<std::size_t>(alphabet_size));
  for (Letter l = 0; l < alphabet_size; ++l) {
    if (rec.letter_resonant[static_cast<std::size_t>(l)]) {
      rec.base[static_cast<std::size_t>(l)] = ScalarOps<S>::zero();
    } else {
      const Word wl{l};
      rec.base[static_cast<std::size_t>(l)] =
          detail::nu_value_of<S>(table, fu, wl) / detail::nu_value_of<S>(table, v, wl);
    }
  }
  CoeffMap<S> out(alphabet_size, order);
  for (std::size_t i = 1; i < out.size(); ++i) out.at_index(i) = rec.eval(out.indexer().word(i));
  return out;
}

// The letters-indicator perturbation the recursions assume.
template <class S>
CoeffMap<S> letters_indicator(int alphabet_size, int order) {
  CoeffMap<S> b(alphabet_size, order);
  for (Letter l = 0; l < alphabet_size; ++l) b.at(Word{l}) = ScalarOps<S>::one();
  return b;
}

// ----- uniqueness relations ---------------------------------------------------

struct UniquenessViolation {
  std::string relation;
  Word word;
  double magnitude = 0;
};

struct UniquenessReport {
  std::vector<UniquenessViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the four relations that pin down beta_bar and each rho(u):
// freq_scale_v(bar) + [beta, bar] = 0;  bar = beta on all-resonant-letter
// words;  freq_scale_v(rho) - freq_scale_u(beta) + [beta, rho] = 0;  rho = 0
// on all-resonant-letter words.
template <class S>
UniquenessReport verify_unique_characterization(
    const FreqTable& table, const FreqVector& v, const CoeffMap<S>& beta,
    const CoeffMap<S>& beta_bar,
    const std::vector<std::pair<std::vector<GaussianRational>, CoeffMap<S>>>& rho_us,
    double tol = 0.0) {
  UniquenessReport rep;
  const int asz = beta.alphabet_size();
  const int order = beta.order();
  const WordIndexer idx(asz, order);
  const auto nut = make_nu_table<S>(table, v, asz, order);
  std::vector<char> letter_res(static_cast<std::size_t>(asz));
  for (Letter l = 0; l < asz; ++l)
    letter_res[static_cast<std::size_t>(l)] = v.nu_is_zero(table.letter_sum(Word{l})) ? 1 : 0;
  auto all_letters_resonant = [&](const Word& w) {
    for (Letter l : w.letters())
      if (!letter_res[static_cast<std::size_t>(l)]) return false;
    return true;
  };
  auto scan = [&](const CoeffMap<S>& residual, const char* name) {
    for (std::size_t i = 0; i < residual.size(); ++i)
      if (!ScalarOps<S>::eq(residual.at_index(i), ScalarOps<S>::zero(), tol))
        rep.violations.push_back(
            {name, idx.word(i),
             std::abs(ScalarOps<S>::to_complex(residual.at_index(i)))});
  };

  scan(freq_scale(nut, beta_bar) + bracket(beta, beta_bar), "commutes_with_field(beta_bar)");
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const Word w = idx.word(i);
    if (all_letters_resonant(w) &&
        !ScalarOps<S>::eq(beta_bar.at_index(i), beta.at_index(i), tol))
      rep.violations.push_back({"resonant_letters_value(beta_bar)", w,
                                std::abs(ScalarOps<S>::to_complex(beta_bar.at_index(i) -
                                                                  beta.at_index(i)))});
  }
  for (const auto& [u, rho] : rho_us) {
    const auto nuu = make_nu_table<S>(table, FreqVector::exact_vector(u), asz, order);
    scan(freq_scale(nut, rho) - freq_scale(nuu, beta) + bracket(beta, rho),
         "commutes_with_field(rho)");
    for (std::size_t i = 1; i < idx.count(); ++i) {
      const Word w = idx.word(i);
      if (all_letters_resonant(w) && !ScalarOps<S>::is_zero(rho.at_index(i)))
        rep.violations.push_back({"resonant_letters_value(rho)", w,
                                  std::abs(ScalarOps<S>::to_complex(rho.at_index(i)))});
    }
  }
  return rep;
}

// ----- normal form for group elements (maps) ----------------------------------

struct GroupNormalFormResult {
  CoeffMap<complexd> kappa;
  CoeffMap<complexd> eta_hat;
  std::size_t resonant_word_count = 0;
};

// Order-by-order solve of eta_hat * flow_scale_v(kappa) = kappa * eta with the
// same gauge convention as the continuous case. Words are classified by the
// exact additive rule; nonresonant words additionally need the multiplicative
// divisor exp(nu_w) - 1 outside the guard band.
inline GroupNormalFormResult group_normal_form(const FreqTable& table, const FreqVector& v,
                                               const CoeffMap<complexd>& eta,
                                               double guard = 1e-8) {
  const WordIndexer& idx = eta.indexer();
  const auto xit = make_exp_nu_table<complexd>(table, v, eta.alphabet_size(), eta.order());
  GroupNormalFormResult r{CoeffMap<complexd>::unit(eta.alphabet_size(), eta.order()),
                          CoeffMap<complexd>::unit(eta.alphabet_size(), eta.order()), 0};
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const Word w = idx.word(i);
    complexd known = eta.at_index(i);
    for (std::size_t j = 1; j < w.size(); ++j)
      known += r.kappa.at(w.prefix(j)) * eta.at(w.suffix_from(j));
    for (std::size_t j = 1; j < w.size(); ++j) {
      const Word suf = w.suffix_from(j);
      known -= r.eta_hat.at(w.prefix(j)) * xit.value[idx.index(suf)] * r.kappa.at(suf);
    }
    if (xit.resonant[i]) {
      ++r.resonant_word_count;
      r.eta_hat.at_index(i) = known;
    } else {
      const complexd div = xit.value[i] - 1.0;
      if (std::abs(div) <= guard)
        throw SmallDivisorError(w.str(), std::abs(div), "group_normal_form");
      r.kappa.at_index(i) = known / div;
    }
  }
  return r;
}

// eta_hat - kappa * eta * flow_scale_v(kappa^{-1}), zero for a valid result.
inline CoeffMap<complexd> group_normal_form_residual(const FreqTable& table,
                                                     const FreqVector& v,
                                                     const CoeffMap<complexd>& kappa,
                                                     const CoeffMap<complexd>& eta_hat,
                                                     const CoeffMap<complexd>& eta) {
  const auto xit = make_exp_nu_table<complexd>(table, v, eta.alphabet_size(), eta.order());
  return eta_hat - convolve(convolve(kappa, eta), flow_scale(xit, star_inverse(kappa)));
}

}  // namespace wordser
