#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordser/coeffmap.hpp"
#include "wordser/exppoly.hpp"
#include "wordser/freq.hpp"

namespace wordser {

// ----- diagonal operators ----------------------------------------------------

// Multiply coefficient w by nu_w (the derivation attached to a direction).
template <class S>
CoeffMap<S> freq_scale(const NuTable<S>& nut, const CoeffMap<S>& m) {
  if (!(nut.idx == m.indexer())) throw ConfigError("freq_scale: indexer mismatch");
  CoeffMap<S> out(m.alphabet_size(), m.order());
  for (std::size_t i = 0; i < m.size(); ++i)
    out.at_index(i) = nut.is_resonant(i) ? ScalarOps<S>::zero() : nut.value[i] * m.at_index(i);
  return out;
}

// Multiply coefficient w by exp(nu_w) (conjugation by the unperturbed flow).
// Resonant words are exact fixed points in both modes.
template <class S>
CoeffMap<S> flow_scale(const ExpNuTable<S>& xit, const CoeffMap<S>& m) {
  if (!(xit.idx == m.indexer())) throw ConfigError("flow_scale: indexer mismatch");
  CoeffMap<S> out(m.alphabet_size(), m.order());
  for (std::size_t i = 0; i < m.size(); ++i)
    out.at_index(i) = xit.resonant[i] ? m.at_index(i) : xit.value[i] * m.at_index(i);
  return out;
}

template <class S>
CoeffMap<S> freq_scale(const FreqTable& table, const FreqVector& v, const CoeffMap<S>& m) {
  return freq_scale(make_nu_table<S>(table, v, m.alphabet_size(), m.order()), m);
}

template <class S>
CoeffMap<S> flow_scale(const FreqTable& table, const FreqVector& v, const CoeffMap<S>& m) {
  return flow_scale(make_exp_nu_table<S>(table, v, m.alphabet_size(), m.order()), m);
}

// ----- the extended coefficient pair -----------------------------------------

enum class MemberClass { Group, Algebra, General };

template <class S>
struct ExtCoeff {
  FreqVector vec;
  CoeffMap<S> coeffs;
  MemberClass cls = MemberClass::General;
};

template <class S>
ExtCoeff<S> make_group_element(FreqVector vec, CoeffMap<S> gamma, double tol = 1e-12) {
  if (!is_character(gamma, tol))
    throw ConfigError("group element requires character coefficients");
  return ExtCoeff<S>{std::move(vec), std::move(gamma), MemberClass::Group};
}

template <class S>
ExtCoeff<S> make_algebra_element(FreqVector vec, CoeffMap<S> beta, double tol = 1e-12) {
  if (!is_infinitesimal(beta, tol))
    throw ConfigError("algebra element requires infinitesimal coefficients");
  return ExtCoeff<S>{std::move(vec), std::move(beta), MemberClass::Algebra};
}

inline FreqVector zero_freq_vector(int d) {
  return FreqVector::exact_vector(std::vector<GaussianRational>(static_cast<std::size_t>(d)));
}

// a + c*b on the vector components; stays in the exact representation when
// both sides share the same unit and c is exact.
inline FreqVector fv_add_scaled(const FreqVector& a, const FreqVector& b, complexd c_num,
                                const std::optional<GaussianRational>& c_exact) {
  using Rule = FreqVector::Rule;
  const bool same_unit =
      a.rule() == Rule::ExplicitRational && b.rule() == Rule::ExplicitRational &&
      a.unit_numeric() == b.unit_numeric() &&
      a.unit_exact().has_value() == b.unit_exact().has_value() &&
      (!a.unit_exact() || *a.unit_exact() == *b.unit_exact());
  if (same_unit && c_exact) {
    std::vector<GaussianRational> p = a.exact_multiples();
    const auto& q = b.exact_multiples();
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += *c_exact * q[j];
    std::optional<GaussianRational> expu = a.exp_unit_exact();
    if (!expu) expu = b.exp_unit_exact();
    return FreqVector::explicit_rational(std::move(p), a.unit_numeric(), a.unit_exact(), expu);
  }
  std::vector<complexd> v = a.numeric();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += c_num * b.component(static_cast<int>(j));
  return FreqVector::generic(std::move(v));
}

inline FreqVector fv_scaled(const FreqVector& a, complexd c_num,
                            const std::optional<GaussianRational>& c_exact) {
  if (a.rule() == FreqVector::Rule::ExplicitRational && c_exact) {
    std::vector<GaussianRational> p = a.exact_multiples();
    for (auto& pj : p) pj *= *c_exact;
    return FreqVector::explicit_rational(std::move(p), a.unit_numeric(), a.unit_exact(),
                                         a.exp_unit_exact());
  }
  std::vector<complexd> v = a.numeric();
  for (auto& x : v) x *= c_num;
  return FreqVector::generic(std::move(v));
}

namespace detail {

template <class S>
std::optional<GaussianRational> as_exact_coef(const S& s) {
  if constexpr (is_exact_scalar_v<S>)
    return s;
  else
    return std::nullopt;
}

}  // namespace detail

// (u, gamma) x (v, delta) = (v + delta_empty * u, gamma * flow_scale_u(delta)).
// Restricted to group elements this is the group product with unit (0, unit map).
template <class S>
ExtCoeff<S> ext_mul(const FreqTable& table, const ExtCoeff<S>& a, const ExtCoeff<S>& b) {
  const int order = std::min(a.coeffs.order(), b.coeffs.order());
  const CoeffMap<S> xi_b =
      flow_scale(make_exp_nu_table<S>(table, a.vec, b.coeffs.alphabet_size(), order),
                 b.coeffs.truncated(order));
  const S& d0 = b.coeffs.empty_word();
  FreqVector vec = fv_add_scaled(b.vec, a.vec, ScalarOps<S>::to_complex(d0),
                                 detail::as_exact_coef(d0));
  MemberClass cls = (a.cls == MemberClass::Group && b.cls == MemberClass::Group)
                        ? MemberClass::Group
                        : MemberClass::General;
  return ExtCoeff<S>{std::move(vec), convolve(a.coeffs.truncated(order), xi_b), cls};
}

template <class S>
ExtCoeff<S> ext_inverse(const FreqTable& table, const ExtCoeff<S>& a) {
  FreqVector neg = fv_scaled(a.vec, complexd{-1.0, 0.0}, GaussianRational(-1));
  CoeffMap<S> inv = star_inverse(a.coeffs);
  CoeffMap<S> scaled =
      flow_scale(make_exp_nu_table<S>(table, neg, inv.alphabet_size(), inv.order()), inv);
  return ExtCoeff<S>{std::move(neg), std::move(scaled), a.cls};
}

// [(v, beta), (u, eta)] = (0, freq_scale_v(eta) - freq_scale_u(beta) + [beta, eta]).
template <class S>
ExtCoeff<S> ext_bracket(const FreqTable& table, const ExtCoeff<S>& a, const ExtCoeff<S>& b) {
  const int order = std::min(a.coeffs.order(), b.coeffs.order());
  const int asz = a.coeffs.alphabet_size();
  CoeffMap<S> lhs = freq_scale(make_nu_table<S>(table, a.vec, asz, order),
                               b.coeffs.truncated(order));
  CoeffMap<S> rhs = freq_scale(make_nu_table<S>(table, b.vec, asz, order),
                               a.coeffs.truncated(order));
  CoeffMap<S> out = lhs - rhs + bracket(a.coeffs.truncated(order), b.coeffs.truncated(order));
  return ExtCoeff<S>{zero_freq_vector(table.dim()), std::move(out), MemberClass::Algebra};
}

// ----- exponential and logarithm in the extended group -----------------------
//
// The exponential of (v, beta) is (v, alpha(1)) where alpha solves the linear
// word-by-word system alpha' = alpha * flow_scale_{tv}(beta), alpha(0) = unit.
// Each alpha_w(t) is an exponential polynomial, so the system integrates in
// closed form. Float mode only: the values exp(nu) are transcendental.

struct ExtExpResult {
  ExtCoeff<complexd> value;                // (v, alpha(1))
  std::vector<ExpPoly<complexd>> curve;    // alpha_w(t) per canonical index
};

inline ExtExpResult ext_exp_curve(const FreqTable& table, const FreqVector& v,
                                  const CoeffMap<complexd>& beta) {
  if (!ScalarOps<complexd>::is_zero(beta.empty_word()))
    throw ConfigError("ext_exp: coefficients must vanish on the empty word");
  const WordIndexer& idx = beta.indexer();
  const auto nut = make_nu_table<complexd>(table, v, beta.alphabet_size(), beta.order());
  std::vector<ExpPoly<complexd>> curve(idx.count());
  curve[0] = ExpPoly<complexd>::one();
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const Word w = idx.word(i);
    ExpPoly<complexd> rhs;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Word suf = w.suffix_from(j);
      const complexd b = beta.at(suf);
      if (b == complexd{0.0, 0.0}) continue;
      const complexd nu = nut.nu(idx.index(suf));
      rhs = rhs + b * (curve[idx.index(w.prefix(j))] * ExpPoly<complexd>::exponential(nu));
    }
    curve[i] = integrate_from_zero(rhs);
  }
  CoeffMap<complexd> alpha1(beta.alphabet_size(), beta.order());
  for (std::size_t i = 0; i < idx.count(); ++i) alpha1.at_index(i) = curve[i].eval(1.0);
  return ExtExpResult{ExtCoeff<complexd>{v, std::move(alpha1), MemberClass::Group},
                      std::move(curve)};
}

inline ExtCoeff<complexd> ext_exp(const FreqTable& table, const ExtCoeff<complexd>& a) {
  return ext_exp_curve(table, a.vec, a.coeffs).value;
}

// Word-by-word inversion of the exponential: at each word the unknown enters
// through the divisor int_0^1 exp(t nu_w) dt, which must stay off zero. The
// guard band rejects nu_w within ~guard of the punctured lattice 2 pi i Z.
inline ExtCoeff<complexd> ext_log(const FreqTable& table, const ExtCoeff<complexd>& g,
                                  double guard = 1e-8) {
  const CoeffMap<complexd>& gamma = g.coeffs;
  if (!ScalarOps<complexd>::eq(gamma.empty_word(), ScalarOps<complexd>::one()))
    throw ConfigError("ext_log: coefficients must be 1 on the empty word");
  const WordIndexer& idx = gamma.indexer();
  const auto nut = make_nu_table<complexd>(table, g.vec, gamma.alphabet_size(), gamma.order());
  std::vector<ExpPoly<complexd>> curve(idx.count());
  curve[0] = ExpPoly<complexd>::one();
  CoeffMap<complexd> beta(gamma.alphabet_size(), gamma.order());
  for (std::size_t i = 1; i < idx.count(); ++i) {
    const Word w = idx.word(i);
    ExpPoly<complexd> rhs_known;
    for (std::size_t j = 1; j < w.size(); ++j) {
      const Word suf = w.suffix_from(j);
      const complexd b = beta.at(suf);
      if (b == complexd{0.0, 0.0}) continue;
      const complexd nu = nut.nu(idx.index(suf));
      rhs_known = rhs_known + b * (curve[idx.index(w.prefix(j))] *
                                   ExpPoly<complexd>::exponential(nu));
    }
    const complexd nu_w = nut.nu(i);
    complexd divisor;
    if (nut.is_resonant(i)) {
      divisor = 1.0;
    } else {
      divisor = (std::exp(nu_w) - 1.0) / nu_w;
      if (std::abs(divisor) <= guard)
        throw SmallDivisorError(w.str(), std::abs(divisor), "ext_log");
    }
    const complexd known = integrate_from_zero(rhs_known).eval(1.0);
    beta.at_index(i) = (gamma.at_index(i) - known) / divisor;
    curve[i] = integrate_from_zero(
        beta.at_index(i) * ExpPoly<complexd>::exponential(nu_w) + rhs_known);
  }
  return ExtCoeff<complexd>{g.vec, std::move(beta), MemberClass::Algebra};
}

// Coefficient-level change of variables by a character kappa:
//   B = kappa * flow_scale_u(beta) * kappa^{-1} - freq_scale_v(kappa) * kappa^{-1}.
// With u = 0 this is the conjugation appearing in the normal-form equation.
template <class S>
CoeffMap<S> change_of_variables(const FreqTable& table, const CoeffMap<S>& kappa,
                                const FreqVector& u, const FreqVector& v,
                                const CoeffMap<S>& beta) {
  const CoeffMap<S> kinv = star_inverse(kappa);
  const CoeffMap<S> xib =
      flow_scale(make_exp_nu_table<S>(table, u, beta.alphabet_size(), beta.order()), beta);
  const CoeffMap<S> xik =
      freq_scale(make_nu_table<S>(table, v, kappa.alphabet_size(), kappa.order()), kappa);
  return convolve(convolve(kappa, xib), kinv) - convolve(xik, kinv);
}

}  // namespace wordser
