#pragma once

#include <random>

#include "wordser/coeffmap.hpp"
#include "wordser/rational.hpp"

namespace wordser::testing {

// Deterministic generators for the randomized suites. Every test fixes its
// own seed so failures reproduce.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }

  Rational rational(int num_range = 4, int den_range = 3) {
    int num = uniform(-num_range, num_range);
    int den = uniform(1, den_range);
    return Rational(num, den);
  }

  GaussianRational gaussian() { return {rational(), rational()}; }
  GaussianRational gaussian_nonzero() {
    for (;;) {
      GaussianRational g = gaussian();
      if (!g.is_zero()) return g;
    }
  }
};

inline CoeffMap<GaussianRational> random_map(Rng& rng, int alphabet, int order) {
  CoeffMap<GaussianRational> m(alphabet, order);
  for (std::size_t i = 0; i < m.size(); ++i) m.at_index(i) = rng.gaussian();
  return m;
}

// Maps supported on single letters are automatically infinitesimal.
inline CoeffMap<GaussianRational> random_letter_map(Rng& rng, int alphabet, int order) {
  CoeffMap<GaussianRational> m(alphabet, order);
  for (Letter l = 0; l < alphabet; ++l) m.at(Word{l}) = rng.gaussian();
  return m;
}

// Log of a product of exponentials of letter maps: infinitesimal with
// generic support on longer words.
inline CoeffMap<GaussianRational> random_infinitesimal(Rng& rng, int alphabet, int order) {
  CoeffMap<GaussianRational> g =
      convolve(exp_star(random_letter_map(rng, alphabet, order)),
               exp_star(random_letter_map(rng, alphabet, order)));
  return log_star(g);
}

inline CoeffMap<GaussianRational> random_character(Rng& rng, int alphabet, int order) {
  return exp_star(random_infinitesimal(rng, alphabet, order));
}

inline CoeffMap<complexd> random_float_map(Rng& rng, int alphabet, int order) {
  return to_float_map(random_map(rng, alphabet, order));
}

}  // namespace wordser::testing
