// Seeded random sources for states, directions and weights.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "leggett/complex_linalg.hpp"
#include "leggett/polarization.hpp"

namespace leggett {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return dist_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian() { return normal_(engine_); }
  int index(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Haar-uniform pure polarization direction.
inline PolarizationVector random_polarization(Rng& rng) {
  const cplx c0(rng.gaussian(), rng.gaussian());
  const cplx c1(rng.gaussian(), rng.gaussian());
  PolarizationVector v{c0, c1};
  if (!v.valid()) return random_polarization(rng);
  return v.normalized();
}

inline std::vector<double> random_simplex_weights(Rng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(std::max(rng.uniform(), 1e-300));
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

// Ginibre construction: G G^dagger normalized, full rank almost surely.
template <int N>
DensityMatrix<N> random_density(Rng& rng) {
  Matrix<N> g;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g.set(i, j, cplx(rng.gaussian(), rng.gaussian()));
  Matrix<N> rho = g * g.adjoint();
  const double tr = rho.trace().real();
  return DensityMatrix<N>(rho * (1.0 / tr));
}

// Random mixture of product states: separable by construction.
inline State4 random_separable_state(Rng& rng, int terms) {
  const auto w = random_simplex_weights(rng, terms);
  Mat4 m;
  for (int k = 0; k < terms; ++k) {
    const auto u = random_polarization(rng);
    const auto v = random_polarization(rng);
    m = m + cplx(w[k]) * tensor_product(projector_matrix(u), projector_matrix(v));
  }
  return State4(m);
}

}  // namespace leggett
