// Polarization vectors, polarizer effects (ideal and imperfect), Malus
// probabilities, density matrices and linear-inversion tomography.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leggett/complex_linalg.hpp"

namespace leggett {

// A pure polarization direction in C^2. May be unnormalized: every use
// divides by <z|z>, so only (near-)zero vectors are rejected.
struct PolarizationVector {
  cplx c0{1.0, 0.0};
  cplx c1{0.0, 0.0};

  double norm2() const { return std::norm(c0) + std::norm(c1); }

  bool valid() const { return norm2() > 1e-12; }

  void require_valid() const {
    if (!valid()) throw std::invalid_argument("PolarizationVector: near-zero vector");
  }

  PolarizationVector normalized() const {
    require_valid();
    const double n = std::sqrt(norm2());
    return {c0 / n, c1 / n};
  }

  // Unit norm with the first non-negligible amplitude real non-negative.
  PolarizationVector canonical() const {
    PolarizationVector u = normalized();
    const cplx lead = std::abs(u.c0) > 1e-12 ? u.c0 : u.c1;
    const double m = std::abs(lead);
    if (m > 0.0) {
      const cplx phase = std::conj(lead) / m;
      u.c0 *= phase;
      u.c1 *= phase;
    }
    return u;
  }

  // Bloch chart |u(theta, phi)> = (cos(theta/2), e^{i phi} sin(theta/2)).
  static PolarizationVector from_bloch(double theta, double phi) {
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
  }

  std::array<double, 2> bloch_angles() const {
    const PolarizationVector u = normalized();
    const double theta = 2.0 * std::atan2(std::abs(u.c1), std::abs(u.c0));
    double phi = 0.0;
    if (std::abs(u.c1) > 1e-15 && std::abs(u.c0) > 1e-15)
      phi = std::arg(u.c1) - std::arg(u.c0);
    else if (std::abs(u.c0) <= 1e-15)
      phi = std::arg(u.c1);
    if (phi < 0) phi += 2.0 * M_PI;
    return {theta, phi};
  }

  std::array<double, 3> bloch_vector() const {
    const double n = norm2();
    const cplx cross = std::conj(c0) * c1;
    return {2.0 * cross.real() / n, 2.0 * cross.imag() / n,
            (std::norm(c0) - std::norm(c1)) / n};
  }
};

inline cplx inner(const PolarizationVector& a, const PolarizationVector& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

// |<a^|b^>|^2 for the normalized vectors.
inline double overlap(const PolarizationVector& a, const PolarizationVector& b) {
  a.require_valid();
  b.require_valid();
  return std::norm(inner(a, b)) / (a.norm2() * b.norm2());
}

// |z><z| / <z|z>
inline Mat2 projector_matrix(const PolarizationVector& z) {
  z.require_valid();
  const double n = z.norm2();
  Mat2 m;
  m.set(0, 0, std::conj(z.c0) * z.c0 / n);
  m.set(0, 1, std::conj(z.c1) * z.c0 / n);
  m.set(1, 0, std::conj(z.c0) * z.c1 / n);
  m.set(1, 1, std::conj(z.c1) * z.c1 / n);
  return m;
}

struct PolarizerEffect {
  PolarizationVector direction;
  int outcome = 0;
  Mat2 matrix;
};

// Effect for outcome a of an ideal polarizer along z. The pair sums to the
// identity exactly because outcome 1 is computed as I - effect(0) entrywise.
inline PolarizerEffect projector(const PolarizationVector& z, int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("projector: outcome must be 0 or 1");
  PolarizerEffect e{z, outcome, projector_matrix(z)};
  if (outcome == 1) e.matrix = Mat2::identity() - e.matrix;
  return e;
}

// Detection probability for a photon of polarization u measured along x.
// The a=1 branch is 1 - p0 so the two outcomes sum to one exactly.
inline double malus_probability(const PolarizationVector& u, const PolarizationVector& x,
                                int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("malus_probability: outcome must be 0 or 1");
  const double p0 = overlap(x, u);
  return outcome == 0 ? p0 : 1.0 - p0;
}

// Non-ideal polarizer with detection effect eps' I + (1 - eps) |z><z|.
struct ImperfectPolarizer {
  double eps = 0.0;
  double epsPrime = 0.0;
  PolarizationVector direction;

  void require_valid() const {
    if (!(0.0 <= epsPrime && epsPrime <= eps && eps < 1.0))
      throw std::invalid_argument("ImperfectPolarizer: need 0 <= eps' <= eps < 1");
    direction.require_valid();
  }

  // Strict reading where both outcomes carry the eps' I + (1-eps) Pi form;
  // that family is complete only when eps = 2 eps'.
  void require_two_outcome_form(double tolerance = 1e-12) const {
    require_valid();
    if (std::abs(eps - 2.0 * epsPrime) > tolerance)
      throw std::invalid_argument(
          "ImperfectPolarizer: two-outcome form requires eps = 2 eps'");
  }
};

inline Mat2 imperfect_effect(const ImperfectPolarizer& p, int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("imperfect_effect: outcome must be 0 or 1");
  p.require_valid();
  Mat2 detect = cplx(p.epsPrime) * Mat2::identity() +
                cplx(1.0 - p.eps) * projector_matrix(p.direction);
  return outcome == 0 ? detect : Mat2::identity() - detect;
}

template <int N>
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix<N>& m) : m_(m.symmetrized()) {
    if (!m.is_hermitian())
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(m_.trace().real() - 1.0) > tol::trace_one ||
        std::abs(m_.trace().imag()) > tol::trace_one)
      throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-10");
    const auto es = hermitian_eigensystem<N>(m_);
    minEig_ = es.values[0];
    if (minEig_ < tol::psd_floor)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-10");
  }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix<N>::identity() * (1.0 / N));
  }

  const Matrix<N>& matrix() const { return m_; }
  double min_eigenvalue() const { return minEig_; }

 private:
  Matrix<N> m_;
  double minEig_;
};

using State2 = DensityMatrix<2>;
using State4 = DensityMatrix<4>;

inline State2 pure_state(const PolarizationVector& v) {
  return State2(projector_matrix(v));
}

inline State2 mixed_state(const std::vector<std::pair<double, PolarizationVector>>& parts) {
  Mat2 m;
  double total = 0.0;
  for (const auto& [w, v] : parts) {
    if (w < -1e-12) throw std::invalid_argument("mixed_state: negative weight");
    m = m + cplx(w) * projector_matrix(v);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("mixed_state: weights must sum to 1");
  return State2(m);
}

inline State4 pure_product_state(const PolarizationVector& u, const PolarizationVector& v) {
  return State4(tensor_product(projector_matrix(u), projector_matrix(v)));
}

// (|01> - |10>)/sqrt(2)
inline State4 singlet_state() {
  Mat4 m;
  m.set(1, 1, 0.5);
  m.set(2, 2, 0.5);
  m.set(1, 2, -0.5);
  m.set(2, 1, -0.5);
  return State4(m);
}

inline State4 werner_state(double w) {
  if (w < 0.0 || w > 1.0) throw std::invalid_argument("werner_state: w outside [0,1]");
  return State4(cplx(w) * singlet_state().matrix() + cplx((1.0 - w) / 4.0) * Mat4::identity());
}

// ---------------------------------------------------------------------------
// Tomography with imperfect polarizers.

struct TomographySample {
  PolarizationVector direction;
  double eps = 0.0;
  double epsPrime = 0.0;
  double freq = 0.0;  // observed detection frequency
};

struct TomographyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear inversion: the affine correction m = (freq - eps')/(1 - eps) turns
// each sample into tr(rho Pi0) = (1 + r.n)/2, a linear equation for the
// Bloch vector r. Solved by least squares; eigenvalues are projected onto
// the probability simplex when they dip slightly below zero.
inline State2 tomographic_reconstruct(const std::vector<TomographySample>& stats) {
  if (stats.size() < 3)
    throw TomographyError("tomography: not tomographically complete (need >= 3 spanning directions)");

  double ata[3][3] = {};
  double atb[3] = {};
  for (const auto& s : stats) {
    ImperfectPolarizer p{s.eps, s.epsPrime, s.direction};
    p.require_valid();
    const auto n = s.direction.bloch_vector();
    const double y = 2.0 * (s.freq - s.epsPrime) / (1.0 - s.eps) - 1.0;
    for (int i = 0; i < 3; ++i) {
      atb[i] += n[i] * y;
      for (int j = 0; j < 3; ++j) ata[i][j] += n[i] * n[j];
    }
  }

  // 3x3 solve with full pivoting; a tiny pivot means the directions do not
  // span the Bloch ball.
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = ata[i][j];
    m[i][3] = atb[i];
  }
  int colOf[3] = {0, 1, 2};
  const double pivotTol = 1e-9 * static_cast<double>(stats.size());
  for (int k = 0; k < 3; ++k) {
    int pr = k, pc = k;
    double best = 0.0;
    for (int i = k; i < 3; ++i)
      for (int j = k; j < 3; ++j)
        if (std::abs(m[i][j]) > best) { best = std::abs(m[i][j]); pr = i; pc = j; }
    if (best < pivotTol)
      throw TomographyError("tomography: not tomographically complete (directions are coplanar)");
    std::swap(m[k], m[pr]);
    for (int i = 0; i < 3; ++i) std::swap(m[i][k], m[i][pc]);
    std::swap(colOf[k], colOf[pc]);
    for (int i = 0; i < 3; ++i) {
      if (i == k) continue;
      const double f = m[i][k] / m[k][k];
      for (int j = k; j < 4; ++j) m[i][j] -= f * m[k][j];
    }
  }
  double r[3];
  for (int k = 0; k < 3; ++k) r[colOf[k]] = m[k][3] / m[k][k];

  Mat2 rho;
  rho.set(0, 0, 0.5 * (1.0 + r[2]));
  rho.set(1, 1, 0.5 * (1.0 - r[2]));
  rho.set(0, 1, 0.5 * cplx(r[0], -r[1]));
  rho.set(1, 0, 0.5 * cplx(r[0], r[1]));

  auto es = hermitian_eigensystem<2>(rho);
  if (es.values[0] < -1e-6)
    throw TomographyError("tomography: statistics inconsistent with any state");
  if (es.values[0] < 0.0) {
    // nearest PSD unit-trace matrix: project eigenvalues onto the simplex
    es.values[0] = 0.0;
    es.values[1] = 1.0;
    rho = es.reconstruct();
  }
  return State2(rho);
}

// Exact detection frequency a tomography run would record for `rho`.
inline double forward_frequency(const State2& rho, const PolarizationVector& dir,
                                double eps, double epsPrime) {
  ImperfectPolarizer p{eps, epsPrime, dir};
  return hs_inner(imperfect_effect(p, 0), rho.matrix()).real();
}

}  // namespace leggett
