// Exact-shape complex matrix kernel for two-photon polarization work.
// Dimensions are template parameters (2 for one qubit, 4 for a pair), so
// shape errors are compile errors and everything lives on the stack.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace leggett {

using cplx = std::complex<double>;

namespace tol {
constexpr double hermiticity = 1e-12;       // max |A - A^dagger| accepted
constexpr double eigen_offdiag = 1e-14;     // Jacobi sweep target (relative)
constexpr double trace_one = 1e-10;
constexpr double psd_floor = -1e-10;        // smallest admissible eigenvalue
}  // namespace tol

template <int N>
class Matrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 shapes are supported");

 public:
  Matrix() : e_{} {}
  explicit Matrix(const std::array<cplx, N * N>& entries) : e_(entries) {}

  static constexpr int dim() { return N; }

  static Matrix zero() { return Matrix(); }

  static Matrix identity() {
    Matrix m;
    for (int i = 0; i < N; ++i) m.e_[i * N + i] = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (int i = 0; i < N; ++i) m.e_[i * N + i] = d[i];
    return m;
  }

  const cplx& operator()(int i, int j) const { return e_[i * N + j]; }
  void set(int i, int j, cplx v) { e_[i * N + j] = v; }

  const std::array<cplx, N * N>& entries() const { return e_; }

  Matrix adjoint() const {
    Matrix r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r.e_[i * N + j] = std::conj(e_[j * N + i]);
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < N; ++i) t += e_[i * N + i];
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : e_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : e_) s += std::norm(v);
    return std::sqrt(s);
  }

  double hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        d = std::max(d, std::abs(e_[i * N + j] - std::conj(e_[j * N + i])));
    return d;
  }

  bool is_hermitian(double tolerance = tol::hermiticity) const {
    return hermiticity_defect() <= tolerance;
  }

  Matrix symmetrized() const {
    Matrix r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        r.e_[i * N + j] = 0.5 * (e_[i * N + j] + std::conj(e_[j * N + i]));
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int k = 0; k < N * N; ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int k = 0; k < N * N; ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }

  friend Matrix operator*(cplx s, const Matrix& a) {
    Matrix r;
    for (int k = 0; k < N * N; ++k) r.e_[k] = s * a.e_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& a, cplx s) { return s * a; }
  friend Matrix operator*(const Matrix& a, double s) { return cplx(s) * a; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const cplx aik = a.e_[i * N + k];
        if (aik == cplx(0.0)) continue;
        for (int j = 0; j < N; ++j) r.e_[i * N + j] += aik * b.e_[k * N + j];
      }
    return r;
  }

  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (int k = 0; k < N * N; ++k) m = std::max(m, std::abs(a.e_[k] - b.e_[k]));
    return m;
  }

 private:
  std::array<cplx, N * N> e_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

// Hilbert-Schmidt inner product tr(A^dagger B).
template <int N>
inline cplx hs_inner(const Matrix<N>& a, const Matrix<N>& b) {
  cplx s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) s += std::conj(a(i, j)) * b(i, j);
  return s;
}

template <int N>
struct EigenSystem {
  std::array<double, N> values;  // ascending
  Matrix<N> vectors;             // columns, orthonormal

  Matrix<N> reconstruct() const {
    Matrix<N> r;
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          r.set(i, j, r(i, j) + values[k] * vectors(i, k) * std::conj(vectors(j, k)));
    return r;
  }
};

// Cyclic Jacobi for Hermitian matrices. Each pivot applies the exact
// eigenbasis rotation of the 2x2 block, so 2x2 inputs converge in one pass.
template <int N>
EigenSystem<N> hermitian_eigensystem(const Matrix<N>& input) {
  if (!input.is_hermitian())
    throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian within 1e-12");
  Matrix<N> a = input.symmetrized();
  Matrix<N> v = Matrix<N>::identity();

  const double scale = std::max(1.0, a.frobenius_norm());
  const double target = tol::eigen_offdiag * scale;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= target) break;

    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double beta = std::abs(apq);
        if (beta <= 1e-300) continue;

        // Peel the phase off the pivot, then a real Jacobi angle. Computing
        // (c, s) from the stable tangent formula keeps the rotation unitary
        // to machine precision even for tiny pivots.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / beta;  // e^{i arg apq}
        const double sigma = (aqq - app) / (2.0 * beta);
        const double t = (sigma >= 0.0 ? -1.0 : 1.0) /
                         (std::abs(sigma) + std::sqrt(1.0 + sigma * sigma));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sv = t * c;
        const cplx u00 = c, u10 = sv * std::conj(phase);
        const cplx u01 = -sv, u11 = c * std::conj(phase);

        // A <- A U on columns p, q
        for (int r = 0; r < N; ++r) {
          const cplx arp = a(r, p), arq = a(r, q);
          a.set(r, p, arp * u00 + arq * u10);
          a.set(r, q, arp * u01 + arq * u11);
        }
        // A <- U^dagger A on rows p, q
        for (int c = 0; c < N; ++c) {
          const cplx apc = a(p, c), aqc = a(q, c);
          a.set(p, c, std::conj(u00) * apc + std::conj(u10) * aqc);
          a.set(q, c, std::conj(u01) * apc + std::conj(u11) * aqc);
        }
        a.set(p, q, 0.0);
        a.set(q, p, 0.0);
        a.set(p, p, a(p, p).real());
        a.set(q, q, a(q, q).real());
        // V <- V U
        for (int r = 0; r < N; ++r) {
          const cplx vrp = v(r, p), vrq = v(r, q);
          v.set(r, p, vrp * u00 + vrq * u10);
          v.set(r, q, vrp * u01 + vrq * u11);
        }
      }
    }
  }

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem<N> out;
  for (int k = 0; k < N; ++k) {
    const int src = order[k];
    out.values[k] = a(src, src).real();
    // fix the global phase: largest component made real non-negative
    int lead = 0;
    double best = -1.0;
    for (int i = 0; i < N; ++i) {
      const double m = std::abs(v(i, src));
      if (m > best) { best = m; lead = i; }
    }
    cplx phase(1.0);
    if (best > 1e-300) phase = std::conj(v(lead, src)) / best;
    for (int i = 0; i < N; ++i) out.vectors.set(i, k, phase * v(i, src));
  }
  return out;
}

inline Mat4 tensor_product(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r.set(2 * i + k, 2 * j + l, a(i, j) * b(k, l));
  return r;
}

enum class Side { A, B };

inline Mat2 partial_trace(const Mat4& m, Side keep) {
  Mat2 r;
  if (keep == Side::A) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.set(i, j, m(2 * i + 0, 2 * j + 0) + m(2 * i + 1, 2 * j + 1));
  } else {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        r.set(k, l, m(0 + k, 0 + l) + m(2 + k, 2 + l));
  }
  return r;
}

// Transpose on subsystem B; pure entry permutation, hence an exact involution.
inline Mat4 partial_transpose(const Mat4& m) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r.set(2 * i + k, 2 * j + l, m(2 * i + l, 2 * j + k));
  return r;
}

template <int N>
double trace_distance(const Matrix<N>& a, const Matrix<N>& b) {
  const auto es = hermitian_eigensystem<N>((a - b).symmetrized());
  double s = 0.0;
  for (double lam : es.values) s += std::abs(lam);
  return 0.5 * s;
}

}  // namespace leggett
