// Finite-setting correlation tables P(a,b|x,y), no-signalling checks,
// quantum behavior generation and Bell functionals.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leggett/complex_linalg.hpp"
#include "leggett/polarization.hpp"

namespace leggett {

struct ImperfectParams {
  double eps = 0.0;
  double epsPrime = 0.0;
};

struct MeasurementDirection {
  PolarizationVector direction;
  std::optional<ImperfectParams> imperfection;

  Mat2 effect(int outcome) const {
    if (imperfection) {
      ImperfectPolarizer p{imperfection->eps, imperfection->epsPrime, direction};
      return imperfect_effect(p, outcome);
    }
    return projector(direction, outcome).matrix;
  }
};

struct SettingsSet {
  std::vector<MeasurementDirection> alice;
  std::vector<MeasurementDirection> bob;

  void require_valid() const {
    if (alice.empty() || bob.empty())
      throw std::invalid_argument("SettingsSet: both direction lists must be non-empty");
    for (const auto& d : alice) d.direction.require_valid();
    for (const auto& d : bob) d.direction.require_valid();
  }

  static SettingsSet from_bloch(const std::vector<std::array<double, 2>>& aliceAngles,
                                const std::vector<std::array<double, 2>>& bobAngles) {
    SettingsSet s;
    for (const auto& [t, p] : aliceAngles)
      s.alice.push_back({PolarizationVector::from_bloch(t, p), std::nullopt});
    for (const auto& [t, p] : bobAngles)
      s.bob.push_back({PolarizationVector::from_bloch(t, p), std::nullopt});
    return s;
  }
};

// Conditional probability table p(a,b|x,y), stored [x][y][a][b].
// Ingest clamps negatives within -1e-12 to zero and renormalizes each
// setting pair; anything worse is rejected.
class Behavior {
 public:
  Behavior(int nA, int nB, std::vector<double> table) : nA_(nA), nB_(nB), p_(std::move(table)) {
    if (nA_ <= 0 || nB_ <= 0 || p_.size() != static_cast<size_t>(4 * nA_ * nB_))
      throw std::invalid_argument("Behavior: table size does not match setting counts");
    for (double& v : p_) {
      if (v < -1e-12) throw std::invalid_argument("Behavior: negative probability beyond 1e-12");
      if (v < 0.0) v = 0.0;
    }
    for (int x = 0; x < nA_; ++x)
      for (int y = 0; y < nB_; ++y) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) s += (*this)(x, y, a, b);
        if (std::abs(s - 1.0) > 1e-10)
          throw std::invalid_argument("Behavior: setting pair not normalized within 1e-10");
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) at(x, y, a, b) /= s;
      }
  }

  int settings_a() const { return nA_; }
  int settings_b() const { return nB_; }

  double operator()(int x, int y, int a, int b) const { return p_[index(x, y, a, b)]; }
  const std::vector<double>& table() const { return p_; }

  double alice_marginal(int x, int y, int a) const {
    return (*this)(x, y, a, 0) + (*this)(x, y, a, 1);
  }
  double bob_marginal(int x, int y, int b) const {
    return (*this)(x, y, 0, b) + (*this)(x, y, 1, b);
  }

  double correlator(int x, int y) const {
    return (*this)(x, y, 0, 0) - (*this)(x, y, 0, 1) - (*this)(x, y, 1, 0) + (*this)(x, y, 1, 1);
  }

  int index(int x, int y, int a, int b) const { return ((x * nB_ + y) * 2 + a) * 2 + b; }

 private:
  double& at(int x, int y, int a, int b) { return p_[index(x, y, a, b)]; }

  int nA_, nB_;
  std::vector<double> p_;
};

inline double max_abs_diff(const Behavior& a, const Behavior& b) {
  if (a.settings_a() != b.settings_a() || a.settings_b() != b.settings_b())
    throw std::invalid_argument("max_abs_diff: setting counts differ");
  double m = 0.0;
  for (size_t k = 0; k < a.table().size(); ++k)
    m = std::max(m, std::abs(a.table()[k] - b.table()[k]));
  return m;
}

// P(a,b|x,y) = tr{(A_a^x tensor B_b^y) rho}.
inline Behavior quantum_behavior(const State4& rho, const SettingsSet& s) {
  s.require_valid();
  const int nA = static_cast<int>(s.alice.size());
  const int nB = static_cast<int>(s.bob.size());
  std::vector<double> table(4 * nA * nB);
  for (int x = 0; x < nA; ++x) {
    const Mat2 ax0 = s.alice[x].effect(0);
    const Mat2 ax1 = s.alice[x].effect(1);
    for (int y = 0; y < nB; ++y) {
      const Mat2 by0 = s.bob[y].effect(0);
      const Mat2 by1 = s.bob[y].effect(1);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Mat4 op = tensor_product(a == 0 ? ax0 : ax1, b == 0 ? by0 : by1);
          table[((x * nB + y) * 2 + a) * 2 + b] = hs_inner(op, rho.matrix()).real();
        }
    }
  }
  return Behavior(nA, nB, std::move(table));
}

struct NoSignallingReport {
  bool ok = true;
  double maxViolation = 0.0;
  // worst marginal: side (0 = Alice, 1 = Bob), outcome, own setting, pair of
  // other-side settings whose marginals disagree the most
  int side = 0, outcome = 0, setting = 0, other1 = 0, other2 = 0;
};

inline NoSignallingReport check_no_signalling(const Behavior& b, double tolerance) {
  NoSignallingReport r;
  const int nA = b.settings_a(), nB = b.settings_b();
  for (int x = 0; x < nA; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y1 = 0; y1 < nB; ++y1)
        for (int y2 = y1 + 1; y2 < nB; ++y2) {
          const double d = std::abs(b.alice_marginal(x, y1, a) - b.alice_marginal(x, y2, a));
          if (d > r.maxViolation) r = {r.ok, d, 0, a, x, y1, y2};
        }
  for (int y = 0; y < nB; ++y)
    for (int b2 = 0; b2 < 2; ++b2)
      for (int x1 = 0; x1 < nA; ++x1)
        for (int x2 = x1 + 1; x2 < nA; ++x2) {
          const double d = std::abs(b.bob_marginal(x1, y, b2) - b.bob_marginal(x2, y, b2));
          if (d > r.maxViolation) r = {r.ok, d, 1, b2, y, x1, x2};
        }
  r.ok = r.maxViolation <= tolerance;
  return r;
}

// Linear functional sum c(a,b,x,y) p(a,b|x,y), coefficients stored [x][y][a][b].
struct BellFunctional {
  int nA = 0, nB = 0;
  std::vector<double> c;

  double& at(int x, int y, int a, int b) { return c[((x * nB + y) * 2 + a) * 2 + b]; }
  double get(int x, int y, int a, int b) const { return c[((x * nB + y) * 2 + a) * 2 + b]; }

  // CHSH in correlator form: E(0,0) + E(0,1) + E(1,0) - E(1,1).
  static BellFunctional chsh() {
    BellFunctional f{2, 2, std::vector<double>(16, 0.0)};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double sign = (x == 1 && y == 1) ? -1.0 : 1.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) f.at(x, y, a, b) = sign * ((a + b) % 2 ? -1.0 : 1.0);
      }
    return f;
  }
};

inline double bell_value(const Behavior& b, const BellFunctional& f) {
  if (f.nA != b.settings_a() || f.nB != b.settings_b() ||
      f.c.size() != b.table().size())
    throw std::invalid_argument("bell_value: functional does not match behavior shape");
  double s = 0.0;
  for (size_t k = 0; k < f.c.size(); ++k) s += f.c[k] * b.table()[k];
  return s;
}

inline double chsh_value(const Behavior& b) { return bell_value(b, BellFunctional::chsh()); }

// Settings at which the singlet reaches CHSH = +2 sqrt(2) for the functional
// above: Alice along -z and -x, Bob along (x+z)/sqrt(2) and (-x+z)/sqrt(2).
inline SettingsSet chsh_optimal_settings() {
  return SettingsSet::from_bloch(
      {{M_PI, 0.0}, {M_PI / 2.0, M_PI}},
      {{M_PI / 4.0, 0.0}, {M_PI / 4.0, M_PI}});
}

}  // namespace leggett
