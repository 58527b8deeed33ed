// Linear-program feasibility and optimization with verifiable certificates.
//
// Revised simplex over sparse rows with a dense basis inverse, Bland's rule
// fallback against cycling, and Farkas rays extracted from phase one. Rows
// are equilibrated internally so that rescaling a constraint by a positive
// constant cannot change the reported status; certificates are mapped back
// to the caller's row scaling before being returned.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace leggett::lp {

struct Term {
  int col = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<Term> terms;
  double rhs = 0.0;
};

struct LinearProgram {
  int numVars = 0;
  std::vector<Row> equalities;    // a.x  = rhs
  std::vector<Row> inequalities;  // a.x <= rhs
  std::vector<double> lowerBounds;
  std::vector<double> objective;  // maximize; empty means feasibility only

  int add_variable(double lb = 0.0) {
    lowerBounds.resize(numVars + 1, 0.0);
    lowerBounds[numVars] = lb;
    if (!objective.empty()) objective.resize(numVars + 1, 0.0);
    return numVars++;
  }

  void set_objective(int var, double coef) {
    objective.resize(numVars, 0.0);
    objective.at(var) = coef;
  }

  void add_equality(std::vector<Term> terms, double rhs) {
    equalities.push_back({std::move(terms), rhs});
  }

  void add_inequality(std::vector<Term> terms, double rhs) {
    inequalities.push_back({std::move(terms), rhs});
  }

  double lower_bound(int j) const {
    return j < static_cast<int>(lowerBounds.size()) ? lowerBounds[j] : 0.0;
  }

  void require_valid() const {
    auto checkRow = [&](const Row& r) {
      if (!std::isfinite(r.rhs)) throw std::invalid_argument("LinearProgram: non-finite rhs");
      for (const auto& t : r.terms) {
        if (t.col < 0 || t.col >= numVars)
          throw std::invalid_argument("LinearProgram: column index out of range");
        if (!std::isfinite(t.coef)) throw std::invalid_argument("LinearProgram: non-finite coefficient");
      }
    };
    for (const auto& r : equalities) checkRow(r);
    for (const auto& r : inequalities) checkRow(r);
    for (double lb : lowerBounds)
      if (!std::isfinite(lb)) throw std::invalid_argument("LinearProgram: non-finite lower bound");
    if (!objective.empty() && objective.size() != static_cast<size_t>(numVars))
      throw std::invalid_argument("LinearProgram: objective length mismatch");
    for (double c : objective)
      if (!std::isfinite(c)) throw std::invalid_argument("LinearProgram: non-finite objective");
  }
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Undecided };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Undecided: return "undecided";
  }
  return "?";
}

struct Certificate {
  enum class Kind { Feasible, Infeasible };
  Kind kind = Kind::Feasible;
  std::vector<double> primal;            // feasible: point in the original space
  std::vector<double> dualEq;            // infeasible: Farkas ray; optimal: duals
  std::vector<double> dualIneq;
  std::vector<double> primalRay;         // unbounded: improving feasible direction
  double residual = 0.0;                 // feasible: max violation; infeasible: margin
};

struct SolveResult {
  SolveStatus status = SolveStatus::Undecided;
  Certificate certificate;
  std::optional<double> objective;
  long pivots = 0;
  std::string note;
};

struct SolverTolerances {
  double pivot = 1e-10;
  double feasibility = 1e-9;
  double dualityGap = 1e-8;
  long maxPivots = 1000000;
};

namespace detail {

struct Standardized {
  int m = 0;              // rows: equalities then inequalities
  int numOrig = 0;
  int numEq = 0;
  int nStruct = 0;        // original vars + slacks
  std::vector<std::vector<Term>> cols;  // column-major, scaled/flipped system
  std::vector<double> rhs;              // >= 0 after flips
  std::vector<double> rowScale;         // original row max-|coef| (>= tiny)
  std::vector<int> rowSign;             // +-1 flip applied after scaling
  std::vector<double> shift;            // lower bounds
};

inline Standardized standardize(const LinearProgram& lp) {
  Standardized s;
  s.numOrig = lp.numVars;
  s.numEq = static_cast<int>(lp.equalities.size());
  s.m = s.numEq + static_cast<int>(lp.inequalities.size());
  s.nStruct = lp.numVars + static_cast<int>(lp.inequalities.size());
  s.cols.resize(s.nStruct);
  s.rhs.resize(s.m);
  s.rowScale.resize(s.m, 1.0);
  s.rowSign.resize(s.m, 1);
  s.shift.resize(lp.numVars, 0.0);
  for (int j = 0; j < lp.numVars; ++j) s.shift[j] = lp.lower_bound(j);

  int r = 0;
  auto addRow = [&](const Row& row, bool isIneq) {
    double scale = 0.0;
    for (const auto& t : row.terms) scale = std::max(scale, std::abs(t.coef));
    if (scale <= 0.0) scale = 1.0;
    double rhs = row.rhs;
    for (const auto& t : row.terms) rhs -= t.coef * s.shift[t.col];
    rhs /= scale;
    int sign = rhs < 0.0 ? -1 : 1;
    s.rowScale[r] = scale;
    s.rowSign[r] = sign;
    s.rhs[r] = sign * rhs;
    for (const auto& t : row.terms)
      if (t.coef != 0.0) s.cols[t.col].push_back({r, sign * t.coef / scale});
    if (isIneq) s.cols[lp.numVars + (r - s.numEq)].push_back({r, static_cast<double>(sign)});
    ++r;
  };
  for (const auto& row : lp.equalities) addRow(row, false);
  for (const auto& row : lp.inequalities) addRow(row, true);
  return s;
}

// Revised simplex with explicit dense basis inverse.
class Engine {
 public:
  Engine(const Standardized& s, const SolverTolerances& tols)
      : s_(s), tol_(tols), m_(s.m) {
    basis_.resize(m_);
    inBasis_.assign(s_.nStruct + m_, 0);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    xb_ = s_.rhs;
    for (int i = 0; i < m_; ++i) {
      binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
      basis_[i] = artificial(i);
    }
    // inequality rows that kept their sign can start on the slack instead
    for (int i = s_.numEq; i < m_; ++i)
      if (s_.rowSign[i] > 0) basis_[i] = s_.numOrig + (i - s_.numEq);
    for (int i = 0; i < m_; ++i) inBasis_[basis_[i]] = 1;
  }

  int artificial(int row) const { return s_.nStruct + row; }
  bool is_artificial(int col) const { return col >= s_.nStruct; }

  long pivots() const { return pivots_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<double>& basic_values() const { return xb_; }

  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_of(cost, basis_[i]);
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
    }
    return y;
  }

  double objective_value(const std::vector<double>& cost) const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost_of(cost, basis_[i]) * xb_[i];
    return v;
  }

  // Maximizes cost over the standardized system. `allowArtificials` controls
  // whether artificial columns may enter (phase one only).
  // Returns Optimal, Unbounded or Undecided.
  SolveStatus run(const std::vector<double>& cost, bool allowArtificials) {
    long degenerateStreak = 0;
    bool bland = false;
    while (true) {
      if (pivots_ >= tol_.maxPivots) return SolveStatus::Undecided;
      const std::vector<double> y = duals(cost);

      int entering = -1;
      double bestRc = tol_.pivot;
      const int candCount = allowArtificials ? s_.nStruct + m_ : s_.nStruct;
      for (int j = 0; j < candCount; ++j) {
        if (inBasis_[j]) continue;
        const double rc = cost_of(cost, j) - dot_col(y, j);
        if (rc > bestRc) {
          entering = j;
          if (bland) break;
          bestRc = rc;
        }
      }
      if (entering < 0) return SolveStatus::Optimal;

      ftran(entering, dir_);
      int leave = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (dir_[i] > tol_.pivot) {
          const double t = xb_[i] / dir_[i];
          if (t < theta - 1e-12 || (t < theta + 1e-12 && (leave < 0 || basis_[i] < basis_[leave])))
            { theta = t; leave = i; }
        }
      }
      if (leave < 0) {
        unboundedEntering_ = entering;
        unboundedDir_ = dir_;
        return SolveStatus::Unbounded;
      }

      pivot_(entering, leave, theta);
      ++pivots_;
      if (theta <= tol_.feasibility) {
        if (++degenerateStreak > 50) bland = true;
      } else {
        degenerateStreak = 0;
        bland = false;
      }
      if (pivots_ % 128 == 0 && !refactor_()) return SolveStatus::Undecided;
    }
  }

  // After phase one: pivot basic artificials out where possible.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (int j = 0; j < s_.nStruct; ++j) {
        if (inBasis_[j]) continue;
        ftran(j, dir_);
        if (std::abs(dir_[i]) > 1e-7) {
          pivot_(j, i, 0.0);
          ++pivots_;
          break;
        }
      }
    }
  }

  double artificial_mass() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      if (is_artificial(basis_[i])) s += std::abs(xb_[i]);
    return s;
  }

  std::vector<double> structural_solution() const {
    std::vector<double> x(s_.nStruct, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < s_.nStruct) x[basis_[i]] = xb_[i];
    return x;
  }

  int unbounded_entering() const { return unboundedEntering_; }
  const std::vector<double>& unbounded_direction() const { return unboundedDir_; }

  void ftran(int col, std::vector<double>& out) const {
    out.assign(m_, 0.0);
    if (is_artificial(col)) {
      const int r = col - s_.nStruct;
      for (int i = 0; i < m_; ++i) out[i] = binv_[static_cast<size_t>(i) * m_ + r];
      return;
    }
    for (const auto& t : s_.cols[col])
      for (int i = 0; i < m_; ++i) out[i] += binv_[static_cast<size_t>(i) * m_ + t.col] * t.coef;
  }

 private:
  static double cost_of(const std::vector<double>& cost, int col) {
    return col < static_cast<int>(cost.size()) ? cost[col] : 0.0;
  }

  double dot_col(const std::vector<double>& y, int col) const {
    if (is_artificial(col)) return y[col - s_.nStruct];
    double v = 0.0;
    for (const auto& t : s_.cols[col]) v += y[t.col] * t.coef;
    return v;
  }

  void pivot_(int entering, int leaveRow, double theta) {
    const double pivotVal = dir_[leaveRow];
    double* prow = &binv_[static_cast<size_t>(leaveRow) * m_];
    for (int k = 0; k < m_; ++k) prow[k] /= pivotVal;
    xb_[leaveRow] = theta;
    for (int i = 0; i < m_; ++i) {
      if (i == leaveRow) continue;
      const double f = dir_[i];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
      xb_[i] -= f * theta;
      if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;
    }
    inBasis_[basis_[leaveRow]] = 0;
    inBasis_[entering] = 1;
    basis_[leaveRow] = entering;
  }

  // Rebuild the inverse from scratch (numerical hygiene).
  bool refactor_() {
    std::vector<double> b(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int col = basis_[i];
      if (is_artificial(col)) {
        b[static_cast<size_t>(col - s_.nStruct) * m_ + i] = 1.0;
      } else {
        for (const auto& t : s_.cols[col]) b[static_cast<size_t>(t.col) * m_ + i] = t.coef;
      }
    }
    std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = 1.0;
    for (int k = 0; k < m_; ++k) {
      int pr = k;
      double best = std::abs(b[static_cast<size_t>(k) * m_ + k]);
      for (int i = k + 1; i < m_; ++i) {
        const double v = std::abs(b[static_cast<size_t>(i) * m_ + k]);
        if (v > best) { best = v; pr = i; }
      }
      if (best < 1e-13) return false;
      if (pr != k) {
        for (int j = 0; j < m_; ++j) {
          std::swap(b[static_cast<size_t>(pr) * m_ + j], b[static_cast<size_t>(k) * m_ + j]);
          std::swap(inv[static_cast<size_t>(pr) * m_ + j], inv[static_cast<size_t>(k) * m_ + j]);
        }
      }
      const double piv = b[static_cast<size_t>(k) * m_ + k];
      for (int j = 0; j < m_; ++j) {
        b[static_cast<size_t>(k) * m_ + j] /= piv;
        inv[static_cast<size_t>(k) * m_ + j] /= piv;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == k) continue;
        const double f = b[static_cast<size_t>(i) * m_ + k];
        if (f == 0.0) continue;
        for (int j = 0; j < m_; ++j) {
          b[static_cast<size_t>(i) * m_ + j] -= f * b[static_cast<size_t>(k) * m_ + j];
          inv[static_cast<size_t>(i) * m_ + j] -= f * inv[static_cast<size_t>(k) * m_ + j];
        }
      }
    }
    binv_ = std::move(inv);
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += binv_[static_cast<size_t>(i) * m_ + k] * s_.rhs[k];
      xb_[i] = v;
    }
    return true;
  }

  const Standardized& s_;
  SolverTolerances tol_;
  int m_;
  std::vector<int> basis_;
  std::vector<char> inBasis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<double> dir_;
  long pivots_ = 0;
  int unboundedEntering_ = -1;
  std::vector<double> unboundedDir_;
};

}  // namespace detail

inline SolveResult solve(const LinearProgram& lp, const SolverTolerances& tols = {}) {
  lp.require_valid();
  SolveResult res;
  const detail::Standardized s = detail::standardize(lp);
  detail::Engine eng(s, tols);

  // Phase one: maximize minus the artificial mass.
  std::vector<double> phase1(s.nStruct + s.m, 0.0);
  for (int i = 0; i < s.m; ++i) phase1[s.nStruct + i] = -1.0;
  SolveStatus st = eng.run(phase1, true);
  res.pivots = eng.pivots();
  if (st == SolveStatus::Undecided) {
    res.status = SolveStatus::Undecided;
    res.note = "pivot limit exceeded in phase one";
    return res;
  }

  const double infeasMass = -eng.objective_value(phase1);
  if (infeasMass > tols.feasibility) {
    // Farkas ray from the phase-one duals, mapped back to the original rows.
    const std::vector<double> y = eng.duals(phase1);
    Certificate cert;
    cert.kind = Certificate::Kind::Infeasible;
    cert.dualEq.resize(lp.equalities.size());
    cert.dualIneq.resize(lp.inequalities.size());
    double norm = 0.0;
    for (int i = 0; i < s.m; ++i) {
      const double v = y[i] * s.rowSign[i] / s.rowScale[i];
      if (i < s.numEq) cert.dualEq[i] = v;
      else cert.dualIneq[i - s.numEq] = std::max(v, 0.0);
      norm = std::max(norm, std::abs(v));
    }
    if (norm > 0.0) {
      for (double& v : cert.dualEq) v /= norm;
      for (double& v : cert.dualIneq) v /= norm;
    }
    // margin = g.lb - (b.yE + h.yI) with g = A^T yE + G^T yI
    std::vector<double> g(lp.numVars, 0.0);
    double rhsDot = 0.0;
    for (size_t i = 0; i < lp.equalities.size(); ++i) {
      for (const auto& t : lp.equalities[i].terms) g[t.col] += cert.dualEq[i] * t.coef;
      rhsDot += cert.dualEq[i] * lp.equalities[i].rhs;
    }
    for (size_t i = 0; i < lp.inequalities.size(); ++i) {
      for (const auto& t : lp.inequalities[i].terms) g[t.col] += cert.dualIneq[i] * t.coef;
      rhsDot += cert.dualIneq[i] * lp.inequalities[i].rhs;
    }
    double margin = -rhsDot;
    for (int j = 0; j < lp.numVars; ++j) margin += g[j] * lp.lower_bound(j);
    cert.residual = margin;
    res.status = SolveStatus::Infeasible;
    res.certificate = std::move(cert);
    return res;
  }

  eng.expel_artificials();

  // Phase two.
  if (!lp.objective.empty()) {
    std::vector<double> cost(lp.objective);
    cost.resize(s.nStruct + s.m, 0.0);
    st = eng.run(cost, false);
    res.pivots = eng.pivots();
    if (st == SolveStatus::Undecided) {
      res.status = SolveStatus::Undecided;
      res.note = "pivot limit exceeded in phase two";
      return res;
    }
    if (eng.artificial_mass() > tols.feasibility) {
      res.status = SolveStatus::Undecided;
      res.note = "residual artificial mass after phase two";
      return res;
    }
    if (st == SolveStatus::Unbounded) {
      Certificate cert;
      cert.kind = Certificate::Kind::Feasible;
      const auto xs = eng.structural_solution();
      cert.primal.resize(lp.numVars);
      for (int j = 0; j < lp.numVars; ++j) cert.primal[j] = xs[j] + s.shift[j];
      cert.primalRay.assign(lp.numVars, 0.0);
      const auto& d = eng.unbounded_direction();
      const int ent = eng.unbounded_entering();
      if (ent < lp.numVars) cert.primalRay[ent] = 1.0;
      for (int i = 0; i < s.m; ++i) {
        const int b = eng.basis()[i];
        if (b < lp.numVars) cert.primalRay[b] = -d[i];
      }
      double viol = 0.0;
      for (const auto& row : lp.equalities) {
        double v = -row.rhs;
        for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
        viol = std::max(viol, std::abs(v));
      }
      for (const auto& row : lp.inequalities) {
        double v = -row.rhs;
        for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
        viol = std::max(viol, v);
      }
      for (int j = 0; j < lp.numVars; ++j)
        viol = std::max(viol, lp.lower_bound(j) - cert.primal[j]);
      cert.residual = std::max(viol, 0.0);
      res.certificate = std::move(cert);
      res.status = SolveStatus::Unbounded;
      return res;
    }
  }

  // Optimal or plain feasible.
  Certificate cert;
  cert.kind = Certificate::Kind::Feasible;
  const auto xs = eng.structural_solution();
  cert.primal.resize(lp.numVars);
  for (int j = 0; j < lp.numVars; ++j) cert.primal[j] = xs[j] + s.shift[j];

  double viol = 0.0;
  for (const auto& row : lp.equalities) {
    double v = -row.rhs;
    for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
    viol = std::max(viol, std::abs(v));
  }
  for (const auto& row : lp.inequalities) {
    double v = -row.rhs;
    for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
    viol = std::max(viol, v);
  }
  for (int j = 0; j < lp.numVars; ++j) viol = std::max(viol, lp.lower_bound(j) - cert.primal[j]);
  cert.residual = std::max(viol, 0.0);

  if (!lp.objective.empty()) {
    std::vector<double> cost(lp.objective);
    cost.resize(s.nStruct + s.m, 0.0);
    const std::vector<double> y = eng.duals(cost);
    cert.dualEq.resize(lp.equalities.size());
    cert.dualIneq.resize(lp.inequalities.size());
    for (int i = 0; i < s.m; ++i) {
      const double v = y[i] * s.rowSign[i] / s.rowScale[i];
      if (i < s.numEq) cert.dualEq[i] = v;
      else cert.dualIneq[i - s.numEq] = std::max(v, 0.0);
    }
    double obj = 0.0;
    for (int j = 0; j < lp.numVars; ++j) obj += lp.objective[j] * cert.primal[j];
    res.objective = obj;
    res.status = SolveStatus::Optimal;
  } else {
    res.status = SolveStatus::Feasible;
  }
  res.certificate = std::move(cert);
  res.pivots = eng.pivots();
  return res;
}

struct VerifyResult {
  bool ok = false;
  double margin = 0.0;
  std::string detail;
};

// Re-checks a certificate by plain arithmetic on the original program; no
// solver state is reused.
inline VerifyResult verify_certificate(const LinearProgram& lp, const Certificate& cert,
                                       double tol = 1e-9) {
  lp.require_valid();
  VerifyResult out;
  if (cert.kind == Certificate::Kind::Feasible) {
    if (cert.primal.size() != static_cast<size_t>(lp.numVars)) {
      out.detail = "primal length mismatch";
      return out;
    }
    double viol = 0.0;
    for (const auto& row : lp.equalities) {
      double v = -row.rhs;
      for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
      viol = std::max(viol, std::abs(v));
    }
    for (const auto& row : lp.inequalities) {
      double v = -row.rhs;
      for (const auto& t : row.terms) v += t.coef * cert.primal[t.col];
      viol = std::max(viol, v);
    }
    for (int j = 0; j < lp.numVars; ++j)
      viol = std::max(viol, lp.lower_bound(j) - cert.primal[j]);
    const double budget = std::max(cert.residual, tol);
    out.margin = budget - viol;
    out.ok = viol <= budget;
    if (!out.ok) { out.detail = "primal violation exceeds stated residual"; return out; }

    // Optimality part, when duals are present and the program has an objective.
    if (!lp.objective.empty() && (!cert.dualEq.empty() || !cert.dualIneq.empty())) {
      if (cert.dualEq.size() != lp.equalities.size() ||
          cert.dualIneq.size() != lp.inequalities.size()) {
        out.ok = false;
        out.detail = "dual length mismatch";
        return out;
      }
      for (double v : cert.dualIneq)
        if (v < -tol) { out.ok = false; out.detail = "negative inequality multiplier"; return out; }
      std::vector<double> rc(lp.objective);
      rc.resize(lp.numVars, 0.0);
      for (size_t i = 0; i < lp.equalities.size(); ++i)
        for (const auto& t : lp.equalities[i].terms) rc[t.col] -= cert.dualEq[i] * t.coef;
      for (size_t i = 0; i < lp.inequalities.size(); ++i)
        for (const auto& t : lp.inequalities[i].terms) rc[t.col] -= cert.dualIneq[i] * t.coef;
      double scale = 1.0;
      for (int j = 0; j < lp.numVars; ++j) scale = std::max(scale, std::abs(lp.objective[j]));
      for (int j = 0; j < lp.numVars; ++j)
        if (rc[j] > tol * scale * 10.0) {
          out.ok = false;
          out.detail = "positive reduced cost at optimality";
          return out;
        }
      double dualObj = 0.0;
      for (size_t i = 0; i < lp.equalities.size(); ++i) dualObj += cert.dualEq[i] * lp.equalities[i].rhs;
      for (size_t i = 0; i < lp.inequalities.size(); ++i) dualObj += cert.dualIneq[i] * lp.inequalities[i].rhs;
      for (int j = 0; j < lp.numVars; ++j) dualObj += rc[j] * lp.lower_bound(j);
      double primalObj = 0.0;
      for (int j = 0; j < lp.numVars; ++j) primalObj += lp.objective[j] * cert.primal[j];
      const double gap = std::abs(dualObj - primalObj);
      if (gap > 1e-8 * std::max(1.0, std::abs(primalObj))) {
        out.ok = false;
        out.detail = "duality gap too large";
        return out;
      }
    }
    return out;
  }

  // Infeasibility: Farkas ray.
  if (cert.dualEq.size() != lp.equalities.size() ||
      cert.dualIneq.size() != lp.inequalities.size()) {
    out.detail = "dual ray length mismatch";
    return out;
  }
  double norm = 0.0;
  for (double v : cert.dualEq) norm = std::max(norm, std::abs(v));
  for (double v : cert.dualIneq) norm = std::max(norm, std::abs(v));
  if (norm <= 0.0) { out.detail = "zero dual ray"; return out; }
  for (double v : cert.dualIneq)
    if (v < -tol * norm) { out.detail = "negative inequality multiplier in ray"; return out; }

  std::vector<double> g(lp.numVars, 0.0);
  double rhsDot = 0.0;
  double colScale = 1.0;
  for (size_t i = 0; i < lp.equalities.size(); ++i) {
    for (const auto& t : lp.equalities[i].terms) {
      g[t.col] += cert.dualEq[i] * t.coef;
      colScale = std::max(colScale, std::abs(t.coef));
    }
    rhsDot += cert.dualEq[i] * lp.equalities[i].rhs;
  }
  for (size_t i = 0; i < lp.inequalities.size(); ++i) {
    for (const auto& t : lp.inequalities[i].terms) {
      g[t.col] += cert.dualIneq[i] * t.coef;
      colScale = std::max(colScale, std::abs(t.coef));
    }
    rhsDot += cert.dualIneq[i] * lp.inequalities[i].rhs;
  }
  for (int j = 0; j < lp.numVars; ++j)
    if (g[j] < -tol * norm * colScale) {
      out.detail = "ray combination has a negative variable coefficient";
      return out;
    }
  double margin = -rhsDot;
  for (int j = 0; j < lp.numVars; ++j) margin += g[j] * lp.lower_bound(j);
  out.margin = margin;
  out.ok = margin > tol * norm;
  if (!out.ok) out.detail = "non-positive contradiction margin";
  return out;
}

// Fixed-format text dump for cross-checking with external solvers.
inline std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(17);
  os << "lp 1\n";
  os << "vars " << lp.numVars << "\n";
  os << "objective " << (lp.objective.empty() ? "none" : "maximize") << "\n";
  if (!lp.objective.empty()) {
    for (int j = 0; j < lp.numVars; ++j)
      if (lp.objective[j] != 0.0) os << "  c " << j << " " << lp.objective[j] << "\n";
  }
  os << "equalities " << lp.equalities.size() << "\n";
  for (const auto& row : lp.equalities) {
    os << " ";
    for (const auto& t : row.terms) os << " " << t.col << ":" << t.coef;
    os << " = " << row.rhs << "\n";
  }
  os << "inequalities " << lp.inequalities.size() << "\n";
  for (const auto& row : lp.inequalities) {
    os << " ";
    for (const auto& t : row.terms) os << " " << t.col << ":" << t.coef;
    os << " <= " << row.rhs << "\n";
  }
  os << "bounds\n";
  for (int j = 0; j < lp.numVars; ++j)
    if (lp.lower_bound(j) != 0.0) os << "  lb " << j << " " << lp.lower_bound(j) << "\n";
  os << "end\n";
  return os.str();
}

inline LinearProgram parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  LinearProgram lp;
  if (!(is >> tok) || tok != "lp") throw std::invalid_argument("lp dump: bad header");
  int version;
  is >> version;
  is >> tok >> lp.numVars;
  lp.lowerBounds.assign(lp.numVars, 0.0);
  is >> tok >> tok;
  const bool hasObj = tok == "maximize";
  if (hasObj) lp.objective.assign(lp.numVars, 0.0);
  std::string line;
  std::getline(is, line);
  auto parseRow = [&](const std::string& l, bool isEq) {
    std::istringstream ls(l);
    Row row;
    std::string t;
    while (ls >> t) {
      if (t == "=" || t == "<=") {
        ls >> row.rhs;
        break;
      }
      const auto colon = t.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("lp dump: bad term " + t);
      row.terms.push_back({std::stoi(t.substr(0, colon)), std::stod(t.substr(colon + 1))});
    }
    if (isEq) lp.equalities.push_back(std::move(row));
    else lp.inequalities.push_back(std::move(row));
  };
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") {
      int j; double v;
      ls >> j >> v;
      lp.objective.at(j) = v;
    } else if (head == "equalities" || head == "inequalities") {
      int count;
      ls >> count;
      for (int k = 0; k < count; ++k) {
        std::getline(is, line);
        parseRow(line, head == "equalities");
      }
    } else if (head == "lb") {
      int j; double v;
      ls >> j >> v;
      lp.lowerBounds.at(j) = v;
    } else if (head == "bounds" || head == "end") {
      continue;
    } else {
      throw std::invalid_argument("lp dump: unknown section " + head);
    }
  }
  lp.require_valid();
  return lp;
}

}  // namespace leggett::lp
