#include "vrpvp/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vrpvp {

namespace {

constexpr double kEnterTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kRefactorInterval = 100;
constexpr int kMaxPivots = 200000;

struct SparseCol {
  std::vector<std::pair<int, double>> nz;
};

// Internal variable numbering: structural 0..n-1 (free var split appends its
// negative part as variable n-1), slacks n..n+m-1, artificials beyond.
class Simplex {
 public:
  Simplex(const LpProblem& p) : problem_(p), m_(static_cast<int>(p.rows.size())) {
    if (static_cast<int>(p.objective.size()) != p.n_vars)
      throw std::invalid_argument("solve_lp: objective length != n_vars");
    if (p.rhs.size() != p.rows.size())
      throw std::invalid_argument("solve_lp: rhs length != row count");
    for (const auto& row : p.rows)
      if (static_cast<int>(row.size()) != p.n_vars)
        throw std::invalid_argument("solve_lp: row length != n_vars");
    if (p.free_var >= p.n_vars)
      throw std::invalid_argument("solve_lp: free_var out of range");

    n_struct_ = p.n_vars + (p.free_var >= 0 ? 1 : 0);
    cols_.resize(static_cast<std::size_t>(n_struct_));
    for (int i = 0; i < m_; ++i) {
      const auto& row = p.rows[static_cast<std::size_t>(i)];
      for (int j = 0; j < p.n_vars; ++j)
        if (row[static_cast<std::size_t>(j)] != 0.0)
          cols_[static_cast<std::size_t>(j)].nz.emplace_back(i, row[static_cast<std::size_t>(j)]);
    }
    cost_.assign(static_cast<std::size_t>(n_struct_), 0.0);
    for (int j = 0; j < p.n_vars; ++j) cost_[static_cast<std::size_t>(j)] = p.objective[static_cast<std::size_t>(j)];
    if (p.free_var >= 0) {
      const int neg = n_struct_ - 1;
      auto& col = cols_[static_cast<std::size_t>(neg)];
      for (auto [i, v] : cols_[static_cast<std::size_t>(p.free_var)].nz) col.nz.emplace_back(i, -v);
      cost_[static_cast<std::size_t>(neg)] = -p.objective[static_cast<std::size_t>(p.free_var)];
    }
    b_ = Eigen::Map<const Eigen::VectorXd>(p.rhs.data(), m_);
  }

  LpSolution solve(const std::vector<int>* warm_basis) {
    LpSolution out;
    n_total_ = n_struct_ + m_;  // artificials appended on demand

    if (warm_basis != nullptr && try_warm_start(*warm_basis)) {
      // feasible warm basis installed; straight to phase 2
    } else if (b_.minCoeff() >= -kFeasTol) {
      basis_.resize(static_cast<std::size_t>(m_));
      for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_struct_ + i;
      binv_ = Eigen::MatrixXd::Identity(m_, m_);
      xb_ = b_;
    } else {
      if (!phase1(out)) return out;
    }

    const LpStatus st = run(/*phase1=*/false);
    if (st != LpStatus::Optimal) {
      out.status = st;
      return out;
    }
    refactor();
    extract(out);
    return out;
  }

 private:
  double cost_of(int var) const {
    if (var < n_struct_) return cost_[static_cast<std::size_t>(var)];
    return 0.0;  // slack or artificial (artificial cost handled in phase 1)
  }

  // Column access in internal numbering.
  template <typename F>
  void for_col(int var, F&& f) const {
    if (var < n_struct_) {
      for (auto [i, v] : cols_[static_cast<std::size_t>(var)].nz) f(i, v);
    } else if (var < n_struct_ + m_) {
      f(var - n_struct_, 1.0);
    } else {
      f(art_row_[static_cast<std::size_t>(var - n_struct_ - m_)], -1.0);
    }
  }

  Eigen::VectorXd dense_col(int var) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m_);
    for_col(var, [&c](int i, double v) { c(i) = v; });
    return c;
  }

  void refactor() {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = dense_col(basis_[static_cast<std::size_t>(i)]);
    binv_ = B.partialPivLu().inverse();
    xb_ = binv_ * b_;
  }

  bool try_warm_start(const std::vector<int>& basis) {
    if (static_cast<int>(basis.size()) != m_) return false;
    std::vector<char> seen(static_cast<std::size_t>(n_struct_ + m_), 0);
    for (int v : basis) {
      if (v < 0 || v >= n_struct_ + m_) return false;
      if (seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = 1;
    }
    Eigen::MatrixXd B(m_, m_);
    basis_ = basis;
    for (int i = 0; i < m_; ++i) B.col(i) = dense_col(basis_[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    xb_ = binv_ * b_;
    if (xb_.minCoeff() < -kPhase1Tol) return false;
    return true;
  }

  bool phase1(LpSolution& out) {
    basis_.resize(static_cast<std::size_t>(m_));
    art_row_.clear();
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    xb_ = b_;
    for (int i = 0; i < m_; ++i) {
      if (b_(i) >= 0) {
        basis_[static_cast<std::size_t>(i)] = n_struct_ + i;
      } else {
        const int art = n_struct_ + m_ + static_cast<int>(art_row_.size());
        art_row_.push_back(i);
        basis_[static_cast<std::size_t>(i)] = art;
        binv_(i, i) = -1.0;
        xb_(i) = -b_(i);
      }
    }
    n_total_ = n_struct_ + m_ + static_cast<int>(art_row_.size());

    const LpStatus st = run(/*phase1=*/true);
    if (st != LpStatus::Optimal) {
      out.status = LpStatus::Failed;
      return false;
    }
    refactor();
    double art_sum = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= n_struct_ + m_) art_sum += std::max(0.0, xb_(i));
    if (art_sum > kPhase1Tol) {
      out.status = LpStatus::Infeasible;
      return false;
    }
    // Drive residual zero-valued artificials out where possible.
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_struct_ + m_) continue;
      const Eigen::VectorXd row = binv_.row(i);
      int replacement = -1;
      for (int j = 0; j < n_struct_ + m_ && replacement < 0; ++j) {
        if (is_basic(j)) continue;
        double pivot = 0.0;
        for_col(j, [&row, &pivot](int r, double v) { pivot += row(r) * v; });
        if (std::abs(pivot) > 1e-7) replacement = j;
      }
      if (replacement >= 0) {
        const Eigen::VectorXd d = binv_ * dense_col(replacement);
        pivot_update(replacement, i, d);
      }
      // else: redundant row, artificial stays basic at value 0
    }
    return true;
  }

  bool is_basic(int var) const {
    return std::find(basis_.begin(), basis_.end(), var) != basis_.end();
  }

  LpStatus run(bool phase1) {
    std::vector<char> in_basis(static_cast<std::size_t>(n_total_), 0);
    auto rebuild_flags = [&]() {
      std::fill(in_basis.begin(), in_basis.end(), 0);
      for (int v : basis_) in_basis[static_cast<std::size_t>(v)] = 1;
    };
    rebuild_flags();

    auto phase_cost = [this, phase1](int var) {
      if (phase1) return var >= n_struct_ + m_ ? 1.0 : 0.0;
      return cost_of(var);
    };

    const int bland_threshold =
        3 * (m_ + n_total_);
    int pivots_since_refactor = 0;

    for (int iter = 0; iter < kMaxPivots; ++iter) {
      // y' = cB' * Binv
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb(i) = phase_cost(basis_[static_cast<std::size_t>(i)]);
      const Eigen::VectorXd y = binv_.transpose() * cb;

      const bool bland = total_pivots_ > bland_threshold;
      int entering = -1;
      double best_r = -kEnterTol;
      for (int j = 0; j < n_total_; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        if (!phase1 && j >= n_struct_ + m_) continue;  // artificials barred in phase 2
        double r = phase_cost(j);
        for_col(j, [&y, &r](int i, double v) { r -= y(i) * v; });
        if (r < -kEnterTol) {
          if (bland) {
            entering = j;
            break;
          }
          if (r < best_r) {
            best_r = r;
            entering = j;
          }
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      const Eigen::VectorXd d = binv_ * dense_col(entering);
      int leave_row = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (d(i) > kPivotTol) {
          const double ratio = std::max(0.0, xb_(i)) / d(i);
          if (ratio < theta - 1e-12 ||
              (ratio < theta + 1e-12 &&
               (leave_row < 0 ||
                (bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave_row)]
                       : std::abs(d(i)) > std::abs(d(leave_row)))))) {
            theta = ratio;
            leave_row = i;
          }
        }
      }
      if (leave_row < 0) return phase1 ? LpStatus::Failed : LpStatus::Unbounded;

      in_basis[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave_row)])] = 0;
      in_basis[static_cast<std::size_t>(entering)] = 1;
      pivot_update(entering, leave_row, d);

      if (++pivots_since_refactor >= kRefactorInterval) {
        refactor();
        pivots_since_refactor = 0;
      }
    }
    return LpStatus::Failed;
  }

  void pivot_update(int entering, int leave_row, const Eigen::VectorXd& d) {
    const double piv = d(leave_row);
    binv_.row(leave_row) /= piv;
    xb_(leave_row) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_row) continue;
      const double f = d(i);
      if (f != 0.0) {
        binv_.row(i) -= f * binv_.row(leave_row);
        xb_(i) -= f * xb_(leave_row);
      }
    }
    basis_[static_cast<std::size_t>(leave_row)] = entering;
    ++total_pivots_;
  }

  void extract(LpSolution& out) {
    std::vector<double> x(static_cast<std::size_t>(n_struct_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[static_cast<std::size_t>(i)];
      if (v < n_struct_) x[static_cast<std::size_t>(v)] = xb_(i);
    }
    out.x.assign(static_cast<std::size_t>(problem_.n_vars), 0.0);
    for (int j = 0; j < problem_.n_vars; ++j) out.x[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
    if (problem_.free_var >= 0)
      out.x[static_cast<std::size_t>(problem_.free_var)] -= x[static_cast<std::size_t>(n_struct_ - 1)];

    out.objective = 0.0;
    for (int j = 0; j < problem_.n_vars; ++j)
      out.objective += problem_.objective[static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];

    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb(i) = cost_of(basis_[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd y = binv_.transpose() * cb;
    out.duals.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) out.duals[static_cast<std::size_t>(i)] = y(i);

    out.basis = basis_;
    out.pivots = total_pivots_;
    out.status = LpStatus::Optimal;
  }

  const LpProblem& problem_;
  int m_ = 0;
  int n_struct_ = 0;
  int n_total_ = 0;
  std::vector<SparseCol> cols_;
  std::vector<double> cost_;
  Eigen::VectorXd b_;

  std::vector<int> basis_;
  std::vector<int> art_row_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int total_pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const std::vector<int>* warm_basis) {
  Simplex s(problem);
  return s.solve(warm_basis);
}

std::vector<std::string> check_duality(const LpProblem& problem, const LpSolution& solution) {
  std::vector<std::string> out;
  if (solution.status != LpStatus::Optimal) {
    out.push_back("solution not optimal");
    return out;
  }
  const int m = static_cast<int>(problem.rows.size());
  const int n = problem.n_vars;

  // Primal feasibility.
  std::vector<double> slack(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j)
      lhs += problem.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             solution.x[static_cast<std::size_t>(j)];
    slack[static_cast<std::size_t>(i)] = problem.rhs[static_cast<std::size_t>(i)] - lhs;
    if (lhs > problem.rhs[static_cast<std::size_t>(i)] + kFeasTol * (1.0 + std::abs(problem.rhs[static_cast<std::size_t>(i)])))
      out.push_back("primal infeasibility row " + std::to_string(i));
  }
  for (int j = 0; j < n; ++j)
    if (j != problem.free_var && solution.x[static_cast<std::size_t>(j)] < -kFeasTol)
      out.push_back("negative variable " + std::to_string(j));

  // Dual sign.
  for (int i = 0; i < m; ++i)
    if (solution.duals[static_cast<std::size_t>(i)] > 1e-9)
      out.push_back("dual sign violation row " + std::to_string(i));

  // Dual feasibility / reduced costs.
  for (int j = 0; j < n; ++j) {
    double r = problem.objective[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i)
      r -= solution.duals[static_cast<std::size_t>(i)] *
           problem.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (j == problem.free_var) {
      if (std::abs(r) > kPricingTol * 10)
        out.push_back("free-variable dual equation violated, residual " + std::to_string(r));
    } else if (r < -kPricingTol * 10) {
      out.push_back("dual infeasibility column " + std::to_string(j));
    }
  }

  // Complementary slackness.
  for (int i = 0; i < m; ++i) {
    const double v = solution.duals[static_cast<std::size_t>(i)] * slack[static_cast<std::size_t>(i)];
    if (std::abs(v) > 1e-7 * (1.0 + std::abs(problem.rhs[static_cast<std::size_t>(i)])))
      out.push_back("complementary slackness row " + std::to_string(i));
  }

  // Strong duality.
  double dual_obj = 0.0;
  for (int i = 0; i < m; ++i)
    dual_obj += solution.duals[static_cast<std::size_t>(i)] * problem.rhs[static_cast<std::size_t>(i)];
  const double gap = std::abs(solution.objective - dual_obj);
  if (gap > kDualityTol * (1.0 + std::abs(solution.objective)))
    out.push_back("strong duality gap " + std::to_string(gap));

  return out;
}

}  // namespace vrpvp
