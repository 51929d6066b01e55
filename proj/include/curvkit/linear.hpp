#pragma once

#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "curvkit/expr.hpp"

namespace curvkit {

/// A solver produced a point that does not satisfy its own system.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Affine solution set of a linear system over the field of Exprs:
/// particular + span(basis).  The particular solution sets every free
/// unknown to zero; basis vector j has free unknown free_columns[j] = 1.
struct SolutionSpace {
  std::vector<std::string> unknowns;
  bool consistent = false;
  std::vector<Expr> particular;
  std::vector<std::vector<Expr>> basis;
  std::vector<int> free_columns;

  bool unique() const { return consistent && basis.empty(); }
  std::size_t dimension() const { return basis.size(); }
  /// particular + Σ t_j basis_j.
  std::vector<Expr> point(const std::vector<Expr>& t) const;
};

/// Linear system Σ_j c_j u_j = rhs, reduced incrementally to reduced row
/// echelon form as equations arrive.  Exact duplicate equations are dropped.
class LinearSystem {
 public:
  explicit LinearSystem(std::vector<std::string> unknowns);

  std::size_t unknown_count() const { return unknowns_.size(); }
  const std::vector<std::string>& unknowns() const { return unknowns_; }

  void add_equation(const std::vector<Expr>& coeffs, const Expr& rhs);
  void add_sparse(const std::vector<std::pair<int, Expr>>& coeffs, const Expr& rhs);

  /// False once a contradiction 0 = c (c != 0) has been derived.
  bool consistent() const { return consistent_; }

  /// Full solution set, back-substituted into every stored equation;
  /// throws InconsistencyError if that check fails.
  SolutionSpace solve() const;

  /// Residuals Σ c_j u_j - rhs of the stored equations at a point.
  bool satisfied_by(const std::vector<Expr>& point) const;

  std::size_t equation_count() const { return original_.size(); }

 private:
  struct RowHash {
    std::size_t operator()(const std::vector<Expr>& r) const;
  };

  void insert(std::vector<Expr> row);

  std::vector<std::string> unknowns_;
  std::vector<std::vector<Expr>> original_;  // coefficients then rhs
  std::unordered_set<std::vector<Expr>, RowHash> seen_;
  std::vector<std::pair<int, std::vector<Expr>>> pivots_;  // (pivot column, normalized row)
  bool consistent_ = true;
};

SolutionSpace solve_linear_system(const std::vector<std::vector<Expr>>& m, const std::vector<Expr>& rhs,
                                  std::vector<std::string> unknowns = {});

}  // namespace curvkit
