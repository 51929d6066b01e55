#pragma once

#include <memory>
#include <string>
#include <vector>

#include "curvkit/expr.hpp"
#include "curvkit/tensor.hpp"

namespace curvkit {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overall sign applied to the curvature operator [∇_X,∇_Y] - ∇_[X,Y].
///
/// Fixed once so that the 5-dimensional example metric with conformal
/// factor exp(x1) has scalar curvature +7/2 exp(-x1); see the calibration
/// test in tests/test_geometry.cpp.
inline constexpr int kCurvatureSign = -1;

/// Textual metric definition: row i of `metric` holds the lower-triangle
/// entries g_i0 .. g_ii as expression strings.
struct MetricSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<std::string> params;
  std::vector<std::vector<std::string>> metric;
};

/// A coordinate chart carrying a nondegenerate symmetric metric.
///
/// The chart is immutable once built; curvature quantities are computed on
/// first use and cached.
class Chart {
 public:
  /// Validates symmetry and nondegeneracy and inverts g by adjugate/det.
  static Chart build(std::string name, Symbols sym, std::vector<std::vector<Expr>> g);

  const std::string& name() const { return name_; }
  const Symbols& symbols() const { return sym_; }
  int n() const { return sym_.n(); }

  const Tensor& metric() const { return g_; }
  const Tensor& inverse_metric() const { return g_inv_; }
  const Expr& g(int a, int b) const { return g_.at({a, b}); }
  const Expr& g_inv(int a, int b) const { return g_inv_.at({a, b}); }
  const Expr& det() const { return det_; }

  Expr d(const Expr& e, int coord) const { return differentiate(e, coord, sym_); }
  std::string str(const Expr& e) const { return to_string(e, sym_); }
  Expr parse(std::string_view src) const { return parse_expression(src, sym_); }

  /// Γ^k_ij stored as [k][i][j] (upper_slot 0).
  const Tensor& christoffel() const;
  /// Curvature operator R^p_abc stored as [a][b][c][p] (upper_slot 3).
  const Tensor& riemann_13() const;
  /// R_abcd = g(R(∂a,∂b)∂c, ∂d).
  const Tensor& riemann() const;
  /// S_bc = R^a_abc.
  const Tensor& ricci() const;
  const Expr& scalar_curvature() const;
  /// S²_ab = S_ap g^pq S_qb.
  const Tensor& ricci_square() const;

 private:
  struct Cache;

  std::string name_;
  Symbols sym_;
  Tensor g_;
  Tensor g_inv_;
  Expr det_;
  std::shared_ptr<Cache> cache_;
};

/// Parses every entry and builds the chart; parse errors name the entry.
Chart build_chart(const MetricSpec& spec);

/// ∇_i T_{j1..jk} with the derivative index first.
Tensor covariant_derivative(const Chart& chart, const Tensor& t);

/// (dα)_ij = 1/2 (∂_i α_j - ∂_j α_i).
Tensor exterior_derivative(const Chart& chart, const Tensor& alpha);

/// Raise the last slot of a (0,k) tensor: B^p(...) = g^pd B(...,d).
Tensor raise_last(const Chart& chart, const Tensor& t);

/// Covariant components of a vector field: ω_a = g_ab V^b.
Tensor lower_vector(const Chart& chart, const std::vector<Expr>& v);
/// Contravariant components of a 1-form: V^a = g^ab ω_b.
std::vector<Expr> raise_oneform(const Chart& chart, const Tensor& omega);

}  // namespace curvkit
