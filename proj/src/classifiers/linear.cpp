#include "curvkit/linear.hpp"

#include <algorithm>

namespace curvkit {

std::vector<Expr> SolutionSpace::point(const std::vector<Expr>& t) const {
  std::vector<Expr> x = particular;
  for (std::size_t j = 0; j < basis.size() && j < t.size(); ++j) {
    if (t[j].is_zero()) continue;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!basis[j][i].is_zero()) x[i] += t[j] * basis[j][i];
  }
  return x;
}

std::size_t LinearSystem::RowHash::operator()(const std::vector<Expr>& r) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const Expr& e : r) h = (h ^ e.hash()) * 0x100000001b3ULL;
  return h;
}

LinearSystem::LinearSystem(std::vector<std::string> unknowns) : unknowns_(std::move(unknowns)) {}

void LinearSystem::add_sparse(const std::vector<std::pair<int, Expr>>& coeffs, const Expr& rhs) {
  std::vector<Expr> row(unknowns_.size() + 1);
  for (const auto& [j, c] : coeffs) row[static_cast<std::size_t>(j)] += c;
  row.back() = rhs;
  insert(std::move(row));
}

void LinearSystem::add_equation(const std::vector<Expr>& coeffs, const Expr& rhs) {
  if (coeffs.size() != unknowns_.size()) throw std::invalid_argument("add_equation: wrong number of coefficients");
  std::vector<Expr> row(coeffs);
  row.push_back(rhs);
  insert(std::move(row));
}

void LinearSystem::insert(std::vector<Expr> row) {
  if (std::all_of(row.begin(), row.end(), [](const Expr& e) { return e.is_zero(); })) return;
  // Fix the sign so that an equation and its negation deduplicate.
  for (const Expr& e : row) {
    if (e.is_zero()) continue;
    if (sgn(e.num().lead().coeff) < 0)
      for (Expr& x : row) x = -x;
    break;
  }
  if (!seen_.insert(row).second) return;
  original_.push_back(row);

  const std::size_t m = unknowns_.size();
  for (const auto& [col, prow] : pivots_) {
    const Expr f = row[static_cast<std::size_t>(col)];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= m; ++j)
      if (!prow[j].is_zero()) row[j] -= f * prow[j];
  }
  std::size_t lead = 0;
  while (lead < m && row[lead].is_zero()) ++lead;
  if (lead == m) {
    if (!row[m].is_zero()) consistent_ = false;
    return;
  }
  const Expr inv = row[lead].inverse();
  for (std::size_t j = lead; j <= m; ++j)
    if (!row[j].is_zero()) row[j] *= inv;
  for (auto& [col, prow] : pivots_) {
    const Expr f = prow[lead];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= m; ++j)
      if (!row[j].is_zero()) prow[j] -= f * row[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), static_cast<int>(lead),
                              [](const auto& p, int c) { return p.first < c; });
  pivots_.insert(pos, {static_cast<int>(lead), std::move(row)});
}

bool LinearSystem::satisfied_by(const std::vector<Expr>& point) const {
  const std::size_t m = unknowns_.size();
  for (const auto& row : original_) {
    SumBuilder sum;
    for (std::size_t j = 0; j < m; ++j)
      if (!row[j].is_zero() && !point[j].is_zero()) sum.add_product(row[j], point[j]);
    sum.add(-row[m]);
    if (!sum.result().is_zero()) return false;
  }
  return true;
}

SolutionSpace LinearSystem::solve() const {
  SolutionSpace s;
  s.unknowns = unknowns_;
  s.consistent = consistent_;
  if (!consistent_) return s;
  const std::size_t m = unknowns_.size();
  std::vector<bool> is_pivot(m, false);
  for (const auto& p : pivots_) is_pivot[static_cast<std::size_t>(p.first)] = true;
  s.particular.assign(m, Expr());
  for (const auto& [col, row] : pivots_) s.particular[static_cast<std::size_t>(col)] = row[m];
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Expr> b(m);
    b[f] = Expr(1L);
    for (const auto& [col, row] : pivots_) b[static_cast<std::size_t>(col)] = -row[f];
    s.basis.push_back(std::move(b));
    s.free_columns.push_back(static_cast<int>(f));
  }

  if (!satisfied_by(s.particular))
    throw InconsistencyError("linear solver: particular solution fails back-substitution");
  for (const auto& b : s.basis) {
    const std::size_t mm = m;
    for (const auto& row : original_) {
      SumBuilder sum;
      for (std::size_t j = 0; j < mm; ++j)
        if (!row[j].is_zero() && !b[j].is_zero()) sum.add_product(row[j], b[j]);
      if (!sum.result().is_zero())
        throw InconsistencyError("linear solver: homogeneous basis vector fails back-substitution");
    }
  }
  return s;
}

SolutionSpace solve_linear_system(const std::vector<std::vector<Expr>>& m, const std::vector<Expr>& rhs,
                                  std::vector<std::string> unknowns) {
  if (m.size() != rhs.size()) throw std::invalid_argument("solve_linear_system: row count mismatch");
  const std::size_t cols = m.empty() ? unknowns.size() : m.front().size();
  if (unknowns.empty())
    for (std::size_t j = 0; j < cols; ++j) unknowns.push_back("u" + std::to_string(j + 1));
  LinearSystem sys(std::move(unknowns));
  for (std::size_t i = 0; i < m.size(); ++i) sys.add_equation(m[i], rhs[i]);
  return sys.solve();
}

}  // namespace curvkit
