#include "curvkit/classifiers.hpp"

namespace curvkit {

namespace {

LinearSystem combination_system(const Tensor* target, const std::vector<Tensor>& generators,
                                std::vector<std::string> names) {
  if (names.size() != generators.size()) throw std::invalid_argument("linear combination: one name per generator");
  LinearSystem sys(std::move(names));
  if (generators.empty()) return sys;
  const std::size_t size = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != size) throw std::invalid_argument("linear combination: generators differ in shape");
  if (target && target->size() != size) throw std::invalid_argument("linear combination: target shape mismatch");
  std::vector<std::pair<int, Expr>> row;
  for (std::size_t f = 0; f < size; ++f) {
    row.clear();
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (!generators[j][f].is_zero()) row.push_back({static_cast<int>(j), generators[j][f]});
    sys.add_sparse(row, target ? (*target)[f] : Expr());
  }
  return sys;
}

// Roots of A s^2 + B s + C in the expression field.  Returns nullopt when
// the polynomial vanishes identically.
std::optional<std::vector<Expr>> quadratic_roots(const Expr& a, const Expr& b, const Expr& c) {
  std::vector<Expr> roots;
  if (a.is_zero()) {
    if (b.is_zero()) {
      if (c.is_zero()) return std::nullopt;
      return roots;
    }
    roots.push_back(-c / b);
    return roots;
  }
  const Expr disc = b * b - Expr(4L) * a * c;
  if (disc.is_zero()) {
    roots.push_back(-b / (Expr(2L) * a));
    return roots;
  }
  auto r = disc.sqrt();
  if (!r) return roots;
  roots.push_back((-b + *r) / (Expr(2L) * a));
  roots.push_back((-b - *r) / (Expr(2L) * a));
  return roots;
}

}  // namespace

SolutionSpace solve_linear_combination(const Tensor& target, const std::vector<Tensor>& generators,
                                       std::vector<std::string> names) {
  return combination_system(&target, generators, std::move(names)).solve();
}

SolutionSpace linear_relations(const std::vector<Tensor>& generators, std::vector<std::string> names) {
  return combination_system(nullptr, generators, std::move(names)).solve();
}

Tensor combine(const std::vector<Tensor>& generators, const std::vector<Expr>& coeffs) {
  if (generators.empty()) throw std::invalid_argument("combine: no generators");
  const Tensor& first = generators.front();
  Tensor out(first.dim(), first.rank(), first.upper_slot());
  for (std::size_t f = 0; f < out.size(); ++f) {
    SumBuilder sum;
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (!coeffs[j].is_zero()) sum.add_product(coeffs[j], generators[j][f]);
    out[f] = sum.result();
  }
  return out;
}

std::optional<QuasiEinstein> solve_quasi_einstein(const Chart& chart) {
  const int n = chart.n();
  const Tensor& s = chart.ricci();
  const Tensor& g = chart.metric();
  auto residual = [&](const Expr& a) { return s - a * g; };

  // Every 2x2 minor of S - a g is a quadratic in a; the first one that does
  // not vanish identically yields the candidates.
  std::vector<Expr> candidates;
  bool found = false;
  for (int i = 0; i < n && !found; ++i)
    for (int k = i + 1; k < n && !found; ++k)
      for (int j = 0; j < n && !found; ++j)
        for (int l = j + 1; l < n && !found; ++l) {
          const Expr &sij = s.at({i, j}), &skl = s.at({k, l}), &sil = s.at({i, l}), &skj = s.at({k, j});
          const Expr &gij = g.at({i, j}), &gkl = g.at({k, l}), &gil = g.at({i, l}), &gkj = g.at({k, j});
          Expr qa = gij * gkl - gil * gkj;
          Expr qb = -(sij * gkl + gij * skl - sil * gkj - gil * skj);
          Expr qc = sij * skl - sil * skj;
          auto roots = quadratic_roots(qa, qb, qc);
          if (!roots) continue;
          found = true;
          candidates = *roots;
        }
  if (!found) return std::nullopt;

  // Prefer a proper (non-Einstein) factorization.
  std::optional<QuasiEinstein> einstein;
  for (const Expr& a : candidates) {
    Tensor m = residual(a);
    if (!rank_at_most(m, 1)) continue;
    QuasiEinstein q;
    q.alpha = a;
    if (m.is_zero()) {
      q.einstein = true;
      q.eta = Tensor(n, 1);
      if (!einstein) einstein = q;
      continue;
    }
    int pivot = 0;
    while (m.at({pivot, pivot}).is_zero()) ++pivot;
    const Expr& mpp = m.at({pivot, pivot});
    SumBuilder tr;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) tr.add_product(chart.g_inv(x, y), m.at({x, y}));
    const Expr trace = tr.result();
    std::optional<Expr> root;
    if (!trace.is_zero()) root = (mpp / trace).sqrt();
    std::vector<Expr> eta(static_cast<std::size_t>(n));
    if (root) {
      // Unit η: g^{-1}(η, η) = 1 forces β = tr_g(S - a g).
      q.beta = trace;
      q.unit_eta = true;
      for (int x = 0; x < n; ++x) eta[static_cast<std::size_t>(x)] = m.at({pivot, x}) / (trace * *root);
    } else {
      q.beta = mpp;
      for (int x = 0; x < n; ++x) eta[static_cast<std::size_t>(x)] = m.at({pivot, x}) / mpp;
    }
    q.eta = Tensor::one_form(std::move(eta));
    if (!(q.beta * outer(q.eta, q.eta) == m))
      throw InconsistencyError("quasi-Einstein: rank-one factorization does not reproduce S - alpha g");
    return q;
  }
  return einstein;
}

std::optional<Torseforming> check_torseforming(const Chart& chart, const std::vector<Expr>& v) {
  const int n = chart.n();
  const Tensor& gamma = chart.christoffel();
  std::vector<std::string> names{"a"};
  for (int i = 0; i < n; ++i) names.push_back("tau_" + std::to_string(i + 1));
  LinearSystem sys(names);
  std::vector<std::pair<int, Expr>> row;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      SumBuilder nabla;
      nabla.add(chart.d(v[static_cast<std::size_t>(k)], i));
      for (int j = 0; j < n; ++j) nabla.add_product(gamma.at({k, i, j}), v[static_cast<std::size_t>(j)]);
      row.clear();
      if (i == k) row.push_back({0, Expr(1L)});
      if (!v[static_cast<std::size_t>(k)].is_zero()) row.push_back({1 + i, v[static_cast<std::size_t>(k)]});
      sys.add_sparse(row, nabla.result());
    }
  SolutionSpace space = sys.solve();
  if (!space.consistent) return std::nullopt;
  Torseforming t;
  t.a = space.particular[0];
  t.tau = Tensor::one_form(std::vector<Expr>(space.particular.begin() + 1, space.particular.end()));
  t.recurrent = t.a.is_zero();
  t.proper_concircular = is_closed(chart, t.tau);
  t.concircular = t.proper_concircular;
  if (t.concircular) {
    t.convergent = true;
    for (int i = 0; i < n && t.convergent; ++i)
      t.convergent = chart.d(t.a, i) == t.a * t.tau[static_cast<std::size_t>(i)];
  }
  const Tensor omega = lower_vector(chart, v);
  t.omega_closed = is_closed(chart, omega);
  if (t.omega_closed) {
    std::size_t pivot = 0;
    while (pivot < omega.size() && omega[pivot].is_zero()) ++pivot;
    if (pivot < omega.size()) {
      Expr b = t.tau[pivot] / omega[pivot];
      if (b * omega == t.tau) t.b = b;
    }
  }
  return t;
}

std::vector<Cor47Solution> corollary47_decomposition(const Tensor& b, const Tensor& w, const Tensor& h) {
  // B = u W∧W + v W∧H + w H∧H with v^2 = 4uw; then L1 = w, L2 = -v/(2w).
  const std::vector<Tensor> gens{kulkarni_nomizu(w, w), kulkarni_nomizu(w, h), kulkarni_nomizu(h, h)};
  SolutionSpace space = solve_linear_combination(b, gens, {"u", "v", "w"});
  std::vector<Cor47Solution> out;
  if (!space.consistent) return out;

  std::vector<std::vector<Expr>> points;
  if (space.dimension() == 1) {
    const auto& p = space.particular;
    const auto& d = space.basis.front();
    // (v0 + s v1)^2 - 4 (u0 + s u1)(w0 + s w1) as a quadratic in s.
    Expr qa = d[1] * d[1] - Expr(4L) * d[0] * d[2];
    Expr qb = Expr(2L) * p[1] * d[1] - Expr(4L) * (p[0] * d[2] + d[0] * p[2]);
    Expr qc = p[1] * p[1] - Expr(4L) * p[0] * p[2];
    auto roots = quadratic_roots(qa, qb, qc);
    if (!roots) {
      points.push_back(p);
    } else {
      for (const Expr& s : *roots) points.push_back(space.point({s}));
    }
  } else {
    points.push_back(space.particular);
  }

  for (const auto& x : points) {
    const Expr &u = x[0], &v = x[1], &ww = x[2];
    if (ww.is_zero() || v * v != Expr(4L) * u * ww) continue;
    Cor47Solution sol{ww, -v / (Expr(2L) * ww)};
    Tensor d = sol.l2 * w - h;
    if (!(sol.l1 * kulkarni_nomizu(d, d) == b))
      throw InconsistencyError("D-wedge factorization does not reproduce B");
    out.push_back(sol);
  }
  return out;
}

std::optional<Expr> corollary47_semisymmetric(const Tensor& b, const Tensor& h) {
  Proportionality p = solve_proportionality(b, kulkarni_nomizu(h, h));
  if (p.outcome != Outcome::Holds || p.factor.is_zero()) return std::nullopt;
  return p.factor;
}

}  // namespace curvkit
