#include "curvkit/chart.hpp"

#include <optional>

namespace curvkit {

struct Chart::Cache {
  std::optional<Tensor> christoffel;
  std::optional<Tensor> riemann_13;
  std::optional<Tensor> riemann;
  std::optional<Tensor> ricci;
  std::optional<Expr> scalar;
  std::optional<Tensor> ricci_square;
};

Chart Chart::build(std::string name, Symbols sym, std::vector<std::vector<Expr>> g) {
  sym.validate();
  const int n = sym.n();
  if (n < 3) throw GeometryError("dimension must be at least 3");
  if (static_cast<int>(g.size()) != n) throw GeometryError("metric has the wrong number of rows");
  for (const auto& row : g)
    if (static_cast<int>(row.size()) != n) throw GeometryError("metric has the wrong number of columns");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g[a][b] != g[b][a])
        throw GeometryError("metric is not symmetric at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");

  Chart c;
  c.name_ = std::move(name);
  c.sym_ = std::move(sym);
  c.det_ = determinant(g);
  if (c.det_.is_zero()) throw GeometryError("metric is identically singular");
  auto adj = adjugate(g);
  c.g_ = Tensor(n, 2);
  c.g_inv_ = Tensor(n, 2);
  const Expr inv_det = c.det_.inverse();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      c.g_.at({a, b}) = g[a][b];
      c.g_inv_.at({a, b}) = adj[a][b] * inv_det;
    }
  c.g_.declared().push_back(Symmetry::Symmetric);
  c.g_inv_.declared().push_back(Symmetry::Symmetric);
  c.cache_ = std::make_shared<Cache>();
  return c;
}

Chart build_chart(const MetricSpec& spec) {
  if (spec.dim < 3) throw GeometryError("dimension must be at least 3");
  if (static_cast<int>(spec.coords.size()) != spec.dim) throw GeometryError("coordinate count differs from dim");
  if (static_cast<int>(spec.metric.size()) != spec.dim) throw GeometryError("metric must have dim rows");
  Symbols sym{spec.coords, spec.params};
  sym.validate();
  const auto n = static_cast<std::size_t>(spec.dim);
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.metric[i].size() != i + 1)
      throw GeometryError("metric row " + std::to_string(i) + " must hold " + std::to_string(i + 1) + " entries");
    for (std::size_t j = 0; j <= i; ++j) {
      try {
        g[i][j] = parse_expression(spec.metric[i][j], sym);
      } catch (const ParseError& e) {
        throw ParseError("metric[" + std::to_string(i) + "][" + std::to_string(j) + "]: " + e.what(), e.position());
      }
      g[j][i] = g[i][j];
    }
  }
  return Chart::build(spec.name, std::move(sym), std::move(g));
}

const Tensor& Chart::christoffel() const {
  if (cache_->christoffel) return *cache_->christoffel;
  const int n = this->n();
  // dg[l][i][j] = ∂_l g_ij
  std::vector<Tensor> dg;
  for (int l = 0; l < n; ++l) {
    Tensor t(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr v = d(g(i, j), l);
        t.at({i, j}) = v;
        t.at({j, i}) = v;
      }
    dg.push_back(std::move(t));
  }
  // First kind: Γ_ijl = 1/2 (∂_i g_jl + ∂_j g_il - ∂_l g_ij)
  Tensor first(n, 3);
  const Expr half = Expr(mpq_class(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Expr v = dg[i].at({j, l}) + dg[j].at({i, l}) - dg[l].at({i, j});
        if (v.is_zero()) continue;
        v = half * v;
        first.at({i, j, l}) = v;
        first.at({j, i, l}) = v;
      }
  Tensor gamma(n, 3, 0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        SumBuilder sum;
        for (int l = 0; l < n; ++l) sum.add_product(g_inv(k, l), first.at({i, j, l}));
        Expr v = sum.result();
        gamma.at({k, i, j}) = v;
        gamma.at({k, j, i}) = v;
      }
  cache_->christoffel = std::move(gamma);
  return *cache_->christoffel;
}

const Tensor& Chart::riemann_13() const {
  if (cache_->riemann_13) return *cache_->riemann_13;
  const int n = this->n();
  const Tensor& G = christoffel();
  const Expr sign(static_cast<long>(kCurvatureSign));
  Tensor r(n, 4, 3);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int p = 0; p < n; ++p) {
          SumBuilder sum;
          sum.add(d(G.at({p, b, c}), a));
          sum.add(-d(G.at({p, a, c}), b));
          for (int e = 0; e < n; ++e) {
            sum.add_product(G.at({e, b, c}), G.at({p, a, e}));
            sum.sub_product(G.at({e, a, c}), G.at({p, b, e}));
          }
          Expr v = sum.result();
          if (v.is_zero()) continue;
          v = sign * v;
          r.at({a, b, c, p}) = v;
          r.at({b, a, c, p}) = -v;
        }
  cache_->riemann_13 = std::move(r);
  return *cache_->riemann_13;
}

const Tensor& Chart::riemann() const {
  if (cache_->riemann) return *cache_->riemann;
  const int n = this->n();
  const Tensor& r13 = riemann_13();
  Tensor r(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int dd = 0; dd < n; ++dd) {
          SumBuilder sum;
          for (int p = 0; p < n; ++p) sum.add_product(g(dd, p), r13.at({a, b, c, p}));
          r.at({a, b, c, dd}) = sum.result();
        }
  r.declared() = {Symmetry::SkewFirstPair, Symmetry::SkewSecondPair, Symmetry::BlockInterchange};
  cache_->riemann = std::move(r);
  return *cache_->riemann;
}

const Tensor& Chart::ricci() const {
  if (cache_->ricci) return *cache_->ricci;
  const int n = this->n();
  const Tensor& r13 = riemann_13();
  Tensor s(n, 2);
  for (int b = 0; b < n; ++b)
    for (int c = b; c < n; ++c) {
      SumBuilder sum;
      for (int a = 0; a < n; ++a) sum.add(r13.at({a, b, c, a}));
      Expr v = sum.result();
      s.at({b, c}) = v;
      s.at({c, b}) = v;
    }
  s.declared().push_back(Symmetry::Symmetric);
  cache_->ricci = std::move(s);
  return *cache_->ricci;
}

const Expr& Chart::scalar_curvature() const {
  if (cache_->scalar) return *cache_->scalar;
  const int n = this->n();
  const Tensor& s = ricci();
  SumBuilder sum;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) sum.add_product(g_inv(a, b), s.at({a, b}));
  cache_->scalar = sum.result();
  return *cache_->scalar;
}

const Tensor& Chart::ricci_square() const {
  if (cache_->ricci_square) return *cache_->ricci_square;
  const int n = this->n();
  const Tensor& s = ricci();
  // Ricci operator 𝒮^q_a = g^qp S_pa
  Tensor op(n, 2);
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < n; ++a) {
      SumBuilder sum;
      for (int p = 0; p < n; ++p) sum.add_product(g_inv(q, p), s.at({p, a}));
      op.at({q, a}) = sum.result();
    }
  Tensor s2(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      SumBuilder sum;
      for (int q = 0; q < n; ++q) sum.add_product(op.at({q, a}), s.at({q, b}));
      Expr v = sum.result();
      s2.at({a, b}) = v;
      s2.at({b, a}) = v;
    }
  s2.declared().push_back(Symmetry::Symmetric);
  cache_->ricci_square = std::move(s2);
  return *cache_->ricci_square;
}

Tensor covariant_derivative(const Chart& chart, const Tensor& t) {
  if (t.upper_slot() >= 0) throw std::invalid_argument("covariant_derivative expects a covariant tensor");
  const int n = chart.n();
  const int k = t.rank();
  const Tensor& G = chart.christoffel();
  Tensor out(n, k + 1);
  const std::size_t tsize = t.size();
  std::vector<SumBuilder> acc(out.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f : t.nonzeros()) {
    const Expr& v = t[f];
    t.unflatten(f, idx.data());
    for (int i = 0; i < n; ++i) {
      acc[static_cast<std::size_t>(i) * tsize + f].add(chart.d(v, i));
      // -Γ^{idx[m]}_{i j} T_K contributes to output (i, K[m <- j]).
      for (int m = 0; m < k; ++m) {
        const std::size_t stride = t.stride(m);
        const std::size_t base = f - stride * static_cast<std::size_t>(idx[m]);
        for (int j = 0; j < n; ++j) {
          const Expr& gamma = G.at({idx[m], i, j});
          if (gamma.is_zero()) continue;
          acc[static_cast<std::size_t>(i) * tsize + base + stride * static_cast<std::size_t>(j)].sub_product(gamma, v);
        }
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = acc[f].result();
  return out;
}

Tensor exterior_derivative(const Chart& chart, const Tensor& alpha) {
  if (alpha.rank() != 1) throw std::invalid_argument("exterior_derivative expects a 1-form");
  const int n = chart.n();
  const Expr half = Expr(mpq_class(1, 2));
  Tensor out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Expr v = chart.d(alpha[static_cast<std::size_t>(j)], i) - chart.d(alpha[static_cast<std::size_t>(i)], j);
      if (v.is_zero()) continue;
      v = half * v;
      out.at({i, j}) = v;
      out.at({j, i}) = -v;
    }
  return out;
}

Tensor raise_last(const Chart& chart, const Tensor& t) {
  if (t.upper_slot() >= 0) throw std::invalid_argument("raise_last expects a covariant tensor");
  const int n = chart.n();
  const int k = t.rank();
  Tensor out(n, k, k - 1);
  for (std::size_t base = 0; base < t.size(); base += static_cast<std::size_t>(n)) {
    for (int p = 0; p < n; ++p) {
      SumBuilder sum;
      for (int d = 0; d < n; ++d) sum.add_product(chart.g_inv(p, d), t[base + static_cast<std::size_t>(d)]);
      out[base + static_cast<std::size_t>(p)] = sum.result();
    }
  }
  return out;
}

Tensor lower_vector(const Chart& chart, const std::vector<Expr>& v) {
  const int n = chart.n();
  std::vector<Expr> w(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    SumBuilder sum;
    for (int b = 0; b < n; ++b) sum.add_product(chart.g(a, b), v[static_cast<std::size_t>(b)]);
    w[static_cast<std::size_t>(a)] = sum.result();
  }
  return Tensor::one_form(std::move(w));
}

std::vector<Expr> raise_oneform(const Chart& chart, const Tensor& omega) {
  const int n = chart.n();
  std::vector<Expr> v(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    SumBuilder sum;
    for (int b = 0; b < n; ++b) sum.add_product(chart.g_inv(a, b), omega[static_cast<std::size_t>(b)]);
    v[static_cast<std::size_t>(a)] = sum.result();
  }
  return v;
}

}  // namespace curvkit
