#include <array>

#include "curvkit/classifiers.hpp"

namespace curvkit {

namespace {

// 1-form block feeding α or π_m, with an integer multiplier (0 = absent).
struct Tie {
  int block;
  long mult;
};

std::vector<std::string> block_names(const std::vector<std::string>& blocks, int n) {
  std::vector<std::string> names;
  for (const auto& b : blocks)
    for (int i = 0; i < n; ++i) names.push_back(b + "_" + std::to_string(i + 1));
  return names;
}

SolutionSpace solve_weak_pattern(const Tensor& t, const Tensor& dt, const std::vector<std::string>& blocks,
                                 Tie alpha, const std::vector<Tie>& pis) {
  const int n = t.dim();
  const int k = t.rank();
  if (dt.rank() != k + 1) throw std::invalid_argument("weak symmetry: dt must be the covariant derivative of t");
  LinearSystem sys(block_names(blocks, n));
  const std::size_t tsize = t.size();
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::vector<std::pair<int, Expr>> row;
  for (int h = 0; h < n; ++h)
    for (std::size_t fi = 0; fi < tsize; ++fi) {
      t.unflatten(fi, idx.data());
      row.clear();
      if (alpha.mult != 0 && !t[fi].is_zero()) row.push_back({alpha.block * n + h, Expr(alpha.mult) * t[fi]});
      for (int m = 0; m < k; ++m) {
        const Tie& p = pis[static_cast<std::size_t>(m)];
        if (p.mult == 0) continue;
        const std::size_t sm = t.stride(m);
        const Expr& v = t[fi - sm * static_cast<std::size_t>(idx[m]) + sm * static_cast<std::size_t>(h)];
        if (!v.is_zero()) row.push_back({p.block * n + idx[m], Expr(p.mult) * v});
      }
      sys.add_sparse(row, dt[static_cast<std::size_t>(h) * tsize + fi]);
    }
  return sys.solve();
}

std::vector<std::string> weak_block_names(int k) {
  if (k == 4) return {"alpha", "beta", "betabar", "gamma", "gammabar"};
  if (k == 2) return {"delta", "eta", "lambda"};
  std::vector<std::string> b{"alpha"};
  for (int m = 1; m <= k; ++m) b.push_back("pi" + std::to_string(m));
  return b;
}

// Members of an affine space as (vector, homogeneous?) pairs: the particular
// solution and every basis vector.
template <typename F>
bool for_members(const SolutionSpace& space, F&& f) {
  if (!space.consistent) return true;
  if (!f(space.particular, false)) return false;
  for (const auto& b : space.basis)
    if (!f(b, true)) return false;
  return true;
}

}  // namespace

SolutionSpace solve_chaki(const Tensor& t, const Tensor& dt) {
  return solve_weak_pattern(t, dt, {"phi"}, {0, 2}, std::vector<Tie>(static_cast<std::size_t>(t.rank()), Tie{0, 1}));
}

SolutionSpace solve_recurrence(const Tensor& t, const Tensor& dt) {
  return solve_weak_pattern(t, dt, {"pi"}, {0, 1}, std::vector<Tie>(static_cast<std::size_t>(t.rank()), Tie{0, 0}));
}

SolutionSpace solve_weak_symmetry(const Tensor& t, const Tensor& dt) {
  std::vector<Tie> pis;
  for (int m = 0; m < t.rank(); ++m) pis.push_back({m + 1, 1});
  return solve_weak_pattern(t, dt, weak_block_names(t.rank()), {0, 1}, pis);
}

SolutionSpace solve_weak_type3(const Tensor& t, const Tensor& dt) {
  return solve_weak_pattern(t, dt, {"alpha", "pi"}, {0, 1},
                            std::vector<Tie>(static_cast<std::size_t>(t.rank()), Tie{1, 1}));
}

Tensor form_block(const std::vector<Expr>& point, int block, int n) {
  std::vector<Expr> c(point.begin() + block * n, point.begin() + (block + 1) * n);
  return Tensor::one_form(std::move(c));
}

Tensor weak_combination(const Tensor& t, const Tensor& alpha, const std::vector<Tensor>& pis) {
  const int n = t.dim();
  const int k = t.rank();
  const std::size_t tsize = t.size();
  Tensor out(n, k + 1);
  std::vector<SumBuilder> acc(out.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f : t.nonzeros()) {
    t.unflatten(f, idx.data());
    const Expr& v = t[f];
    for (int h = 0; h < n; ++h)
      if (!alpha[static_cast<std::size_t>(h)].is_zero())
        acc[static_cast<std::size_t>(h) * tsize + f].add_product(alpha[static_cast<std::size_t>(h)], v);
    for (int m = 0; m < k && m < static_cast<int>(pis.size()); ++m) {
      // T_K = T_{I[m<-h]} with h = K_m feeds output (h, K[m<-j]) through π_m(j).
      const std::size_t sm = t.stride(m);
      const std::size_t base = f - sm * static_cast<std::size_t>(idx[m]);
      const auto h = static_cast<std::size_t>(idx[m]);
      for (int j = 0; j < n; ++j) {
        const Expr& p = pis[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        if (!p.is_zero()) acc[h * tsize + base + sm * static_cast<std::size_t>(j)].add_product(p, v);
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = acc[f].result();
  return out;
}

bool is_weak_solution(const Tensor& t, const Tensor& dt, const Tensor& alpha, const std::vector<Tensor>& pis) {
  return dt == weak_combination(t, alpha, pis);
}

void assert_skew_pairs_tied(const Tensor& t, const SolutionSpace& space) {
  const int n = t.dim();
  const int k = t.rank();
  const auto nz = t.nonzeros();
  if (nz.empty()) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q) {
      bool skew = true;
      for (std::size_t f : nz) {
        t.unflatten(f, idx.data());
        std::swap(idx[static_cast<std::size_t>(p)], idx[static_cast<std::size_t>(q)]);
        if (t.at(std::span<const int>(idx)) != -t[f]) {
          skew = false;
          break;
        }
      }
      if (!skew) continue;
      bool tied = for_members(space, [&](const std::vector<Expr>& x, bool) {
        for (int i = 0; i < n; ++i)
          if (x[static_cast<std::size_t>((p + 1) * n + i)] != x[static_cast<std::size_t>((q + 1) * n + i)]) return false;
        return true;
      });
      if (!tied)
        throw InconsistencyError("weak symmetry: 1-forms of skew slots " + std::to_string(p + 1) + "," +
                                 std::to_string(q + 1) + " differ on a solution");
    }
}

WeakNormalization normalize_weak_solution(const Tensor& t, const Tensor& dt, const std::vector<Expr>& point,
                                          bool proper) {
  if (t.rank() != 4) throw std::invalid_argument("normalize_weak_solution expects a (0,4) tensor");
  const int n = t.dim();
  WeakNormalization w;
  w.alpha = form_block(point, 0, n);
  const Expr half = Expr(mpq_class(1, 2));
  w.sigma = half * (form_block(point, 1, n) + form_block(point, 3, n));
  if (!is_weak_solution(t, dt, w.alpha, {w.sigma, w.sigma, w.sigma, w.sigma}))
    throw InconsistencyError("weak symmetry: (alpha, sigma, sigma, sigma, sigma) is not a solution");
  if (proper) {
    Tensor eps = Expr(mpq_class(1, 4)) * (w.alpha + Expr(2L) * w.sigma);
    if (!is_weak_solution(t, dt, Expr(2L) * eps, {eps, eps, eps, eps}))
      throw InconsistencyError("weak symmetry: (2eps, eps, eps, eps, eps) is not a solution");
    w.epsilon = std::move(eps);
  }
  return w;
}

bool is_codazzi(const Tensor& dz) {
  const int n = dz.dim();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (dz.at({i, k, l}) != dz.at({k, i, l})) return false;
  return true;
}

bool is_cyclic_parallel(const Tensor& dz) {
  const int n = dz.dim();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (!(dz.at({i, k, l}) + dz.at({k, l, i}) + dz.at({l, i, k})).is_zero()) return false;
  return true;
}

WeakZReductions check_weak_z_reductions(const Tensor& z, const Tensor& dz, const SolutionSpace& space) {
  const int n = z.dim();
  WeakZReductions r;
  r.symmetric = true;
  for (int a = 0; a < n && r.symmetric; ++a)
    for (int b = a + 1; b < n; ++b)
      if (z.at({a, b}) != z.at({b, a})) {
        r.symmetric = false;
        break;
      }
  r.rank_above_one = !rank_at_most(z, 1);
  r.codazzi = is_codazzi(dz);
  r.cyclic_parallel = is_cyclic_parallel(dz);
  if (!space.consistent || z.is_zero()) return r;

  const Tensor zero(n, 3);
  auto blocks = [n](const std::vector<Expr>& x) {
    return std::array<Tensor, 3>{form_block(x, 0, n), form_block(x, 1, n), form_block(x, 2, n)};
  };
  if (r.symmetric) {
    const Expr half = Expr(mpq_class(1, 2));
    bool ok = for_members(space, [&](const std::vector<Expr>& x, bool homogeneous) {
      auto [d, e, l] = blocks(x);
      Tensor nu = half * (e + l);
      return is_weak_solution(z, homogeneous ? zero : dz, d, {nu, nu});
    });
    if (!ok) throw InconsistencyError("weak Z-symmetry: averaged point (delta, nu, nu) is not a solution");
  }
  if (r.symmetric && r.rank_above_one) {
    bool ok = for_members(space, [&](const std::vector<Expr>& x, bool) {
      auto [d, e, l] = blocks(x);
      return e == l && (!r.codazzi || d == e);
    });
    if (!ok) throw InconsistencyError("weak Z-symmetry: eta = lambda (or delta = eta = lambda) violated");
  }
  if (r.cyclic_parallel) {
    bool ok = for_members(space, [&](const std::vector<Expr>& x, bool) {
      auto [d, e, l] = blocks(x);
      return (d + e + l).is_zero();
    });
    if (!ok) throw InconsistencyError("weak Z-symmetry: delta + eta + lambda = 0 violated");
  }
  return r;
}

bool is_closed(const Chart& chart, const Tensor& omega) { return exterior_derivative(chart, omega).is_zero(); }

Tensor alpha_cyclic(const Tensor& t, const Tensor& alpha) {
  const int n = t.dim();
  Tensor out(n, 5);
  std::array<int, 5> x{};
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, x.data());
    const auto [h, i, j, k, l] = x;
    SumBuilder sum;
    sum.add_product(alpha[static_cast<std::size_t>(h)], t.at({i, j, k, l}));
    sum.add_product(alpha[static_cast<std::size_t>(i)], t.at({j, h, k, l}));
    sum.add_product(alpha[static_cast<std::size_t>(j)], t.at({h, i, k, l}));
    out[f] = sum.result();
  }
  return out;
}

FormRecurrence check_form_recurrence(const Tensor& t, const Tensor& dt) {
  if (t.rank() != 4) throw std::invalid_argument("check_form_recurrence expects a (0,4) tensor");
  const int n = t.dim();
  FormRecurrence r;
  Tensor cyc(n, 5);
  std::array<int, 5> x{};
  for (std::size_t f = 0; f < cyc.size(); ++f) {
    cyc.unflatten(f, x.data());
    const auto [h, i, j, k, l] = x;
    SumBuilder sum;
    sum.add(dt.at({h, i, j, k, l}));
    sum.add(dt.at({i, j, h, k, l}));
    sum.add(dt.at({j, h, i, k, l}));
    cyc[f] = sum.result();
  }
  r.b1 = cyc.is_zero();

  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("alpha_" + std::to_string(a + 1));
  LinearSystem hom(names);
  LinearSystem inh(names);
  std::vector<std::pair<int, Expr>> row;
  for (std::size_t f = 0; f < cyc.size(); ++f) {
    cyc.unflatten(f, x.data());
    const auto [h, i, j, k, l] = x;
    row.clear();
    if (const Expr& v = t.at({i, j, k, l}); !v.is_zero()) row.push_back({h, v});
    if (const Expr& v = t.at({j, h, k, l}); !v.is_zero()) row.push_back({i, v});
    if (const Expr& v = t.at({h, i, k, l}); !v.is_zero()) row.push_back({j, v});
    hom.add_sparse(row, Expr());
    inh.add_sparse(row, cyc[f]);
  }
  r.b2_space = hom.solve();
  r.b2 = r.b2_space.dimension() > 0;
  r.b3_space = inh.solve();
  bool nonzero_particular = false;
  for (const Expr& e : r.b3_space.particular) nonzero_particular |= !e.is_zero();
  r.b3 = r.b3_space.consistent && (nonzero_particular || r.b3_space.dimension() > 0);
  r.cyclic = std::make_shared<const Tensor>(std::move(cyc));
  return r;
}

RicciFormRecurrence check_b4(const Tensor& z, const Tensor& dz) {
  const int n = z.dim();
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("alpha_" + std::to_string(a + 1));
  LinearSystem sys(names);
  std::vector<std::pair<int, Expr>> row;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        row.clear();
        if (const Expr& v = z.at({k, l}); !v.is_zero()) row.push_back({i, v});
        if (const Expr& v = z.at({i, l}); !v.is_zero()) row.push_back({k, -v});
        sys.add_sparse(row, dz.at({i, k, l}) - dz.at({k, i, l}));
      }
  RicciFormRecurrence r;
  r.space = sys.solve();
  bool nonzero = false;
  for (const Expr& e : r.space.particular) nonzero |= !e.is_zero();
  r.holds = r.space.consistent && (nonzero || r.space.dimension() > 0);
  return r;
}

}  // namespace curvkit
