#include "curvkit/algebra.hpp"

#include <array>
#include <stdexcept>

namespace curvkit {

Tensor kulkarni_nomizu(const Tensor& a, const Tensor& d) {
  if (a.rank() != 2 || d.rank() != 2 || a.dim() != d.dim())
    throw std::invalid_argument("kulkarni_nomizu expects two (0,2) tensors of equal dimension");
  const int n = a.dim();
  Tensor out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          SumBuilder sum;
          sum.add_product(a.at({i, l}), d.at({j, k}));
          sum.add_product(a.at({j, k}), d.at({i, l}));
          sum.sub_product(a.at({i, k}), d.at({j, l}));
          sum.sub_product(a.at({j, l}), d.at({i, k}));
          out.at({i, j, k, l}) = sum.result();
        }
  return out;
}

std::string derived_name(Derived which) {
  switch (which) {
    case Derived::G:
      return "G";
    case Derived::C:
      return "C";
    case Derived::K:
      return "K";
    case Derived::Conh:
      return "conh";
    case Derived::P:
      return "P";
  }
  return "?";
}

Tensor derived_tensor(const Chart& chart, Derived which) {
  const int n = chart.n();
  const Tensor& g = chart.metric();
  const Tensor& r = chart.riemann();
  const Expr& kappa = chart.scalar_curvature();
  const Expr nn(static_cast<long>(n));
  switch (which) {
    case Derived::G:
      return Expr(mpq_class(1, 2)) * kulkarni_nomizu(g, g);
    case Derived::C: {
      if (n < 4) throw std::invalid_argument("the Weyl tensor needs dimension at least 4");
      Tensor gs = kulkarni_nomizu(g, chart.ricci());
      Tensor gg = kulkarni_nomizu(g, g);
      return r - Expr(1L) / (nn - Expr(2L)) * gs +
             kappa / (Expr(2L) * (nn - Expr(1L)) * (nn - Expr(2L))) * gg;
    }
    case Derived::K:
      return r - kappa / (Expr(2L) * nn * (nn - Expr(1L))) * kulkarni_nomizu(g, g);
    case Derived::Conh:
      return r - Expr(1L) / (nn - Expr(2L)) * kulkarni_nomizu(g, chart.ricci());
    case Derived::P: {
      const Tensor& s = chart.ricci();
      const Expr c = Expr(1L) / (nn - Expr(1L));
      Tensor p = r;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int cc = 0; cc < n; ++cc)
            for (int d = 0; d < n; ++d) {
              Expr w = s.at({b, cc}) * g.at({a, d}) - s.at({a, cc}) * g.at({b, d});
              if (!w.is_zero()) p.at({a, b, cc, d}) -= c * w;
            }
      p.declared().clear();
      return p;
    }
  }
  throw std::invalid_argument("unknown derived tensor");
}

namespace {

struct Entry {
  int h, l, i;
  Expr value;
};

}  // namespace

Tensor dot_action_lifted(const Tensor& b13, const Tensor& t) {
  if (b13.rank() != 4 || b13.upper_slot() != 3) throw std::invalid_argument("dot_action expects a lifted (1,3) tensor");
  if (t.upper_slot() >= 0 || t.rank() < 1) throw std::invalid_argument("dot_action expects a covariant tensor");
  const int n = t.dim();
  const int k = t.rank();
  // by_upper[p] lists the nonzero B^p_{h l i}.
  std::vector<std::vector<Entry>> by_upper(static_cast<std::size_t>(n));
  std::array<int, 4> bi{};
  for (std::size_t f : b13.nonzeros()) {
    b13.unflatten(f, bi.data());
    by_upper[static_cast<std::size_t>(bi[3])].push_back({bi[0], bi[1], bi[2], b13[f]});
  }
  Tensor out(n, k + 2);
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<SumBuilder> acc(out.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f : t.nonzeros()) {
    t.unflatten(f, idx.data());
    const Expr& v = t[f];
    for (int m = 0; m < k; ++m) {
      const std::size_t stride = t.stride(m);
      const std::size_t base = f - stride * static_cast<std::size_t>(idx[m]);
      for (const Entry& e : by_upper[static_cast<std::size_t>(idx[m])]) {
        std::size_t target = (base + stride * static_cast<std::size_t>(e.i)) * nn +
                             static_cast<std::size_t>(e.h) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.l);
        acc[target].sub_product(e.value, v);
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = acc[f].result();
  return out;
}

Tensor dot_action(const Chart& chart, const Tensor& b, const Tensor& t) {
  if (b.rank() != 4) throw std::invalid_argument("dot_action expects a (0,4) tensor");
  if (b.upper_slot() == 3) return dot_action_lifted(b, t);
  return dot_action_lifted(raise_last(chart, b), t);
}

Tensor tachibana(const Tensor& a, const Tensor& t) {
  if (a.rank() != 2) throw std::invalid_argument("tachibana expects a (0,2) tensor A");
  if (t.upper_slot() >= 0 || t.rank() < 1) throw std::invalid_argument("tachibana expects a covariant tensor");
  const int n = t.dim();
  const int k = t.rank();
  std::vector<std::pair<std::array<int, 2>, Expr>> a_entries;
  for (std::size_t f : a.nonzeros()) a_entries.push_back({{static_cast<int>(f) / n, static_cast<int>(f) % n}, a[f]});
  Tensor out(n, k + 2);
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<SumBuilder> acc(out.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f : t.nonzeros()) {
    t.unflatten(f, idx.data());
    const Expr& v = t[f];
    for (int m = 0; m < k; ++m) {
      const std::size_t stride = t.stride(m);
      const std::size_t base = f - stride * static_cast<std::size_t>(idx[m]);
      const auto km = static_cast<std::size_t>(idx[m]);
      for (const auto& [ai, av] : a_entries) {
        // A_{x i} with x = ai[0], i = ai[1] (i is the slot value replaced).
        const std::size_t slot = base + stride * static_cast<std::size_t>(ai[1]);
        const auto x = static_cast<std::size_t>(ai[0]);
        // -A_{l i} T_{..h..}: h = K_m, l = x
        acc[slot * nn + km * static_cast<std::size_t>(n) + x].sub_product(av, v);
        // +A_{h i} T_{..l..}: l = K_m, h = x
        acc[slot * nn + x * static_cast<std::size_t>(n) + km].add_product(av, v);
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = acc[f].result();
  return out;
}

Tensor oneform_dot(const Tensor& mu, const Tensor& t) {
  if (mu.rank() != 1) throw std::invalid_argument("oneform_dot expects a 1-form");
  if (t.upper_slot() >= 0 || t.rank() < 1) throw std::invalid_argument("oneform_dot expects a covariant tensor");
  const int n = t.dim();
  const int k = t.rank();
  Tensor out(n, k + 1);
  std::vector<SumBuilder> acc(out.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f : t.nonzeros()) {
    t.unflatten(f, idx.data());
    const Expr& v = t[f];
    for (int m = 0; m < k; ++m) {
      const std::size_t stride = t.stride(m);
      const std::size_t base = f - stride * static_cast<std::size_t>(idx[m]);
      // T_K lands at (K[m <- i], h = K_m) with coefficient -μ_i.
      for (int i = 0; i < n; ++i) {
        const Expr& mi = mu[static_cast<std::size_t>(i)];
        if (mi.is_zero()) continue;
        acc[(base + stride * static_cast<std::size_t>(i)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[m])]
            .sub_product(mi, v);
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = acc[f].result();
  return out;
}

GctVerdict check_gct(const Tensor& b) {
  if (b.rank() != 4) throw std::invalid_argument("check_gct expects a (0,4) tensor");
  const int n = b.dim();
  GctVerdict v{true, true, true};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Expr& x = b.at({i, j, k, l});
          if (v.first_bianchi && !(x + b.at({j, k, i, l}) + b.at({k, i, j, l})).is_zero()) v.first_bianchi = false;
          if (v.skew_first_pair && !(x + b.at({j, i, k, l})).is_zero()) v.skew_first_pair = false;
          if (v.block_interchange && x != b.at({k, l, i, j})) v.block_interchange = false;
        }
  return v;
}

bool check_second_bianchi(const Chart& chart, const Tensor& b) {
  const int n = chart.n();
  Tensor db = covariant_derivative(chart, b);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int e = 0; e < n; ++e)
        for (int d = 0; d < n; ++d)
          for (int f = 0; f < n; ++f) {
            Expr s = db.at({a, c, e, d, f}) + db.at({c, e, a, d, f}) + db.at({e, a, c, d, f});
            if (!s.is_zero()) return false;
          }
  return true;
}

Tensor walker_cyclic_sum(const Chart& chart, const Tensor& b) {
  const int n = chart.n();
  Tensor rb = dot_action_lifted(chart.riemann_13(), b);
  Tensor out(n, 6);
  std::array<int, 6> x{};
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, x.data());
    SumBuilder sum;
    sum.add(rb.at({x[2], x[3], x[4], x[5], x[0], x[1]}));
    sum.add(rb.at({x[4], x[5], x[0], x[1], x[2], x[3]}));
    sum.add(rb.at({x[0], x[1], x[2], x[3], x[4], x[5]}));
    out[f] = sum.result();
  }
  return out;
}

bool walker_cyclic_check(const Chart& chart, const Tensor& b) { return walker_cyclic_sum(chart, b).is_zero(); }

}  // namespace curvkit
