#include "curvkit/tensor.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace curvkit {

Tensor::Tensor(int n, int rank, int upper_slot) : n_(n), rank_(rank), upper_(upper_slot) {
  if (n < 1 || rank < 0) throw std::invalid_argument("invalid tensor shape");
  if (upper_slot >= rank) throw std::invalid_argument("upper slot out of range");
  strides_.assign(static_cast<std::size_t>(rank), 1);
  std::size_t total = 1;
  for (int s = rank - 1; s >= 0; --s) {
    strides_[static_cast<std::size_t>(s)] = total;
    total *= static_cast<std::size_t>(n);
  }
  data_.assign(total, Expr{});
}

Tensor Tensor::one_form(std::vector<Expr> components) {
  Tensor t(static_cast<int>(components.size()), 1);
  t.data_ = std::move(components);
  return t;
}

std::size_t Tensor::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw std::invalid_argument("index arity mismatch");
  std::size_t f = 0;
  for (std::size_t s = 0; s < idx.size(); ++s) f += strides_[s] * static_cast<std::size_t>(idx[s]);
  return f;
}

void Tensor::unflatten(std::size_t flat, int* idx) const {
  for (int s = rank_ - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
}

bool Tensor::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

std::vector<std::size_t> Tensor::nonzeros() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].is_zero()) out.push_back(i);
  return out;
}

void Tensor::check_compatible(const Tensor& other) const {
  if (n_ != other.n_ || rank_ != other.rank_ || upper_ != other.upper_)
    throw std::invalid_argument("tensor shapes differ");
}

Tensor Tensor::operator-() const {
  Tensor r = *this;
  for (auto& e : r.data_) e = -e;
  return r;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  a.check_compatible(b);
  Tensor r = a;
  r.declared_.clear();
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  a.check_compatible(b);
  Tensor r = a;
  r.declared_.clear();
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

Tensor operator*(const Expr& c, const Tensor& t) {
  Tensor r = t;
  for (auto& e : r.data_) e = c * e;
  return r;
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.n_ == b.n_ && a.rank_ == b.rank_ && a.upper_ == b.upper_ && a.data_ == b.data_;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (a.upper_slot() >= 0 || b.upper_slot() >= 0) throw std::invalid_argument("outer product of covariant tensors only");
  Tensor r(a.dim(), a.rank() + b.rank());
  const std::size_t bs = b.size();
  for (std::size_t i : a.nonzeros())
    for (std::size_t j : b.nonzeros()) r[i * bs + j] = a[i] * b[j];
  return r;
}

Tensor permute_slots(const Tensor& t, const std::vector<int>& p) {
  if (t.upper_slot() >= 0) throw std::invalid_argument("permute_slots expects a covariant tensor");
  if (static_cast<int>(p.size()) != t.rank()) throw std::invalid_argument("permutation length differs from rank");
  Tensor r(t.dim(), t.rank());
  std::vector<int> x(p.size());
  std::vector<int> y(p.size());
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflatten(f, x.data());
    for (std::size_t m = 0; m < p.size(); ++m) y[m] = x[static_cast<std::size_t>(p[m])];
    r[f] = t.at(std::span<const int>(y));
  }
  return r;
}

bool check_declared_symmetries(const Tensor& t) {
  const int n = t.dim();
  for (Symmetry s : t.declared()) {
    if (s == Symmetry::Symmetric) {
      if (t.rank() != 2) return false;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (t.at({a, b}) != t.at({b, a})) return false;
      continue;
    }
    if (t.rank() != 4) return false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const Expr& v = t.at({a, b, c, d});
            switch (s) {
              case Symmetry::SkewFirstPair:
                if (v != -t.at({b, a, c, d})) return false;
                break;
              case Symmetry::SkewSecondPair:
                if (v != -t.at({a, b, d, c})) return false;
                break;
              case Symmetry::BlockInterchange:
                if (v != t.at({c, d, a, b})) return false;
                break;
              default:
                break;
            }
          }
  }
  return true;
}

namespace {

/// Minors of one matrix, memoized by (row mask, column mask).
class MinorTable {
 public:
  explicit MinorTable(const std::vector<std::vector<Expr>>& m) : m_(m) {}

  const Expr& minor(unsigned rows, unsigned cols) {
    auto key = std::make_pair(rows, cols);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Expr value;
    if (rows == 0) {
      value = Expr(1L);
    } else {
      int r = std::countr_zero(rows);
      unsigned rest = rows & (rows - 1);
      int sign_pos = 0;
      SumBuilder sum;
      for (unsigned cm = cols; cm; cm &= cm - 1) {
        int c = std::countr_zero(cm);
        const Expr& entry = m_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        if (!entry.is_zero()) {
          const Expr& sub = minor(rest, cols & ~(1u << c));
          if (!sub.is_zero()) {
            if (sign_pos % 2 == 0)
              sum.add_product(entry, sub);
            else
              sum.sub_product(entry, sub);
          }
        }
        ++sign_pos;
      }
      value = sum.result();
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  const std::vector<std::vector<Expr>>& m_;
  std::map<std::pair<unsigned, unsigned>, Expr> memo_;
};

}  // namespace

Expr determinant(const std::vector<std::vector<Expr>>& m) {
  const unsigned n = static_cast<unsigned>(m.size());
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Expr(1L);
  MinorTable table(m);
  unsigned all = (1u << n) - 1;
  return table.minor(all, all);
}

std::vector<std::vector<Expr>> adjugate(const std::vector<std::vector<Expr>>& m) {
  const unsigned n = static_cast<unsigned>(m.size());
  MinorTable table(m);
  const unsigned all = (1u << n) - 1;
  std::vector<std::vector<Expr>> adj(n, std::vector<Expr>(n));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      const Expr& minor = table.minor(all & ~(1u << b), all & ~(1u << a));
      adj[a][b] = (a + b) % 2 ? -minor : minor;
    }
  return adj;
}

std::vector<std::vector<Expr>> as_matrix(const Tensor& t) {
  if (t.rank() != 2) throw std::invalid_argument("as_matrix expects a rank-2 tensor");
  const int n = t.dim();
  std::vector<std::vector<Expr>> m(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = t.at({a, b});
  return m;
}

bool rank_at_most(const Tensor& z, int r) {
  const int n = z.dim();
  if (r < 0) return false;
  if (r >= n) return true;
  auto m = as_matrix(z);
  if (r == 0) return z.is_zero();
  MinorTable table(m);
  const unsigned full = (1u << n) - 1;
  for (unsigned rows = 0; rows <= full; ++rows) {
    if (std::popcount(rows) != r + 1) continue;
    for (unsigned cols = 0; cols <= full; ++cols) {
      if (std::popcount(cols) != r + 1) continue;
      if (!table.minor(rows, cols).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace curvkit
