#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "curvkit/expr.hpp"

namespace curvkit {

/// Index symmetries a tensor may declare about itself.
enum class Symmetry {
  Symmetric,        // (0,2): T_ab = T_ba
  SkewFirstPair,    // T_abcd = -T_bacd
  SkewSecondPair,   // T_abcd = -T_abdc
  BlockInterchange  // T_abcd = T_cdab
};

/// Dense component array of a valence (r,k) tensor, r in {0,1}.
///
/// Components are stored row-major in slot order, so (i1,...,ik) lives at
/// i1*n^(k-1) + ... + ik.  A (1,k-1) tensor keeps the same slot order and
/// records which slot is contravariant (upper_slot), e.g. the curvature
/// operator B^p_abc is stored as [a][b][c][p] with upper_slot = 3.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int rank, int upper_slot = -1);

  static Tensor one_form(std::vector<Expr> components);

  int dim() const { return n_; }
  int rank() const { return rank_; }
  int upper_slot() const { return upper_; }
  std::size_t size() const { return data_.size(); }

  Expr& operator[](std::size_t flat) { return data_[flat]; }
  const Expr& operator[](std::size_t flat) const { return data_[flat]; }
  Expr& at(std::initializer_list<int> idx) { return data_[flat(idx)]; }
  const Expr& at(std::initializer_list<int> idx) const { return data_[flat(idx)]; }
  Expr& at(std::span<const int> idx) { return data_[flat(idx)]; }
  const Expr& at(std::span<const int> idx) const { return data_[flat(idx)]; }

  std::size_t flat(std::span<const int> idx) const;
  std::size_t flat(std::initializer_list<int> idx) const { return flat(std::span<const int>(idx.begin(), idx.size())); }
  void unflatten(std::size_t flat, int* idx) const;
  /// Stride of a slot in the flat layout.
  std::size_t stride(int slot) const { return strides_[static_cast<std::size_t>(slot)]; }

  bool is_zero() const;
  /// Flat positions of the nonzero components, ascending.
  std::vector<std::size_t> nonzeros() const;
  const std::vector<Expr>& components() const { return data_; }

  std::vector<Symmetry>& declared() { return declared_; }
  const std::vector<Symmetry>& declared() const { return declared_; }

  Tensor operator-() const;
  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend Tensor operator-(const Tensor& a, const Tensor& b);
  friend Tensor operator*(const Expr& c, const Tensor& t);
  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  void check_compatible(const Tensor& other) const;

  int n_ = 0;
  int rank_ = 0;
  int upper_ = -1;
  std::vector<std::size_t> strides_;
  std::vector<Expr> data_;
  std::vector<Symmetry> declared_;
};

/// (A ⊗ B) with A's slots first.
Tensor outer(const Tensor& a, const Tensor& b);

/// out(x_0..x_{k-1}) = t(x_{p[0]}..x_{p[k-1]}) for a covariant tensor.
Tensor permute_slots(const Tensor& t, const std::vector<int>& p);

/// True iff every declared symmetry holds componentwise.
bool check_declared_symmetries(const Tensor& t);

/// Determinant of a small square matrix by memoized cofactor expansion.
Expr determinant(const std::vector<std::vector<Expr>>& m);

/// Adjugate (transposed cofactor matrix), so m * adjugate(m) = det(m) * I.
std::vector<std::vector<Expr>> adjugate(const std::vector<std::vector<Expr>>& m);

/// Components of a (0,2) tensor as a matrix.
std::vector<std::vector<Expr>> as_matrix(const Tensor& t);

/// Generic rank test: all (r+1)-minors vanish.
bool rank_at_most(const Tensor& z, int r);

}  // namespace curvkit
