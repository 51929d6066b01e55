#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "curvkit/poly.hpp"

namespace curvkit {

/// Names for the atoms of one chart.
///
/// With n coordinates the atom layout is: x_i at index i, exp(x_i) at
/// n + i, parameter j at 2n + j.
struct Symbols {
  std::vector<std::string> coords;
  std::vector<std::string> params;

  int n() const { return static_cast<int>(coords.size()); }
  int atom_count() const { return 2 * n() + static_cast<int>(params.size()); }
  int coord_atom(int i) const { return i; }
  int exp_atom(int i) const { return n() + i; }
  int param_atom(int j) const { return 2 * n() + j; }

  /// Throws std::invalid_argument on duplicate names or too many atoms.
  void validate() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exact rational function over the chart atoms, kept in canonical form:
/// integer-coefficient numerator and denominator with no common factor
/// (integer content included) and a denominator whose leading term has a
/// positive coefficient.  Zero is num = 0, den = 1.  Structural equality is
/// therefore mathematical equality.
class Expr {
 public:
  Expr() = default;
  Expr(long c);  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpq_class& q);
  explicit Expr(const Poly& p);

  /// Canonicalizes num/den; throws std::domain_error if den is zero.
  static Expr fraction(Poly num, Poly den);
  static Expr atom(int index, int power = 1);

  bool is_zero() const { return !rep_; }
  bool is_constant() const;
  /// Value of a constant expression.
  mpq_class constant_value() const;

  const Poly& num() const;
  const Poly& den() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Throws std::domain_error on division by zero.
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

  Expr pow(long k) const;
  Expr inverse() const;

  /// Derivative along coordinate i, where x_atom / exp_atom are the atoms of
  /// x_i and exp(x_i).
  Expr derivative(int x_atom, int exp_atom) const;

  /// Square root in the field, if one exists with a canonical form.
  std::optional<Expr> sqrt() const;

  /// Bit mask of atoms occurring in num or den.
  std::uint32_t support() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  explicit Expr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Expr make(Poly num, Poly den);

  std::shared_ptr<const Rep> rep_;
};

inline bool is_zero(const Expr& e) { return e.is_zero(); }

Expr differentiate(const Expr& e, int coord, const Symbols& sym);

Expr parse_expression(std::string_view src, const Symbols& sym);
std::string to_string(const Expr& e, const Symbols& sym);

/// Rational value under an assignment of every atom (indexed by atom).
/// Returns nullopt when the denominator vanishes.
std::optional<mpq_class> evaluate_rational(const Expr& e, const std::vector<mpq_class>& atoms);
std::optional<mpq_class> evaluate_poly(const Poly& p, const std::vector<mpq_class>& atoms);

/// Accumulates a sum, grouping terms with equal denominators so that most
/// additions avoid a gcd.
class SumBuilder {
 public:
  void add(const Expr& e);
  void add_product(const Expr& a, const Expr& b);
  void sub_product(const Expr& a, const Expr& b);
  Expr result() const;

 private:
  struct Group {
    Poly den;
    Poly num;
  };
  std::vector<Group> groups_;
  Poly integral_;
};

}  // namespace curvkit

template <>
struct std::hash<curvkit::Expr> {
  std::size_t operator()(const curvkit::Expr& e) const { return e.hash(); }
};
