#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace curvkit {

/// Number of distinct atoms a single polynomial ring can hold.
inline constexpr int kMaxAtoms = 15;

/// Exponent vector over at most kMaxAtoms atoms.
///
/// Byte 0 caches the total degree and bytes 1..15 hold the per-atom
/// exponents, so a plain big-endian byte comparison realizes the graded
/// lexicographic order (total degree first, then atom 0, atom 1, ...).
class Monomial {
 public:
  Monomial() = default;

  static Monomial atom(int index, int power = 1);

  int degree() const { return bytes_[0]; }
  int exponent(int atom) const { return bytes_[atom + 1]; }
  bool is_one() const { return bytes_[0] == 0; }

  /// Bit i set iff atom i has a positive exponent.
  std::uint32_t support() const;

  bool divides(const Monomial& other) const;

  /// Throws std::overflow_error if an exponent would exceed 255.
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) on the divisor side.
  Monomial operator/(const Monomial& divisor) const;

  Monomial with_exponent(int atom, int power) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.bytes_.data(), b.bytes_.data(), 16) == 0;
  }
  /// Three-way graded-lex comparison: negative, zero or positive.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, 16> bytes_{};
};

struct Term {
  Monomial mono;
  mpz_class coeff;
};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept strictly decreasing in the graded-lex order with nonzero
/// coefficients, so two polynomials are equal iff their term vectors are.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpz_class& c);
  explicit Poly(long c) : Poly(mpz_class(c)) {}
  Poly(const Monomial& m, const mpz_class& c);

  /// Builds from arbitrary terms: sorts and merges duplicates.
  static Poly from_terms(std::vector<Term> terms);

  static const Poly& one();

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }

  /// Constant term value when is_constant().
  mpz_class constant_value() const;

  std::uint32_t support() const;
  int degree_in(int atom) const;
  int min_degree_in(int atom) const;
  int total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  int min_total_degree() const;

  /// Positive gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }

  Poly scaled(const mpz_class& c) const;
  Poly times(const Monomial& m, const mpz_class& c) const;
  /// Exact division of every coefficient by c.
  Poly divexact(const mpz_class& c) const;
  /// Exact division of every monomial by m (m must divide each term).
  Poly divexact(const Monomial& m) const;
  Poly pow(unsigned k) const;

  /// Quotient if `divisor` divides *this exactly over Z, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Coefficient of atom^power, with that atom removed.
  Poly coefficient(int atom, int power) const;
  /// All coefficients with respect to one atom, indexed by power.
  std::vector<Poly> coefficients(int atom) const;

  /// Formal partial derivative with respect to a single atom.
  Poly derivative_atom(int atom) const;

  /// Square root with positive leading coefficient, if *this is a perfect square.
  std::optional<Poly> sqrt() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor over Z[atoms], normalized to positive leading
/// coefficient; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace curvkit
