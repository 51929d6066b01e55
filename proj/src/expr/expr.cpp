#include "curvkit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace curvkit {

void Symbols::validate() const {
  if (atom_count() > kMaxAtoms)
    throw std::invalid_argument("too many atoms: 2*dim + #params must be at most " + std::to_string(kMaxAtoms));
  std::set<std::string> seen{"exp"};
  auto check = [&](const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
      throw std::invalid_argument("symbol name must start with a letter: " + name);
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw std::invalid_argument("invalid character in symbol name: " + name);
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate or reserved symbol name: " + name);
  };
  for (const auto& c : coords) check(c);
  for (const auto& p : params) check(p);
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

// -------------------------------------------------------------- arithmetic

namespace {

const Poly& zero_poly() {
  static const Poly p;
  return p;
}

}  // namespace

Expr::Expr(long c) {
  if (c != 0) rep_ = std::make_shared<const Rep>(Rep{Poly(c), Poly::one()});
}

Expr::Expr(const mpq_class& q) {
  if (q != 0) rep_ = std::make_shared<const Rep>(Rep{Poly(q.get_num()), Poly(q.get_den())});
}

Expr::Expr(const Poly& p) {
  if (!p.is_zero()) rep_ = std::make_shared<const Rep>(Rep{p, Poly::one()});
}

Expr Expr::make(Poly num, Poly den) {
  if (num.is_zero()) return Expr{};
  if (den.lead().coeff < 0) {
    num = -num;
    den = -den;
  }
  return Expr(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)}));
}

Expr Expr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("division by zero");
  if (num.is_zero()) return Expr{};
  if (den.is_one()) return Expr(num);
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = *num.divide_exact(g);
    den = *den.divide_exact(g);
  }
  return make(std::move(num), std::move(den));
}

Expr Expr::atom(int index, int power) {
  if (power >= 0) return Expr(Poly(Monomial::atom(index, power), 1));
  return make(Poly::one(), Poly(Monomial::atom(index, -power), 1));
}

bool Expr::is_constant() const { return !rep_ || (rep_->num.is_constant() && rep_->den.is_constant()); }

mpq_class Expr::constant_value() const {
  if (!rep_) return 0;
  if (!is_constant()) throw std::logic_error("constant_value of a non-constant expression");
  mpq_class q(rep_->num.constant_value(), rep_->den.constant_value());
  q.canonicalize();
  return q;
}

const Poly& Expr::num() const { return rep_ ? rep_->num : zero_poly(); }
const Poly& Expr::den() const { return rep_ ? rep_->den : Poly::one(); }

Expr Expr::operator-() const {
  if (!rep_) return *this;
  return Expr(std::make_shared<const Rep>(Rep{-rep_->num, rep_->den}));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (!a.rep_) return b;
  if (!b.rep_) return a;
  const Poly& an = a.rep_->num;
  const Poly& ad = a.rep_->den;
  const Poly& bn = b.rep_->num;
  const Poly& bd = b.rep_->den;
  if (ad.is_one() && bd.is_one()) return Expr(an + bn);
  if (ad == bd) return Expr::fraction(an + bn, ad);
  if (ad.is_one()) return Expr::make(an * bd + bn, bd);
  if (bd.is_one()) return Expr::make(an + bn * ad, ad);
  Poly g = gcd(ad, bd);
  if (g.is_one()) return Expr::make(an * bd + bn * ad, ad * bd);
  Poly ad1 = *ad.divide_exact(g);
  Poly bd1 = *bd.divide_exact(g);
  Poly num = an * bd1 + bn * ad1;
  Poly den = ad1 * bd;
  if (num.is_zero()) return Expr{};
  Poly h = gcd(num, g);
  if (!h.is_one()) {
    num = *num.divide_exact(h);
    den = *den.divide_exact(h);
  }
  return Expr::make(std::move(num), std::move(den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (!a.rep_ || !b.rep_) return Expr{};
  const Poly& an = a.rep_->num;
  const Poly& ad = a.rep_->den;
  const Poly& bn = b.rep_->num;
  const Poly& bd = b.rep_->den;
  if (ad.is_one() && bd.is_one()) return Expr(an * bn);
  Poly g1 = bd.is_one() ? Poly::one() : gcd(an, bd);
  Poly g2 = ad.is_one() ? Poly::one() : gcd(bn, ad);
  Poly num = (g1.is_one() ? an : *an.divide_exact(g1)) * (g2.is_one() ? bn : *bn.divide_exact(g2));
  Poly den = (g2.is_one() ? ad : *ad.divide_exact(g2)) * (g1.is_one() ? bd : *bd.divide_exact(g1));
  return Expr::make(std::move(num), std::move(den));
}

Expr Expr::inverse() const {
  if (!rep_) throw std::domain_error("division by zero");
  return make(rep_->den, rep_->num);
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(long k) const {
  if (k == 0) return Expr(1L);
  if (!rep_) {
    if (k < 0) throw std::domain_error("division by zero");
    return *this;
  }
  unsigned long m = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Poly n = rep_->num.pow(static_cast<unsigned>(m));
  Poly d = rep_->den.pow(static_cast<unsigned>(m));
  return k > 0 ? make(std::move(n), std::move(d)) : make(std::move(d), std::move(n));
}

namespace {

/// t * d/dt applied to p, for the exponential atom t.
Poly euler(const Poly& p, int atom) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    int e = t.mono.exponent(atom);
    if (e) out.push_back({t.mono, t.coeff * e});
  }
  return Poly::from_terms(std::move(out));
}

Poly total_derivative(const Poly& p, int x_atom, int exp_atom) {
  return p.derivative_atom(x_atom) + euler(p, exp_atom);
}

}  // namespace

Expr Expr::derivative(int x_atom, int exp_atom) const {
  if (!rep_) return *this;
  Poly dn = total_derivative(rep_->num, x_atom, exp_atom);
  if (rep_->den.is_constant()) return fraction(std::move(dn), rep_->den);
  Poly dd = total_derivative(rep_->den, x_atom, exp_atom);
  if (dd.is_zero()) return fraction(std::move(dn), rep_->den);
  return fraction(dn * rep_->den - rep_->num * dd, rep_->den * rep_->den);
}

std::optional<Expr> Expr::sqrt() const {
  if (!rep_) return *this;
  auto n = rep_->num.sqrt();
  if (!n) return std::nullopt;
  auto d = rep_->den.sqrt();
  if (!d) return std::nullopt;
  return make(std::move(*n), std::move(*d));
}

std::uint32_t Expr::support() const { return rep_ ? rep_->num.support() | rep_->den.support() : 0u; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  if (!a.rep_ || !b.rep_) return false;
  return a.rep_->num == b.rep_->num && a.rep_->den == b.rep_->den;
}

std::size_t Expr::hash() const {
  if (!rep_) return 0;
  return rep_->num.hash() * 0x9E3779B97F4A7C15ull ^ rep_->den.hash();
}

Expr differentiate(const Expr& e, int coord, const Symbols& sym) {
  if (coord < 0 || coord >= sym.n()) throw std::out_of_range("coordinate index out of range");
  return e.derivative(sym.coord_atom(coord), sym.exp_atom(coord));
}

// -------------------------------------------------------------- SumBuilder

void SumBuilder::add(const Expr& e) {
  if (e.is_zero()) return;
  if (e.den().is_one()) {
    integral_ += e.num();
    return;
  }
  for (auto& g : groups_) {
    if (g.den == e.den()) {
      g.num += e.num();
      return;
    }
  }
  groups_.push_back({e.den(), e.num()});
}

void SumBuilder::add_product(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (a.den().is_one() && b.den().is_one()) {
    integral_ += a.num() * b.num();
    return;
  }
  Poly den = a.den().is_one() ? b.den() : (b.den().is_one() ? a.den() : a.den() * b.den());
  Poly num = a.num() * b.num();
  for (auto& g : groups_) {
    if (g.den == den) {
      g.num += num;
      return;
    }
  }
  groups_.push_back({std::move(den), std::move(num)});
}

void SumBuilder::sub_product(const Expr& a, const Expr& b) { add_product(a, -b); }

Expr SumBuilder::result() const {
  Expr sum(integral_);
  for (const auto& g : groups_)
    if (!g.num.is_zero()) sum += Expr::fraction(g.num, g.den);
  return sum;
}

// -------------------------------------------------------------- evaluation

std::optional<mpq_class> evaluate_poly(const Poly& p, const std::vector<mpq_class>& atoms) {
  mpq_class sum = 0;
  mpz_class num, den;
  for (const auto& t : p.terms()) {
    num = t.coeff;
    den = 1;
    for (int a = 0; a < kMaxAtoms; ++a) {
      int e = t.mono.exponent(a);
      if (!e) continue;
      if (a >= static_cast<int>(atoms.size())) throw std::out_of_range("assignment does not cover every atom");
      mpz_class pn, pd;
      mpz_pow_ui(pn.get_mpz_t(), atoms[a].get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(pd.get_mpz_t(), atoms[a].get_den_mpz_t(), static_cast<unsigned long>(e));
      num *= pn;
      den *= pd;
    }
    mpq_class term(num, den);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

std::optional<mpq_class> evaluate_rational(const Expr& e, const std::vector<mpq_class>& atoms) {
  auto d = evaluate_poly(e.den(), atoms);
  if (!d || *d == 0) return std::nullopt;
  auto n = evaluate_poly(e.num(), atoms);
  return *n / *d;
}

// ----------------------------------------------------------------- printer

namespace {

std::string atom_factor(int atom, int power, const Symbols& sym) {
  const int n = sym.n();
  if (atom >= n && atom < 2 * n) {
    const std::string& x = sym.coords[atom - n];
    if (power == 1) return "exp(" + x + ")";
    if (power == -1) return "exp(-" + x + ")";
    return "exp(" + std::to_string(power) + "*" + x + ")";
  }
  const std::string& name = atom < n ? sym.coords[atom] : sym.params.at(atom - 2 * n);
  if (power == 1) return name;
  return name + "^" + std::to_string(power);
}

/// Atom print order: parameters, coordinates, exponentials.
std::vector<int> print_order(const Symbols& sym) {
  std::vector<int> order;
  for (int j = 0; j < static_cast<int>(sym.params.size()); ++j) order.push_back(sym.param_atom(j));
  for (int i = 0; i < sym.n(); ++i) order.push_back(sym.coord_atom(i));
  for (int i = 0; i < sym.n(); ++i) order.push_back(sym.exp_atom(i));
  return order;
}

/// Prints sum of terms c * m / dm, where dm is a monomial divisor (possibly 1).
std::string print_terms(const Poly& p, const Monomial& dm, const mpz_class& dc, const Symbols& sym) {
  const auto order = print_order(sym);
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c(t.coeff, dc);
    c.canonicalize();
    bool negative = c < 0;
    if (negative) c = -c;
    std::vector<std::string> factors;
    for (int a : order) {
      int e = t.mono.exponent(a) - dm.exponent(a);
      if (e) factors.push_back(atom_factor(a, e, sym));
    }
    std::string body;
    if (factors.empty()) {
      body = c.get_str();
    } else {
      if (c != 1) body = c.get_str() + " * ";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) body += " * ";
        body += factors[i];
      }
    }
    if (first) {
      out = (negative ? "-" : "") + body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& e, const Symbols& sym) {
  if (e.is_zero()) return "0";
  const Poly& d = e.den();
  if (d.is_monomial()) return print_terms(e.num(), d.lead().mono, d.lead().coeff, sym);
  return "(" + print_terms(e.num(), Monomial{}, 1, sym) + ") / (" + print_terms(d, Monomial{}, 1, sym) + ")";
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view src, const Symbols& sym) : src_(src), sym_(sym) {}

  Expr run() {
    Expr e = expression();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ < src_.size() && src_[pos_] == '.') fail("non-integer literal");
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(src_.substr(start, pos_ - start));
  }

  int coordinate_index(const std::string& name) const {
    for (int i = 0; i < sym_.n(); ++i)
      if (sym_.coords[i] == name) return i;
    return -1;
  }

  Expr expression() {
    Expr e = term();
    while (true) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    if (!at_digit()) fail("exponent must be an integer literal");
    mpz_class k = integer();
    if (!k.fits_slong_p() || k > 1000) fail("exponent too large");
    long e = k.get_si();
    if (negative) e = -e;
    if (e < 0 && base.is_zero()) fail("division by zero");
    return base.pow(e);
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr(mpq_class(integer()));
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name = identifier();
      if (name == "exp") return exponential();
      int i = coordinate_index(name);
      if (i >= 0) return Expr::atom(sym_.coord_atom(i));
      for (int j = 0; j < static_cast<int>(sym_.params.size()); ++j)
        if (sym_.params[j] == name) return Expr::atom(sym_.param_atom(j));
      throw ParseError("unknown identifier '" + name + "'", at);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  // exp( [sign] [integer *] coordinate )
  Expr exponential() {
    expect('(');
    long k = 1;
    if (accept('-'))
      k = -1;
    else
      accept('+');
    if (at_digit()) {
      mpz_class m = integer();
      if (!m.fits_slong_p() || m > 255) fail("exponential multiplier too large");
      k *= m.get_si();
      expect('*');
    }
    skip_ws();
    std::size_t at = pos_;
    std::string name;
    if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      name = identifier();
    int i = name.empty() ? -1 : coordinate_index(name);
    if (i < 0) throw ParseError("exp argument must be an integer multiple of a coordinate", at);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] != ')')
      fail("exp argument must be an integer multiple of a coordinate");
    expect(')');
    if (k == 0) return Expr(1L);
    return Expr::atom(sym_.exp_atom(i), static_cast<int>(k));
  }

  std::string_view src_;
  const Symbols& sym_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view src, const Symbols& sym) { return Parser(src, sym).run(); }

}  // namespace curvkit
