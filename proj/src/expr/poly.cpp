#include "curvkit/poly.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace curvkit {

namespace {

std::uint64_t load_be(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  if constexpr (std::endian::native == std::endian::little) v = __builtin_bswap64(v);
  return v;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::atom(int index, int power) {
  if (index < 0 || index >= kMaxAtoms) throw std::out_of_range("atom index out of range");
  if (power < 0 || power > 255) throw std::overflow_error("monomial exponent out of range");
  Monomial m;
  m.bytes_[0] = static_cast<std::uint8_t>(power);
  m.bytes_[index + 1] = static_cast<std::uint8_t>(power);
  return m;
}

std::uint32_t Monomial::support() const {
  std::uint32_t s = 0;
  for (int a = 0; a < kMaxAtoms; ++a)
    if (bytes_[a + 1] != 0) s |= (1u << a);
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < 16; ++i)
    if (bytes_[i] > other.bytes_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  unsigned overflow = 0;
  for (int i = 0; i < 16; ++i) {
    unsigned s = unsigned(bytes_[i]) + unsigned(other.bytes_[i]);
    overflow |= s;
    r.bytes_[i] = static_cast<std::uint8_t>(s);
  }
  if (overflow > 255) throw std::overflow_error("monomial exponent exceeds 255");
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (int i = 0; i < 16; ++i) r.bytes_[i] = static_cast<std::uint8_t>(bytes_[i] - divisor.bytes_[i]);
  return r;
}

Monomial Monomial::with_exponent(int atom, int power) const {
  if (power < 0 || power > 255) throw std::overflow_error("monomial exponent out of range");
  Monomial r = *this;
  int deg = int(bytes_[0]) - int(bytes_[atom + 1]) + power;
  if (deg > 255) throw std::overflow_error("monomial degree exceeds 255");
  r.bytes_[atom + 1] = static_cast<std::uint8_t>(power);
  r.bytes_[0] = static_cast<std::uint8_t>(deg);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  int deg = 0;
  for (int i = 1; i < 16; ++i) {
    r.bytes_[i] = std::min(a.bytes_[i], b.bytes_[i]);
    deg += r.bytes_[i];
  }
  r.bytes_[0] = static_cast<std::uint8_t>(deg);
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  std::uint64_t a0 = load_be(a.bytes_.data()), b0 = load_be(b.bytes_.data());
  if (a0 != b0) return a0 < b0 ? -1 : 1;
  std::uint64_t a1 = load_be(a.bytes_.data() + 8), b1 = load_be(b.bytes_.data() + 8);
  if (a1 != b1) return a1 < b1 ? -1 : 1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::uint64_t lo, hi;
  std::memcpy(&lo, bytes_.data(), 8);
  std::memcpy(&hi, bytes_.data() + 8, 8);
  return std::size_t(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6)));
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly::Poly(const Monomial& m, const mpz_class& c) {
  if (c != 0) terms_.push_back({m, c});
}

const Poly& Poly::one() {
  static const Poly p(1L);
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

mpz_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!terms_.back().mono.is_one()) return 0;
  return terms_.back().coeff;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Poly r;
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff += t.coeff;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

std::uint32_t Poly::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

int Poly::degree_in(int atom) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(atom));
  return d;
}

int Poly::min_degree_in(int atom) const {
  if (terms_.empty()) return 0;
  int d = 255;
  for (const auto& t : terms_) d = std::min(d, t.mono.exponent(atom));
  return d;
}

int Poly::min_total_degree() const {
  return terms_.empty() ? 0 : terms_.back().mono.degree();
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_.front().mono;
  for (std::size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Monomial::gcd(m, terms_[i].mono);
  return m;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.terms_.empty()) return b;
  if (b.terms_.empty()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  while (i < x.size() && j < y.size()) {
    int c = compare(x[i].mono, y[j].mono);
    if (c > 0) {
      r.terms_.push_back(x[i++]);
    } else if (c < 0) {
      r.terms_.push_back(y[j++]);
    } else {
      mpz_class s = x[i].coeff + y[j].coeff;
      if (s != 0) r.terms_.push_back({x[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) r.terms_.push_back(x[i]);
  for (; j < y.size(); ++j) r.terms_.push_back(y[j]);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.terms_.empty()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  while (i < x.size() && j < y.size()) {
    int c = compare(x[i].mono, y[j].mono);
    if (c > 0) {
      r.terms_.push_back(x[i++]);
    } else if (c < 0) {
      r.terms_.push_back({y[j].mono, -y[j].coeff});
      ++j;
    } else {
      mpz_class s = x[i].coeff - y[j].coeff;
      if (s != 0) r.terms_.push_back({x[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) r.terms_.push_back(x[i]);
  for (; j < y.size(); ++j) r.terms_.push_back({y[j].mono, -y[j].coeff});
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Poly{};
  if (a.terms_.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times(b.terms_[0].mono, b.terms_[0].coeff);
  const Poly& big = a.terms_.size() >= b.terms_.size() ? a : b;
  const Poly& small = a.terms_.size() >= b.terms_.size() ? b : a;
  std::vector<Term> prod;
  prod.reserve(big.terms_.size() * small.terms_.size());
  for (const auto& s : small.terms_)
    for (const auto& t : big.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Poly::from_terms(std::move(prod));
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return Poly{};
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times(const Monomial& m, const mpz_class& c) const {
  if (c == 0) return Poly{};
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::divexact(const mpz_class& c) const {
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::divexact(const Monomial& m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono / m;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = one();
  Poly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (terms_.empty()) return Poly{};
  if (divisor.terms_.size() == 1) {
    const auto& d = divisor.terms_[0];
    Poly q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!d.mono.divides(t.mono) || !mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t()))
        return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), d.coeff.get_mpz_t());
      q.terms_.push_back({t.mono / d.mono, std::move(c)});
    }
    return q;
  }
  if (divisor.total_degree() > total_degree()) return std::nullopt;
  std::uint32_t dsup = divisor.support();
  if ((dsup & ~support()) != 0) return std::nullopt;
  for (int a = 0; a < kMaxAtoms; ++a)
    if ((dsup >> a) & 1u)
      if (divisor.degree_in(a) > degree_in(a)) return std::nullopt;

  const Term& dl = divisor.terms_.front();
  std::vector<Term> quotient;
  Poly rem = *this;
  while (!rem.is_zero()) {
    const Term& rl = rem.terms_.front();
    if (!dl.mono.divides(rl.mono) || !mpz_divisible_p(rl.coeff.get_mpz_t(), dl.coeff.get_mpz_t()))
      return std::nullopt;
    Term q{rl.mono / dl.mono, 0};
    mpz_divexact(q.coeff.get_mpz_t(), rl.coeff.get_mpz_t(), dl.coeff.get_mpz_t());
    rem = rem - divisor.times(q.mono, q.coeff);
    quotient.push_back(std::move(q));
  }
  Poly r;
  r.terms_ = std::move(quotient);
  return r;
}

Poly Poly::coefficient(int atom, int power) const {
  Poly r;
  for (const auto& t : terms_)
    if (t.mono.exponent(atom) == power) r.terms_.push_back({t.mono.with_exponent(atom, 0), t.coeff});
  return r;
}

std::vector<Poly> Poly::coefficients(int atom) const {
  std::vector<Poly> out(static_cast<std::size_t>(degree_in(atom)) + 1);
  for (const auto& t : terms_)
    out[t.mono.exponent(atom)].terms_.push_back({t.mono.with_exponent(atom, 0), t.coeff});
  return out;
}

Poly Poly::derivative_atom(int atom) const {
  Poly r;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(atom);
    if (e == 0) continue;
    r.terms_.push_back({t.mono.with_exponent(atom, e - 1), t.coeff * e});
  }
  return r;
}

std::optional<Poly> Poly::sqrt() const {
  if (terms_.empty()) return Poly{};
  const Term& lt = terms_.front();
  if (lt.coeff < 0 || !mpz_perfect_square_p(lt.coeff.get_mpz_t())) return std::nullopt;
  Monomial root_mono;
  for (int a = 0; a < kMaxAtoms; ++a) {
    int e = lt.mono.exponent(a);
    if (e % 2) return std::nullopt;
    if (e) root_mono = root_mono * Monomial::atom(a, e / 2);
  }
  mpz_class root_coeff;
  mpz_sqrt(root_coeff.get_mpz_t(), lt.coeff.get_mpz_t());

  const int min_deg = min_total_degree();
  Poly root(root_mono, root_coeff);
  const Term lead{root_mono, root_coeff * 2};
  Poly rem = *this - root * root;
  Monomial last = root_mono;
  while (!rem.is_zero()) {
    const Term& rl = rem.terms_.front();
    if (!lead.mono.divides(rl.mono) || !mpz_divisible_p(rl.coeff.get_mpz_t(), lead.coeff.get_mpz_t()))
      return std::nullopt;
    Term next{rl.mono / lead.mono, 0};
    mpz_divexact(next.coeff.get_mpz_t(), rl.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
    if (!(next.mono < last) || 2 * next.mono.degree() < min_deg) return std::nullopt;
    Poly step(next.mono, next.coeff);
    rem = rem - (root.scaled(2) + step) * step;
    root = root + step;
    last = next.mono;
  }
  return root;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h = h * 1000003u ^ t.mono.hash();
    h = h * 31u + std::size_t(mpz_get_si(t.coeff.get_mpz_t()));
  }
  return h;
}

// --------------------------------------------------------------------- gcd

namespace {

Poly positive_lead(Poly p) {
  if (!p.is_zero() && p.lead().coeff < 0) return -p;
  return p;
}

Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class c = p.content();
  if (p.lead().coeff < 0) c = -c;
  return p.divexact(c);
}

int pick_main_atom(const Poly& a, const Poly& b, std::uint32_t vars) {
  int best = -1;
  int best_deg = 1 << 30;
  for (int v = 0; v < kMaxAtoms; ++v) {
    if (!((vars >> v) & 1u)) continue;
    int d = std::min(a.degree_in(v), b.degree_in(v));
    if (d < best_deg) {
      best_deg = d;
      best = v;
    }
  }
  return best;
}

Poly gcd_primitive(const Poly& a, const Poly& b);

/// gcd of all coefficients of p with respect to `atom`, optionally seeded.
Poly content_in(const Poly& p, int atom, Poly seed = Poly{}) {
  Poly g = std::move(seed);
  for (const auto& c : p.coefficients(atom)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// Pseudo-remainder of a by b with respect to `atom`.
Poly pseudo_remainder(const Poly& a, const Poly& b, int atom) {
  const int db = b.degree_in(atom);
  const Poly lcb = b.coefficient(atom, db);
  Poly rem = a;
  while (!rem.is_zero()) {
    int dr = rem.degree_in(atom);
    if (dr < db) break;
    Poly lcr = rem.coefficient(atom, dr);
    Monomial shift = dr > db ? Monomial::atom(atom, dr - db) : Monomial{};
    if (auto q = lcr.divide_exact(lcb)) {
      rem = rem - (*q * b).times(shift, 1);
    } else {
      rem = lcb * rem - (lcr * b).times(shift, 1);
    }
  }
  return rem;
}

/// Image of p in Q[atom] after substituting point[k] for every other atom k.
std::vector<mpq_class> specialize(const Poly& p, int atom, const std::array<long, kMaxAtoms>& point) {
  std::vector<mpq_class> out(static_cast<std::size_t>(p.degree_in(atom)) + 1);
  mpz_class v, pw;
  for (const Term& t : p.terms()) {
    v = t.coeff;
    for (int k = 0; k < kMaxAtoms; ++k) {
      if (k == atom || t.mono.exponent(k) == 0) continue;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(std::labs(point[k])),
                    static_cast<unsigned long>(t.mono.exponent(k)));
      if (point[k] < 0 && t.mono.exponent(k) % 2) pw = -pw;
      v *= pw;
    }
    out[static_cast<std::size_t>(t.mono.exponent(atom))] += v;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Degree of gcd(a, b) in Q[t]; coefficient vectors are indexed by power.
int univariate_gcd_degree(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const mpq_class f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// True when a specialization proves that primitive a, b have no common
/// factor of positive degree in `atom`. A point keeping both leading
/// coefficients nonzero maps the gcd to a divisor of the images' gcd.
bool coprime_by_evaluation(const Poly& a, const Poly& b, int atom) {
  const int da = a.degree_in(atom);
  const int db = b.degree_in(atom);
  for (long attempt = 0; attempt < 3; ++attempt) {
    std::array<long, kMaxAtoms> point{};
    for (int k = 0; k < kMaxAtoms; ++k) point[k] = 2 + (7 * k + 11 * attempt) % 29;
    auto ia = specialize(a, atom, point);
    auto ib = specialize(b, atom, point);
    if (static_cast<int>(ia.size()) - 1 != da || static_cast<int>(ib.size()) - 1 != db) continue;
    if (univariate_gcd_degree(std::move(ia), std::move(ib)) == 0) return true;
  }
  return false;
}

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (const Term& t : p.terms())
    if (abs(t.coeff) > m) m = abs(t.coeff);
  return m;
}

/// p with atom := xi.
Poly evaluate_at(const Poly& p, int atom, const mpz_class& xi) {
  std::vector<Term> out;
  out.reserve(p.size());
  mpz_class pw;
  for (const Term& t : p.terms()) {
    mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(t.mono.exponent(atom)));
    out.push_back({t.mono.with_exponent(atom, 0), t.coeff * pw});
  }
  return Poly::from_terms(std::move(out));
}

/// Inverse of evaluate_at for polynomials whose coefficients are below xi/2:
/// the xi-adic digits of each coefficient, in the symmetric range.
Poly interpolate_at(Poly image, int atom, const mpz_class& xi) {
  std::vector<Term> out;
  const mpz_class half = xi / 2;
  for (int power = 0; !image.is_zero(); ++power) {
    if (power > 255) return Poly{};
    std::vector<Term> digit;
    for (const Term& t : image.terms()) {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), t.coeff.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) digit.push_back({t.mono, r});
    }
    Poly d = Poly::from_terms(digit);
    for (const Term& t : d.terms()) out.push_back({t.mono.with_exponent(atom, power), t.coeff});
    image = (image - d).divexact(xi);
  }
  return Poly::from_terms(std::move(out));
}

/// Heuristic gcd of primitive a, b: the gcd of the images at a large integer
/// point is lifted back and accepted only if it divides both inputs exactly.
std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b, int atom) {
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  const int deg = std::min(a.degree_in(atom), b.degree_in(atom));
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (static_cast<long>(mpz_sizeinbase(xi.get_mpz_t(), 2)) * std::max(deg, 1) > 100000) return std::nullopt;
    const Poly g = gcd(evaluate_at(a, atom, xi), evaluate_at(b, atom, xi));
    const Poly cand = primitive(interpolate_at(g, atom, xi));
    if (!cand.is_zero() && a.divide_exact(cand) && b.divide_exact(cand)) return positive_lead(cand);
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a == b) return positive_lead(a);
  const std::uint32_t va = a.support();
  const std::uint32_t vb = b.support();
  if (va != vb) {
    std::uint32_t only_a = va & ~vb;
    if (only_a) return positive_lead(content_in(a, std::countr_zero(only_a), b));
    std::uint32_t only_b = vb & ~va;
    return positive_lead(content_in(b, std::countr_zero(only_b), a));
  }
  // Cheap check: one divides the other.
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  if (big.divide_exact(small)) return positive_lead(small);

  const int v = pick_main_atom(a, b, va);
  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly common = gcd(ca, cb);
  Poly r0 = *a.divide_exact(ca);
  Poly r1 = *b.divide_exact(cb);
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
  if (r1.degree_in(v) > 0 && coprime_by_evaluation(r0, r1, v)) return positive_lead(primitive(common));
  if (auto h = heuristic_gcd(r0, r1, v)) return positive_lead(primitive(common * *h));
  Poly g;
  while (true) {
    if (r1.degree_in(v) == 0) {
      g = Poly::one();
      break;
    }
    Poly r = pseudo_remainder(r0, r1, v);
    if (r.is_zero()) {
      g = r1;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Poly::one();
      break;
    }
    Poly rc = content_in(r, v);
    r0 = std::move(r1);
    r1 = *r.divide_exact(rc);
  }
  if (!g.is_one()) {
    Poly gc = content_in(g, v);
    g = *g.divide_exact(gc);
  }
  return positive_lead(primitive(common * g));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  if (a.is_one() || b.is_one()) return Poly::one();
  mpz_class c;
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial m = Monomial::gcd(ma, mb);
  if (a.is_monomial() || b.is_monomial()) return Poly(m, c);
  Poly ap = a.divexact(ma).divexact(ca);
  Poly bp = b.divexact(mb).divexact(cb);
  Poly g = gcd_primitive(ap, bp);
  return g.times(m, c);
}

}  // namespace curvkit
