// Acceptance suite: one PASS/FAIL line per criterion, followed by one line
// per checked item.  Items whose expected value is a known misprint are
// reported as mismatches with the reason; the exit status is 0 iff every
// mismatch is one of those.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "curvkit/algebra.hpp"
#include "curvkit/classifiers.hpp"
#include "curvkit/metric_io.hpp"
#include "curvkit/report.hpp"

using namespace curvkit;

namespace {

Chart chart(const std::string& name) { return build_chart(builtin(name)); }

Tensor form(const Chart& c, const std::vector<std::string>& parts) {
  std::vector<Expr> v;
  for (const auto& p : parts) v.push_back(c.parse(p));
  return Tensor::one_form(v);
}

Tensor kn(const Tensor& a, const Tensor& b) { return kulkarni_nomizu(a, b); }

Identity ident(std::string label, const std::vector<std::pair<Expr, Tensor>>& terms) {
  Identity id{std::move(label), {}};
  for (const auto& [coeff, t] : terms) id.terms.push_back({coeff, std::make_shared<const Tensor>(t)});
  return id;
}

bool vanishes(const Identity& id) {
  if (id.terms.empty()) return true;
  Tensor sum = Expr() * *id.terms.front().tensor;
  for (const auto& term : id.terms) sum = sum + term.coeff * *term.tensor;
  return sum.is_zero();
}

/// Cyclic sum over the first three slots of a (0,5) tensor.
std::vector<std::pair<Expr, Tensor>> cyclic3(const Tensor& t, const Expr& sign) {
  return {{sign, t}, {sign, permute_slots(t, {1, 2, 0, 3, 4})}, {sign, permute_slots(t, {2, 0, 1, 3, 4})}};
}

struct Recorded {
  Identity id;
  Symbols sym;
};

/// Every identity verified below, for the oracle criterion.
std::vector<Recorded> g_identities;

struct Item {
  std::string label;
  bool ok;
  std::string known;
};

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  bool check(const std::string& label, bool ok, const std::string& known = "") {
    items_.push_back({label, ok, known});
    return ok;
  }

  /// Exact check of Σ coeff·tensor = 0; holding identities go to the oracle.
  bool identity(const Chart& c, Identity id, const std::string& known = "") {
    const bool ok = vanishes(id);
    if (ok) g_identities.push_back({id, c.symbols()});
    return check(id.label, ok, known);
  }

  bool passed() const {
    for (const auto& i : items_)
      if (!i.ok) return false;
    return true;
  }
  bool only_known_failures() const {
    for (const auto& i : items_)
      if (!i.ok && i.known.empty()) return false;
    return true;
  }

  void print() const {
    std::cout << (passed() ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << "\n";
    for (const auto& i : items_) {
      std::cout << "    " << (i.ok ? "ok        " : "mismatch  ") << i.label;
      if (!i.ok && !i.known.empty()) std::cout << "  [known: " << i.known << "]";
      std::cout << "\n";
    }
  }

 private:
  int id_;
  std::string title_;
  std::vector<Item> items_;
};

struct Curv {
  const Chart& c;
  const Tensor& g;
  const Tensor& r;
  const Tensor& s;
  const Tensor& s2;
  explicit Curv(const Chart& chart)
      : c(chart), g(chart.metric()), r(chart.riemann()), s(chart.ricci()), s2(chart.ricci_square()) {}
  Expr x(const std::string& src) const { return c.parse(src); }
};

Outcome deszcz_outcome(const Chart& c, const Tensor& b, const Tensor& t, const Tensor& w) {
  return classify_deszcz(c, b, t, w).outcome;
}

/// (b4) residual: ∇_i Z_kl - ∇_k Z_il - α_i Z_kl + α_k Z_il.
Identity b4_identity(const std::string& label, const Tensor& dz, const Tensor& z, const Tensor& alpha) {
  const Tensor az = outer(alpha, z);
  return ident(label, {{Expr(1L), dz},
                       {Expr(-1L), permute_slots(dz, {1, 0, 2})},
                       {Expr(-1L), az},
                       {Expr(1L), permute_slots(az, {1, 0, 2})}});
}

/// (b3) residual: cyclic ∇T - cyclic α⊗T.
Identity b3_identity(const std::string& label, const Tensor& dt, const Tensor& t, const Tensor& alpha) {
  auto terms = cyclic3(dt, Expr(1L));
  for (auto& term : cyclic3(outer(alpha, t), Expr(-1L))) terms.push_back(term);
  return ident(label, terms);
}

const char* const kMisprintAlphaPK =
    "printed sign is wrong: the printed alpha leaves a nonzero residual, its negative solves (b3)";
const char* const kMisprintRoter54 =
    "printed family fails at N3 = 0; exact family is N1 = -(2+e)/(8(1+e)^2) + c^2 N3, N2 = 1/2 - 2c N3";
const char* const kMisprintSS55 =
    "contradicts (S - kappa/2 g)^(S - kappa/2 g) = 0, whose expansion has -kappa g^S";

// ---------------------------------------------------------------- criterion 1

void criterion1(Criterion& k) {
  const Chart c = chart("ex5_1");
  const Curv v(c);
  const int n = 5;
  k.check("kappa = 7/2 exp(-x1)", c.scalar_curvature() == v.x("7/2*exp(-x1)"));

  const Tensor dr = covariant_derivative(c, v.r);
  const SolutionSpace chaki = solve_chaki(v.r, dr);
  const Tensor phi = form(c, {"-1/2", "0", "0", "0", "0"});
  k.check("Chaki solver: unique phi = (-1/2, 0, 0, 0, 0)", chaki.unique() && form_block(chaki.particular, 0, n) == phi);
  k.identity(c, ident("nabla R - 2 phi (x) R + phi.R = 0",
                      {{Expr(1L), permute_slots(dr, {4, 0, 1, 2, 3})},
                       {Expr(-2L), outer(v.r, phi)},
                       {Expr(1L), oneform_dot(phi, v.r)}}));

  k.check("R.R and Q(g,R) not proportional", deszcz_outcome(c, v.r, v.r, v.g) == Outcome::Fails);
  k.check("R.R and Q(S,R) not proportional", deszcz_outcome(c, v.r, v.r, v.s) == Outcome::Fails);

  const Tensor weyl = derived_tensor(c, Derived::C);
  const Expr lc = v.x("-1/24*exp(-x1)");
  const Proportionality cc = classify_deszcz(c, weyl, weyl, v.g);
  k.check("C.C = L Q(g,C) with L = -1/24 exp(-x1)", cc.outcome == Outcome::Holds && cc.factor == lc);
  k.identity(c, ident("C.C + 1/24 exp(-x1) Q(g,C) = 0", {{Expr(1L), dot_action(c, weyl, weyl)}, {-lc, tachibana(v.g, weyl)}}));

  const Tensor ss = kn(v.s, v.s), ss2 = kn(v.s, v.s2), s2s2 = kn(v.s2, v.s2);
  const Tensor gs = kn(v.g, v.s), gs2 = kn(v.g, v.s2), gg = kn(v.g, v.g);
  k.identity(c, ident("R = 65/36 e S^S - 34/9 e^2 S^S2 + 20/9 e^3 S2^S2",
                      {{Expr(1L), v.r},
                       {-v.x("65/36*exp(x1)"), ss},
                       {v.x("34/9*exp(2*x1)"), ss2},
                       {-v.x("20/9*exp(3*x1)"), s2s2}}));
  k.identity(c, ident("S2^S2 five-term identity",
                      {{Expr(1L), s2s2},
                       {-v.x("7/2*exp(-x1)"), ss2},
                       {v.x("49/16*exp(-2*x1)"), ss},
                       {v.x("3/2*exp(-2*x1)"), gs2},
                       {-v.x("21/8*exp(-3*x1)"), gs},
                       {v.x("9/8*exp(-4*x1)"), Expr(mpq_class(1, 2)) * gg}}));
  k.identity(c, ident("R.R - Q(S,R) = 25/9 e^2 Q(S, S^S2) + 28/9 e^3 Q(S2, S^S2)",
                      {{Expr(1L), dot_action(c, v.r, v.r)},
                       {Expr(-1L), tachibana(v.s, v.r)},
                       {-v.x("25/9*exp(2*x1)"), tachibana(v.s, ss2)},
                       {-v.x("28/9*exp(3*x1)"), tachibana(v.s2, ss2)}}));

  const std::vector<Tensor> gens{ss, ss2, gs, gs2, gg, s2s2};
  const SolutionSpace gr = solve_linear_combination(v.r, gens, {"L1", "L2", "L3", "L4", "L5", "L6"});
  k.check("generalized Roter: one-parameter family", gr.consistent && gr.dimension() == 1);
  for (const char* l6 : {"0", "20/9*exp(3*x1)", "exp(x1)"}) {
    const std::string t = std::string("(") + l6 + ")";
    const std::string m = "(20*exp(3*x1) - 9*" + t + ")";
    const std::vector<Expr> ls{v.x("-1/16*exp(-2*x1)*(80*exp(3*x1) - 49*" + t + ")"),
                               v.x("1/2*exp(-x1)*(8*exp(3*x1) - 7*" + t + ")"),
                               v.x("7/24*exp(-3*x1)*" + m),
                               v.x("-1/6*exp(-2*x1)*" + m),
                               v.x("-1/16*exp(-4*x1)*" + m),
                               v.x(t)};
    std::vector<std::pair<Expr, Tensor>> terms{{Expr(1L), v.r}};
    for (std::size_t i = 0; i < gens.size(); ++i) terms.push_back({-ls[i], gens[i]});
    k.identity(c, ident(std::string("generalized Roter family member at L6 = ") + l6, terms));
  }
  k.check("Roter solver inconsistent", !solve_linear_combination(v.r, {gg, gs, ss}, {"N1", "N2", "N3"}).consistent);

  const Tensor ds = covariant_derivative(c, v.s);
  const RicciFormRecurrence b4 = check_b4(v.s, ds);
  const Tensor alpha = form(c, {"-1/2", "0", "0", "0", "0"});
  k.check("(b4) holds for S", b4.holds);
  k.identity(c, b4_identity("(b4) residual for S with alpha = (-1/2, 0, 0, 0, 0)", ds, v.s, alpha));
  k.check("(b2) fails for R", !check_form_recurrence(v.r, dr).b2);
  for (Derived d : {Derived::C, Derived::P, Derived::K, Derived::Conh}) {
    const Tensor t = derived_tensor(c, d);
    const FormRecurrence fr = check_form_recurrence(t, covariant_derivative(c, t));
    k.check("(b1), (b2), (b3) fail for " + derived_name(d), !fr.b1 && !fr.b2 && !fr.b3);
  }
}

// ---------------------------------------------------------------- criterion 2

void criterion2(Criterion& k) {
  const Chart c = chart("ex5_2");
  const Curv v(c);
  k.check("kappa = -3/(2 x1^3)", c.scalar_curvature() == v.x("-3/(2*x1^3)"));
  const Tensor rr = dot_action(c, v.r, v.r);
  const Expr l = v.x("-1/(2*x1^3)");
  const Proportionality pg = classify_deszcz(c, v.r, v.r, v.g);
  const Proportionality ps = classify_deszcz(c, v.r, v.r, v.s);
  k.check("R.R = L Q(g,R) with L = -1/(2 x1^3)", pg.outcome == Outcome::Holds && pg.factor == l);
  k.check("R.R = L Q(S,R) with L = 1", ps.outcome == Outcome::Holds && ps.factor == Expr(1L));
  k.identity(c, ident("R.R + 1/(2 x1^3) Q(g,R) = 0", {{Expr(1L), rr}, {-l, tachibana(v.g, v.r)}}));
  k.identity(c, ident("R.R - Q(S,R) = 0", {{Expr(1L), rr}, {Expr(-1L), tachibana(v.s, v.r)}}));
  k.check("S^S = 0", kn(v.s, v.s).is_zero());
  k.check("S^S2 = 0", kn(v.s, v.s2).is_zero());
  k.check("S2^S2 = 0", kn(v.s2, v.s2).is_zero());

  const Tensor dr = covariant_derivative(c, v.r);
  k.check("Chaki solver inconsistent", !solve_chaki(v.r, dr).consistent);
  const FormRecurrence fr = check_form_recurrence(v.r, dr);
  k.check("(b1) holds for R", fr.b1);
  k.check("(b2) fails for R", !fr.b2);
  if (fr.b1) k.identity(c, ident("cyclic nabla R = 0", cyclic3(dr, Expr(1L))));

  const std::vector<std::pair<Derived, const char*>> b3{
      {Derived::P, "-1/x1"}, {Derived::K, "-1/x1"}, {Derived::Conh, "-3/x1"}};
  for (const auto& [d, a] : b3) {
    const Tensor t = derived_tensor(c, d);
    const Tensor dt = covariant_derivative(c, t);
    const FormRecurrence f = check_form_recurrence(t, dt);
    const std::string name = derived_name(d);
    k.check("(b3) holds for " + name, f.b3);
    k.identity(c, b3_identity("(b3) residual for " + name + " with alpha = (" + a + ", 0, 0, 0)", dt, t,
                              form(c, {a, "0", "0", "0"})));
  }
  k.check("(b4) fails for S", !check_b4(v.s, covariant_derivative(c, v.s)).holds);

  const Tensor gg = kn(v.g, v.g), gs = kn(v.g, v.s), ss = kn(v.s, v.s);
  const SolutionSpace roter = solve_linear_combination(v.r, {gg, gs, ss}, {"N1", "N2", "N3"});
  k.check("Roter solver consistent", roter.consistent);
  k.identity(c, ident("Roter member N1 = -kappa/12, N2 = 1/2, N3 = 0",
                      {{Expr(1L), v.r},
                       {c.scalar_curvature() / Expr(12L), gg},
                       {Expr(mpq_class(-1, 2)), gs}}));
}

// ---------------------------------------------------------------- criterion 3

std::vector<std::string> outcome_vector(const Chart& c) {
  std::vector<std::string> out;
  for (const auto& v : classify(c).verdicts)
    out.push_back(v.name + "[" + v.tensor + "]=" + std::to_string(static_cast<int>(v.outcome)));
  return out;
}

MetricSpec godel_at(const std::string& a) {
  MetricSpec s = builtin("ex5_3");
  const std::regex param("\\ba\\b");
  for (auto& row : s.metric)
    for (auto& e : row) e = std::regex_replace(e, param, "(" + a + ")");
  s.params.clear();
  s.name = "ex5_3[a=" + a + "]";
  return s;
}

void criterion3(Criterion& k) {
  const Chart c = chart("ex5_3");
  const Curv v(c);
  const Expr kappa = c.scalar_curvature();
  k.check("rank S = 1", rank_at_most(v.s, 1) && !v.s.is_zero());

  const auto qe = solve_quasi_einstein(c);
  k.check("quasi-Einstein decomposition found", qe.has_value());
  if (qe)
    k.identity(c, ident("S = alpha g + beta eta (x) eta", {{Expr(1L), v.s}, {-qe->alpha, v.g}, {-qe->beta, outer(qe->eta, qe->eta)}}));

  const Tensor weyl = derived_tensor(c, Derived::C);
  const Proportionality cc = classify_deszcz(c, weyl, weyl, v.g);
  k.check("C.C = (kappa/6) Q(g,C)", cc.outcome == Outcome::Holds && cc.factor == kappa / Expr(6L));
  k.identity(c, ident("C.C - kappa/6 Q(g,C) = 0", {{Expr(1L), dot_action(c, weyl, weyl)}, {-kappa / Expr(6L), tachibana(v.g, weyl)}}));

  k.check("R.R and Q(g,R) not proportional", deszcz_outcome(c, v.r, v.r, v.g) == Outcome::Fails);
  const Proportionality rs = classify_deszcz(c, v.r, v.r, v.s);
  k.check("R.R = L Q(S,R) for some L", rs.outcome == Outcome::Holds);
  if (rs.outcome == Outcome::Holds)
    k.identity(c, ident("R.R - L Q(S,R) = 0", {{Expr(1L), dot_action(c, v.r, v.r)}, {-rs.factor, tachibana(v.s, v.r)}}));
  k.check("Chaki solver inconsistent", !solve_chaki(v.r, covariant_derivative(c, v.r)).consistent);

  std::string b1_holders;
  for (Derived d : {Derived::C, Derived::P, Derived::K, Derived::Conh}) {
    const Tensor t = derived_tensor(c, d);
    if (check_form_recurrence(t, covariant_derivative(c, t)).b1) b1_holders += derived_name(d) + " ";
  }
  k.check("(b1) holds for K only among C, P, K, conh (got: " + b1_holders + ")", b1_holders == "K ");

  // Every scalar witness above is a multiple of a power of kappa, and the
  // yes/no verdicts do not move when a is replaced by numbers.
  k.check("C.C factor / kappa is a-free", (cc.factor / kappa).is_constant());
  k.check("R.R vs Q(S,R) factor is a-free", rs.outcome == Outcome::Holds && rs.factor.is_constant());
  const auto symbolic = outcome_vector(c);
  for (const char* a : {"1", "2", "-3/5", "7/3"})
    k.check(std::string("all verdicts unchanged at a = ") + a, outcome_vector(build_chart(godel_at(a))) == symbolic);
}

// ---------------------------------------------------------------- criterion 4

void criterion4(Criterion& k) {
  const Chart c = chart("ex5_4");
  const Curv v(c);
  const int n = 4;
  const Tensor dr = covariant_derivative(c, v.r);
  const SolutionSpace chaki = solve_chaki(v.r, dr);
  const Tensor phi = form(c, {"-exp(x1)/(2*(exp(x1) + 1))", "0", "0", "0"});
  k.check("Chaki solver: unique phi_1 = -e/(2(e+1))", chaki.unique() && form_block(chaki.particular, 0, n) == phi);
  k.identity(c, ident("nabla R - 2 phi (x) R + phi.R = 0",
                      {{Expr(1L), permute_slots(dr, {4, 0, 1, 2, 3})},
                       {Expr(-2L), outer(v.r, phi)},
                       {Expr(1L), oneform_dot(phi, v.r)}}));

  const ChakiConsequences cq = chaki_consequences(c, v.r, phi);
  Tensor h(n, 2);
  h.at({0, 0}) = v.x("exp(x1)/(2*(1 + exp(x1))^2)");
  for (int i = 1; i < n; ++i) h.at({i, i}) = v.x("exp(2*x1)/(4*(1 + exp(x1))^2)");
  k.check("H = phi (x) phi - nabla phi has the printed components", cq.h == h);
  k.check("H is proportional to neither g nor S",
          cq.h_vs_g.outcome == Outcome::Fails && cq.h_vs_s.outcome == Outcome::Fails);

  const Expr l = v.x("1/(4*(1 + exp(x1))^2)");
  const Tensor rr = dot_action(c, v.r, v.r);
  const Proportionality pg = classify_deszcz(c, v.r, v.r, v.g);
  k.check("R.R = L Q(g,R) with L = 1/(4(1+e)^2)", pg.outcome == Outcome::Holds && pg.factor == l);
  k.identity(c, ident("R.R - 1/(4(1+e)^2) Q(g,R) = 0", {{Expr(1L), rr}, {-l, tachibana(v.g, v.r)}}));
  k.identity(c, ident("R.R - Q(S,R) = 0", {{Expr(1L), rr}, {Expr(-1L), tachibana(v.s, v.r)}}));

  struct Factorization {
    const char* label;
    const Tensor& w;
    const char* l1;
    const char* l2;
  };
  const std::vector<Factorization> fs{
      {"D1", v.g, "2*(exp(x1) + 1)^3/(exp(x1) - 1)^2", "1/(4*(1 + exp(x1))^2)"},
      {"D2", v.s, "2*(exp(x1) + 1)^3/(3 + exp(x1))^2", "1"}};
  for (const auto& f : fs) {
    const Expr l1 = v.x(f.l1), l2 = v.x(f.l2);
    bool found = false;
    for (const auto& sol : corollary47_decomposition(v.r, f.w, cq.h)) found |= sol.l1 == l1 && sol.l2 == l2;
    k.check(std::string("corollary47_decomposition returns the printed ") + f.label + " coefficients", found);
    const Tensor d = l2 * f.w - cq.h;
    k.identity(c, ident(std::string("R = L ") + f.label + "^" + f.label, {{Expr(1L), v.r}, {-l1, kn(d, d)}}));
  }

  const Tensor gg = kn(v.g, v.g), gs = kn(v.g, v.s), ss = kn(v.s, v.s);
  const SolutionSpace roter = solve_linear_combination(v.r, {gg, gs, ss}, {"N1", "N2", "N3"});
  k.check("Roter family is one-parameter in N3", roter.consistent && roter.dimension() == 1);
  for (const char* n3 : {"0", "1"}) {
    const std::string t = std::string("(") + n3 + ")";
    const Expr p1 = v.x("-(2 + exp(x1))/(4*(1 + exp(x1))^2) + (3 + 2*exp(x1))^2/(16*(1 + exp(x1))^4)*" + t);
    const Expr p2 = v.x("1/2 + (3 + 2*exp(x1))/(4*(1 + exp(x1))^2)*" + t);
    k.identity(c, ident(std::string("printed Roter family at N3 = ") + n3, {{Expr(1L), v.r}, {-p1, gg}, {-p2, gs}, {-v.x(t), ss}}),
               kMisprintRoter54);
    const Expr cc = v.x("(3 + 2*exp(x1))/(4*(1 + exp(x1))^2)");
    const Expr d1 = v.x("-(2 + exp(x1))/(8*(1 + exp(x1))^2)") + cc * cc * v.x(t);
    const Expr d2 = Expr(mpq_class(1, 2)) - Expr(2L) * cc * v.x(t);
    k.identity(c, ident(std::string("exact Roter family at N3 = ") + n3, {{Expr(1L), v.r}, {-d1, gg}, {-d2, gs}, {-v.x(t), ss}}));
  }

  const std::vector<std::pair<Derived, std::string>> b3{
      {Derived::P, "-(3 + exp(x1))/(1 + exp(x1))"},
      {Derived::K, "-(3 + exp(x1))/(1 + exp(x1))"},
      {Derived::Conh, "-exp(x1)*(3 + exp(x1))/(2 + 3*exp(x1) + exp(2*x1))"}};
  for (const auto& [d, a] : b3) {
    const Tensor t = derived_tensor(c, d);
    const Tensor dt = covariant_derivative(c, t);
    const std::string name = derived_name(d);
    k.check("(b3) holds for " + name, check_form_recurrence(t, dt).b3);
    const bool misprint = d != Derived::Conh;
    k.identity(c, b3_identity("(b3) residual for " + name + " with printed alpha_1 = " + a, dt, t, form(c, {a, "0", "0", "0"})),
               misprint ? kMisprintAlphaPK : "");
    if (misprint)
      k.identity(c, b3_identity("(b3) residual for " + name + " with alpha_1 = (3 + e)/(1 + e)", dt, t,
                                form(c, {"(3 + exp(x1))/(1 + exp(x1))", "0", "0", "0"})));
  }
  const Tensor ds = covariant_derivative(c, v.s);
  k.check("(b4) holds for S", check_b4(v.s, ds).holds);
  k.identity(c, b4_identity("(b4) residual for S with the printed alpha", ds, v.s,
                            form(c, {"-exp(x1)*(exp(x1) + 3)/(5*exp(x1) + 2*exp(2*x1) + 3)", "0", "0", "0"})));
}

// ---------------------------------------------------------------- criterion 5

void criterion5(Criterion& k) {
  const Chart c = chart("ex5_5");
  const Curv v(c);
  const Expr kappa = c.scalar_curvature();
  const Expr half(mpq_class(1, 2)), third(mpq_class(1, 3));
  k.check("kappa = rho^2", kappa == v.x("rho^2"));
  k.check("S is cyclic parallel", is_cyclic_parallel(covariant_derivative(c, v.s)));
  const Tensor sk = v.s - half * kappa * v.g;
  k.identity(c, ident("(S - kappa/2 g)^(S - kappa/2 g) = 0", {{Expr(1L), kn(sk, sk)}}));

  const auto qe = solve_quasi_einstein(c);
  k.check("quasi-Einstein: alpha = kappa/2, beta = -3 kappa/2",
          qe && qe->alpha == half * kappa && qe->beta == Expr(mpq_class(-3, 2)) * kappa);
  const Tensor eta = form(c, {"0", "0", "-rho", "-x*rho", "y*rho"});
  k.check("quasi-Einstein: eta = +-(0, 0, -rho, -x rho, y rho)", qe && (qe->eta == eta || qe->eta == -eta));
  k.identity(c, ident("S = kappa/2 g - 3 kappa/2 eta (x) eta",
                      {{Expr(1L), v.s}, {-half * kappa, v.g}, {Expr(mpq_class(3, 2)) * kappa, outer(eta, eta)}}));

  const Tensor weyl = derived_tensor(c, Derived::C);
  const Tensor kt = derived_tensor(c, Derived::K);
  const Tensor pt = derived_tensor(c, Derived::P);
  const Tensor conh = derived_tensor(c, Derived::Conh);
  const Tensor cr = dot_action(c, weyl, v.r);
  const Tensor rc = dot_action(c, v.r, weyl);
  const Tensor qgr = tachibana(v.g, v.r);

  struct Prop {
    const char* label;
    const Tensor& b;
    const Tensor& t;
    Expr l;
  };
  const std::vector<Prop> props{{"R.R = -kappa/4 Q(g,R)", v.r, v.r, Expr(mpq_class(-1, 4)) * kappa},
                                {"K.R = -3 kappa/10 Q(g,R)", kt, v.r, Expr(mpq_class(-3, 10)) * kappa},
                                {"P.S = -kappa/4 Q(g,S)", pt, v.s, Expr(mpq_class(-1, 4)) * kappa},
                                {"conh.S = -kappa/12 Q(g,S)", conh, v.s, Expr(mpq_class(-1, 12)) * kappa}};
  for (const auto& p : props) {
    const Proportionality pr = classify_deszcz(c, p.b, p.t, v.g);
    k.check(std::string(p.label) + " (proportionality solver)", pr.outcome == Outcome::Holds && pr.factor == p.l);
    k.identity(c, ident(p.label, {{Expr(1L), dot_action(c, p.b, p.t)}, {-p.l, tachibana(v.g, p.t)}}));
  }
  k.check("C.S = 0", check_semisymmetric(c, weyl, v.s));
  k.identity(c, ident("C.C - C.R = 0", {{Expr(1L), dot_action(c, weyl, weyl)}, {Expr(-1L), cr}}));
  k.check("P.R and Q(g,R) not proportional", deszcz_outcome(c, pt, v.r, v.g) == Outcome::Fails);
  k.check("conh.R and Q(g,R) not proportional", deszcz_outcome(c, conh, v.r, v.g) == Outcome::Fails);

  const SolutionSpace lc1 = solve_linear_combination(cr, {tachibana(v.s, weyl), tachibana(v.g, weyl)}, {"a", "b"});
  k.check("C.R = -1/3 Q(S,C) - kappa/3 Q(g,C) (solve_linear_combination)",
          lc1.unique() && lc1.particular[0] == -third && lc1.particular[1] == -third * kappa);
  k.identity(c, ident("C.R + 1/3 Q(S,C) + kappa/3 Q(g,C) = 0",
                      {{Expr(1L), cr}, {third, tachibana(v.s, weyl)}, {third * kappa, tachibana(v.g, weyl)}}));
  const SolutionSpace lc2 = solve_linear_combination(rc - cr, {tachibana(v.s, v.r), qgr}, {"a", "b"});
  k.check("R.C - C.R = 1/3 Q(S,R) + kappa/12 Q(g,R) (solve_linear_combination)",
          lc2.unique() && lc2.particular[0] == third && lc2.particular[1] == kappa / Expr(12L));
  k.identity(c, ident("R.C - C.R - 1/3 Q(S,R) - kappa/12 Q(g,R) = 0",
                      {{Expr(1L), rc}, {Expr(-1L), cr}, {-third, tachibana(v.s, v.r)}, {-kappa / Expr(12L), qgr}}));

  const Tensor gg = kn(v.g, v.g), gs = kn(v.g, v.s), ss = kn(v.s, v.s);
  const Tensor ss2 = kn(v.s, v.s2), gs2 = kn(v.g, v.s2), s2s2 = kn(v.s2, v.s2);
  k.check("Roter solver inconsistent", !solve_linear_combination(v.r, {gg, gs, ss}, {"N1", "N2", "N3"}).consistent);
  k.check("generalized Roter solver inconsistent",
          !solve_linear_combination(v.r, {ss, ss2, gs, gs2, gg, s2s2}, {"L1", "L2", "L3", "L4", "L5", "L6"}).consistent);
  k.identity(c, ident("S^S - kappa/2 g^S + kappa^2/4 g^g = 0",
                      {{Expr(1L), ss}, {-half * kappa, gs}, {Expr(mpq_class(1, 4)) * kappa * kappa, gg}}),
             kMisprintSS55);
  k.identity(c, ident("S^S - kappa g^S + kappa^2/4 g^g = 0 (expanded square)",
                      {{Expr(1L), ss}, {-kappa, gs}, {Expr(mpq_class(1, 4)) * kappa * kappa, gg}}));
}

// ---------------------------------------------------------------- criterion 6

void criterion6(Criterion& k) {
  for (const auto& name : builtin_names()) {
    const Chart c = chart(name);
    const Curv v(c);
    const std::string at = " on " + name;
    k.check("GCT axioms and second Bianchi for R" + at, check_gct(v.r).all() && check_second_bianchi(c, v.r));
    bool gct = check_gct(derived_tensor(c, Derived::K)).all() && check_gct(derived_tensor(c, Derived::Conh)).all();
    if (c.n() >= 4) gct = gct && check_gct(derived_tensor(c, Derived::C)).all();
    k.check(std::string("GCT axioms for ") + (c.n() >= 4 ? "C, " : "") + "K, conh" + at, gct);
    // For Einstein metrics P is a GCT (and P = 0 when flat), so (iii) can only fail elsewhere.
    const bool einstein = rank_at_most(v.s - (c.scalar_curvature() / Expr(static_cast<long>(c.n()))) * v.g, 0);
    if (einstein)
      k.check("P is a GCT" + at + " (Einstein, S = kappa/n g)", check_gct(derived_tensor(c, Derived::P)).all());
    else
      k.check("axiom (iii) fails for P" + at, !check_gct(derived_tensor(c, Derived::P)).block_interchange);
    k.check("Walker cyclic identity for R" + at, walker_cyclic_check(c, v.r));
    k.check("nabla g = 0" + at, covariant_derivative(c, v.g).is_zero());

    int solutions = 0;
    bool residuals = true;
    std::vector<std::pair<std::string, Tensor>> ts{{"R", v.r}, {"K", derived_tensor(c, Derived::K)},
                                                   {"conh", derived_tensor(c, Derived::Conh)},
                                                   {"P", derived_tensor(c, Derived::P)}, {"S", v.s}};
    if (c.n() >= 4) ts.emplace_back("C", derived_tensor(c, Derived::C));
    for (const auto& [tn, t] : ts) {
      const SolutionSpace s = solve_chaki(t, covariant_derivative(c, t));
      if (!s.consistent) continue;
      std::vector<std::vector<Expr>> points{s.particular};
      for (const auto& b : s.basis) {
        auto p = s.particular;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += b[i];
        points.push_back(p);
      }
      for (const auto& p : points) {
        const Tensor phi = form_block(p, 0, c.n());
        ++solutions;
        residuals = residuals && theorem41_residual(c, t, Expr(2L) * phi, phi).is_zero();
      }
    }
    k.check("theorem41_residual = 0 for all " + std::to_string(solutions) + " Chaki solution points" + at, residuals);
  }
}

// ---------------------------------------------------------------- criterion 7

void criterion7(Criterion& k) {
  int disagreements = 0, inconclusive = 0;
  for (std::size_t i = 0; i < g_identities.size(); ++i) {
    const OracleOutcome o = oracle_check(g_identities[i].id, g_identities[i].sym, 50, 42 + i);
    disagreements += o.disagreements;
    inconclusive += o.inconclusive ? 1 : 0;
  }
  k.check(std::to_string(g_identities.size()) + " verified identities above: 50 samples each, " +
              std::to_string(disagreements) + " disagreements, " + std::to_string(inconclusive) + " inconclusive",
          disagreements == 0 && inconclusive == 0 && !g_identities.empty());

  for (const auto& name : builtin_names()) {
    Report r = classify(chart(name));
    const OracleSummary o = oracle_crosscheck(r, 50, 42);
    k.check("report identities of " + name + ": " + std::to_string(o.identities) + " identities, " +
                std::to_string(o.disagreements) + " disagreements",
            o.disagreements == 0 && o.inconclusive == 0);
  }

  int perturbed = 0;
  for (const auto& rec : g_identities) {
    if (perturbed == 10) break;
    if (rec.id.terms.size() < 2 || rec.id.terms.back().tensor->is_zero()) continue;
    Identity bad = rec.id;
    bad.terms.back().coeff += Expr(1L);
    bad.label += " [last coefficient + 1]";
    const OracleOutcome o = oracle_check(bad, rec.sym, 50, 42);
    k.check(bad.label + ": " + std::to_string(o.disagreements) + " disagreements", o.disagreements >= 1);
    ++perturbed;
  }
  k.check("10 perturbed identities checked", perturbed == 10);
}

// ---------------------------------------------------------------- criterion 8

std::string json_report(const std::string& name) {
  Report r = classify(chart(name));
  r.oracle = oracle_crosscheck(r, 50, 42);
  return render_json(r);
}

#ifdef CURVKIT_CLI
std::string cli_report(const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / ("curvkit_acceptance_" + name + ".json");
  const std::string cmd = std::string(CURVKIT_CLI) + " classify " + name + " --format json --seed 42 > " + path.string();
  if (std::system(cmd.c_str()) != 0) return "exit status " + name;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(path);
  return ss.str();
}
#endif

void criterion8(Criterion& k) {
  for (const auto& name : builtin_names()) {
    const std::string a = json_report(name);
    k.check("in-process json reports identical for " + name, a == json_report(name));
#ifdef CURVKIT_CLI
    const std::string p = cli_report(name);
    k.check("two CLI runs identical and equal to the in-process report for " + name, p == cli_report(name) && p == a);
#endif
  }
}

}  // namespace

int main() {
  std::vector<Criterion> cs{{1, "5-dimensional conformal example"},
                            {2, "conformally flat x1 delta metric"},
                            {3, "Goedel spacetime with symbolic a"},
                            {4, "conformally flat Chaki example"},
                            {5, "5-dimensional Lie group metric with rho"},
                            {6, "structural identities on the corpus"},
                            {7, "randomized oracle"},
                            {8, "determinism"}};
  using Runner = void (*)(Criterion&);
  const Runner runners[] = {criterion1, criterion2, criterion3, criterion4,
                            criterion5, criterion6, criterion7, criterion8};
  bool ok = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    try {
      runners[i](cs[i]);
    } catch (const std::exception& e) {
      cs[i].check(std::string("exception: ") + e.what(), false);
    }
    cs[i].print();
    std::cout.flush();
    ok = ok && cs[i].only_known_failures();
  }
  int passed = 0;
  for (const auto& c : cs) passed += c.passed() ? 1 : 0;
  std::cout << passed << "/" << cs.size() << " criteria pass; "
            << (ok ? "every mismatch is a documented misprint" : "UNEXPECTED mismatches present") << "\n";
  return ok ? 0 : 1;
}
