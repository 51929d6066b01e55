#include "curvkit/classifiers.hpp"

namespace curvkit {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::Degenerate:
      return "degenerate";
  }
  return "?";
}

Proportionality solve_proportionality(const Tensor& lhs, const Tensor& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("solve_proportionality: shape mismatch");
  Proportionality p;
  std::size_t pivot = rhs.size();
  for (std::size_t f = 0; f < rhs.size(); ++f)
    if (!rhs[f].is_zero()) {
      pivot = f;
      break;
    }
  if (pivot == rhs.size()) {
    p.outcome = lhs.is_zero() ? Outcome::Degenerate : Outcome::Fails;
    return p;
  }
  const Expr l = lhs[pivot] / rhs[pivot];
  for (std::size_t f = 0; f < rhs.size(); ++f) {
    if (rhs[f].is_zero() ? !lhs[f].is_zero() : lhs[f] != l * rhs[f]) return p;
  }
  p.outcome = Outcome::Holds;
  p.factor = l;
  return p;
}

bool check_semisymmetric(const Chart& chart, const Tensor& t) {
  return dot_action_lifted(chart.riemann_13(), t).is_zero();
}

bool check_semisymmetric(const Chart& chart, const Tensor& b, const Tensor& t) {
  return dot_action(chart, b, t).is_zero();
}

Proportionality classify_deszcz(const Chart& chart, const Tensor& t, const Tensor& w) {
  return solve_proportionality(dot_action_lifted(chart.riemann_13(), t), tachibana(w, t));
}

Proportionality classify_deszcz(const Chart& chart, const Tensor& b, const Tensor& t, const Tensor& w) {
  return solve_proportionality(dot_action(chart, b, t), tachibana(w, t));
}

Tensor compute_J(const Chart& chart, const Tensor& pi) {
  return outer(pi, pi) - covariant_derivative(chart, pi);
}

Identity theorem41_identity(const Chart& chart, const Tensor& t, const Tensor& alpha, const Tensor& pi) {
  Identity id;
  id.label = "R.T = 2c dalpha(x)T + Q(J,T)";
  auto rt = std::make_shared<const Tensor>(dot_action_lifted(chart.riemann_13(), t));
  auto da = std::make_shared<const Tensor>(outer(t, exterior_derivative(chart, alpha)));
  auto qj = std::make_shared<const Tensor>(tachibana(compute_J(chart, pi), t));
  id.terms.push_back({Expr(1L), rt});
  id.terms.push_back({Expr(-2L * kDalphaSign), da});
  id.terms.push_back({Expr(-1L), qj});
  return id;
}

Tensor theorem41_residual(const Chart& chart, const Tensor& t, const Tensor& alpha, const Tensor& pi) {
  Identity id = theorem41_identity(chart, t, alpha, pi);
  Tensor out(t.dim(), t.rank() + 2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    SumBuilder sum;
    for (const auto& term : id.terms) sum.add_product(term.coeff, (*term.tensor)[f]);
    out[f] = sum.result();
  }
  return out;
}

ChakiConsequences chaki_consequences(const Chart& chart, const Tensor& t, const Tensor& phi) {
  ChakiConsequences c;
  c.phi_closed = is_closed(chart, phi);
  c.h = compute_J(chart, phi);
  c.h_zero = c.h.is_zero();
  c.h_vs_g = solve_proportionality(c.h, chart.metric());
  c.h_vs_s = solve_proportionality(c.h, chart.ricci());
  c.qh_vs_qg = solve_proportionality(tachibana(c.h, t), tachibana(chart.metric(), t));
  if (!phi.is_zero()) c.torse = check_torseforming(chart, raise_oneform(chart, phi));
  c.torse_b_one = c.phi_closed && c.torse && c.torse->b && *c.torse->b == Expr(1L);
  return c;
}

}  // namespace curvkit
