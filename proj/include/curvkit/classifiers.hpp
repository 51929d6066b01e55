#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvkit/algebra.hpp"
#include "curvkit/chart.hpp"
#include "curvkit/linear.hpp"

namespace curvkit {

enum class Outcome { Holds, Fails, Degenerate };

std::string outcome_name(Outcome o);

/// Claimed identity Σ coeff_j · tensor_j = 0, kept for the randomized oracle.
struct IdentityTerm {
  Expr coeff;
  std::shared_ptr<const Tensor> tensor;
};

struct Identity {
  std::string label;
  std::vector<IdentityTerm> terms;
};

struct ClassifierVerdict {
  std::string name;
  std::string tensor;
  Outcome outcome = Outcome::Fails;
  std::vector<std::pair<std::string, std::string>> witness;
  std::string notes;
  std::vector<Identity> identities;
};

// ---------------------------------------------------------------------------
// Pseudosymmetry

struct Proportionality {
  Outcome outcome = Outcome::Fails;
  Expr factor;  // meaningful when outcome == Holds
};

/// lhs = L·rhs with L read off the first nonzero rhs component and then
/// checked on every component.  rhs = 0 = lhs is Degenerate.
Proportionality solve_proportionality(const Tensor& lhs, const Tensor& rhs);

/// R·T = 0.
bool check_semisymmetric(const Chart& chart, const Tensor& t);
/// B·T = 0 for a (0,4) tensor B acting.
bool check_semisymmetric(const Chart& chart, const Tensor& b, const Tensor& t);

/// R·T against Q(W,T); W = g gives Deszcz, W = S Ricci generalized.
Proportionality classify_deszcz(const Chart& chart, const Tensor& t, const Tensor& w);
/// Same with a (0,4) tensor B acting in place of R.
Proportionality classify_deszcz(const Chart& chart, const Tensor& b, const Tensor& t, const Tensor& w);

// ---------------------------------------------------------------------------
// Weak symmetry, Chaki pseudosymmetry and recurrence
//
// All of these solve ∇_h T_I = α_h T_I + Σ_m π_m(i_m) T_{I[m<-h]} for some
// tying of the 1-forms.  `dt` is covariant_derivative(chart, t).

/// Chaki: α = 2φ, every π_m = φ.  Unknowns phi_1..phi_n.
SolutionSpace solve_chaki(const Tensor& t, const Tensor& dt);
/// Recurrence ∇T = π⊗T.  Unknowns pi_1..pi_n.
SolutionSpace solve_recurrence(const Tensor& t, const Tensor& dt);
/// Type II with k+1 independent 1-forms: (α, β, β̄, γ, γ̄) for k = 4,
/// (δ, η, λ) for k = 2, (α, π1..πk) otherwise.
SolutionSpace solve_weak_symmetry(const Tensor& t, const Tensor& dt);
/// Type III: ∇T = α⊗T - π_X·T.  Unknowns alpha then pi.
SolutionSpace solve_weak_type3(const Tensor& t, const Tensor& dt);

/// Block b (0-based) of an unknown vector whose blocks are 1-forms.
Tensor form_block(const std::vector<Expr>& point, int block, int n);

/// α_h T_I + Σ_m π_m(i_m) T_{I[m<-h]}, laid out like ∇T.
Tensor weak_combination(const Tensor& t, const Tensor& alpha, const std::vector<Tensor>& pis);

/// True when (α, π_1..π_k) solves the type II system.
bool is_weak_solution(const Tensor& t, const Tensor& dt, const Tensor& alpha, const std::vector<Tensor>& pis);

/// Throws InconsistencyError if some member of a weak-symmetry space has
/// π_i != π_j for a pair of slots in which T is skew.
void assert_skew_pairs_tied(const Tensor& t, const SolutionSpace& space);

struct WeakNormalization {
  Tensor alpha;
  Tensor sigma;  // (β + γ)/2
  std::optional<Tensor> epsilon;  // (α + 2σ)/4, only for a proper GCT
};

/// Emits (α,σ,σ,σ,σ) and, when `proper`, (2ε,ε,ε,ε,ε) from one member of a
/// rank-4 weak-symmetry space; each representative is re-verified and an
/// InconsistencyError is thrown if it does not solve the system.
WeakNormalization normalize_weak_solution(const Tensor& t, const Tensor& dt, const std::vector<Expr>& point,
                                          bool proper);

/// ∇_i Z_kl = ∇_k Z_il.
bool is_codazzi(const Tensor& dz);
/// ∇_i Z_kl + ∇_k Z_li + ∇_l Z_ik = 0.
bool is_cyclic_parallel(const Tensor& dz);

struct WeakZReductions {
  bool symmetric = false;
  bool rank_above_one = false;
  bool codazzi = false;
  bool cyclic_parallel = false;
};

/// Checks the reductions for weakly Z-symmetric spaces on every member of
/// `space` (unknowns δ, η, λ): for symmetric Z the averaged point solves,
/// η = λ when rank Z > 1, δ = η = λ when also Codazzi, δ + η + λ = 0 when
/// cyclic parallel.  Nothing is asserted for Z = 0.  Throws
/// InconsistencyError on a violation.
WeakZReductions check_weak_z_reductions(const Tensor& z, const Tensor& dz, const SolutionSpace& space);

/// dω = 0.
bool is_closed(const Chart& chart, const Tensor& omega);

// ---------------------------------------------------------------------------
// Recurrent curvature 2-forms and Ricci 1-forms

struct FormRecurrence {
  bool b1 = false;           // cyclic sum of ∇T vanishes
  bool b2 = false;           // a nonzero α annihilates the cyclic α-sum
  SolutionSpace b2_space;    // kernel of the homogeneous system
  bool b3 = false;           // the inhomogeneous system has a solution with α != 0
  SolutionSpace b3_space;    // unknowns alpha_1..alpha_n
  std::shared_ptr<const Tensor> cyclic;  // ∇ cyclic sum, for identities
};

/// (b1)-(b3) for a (0,4) tensor.
FormRecurrence check_form_recurrence(const Tensor& t, const Tensor& dt);
/// Σ α_h T_ijkl + α_i T_jhkl + α_j T_hikl as a (0,5) tensor [h][i][j][k][l].
Tensor alpha_cyclic(const Tensor& t, const Tensor& alpha);

struct RicciFormRecurrence {
  bool holds = false;  // solution with α != 0
  SolutionSpace space;
};

/// (b4): ∇_i Z_kl - ∇_k Z_il = α_i Z_kl - α_k Z_il.
RicciFormRecurrence check_b4(const Tensor& z, const Tensor& dz);

// ---------------------------------------------------------------------------
// Decompositions

/// target = Σ c_i generator_i.
SolutionSpace solve_linear_combination(const Tensor& target, const std::vector<Tensor>& generators,
                                       std::vector<std::string> names);
/// Σ c_i generator_i = 0.
SolutionSpace linear_relations(const std::vector<Tensor>& generators, std::vector<std::string> names);
/// Σ c_i generator_i as a tensor.
Tensor combine(const std::vector<Tensor>& generators, const std::vector<Expr>& coeffs);

struct QuasiEinstein {
  bool einstein = false;  // S = α g, β = 0
  Expr alpha;
  Expr beta;
  Tensor eta;
  bool unit_eta = false;  // g(η, η) = 1; otherwise η has one component fixed to 1
};

/// S = α g + β η⊗η with α, β, η in the expression field, if such exist.
std::optional<QuasiEinstein> solve_quasi_einstein(const Chart& chart);

struct Torseforming {
  Expr a;
  Tensor tau;
  bool recurrent = false;          // a = 0
  bool proper_concircular = false; // dτ = 0
  bool concircular = false;        // τ locally a gradient, same test as dτ = 0
  bool convergent = false;         // concircular and da = a τ
  bool omega_closed = false;       // ω = g(V, .) closed
  std::optional<Expr> b;           // τ = b ω, when ω is closed
};

/// ∇_X V = a X + τ(X) V for V given by contravariant components.
std::optional<Torseforming> check_torseforming(const Chart& chart, const std::vector<Expr>& v);

// ---------------------------------------------------------------------------
// Weak symmetry of type III and Deszcz pseudosymmetry

/// J = π⊗π - ∇π.
Tensor compute_J(const Chart& chart, const Tensor& pi);

/// Sign of the dα⊗T term in R·T = c·2dα⊗T + Q(J,T) under kCurvatureSign
/// and dα_ij = 1/2(∂_i α_j - ∂_j α_i).
inline constexpr int kDalphaSign = -1;

/// R·T - c·2dα⊗T - Q(J,T) with c = kDalphaSign; layout (I; h, l).
Tensor theorem41_residual(const Chart& chart, const Tensor& t, const Tensor& alpha, const Tensor& pi);
/// The same identity as oracle terms.
Identity theorem41_identity(const Chart& chart, const Tensor& t, const Tensor& alpha, const Tensor& pi);

struct Cor47Solution {
  Expr l1;  // coefficient of D∧D
  Expr l2;  // D = l2·W - H
};

/// All (L1, L2) with B = L1 (L2 W - H)∧(L2 W - H) and L1 != 0.  With W = g
/// this is the D1 factorization, with W = S the D2 one.
std::vector<Cor47Solution> corollary47_decomposition(const Tensor& b, const Tensor& w, const Tensor& h);
/// B = L1 H∧H.
std::optional<Expr> corollary47_semisymmetric(const Tensor& b, const Tensor& h);

struct ChakiConsequences {
  bool phi_closed = false;
  Tensor h;                        // φ⊗φ - ∇φ
  bool h_zero = false;
  Proportionality h_vs_g;          // H = L g
  Proportionality h_vs_s;          // H = L S
  Proportionality qh_vs_qg;        // Q(H,T) = L Q(g,T)
  std::optional<Torseforming> torse;  // of the vector field of φ
  bool torse_b_one = false;        // φ closed, torseforming, b = 1
};

/// The sufficient conditions for a Chaki T-pseudosymmetric chart with
/// 1-form φ to be Deszcz T-pseudosymmetric.
ChakiConsequences chaki_consequences(const Chart& chart, const Tensor& t, const Tensor& phi);

}  // namespace curvkit
