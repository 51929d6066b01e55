#pragma once

#include <string>

#include "curvkit/chart.hpp"

namespace curvkit {

/// (A∧D)_abcd = A_ad D_bc + A_bc D_ad - A_ac D_bd - A_bd D_ac.
Tensor kulkarni_nomizu(const Tensor& a, const Tensor& d);

enum class Derived { G, C, K, Conh, P };

std::string derived_name(Derived which);

/// G = 1/2 g∧g, Weyl C, concircular K, conharmonic conh(R) and the
/// projective tensor P, all as (0,4) tensors.  P is returned lowered,
/// P_abcd = R_abcd - 1/(n-1) (S_bc g_ad - S_ac g_bd), and is not a GCT.
/// The 1/(n-1) factor is the one whose Ricci contraction vanishes.
Tensor derived_tensor(const Chart& chart, Derived which);

/// (B·T)_{i1..ik h l} = -Σ_m B^p_{h l i_m} T_{..p..}, with B given in (0,4)
/// form and lifted on its fourth slot.
Tensor dot_action(const Chart& chart, const Tensor& b, const Tensor& t);
/// Same, with the curvature operator already lifted (upper_slot 3).
Tensor dot_action_lifted(const Tensor& b13, const Tensor& t);

/// Q(A,T)_{i1..ik h l} = -Σ_m (A_{l i_m} T_{..h..} - A_{h i_m} T_{..l..}).
Tensor tachibana(const Tensor& a, const Tensor& t);

/// (μ·T)_{i1..ik h} = -Σ_m μ_{i_m} T_{..h..}; the extra slot carries X.
Tensor oneform_dot(const Tensor& mu, const Tensor& t);

struct GctVerdict {
  bool first_bianchi = false;
  bool skew_first_pair = false;
  bool block_interchange = false;
  bool all() const { return first_bianchi && skew_first_pair && block_interchange; }
};

GctVerdict check_gct(const Tensor& b);
bool check_second_bianchi(const Chart& chart, const Tensor& b);

/// Cyclic sum (R·B)_{3456,12} + (R·B)_{5612,34} + (R·B)_{1234,56}.
Tensor walker_cyclic_sum(const Chart& chart, const Tensor& b);
bool walker_cyclic_check(const Chart& chart, const Tensor& b);

}  // namespace curvkit
