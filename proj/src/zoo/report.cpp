#include "curvkit/report.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "curvkit/poly.hpp"

namespace curvkit {

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "structure", "semisymmetric", "deszcz",          "ricci-generalized", "pseudosymmetry-type", "chaki",
      "recurrent", "weak",          "form-recurrence", "roter",             "quasi-einstein"};
  return names;
}

const std::vector<std::string>& tensor_names() {
  static const std::vector<std::string> names{"R", "C", "K", "conh", "P", "S"};
  return names;
}

namespace {

using Shared = std::shared_ptr<const Tensor>;
using Witness = std::vector<std::pair<std::string, std::string>>;

Shared share(Tensor t) { return std::make_shared<const Tensor>(std::move(t)); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string tuple_string(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out + ")";
}

/// "phi_3" belongs to block "phi"; "N3" to no block.
std::string block_of(const std::string& name) {
  const auto p = name.rfind('_');
  return p == std::string::npos ? std::string() : name.substr(0, p);
}

/// Consecutive unknowns of one block collapse into a single tuple entry.
Witness group_values(const std::vector<std::string>& unknowns, const std::vector<std::string>& values,
                     const std::string& suffix = "") {
  Witness out;
  for (std::size_t i = 0; i < unknowns.size();) {
    const std::string block = block_of(unknowns[i]);
    if (block.empty()) {
      out.emplace_back(unknowns[i] + suffix, values[i]);
      ++i;
      continue;
    }
    std::vector<std::string> parts;
    std::size_t j = i;
    for (; j < unknowns.size() && block_of(unknowns[j]) == block; ++j) parts.push_back(values[j]);
    out.emplace_back(block + suffix, tuple_string(parts));
    i = j;
  }
  return out;
}

Tensor identity_sum(const Identity& id) {
  Tensor out(id.terms.front().tensor->dim(), id.terms.front().tensor->rank());
  for (std::size_t f = 0; f < out.size(); ++f) {
    SumBuilder sum;
    for (const auto& term : id.terms) sum.add_product(term.coeff, (*term.tensor)[f]);
    out[f] = sum.result();
  }
  return out;
}

Identity make_identity(std::string label, std::vector<IdentityTerm> terms) { return {std::move(label), std::move(terms)}; }

}  // namespace

std::string form_string(const Chart& chart, const Tensor& form) {
  std::vector<std::string> parts;
  for (const Expr& e : form.components()) parts.push_back(chart.str(e));
  return tuple_string(parts);
}

Witness space_witness(const Chart& chart, const SolutionSpace& space) {
  if (!space.consistent) return {};
  const Symbols& sym = chart.symbols();
  const std::size_t dim = space.dimension();
  std::vector<std::string> values;
  if (static_cast<std::size_t>(sym.atom_count()) + dim <= static_cast<std::size_t>(kMaxAtoms)) {
    Symbols ext = sym;
    std::vector<Expr> t;
    for (std::size_t j = 0; j < dim; ++j) {
      ext.params.push_back(space.unknowns[static_cast<std::size_t>(space.free_columns[j])]);
      t.push_back(Expr::atom(sym.atom_count() + static_cast<int>(j)));
    }
    for (const Expr& e : space.point(t)) values.push_back(to_string(e, ext));
    return group_values(space.unknowns, values);
  }
  for (const Expr& e : space.particular) values.push_back(chart.str(e));
  Witness out = group_values(space.unknowns, values);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<std::string> b;
    for (const Expr& e : space.basis[j]) b.push_back(chart.str(e));
    out.emplace_back("basis " + space.unknowns[static_cast<std::size_t>(space.free_columns[j])], tuple_string(b));
  }
  return out;
}

namespace {

class Pipeline {
 public:
  Pipeline(const Chart& chart, const ClassifyOptions& options) : c_(chart) {
    for (const auto& name : options.tensors) {
      if (std::find(tensor_names().begin(), tensor_names().end(), name) == tensor_names().end())
        throw std::invalid_argument("unknown tensor '" + name + "'");
    }
    // Report order is the canonical one, whatever order the caller used.
    for (const auto& name : tensor_names()) {
      if (std::find(options.tensors.begin(), options.tensors.end(), name) == options.tensors.end()) continue;
      if (name == "C" && chart.n() < 4) continue;
      selected_.push_back(name);
    }
    g_ = share(chart.metric());
    s_ = share(chart.ricci());
  }

  std::vector<ClassifierVerdict> run(const std::vector<std::string>& checks) {
    for (const auto& name : checks) {
      if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
        throw std::invalid_argument("unknown check '" + name + "'");
    }
    auto wanted = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
    if (wanted("structure")) structure();
    if (wanted("semisymmetric")) semisymmetric();
    if (wanted("deszcz")) deszcz("deszcz", g_, "g");
    if (wanted("ricci-generalized")) deszcz("ricci-generalized", s_, "S");
    if (wanted("pseudosymmetry-type")) pseudosymmetry_type();
    if (wanted("chaki")) chaki();
    if (wanted("recurrent")) recurrent();
    if (wanted("weak")) weak();
    if (wanted("form-recurrence")) form_recurrence();
    if (wanted("roter")) roter();
    if (wanted("quasi-einstein")) quasi_einstein();
    return std::move(out_);
  }

 private:
  Shared tensor(const std::string& name) {
    if (auto it = tensors_.find(name); it != tensors_.end()) return it->second;
    Shared t;
    if (name == "R") t = share(c_.riemann());
    else if (name == "S") t = s_;
    else if (name == "C") t = share(derived_tensor(c_, Derived::C));
    else if (name == "K") t = share(derived_tensor(c_, Derived::K));
    else if (name == "conh") t = share(derived_tensor(c_, Derived::Conh));
    else if (name == "P") t = share(derived_tensor(c_, Derived::P));
    else throw std::invalid_argument("unknown tensor '" + name + "'");
    return tensors_[name] = t;
  }

  Shared nabla(const std::string& name) {
    if (auto it = nablas_.find(name); it != nablas_.end()) return it->second;
    return nablas_[name] = share(covariant_derivative(c_, *tensor(name)));
  }

  Shared r_dot(const std::string& name) {
    if (auto it = r_dots_.find(name); it != r_dots_.end()) return it->second;
    return r_dots_[name] = share(dot_action_lifted(c_.riemann_13(), *tensor(name)));
  }

  Shared lifted(const std::string& name) {
    if (auto it = lifted_.find(name); it != lifted_.end()) return it->second;
    return lifted_[name] = share(raise_last(c_, *tensor(name)));
  }

  const GctVerdict& gct(const std::string& name) {
    if (auto it = gct_.find(name); it != gct_.end()) return it->second;
    return gct_[name] = check_gct(*tensor(name));
  }

  bool proper(const std::string& name) {
    if (auto it = proper_.find(name); it != proper_.end()) return it->second;
    return proper_[name] = gct(name).all() && check_second_bianchi(c_, *tensor(name));
  }

  std::vector<std::string> rank4() const {
    std::vector<std::string> out;
    for (const auto& name : selected_)
      if (name != "S") out.push_back(name);
    return out;
  }

  bool has(const std::string& name) const {
    return std::find(selected_.begin(), selected_.end(), name) != selected_.end();
  }

  ClassifierVerdict& verdict(std::string name, std::string tensor) {
    ClassifierVerdict v;
    v.name = std::move(name);
    v.tensor = std::move(tensor);
    out_.push_back(std::move(v));
    return out_.back();
  }

  std::string str(const Expr& e) const { return c_.str(e); }

  // Identities for a linear solution space: the particular point satisfies
  // the inhomogeneous identity, each basis vector the homogeneous one.
  template <class Terms>
  void space_identities(ClassifierVerdict& v, const SolutionSpace& space, const std::string& label, Terms&& terms) {
    v.identities.push_back(make_identity(label, terms(space.particular, false)));
    for (std::size_t j = 0; j < space.basis.size(); ++j)
      v.identities.push_back(make_identity(label + " (basis " + std::to_string(j + 1) + ")", terms(space.basis[j], true)));
  }

  void describe_space(ClassifierVerdict& v, const SolutionSpace& space) {
    v.witness = space_witness(c_, space);
    if (!space.unique()) v.notes = "solution family of dimension " + std::to_string(space.dimension());
  }

  // ---------------------------------------------------------------- structure

  void structure() {
    for (const auto& name : rank4()) {
      const Shared t = tensor(name);
      const GctVerdict& gv = gct(name);
      auto& v = verdict("gct", name);
      v.outcome = gv.all() ? Outcome::Holds : Outcome::Fails;
      v.witness = {{"first-bianchi", yes_no(gv.first_bianchi)},
                   {"skew-first-pair", yes_no(gv.skew_first_pair)},
                   {"block-interchange", yes_no(gv.block_interchange)}};
      if (gv.first_bianchi)
        v.identities.push_back(make_identity("first Bianchi", {{Expr(1L), t},
                                                               {Expr(1L), share(permute_slots(*t, {1, 2, 0, 3}))},
                                                               {Expr(1L), share(permute_slots(*t, {2, 0, 1, 3}))}}));
      if (gv.skew_first_pair)
        v.identities.push_back(
            make_identity("skew first pair", {{Expr(1L), t}, {Expr(1L), share(permute_slots(*t, {1, 0, 2, 3}))}}));
      if (gv.block_interchange)
        v.identities.push_back(
            make_identity("block interchange", {{Expr(1L), t}, {Expr(-1L), share(permute_slots(*t, {2, 3, 0, 1}))}}));
      if (!gv.all()) continue;

      const Shared dt = nabla(name);
      auto& b = verdict("second-bianchi", name);
      b.outcome = proper(name) ? Outcome::Holds : Outcome::Fails;
      if (b.outcome == Outcome::Holds)
        b.identities.push_back(make_identity("second Bianchi", {{Expr(1L), dt},
                                                                {Expr(1L), share(permute_slots(*dt, {1, 2, 0, 3, 4}))},
                                                                {Expr(1L), share(permute_slots(*dt, {2, 0, 1, 3, 4}))}}));
    }
    if (has("R")) {
      const Shared rr = r_dot("R");
      const Shared p1 = share(permute_slots(*rr, {2, 3, 4, 5, 0, 1}));
      const Shared p2 = share(permute_slots(*rr, {4, 5, 0, 1, 2, 3}));
      Identity id = make_identity("Walker cyclic sum", {{Expr(1L), rr}, {Expr(1L), p1}, {Expr(1L), p2}});
      auto& v = verdict("walker", "R");
      v.outcome = identity_sum(id).is_zero() ? Outcome::Holds : Outcome::Fails;
      if (v.outcome == Outcome::Holds) v.identities.push_back(std::move(id));
    }
    {
      const Shared dg = share(covariant_derivative(c_, *g_));
      auto& v = verdict("metric-parallel", "g");
      v.outcome = dg->is_zero() ? Outcome::Holds : Outcome::Fails;
      if (v.outcome == Outcome::Holds) v.identities.push_back(make_identity("nabla g", {{Expr(1L), dg}}));
    }
    if (has("S")) {
      const Shared ds = nabla("S");
      const Shared swap = share(permute_slots(*ds, {1, 0, 2}));
      auto& cz = verdict("codazzi", "S");
      cz.outcome = is_codazzi(*ds) ? Outcome::Holds : Outcome::Fails;
      if (ds->is_zero()) cz.notes = "S is parallel";
      if (cz.outcome == Outcome::Holds)
        cz.identities.push_back(make_identity("Codazzi", {{Expr(1L), ds}, {Expr(-1L), swap}}));
      auto& cp = verdict("cyclic-parallel", "S");
      cp.outcome = is_cyclic_parallel(*ds) ? Outcome::Holds : Outcome::Fails;
      if (ds->is_zero()) cp.notes = "S is parallel";
      if (cp.outcome == Outcome::Holds)
        cp.identities.push_back(make_identity("cyclic parallel", {{Expr(1L), ds},
                                                                  {Expr(1L), share(permute_slots(*ds, {1, 2, 0}))},
                                                                  {Expr(1L), share(permute_slots(*ds, {2, 0, 1}))}}));
    }
  }

  // ----------------------------------------------------------- pseudosymmetry

  void semisymmetric() {
    for (const auto& name : selected_) {
      const Shared rt = r_dot(name);
      auto& v = verdict("semisymmetric", name);
      v.outcome = rt->is_zero() ? Outcome::Holds : Outcome::Fails;
      if (v.outcome == Outcome::Holds) v.identities.push_back(make_identity("R.T", {{Expr(1L), rt}}));
    }
  }

  void proportional(ClassifierVerdict& v, const Shared& lhs, const Shared& rhs, const std::string& lhs_label,
                    const std::string& rhs_label) {
    const Proportionality p = solve_proportionality(*lhs, *rhs);
    v.outcome = p.outcome;
    if (p.outcome == Outcome::Holds) {
      v.witness = {{"L", str(p.factor)}};
      if (lhs->is_zero()) v.notes = lhs_label + " = 0";
      v.identities.push_back(
          make_identity(lhs_label + " = L " + rhs_label, {{Expr(1L), lhs}, {-p.factor, rhs}}));
    } else if (p.outcome == Outcome::Degenerate) {
      v.notes = "outside U_Q: " + rhs_label + " = 0";
    } else if (rhs->is_zero()) {
      v.notes = rhs_label + " = 0 but " + lhs_label + " != 0";
    }
  }

  void deszcz(const char* name, const Shared& w, const std::string& w_label) {
    for (const auto& t : selected_) {
      auto& v = verdict(name, t);
      proportional(v, r_dot(t), share(tachibana(*w, *tensor(t))), "R." + t, "Q(" + w_label + "," + t + ")");
    }
  }

  void pseudosymmetry_type() {
    for (const auto& b : rank4()) {
      if (b == "R") continue;
      for (const auto& t : selected_) {
        auto& v = verdict("pseudosymmetry-type", b + "." + t);
        proportional(v, share(dot_action_lifted(*lifted(b), *tensor(t))), share(tachibana(*g_, *tensor(t))),
                     b + "." + t, "Q(g," + t + ")");
      }
    }
  }

  // ------------------------------------------------------------ weak systems

  bool outside_u_t(ClassifierVerdict& v, const std::string& name) {
    if (!nabla(name)->is_zero()) return false;
    v.outcome = Outcome::Degenerate;
    v.notes = "outside U_T: nabla " + name + " = 0";
    return true;
  }

  static std::vector<Tensor> repeat(const Tensor& form, int k) { return std::vector<Tensor>(static_cast<std::size_t>(k), form); }

  /// The type III identity for one solution point; throws if it fails.
  void theorem41(const std::string& name, const Tensor& alpha, const Tensor& pi, const std::string& label,
                 ClassifierVerdict& v) {
    Identity id = theorem41_identity(c_, *tensor(name), alpha, pi);
    id.label = label;
    if (!identity_sum(id).is_zero())
      throw InconsistencyError("theorem41 residual is nonzero for a solution of " + name);
    v.identities.push_back(std::move(id));
  }

  /// Every point particular + basis_j; the identity is not linear in (α, π).
  static std::vector<std::vector<Expr>> sample_points(const SolutionSpace& space) {
    std::vector<std::vector<Expr>> points{space.particular};
    for (const auto& b : space.basis) {
      std::vector<Expr> p = space.particular;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += b[i];
      points.push_back(std::move(p));
    }
    return points;
  }

  void chaki() {
    const int n = c_.n();
    for (const auto& name : selected_) {
      auto& v = verdict("chaki", name);
      if (outside_u_t(v, name)) continue;
      const Shared t = tensor(name);
      const Shared dt = nabla(name);
      const SolutionSpace space = solve_chaki(*t, *dt);
      if (!space.consistent) {
        v.outcome = Outcome::Fails;
        continue;
      }
      v.outcome = Outcome::Holds;
      describe_space(v, space);
      const int k = t->rank();
      space_identities(v, space, "nabla T = chaki(phi)", [&](const std::vector<Expr>& point, bool homogeneous) {
        const Tensor phi = form_block(point, 0, n);
        std::vector<IdentityTerm> terms;
        if (!homogeneous) terms.push_back({Expr(1L), dt});
        terms.push_back({Expr(-1L), share(weak_combination(*t, Expr(2L) * phi, repeat(phi, k)))});
        return terms;
      });

      auto& th = verdict("theorem41", name);
      th.outcome = Outcome::Holds;
      th.notes = "Chaki solutions as type III with alpha = 2 phi, pi = phi";
      for (const auto& point : sample_points(space)) {
        const Tensor phi = form_block(point, 0, n);
        theorem41(name, Expr(2L) * phi, phi, "R.T = -2 dalpha(x)T + Q(J,T)", th);
      }

      if (!space.unique()) continue;
      const Tensor phi = form_block(space.particular, 0, n);
      consequences(name, phi);
    }
  }

  void consequences(const std::string& name, const Tensor& phi) {
    const int n = c_.n();
    const ChakiConsequences cc = chaki_consequences(c_, *tensor(name), phi);
    auto& v = verdict("chaki-consequences", name);
    v.outcome = Outcome::Holds;
    v.witness.emplace_back("phi-closed", yes_no(cc.phi_closed));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (const Expr& h = cc.h.at({i, j}); !h.is_zero())
          v.witness.emplace_back("H_" + std::to_string(i + 1) + std::to_string(j + 1), str(h));
    const Shared h = share(cc.h);
    auto prop = [&](const char* key, const Proportionality& p, const Shared& lhs, const Shared& rhs) {
      if (p.outcome != Outcome::Holds) {
        v.witness.emplace_back(key, outcome_name(p.outcome));
        return;
      }
      v.witness.emplace_back(key, str(p.factor));
      v.identities.push_back(make_identity(key, {{Expr(1L), lhs}, {-p.factor, rhs}}));
    };
    prop("H ~ g", cc.h_vs_g, h, g_);
    prop("H ~ S", cc.h_vs_s, h, s_);
    prop("Q(H,T) ~ Q(g,T)", cc.qh_vs_qg, share(tachibana(cc.h, *tensor(name))),
         share(tachibana(*g_, *tensor(name))));
    if (cc.torse) {
      v.witness.emplace_back("torseforming a", str(cc.torse->a));
      v.witness.emplace_back("torseforming tau", form_string(c_, cc.torse->tau));
      if (cc.torse->b) v.witness.emplace_back("torseforming b", str(*cc.torse->b));
    } else {
      v.witness.emplace_back("torseforming", "false");
    }
    v.witness.emplace_back("torseforming with b = 1", yes_no(cc.torse_b_one));

    if (name != "R") return;
    const Shared r = tensor("R");
    auto factor = [&](const char* label, const Shared& w, const char* l1, const char* l2) {
      auto& d = verdict(label, "R");
      const auto sols = corollary47_decomposition(*r, *w, cc.h);
      d.outcome = sols.empty() ? Outcome::Fails : Outcome::Holds;
      for (std::size_t s = 0; s < sols.size(); ++s) {
        const std::string suffix = sols.size() > 1 ? "#" + std::to_string(s + 1) : "";
        d.witness.emplace_back(l1 + suffix, str(sols[s].l1));
        d.witness.emplace_back(l2 + suffix, str(sols[s].l2));
        const Tensor dd = sols[s].l2 * *w - cc.h;
        d.identities.push_back(make_identity("R = L D^D", {{Expr(1L), r}, {-sols[s].l1, share(kulkarni_nomizu(dd, dd))}}));
      }
    };
    factor("corollary47-D1", g_, "L1", "L2");
    factor("corollary47-D2", s_, "L3", "L4");
  }

  void recurrent() {
    const int n = c_.n();
    for (const auto& name : selected_) {
      auto& v = verdict("recurrent", name);
      if (outside_u_t(v, name)) continue;
      const Shared t = tensor(name);
      const Shared dt = nabla(name);
      const SolutionSpace space = solve_recurrence(*t, *dt);
      if (!space.consistent) {
        v.outcome = Outcome::Fails;
        continue;
      }
      v.outcome = Outcome::Holds;
      describe_space(v, space);
      if (space.unique()) v.witness.emplace_back("pi-closed", yes_no(is_closed(c_, form_block(space.particular, 0, n))));
      space_identities(v, space, "nabla T = pi (x) T", [&](const std::vector<Expr>& point, bool homogeneous) {
        std::vector<IdentityTerm> terms;
        if (!homogeneous) terms.push_back({Expr(1L), dt});
        terms.push_back({Expr(-1L), share(outer(form_block(point, 0, n), *t))});
        return terms;
      });
    }
  }

  void weak() {
    const int n = c_.n();
    for (const auto& name : selected_) {
      auto& v = verdict("weak", name);
      if (outside_u_t(v, name)) continue;
      const Shared t = tensor(name);
      const Shared dt = nabla(name);
      const int k = t->rank();
      const SolutionSpace space = solve_weak_symmetry(*t, *dt);
      if (!space.consistent) {
        v.outcome = Outcome::Fails;
      } else {
        v.outcome = Outcome::Holds;
        v.notes = "solution space of dimension " + std::to_string(space.dimension());
        if (k == 4) {
          assert_skew_pairs_tied(*t, space);
          if (gct(name).all()) {
            const WeakNormalization w = normalize_weak_solution(*t, *dt, space.particular, proper(name));
            v.witness.emplace_back("alpha", form_string(c_, w.alpha));
            v.witness.emplace_back("sigma", form_string(c_, w.sigma));
            if (w.epsilon) v.witness.emplace_back("epsilon", form_string(c_, *w.epsilon));
          }
        }
        if (k == 2) {
          const WeakZReductions r = check_weak_z_reductions(*t, *dt, space);
          v.witness = {{"symmetric", yes_no(r.symmetric)},
                       {"rank above one", yes_no(r.rank_above_one)},
                       {"codazzi", yes_no(r.codazzi)},
                       {"cyclic parallel", yes_no(r.cyclic_parallel)}};
        }
        if (v.witness.empty()) {
          std::vector<std::string> values;
          for (const Expr& e : space.particular) values.push_back(str(e));
          v.witness = group_values(space.unknowns, values);
        }
        const int blocks = static_cast<int>(space.unknowns.size()) / n;
        space_identities(v, space, "nabla T = weak(alpha, pi)", [&](const std::vector<Expr>& point, bool homogeneous) {
          std::vector<Tensor> pis;
          for (int b = 1; b < blocks; ++b) pis.push_back(form_block(point, b, n));
          std::vector<IdentityTerm> terms;
          if (!homogeneous) terms.push_back({Expr(1L), dt});
          terms.push_back({Expr(-1L), share(weak_combination(*t, form_block(point, 0, n), pis))});
          return terms;
        });
      }

      auto& v3 = verdict("weak-type3", name);
      const SolutionSpace s3 = solve_weak_type3(*t, *dt);
      if (!s3.consistent) {
        v3.outcome = Outcome::Fails;
        continue;
      }
      v3.outcome = Outcome::Holds;
      describe_space(v3, s3);
      space_identities(v3, s3, "nabla T = alpha (x) T - pi.T", [&](const std::vector<Expr>& point, bool homogeneous) {
        std::vector<IdentityTerm> terms;
        if (!homogeneous) terms.push_back({Expr(1L), dt});
        terms.push_back(
            {Expr(-1L), share(weak_combination(*t, form_block(point, 0, n), repeat(form_block(point, 1, n), k)))});
        return terms;
      });
      for (const auto& point : sample_points(s3))
        theorem41(name, form_block(point, 0, n), form_block(point, 1, n), "R.T = -2 dalpha(x)T + Q(J,T)", v3);
    }
  }

  void form_recurrence() {
    const int n = c_.n();
    for (const auto& name : rank4()) {
      const Shared t = tensor(name);
      if (t->is_zero()) {
        for (const char* b : {"form-recurrence-b1", "form-recurrence-b2", "form-recurrence-b3"}) {
          auto& v = verdict(b, name);
          v.outcome = Outcome::Degenerate;
          v.notes = name + " = 0";
        }
        continue;
      }
      const Shared dt = nabla(name);
      const FormRecurrence fr = check_form_recurrence(*t, *dt);
      const std::vector<IdentityTerm> cyclic{{Expr(1L), dt},
                                             {Expr(1L), share(permute_slots(*dt, {1, 2, 0, 3, 4}))},
                                             {Expr(1L), share(permute_slots(*dt, {2, 0, 1, 3, 4}))}};

      auto& b1 = verdict("form-recurrence-b1", name);
      b1.outcome = fr.b1 ? Outcome::Holds : Outcome::Fails;
      if (fr.b1) b1.identities.push_back(make_identity("cyclic nabla T", cyclic));

      auto& b2 = verdict("form-recurrence-b2", name);
      b2.outcome = fr.b2 ? Outcome::Holds : Outcome::Fails;
      if (fr.b2) {
        for (std::size_t j = 0; j < fr.b2_space.basis.size(); ++j) {
          const Tensor alpha = form_block(fr.b2_space.basis[j], 0, n);
          b2.witness.emplace_back("alpha" + (fr.b2_space.dimension() > 1 ? "#" + std::to_string(j + 1) : ""),
                                  form_string(c_, alpha));
          b2.identities.push_back(make_identity("cyclic alpha T", {{Expr(1L), share(alpha_cyclic(*t, alpha))}}));
        }
      }

      auto& b3 = verdict("form-recurrence-b3", name);
      b3.outcome = fr.b3 ? Outcome::Holds : Outcome::Fails;
      if (fr.b3_space.consistent && !fr.b3) b3.notes = "only alpha = 0 solves";
      if (fr.b3) {
        describe_space(b3, fr.b3_space);
        space_identities(b3, fr.b3_space, "cyclic nabla T = cyclic alpha T",
                         [&](const std::vector<Expr>& point, bool homogeneous) {
                           std::vector<IdentityTerm> terms;
                           if (!homogeneous) terms = cyclic;
                           terms.push_back({Expr(-1L), share(alpha_cyclic(*t, form_block(point, 0, n)))});
                           return terms;
                         });
      }
    }
    if (!has("S")) return;
    auto& v = verdict("form-recurrence-b4", "S");
    if (s_->is_zero()) {
      v.outcome = Outcome::Degenerate;
      v.notes = "S = 0";
      return;
    }
    const Shared ds = nabla("S");
    const RicciFormRecurrence b4 = check_b4(*s_, *ds);
    v.outcome = b4.holds ? Outcome::Holds : Outcome::Fails;
    if (b4.space.consistent && !b4.holds) v.notes = "only alpha = 0 solves";
    if (!b4.holds) return;
    describe_space(v, b4.space);
    const Shared swap = share(permute_slots(*ds, {1, 0, 2}));
    space_identities(v, b4.space, "d Z = alpha ^ Z", [&](const std::vector<Expr>& point, bool homogeneous) {
      const Tensor az = outer(form_block(point, 0, n), *s_);
      std::vector<IdentityTerm> terms;
      if (!homogeneous) terms = {{Expr(1L), ds}, {Expr(-1L), swap}};
      terms.push_back({Expr(-1L), share(az)});
      terms.push_back({Expr(1L), share(permute_slots(az, {1, 0, 2}))});
      return terms;
    });
  }

  // ----------------------------------------------------------- decompositions

  void combination(const char* name, const std::vector<Shared>& gens, const std::vector<std::string>& names) {
    const Shared r = tensor("R");
    std::vector<Tensor> plain;
    for (const auto& gen : gens) plain.push_back(*gen);
    auto& v = verdict(name, "R");
    if (r->is_zero()) {
      v.outcome = Outcome::Degenerate;
      v.notes = "R = 0";
    } else {
      const SolutionSpace space = solve_linear_combination(*r, plain, names);
      v.outcome = space.consistent ? Outcome::Holds : Outcome::Fails;
      if (space.consistent) {
        describe_space(v, space);
        space_identities(v, space, "R = sum", [&](const std::vector<Expr>& point, bool homogeneous) {
          std::vector<IdentityTerm> terms;
          if (!homogeneous) terms.push_back({Expr(1L), r});
          for (std::size_t i = 0; i < gens.size(); ++i)
            if (!point[i].is_zero()) terms.push_back({-point[i], gens[i]});
          return terms;
        });
      }
    }

    auto& rel = verdict(std::string(name) + "-relations", "R");
    bool all_zero = true;
    for (const auto& gen : gens) all_zero &= gen->is_zero();
    if (all_zero) {
      rel.outcome = Outcome::Degenerate;
      rel.notes = "all generators vanish";
      return;
    }
    const SolutionSpace kernel = linear_relations(plain, names);
    rel.outcome = kernel.dimension() > 0 ? Outcome::Holds : Outcome::Fails;
    for (std::size_t j = 0; j < kernel.basis.size(); ++j) {
      std::vector<std::string> parts;
      std::vector<IdentityTerm> terms;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        parts.push_back(str(kernel.basis[j][i]));
        if (!kernel.basis[j][i].is_zero()) terms.push_back({kernel.basis[j][i], gens[i]});
      }
      rel.witness.emplace_back("relation " + std::to_string(j + 1), tuple_string(parts));
      rel.identities.push_back(make_identity("relation", std::move(terms)));
    }
  }

  void roter() {
    if (c_.n() < 4) return;
    const Tensor& s2 = c_.ricci_square();
    const Shared gg = share(kulkarni_nomizu(*g_, *g_));
    const Shared gs = share(kulkarni_nomizu(*g_, *s_));
    const Shared ss = share(kulkarni_nomizu(*s_, *s_));
    combination("roter", {gg, gs, ss}, {"N1", "N2", "N3"});
    combination("generalized-roter",
                {ss, share(kulkarni_nomizu(*s_, s2)), gs, share(kulkarni_nomizu(*g_, s2)), gg,
                 share(kulkarni_nomizu(s2, s2))},
                {"L1", "L2", "L3", "L4", "L5", "L6"});
  }

  void quasi_einstein() {
    auto& v = verdict("quasi-einstein", "S");
    const auto qe = solve_quasi_einstein(c_);
    if (!qe) {
      v.outcome = Outcome::Fails;
      v.notes = "no witness in the expression field";
      return;
    }
    v.witness = {{"alpha", str(qe->alpha)}, {"beta", str(qe->beta)}};
    if (qe->einstein) {
      v.outcome = Outcome::Degenerate;
      v.notes = "Einstein: S = alpha g";
      v.identities.push_back(make_identity("S = alpha g", {{Expr(1L), s_}, {-qe->alpha, g_}}));
      return;
    }
    v.outcome = Outcome::Holds;
    v.witness.emplace_back("eta", form_string(c_, qe->eta));
    v.notes = qe->unit_eta ? "g(eta, eta) = 1" : "eta normalized by one component";
    v.identities.push_back(make_identity(
        "S = alpha g + beta eta (x) eta",
        {{Expr(1L), s_}, {-qe->alpha, g_}, {-qe->beta, share(outer(qe->eta, qe->eta))}}));
  }

  const Chart& c_;
  std::vector<std::string> selected_;
  Shared g_;
  Shared s_;
  std::map<std::string, Shared> tensors_, nablas_, r_dots_, lifted_;
  std::map<std::string, GctVerdict> gct_;
  std::map<std::string, bool> proper_;
  std::vector<ClassifierVerdict> out_;
};

int generic_rank(const Tensor& z) {
  if (z.is_zero()) return 0;
  for (int r = 1; r < z.dim(); ++r)
    if (rank_at_most(z, r)) return r;
  return z.dim();
}

}  // namespace

Report classify(const Chart& chart, const ClassifyOptions& options) {
  Report report;
  report.chart = chart.name();
  report.coords = chart.symbols().coords;
  report.params = chart.symbols().params;
  report.summary = {{"dim", std::to_string(chart.n())},
                    {"kappa", chart.str(chart.scalar_curvature())},
                    {"rank S", std::to_string(generic_rank(chart.ricci()))}};
  report.verdicts = Pipeline(chart, options).run(options.checks);
  return report;
}

// -------------------------------------------------------------------- oracle

OracleOutcome oracle_check(const Identity& id, const Symbols& sym, int samples, std::uint64_t seed) {
  OracleOutcome out;
  std::vector<std::size_t> flats;
  for (const auto& term : id.terms) {
    if (term.coeff.is_zero()) continue;
    const auto nz = term.tensor->nonzeros();
    flats.insert(flats.end(), nz.begin(), nz.end());
  }
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  const auto atoms = static_cast<std::size_t>(sym.atom_count());
  int hits = 0;
  for (int s = 0; s < samples;) {
    std::vector<mpq_class> x(atoms);
    for (auto& q : x) {
      const unsigned long num = 1 + static_cast<unsigned long>(rng() % 1000000);
      const unsigned long den = 1 + static_cast<unsigned long>(rng() % 1000000);
      q = mpq_class(num, den);
      q.canonicalize();
    }
    std::unordered_map<Expr, mpq_class> cache;
    bool hit = false;
    auto eval = [&](const Expr& e) -> mpq_class {
      if (auto it = cache.find(e); it != cache.end()) return it->second;
      const auto v = evaluate_rational(e, x);
      if (!v) {
        hit = true;
        return mpq_class(0);
      }
      return cache[e] = *v;
    };
    std::vector<mpq_class> coeffs;
    for (const auto& term : id.terms) coeffs.push_back(eval(term.coeff));
    bool disagrees = false;
    for (std::size_t f : flats) {
      mpq_class total = 0;
      for (std::size_t j = 0; j < id.terms.size() && !hit; ++j) {
        const Expr& v = (*id.terms[j].tensor)[f];
        if (v.is_zero() || coeffs[j] == 0) continue;
        total += coeffs[j] * eval(v);
      }
      if (hit) break;
      if (total != 0) {
        disagrees = true;
        break;
      }
    }
    if (hit) {
      if (++hits >= 1000) {
        out.inconclusive = true;
        return out;
      }
      continue;
    }
    if (disagrees) ++out.disagreements;
    ++s;
  }
  return out;
}

OracleSummary oracle_crosscheck(const Report& report, int samples, std::uint64_t seed) {
  OracleSummary sum;
  sum.samples = samples;
  sum.seed = seed;
  const Symbols sym{report.coords, report.params};
  std::uint64_t index = 0;
  for (const auto& v : report.verdicts) {
    if (v.outcome != Outcome::Holds) continue;
    for (const auto& id : v.identities) {
      // splitmix64 step keeps the per-identity streams unrelated
      std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * ++index;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
      const OracleOutcome o = oracle_check(id, sym, samples, z);
      ++sum.identities;
      sum.disagreements += o.disagreements;
      if (o.inconclusive) ++sum.inconclusive;
    }
  }
  return sum;
}

// ----------------------------------------------------------------- rendering

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "chart " << report.chart << "\n";
  std::string coords;
  for (const auto& c : report.coords) coords += (coords.empty() ? "" : " ") + c;
  out << "coords = " << coords << "\n";
  if (!report.params.empty()) {
    std::string params;
    for (const auto& p : report.params) params += (params.empty() ? "" : " ") + p;
    out << "params = " << params << "\n";
  }
  for (const auto& [k, v] : report.summary) out << k << " = " << v << "\n";
  out << "\n";
  for (const auto& v : report.verdicts) {
    out << v.name << " [" << v.tensor << "]: " << outcome_name(v.outcome) << "\n";
    for (const auto& [k, w] : v.witness) out << "    " << k << " = " << w << "\n";
    if (!v.notes.empty()) out << "    note: " << v.notes << "\n";
  }
  const OracleSummary& o = report.oracle;
  out << "\noracle: " << o.identities << " identities, " << o.samples << " samples, seed " << o.seed << ", "
      << o.disagreements << " disagreements, " << o.inconclusive << " inconclusive\n";
  return out.str();
}

std::string render_json(const Report& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["chart"] = report.chart;
  j["coords"] = report.coords;
  j["params"] = report.params;
  ordered_json summary = ordered_json::object();
  for (const auto& [k, v] : report.summary) summary[k] = v;
  j["summary"] = summary;
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : report.verdicts) {
    ordered_json witness = ordered_json::object();
    for (const auto& [k, w] : v.witness) witness[k] = w;
    verdicts.push_back({{"name", v.name},
                        {"tensor", v.tensor},
                        {"outcome", outcome_name(v.outcome)},
                        {"witness", witness},
                        {"notes", v.notes}});
  }
  j["verdicts"] = verdicts;
  const OracleSummary& o = report.oracle;
  j["oracle"] = {{"samples", o.samples},
                 {"seed", o.seed},
                 {"identities", o.identities},
                 {"disagreements", o.disagreements},
                 {"inconclusive", o.inconclusive}};
  return j.dump(2) + "\n";
}

}  // namespace curvkit
