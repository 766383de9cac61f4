#include "hu/stabilizer.hpp"

#include <algorithm>

#include "hu/error.hpp"

namespace hu {

namespace {

void check_table(const VectorTable& t, std::size_t size, std::size_t dim, const char* name) {
  if (t.size() != size) {
    throw Error(Errc::DomainMismatch, std::string(name) + " has " + std::to_string(t.size()) +
                                          " values, expected " + std::to_string(size));
  }
  for (const DualVector& v : t) {
    if (v.dim() != dim) {
      throw Error(Errc::DimensionMismatch, std::string(name) + " value of dimension " +
                                               std::to_string(v.dim()) + ", module has " +
                                               std::to_string(dim));
    }
    v.require_finite();
  }
}

double sup_norm(const DualModule& module, const VectorTable& t) {
  double worst = 0.0;
  for (const DualVector& v : t) worst = std::max(worst, module.dual_norm(v));
  return worst;
}

}  // namespace

InstanceData::InstanceData(GAction action, DualModule module, VectorTable f, VectorTable h)
    : action_(std::move(action)), module_(std::move(module)), f_(std::move(f)), h_(std::move(h)) {
  if (!(action_.group() == module_.group())) {
    throw Error(Errc::DomainMismatch, "action and module are over different groups");
  }
  check_table(f_, action_.size(), module_.dim(), "f");
  check_table(h_, action_.group().order(), module_.dim(), "h");
}

double InstanceData::scale() const {
  return 1.0 + std::max(sup_norm(module_, f_), sup_norm(module_, h_));
}

double check_hypothesis(const InstanceData& inst) {
  const auto& a = inst.action();
  const auto& mod = inst.module();
  double worst = 0.0;
  for (Point x = 0; x < a.size(); ++x) {
    for (Element y = 0; y < inst.group().order(); ++y) {
      const DualVector r = inst.f()[a.act(x, y)] - mod.act_dual(inst.f()[x], y) - inst.h()[y];
      worst = std::max(worst, mod.dual_norm(r));
    }
  }
  return worst;
}

VectorTable derive_H(const InstanceData& inst, const MeanHandle& m) {
  const auto& a = inst.action();
  const auto& mod = inst.module();
  if (m.domain_size() != a.size() || m.group_order() != inst.group().order() || !m.exact()) {
    throw Error(Errc::DomainMismatch, "mean " + m.describe() + " is not over the instance's points");
  }
  if (!m.right_invariant()) throw Error(Errc::KindMismatch, "H needs a right-invariant mean on X");
  VectorTable H;
  H.reserve(inst.group().order());
  VectorTable integrand(a.size());
  for (Element y = 0; y < inst.group().order(); ++y) {
    for (Point x = 0; x < a.size(); ++x) {
      integrand[x] = inst.f()[a.act(x, y)] - mod.act_dual(inst.f()[x], y);
    }
    H.push_back(mean_vector(m, integrand));
  }
  return H;
}

VectorTable derive_F(const InstanceData& inst, const VectorTable& H, const MeanHandle& n) {
  const auto& a = inst.action();
  const auto& g = inst.group();
  const auto& mod = inst.module();
  check_table(H, g.order(), mod.dim(), "H");
  if (n.domain_size() != g.order() || n.group_order() != g.order() || !n.exact()) {
    throw Error(Errc::DomainMismatch, "mean " + n.describe() + " is not over the group");
  }
  if (!n.left_invariant()) throw Error(Errc::KindMismatch, "F needs a left-invariant mean on G");
  VectorTable F;
  F.reserve(a.size());
  VectorTable integrand(g.order());
  for (Point x = 0; x < a.size(); ++x) {
    for (Element z = 0; z < g.order(); ++z) {
      integrand[z] = mod.act_dual(inst.f()[a.act(x, z)] - H[z], g.inv(z));
    }
    F.push_back(mean_vector(n, integrand));
  }
  return F;
}

Verification verify_solution(const InstanceData& inst, const VectorTable& H, const VectorTable& F) {
  const auto& a = inst.action();
  const auto& g = inst.group();
  const auto& mod = inst.module();
  check_table(H, g.order(), mod.dim(), "H");
  check_table(F, a.size(), mod.dim(), "F");
  Verification v;
  for (Element y = 0; y < g.order(); ++y) {
    for (Element z = 0; z < g.order(); ++z) {
      const DualVector r = H[g.mul(y, z)] - mod.act_dual(H[y], z) - H[z];
      v.cocycle_residual = std::max(v.cocycle_residual, mod.dual_norm(r));
    }
  }
  for (Point x = 0; x < a.size(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      const DualVector r = F[a.act(x, y)] - mod.act_dual(F[x], y) - H[y];
      v.equivariance_residual = std::max(v.equivariance_residual, mod.dual_norm(r));
    }
  }
  for (Element y = 0; y < g.order(); ++y) v.bound_H = std::max(v.bound_H, mod.dual_norm(H[y] - inst.h()[y]));
  for (Point x = 0; x < a.size(); ++x) v.bound_F = std::max(v.bound_F, mod.dual_norm(F[x] - inst.f()[x]));
  return v;
}

Guarantees judge(const Verification& v, double delta_min, double tolerance) {
  Guarantees ok;
  ok.cocycle = v.cocycle_residual <= tolerance;
  ok.equivariance = v.equivariance_residual <= tolerance;
  ok.bound_H = v.bound_H <= delta_min + tolerance;
  ok.bound_F = v.bound_F <= 2.0 * delta_min + tolerance;
  return ok;
}

MeanHandle mean_on_points(const InstanceData& inst, const MeanSpec& spec) {
  switch (spec.kind) {
    case MeanKind::uniform_finite: return uniform_mean(inst.action());
    case MeanKind::pullback: return pullback_mean(inst.action(), spec.x0);
    case MeanKind::foelner_box: break;
  }
  throw Error(Errc::KindMismatch, "box means apply to Z^r data, not to a finite instance");
}

MeanHandle mean_on_group(const InstanceData& inst, const MeanSpec& spec) {
  if (spec.kind != MeanKind::uniform_finite) {
    throw Error(Errc::KindMismatch, "the mean on G must be 'uniform' (left-invariant and module-equivariant)");
  }
  return uniform_mean(inst.group());
}

StabilizationReport stabilize(const InstanceData& inst, const MeanSpec& m_spec, const MeanSpec& n_spec,
                              std::optional<double> tolerance_factor) {
  const MeanHandle m = mean_on_points(inst, m_spec);
  const MeanHandle n = mean_on_group(inst, n_spec);

  StabilizationReport r;
  r.mean_m = m_spec;
  r.mean_n = n_spec;
  r.orbit_is_proper = m.orbit_is_proper();
  r.delta_min = check_hypothesis(inst);
  r.H = derive_H(inst, m);
  r.F = derive_F(inst, r.H, n);
  r.measured = verify_solution(inst, r.H, r.F);
  r.scale = inst.scale();
  r.tolerance = tolerance_factor.value_or(kDefaultToleranceFactor) * r.scale;
  r.guarantees = judge(r.measured, r.delta_min, r.tolerance);

  r.certificate_m = certify(m);
  r.certificate_n = certify(n);
  // Measured on f for m, and on z ↦ f(0·z) - H(z) for n.
  r.certificate_m.module_equivariance_residual = module_equivariance_check(m, inst.module(), inst.f());
  VectorTable shifted(inst.group().order());
  for (Element z = 0; z < inst.group().order(); ++z) shifted[z] = inst.f()[inst.action().act(0, z)] - r.H[z];
  r.certificate_n.module_equivariance_residual = module_equivariance_check(n, inst.module(), shifted);
  return r;
}

}  // namespace hu
