#pragma once

#include <optional>
#include <vector>

#include "hu/action.hpp"
#include "hu/means.hpp"
#include "hu/module.hpp"

namespace hu {

using VectorTable = std::vector<DualVector>;

/// Approximate data for F(x·y) = F(x)·y + H(y): f on the points of the
/// action, h on the group, values in the dual module.
class InstanceData {
 public:
  /// Throws DomainMismatch if the module and action disagree on the group or
  /// a table has the wrong length, DimensionMismatch for wrong value
  /// dimensions and NonFinite for NaN/Inf entries.
  InstanceData(GAction action, DualModule module, VectorTable f, VectorTable h);

  const GAction& action() const noexcept { return action_; }
  const DualModule& module() const noexcept { return module_; }
  const Group& group() const noexcept { return action_.group(); }
  const VectorTable& f() const noexcept { return f_; }
  const VectorTable& h() const noexcept { return h_; }

  /// 1 + max(‖f‖∞, ‖h‖∞) in the dual norm.
  double scale() const;

 private:
  GAction action_;
  DualModule module_;
  VectorTable f_;
  VectorTable h_;
};

/// Identity checks use tolerance factor · scale.
inline constexpr double kDefaultToleranceFactor = 1e-9;

/// max over (x, y) of ‖f(x·y) - f(x)·y - h(y)‖*; zero iff (f, h) is an exact solution.
double check_hypothesis(const InstanceData& inst);

/// H(y) = m(x ↦ f(x·y) - f(x)·y) for a right-invariant mean on X.
VectorTable derive_H(const InstanceData& inst, const MeanHandle& m);

/// F(x) = n(z ↦ (f(x·z) - H(z))·z⁻¹) for a left-invariant mean on G.
VectorTable derive_F(const InstanceData& inst, const VectorTable& H, const MeanHandle& n);

struct Verification {
  double cocycle_residual = 0.0;      // max ‖H(yz) - H(y)·z - H(z)‖*
  double equivariance_residual = 0.0; // max ‖F(xy) - F(x)·y - H(y)‖*
  double bound_H = 0.0;               // max ‖H(y) - h(y)‖*
  double bound_F = 0.0;               // max ‖F(x) - f(x)‖*
};

/// Exhaustive over G×G and X×G, independent of how H and F were produced.
Verification verify_solution(const InstanceData& inst, const VectorTable& H, const VectorTable& F);

struct Guarantees {
  bool cocycle = false;
  bool equivariance = false;
  bool bound_H = false;
  bool bound_F = false;

  bool all() const noexcept { return cocycle && equivariance && bound_H && bound_F; }
};

/// Compares measured quantities against the stability conclusion:
/// residuals ≤ tol, bound_H ≤ δ + tol, bound_F ≤ 2δ + tol.
Guarantees judge(const Verification& v, double delta_min, double tolerance);

struct StabilizationReport {
  VectorTable H;
  VectorTable F;
  double delta_min = 0.0;
  Verification measured;
  double scale = 1.0;
  double tolerance = 0.0;
  Guarantees guarantees;
  MeanSpec mean_m;
  MeanSpec mean_n;
  MeanCertificate certificate_m;
  MeanCertificate certificate_n;
  bool orbit_is_proper = false;
};

/// Materializes a mean spec for the instance: m lives on X, n on G.
MeanHandle mean_on_points(const InstanceData& inst, const MeanSpec& spec);
MeanHandle mean_on_group(const InstanceData& inst, const MeanSpec& spec);

/// check_hypothesis, derive_H, derive_F and verify_solution in one pass.
/// Box means are rejected with KindMismatch (they belong to the Z^r path).
StabilizationReport stabilize(const InstanceData& inst, const MeanSpec& m_spec = {},
                              const MeanSpec& n_spec = {},
                              std::optional<double> tolerance_factor = std::nullopt);

}  // namespace hu
