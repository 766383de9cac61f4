#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hu/means.hpp"
#include "hu/module.hpp"
#include "hu/stabilizer.hpp"

namespace hu {

using ZPoint = std::vector<long long>;

/// The box [-radius, radius]^rank in Z^rank, indexed lexicographically with
/// the first coordinate varying slowest. Because the index is affine in the
/// coordinates, index(x + y) = index(x) + offset(y) whenever both points lie
/// in the box.
class ZBox {
 public:
  ZBox() : ZBox(1, 0) {}
  ZBox(std::size_t rank, std::size_t radius);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return size_; }

  bool contains(std::span<const long long> p) const;
  std::size_t index(std::span<const long long> p) const;
  long long offset(std::span<const long long> shift) const;
  ZPoint point(std::size_t index) const;

 private:
  std::size_t rank_;
  std::size_t radius_;
  std::size_t size_;
  std::vector<long long> stride_;
};

/// Values of a function Z^r → E* sampled on a box.
struct ZTable {
  ZBox box;
  VectorTable values;

  const DualVector& at(std::span<const long long> p) const { return values[box.index(p)]; }
};

/// Approximate solution for G = X = Z^r acting by translation, trivially on E.
///
/// H_N(y) is the average of f(x+y) - f(x) over the box of radius N (for every
/// shift in the box of radius S carried by h) and F_N(x) is the average of
/// f(x+z) - H_N(z) over z in the box of radius S, for |x|∞ ≤ S.
struct FoelnerReport {
  std::size_t radius = 0;        // N
  std::size_t shift_radius = 0;  // S
  NormKind norm = NormKind::sup;
  ZTable H;
  ZTable F;
  double delta_min = 0.0;  // over all sampled (x, y) with x, x+y in the window
  double bound_H = 0.0;
  double bound_F = 0.0;
  double equivariance_residual = 0.0;  // over |x|, |y|, |x+y| ≤ S
  // Cocycle defects over pairs with |y|, |z|, |y+z| ≤ S.
  double measured_cocycle_defect = 0.0;
  double certified_cocycle_bound = 0.0;
  double worst_certificate_margin = 0.0;  // min over pairs of certified - measured
  bool defects_certified = true;
  MeanCertificate certificate;  // of the box mean, per tested shift
  double scale = 1.0;
  double tolerance = 0.0;

  /// bound_H ≤ δ + tol, bound_F ≤ 2δ + tol and every measured defect within
  /// its certificate (+ tol).
  bool holds() const noexcept {
    return defects_certified && bound_H <= delta_min + tolerance && bound_F <= 2.0 * delta_min + tolerance;
  }
};

/// Requires f on a window of radius ≥ N + S and S ≤ N; throws WindowTooSmall
/// otherwise.
FoelnerReport stabilize_foelner_z(std::size_t radius, const ZTable& f, const ZTable& h, NormKind norm,
                                  std::optional<double> tolerance_factor = std::nullopt);

/// H(y) = Σ yᵢ H_N(eᵢ), exactly additive. The bound against h is re-measured
/// over the shift window and reported, not asserted.
struct LinearCocycle {
  std::vector<DualVector> generators;
  ZTable H;
  double bound_H = 0.0;
};

LinearCocycle exactify_linear(const ZTable& H_N, const ZTable& h, NormKind norm);

}  // namespace hu
