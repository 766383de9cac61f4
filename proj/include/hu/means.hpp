#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hu/action.hpp"
#include "hu/group.hpp"
#include "hu/module.hpp"

namespace hu {

enum class MeanKind { uniform_finite, pullback, foelner_box };

/// Which translations the mean is invariant under. Uniform means on a finite
/// group and box means on Z^r (abelian) are both.
enum class Side { right_invariant, left_invariant, two_sided };

/// An invariant-mean evaluator over a totally tabulated domain.
///
/// - uniform_finite: the counting average over G, or over a finite right
///   G-set X (invariant because each y permutes X).
/// - pullback: m'(f) = m(y ↦ f(x0·y)) for the uniform m on G, evaluated as
///   the average over the multiset {x0·y : y ∈ G}. Points outside the orbit of
///   x0 are ignored.
/// - foelner_box: the average over [-N, N]^r in Z^r, with the domain stored in
///   lexicographic coordinate order (first coordinate slowest).
///
/// Summation runs in ascending sample order with compensated summation, so
/// every evaluation is bit-reproducible.
class MeanHandle {
 public:
  MeanKind kind() const noexcept { return kind_; }
  Side side() const noexcept { return side_; }
  std::size_t domain_size() const noexcept { return domain_size_; }
  std::size_t group_order() const noexcept { return group_order_; }

  /// pullback only
  Point base_point() const noexcept { return base_point_; }
  bool orbit_is_proper() const noexcept { return orbit_is_proper_; }

  /// foelner_box only
  std::size_t rank() const noexcept { return rank_; }
  std::size_t radius() const noexcept { return radius_; }

  bool exact() const noexcept { return kind_ != MeanKind::foelner_box; }
  bool right_invariant() const noexcept { return side_ != Side::left_invariant; }
  bool left_invariant() const noexcept { return side_ != Side::right_invariant; }

  std::string describe() const;

 private:
  friend MeanHandle uniform_mean(const Group& g);
  friend MeanHandle uniform_mean(const GAction& action);
  friend MeanHandle pullback_mean(const GAction& action, Point x0);
  friend MeanHandle foelner_box_mean(std::size_t rank, std::size_t radius);
  friend double mean_scalar(const MeanHandle& m, std::span<const double> phi);

  MeanKind kind_ = MeanKind::uniform_finite;
  Side side_ = Side::two_sided;
  std::size_t domain_size_ = 0;
  std::size_t group_order_ = 0;
  Point base_point_ = 0;
  bool orbit_is_proper_ = false;
  std::size_t rank_ = 0;
  std::size_t radius_ = 0;
  std::vector<Point> samples_;  // pullback: x0·y for y = 0..|G|-1
};

MeanHandle uniform_mean(const Group& g);
MeanHandle uniform_mean(const GAction& action);
MeanHandle pullback_mean(const GAction& action, Point x0);
MeanHandle foelner_box_mean(std::size_t rank, std::size_t radius);

/// Throws DomainMismatch when phi does not cover the domain.
double mean_scalar(const MeanHandle& m, std::span<const double> phi);

/// Coordinatewise mean (equal to m(x ↦ ⟨f(x), ξ⟩) paired with ξ).
DualVector mean_vector(const MeanHandle& m, std::span<const DualVector> f);

/// 1 - Π_i max(0, 2N+1-2|y_i|)/(2N+1). For every bounded φ on Z^r,
/// |m(R_y φ) - m(φ)| <= bound · 2 · sup|φ|. Throws KindMismatch for
/// non-box handles.
double foelner_defect_bound(const MeanHandle& m, std::span<const long long> shift);

/// max over y of ‖m(x ↦ f(x)·y) - m(f)·y‖*.
double module_equivariance_check(const MeanHandle& m, const DualModule& module,
                                 std::span<const DualVector> f);

struct MeanCertificate {
  double normalization_residual = 0.0;
  std::vector<double> invariance_defects;
  double module_equivariance_residual = 0.0;
};

/// Exact means report measured normalization (always 0 here) and zero
/// invariance defects for every tested shift. Box means report the closed
/// form defect bound per shift in `shifts` (each of length rank).
MeanCertificate certify(const MeanHandle& m, const std::vector<std::vector<long long>>& shifts = {});

/// Parses a mean spec string: "uniform", "pullback:x0=3", "foelner:r=1,N=100".
struct MeanSpec {
  MeanKind kind = MeanKind::uniform_finite;
  Point x0 = 0;
  std::size_t rank = 1;
  std::size_t radius = 0;

  static MeanSpec parse(std::string_view text);
  std::string str() const;
};

/// The number of points of [-N, N]^r, throwing SizeLimitExceeded past 10^8.
std::size_t box_size(std::size_t rank, std::size_t radius);

}  // namespace hu
