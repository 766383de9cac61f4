#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hu/action.hpp"
#include "hu/group.hpp"

namespace hu {

/// Norm carried by E. Functionals in E* are measured with the Hölder
/// conjugate: one ↔ sup, two ↔ two.
enum class NormKind { one, two, sup };

NormKind dual_kind(NormKind kind) noexcept;
std::string_view norm_name(NormKind kind) noexcept;
NormKind parse_norm(std::string_view name);

struct NormedSpace {
  std::size_t dim = 1;
  NormKind norm = NormKind::sup;
};

/// A functional on E in standard coordinates, ⟨α, ξ⟩ = Σ αᵢ ξᵢ.
class DualVector {
 public:
  DualVector() = default;
  explicit DualVector(std::size_t dim) : coords_(dim, 0.0) {}
  explicit DualVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  DualVector(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  DualVector& operator+=(const DualVector& other);
  DualVector& operator-=(const DualVector& other);
  DualVector& operator*=(double s);

  friend DualVector operator+(DualVector a, const DualVector& b) { return a += b; }
  friend DualVector operator-(DualVector a, const DualVector& b) { return a -= b; }
  friend DualVector operator*(double s, DualVector a) { return a *= s; }
  friend bool operator==(const DualVector&, const DualVector&) = default;

  /// Throws NonFinite on NaN or Inf entries.
  void require_finite() const;

 private:
  std::vector<double> coords_;
};

double pairing(const DualVector& alpha, std::span<const double> xi);

/// Norm of α as a functional on E with norm `space_norm`.
double dual_norm(NormKind space_norm, const DualVector& alpha);

/// Square matrix stored row-major; (M ξ)_i = Σ_j M[i*d + j] ξ_j.
struct Matrix {
  std::size_t dim = 0;
  std::vector<double> entries;

  static Matrix identity(std::size_t d);
  double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// True for a matrix with exactly one ±1 per row and column and zeros elsewhere.
bool is_signed_permutation(const Matrix& m);

/// E with an isometric left action y ↦ matrices[y], viewed through the dual
/// right action ⟨α·y, ξ⟩ = ⟨α, y·ξ⟩ on E*.
///
/// E is finite-dimensional, so E* is just coordinates and the transpose of
/// matrices[y] realizes α·y.
class DualModule {
 public:
  static constexpr double kOrthogonalTolerance = 1e-12;

  /// Checks matrices[0] = I, matrices[y∘z] = matrices[y]·matrices[z] and the
  /// isometry condition for the norm: signed permutations for one/sup, signed
  /// permutations or MᵀM = I within 1e-12 for two.
  static DualModule build(NormedSpace space, Group group, std::vector<Matrix> matrices);
  static DualModule trivial(NormedSpace space, Group group);

  const NormedSpace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim; }
  NormKind norm() const noexcept { return space_.norm; }
  const Group& group() const noexcept { return group_; }
  const Matrix& matrix(Element y) const { return matrices_[y]; }
  bool is_trivial() const noexcept { return trivial_; }

  /// α·y, the transpose of matrices[y] applied to α.
  DualVector act_dual(const DualVector& alpha, Element y) const;
  double dual_norm(const DualVector& alpha) const;

 private:
  DualModule() = default;

  NormedSpace space_;
  Group group_ = cyclic(1);
  std::vector<Matrix> matrices_;
  bool trivial_ = true;
};

/// Module constructors used by the generator and the CLI. All produce signed
/// permutation matrices, so products and dual actions are exact.
///
///   trivial   every y acts as I
///   sign      every coordinate multiplied by the sign character
///   swap      coordinate pairs (2i, 2i+1) swapped where the character is -1
///   perm      permutation of d coordinates through a transitive action of
///             size d (the coset space of a subgroup of index d)
///   signperm  perm twisted by the sign character
///
/// Throws InconsistentSpec when the group lacks the needed character or a
/// subgroup of index d.
DualModule sign_module(NormedSpace space, const Group& g);
DualModule swap_module(NormedSpace space, const Group& g);
DualModule permutation_module(NormedSpace space, const GAction& action, bool twist_by_sign);

/// Parses "<kind>:d=<d>,norm=<one|two|sup>" with kind as above; d defaults to
/// 1 and norm to sup.
DualModule builtin_module(std::string_view spec, const Group& g);

/// Smallest-index transitive action of exact size d found among coset spaces
/// of cyclic subgroups and subgroups generated by two elements.
std::optional<GAction> find_transitive_action(const Group& g, std::size_t d);

}  // namespace hu
