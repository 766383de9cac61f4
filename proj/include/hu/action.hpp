#pragma once

#include <cstddef>
#include <vector>

#include "hu/group.hpp"

namespace hu {

/// Index of a point of a finite right G-set.
using Point = std::size_t;

inline constexpr std::size_t kMaxPoints = 1000;

/// A right action of a finite group on the points {0..size-1}; `act(x, y)` is x·y.
class GAction {
 public:
  using Table = std::vector<std::vector<Point>>;

  /// Verifies x·e = x and (x·y)·z = x·(y∘z) exhaustively. Throws NotAnAction
  /// with the witness, SizeLimitExceeded, or Parse for malformed tables.
  static GAction from_table(Group group, const Table& act);

  const Group& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return size_; }
  Point act(Point x, Element y) const noexcept { return act_[x * group_.order() + y]; }

  Table table() const;
  bool is_transitive() const;

 private:
  GAction() = default;
  friend GAction right_action_self(const Group& g);
  friend GAction trivial_action(const Group& g, std::size_t points);

  Group group_ = cyclic(1);
  std::size_t size_ = 0;
  std::vector<Point> act_;  // row-major size_ x |G|
};

/// G acting on itself by right multiplication: free and transitive.
GAction right_action_self(const Group& g);

/// act(x, y) = x on `points` points.
GAction trivial_action(const Group& g, std::size_t points);

/// Points of `b` are appended after those of `a`; both must share the group.
GAction disjoint_union(const GAction& a, const GAction& b);

/// {x0·y : y ∈ G}, ascending, without duplicates.
std::vector<Point> orbit(const GAction& action, Point x0);

/// The right cosets Ly of a subgroup L, acted on by (Ly, y') ↦ Lyy'.
///
/// Cosets are numbered in increasing order of their representative, which is
/// the smallest element index in the coset.
class CosetSpace {
 public:
  const GAction& action() const noexcept { return action_; }
  const std::vector<Element>& subgroup() const noexcept { return subgroup_; }
  const std::vector<Element>& representatives() const noexcept { return reps_; }
  std::size_t coset_count() const noexcept { return reps_.size(); }

  /// The canonical projection y ↦ Ly.
  Point project(Element g) const noexcept { return coset_of_[g]; }

 private:
  friend CosetSpace coset_space(const Group& g, const std::vector<Element>& generators);
  explicit CosetSpace(GAction action) : action_(std::move(action)) {}

  GAction action_;
  std::vector<Element> subgroup_;
  std::vector<Element> reps_;
  std::vector<Point> coset_of_;
};

/// L is the closure of `generators`; g ~ g' iff g'∘g⁻¹ ∈ L.
CosetSpace coset_space(const Group& g, const std::vector<Element>& generators);

}  // namespace hu
