#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hu {

/// Index of a group element. The identity is always 0.
using Element = std::size_t;

inline constexpr std::size_t kMaxGroupOrder = 120;

/// A finite group given by a validated multiplication table.
///
/// `mul(i, j)` is the product i∘j. Construction checks that index 0 is a
/// two-sided identity, that every row and column is a permutation (so inverses
/// exist) and associativity over all triples. Instances are immutable.
class Group {
 public:
  using Table = std::vector<std::vector<Element>>;

  /// Throws hu::Error (NoIdentityAtZero, NotInvertible, NotAssociative,
  /// SizeLimitExceeded, Parse) naming the witnessing pair or triple.
  static Group from_table(const Table& table, std::vector<std::string> names = {});

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  Element inv(Element a) const noexcept { return inverse_[a]; }
  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  Table table() const;

  /// Smallest subgroup containing the generators (always contains 0).
  std::vector<Element> closure(const std::vector<Element>& generators) const;

  bool operator==(const Group& other) const noexcept {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  Group() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;  // row-major order_ x order_
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
};

// Builtin corpus. Element orderings are deterministic with the identity first.

/// Z/n with element k standing for k mod n.
Group cyclic(std::size_t n);

/// Symmetries of the regular n-gon, order 2n. Index k < n is r^k and index
/// n + k is s r^k, with r^a s = s r^-a.
Group dihedral(std::size_t n);

/// S_n for n <= 5, permutations of {0..n-1} in lexicographic one-line order.
/// The product p∘q applies p first and then q, so that x·(p∘q) = (x·p)·q for
/// the natural right action x·p = p(x).
Group symmetric(std::size_t n);

/// A × B with (a, b) stored at index a·|B| + b.
Group direct_product(const Group& a, const Group& b);

/// Parses "cyclic:6", "dihedral:4", "symmetric:3", "product:cyclic:2,cyclic:3"
/// (the product form folds left over any number of comma-separated factors).
Group builtin_group(std::string_view spec);

/// True when `spec` names a builtin group (used to tell specs from file paths).
bool is_builtin_group_spec(std::string_view spec);

/// The homomorphism onto {+1, -1} whose kernel is an index-2 subgroup, or an
/// empty vector when the group has no such quotient. The kernel is grown from
/// the subgroup generated by all squares by adjoining the smallest missing
/// element, so the choice is deterministic.
std::vector<int> sign_character(const Group& g);

}  // namespace hu
