#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hu/action.hpp"
#include "hu/group.hpp"

namespace oracle {

inline std::size_t find_inverse(const hu::Group& g, hu::Element a) {
  for (hu::Element b = 0; b < g.order(); ++b) {
    if (g.mul(a, b) == 0) return b;
  }
  return g.order();
}

/// Exhaustive search over bijections fixing the identity.
inline bool isomorphic(const hu::Group& a, const hu::Group& b) {
  if (a.order() != b.order()) return false;
  std::vector<std::size_t> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = perm[0] == 0;
    for (std::size_t i = 0; ok && i < a.order(); ++i) {
      for (std::size_t j = 0; ok && j < a.order(); ++j) {
        ok = perm[a.mul(i, j)] == b.mul(perm[i], perm[j]);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

/// Classes of g ~ g' iff g'∘g⁻¹ ∈ L, found by pairwise comparison.
inline std::vector<std::set<std::size_t>> cosets(const hu::Group& g, const std::vector<std::size_t>& subgroup) {
  const std::set<std::size_t> L(subgroup.begin(), subgroup.end());
  std::vector<std::set<std::size_t>> classes;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::set<std::size_t> cls;
    for (std::size_t b = 0; b < g.order(); ++b) {
      if (L.count(g.mul(b, find_inverse(g, a)))) {
        cls.insert(b);
        seen[b] = true;
      }
    }
    classes.push_back(cls);
  }
  return classes;
}

/// Orbit closure: keep applying every group element until nothing new appears.
inline std::set<std::size_t> orbit_closure(const hu::GAction& a, std::size_t x0) {
  std::set<std::size_t> seen{x0};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t x : std::vector<std::size_t>(seen.begin(), seen.end())) {
      for (std::size_t y = 0; y < a.group().order(); ++y) grew |= seen.insert(a.act(x, y)).second;
    }
  }
  return seen;
}

/// Parity of a permutation written in one-line notation.
inline int parity_sign(const std::string& one_line) {
  int inversions = 0;
  for (std::size_t i = 0; i < one_line.size(); ++i) {
    for (std::size_t j = i + 1; j < one_line.size(); ++j) inversions += one_line[i] > one_line[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Small deterministic generator for test data (xorshift64*).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : s_(seed * 2654435761u + 1) {}
  std::uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1DULL;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t s_;
};

}  // namespace oracle
