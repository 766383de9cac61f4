#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hu/error.hpp"
#include "hu/module.hpp"
#include "oracles.hpp"

using namespace hu;

namespace {

Errc build_error(NormedSpace space, const Group& g, std::vector<Matrix> ms) {
  try {
    DualModule::build(space, g, std::move(ms));
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Parse;
}

// Brute force: sup over a fine grid of the unit sphere.
double dual_norm_by_sampling(NormKind kind, const DualVector& a) {
  double best = 0.0;
  const int steps = 400;
  for (int i = 0; i <= steps; ++i) {
    const double t = 2.0 * M_PI * i / steps;
    double x = std::cos(t), y = std::sin(t);
    double n = kind == NormKind::sup ? std::max(std::abs(x), std::abs(y))
             : kind == NormKind::one ? std::abs(x) + std::abs(y)
                                     : std::hypot(x, y);
    best = std::max(best, std::abs(a[0] * x / n + a[1] * y / n));
  }
  return best;
}

std::vector<std::pair<std::string, Group>> module_corpus() {
  std::vector<std::pair<std::string, Group>> out;
  for (const char* g : {"cyclic:2", "cyclic:4", "symmetric:3", "dihedral:4"}) {
    for (const char* m : {"trivial:d=3,norm=one", "sign:d=2,norm=sup", "swap:d=2,norm=two",
                          "perm:d=2,norm=sup", "signperm:d=2,norm=one"}) {
      out.emplace_back(m, builtin_group(g));
    }
  }
  out.emplace_back("perm:d=3,norm=two", symmetric(3));
  out.emplace_back("perm:d=4,norm=one", dihedral(4));
  return out;
}

}  // namespace

TEST_CASE("dual norms") {
  CHECK(dual_norm(NormKind::sup, {1.0, -2.0}) == 3.0);
  CHECK(dual_norm(NormKind::one, {1.0, -2.0}) == 2.0);
  CHECK(dual_norm(NormKind::two, {3.0, 4.0}) == 5.0);
  CHECK(dual_norm(NormKind::sup, {0.0, 0.0}) == 0.0);
  CHECK(dual_norm(NormKind::two, {0.0, 0.0, 0.0}) == 0.0);
  CHECK(dual_kind(NormKind::one) == NormKind::sup);
  CHECK(dual_kind(NormKind::two) == NormKind::two);
}

TEST_CASE("dual norms agree with sampling the unit sphere") {
  oracle::TestRng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const DualVector a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    for (NormKind k : {NormKind::one, NormKind::two, NormKind::sup}) {
      const double exact = dual_norm(k, a);
      const double sampled = dual_norm_by_sampling(k, a);
      CHECK(sampled <= exact + 1e-12);
      CHECK(sampled >= exact * (1 - 2e-3));
    }
  }
}

TEST_CASE("module validation") {
  const Group z2 = cyclic(2);
  const NormedSpace line{1, NormKind::sup};
  CHECK_NOTHROW(DualModule::build(line, z2, {Matrix{1, {1}}, Matrix{1, {-1}}}));
  CHECK(build_error(line, z2, {Matrix{1, {1}}, Matrix{1, {2}}}) == Errc::NotIsometric);
  CHECK(build_error(line, z2, {Matrix{1, {-1}}, Matrix{1, {1}}}) == Errc::IdentityNotIdentity);
  CHECK(build_error({2, NormKind::sup}, cyclic(3),
                    {Matrix::identity(2), Matrix{2, {0, 1, 1, 0}}, Matrix{2, {0, 1, 1, 0}}}) ==
        Errc::NotHomomorphism);
  CHECK(build_error(line, z2, {Matrix{1, {1}}}) == Errc::DomainMismatch);
  CHECK(build_error(line, z2, {Matrix{1, {1}}, Matrix{2, {1, 0, 0, 1}}}) == Errc::DimensionMismatch);

  // Rotation by a third of a turn is an isometry for the two-norm only.
  const double c = std::cos(2 * M_PI / 3), s = std::sin(2 * M_PI / 3);
  const Matrix r1{2, {c, -s, s, c}};
  const Matrix r2 = r1 * r1;
  CHECK_NOTHROW(DualModule::build({2, NormKind::two}, cyclic(3), {Matrix::identity(2), r1, r2}));
  CHECK(build_error({2, NormKind::sup}, cyclic(3), {Matrix::identity(2), r1, r2}) == Errc::NotIsometric);
}

TEST_CASE("act_dual") {
  const DualModule sign = sign_module({1, NormKind::sup}, cyclic(2));
  CHECK(sign.act_dual({1.1}, 1) == DualVector{-1.1});
  CHECK(sign.act_dual({1.1}, 0) == DualVector{1.1});

  const DualModule sw = swap_module({2, NormKind::sup}, cyclic(2));
  const DualVector a{1.5, -0.25};
  const DualVector ay = sw.act_dual(a, 1);
  CHECK(ay == DualVector{-0.25, 1.5});
  // ⟨α·y, ξ⟩ = ⟨α, y·ξ⟩ on a grid of ξ.
  for (double x0 = -1; x0 <= 1; x0 += 0.25) {
    for (double x1 = -1; x1 <= 1; x1 += 0.25) {
      const std::vector<double> xi{x0, x1}, yxi{x1, x0};
      CHECK(pairing(ay, xi) == pairing(a, yxi));
    }
  }
}

TEST_CASE("builtin modules") {
  const Group c3 = cyclic(3);
  CHECK_THROWS_AS(builtin_module("sign:d=1,norm=sup", c3), Error);
  CHECK_THROWS_AS(builtin_module("swap:d=3,norm=sup", cyclic(2)), Error);
  CHECK_THROWS_AS(builtin_module("perm:d=4,norm=sup", symmetric(3)), Error);
  CHECK_THROWS_AS(builtin_module("rotate:d=2", c3), Error);
  const DualModule t = builtin_module("trivial", c3);
  CHECK(t.dim() == 1);
  CHECK(t.norm() == NormKind::sup);
  CHECK(t.is_trivial());
  CHECK_FALSE(builtin_module("perm:d=3,norm=one", c3).is_trivial());
  CHECK(find_transitive_action(symmetric(3), 3)->size() == 3);
  CHECK_FALSE(find_transitive_action(symmetric(3), 4).has_value());
}

TEST_CASE("pairing identity, dual isometry and the right-action law") {
  oracle::TestRng rng(11);
  for (const auto& [spec, g] : module_corpus()) {
    CAPTURE(spec);
    const DualModule m = builtin_module(spec, g);
    for (int trial = 0; trial < 5; ++trial) {
      DualVector a(m.dim());
      std::vector<double> xi(m.dim());
      for (std::size_t i = 0; i < m.dim(); ++i) {
        a[i] = rng.uniform(-2, 2);
        xi[i] = rng.uniform(-2, 2);
      }
      for (Element y = 0; y < g.order(); ++y) {
        const Matrix& M = m.matrix(y);
        std::vector<double> yxi(m.dim(), 0.0);
        for (std::size_t i = 0; i < m.dim(); ++i) {
          for (std::size_t j = 0; j < m.dim(); ++j) yxi[i] += M.at(i, j) * xi[j];
        }
        const DualVector ay = m.act_dual(a, y);
        CHECK(std::abs(pairing(ay, xi) - pairing(a, yxi)) <= 1e-12);
        CHECK(m.dual_norm(ay) == doctest::Approx(m.dual_norm(a)).epsilon(1e-14));
        for (Element z = 0; z < g.order(); ++z) {
          CHECK(m.act_dual(ay, z) == m.act_dual(a, g.mul(y, z)));
        }
      }
    }
  }
}
