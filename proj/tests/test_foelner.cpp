#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "hu/error.hpp"
#include "hu/foelner.hpp"
#include "hu/lab.hpp"
#include "oracles.hpp"

using namespace hu;

namespace {

ZTable tabulate(std::size_t rank, std::size_t radius, const std::function<double(const ZPoint&)>& fn) {
  ZTable t{ZBox(rank, radius), {}};
  for (std::size_t i = 0; i < t.box.size(); ++i) t.values.push_back(DualVector{fn(t.box.point(i))});
  return t;
}

double noise(long long x) {
  // Fixed ±0.1 pattern that does not average out quickly.
  std::uint64_t h = static_cast<std::uint64_t>(x + 100000) * 0x9E3779B97F4A7C15ULL;
  h ^= h >> 29;
  return (h & 1) ? 0.1 : -0.1;
}

}  // namespace

TEST_CASE("box indexing") {
  const ZBox b(2, 3);
  CHECK(b.size() == 49);
  CHECK(b.point(0) == ZPoint{-3, -3});
  CHECK(b.point(1) == ZPoint{-3, -2});
  CHECK(b.point(48) == ZPoint{3, 3});
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index(b.point(i)) == i);
  const ZPoint p{1, -2}, s{-1, 2};
  CHECK(b.index(ZPoint{0, 0}) == b.index(p) + static_cast<std::size_t>(b.offset(s)));
  CHECK_FALSE(b.contains(ZPoint{4, 0}));
  CHECK_THROWS_AS(b.index(ZPoint{4, 0}), Error);
}

TEST_CASE("linear data is stabilized exactly") {
  const std::size_t N = 10, S = 3;
  const ZTable f = tabulate(1, N + S, [](const ZPoint& x) { return 2.0 * x[0]; });
  const ZTable h = tabulate(1, S, [](const ZPoint& y) { return 2.0 * y[0]; });
  const FoelnerReport r = stabilize_foelner_z(N, f, h, NormKind::sup);
  CHECK(r.delta_min == 0.0);
  for (std::size_t s = 0; s < r.H.box.size(); ++s) CHECK(r.H.values[s][0] == 2.0 * r.H.box.point(s)[0]);
  CHECK(r.bound_H == 0.0);
  CHECK(r.bound_F == 0.0);
  CHECK(r.measured_cocycle_defect == 0.0);
  CHECK(r.holds());
}

TEST_CASE("noisy linear data in rank one") {
  const std::size_t N = 100, S = 3;
  const ZTable f = tabulate(1, N + S, [](const ZPoint& x) { return 2.0 * x[0] + noise(x[0]); });
  const ZTable h = tabulate(1, S, [](const ZPoint& y) { return 2.0 * y[0]; });
  const FoelnerReport r = stabilize_foelner_z(N, f, h, NormKind::sup);
  CHECK(r.delta_min <= 0.2 + 1e-12);
  CHECK(r.bound_H <= 0.2 + 1e-12);
  CHECK(r.bound_F <= 2 * r.delta_min + r.tolerance);
  CHECK(r.defects_certified);
  CHECK(r.measured_cocycle_defect <= r.certified_cocycle_bound + r.tolerance);
  CHECK(r.holds());

  // H_N(y) by direct summation over [-N, N].
  for (long long y = -3; y <= 3; ++y) {
    double s = 0;
    for (long long x = -100; x <= 100; ++x) s += (2.0 * (x + y) + noise(x + y)) - (2.0 * x + noise(x));
    CHECK(r.H.at(ZPoint{y})[0] == doctest::Approx(s / 201.0).epsilon(1e-12));
  }
  // Each cocycle defect is within one box-invariance step of 2·(2·0.1).
  const MeanHandle box = foelner_box_mean(1, N);
  for (long long y = -3; y <= 3; ++y) {
    for (long long z = -3; z <= 3; ++z) {
      if (std::abs(y + z) > 3) continue;
      const double defect = std::abs(r.H.at(ZPoint{y + z})[0] - r.H.at(ZPoint{y})[0] - r.H.at(ZPoint{z})[0]);
      CHECK(defect <= 2 * (2 * 0.1) * foelner_defect_bound(box, ZPoint{z}) + 1e-12);
    }
  }

  // Exactifying the noisy H_N: the reported bound matches a brute-force re-measurement.
  const LinearCocycle lin = exactify_linear(r.H, h, NormKind::sup);
  double rebound = 0;
  for (long long y = -3; y <= 3; ++y) rebound = std::max(rebound, std::abs(y * r.H.at(ZPoint{1})[0] - 2.0 * y));
  CHECK(lin.bound_H == doctest::Approx(rebound).epsilon(1e-12));

  // F_N is within 2δ of f pointwise on |x| ≤ S.
  for (long long x = -3; x <= 3; ++x) CHECK(std::abs(r.F.at(ZPoint{x})[0] - f.at(ZPoint{x})[0]) <= 2 * r.delta_min + 1e-12);
}

TEST_CASE("rank two") {
  const std::size_t N = 12, S = 2;
  auto f_fn = [](const ZPoint& x) { return 0.5 * x[0] - 1.5 * x[1] + noise(x[0] * 1000 + x[1]) / 2; };
  const ZTable f = tabulate(2, N + S, f_fn);
  const ZTable h = tabulate(2, S, [](const ZPoint& y) { return 0.5 * y[0] - 1.5 * y[1]; });
  const FoelnerReport r = stabilize_foelner_z(N, f, h, NormKind::sup);
  CHECK(r.delta_min <= 0.1 + 1e-12);
  CHECK(r.holds());
}

TEST_CASE("window checks") {
  const ZTable h = tabulate(1, 3, [](const ZPoint&) { return 0.0; });
  const ZTable short_f = tabulate(1, 10, [](const ZPoint&) { return 0.0; });
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Parse;
  };
  CHECK(code([&] { stabilize_foelner_z(10, short_f, h, NormKind::sup); }) == Errc::WindowTooSmall);
  CHECK(code([&] { stabilize_foelner_z(2, short_f, h, NormKind::sup); }) == Errc::WindowTooSmall);
  CHECK_NOTHROW(stabilize_foelner_z(7, short_f, h, NormKind::sup));
}

TEST_CASE("exactify_linear") {
  const std::size_t S = 3;
  const ZTable h = tabulate(1, S, [](const ZPoint& y) { return 2.0 * y[0]; });
  const ZTable Hn = tabulate(1, S, [](const ZPoint& y) { return 2.03 * y[0] + (y[0] == 2 ? 0.01 : 0.0); });
  const LinearCocycle lin = exactify_linear(Hn, h, NormKind::sup);
  REQUIRE(lin.generators.size() == 1);
  CHECK(lin.generators[0][0] == 2.03);
  double rebound = 0;
  for (long long y = -3; y <= 3; ++y) {
    CHECK(lin.H.at(ZPoint{y})[0] == doctest::Approx(2.03 * y).epsilon(1e-15));
    rebound = std::max(rebound, std::abs(2.03 * y - 2.0 * y));
  }
  CHECK(lin.bound_H == doctest::Approx(rebound).epsilon(1e-12));
  // Exactly additive on the shift window.
  for (long long y = -1; y <= 1; ++y) {
    for (long long z = -2; z <= 2; ++z) {
      CHECK(lin.H.at(ZPoint{y + z})[0] == lin.H.at(ZPoint{y})[0] + lin.H.at(ZPoint{z})[0]);
    }
  }
  CHECK_THROWS_AS(exactify_linear(tabulate(1, 0, [](const ZPoint&) { return 0.0; }),
                                  tabulate(1, 0, [](const ZPoint&) { return 0.0; }), NormKind::sup),
                  Error);
}

TEST_CASE("cocycle defect decays under the certificate") {
  double previous = INFINITY;
  for (std::size_t N : {10, 40, 160}) {
    const auto [f, h] = foelner_data(1, N, 2.0, 0.1, 4, 3);
    const FoelnerReport r = stabilize_foelner_z(N, f, h, NormKind::sup);
    CHECK(r.defects_certified);
    CHECK(r.worst_certificate_margin >= -r.tolerance);
    CHECK(r.certified_cocycle_bound < previous);
    previous = r.certified_cocycle_bound;
  }
}
