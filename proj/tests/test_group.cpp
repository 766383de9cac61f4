#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hu/error.hpp"
#include "hu/group.hpp"
#include "oracles.hpp"

using namespace hu;

namespace {

Errc error_of(const Group::Table& t) {
  try {
    Group::from_table(t);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Parse;
}

std::vector<std::string> corpus() {
  return {"cyclic:1", "cyclic:2", "cyclic:5", "cyclic:12", "dihedral:3", "dihedral:4", "dihedral:6",
          "symmetric:3", "symmetric:4", "product:cyclic:2,cyclic:3", "product:cyclic:2,dihedral:4",
          "product:cyclic:2,cyclic:2,cyclic:2"};
}

}  // namespace

TEST_CASE("build_group accepts small cyclic tables") {
  const Group z2 = Group::from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inv(1) == 1);

  const Group z3 = Group::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(z3.order() == 3);
  CHECK(z3.mul(1, 2) == 0);
  CHECK(z3.inv(1) == 2);
}

TEST_CASE("build_group reports the violated axiom") {
  CHECK(error_of({{0, 1}, {1, 1}}) == Errc::NotInvertible);
  CHECK(error_of({{1, 0}, {0, 1}}) == Errc::NoIdentityAtZero);
  // A Latin square with identity that is a loop but not a group.
  CHECK(error_of({{0, 1, 2, 3, 4},
                  {1, 0, 3, 4, 2},
                  {2, 4, 0, 1, 3},
                  {3, 2, 4, 0, 1},
                  {4, 3, 1, 2, 0}}) == Errc::NotAssociative);
  CHECK(error_of({{0, 1}, {1}}) == Errc::Parse);
  CHECK(error_of({{0, 2}, {1, 0}}) == Errc::Parse);
}

TEST_CASE("NotInvertible names the offending row") {
  try {
    Group::from_table({{0, 1}, {1, 1}});
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("builtin groups have the documented orders") {
  CHECK(cyclic(2).order() == 2);
  CHECK(symmetric(3).order() == 6);
  CHECK(symmetric(5).order() == 120);
  CHECK(dihedral(4).order() == 8);
  CHECK(direct_product(cyclic(2), cyclic(3)).order() == 6);
  CHECK(symmetric(3).name(0) == "012");
  CHECK(dihedral(3).name(3) == "sr0");
}

TEST_CASE("direct products and dihedral groups match brute-force isomorphism classes") {
  CHECK(oracle::isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)));
  CHECK_FALSE(oracle::isomorphic(direct_product(cyclic(2), cyclic(3)), symmetric(3)));
  CHECK(oracle::isomorphic(dihedral(3), symmetric(3)));
  CHECK_FALSE(oracle::isomorphic(direct_product(cyclic(2), cyclic(2)), cyclic(4)));
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(cyclic(121), Error);
  CHECK_THROWS_AS(symmetric(6), Error);
  try {
    direct_product(symmetric(5), cyclic(2));
    FAIL("expected SizeLimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SizeLimitExceeded);
  }
}

TEST_CASE("group specs") {
  CHECK(builtin_group("cyclic:6").order() == 6);
  CHECK(builtin_group("product:cyclic:2,cyclic:3") == direct_product(cyclic(2), cyclic(3)));
  CHECK(builtin_group("product:cyclic:2,cyclic:2,cyclic:2").order() == 8);
  CHECK(is_builtin_group_spec("symmetric:3"));
  CHECK_FALSE(is_builtin_group_spec("groups/z2.json"));
  CHECK_THROWS_AS(builtin_group("free:2"), Error);
  CHECK_THROWS_AS(builtin_group("cyclic:x"), Error);
  CHECK_THROWS_AS(builtin_group("product:cyclic:2"), Error);
}

TEST_CASE("every builtin satisfies the group laws and the inverse map is exact") {
  for (const auto& spec : corpus()) {
    CAPTURE(spec);
    const Group g = builtin_group(spec);
    // Rebuilding from the table re-runs the exhaustive validation.
    CHECK(Group::from_table(g.table()) == g);
    for (Element i = 0; i < g.order(); ++i) {
      CHECK(g.mul(i, g.inv(i)) == 0);
      CHECK(g.inv(i) == oracle::find_inverse(g, i));
    }
  }
}

TEST_CASE("closure yields subgroups") {
  const Group s3 = symmetric(3);
  CHECK(s3.closure({}) == std::vector<Element>{0});
  CHECK(s3.closure({2}).size() == 2);
  CHECK(s3.closure({3}).size() == 3);
  CHECK(s3.closure({2, 3}).size() == 6);
}

TEST_CASE("sign character is a homomorphism onto {±1}") {
  for (const auto& spec : corpus()) {
    CAPTURE(spec);
    const Group g = builtin_group(spec);
    const auto chi = sign_character(g);
    if (chi.empty()) continue;
    int minus = 0;
    for (Element y = 0; y < g.order(); ++y) {
      minus += chi[y] < 0;
      for (Element z = 0; z < g.order(); ++z) CHECK(chi[g.mul(y, z)] == chi[y] * chi[z]);
    }
    CHECK(2 * minus == static_cast<int>(g.order()));
  }
  CHECK(sign_character(cyclic(5)).empty());
  CHECK(sign_character(cyclic(1)).empty());
  CHECK_FALSE(sign_character(cyclic(6)).empty());
}

TEST_CASE("the sign character of S_n is permutation parity") {
  for (std::size_t n : {2, 3, 4}) {
    const Group g = symmetric(n);
    const auto chi = sign_character(g);
    REQUIRE(chi.size() == g.order());
    for (Element y = 0; y < g.order(); ++y) CHECK(chi[y] == oracle::parity_sign(g.name(y)));
  }
}
