#include <catch2/catch_amalgamated.hpp>

#include "betherec/coefficients.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/prng.hpp"

using namespace betherec;

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("partition enumeration: choose one of two") {
  AlgebraSpec alg(Family::GL, 2);
  ColoredSets t(alg);
  t.set(1, ParamSet{Rat(1), Rat(2)});
  CardinalityProfile profile;
  profile.color_min = 1;
  profile.required = {{1, 0}};
  const auto parts = enumerate_partitions(t, profile);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].part_one.at(1)[0] == Rat(1));
  CHECK(parts[1].part_one.at(1)[0] == Rat(2));
}

TEST_CASE("partition enumeration: all-zero profile gives one triple") {
  AlgebraSpec alg(Family::GL, 3);
  ColoredSets t(alg);
  t.set(1, ParamSet{Rat(1), Rat(2)});
  t.set(2, ParamSet{Rat(3)});
  CardinalityProfile profile;
  profile.color_min = 1;
  profile.required = {{0, 0}, {0, 0}};
  const auto parts = enumerate_partitions(t, profile);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].part_two.at(1) == t.at(1));
  CHECK(parts[0].part_two.at(2) == t.at(2));
  CHECK(parts[0].part_one.at(1).empty());
  CHECK(parts[0].part_three.at(2).empty());
}

TEST_CASE("partition enumeration: one and one out of three") {
  AlgebraSpec alg(Family::GL, 2);
  ColoredSets t(alg);
  t.set(1, ParamSet{Rat(1), Rat(2), Rat(3)});
  CardinalityProfile profile;
  profile.color_min = 1;
  profile.required = {{1, 1}};
  const auto parts = enumerate_partitions(t, profile);
  // oracle: brute-force count 3 * 2
  REQUIRE(parts.size() == 6);
  for (const auto& p : parts) {
    CHECK(p.part_one.at(1).size() == 1);
    CHECK(p.part_two.at(1).size() == 1);
    CHECK(p.part_three.at(1).size() == 1);
    // disjoint union reassembles the set
    const ParamSet all = p.part_one.at(1).merged(p.part_two.at(1)).merged(p.part_three.at(1));
    CHECK(all == t.at(1));
  }
}

TEST_CASE("partition count matches the binomial formula") {
  AlgebraSpec alg(Family::O_ODD, 2);
  ColoredSets t(alg);
  t.set(0, ParamSet{Rat(1), Rat(2), Rat(3), Rat(4)});
  t.set(1, ParamSet{Rat(5), Rat(6)});
  CardinalityProfile profile;
  profile.color_min = 0;
  profile.required = {{2, 1}, {0, 1}};
  const auto parts = enumerate_partitions(t, profile);
  CHECK(static_cast<long>(parts.size()) == binom(4, 2) * binom(2, 1) * binom(2, 0) * binom(2, 1));
  for (const auto& p : parts)
    for (int s = 0; s <= 1; ++s) {
      const ParamSet all = p.part_one.at(s).merged(p.part_two.at(s)).merged(p.part_three.at(s));
      CHECK(all == t.at(s));
    }
}

TEST_CASE("infeasible profiles are rejected") {
  AlgebraSpec alg(Family::GL, 2);
  ColoredSets t(alg);
  t.set(1, ParamSet{Rat(1)});
  CardinalityProfile profile;
  profile.color_min = 1;
  profile.required = {{1, 1}};
  CHECK(!profile.feasible_on(t));
  CHECK_THROWS_AS(enumerate_partitions(t, profile), InfeasibleProfileError);
}

TEST_CASE("cardinality profile matches the displayed gl table") {
  AlgebraSpec alg(Family::GL, 4);
  ColoredSets t(alg);
  for (int s = 1; s <= 3; ++s) t.set(s, ParamSet{Rat(10 * s), Rat(10 * s + 1)});
  const auto profile = cardinality_profile(alg, 2, 3, 1, 4, t);
  CHECK(profile.need_one(1) == 1);
  CHECK(profile.need_one(2) == 0);
  CHECK(profile.need_one(3) == 0);
  CHECK(profile.need_three(1) == 0);
  CHECK(profile.need_three(2) == 0);
  CHECK(profile.need_three(3) == 1);
}

TEST_CASE("cardinality profile for i=l, j=k has no partitioned colors") {
  AlgebraSpec gl(Family::GL, 4);
  ColoredSets t(gl);
  for (int s = 1; s <= 3; ++s) t.set(s, ParamSet{Rat(10 * s)});
  const auto p = cardinality_profile(gl, 2, 3, 2, 3, t);
  for (int s = 1; s <= 3; ++s) {
    CHECK(p.need_one(s) == 0);
    CHECK(p.need_three(s) == 0);
  }
}

TEST_CASE("orthogonal cardinality profile from the step functions") {
  AlgebraSpec o5(Family::O_ODD, 2);
  ColoredSets t(o5);
  t.set(0, ParamSet{Rat(1), Rat(2)});
  t.set(1, ParamSet{Rat(3)});
  // oracle: direct evaluation of the step-function expressions
  auto want_one = [&](int ell, int i, int s) {
    return s < std::abs(ell) ? theta(ell) * (theta(s - i) + theta(-i - s - 1)) : theta(-i - s - 1);
  };
  auto want_three = [&](int k, int j, int s) {
    return s < std::abs(k) ? theta(-k) * (theta(j + s) + theta(j - s - 1)) : theta(j - s - 1);
  };
  const auto p = cardinality_profile(o5, -2, -1, -2, 1, t);
  for (int s = 0; s <= 1; ++s) {
    CHECK(p.need_one(s) == want_one(-2, -2, s));
    CHECK(p.need_three(s) == want_three(-1, 1, s));
  }
  CHECK(p.need_three(0) == 2);
  CHECK(p.need_three(1) == 0);
  CHECK(p.need_one(0) == 0);
}

TEST_CASE("gl partitions split into at most two parts, orthogonal into three") {
  AlgebraSpec gl(Family::GL, 4);
  ColoredSets tgl(gl);
  for (int s = 1; s <= 3; ++s) tgl.set(s, ParamSet{Rat(10 * s), Rat(10 * s + 1)});
  for (int ell = 1; ell <= 3; ++ell)
    for (int k = ell + 1; k <= 4; ++k)
      for (int i = 1; i <= ell; ++i)
        for (int j = k; j <= 4; ++j) {
          const auto p = cardinality_profile(gl, ell, k, i, j, tgl);
          for (int s = 1; s <= 3; ++s) {
            CHECK(p.need_one(s) <= 1);
            CHECK(p.need_three(s) <= 1);
            CHECK(p.need_one(s) * p.need_three(s) == 0);
          }
        }
  AlgebraSpec o7(Family::O_ODD, 3);
  ColoredSets to(o7);
  for (int s = 0; s <= 2; ++s) to.set(s, ParamSet{Rat(10 * s + 1), Rat(10 * s + 2)});
  for (int ell = -3; ell <= 2; ++ell)
    for (int k = ell + 1; k <= 3; ++k)
      for (int i = -3; i <= ell; ++i)
        for (int j = k; j <= 3; ++j) {
          const auto p = cardinality_profile(o7, ell, k, i, j, to);
          for (int s = 0; s <= 2; ++s) CHECK(p.need_one(s) + p.need_three(s) <= 2);
        }
}
