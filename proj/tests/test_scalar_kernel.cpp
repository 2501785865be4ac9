#include <catch2/catch_amalgamated.hpp>

#include "betherec/prng.hpp"
#include "betherec/rational.hpp"
#include "betherec/scalar_functions.hpp"

using namespace betherec;

TEST_CASE("rationals stay canonical") {
  CHECK(Rat(2, 4).str() == "1/2");
  CHECK(Rat(-2, -4).str() == "1/2");
  CHECK(Rat(2, -4).str() == "-1/2");
  CHECK(Rat::parse("6/8") == Rat(3, 4));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat::parse("-7").num_string() == "-7");
  CHECK(Rat(3, 4).den_string() == "4");
  CHECK_THROWS_AS(Rat(1) / Rat(0), PoleError);
  CHECK_THROWS_AS(Rat(1, 0), PoleError);
  CHECK_THROWS_AS(Rat::parse("1/0"), PoleError);
}

TEST_CASE("rational function values") {
  const Rat c(1);
  CHECK(rational_fn(Fn::f, Rat(2), Rat(1), c) == Rat(2));
  CHECK(rational_fn(Fn::g, Rat(3), Rat(1), c) == Rat(1, 2));
  CHECK_THROWS_AS(rational_fn(Fn::frak_f, Rat(1), Rat(1), c), PoleError);
  CHECK(fn_frak_f(Rat(2), Rat(1), c) == Rat(3, 2));
}

TEST_CASE("colored dispatch") {
  const Rat c(1);
  CHECK(f_colored(1, Rat(2), Rat(1), AlgebraSpec(Family::GL, 3), c) == Rat(2));
  CHECK(f_colored(0, Rat(2), Rat(1), AlgebraSpec(Family::O_ODD, 2), c) == Rat(3, 2));
  CHECK_THROWS_AS(f_colored(0, Rat(2), Rat(1), AlgebraSpec(Family::GL, 3), c), IndexError);
}

TEST_CASE("f = 1 + g = h*g at random points") {
  Sampler rng(17);
  int done = 0;
  while (done < 1000) {
    const Rat u = rng.rat(), v = rng.rat(), c = rng.rat();
    if (u == v || c.is_zero()) continue;
    const Rat f = fn_f(u, v, c), g = fn_g(u, v, c), h = fn_h(u, v, c);
    REQUIRE(f == Rat(1) + g);
    REQUIRE(f == h * g);
    ++done;
  }
}

TEST_CASE("gamma agrees with its factored form") {
  Sampler rng(18);
  int done = 0;
  while (done < 200) {
    const Rat u = rng.rat(), v = rng.rat(), c = rng.rat();
    if (u == v || c.is_zero() || (v - u + c).is_zero()) continue;
    CHECK(fn_gamma(u, v, c) == c * c / ((u - v) * (v - u + c)));
    CHECK(fn_gamma(u, v, c) == fn_f(u, v, c) / (fn_h(u, v, c) * fn_h(v, u, c)));
    ++done;
  }
}

TEST_CASE("step function and sign factor") {
  CHECK(theta(0) == 1);
  CHECK(theta(-1) == 0);
  CHECK(sigma(0) == -1);
  CHECK(sigma(1) == 1);
  for (long m = -10; m <= 10; ++m) CHECK(sigma(m + 1) == -sigma(-m));
}

TEST_CASE("shifted spectral parameter") {
  CHECK(shifted(Rat(5), 0, Rat(1)) == Rat(11, 2));
  CHECK(shifted(Rat(5), 1, Rat(1)) == Rat(9, 2));
  CHECK(shifted(Rat(0), 3, Rat(2)) == Rat(-5));
}

TEST_CASE("set products") {
  const Rat c(1);
  const ParamSet empty;
  const ParamSet pair{Rat(1), Rat(2)};
  CHECK(set_product(Fn::f, empty, pair, c) == Rat(1));
  CHECK(set_product(Fn::f, pair, empty, c) == Rat(1));
  CHECK(set_product(Fn::g, ParamSet{Rat(3)}, pair, c) == Rat(1, 2));
  // oracle: naive double loop
  const ParamSet a{Rat(5), Rat(7)};
  const ParamSet b{Rat(1)};
  Rat expected = 1;
  for (const Rat& u : a)
    for (const Rat& v : b) expected *= fn_h(u, v, c);
  CHECK(set_product(Fn::h, a, b, c) == expected);
  CHECK(expected == Rat(5) * Rat(7));
  CHECK_THROWS_AS(set_product(Fn::g, ParamSet{Rat(1)}, pair, c), PoleError);
}

TEST_CASE("set products are permutation invariant") {
  Sampler rng(19);
  const Rat c(1);
  const ParamSet a{rng.rat_such_that([](const Rat&) { return true; }), Rat(100), Rat(101)};
  const ParamSet b{Rat(200), Rat(201)};
  const ParamSet a_perm{a[2], a[0], a[1]};
  const ParamSet b_perm{b[1], b[0]};
  for (Fn kind : {Fn::f, Fn::g, Fn::h}) {
    CHECK(set_product(kind, a, b, c) == set_product(kind, a_perm, b_perm, c));
  }
}

TEST_CASE("coincident parameters are rejected") {
  CHECK_THROWS_AS(ParamSet({Rat(1), Rat(1)}), PoleError);
}
