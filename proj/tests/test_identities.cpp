#include <catch2/catch_amalgamated.hpp>

#include "betherec/identities.hpp"
#include "betherec/prng.hpp"

using namespace betherec;

namespace {

// Runs one identity at `count` random pole-free points; pole hits are
// resampled, never counted.
template <typename Eval>
void check_identity(std::uint64_t seed, int count, const Eval& eval) {
  Sampler rng(seed);
  int done = 0;
  int attempts = 0;
  while (done < count) {
    REQUIRE(++attempts < count * Sampler::kMaxAttempts);
    Rat value;
    try {
      value = eval(rng);
    } catch (const PoleError&) {
      continue;
    }
    REQUIRE(value.is_zero());
    ++done;
  }
}

}  // namespace

TEST_CASE("telescoping g-h identity") {
  // spec-pinned point
  CHECK(identity_g_h_telescope(Rat(7), Rat(2), Rat(3), Rat(1)).is_zero());
  check_identity(101, 150, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_g_h_telescope(rng.rat(), rng.rat(), rng.rat(), c);
  });
}

TEST_CASE("telescoping identity chain members agree") {
  // every member of the displayed chain equals the first one
  Sampler rng(102);
  int done = 0;
  while (done < 100) {
    Rat first, second, third, fourth, last;
    try {
      const Rat c = rng.nonzero();
      const Rat z = rng.rat(), a = rng.rat(), b = rng.rat();
      first = fn_g(z, a, c) * (fn_h(b, a, c) - fn_f(b, z, c) / fn_g(b, a, c));
      second = fn_g(z, a, c) / fn_g(b, a, c) * (fn_f(b, a, c) - fn_f(b, z, c));
      third = fn_g(z, a, c) / fn_g(b, a, c) * (fn_g(b, a, c) - fn_g(b, z, c));
      fourth = fn_g(z, a, c) * fn_g(b, a, c) * fn_g(b, z, c) / (fn_g(b, a, c) * fn_g(a, z, c));
      last = fn_g(z, b, c);
    } catch (const PoleError&) {
      continue;
    }
    REQUIRE(first == second);
    REQUIRE(second == third);
    REQUIRE(third == fourth);
    REQUIRE(fourth == last);
    ++done;
  }
}

TEST_CASE("shifted f-ratio identity") {
  check_identity(103, 150, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_f_shift_ratio(rng.rat(), rng.rat(), c);
  });
}

TEST_CASE("symmetrized gamma-pair identity") {
  check_identity(104, 150, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_sym_gamma_pair(rng.rat(), rng.rat(), rng.rat(), rng.rat(), c);
  });
  // coincident symmetrization arguments sit on a pole
  CHECK_THROWS_AS(identity_sym_gamma_pair(Rat(5), Rat(7), Rat(2), Rat(2), Rat(1)), PoleError);
}

TEST_CASE("two-set h-expansion identity") {
  check_identity(105, 150, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_two_set_h(rng.rat(), rng.rat(), rng.rat(), rng.rat(), c);
  });
}

TEST_CASE("symmetrized two-set identity") {
  check_identity(106, 120, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_sym_two_set_h(rng.rat(), rng.rat(), rng.rat(), rng.rat(), rng.rat(), rng.rat(), c);
  });
}

TEST_CASE("symmetrized shifted identity") {
  check_identity(107, 120, [](Sampler& rng) {
    const Rat c = rng.nonzero();
    return identity_sym_frakf_shift(rng.rat(), rng.rat(), rng.rat(), rng.rat(), c);
  });
}

TEST_CASE("identity dispatcher") {
  std::map<std::string, Rat> in{{"z", Rat(7)}, {"a", Rat(2)}, {"b", Rat(3)}};
  CHECK(evaluate_scalar_identity(ScalarIdentity::g_h_telescope, in, Rat(1)).is_zero());
  CHECK_THROWS_AS(evaluate_scalar_identity(ScalarIdentity::sym_gamma_pair, in, Rat(1)), IndexError);
}
