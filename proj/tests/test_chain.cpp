#include <catch2/catch_amalgamated.hpp>

#include "betherec/chain.hpp"
#include "betherec/structure_checks.hpp"
#include "test_util.hpp"

using namespace betherec;
using testutil::fresh_point;
using testutil::make_chain;

TEST_CASE("gl R-matrix at u-v=c is identity plus permutation") {
  AlgebraSpec alg(Family::GL, 2);
  const SparseMat r = build_r_matrix(alg, Rat(3), Rat(2), Rat(1));
  SparseMat expected(4, 4);
  for (Idx i = 0; i < 4; ++i) expected.add(i, i, Rat(1));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) expected.add(a * 2 + b, b * 2 + a, Rat(1));
  CHECK(r == expected);
}

TEST_CASE("orthogonal Q block is the reflected transpose of P") {
  AlgebraSpec alg(Family::O_ODD, 1);
  const int N = alg.N();
  // assemble P and Q directly and compare entrywise with Q = P^{t_1}
  auto loc = [&](int i) { return alg.index_to_local(i); };
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y) {
          const int p_entry = (a == y && b == x) ? 1 : 0;          // P_{(a,b),(x,y)}
          const int q_entry = (a == -b && x == -y) ? 1 : 0;        // Q_{(a,b),(x,y)}
          // t_1: transpose the first factor across the secondary diagonal
          const int p_t1 = (-x == y && b == -a) ? 1 : 0;           // P_{(-x,b),(-a,y)}
          CHECK(q_entry == p_t1);
          (void)p_entry;
          (void)N;
          (void)loc;
        }
}

TEST_CASE("Yang-Baxter holds for both families") {
  Sampler rng(31);
  for (auto [family, n] : {std::pair{Family::GL, 3}, {Family::O_ODD, 2}}) {
    AlgebraSpec alg(family, n);
    int done = 0;
    while (done < 3) {
      std::optional<EntryWitness> defect;
      try {
        const Rat u = rng.rat(), v = rng.rat(), w = rng.rat();
        defect = yang_baxter_defect(alg, u, v, w, Rat(1));
      } catch (const PoleError&) {
        continue;
      }
      CHECK(!defect.has_value());
      ++done;
    }
  }
  // the spec-pinned gl_3 point
  CHECK(!yang_baxter_defect(AlgebraSpec(Family::GL, 3), Rat(0), Rat(1, 2), Rat(7, 3), Rat(1)).has_value());
}

TEST_CASE("Yang-Baxter fails with a flipped Q sign") {
  AlgebraSpec alg(Family::O_ODD, 1);
  const auto defect = yang_baxter_defect(alg, Rat(0), Rat(1, 3), Rat(5, 7), Rat(1), Tamper::flip_q_sign);
  REQUIRE(defect.has_value());
  CHECK(!defect->lhs.is_zero());
}

TEST_CASE("single-site gl monodromy entries are R-matrix blocks") {
  AlgebraSpec alg(Family::GL, 2);
  Chain chain(alg, 1, {Rat(0)}, unit_twists(alg), Rat(1));
  const Rat z(5);
  // T_{1,1}(z) = f(z,0) e_{11} + e_{22} on one site
  const SparseMat& t11 = chain.entry(1, 1, z);
  CHECK(t11.at(0, 0) == fn_f(z, Rat(0), Rat(1)));
  CHECK(t11.at(1, 1) == Rat(1));
  // the off-diagonal blocks are g times the transposed unit matrices, so
  // T_{1,2} raises e_1 to e_2 and T_{2,1} annihilates e_1
  const SparseMat& t12 = chain.entry(1, 2, z);
  CHECK(t12.at(1, 0) == fn_g(z, Rat(0), Rat(1)));
  CHECK(t12.at(0, 1) == Rat(0));
  CHECK(chain.entry(2, 1, z).at(0, 1) == fn_g(z, Rat(0), Rat(1)));
  CHECK(chain.entry(2, 1, z).apply(chain.vacuum()).is_zero());
}

TEST_CASE("vacuum is found and unique") {
  for (auto [family, n, L] : {std::tuple{Family::GL, 2, 3}, {Family::GL, 3, 2}, {Family::O_ODD, 1, 1},
                              {Family::O_ODD, 2, 2}}) {
    auto chain = make_chain(family, n, L, 40 + n + L);
    const Idx vac = chain->vacuum_index();
    if (family == Family::GL) {
      // (e_1)^{(x) L} encodes to 0
      CHECK(vac == 0);
    }
    // annihilation and eigenvector property at a fresh point
    Sampler rng(77);
    const Rat z = fresh_point(*chain, rng);
    const SparseVec v = chain->vacuum();
    const AlgebraSpec& alg = chain->algebra();
    for (int i = alg.index_min(); i <= alg.index_max(); ++i)
      for (int j = alg.index_min(); j < i; ++j) CHECK(chain->entry(i, j, z).apply(v).is_zero());
    for (int i = alg.index_min(); i <= alg.index_max(); ++i) {
      const SparseVec w = chain->entry(i, i, z).apply(v);
      CHECK(w == v.scaled(chain->lambda(i, z)));
    }
  }
}

TEST_CASE("tampered chain has no vacuum") {
  auto chain = make_chain(Family::O_ODD, 1, 2, 55, Tamper::transpose_r);
  bool failed = false;
  try {
    (void)chain->vacuum_index();
    // a transposed R may still admit a unique survivor, but then it must not
    // match the untampered one
    auto clean = make_chain(Family::O_ODD, 1, 2, 55);
    failed = chain->vacuum_index() != clean->vacuum_index();
  } catch (const NoVacuumError&) {
    failed = true;
  }
  CHECK(failed);
}

TEST_CASE("single-site gl lambdas") {
  AlgebraSpec alg(Family::GL, 2);
  Chain chain(alg, 1, {Rat(0)}, unit_twists(alg), Rat(1));
  const Rat z(9);
  CHECK(chain.lambda(1, z) == fn_f(z, Rat(0), Rat(1)));
  CHECK(chain.lambda(2, z) == Rat(1));
}

TEST_CASE("RTT holds on generic chains") {
  Sampler rng(32);
  for (auto [family, n, L] : {std::tuple{Family::GL, 3, 2}, {Family::O_ODD, 2, 1}}) {
    auto chain = make_chain(family, n, L, 60 + n);
    int done = 0;
    while (done < 2) {
      const Rat u = fresh_point(*chain, rng);
      const Rat v = fresh_point(*chain, rng, {u});
      CHECK(!rtt_defect(*chain, u, v).has_value());
      ++done;
    }
  }
}

TEST_CASE("RTT fails with a zeroed monodromy entry") {
  auto chain = make_chain(Family::GL, 2, 1, 61, Tamper::zero_entry, {1, 2});
  Sampler rng(33);
  const Rat u = fresh_point(*chain, rng);
  const Rat v = fresh_point(*chain, rng, {u});
  CHECK(rtt_defect(*chain, u, v).has_value());
}

TEST_CASE("central element is scalar and matches the eigenvalue invariant") {
  auto chain = make_chain(Family::O_ODD, 1, 1, 62);
  Sampler rng(34);
  const AlgebraSpec& alg = chain->algebra();
  int done = 0;
  while (done < 2) {
    std::optional<Rat> scalar;
    Rat f0;
    try {
      const Rat z = fresh_point(*chain, rng);
      if (!chain->spectral_point_ok(z + chain->c() * alg.kappa())) continue;
      scalar = central_element_scalar(*chain, z);
      // consistency with the j-independent eigenvalue combination
      f0 = lambda_ratio_invariant(*chain, 0, z + chain->c() * alg.kappa());
    } catch (const PoleError&) {
      continue;
    }
    REQUIRE(scalar.has_value());
    CHECK(*scalar == f0);
    ++done;
  }
}

TEST_CASE("lambda ratio invariant is j-independent") {
  for (int n : {1, 2}) {
    auto chain = make_chain(Family::O_ODD, n, 2, 63 + n);
    Sampler rng(35);
    int done = 0;
    while (done < 3) {
      std::vector<Rat> values;
      try {
        const Rat z = fresh_point(*chain, rng);
        for (int j = 0; j <= n; ++j) values.push_back(lambda_ratio_invariant(*chain, j, z));
      } catch (const PoleError&) {
        continue;
      }
      for (int j = 1; j <= n; ++j) CHECK(values[j] == values[0]);
      ++done;
    }
  }
}

TEST_CASE("central element check raises on gl") {
  auto chain = make_chain(Family::GL, 2, 1, 64);
  CHECK_THROWS_AS(central_element_scalar(*chain, Rat(100)), FamilyError);
}

TEST_CASE("transfer matrices at distinct points commute") {
  for (auto [family, n, L] : {std::tuple{Family::GL, 2, 2}, {Family::O_ODD, 1, 2}}) {
    auto chain = make_chain(family, n, L, 70 + n);
    Sampler rng(36);
    const Rat z = fresh_point(*chain, rng);
    const Rat w = fresh_point(*chain, rng, {z});
    CHECK(chain->transfer(z).commutator(chain->transfer(w)).is_zero());
  }
}

TEST_CASE("chain validation rejects bad configurations") {
  AlgebraSpec gl(Family::GL, 2);
  CHECK_THROWS_AS(Chain(gl, 2, {Rat(0), Rat(0)}, unit_twists(gl), Rat(1)), ConfigError);
  CHECK_THROWS_AS(Chain(gl, 1, {Rat(0)}, unit_twists(gl), Rat(0)), ConfigError);
  AlgebraSpec o3(Family::O_ODD, 1);
  auto chi = unit_twists(o3);
  chi[0] = Rat(2);
  CHECK_THROWS_AS(Chain(o3, 1, {Rat(0)}, chi, Rat(1)), ConfigError);
  // crossing pole between inhomogeneities: xi_1 - xi_2 = c kappa_1 = 1/2
  CHECK_THROWS_AS(Chain(o3, 2, {Rat(1, 2), Rat(0)}, unit_twists(o3), Rat(1)), ConfigError);
}
