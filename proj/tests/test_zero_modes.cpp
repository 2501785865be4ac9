#include <catch2/catch_amalgamated.hpp>

#include "betherec/zero_modes.hpp"
#include "test_util.hpp"

using namespace betherec;
using testutil::fresh_point;
using testutil::make_chain;

TEST_CASE("reconstructed entries match a fresh evaluation") {
  // holdout consistency is built into compute_zero_modes; here we also check
  // the leading coefficient against the twist
  for (auto [family, n, L] : {std::tuple{Family::GL, 2, 2}, {Family::O_ODD, 1, 2}}) {
    auto chain = make_chain(family, n, L, 80 + n + L);
    const auto table = compute_zero_modes(*chain);
    const AlgebraSpec& alg = chain->algebra();
    for (int i = alg.index_min(); i <= alg.index_max(); ++i)
      for (int j = alg.index_min(); j <= alg.index_max(); ++j) {
        const SparseMat& lead = table.leading[static_cast<std::size_t>(alg.index_to_local(i)) * alg.N() +
                                              alg.index_to_local(j)];
        if (i == j)
          CHECK(lead == SparseMat::identity(chain->phys_dim()).scaled(chain->chi(i)));
        else
          CHECK(lead.is_zero());
      }
  }
}

TEST_CASE("zero modes annihilate the vacuum below the diagonal") {
  for (auto [family, n, L] : {std::tuple{Family::GL, 3, 2}, {Family::O_ODD, 2, 1}}) {
    auto chain = make_chain(family, n, L, 90 + n);
    const auto table = compute_zero_modes(*chain);
    const AlgebraSpec& alg = chain->algebra();
    const SparseVec vac = chain->vacuum();
    for (int i = alg.index_min(); i <= alg.index_max(); ++i)
      for (int j = alg.index_min(); j < i; ++j)
        CHECK(table.mode_local(alg.index_to_local(i), alg.index_to_local(j)).apply(vac).is_zero());
  }
}

TEST_CASE("zero-mode commutators hold exactly") {
  Sampler rng(91);
  for (auto [family, n, L] : {std::tuple{Family::GL, 3, 2}, {Family::O_ODD, 2, 1}, {Family::O_ODD, 1, 2}}) {
    auto chain = make_chain(family, n, L, 92 + n + L);
    const auto table = compute_zero_modes(*chain);
    const Rat v = fresh_point(*chain, rng);
    CHECK(!zero_mode_commutator_defect(*chain, table, v).has_value());
    CHECK(!lowering_mode_commutator_defect(*chain, table, v).has_value());
  }
}

TEST_CASE("zero-mode commutators fail with wrong twists") {
  auto chain = make_chain(Family::GL, 2, 1, 93);
  const auto table = compute_zero_modes(*chain);
  Sampler rng(94);
  const Rat v = fresh_point(*chain, rng);
  CHECK(zero_mode_commutator_defect(*chain, table, v, /*wrong_twist=*/true).has_value());
}

TEST_CASE("cartan operators have the right adjoint weights") {
  Sampler rng(95);
  for (auto [family, n, L] : {std::tuple{Family::GL, 3, 1}, {Family::O_ODD, 2, 1}}) {
    auto chain = make_chain(family, n, L, 96 + n);
    const auto table = compute_zero_modes(*chain);
    const Rat v = fresh_point(*chain, rng);
    CHECK(!cartan_weight_defect(*chain, table, v).has_value());
  }
}
