#pragma once

#include <memory>
#include <vector>

#include "betherec/chain.hpp"
#include "betherec/prng.hpp"

namespace betherec::testutil {

// Generic chain with seeded random inhomogeneities and twists.
inline std::shared_ptr<Chain> make_chain(Family family, int n, int L, std::uint64_t seed,
                                         Tamper tamper = Tamper::none,
                                         std::pair<int, int> tamper_entry = {0, 0}) {
  AlgebraSpec alg(family, n);
  Sampler rng(seed);
  for (int attempt = 0; attempt < Sampler::kMaxAttempts; ++attempt) {
    try {
      std::vector<Rat> xi;
      while (static_cast<int>(xi.size()) < L) {
        Rat x = rng.rat();
        bool fresh = true;
        for (const Rat& y : xi)
          if (x == y) fresh = false;
        if (fresh) xi.push_back(x);
      }
      std::vector<Rat> tw;
      for (int i = 0; i < n; ++i) tw.push_back(rng.nonzero());
      return std::make_shared<Chain>(alg, L, xi, make_twists(alg, tw), Rat(1), tamper, tamper_entry);
    } catch (const ConfigError&) {
    }
  }
  throw PoleError("could not sample a generic chain");
}

// A pole-free spectral point for the chain, distinct from the given values.
inline Rat fresh_point(const Chain& chain, Sampler& rng, const std::vector<Rat>& avoid = {}) {
  return rng.rat_such_that([&](const Rat& z) {
    if (!chain.spectral_point_ok(z)) return false;
    for (const Rat& a : avoid)
      if (a == z) return false;
    return true;
  });
}

}  // namespace betherec::testutil
