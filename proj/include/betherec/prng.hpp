#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "betherec/rational.hpp"

namespace betherec {

// Deterministic source of generic rational parameters.  Numerator and
// denominator are bounded by 64; anything that hits a pole downstream is
// resampled by the caller, with a hard attempt cap so degenerate
// configurations surface as errors instead of loops.
class Sampler {
 public:
  static constexpr int kMaxAttempts = 100;

  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  Rat rat() {
    std::uniform_int_distribution<long> num(-64, 64);
    std::uniform_int_distribution<long> den(1, 64);
    return Rat(num(gen_), den(gen_));
  }

  Rat nonzero() {
    for (int a = 0; a < kMaxAttempts; ++a) {
      Rat r = rat();
      if (!r.is_zero()) return r;
    }
    throw PoleError("sampling exhausted while drawing a nonzero rational");
  }

  // Draws until `ok` accepts the candidate.
  Rat rat_such_that(const std::function<bool(const Rat&)>& ok) {
    for (int a = 0; a < kMaxAttempts; ++a) {
      Rat r = rat();
      if (ok(r)) return r;
    }
    throw PoleError("sampling exhausted while avoiding degenerate values");
  }

  std::uint64_t raw_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Retries `body` on PoleError/ZeroNormalizationError up to the attempt cap.
// Returns true if some attempt succeeded, false if all attempts degenerated.
template <typename Body>
bool with_resampling(const Body& body) {
  for (int a = 0; a < Sampler::kMaxAttempts; ++a) {
    try {
      body();
      return true;
    } catch (const PoleError&) {
    } catch (const ZeroNormalizationError&) {
    }
  }
  return false;
}

}  // namespace betherec
