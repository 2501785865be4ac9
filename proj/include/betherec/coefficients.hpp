#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <utility>

#include "betherec/algebra.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/rational.hpp"
#include "betherec/scalar_functions.hpp"

namespace betherec {

// Vacuum eigenvalue evaluator lambda_i(z); index i runs over the matrix index
// set of the algebra the callable belongs to.
using LambdaFn = std::function<Rat(int, const Rat&)>;

// alpha_s(z) = lambda_s(z)/lambda_{s+1}(z), extended to sets by products.
inline Rat alpha_product(int s, const ParamSet& set, const LambdaFn& lambda) {
  Rat p = 1;
  for (const Rat& t : set) {
    const Rat den = lambda(s + 1, t);
    if (den.is_zero()) throw ZeroNormalizationError("lambda_{s+1} vanishes inside alpha_s");
    p *= lambda(s, t) / den;
  }
  return p;
}

// psi_l(z; t): gl has the single expression g(z,t^{l-1}) h(t^l,z); the
// orthogonal case branches on the sign of l.
inline Rat psi(const AlgebraSpec& alg, int ell, const Rat& z, const ColoredSets& t, const Rat& c) {
  if (alg.family == Family::GL) {
    if (ell < 1 || ell > alg.n - 1) throw IndexError("psi index out of range for gl");
    return set_product(Fn::g, z, t.neighbor(ell - 1), c) * set_product(Fn::h, t.neighbor(ell), z, c);
  }
  if (ell < -alg.n || ell >= alg.n) throw IndexError("psi index out of range for o");
  if (ell > 0)
    return set_product(Fn::g, z, t.neighbor(ell - 1), c) * set_product(Fn::h, t.neighbor(ell), z, c);
  if (ell == 0) return set_product(Fn::g, shifted(z, 0, c), t.neighbor(0), c);
  const Rat zm = shifted(z, -ell, c);
  return set_product(Fn::g, t.neighbor(-ell), zm, c) * set_product(Fn::inv_g, zm, t.neighbor(-ell - 1), c);
}

inline Rat phi(const AlgebraSpec& alg, int k, const Rat& z, const ColoredSets& t, const Rat& c) {
  if (alg.family == Family::GL) {
    if (k < 2 || k > alg.n) throw IndexError("phi index out of range for gl");
    return set_product(Fn::h, z, t.neighbor(k - 1), c) * set_product(Fn::g, t.neighbor(k), z, c);
  }
  if (k <= -alg.n || k > alg.n) throw IndexError("phi index out of range for o");
  if (k > 0)
    return set_product(Fn::h, z, t.neighbor(k - 1), c) * set_product(Fn::g, t.neighbor(k), z, c);
  if (k == 0) return set_product(Fn::g, z, t.neighbor(0), c);
  const Rat zm = shifted(z, -k - 1, c);
  return set_product(Fn::g, zm, t.neighbor(-k - 1), c) / set_product(Fn::g, t.neighbor(-k), zm, c);
}

// Normalization factor mu^k_l(z; t).  For the orthogonal family the sign,
// the kappa power and the color-0 boundary ratio are kept as separately
// queryable factors.
struct MuParts {
  int sign = 1;          // sigma_{-l-k}, orthogonal only (1 for gl)
  Rat kappa_factor = 1;  // (kappa_k)^{delta_{k,-l}}, orthogonal only
  Rat boundary = 1;      // (g(z_1,t^0)/h(z,t^0))^{delta_{l<0,k>0}}, orthogonal only
  Rat base = 1;          // lambda_k(z) * psi_l * phi_k

  Rat total() const { return Rat(sign) * kappa_factor * boundary * base; }
};

inline MuParts mu_parts(const AlgebraSpec& alg, int ell, int k, const Rat& z, const ColoredSets& t,
                        const LambdaFn& lambda, const Rat& c) {
  if (ell >= k) throw IndexError("mu requires l < k");
  MuParts parts;
  parts.base = lambda(k, z) * psi(alg, ell, z, t, c) * phi(alg, k, z, t, c);
  if (alg.family == Family::O_ODD) {
    parts.sign = sigma(-ell - k);
    if (k == -ell) parts.kappa_factor = Rat(k) - half();
    if (ell < 0 && k > 0) {
      parts.boundary = set_product(Fn::g, shifted(z, 1, c), t.neighbor(0), c) /
                       set_product(Fn::h, z, t.neighbor(0), c);
    }
  }
  return parts;
}

inline Rat mu(const AlgebraSpec& alg, int ell, int k, const Rat& z, const ColoredSets& t,
              const LambdaFn& lambda, const Rat& c) {
  const Rat value = mu_parts(alg, ell, k, z, t, lambda, c).total();
  if (value.is_zero()) throw ZeroNormalizationError("mu vanishes at z=" + z.str());
  return value;
}

enum class Side { L, R };

// Omega^L_s(A, B | prev, next) = gamma_s(A,B) h(B,prev) / g(next,B)
// Omega^R_s(A, B | prev, next) = gamma_s(A,B) h(next,A) / g(A,prev)
// where s only matters for the orthogonal color 0 (frak_f instead of gamma).
inline Rat omega(Side side, int color, const ParamSet& a, const ParamSet& b, const ParamSet& prev,
                 const ParamSet& next, const AlgebraSpec& alg, const Rat& c) {
  const Rat gam = set_product_colored(color, /*use_gamma=*/true, a, b, alg, c);
  if (side == Side::L)
    return gam * set_product(Fn::h, b, prev, c) / set_product(Fn::g, next, b, c);
  return gam * set_product(Fn::h, next, a, c) / set_product(Fn::g, a, prev, c);
}

// Gamma^R_{a,b}(Y, X) = prod_{s=a}^{b-1} Omega^R_s(Y^s, X^s | X^{s-1}, X^{s+1}),
// where X supplies the neighbor sets.  Empty Y^s factors are 1, so the range
// may safely cover all colors.
inline Rat gamma_right(const AlgebraSpec& alg, int a, int b, const ColoredSets& y, const ColoredSets& x,
                       const Rat& c) {
  Rat p = 1;
  for (int s = a; s < b; ++s) {
    if (!alg.color_legal(s)) continue;
    if (y.at(s).empty()) continue;
    p *= omega(Side::R, s, y.at(s), x.at(s), x.neighbor(s - 1), x.neighbor(s + 1), alg, c);
  }
  return p;
}

// Gamma^L_{a,b}(X, Y) = prod_{s=a}^{b-1} alpha_s(Y^s) Omega^L_s(X^s, Y^s | X^{s-1}, X^{s+1}).
inline Rat gamma_left(const AlgebraSpec& alg, int a, int b, const ColoredSets& x, const ColoredSets& y,
                      const LambdaFn& lambda, const Rat& c) {
  Rat p = 1;
  for (int s = a; s < b; ++s) {
    if (!alg.color_legal(s)) continue;
    if (y.at(s).empty()) continue;
    p *= alpha_product(s, y.at(s), lambda) *
         omega(Side::L, s, x.at(s), y.at(s), x.neighbor(s - 1), x.neighbor(s + 1), alg, c);
  }
  return p;
}

// Required partition cardinalities for the (i,j) term of the rectangular sum
// with window (l,k).  The profile is expressed through the step function; a
// term whose profile exceeds the available set sizes is discarded.
inline CardinalityProfile cardinality_profile(const AlgebraSpec& alg, int ell, int k, int i, int j,
                                              const ColoredSets& t) {
  if (ell >= k) throw IndexError("window requires l < k");
  if (alg.family == Family::GL) {
    if (i < 1 || i > ell || k > j || j > alg.n) throw IndexError("indices outside 1<=i<=l<k<=j<=n");
  } else {
    if (i < -alg.n || i > ell || k > j || j > alg.n) throw IndexError("indices outside -n<=i<=l<k<=j<=n");
  }
  CardinalityProfile profile;
  profile.color_min = alg.color_min();
  for (int s = alg.color_min(); s <= alg.color_max(); ++s) {
    int n_one = 0, n_three = 0;
    if (alg.family == Family::GL) {
      n_one = (s < ell) ? theta(s - i) : 0;
      n_three = (s <= k - 1) ? 0 : theta(j - s - 1);
    } else {
      n_one = (s < std::abs(ell)) ? theta(ell) * (theta(s - i) + theta(-i - s - 1)) : theta(-i - s - 1);
      n_three = (s < std::abs(k)) ? theta(-k) * (theta(j + s) + theta(j - s - 1)) : theta(j - s - 1);
    }
    profile.required.emplace_back(n_one, n_three);
  }
  return profile;
}

// Sign factor (sigma_{-i})^{delta_{l>=0}} (sigma_j)^{delta_{k<=0}} of the
// orthogonal rectangular sum.
inline int rect_sign_o(int ell, int k, int i, int j) {
  int s = 1;
  if (ell >= 0) s *= sigma(-i);
  if (k <= 0) s *= sigma(j);
  return s;
}

// Coefficient Xi^{l,k}_{i,j} for the gl rectangular sum.
inline Rat xi_gl(const AlgebraSpec& alg, int ell, int k, int i, int j, const Rat& z,
                 const PartitionTriple& part, const LambdaFn& lambda, const Rat& c) {
  return set_product(Fn::g, z, part.part_one.neighbor(ell - 1), c) *
         set_product(Fn::g, part.part_three.neighbor(k), z, c) *
         gamma_right(alg, i, ell, part.part_one, part.part_two, c) *
         gamma_left(alg, k, j, part.part_two, part.part_three, lambda, c);
}

// Coefficient Xi^{l,k}_{i,j} for the orthogonal rectangular sum, written as
// psi_l(z, t_I) phi_k(z, t_III) Gamma^R(t_I, t_II) Gamma^L(t_{I,II}, t_III).
// The equivalent grouping Gamma^R(t_I, t_{II,III}) Gamma^L(t_II, t_III) is
// exposed separately as a cross-check.
inline Rat xi_o(const AlgebraSpec& alg, int ell, int k, const Rat& z, const PartitionTriple& part,
                const LambdaFn& lambda, const Rat& c) {
  return psi(alg, ell, z, part.part_one, c) * phi(alg, k, z, part.part_three, c) *
         gamma_right(alg, 0, alg.n, part.part_one, part.part_two, c) *
         gamma_left(alg, 0, alg.n, part.part_one.merged(part.part_two), part.part_three, lambda, c);
}

inline Rat xi_o_alt(const AlgebraSpec& alg, int ell, int k, const Rat& z, const PartitionTriple& part,
                    const LambdaFn& lambda, const Rat& c) {
  return psi(alg, ell, z, part.part_one, c) * phi(alg, k, z, part.part_three, c) *
         gamma_right(alg, 0, alg.n, part.part_one, part.part_two.merged(part.part_three), c) *
         gamma_left(alg, 0, alg.n, part.part_two, part.part_three, lambda, c);
}

inline Rat xi_coefficient(const AlgebraSpec& alg, int ell, int k, int i, int j, const Rat& z,
                          const PartitionTriple& part, const LambdaFn& lambda, const Rat& c) {
  if (alg.family == Family::GL) return xi_gl(alg, ell, k, i, j, z, part, lambda, c);
  return xi_o(alg, ell, k, z, part, lambda, c);
}

}  // namespace betherec
