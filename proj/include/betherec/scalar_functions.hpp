#pragma once

#include <string>

#include "betherec/algebra.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/rational.hpp"

namespace betherec {

// The four rational functions everything else is built from:
//   f(u,v) = (u-v+c)/(u-v),  g(u,v) = c/(u-v),  h(u,v) = (u-v+c)/c,
//   frak_f(u,v) = (u-v+c/2)/(u-v),
// with f = 1 + g = h*g.  f, g and frak_f have a pole at u = v.

inline Rat fn_f(const Rat& u, const Rat& v, const Rat& c) {
  const Rat d = u - v;
  if (d.is_zero()) throw PoleError("f(u,v) at u=v=" + u.str());
  return (d + c) / d;
}

inline Rat fn_g(const Rat& u, const Rat& v, const Rat& c) {
  const Rat d = u - v;
  if (d.is_zero()) throw PoleError("g(u,v) at u=v=" + u.str());
  return c / d;
}

inline Rat fn_h(const Rat& u, const Rat& v, const Rat& c) { return (u - v + c) / c; }

inline Rat fn_frak_f(const Rat& u, const Rat& v, const Rat& c) {
  const Rat d = u - v;
  if (d.is_zero()) throw PoleError("frak_f(u,v) at u=v=" + u.str());
  return (d + c * half()) / d;
}

// gamma(u,v) = g(u,v)/h(v,u) = c^2 / ((u-v)(v-u+c)).
inline Rat fn_gamma(const Rat& u, const Rat& v, const Rat& c) {
  return fn_g(u, v, c) / fn_h(v, u, c);
}

// 1/g(u,v) = (u-v)/c.  Reciprocal g-factors are multiplied in this form:
// it is exact wherever g is defined and extends by zero to u = v, which is
// the correct limit for partition-sum terms whose coefficient dies when the
// added parameter collides with a surviving one (the extended sets u, v, w
// place one value into adjacent colors, so such collisions are routine).
inline Rat fn_inv_g(const Rat& u, const Rat& v, const Rat& c) { return (u - v) / c; }

enum class Fn { f, g, h, frak_f, gamma, inv_g };

inline Rat rational_fn(Fn kind, const Rat& u, const Rat& v, const Rat& c) {
  switch (kind) {
    case Fn::f: return fn_f(u, v, c);
    case Fn::g: return fn_g(u, v, c);
    case Fn::h: return fn_h(u, v, c);
    case Fn::frak_f: return fn_frak_f(u, v, c);
    case Fn::gamma: return fn_gamma(u, v, c);
    case Fn::inv_g: return fn_inv_g(u, v, c);
  }
  throw IndexError("unknown function kind");
}

// f_s: frak_f for color 0 (orthogonal case only), plain f otherwise.
inline Rat f_colored(int s, const Rat& u, const Rat& v, const AlgebraSpec& alg, const Rat& c) {
  if (!alg.color_legal(s)) throw IndexError("illegal color " + std::to_string(s) + " for " + alg.name());
  if (alg.family == Family::O_ODD && s == 0) return fn_frak_f(u, v, c);
  return fn_f(u, v, c);
}

// gamma_s: frak_f for color 0 (orthogonal), gamma otherwise.
inline Rat gamma_colored(int s, const Rat& u, const Rat& v, const AlgebraSpec& alg, const Rat& c) {
  if (!alg.color_legal(s)) throw IndexError("illegal color " + std::to_string(s) + " for " + alg.name());
  if (alg.family == Family::O_ODD && s == 0) return fn_frak_f(u, v, c);
  return fn_gamma(u, v, c);
}

// Step function and sign factor: theta(m) = 1 iff m >= 0,
// sigma_m = 2*theta(m-1) - 1, so sigma_m = +1 iff m > 0.
inline int theta(long m) { return m >= 0 ? 1 : 0; }
inline int sigma(long m) { return m > 0 ? 1 : -1; }

// Shifted spectral parameter z_s = z - c(s - 1/2).
inline Rat shifted(const Rat& z, int s, const Rat& c) {
  return z - c * (Rat(s) - half());
}

// Products over all pairs of two sets, with the empty-set convention
// f(0-set, anything) = 1.  Scalars are treated as singleton sets.
inline Rat set_product(Fn kind, const ParamSet& a, const ParamSet& b, const Rat& c) {
  Rat p = 1;
  for (const Rat& u : a)
    for (const Rat& v : b) p *= rational_fn(kind, u, v, c);
  return p;
}

inline Rat set_product(Fn kind, const Rat& u, const ParamSet& b, const Rat& c) {
  Rat p = 1;
  for (const Rat& v : b) p *= rational_fn(kind, u, v, c);
  return p;
}

inline Rat set_product(Fn kind, const ParamSet& a, const Rat& v, const Rat& c) {
  Rat p = 1;
  for (const Rat& u : a) p *= rational_fn(kind, u, v, c);
  return p;
}

// Colored set products (needed where gamma_s / f_s enter partition sums).
inline Rat set_product_colored(int s, bool use_gamma, const ParamSet& a, const ParamSet& b,
                               const AlgebraSpec& alg, const Rat& c) {
  Rat p = 1;
  for (const Rat& u : a)
    for (const Rat& v : b)
      p *= use_gamma ? gamma_colored(s, u, v, alg, c) : f_colored(s, u, v, alg, c);
  return p;
}

}  // namespace betherec
