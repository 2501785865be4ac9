#pragma once

#include <map>
#include <string>
#include <vector>

#include "betherec/errors.hpp"
#include "betherec/rational.hpp"
#include "betherec/scalar_functions.hpp"

namespace betherec {

// The scalar identities that drive the inductive proofs of the recurrence
// relations.  Each function returns LHS - RHS, which must be exactly zero at
// every pole-free point.

// g(z,a) * (h(b,a) - f(b,z)/g(b,a)) = g(z,b), the telescoping step used when
// moving the window boundary one color down.
inline Rat identity_g_h_telescope(const Rat& z, const Rat& a, const Rat& b, const Rat& c) {
  const Rat lhs = fn_g(z, a, c) * (fn_h(b, a, c) - fn_f(b, z, c) / fn_g(b, a, c));
  return lhs - fn_g(z, b, c);
}

// f(t,z) - f(z,t)/f(z_1,t) = -g(z_0,t), with z_0 = z + c/2 and z_1 = z - c/2.
inline Rat identity_f_shift_ratio(const Rat& z, const Rat& t, const Rat& c) {
  const Rat lhs = fn_f(t, z, c) - fn_f(z, t, c) / fn_f(shifted(z, 1, c), t, c);
  return lhs + fn_g(shifted(z, 0, c), t, c);
}

// Sym_{y1,y2} [ h(q,y1)/g(y1,x) * g(y1,y2)/h(y2,y1)
//             - h(y1,x)/g(q,y1) * g(y2,y1)/h(y1,y2) ] = 0.
inline Rat identity_sym_gamma_pair(const Rat& q, const Rat& x, const Rat& y1, const Rat& y2, const Rat& c) {
  auto term = [&](const Rat& u, const Rat& v) {
    return fn_h(q, u, c) / fn_g(u, x, c) * fn_g(u, v, c) / fn_h(v, u, c) -
           fn_h(u, x, c) / fn_g(q, u, c) * fn_g(v, u, c) / fn_h(u, v, c);
  };
  return term(y1, y2) + term(y2, y1);
}

// g(z,xbar) * (h(t,xbar) - f(t,z)/g(t,xbar) - h(t,z)) = g(z,t), xbar a pair.
inline Rat identity_two_set_h(const Rat& z, const Rat& t, const Rat& x1, const Rat& x2, const Rat& c) {
  const ParamSet xs{x1, x2};
  const Rat lhs = set_product(Fn::g, z, xs, c) *
                  (set_product(Fn::h, t, xs, c) - fn_f(t, z, c) / set_product(Fn::g, t, xs, c) -
                   fn_h(t, z, c));
  return lhs - fn_g(z, t, c);
}

// Sym_{y1,y2} [ h(y2,z) ( h(y1,xbar)/g(q,y1) * g(y2,y1)/h(y1,y2)
//                       - f(y1,z) h(q,y1)/g(y1,xbar) * g(y1,y2)/h(y2,y1) ) ]
//   = g(z,ybar) h(q,z) / g(z,xbar).
inline Rat identity_sym_two_set_h(const Rat& q, const Rat& z, const Rat& x1, const Rat& x2,
                                  const Rat& y1, const Rat& y2, const Rat& c) {
  const ParamSet xs{x1, x2};
  const ParamSet ys{y1, y2};
  auto term = [&](const Rat& u, const Rat& v) {
    return fn_h(v, z, c) *
           (set_product(Fn::h, u, xs, c) / fn_g(q, u, c) * fn_g(v, u, c) / fn_h(u, v, c) -
            fn_f(u, z, c) * fn_h(q, u, c) / set_product(Fn::g, u, xs, c) * fn_g(u, v, c) / fn_h(v, u, c));
  };
  const Rat lhs = term(y1, y2) + term(y2, y1);
  const Rat rhs = set_product(Fn::g, z, ys, c) * fn_h(q, z, c) / set_product(Fn::g, z, xs, c);
  return lhs - rhs;
}

// Sym_{y1,y2} [ g(y2,z_0)/g(x,y1) * ( frak_f(y1,y2) f(x,y1) f(z,y1)/f(z_1,y1)
//                                   - frak_f(y2,y1) ) ] = g(z,ybar) h(x,z).
inline Rat identity_sym_frakf_shift(const Rat& z, const Rat& x, const Rat& y1, const Rat& y2, const Rat& c) {
  const ParamSet ys{y1, y2};
  const Rat z0 = shifted(z, 0, c);
  const Rat z1 = shifted(z, 1, c);
  auto term = [&](const Rat& u, const Rat& v) {
    return fn_g(v, z0, c) / fn_g(x, u, c) *
           (fn_frak_f(u, v, c) * fn_f(x, u, c) * fn_f(z, u, c) / fn_f(z1, u, c) - fn_frak_f(v, u, c));
  };
  const Rat lhs = term(y1, y2) + term(y2, y1);
  return lhs - set_product(Fn::g, z, ys, c) * fn_h(x, z, c);
}

enum class ScalarIdentity {
  g_h_telescope,
  f_shift_ratio,
  sym_gamma_pair,
  two_set_h,
  sym_two_set_h,
  sym_frakf_shift,
};

inline const std::vector<std::pair<ScalarIdentity, std::string>>& scalar_identity_list() {
  static const std::vector<std::pair<ScalarIdentity, std::string>> ids = {
      {ScalarIdentity::g_h_telescope, "g-h-telescope"},
      {ScalarIdentity::f_shift_ratio, "f-shift-ratio"},
      {ScalarIdentity::sym_gamma_pair, "sym-gamma-pair"},
      {ScalarIdentity::two_set_h, "two-set-h"},
      {ScalarIdentity::sym_two_set_h, "sym-two-set-h"},
      {ScalarIdentity::sym_frakf_shift, "sym-frakf-shift"},
  };
  return ids;
}

// Evaluates LHS - RHS of the named identity on named inputs.  Missing inputs
// raise IndexError; pole hits surface as PoleError for the caller to resample.
inline Rat evaluate_scalar_identity(ScalarIdentity id, const std::map<std::string, Rat>& in, const Rat& c) {
  auto get = [&](const char* name) -> const Rat& {
    auto it = in.find(name);
    if (it == in.end()) throw IndexError(std::string("missing identity input: ") + name);
    return it->second;
  };
  switch (id) {
    case ScalarIdentity::g_h_telescope:
      return identity_g_h_telescope(get("z"), get("a"), get("b"), c);
    case ScalarIdentity::f_shift_ratio:
      return identity_f_shift_ratio(get("z"), get("t"), c);
    case ScalarIdentity::sym_gamma_pair:
      return identity_sym_gamma_pair(get("q"), get("x"), get("y1"), get("y2"), c);
    case ScalarIdentity::two_set_h:
      return identity_two_set_h(get("z"), get("t"), get("x1"), get("x2"), c);
    case ScalarIdentity::sym_two_set_h:
      return identity_sym_two_set_h(get("q"), get("z"), get("x1"), get("x2"), get("y1"), get("y2"), c);
    case ScalarIdentity::sym_frakf_shift:
      return identity_sym_frakf_shift(get("z"), get("x"), get("y1"), get("y2"), c);
  }
  throw IndexError("unknown scalar identity");
}

}  // namespace betherec
