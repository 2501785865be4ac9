#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "betherec/chain.hpp"
#include "betherec/coefficients.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/scalar_functions.hpp"

namespace betherec {

// Transfer-matrix eigenvalue tau(z; t) on an on-shell vector.  For the
// orthogonal family the negative-index eigenvalues are the actual chain
// eigenvalues; both families' expressions are linear in the lambda's, so the
// formula is insensitive to an overall scalar rescaling of the monodromy.
inline Rat tau_eigenvalue(const AlgebraSpec& alg, const Rat& z, const ColoredSets& t,
                          const LambdaFn& lambda, const Rat& c) {
  Rat tau = 0;
  if (alg.family == Family::GL) {
    for (int s = 1; s <= alg.n; ++s)
      tau += lambda(s, z) * set_product(Fn::f, t.neighbor(s), z, c) *
             set_product(Fn::f, z, t.neighbor(s - 1), c);
    return tau;
  }
  tau = lambda(0, z) * set_product(Fn::f, t.at(0), shifted(z, 0, c), c) *
        set_product(Fn::f, z, t.at(0), c);
  for (int s = 1; s <= alg.n; ++s) {
    tau += lambda(s, z) * set_product(Fn::f, t.neighbor(s), z, c) *
           set_product(Fn::f, z, t.neighbor(s - 1), c);
    tau += lambda(-s, z) * set_product(Fn::f, t.neighbor(s - 1), shifted(z, s - 1, c), c) *
           set_product(Fn::f, shifted(z, s, c), t.neighbor(s), c);
  }
  return tau;
}

// LHS - RHS of the Bethe equation for color s with one root per color:
// alpha_s(t^s) = f(t^{s+1}, t^s) / f(t^s, t^{s-1}).
inline Rat bethe_residual(const Chain& chain, const ColoredSets& roots, int s) {
  const AlgebraSpec& alg = chain.algebra();
  const Rat& c = chain.c();
  if (roots.at(s).size() != 1) throw ConfigError("on-shell solving expects one root per color");
  const Rat& t = roots.at(s)[0];
  const Rat rhs = set_product(Fn::f, roots.neighbor(s + 1), t, c) /
                  set_product(Fn::f, t, roots.neighbor(s - 1), c);
  return chain.alpha(s, t) - rhs;
}

struct OnShellSolution {
  ColoredSets roots;
  std::map<int, Rat> chi;       // solved twists
  std::vector<Rat> residuals;   // per color, exactly zero by construction
  std::shared_ptr<Chain> chain; // the re-twisted chain
};

// Chooses the twists so the given generic roots satisfy the Bethe equations
// exactly.  Each equation is linear in the twist ratio chi_s/chi_{s+1}; for
// gl the overall scale is fixed by chi_1 = 1, for o_{2n+1} by chi_0 = 1
// together with chi_i chi_{-i} = 1.
inline OnShellSolution solve_on_shell_twists(const Chain& base, const ColoredSets& roots) {
  const AlgebraSpec& alg = base.algebra();
  const Rat& c = base.c();
  for (int s = alg.color_min(); s <= alg.color_max(); ++s) {
    if (roots.at(s).size() != 1) throw ConfigError("on-shell solving expects one root per color");
    for (const Rat& x : base.xi())
      if (roots.at(s)[0] == x) throw DegenerateRootsError("root collides with an inhomogeneity");
  }
  // Eigenvalues of the untwisted chain carry the xi-dependence; the twist
  // enters lambda_i as a prefactor chi_i.
  Chain untwisted(alg, base.sites(), base.xi(), unit_twists(alg), c);
  auto big_lambda = [&](int i, const Rat& z) { return untwisted.lambda(i, z); };

  std::map<int, Rat> chi;
  auto solve_up = [&](int s, const Rat& chi_s) {
    const Rat& t = roots.at(s)[0];
    const Rat ratio = set_product(Fn::f, roots.neighbor(s + 1), t, c) /
                      set_product(Fn::f, t, roots.neighbor(s - 1), c);
    const Rat denom = big_lambda(s + 1, t) * ratio;
    if (denom.is_zero()) throw DegenerateRootsError("twist equation degenerates at color " + std::to_string(s));
    const Rat chi_next = chi_s * big_lambda(s, t) / denom;
    if (chi_next.is_zero()) throw DegenerateRootsError("solved twist vanishes at color " + std::to_string(s));
    return chi_next;
  };
  if (alg.family == Family::GL) {
    chi[1] = Rat(1);
    for (int s = 1; s <= alg.n - 1; ++s) chi[s + 1] = solve_up(s, chi[s]);
  } else {
    chi[0] = Rat(1);
    for (int s = 0; s <= alg.n - 1; ++s) chi[s + 1] = solve_up(s, chi[s]);
    for (int i = 1; i <= alg.n; ++i) chi[-i] = chi[i].inv();
  }

  OnShellSolution sol;
  sol.roots = roots;
  sol.chi = chi;
  sol.chain = std::make_shared<Chain>(alg, base.sites(), base.xi(), chi, c);
  for (int s = alg.color_min(); s <= alg.color_max(); ++s)
    sol.residuals.push_back(bethe_residual(*sol.chain, roots, s));
  return sol;
}

}  // namespace betherec
