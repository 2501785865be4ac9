#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betherec/chain.hpp"
#include "betherec/errors.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

// Zero modes of the monodromy entries and the operators derived from them.
// With the series T_{i,j}(u) = chi_i delta_{ij} + sum_m T_{i,j}[m] (u/c)^{-m-1},
// the zero mode is c^{-1} times the u^{-1} coefficient of the entry.
struct ZeroModeTable {
  int N = 0;
  Idx phys_dim = 0;
  std::vector<SparseMat> modes;    // T_{i,j}[0] at [local(i)*N + local(j)]
  std::vector<SparseMat> leading;  // u^0 coefficient, must be chi_i delta_{ij} Id
  std::map<int, Rat> lambda0;      // lambda_i[0]
  std::map<int, SparseMat> cartan;    // h_i = (T_{i,i}[0] - lambda_i[0]) / chi_i
  std::map<int, SparseMat> color_op;  // t_s = sum_{i=s+1}^n h_i

  const SparseMat& mode_local(int li, int lj) const { return modes[static_cast<std::size_t>(li) * N + lj]; }
};

namespace detail {

// Exact Lagrange interpolation: coefficients of the unique polynomial of
// degree <= nodes.size()-1 through (nodes[m], values[m]).
inline std::vector<Rat> lagrange_coefficients(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
  const std::size_t m = nodes.size();
  std::vector<Rat> coeff(m, Rat(0));
  for (std::size_t a = 0; a < m; ++a) {
    // basis polynomial prod_{b != a} (u - nodes[b]) / (nodes[a] - nodes[b])
    std::vector<Rat> basis{Rat(1)};
    Rat denom = 1;
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      denom *= nodes[a] - nodes[b];
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * nodes[b];
      }
      basis = std::move(next);
    }
    const Rat w = values[a] / denom;
    for (std::size_t d = 0; d < basis.size(); ++d) coeff[d] += basis[d] * w;
  }
  return coeff;
}

}  // namespace detail

// Reconstructs the monodromy as a matrix of rational functions by clearing
// the known denominator d(u) = prod_a (u - xi_a) (gl) resp.
// prod_a (u - xi_a)(u - xi_a + c kappa_n) (orthogonal), interpolating the
// polynomial numerator entrywise, and reading off the expansion at infinity.
// A holdout point certifies the reconstruction.
inline ZeroModeTable compute_zero_modes(const Chain& chain) {
  const AlgebraSpec& alg = chain.algebra();
  const int N = alg.N();
  const Idx pd = chain.phys_dim();
  const int degree = (alg.family == Family::GL ? 1 : 2) * chain.sites();
  const Rat& c = chain.c();

  auto denominator = [&](const Rat& u) {
    Rat d = 1;
    for (const Rat& x : chain.xi()) {
      d *= u - x;
      if (alg.family == Family::O_ODD) d *= u - x + c * alg.kappa();
    }
    return d;
  };
  // d(u) is monic; we need its second-highest coefficient for the 1/u term.
  Rat dsub = 0;
  for (const Rat& x : chain.xi()) {
    dsub += -x;
    if (alg.family == Family::O_ODD) dsub += -x + c * alg.kappa();
  }

  // degree+1 nodes plus one holdout, all clear of the poles
  std::vector<Rat> nodes;
  long probe = 211;
  while (static_cast<int>(nodes.size()) < degree + 2) {
    Rat u(probe++);
    if (chain.spectral_point_ok(u)) nodes.push_back(u);
  }
  const Rat holdout = nodes.back();
  nodes.pop_back();

  std::vector<SparseMat> scaled;  // d(u) * full monodromy at each node
  scaled.reserve(nodes.size());
  for (const Rat& u : nodes) scaled.push_back(chain.full_monodromy(u).scaled(denominator(u)));

  // Interpolate entrywise.  Collect the union of supports first.
  const Idx dim = static_cast<Idx>(N) * pd;
  SparseMat top(dim, dim), sub(dim, dim);  // u^degree and u^{degree-1} coefficients
  std::vector<SparseMat> all_coeffs(static_cast<std::size_t>(degree) + 1, SparseMat(dim, dim));
  for (Idx r = 0; r < dim; ++r) {
    std::map<Idx, std::vector<Rat>> columns;
    for (std::size_t m = 0; m < nodes.size(); ++m)
      for (const auto& [col, val] : scaled[m].row(r)) {
        auto it = columns.try_emplace(col, std::vector<Rat>(nodes.size(), Rat(0))).first;
        it->second[m] = val;
      }
    for (const auto& [col, vals] : columns) {
      const auto coeff = detail::lagrange_coefficients(nodes, vals);
      for (std::size_t d = 0; d < coeff.size(); ++d) all_coeffs[d].add(r, col, coeff[d]);
    }
  }
  top = all_coeffs[degree];
  sub = degree >= 1 ? all_coeffs[degree - 1] : SparseMat(dim, dim);

  // Holdout consistency: the interpolated polynomial must reproduce a fresh
  // sample exactly.
  {
    SparseMat eval(dim, dim);
    Rat power = 1;
    for (int d = 0; d <= degree; ++d) {
      eval.axpy(power, all_coeffs[d]);
      power *= holdout;
    }
    const SparseMat direct = chain.full_monodromy(holdout).scaled(denominator(holdout));
    if (!(eval == direct)) throw InterpolationError("zero-mode reconstruction failed holdout check");
  }

  // T(u) = P(u)/d(u) = top + (sub - dsub * top)/u + O(u^{-2});
  // the constant part must be the twist, the zero mode is the 1/u part / c.
  ZeroModeTable table;
  table.N = N;
  table.phys_dim = pd;
  table.leading.assign(static_cast<std::size_t>(N) * N, SparseMat(pd, pd));
  table.modes.assign(static_cast<std::size_t>(N) * N, SparseMat(pd, pd));
  SparseMat mode_full = sub - top.scaled(dsub);
  for (Idx row = 0; row < dim; ++row) {
    const int li = static_cast<int>(row / pd);
    const Idx pr = row % pd;
    for (const auto& [col, val] : top.row(row))
      table.leading[static_cast<std::size_t>(li) * N + static_cast<int>(col / pd)].add(pr, col % pd, val);
    for (const auto& [col, val] : mode_full.row(row))
      table.modes[static_cast<std::size_t>(li) * N + static_cast<int>(col / pd)].add(pr, col % pd,
                                                                                     val / c);
  }

  const Idx vac = chain.vacuum_index();
  for (int i = alg.index_min(); i <= alg.index_max(); ++i) {
    const int li = alg.index_to_local(i);
    table.lambda0[i] = table.modes[static_cast<std::size_t>(li) * N + li].at(vac, vac);
    SparseMat h = table.modes[static_cast<std::size_t>(li) * N + li];
    h.axpy(-table.lambda0[i], SparseMat::identity(pd));
    table.cartan.emplace(i, h.scaled(chain.chi(i).inv()));
  }
  for (int s = alg.color_min(); s <= alg.color_max(); ++s) {
    SparseMat t(pd, pd);
    for (int i = s + 1; i <= alg.n; ++i) t.axpy(Rat(1), table.cartan.at(i));
    table.color_op.emplace(s, std::move(t));
  }
  return table;
}

// Commutators of the zero modes with the monodromy entries, checked as exact
// operator identities for every index quadruple:
//   gl: [T_{i,j}[0], T_{k,l}(v)] = chi_i d_{i,l} T_{k,j}(v) - chi_j d_{k,j} T_{i,l}(v)
//   o:  [T_{i,j}[0], T_{k,l}(v)] = chi_i (d_{i,l} T_{k,j}(v) - d_{l,-j} T_{k,-i}(v))
//                                 - chi_j (d_{k,j} T_{i,l}(v) - d_{k,-i} T_{-j,l}(v)).
// wrong_twist doubles the twists in the right-hand side (negative control).
inline std::optional<std::string> zero_mode_commutator_defect(const Chain& chain, const ZeroModeTable& table,
                                                              const Rat& v, bool wrong_twist = false) {
  const AlgebraSpec& alg = chain.algebra();
  const Idx pd = chain.phys_dim();
  const Rat factor = wrong_twist ? Rat(2) : Rat(1);
  for (int i = alg.index_min(); i <= alg.index_max(); ++i)
    for (int j = alg.index_min(); j <= alg.index_max(); ++j) {
      const SparseMat& mode = table.mode_local(alg.index_to_local(i), alg.index_to_local(j));
      for (int k = alg.index_min(); k <= alg.index_max(); ++k)
        for (int l = alg.index_min(); l <= alg.index_max(); ++l) {
          const SparseMat lhs = mode.commutator(chain.entry(k, l, v));
          SparseMat rhs(pd, pd);
          if (alg.family == Family::GL) {
            if (i == l) rhs.axpy(factor * chain.chi(i), chain.entry(k, j, v));
            if (k == j) rhs.axpy(-factor * chain.chi(j), chain.entry(i, l, v));
          } else {
            if (i == l) rhs.axpy(factor * chain.chi(i), chain.entry(k, j, v));
            if (l == -j) rhs.axpy(-factor * chain.chi(i), chain.entry(k, -i, v));
            if (k == j) rhs.axpy(-factor * chain.chi(j), chain.entry(i, l, v));
            if (k == -i) rhs.axpy(factor * chain.chi(j), chain.entry(-j, l, v));
          }
          if (!(lhs == rhs))
            return "commutator mismatch at (i,j,k,l)=(" + std::to_string(i) + "," + std::to_string(j) +
                   "," + std::to_string(k) + "," + std::to_string(l) + ")";
        }
    }
  return std::nullopt;
}

// The lowering-mode specializations, coded from their own displayed forms:
//   gl: [T_{l+1,l}[0], T_{i,j}(z)] = chi_{l+1} d_{l+1,j} T_{i,l}(z) - chi_l d_{l,i} T_{l+1,j}(z)
//   o:  [T_{l+1,l}[0], T_{i,j}(z)] = chi_{l+1} (d_{l,j-1} - d_{l,-j}) T_{i,j-1}(z)
//                                   - chi_l (d_{l,i} - d_{l,-i-1}) T_{i+1,j}(z).
inline std::optional<std::string> lowering_mode_commutator_defect(const Chain& chain,
                                                                  const ZeroModeTable& table, const Rat& v) {
  const AlgebraSpec& alg = chain.algebra();
  const Idx pd = chain.phys_dim();
  for (int ell = alg.color_min(); ell <= alg.color_max(); ++ell) {
    const SparseMat& mode = table.mode_local(alg.index_to_local(ell + 1), alg.index_to_local(ell));
    for (int i = alg.index_min(); i <= alg.index_max(); ++i)
      for (int j = alg.index_min(); j <= alg.index_max(); ++j) {
        const SparseMat lhs = mode.commutator(chain.entry(i, j, v));
        SparseMat rhs(pd, pd);
        if (alg.family == Family::GL) {
          if (ell + 1 == j) rhs.axpy(chain.chi(ell + 1), chain.entry(i, ell, v));
          if (ell == i) rhs.axpy(-chain.chi(ell), chain.entry(ell + 1, j, v));
        } else {
          const int up = (ell == j - 1 ? 1 : 0) - (ell == -j ? 1 : 0);
          if (up != 0 && alg.index_legal(j - 1))
            rhs.axpy(Rat(up) * chain.chi(ell + 1), chain.entry(i, j - 1, v));
          const int dn = (ell == i ? 1 : 0) - (ell == -i - 1 ? 1 : 0);
          if (dn != 0 && alg.index_legal(i + 1))
            rhs.axpy(-Rat(dn) * chain.chi(ell), chain.entry(i + 1, j, v));
        }
        if (!(lhs == rhs))
          return "lowering-mode mismatch at l=" + std::to_string(ell) + ", (i,j)=(" + std::to_string(i) +
                 "," + std::to_string(j) + ")";
      }
  }
  return std::nullopt;
}

// Adjoint weights of the Cartan operators:
//   gl: [h_i, T_{k,l}(v)] = (d_{i,l} - d_{i,k}) T_{k,l}(v)
//   o:  [h_i, T_{k,l}(v)] = (d_{i,l} - d_{i,k} + d_{i,-k} - d_{i,-l}) T_{k,l}(v).
inline std::optional<std::string> cartan_weight_defect(const Chain& chain, const ZeroModeTable& table,
                                                       const Rat& v) {
  const AlgebraSpec& alg = chain.algebra();
  const SparseVec vac = chain.vacuum();
  for (int i = alg.index_min(); i <= alg.index_max(); ++i) {
    if (!table.cartan.at(i).apply(vac).is_zero())
      return "cartan operator " + std::to_string(i) + " does not annihilate the vacuum";
    for (int k = alg.index_min(); k <= alg.index_max(); ++k)
      for (int l = alg.index_min(); l <= alg.index_max(); ++l) {
        int weight = (i == l ? 1 : 0) - (i == k ? 1 : 0);
        if (alg.family == Family::O_ODD) weight += (i == -k ? 1 : 0) - (i == -l ? 1 : 0);
        const SparseMat lhs = table.cartan.at(i).commutator(chain.entry(k, l, v));
        if (!(lhs == chain.entry(k, l, v).scaled(Rat(weight))))
          return "cartan weight mismatch at i=" + std::to_string(i) + ", (k,l)=(" + std::to_string(k) +
                 "," + std::to_string(l) + ")";
      }
  }
  return std::nullopt;
}

}  // namespace betherec
