#pragma once

#include <cstdlib>
#include <map>
#include <string>

#include "betherec/bethe.hpp"
#include "betherec/coefficients.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/scalar_functions.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

// Boundary and low-rank forms of the rectangular sums, each coded from its
// own closed expression.  They intentionally do not share the general
// evaluator's code path, so agreement is a real cross-check.  Sub-vectors are
// still taken from the canonical constructor.

namespace detail {

inline void record_term(std::map<std::string, Rat>* terms, int i, int j, const ColoredSets& two,
                        const Rat& coeff) {
  if (!terms) return;
  const std::string key =
      "i=" + std::to_string(i) + " j=" + std::to_string(j) + " two=" + BetheBuilder::canonical_str(two);
  auto [it, fresh] = terms->try_emplace(key, coeff);
  if (!fresh) it->second += coeff;
}

}  // namespace detail

// gl window (l, n): only the last column T_{i,n} survives and the partition
// walks one singleton per color down from l-1 to i.
inline SparseVec rhs_last_column_gl(const BetheBuilder& b, const ColoredSets& t, int ell, const Rat& z,
                                    std::map<std::string, Rat>* terms = nullptr) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::GL) throw FamilyError("last-column slice is a gl formula");
  const Rat c = b.c();
  const LambdaFn lam = b.provider().lambda_fn();
  const Rat mu_val = mu(alg, ell, alg.n, z, t, lam, c);
  SparseVec out(b.provider().dim());
  for (int i = 1; i <= ell; ++i) {
    CardinalityProfile profile;
    profile.color_min = alg.color_min();
    for (int s = alg.color_min(); s <= alg.color_max(); ++s)
      profile.required.emplace_back(s >= i && s <= ell - 1 ? 1 : 0, 0);
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      Rat coeff = set_product(Fn::g, z, part.part_one.neighbor(ell - 1), c) *
                  gamma_right(alg, i, ell, part.part_one, part.part_two, c) / mu_val;
      detail::record_term(terms, i, alg.n, part.part_two, coeff);
      out.axpy(coeff, b.provider().entry(i, alg.n, z).apply(b.build(part.part_two)));
    }
  }
  return out;
}

// gl window (1, k): only the first row T_{1,j} survives.
inline SparseVec rhs_first_row_gl(const BetheBuilder& b, const ColoredSets& t, int k, const Rat& z,
                                  std::map<std::string, Rat>* terms = nullptr) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::GL) throw FamilyError("first-row slice is a gl formula");
  const Rat c = b.c();
  const LambdaFn lam = b.provider().lambda_fn();
  const Rat mu_val = mu(alg, 1, k, z, t, lam, c);
  SparseVec out(b.provider().dim());
  for (int j = k; j <= alg.n; ++j) {
    CardinalityProfile profile;
    profile.color_min = alg.color_min();
    for (int s = alg.color_min(); s <= alg.color_max(); ++s)
      profile.required.emplace_back(0, s >= k && s <= j - 1 ? 1 : 0);
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      Rat coeff = set_product(Fn::g, part.part_three.neighbor(k), z, c) *
                  gamma_left(alg, k, j, part.part_two, part.part_three, lam, c) / mu_val;
      detail::record_term(terms, 1, j, part.part_two, coeff);
      out.axpy(coeff, b.provider().entry(1, j, z).apply(b.build(part.part_two)));
    }
  }
  return out;
}

// Orthogonal window (-n+1, n): entries T_{-n,n} and T_{-n+1,n}, with only the
// top color partitioned.
inline SparseVec rhs_corner_column_o(const BetheBuilder& b, const ColoredSets& t, const Rat& z,
                                     std::map<std::string, Rat>* terms = nullptr) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD) throw FamilyError("corner-column slice is an orthogonal formula");
  const int n = alg.n;
  const Rat c = b.c();
  const LambdaFn lam = b.provider().lambda_fn();
  const Rat mu_val = mu(alg, -n + 1, n, z, t, lam, c);
  const Rat z_top = shifted(z, n - 1, c);
  SparseVec out(b.provider().dim());
  for (int i = -n; i <= -n + 1; ++i) {
    CardinalityProfile profile;
    profile.color_min = 0;
    for (int s = 0; s <= n - 1; ++s)
      profile.required.emplace_back(s == n - 1 ? theta(-i - n) : 0, 0);
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      const ParamSet& one = part.part_one.at(n - 1);
      const ParamSet& two = part.part_two.at(n - 1);
      Rat coeff = set_product(Fn::g, one, z_top, c) *
                  omega(Side::R, n - 1, one, two, t.neighbor(n - 2), ParamSet::empty_set(), alg, c) /
                  mu_val;
      detail::record_term(terms, i, n, part.part_two, coeff);
      out.axpy(coeff, b.provider().entry(i, n, z).apply(b.build(part.part_two)));
    }
  }
  return out;
}

// Orthogonal window (-n, n-1): entries T_{-n,n-1} and T_{-n,n}.
inline SparseVec rhs_corner_row_o(const BetheBuilder& b, const ColoredSets& t, const Rat& z,
                                  std::map<std::string, Rat>* terms = nullptr) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD) throw FamilyError("corner-row slice is an orthogonal formula");
  const int n = alg.n;
  const Rat c = b.c();
  const LambdaFn lam = b.provider().lambda_fn();
  const Rat mu_val = mu(alg, -n, n - 1, z, t, lam, c);
  SparseVec out(b.provider().dim());
  for (int j = n - 1; j <= n; ++j) {
    CardinalityProfile profile;
    profile.color_min = 0;
    for (int s = 0; s <= n - 1; ++s)
      profile.required.emplace_back(0, s == n - 1 ? theta(j - n) : 0);
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      const ParamSet& three = part.part_three.at(n - 1);
      const ParamSet& two = part.part_two.at(n - 1);
      Rat coeff = set_product(Fn::g, three, z, c) * alpha_product(n - 1, three, lam) *
                  omega(Side::L, n - 1, two, three, t.neighbor(n - 2), ParamSet::empty_set(), alg, c) /
                  mu_val;
      detail::record_term(terms, -n, j, part.part_two, coeff);
      out.axpy(coeff, b.provider().entry(-n, j, z).apply(b.build(part.part_two)));
    }
  }
  return out;
}

// The three o_3 relations (n = 1): the double extension by {z, z_0}, the
// plain extension by z, and the shifted extension by z_0.
inline SparseVec o3_double_extension(const BetheBuilder& b, const ColoredSets& t, const Rat& z) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD || alg.n != 1) throw FamilyError("o_3 relation needs n=1");
  const Rat lam = b.provider().lambda(1, z);
  if (lam.is_zero()) throw ZeroNormalizationError("lambda_1(z) vanishes");
  return b.provider().entry(-1, 1, z).apply(b.build(t)).scaled(Rat(-2) / lam);
}

inline SparseVec o3_plain_extension(const BetheBuilder& b, const ColoredSets& t, const Rat& z) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD || alg.n != 1) throw FamilyError("o_3 relation needs n=1");
  const Rat c = b.c();
  const Rat z0 = shifted(z, 0, c);
  const Rat lam = b.provider().lambda(1, z);
  const ParamSet& t0 = t.at(0);
  const Rat den = lam * set_product(Fn::frak_f, z0, t0, c);
  if (den.is_zero()) throw ZeroNormalizationError("o3 normalization vanishes");
  SparseVec out = b.provider().entry(0, 1, z).apply(b.build(t));
  for (std::size_t a = 0; a < t0.size(); ++a) {
    const ParamSet two = t0.without_index(a);
    ColoredSets reduced = t;
    reduced.set(0, two);
    const Rat coeff = fn_g(z0, t0[a], c) * set_product(Fn::frak_f, t0[a], two, c);
    out.axpy(-coeff, b.provider().entry(-1, 1, z).apply(b.build(reduced)));
  }
  return out.scaled(den.inv());
}

inline SparseVec o3_shifted_extension(const BetheBuilder& b, const ColoredSets& t, const Rat& z) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD || alg.n != 1) throw FamilyError("o_3 relation needs n=1");
  const Rat c = b.c();
  const Rat lam = b.provider().lambda(0, z);
  const ParamSet& t0 = t.at(0);
  const Rat den = lam * set_product(Fn::frak_f, t0, z, c);
  if (den.is_zero()) throw ZeroNormalizationError("o3 normalization vanishes");
  const LambdaFn lamfn = b.provider().lambda_fn();
  SparseVec out = b.provider().entry(-1, 0, z).apply(b.build(t)).scaled(Rat(-1));
  for (std::size_t a = 0; a < t0.size(); ++a) {
    const ParamSet two = t0.without_index(a);
    ColoredSets reduced = t;
    reduced.set(0, two);
    const ParamSet three{t0[a]};
    const Rat coeff = fn_g(z, t0[a], c) * alpha_product(0, three, lamfn) *
                      set_product(Fn::frak_f, two, t0[a], c);
    out.axpy(coeff, b.provider().entry(-1, 1, z).apply(b.build(reduced)));
  }
  return out.scaled(den.inv());
}

// Reduced form of the elementary addition at the top color (l = n-1, plain
// value): every term sits in the last column T_{i,n}.
inline SparseVec rhs_top_color_reduced_o(const BetheBuilder& b, const ColoredSets& t, const Rat& z) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD || alg.n < 2) throw FamilyError("top-color reduction needs o, n>=2");
  const int n = alg.n;
  const Rat c = b.c();
  const Rat lam_z = b.provider().lambda(n, z);
  if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_n(z) vanishes");
  const Rat front = lam_z * set_product(Fn::h, z, t.at(n - 1), c);
  SparseVec out(b.provider().dim());
  for (int i = -n; i <= n - 1; ++i) {
    CardinalityProfile profile;
    profile.color_min = 0;
    for (int s = 0; s <= n - 1; ++s)
      profile.required.emplace_back(s < n - 1 ? theta(s - i) + theta(-i - s - 1) : theta(-i - s - 1), 0);
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      const ColoredSets& one = part.part_one;
      const ColoredSets& two = part.part_two;
      Rat coeff = Rat(sigma(i + 1)) /
                  (front * set_product(Fn::g, z, two.neighbor(n - 2), c) *
                   set_product(Fn::h, two.at(n - 1), z, c));
      for (int s = 0; s <= n - 1; ++s)
        coeff *= set_product_colored(s, /*use_gamma=*/true, one.at(s), two.at(s), alg, c);
      for (int s = 1; s <= n - 1; ++s)
        coeff *= set_product(Fn::h, two.at(s), one.at(s - 1), c) /
                 set_product(Fn::g, one.at(s), two.at(s - 1), c);
      out.axpy(coeff, b.provider().entry(i, n, z).apply(b.build(two)));
    }
  }
  return out;
}

// Reduced form of the shifted addition at the top color (l = n-1): every
// term sits in the bottom row T_{-n,j}, with the sign flip at j = n.
inline SparseVec rhs_top_color_shifted_reduced_o(const BetheBuilder& b, const ColoredSets& t, const Rat& z) {
  const AlgebraSpec& alg = b.algebra();
  if (alg.family != Family::O_ODD || alg.n < 2) throw FamilyError("top-color reduction needs o, n>=2");
  const int n = alg.n;
  const Rat c = b.c();
  const LambdaFn lam = b.provider().lambda_fn();
  const Rat z_top = shifted(z, n - 1, c);
  const Rat z_sub = shifted(z, n - 2, c);
  const Rat lam_z = b.provider().lambda(-n + 1, z);
  if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_{-n+1}(z) vanishes");
  const Rat front = lam_z * set_product(Fn::h, t.at(n - 1), z_top, c);
  SparseVec out(b.provider().dim());
  for (int j = -n + 1; j <= n; ++j) {
    CardinalityProfile profile;
    profile.color_min = 0;
    for (int s = 0; s <= n - 1; ++s)
      profile.required.emplace_back(0, s < n - 1 ? theta(s + j) + theta(j - s - 1) : theta(j - s - 1));
    if (!profile.feasible_on(t)) continue;
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      const ColoredSets& two = part.part_two;
      const ColoredSets& three = part.part_three;
      Rat coeff = Rat(sigma(j)) * Rat(j == n ? -1 : 1) /
                  (front * set_product(Fn::h, z_top, two.at(n - 1), c) *
                   set_product(Fn::g, z_sub, two.neighbor(n - 2), c));
      for (int s = 0; s <= n - 1; ++s)
        coeff *= alpha_product(s, three.at(s), lam) *
                 set_product_colored(s, /*use_gamma=*/true, two.at(s), three.at(s), alg, c);
      for (int s = 1; s <= n - 1; ++s)
        coeff *= set_product(Fn::h, three.at(s), two.at(s - 1), c) /
                 set_product(Fn::g, two.at(s), three.at(s - 1), c);
      out.axpy(coeff, b.provider().entry(-n, j, z).apply(b.build(two)));
    }
  }
  return out;
}

// gl-type rectangular sum evaluated against an arbitrary provider (used for
// the reduction of orthogonal vectors to the upper-left block, where the
// sub-vectors still live on the orthogonal chain).
inline SparseVec rhs_rectangular_gl_over(const BetheBuilder& o_builder, const MonodromyProvider& block,
                                         const ColoredSets& o_sets, int ell, int k, const Rat& z) {
  const AlgebraSpec o_alg = o_builder.algebra();
  if (o_alg.family != Family::O_ODD) throw FamilyError("reduction check needs an orthogonal builder");
  if (!o_sets.at(0).empty()) throw ConfigError("reduction check needs an empty color-0 set");
  const AlgebraSpec gl_alg = block.algebra();
  const Rat c = o_builder.c();
  const LambdaFn lam = block.lambda_fn();
  // repackage colors 1..n-1 as a gl collection
  ColoredSets gl_sets(gl_alg);
  for (int s = 1; s <= gl_alg.n - 1; ++s) gl_sets.set(s, o_sets.at(s));
  const Rat mu_val = mu(gl_alg, ell, k, z, gl_sets, lam, c);
  SparseVec out(block.dim());
  for (int i = 1; i <= ell; ++i)
    for (int j = k; j <= gl_alg.n; ++j) {
      const CardinalityProfile profile = cardinality_profile(gl_alg, ell, k, i, j, gl_sets);
      if (!profile.feasible_on(gl_sets)) continue;
      for (const PartitionTriple& part : enumerate_partitions(gl_sets, profile)) {
        const Rat coeff = xi_gl(gl_alg, ell, k, i, j, z, part, lam, c) / mu_val;
        ColoredSets o_two(o_alg);
        for (int s = 1; s <= gl_alg.n - 1; ++s) o_two.set(s, part.part_two.at(s));
        out.axpy(coeff, block.entry(i, j, z).apply(o_builder.build(o_two)));
      }
    }
  return out;
}

}  // namespace betherec
