#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "betherec/coefficients.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/provider.hpp"
#include "betherec/scalar_functions.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

// Deliberate coefficient defect for negative controls of the recurrence
// checks: flips the sign of, or shifts, the first partition-sum coefficient.
enum class XiTamper { none, flip_sign, plus_one };

// Constructs off-shell Bethe vectors over a monodromy provider.  The
// canonical construction path uses only the elementary one-color additions
// (window k = l+1, plain spectral parameter); everything else - general
// windows, shifted additions, zero-mode actions - is evaluated from its own
// formula so the cross-checks compare genuinely different computations.
class BetheBuilder {
 public:
  explicit BetheBuilder(const MonodromyProvider& m) : M_(m), alg_(m.algebra()), c_(m.c()) {}

  const AlgebraSpec& algebra() const { return alg_; }
  const MonodromyProvider& provider() const { return M_; }
  const Rat& c() const { return c_; }

  ColoredSets empty_sets() const { return ColoredSets(alg_); }

  // Memoized canonical construction: parameters are consumed colors
  // ascending, values ascending, so the recursion peels the largest value of
  // the highest nonempty color.
  const SparseVec& build(const ColoredSets& t) const {
    const auto key = t.key();
    {
      std::lock_guard<std::recursive_mutex> lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    SparseVec v(M_.dim());
    if (t.total_size() == 0) {
      v = M_.vacuum();
    } else {
      int color = alg_.color_max();
      while (t.at(color).empty()) --color;
      const ParamSet& s = t.at(color);
      std::size_t arg = 0;
      for (std::size_t a = 1; a < s.size(); ++a)
        if (s[arg] < s[a]) arg = a;
      ColoredSets base = t;
      base.set(color, s.without_index(arg));
      v = add_parameter(base, color, s[arg]);
    }
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return memo_.emplace(std::move(key), std::move(v)).first->second;
  }

  // Elementary addition of the value z to the color-l set, written as a sum
  // of monodromy entries from the column window (i <= l, j >= l+1) acting on
  // vectors without z.
  SparseVec add_parameter(const ColoredSets& t, int ell, const Rat& z) const {
    if (!alg_.color_legal(ell)) throw IndexError("illegal color " + std::to_string(ell));
    if (t.at(ell).contains(z)) throw PoleError("parameter already present in color " + std::to_string(ell));
    if (alg_.family == Family::GL) return add_gl(t, ell, z);
    if (ell >= 1) return add_o_positive(t, ell, z);
    return add_o_zero(t, z);
  }

  // Orthogonal-only second route: extends the color-l set by the shifted
  // value z_l = z - c(l-1/2), expanding over the row window i <= -l-1.
  SparseVec add_shifted(const ColoredSets& t, int ell, const Rat& z) const {
    if (alg_.family != Family::O_ODD) throw FamilyError("shifted additions exist only for o_{2n+1}");
    if (!alg_.color_legal(ell)) throw IndexError("illegal color " + std::to_string(ell));
    if (t.at(ell).contains(shifted(z, ell, c_)))
      throw PoleError("shifted parameter already present in color " + std::to_string(ell));
    if (ell >= 1) return add_o_shifted_positive(t, ell, z);
    return add_o_shifted_zero(t, z);
  }

  // Set extension performed by the window operation (l,k) at spectral
  // parameter z: plain values, shifted values, or both, color by color.
  ColoredSets zed_sets(const ColoredSets& t, int ell, int k, const Rat& z) const {
    validate_window(ell, k);
    ColoredSets out = t;
    auto add_plain = [&](int s) { out.set(s, out.at(s).with(z)); };
    auto add_shift = [&](int s) { out.set(s, out.at(s).with(shifted(z, s, c_))); };
    if (alg_.family == Family::GL || ell >= 0) {
      for (int s = ell; s <= k - 1; ++s) add_plain(s);
    } else if (k <= 0) {
      for (int s = -k; s <= -ell - 1; ++s) add_shift(s);
    } else if (-ell <= k) {
      for (int s = 0; s <= -ell - 1; ++s) {
        add_plain(s);
        add_shift(s);
      }
      for (int s = -ell; s <= k - 1; ++s) add_plain(s);
    } else {
      for (int s = 0; s <= k - 1; ++s) {
        add_plain(s);
        add_shift(s);
      }
      for (int s = k; s <= -ell - 1; ++s) add_shift(s);
    }
    return out;
  }

  const SparseVec& zed(const ColoredSets& t, int ell, int k, const Rat& z) const {
    return build(zed_sets(t, ell, k, z));
  }

  // Right-hand side of the rectangular relation for the window (l,k):
  // (1/mu) sum_{i,j} sum_part Xi * sign * T_{i,j}(z) B(t_II), with infeasible
  // (i,j) discarded.  Coefficients are optionally exported per term for
  // slice-by-slice comparisons.
  SparseVec rhs_rectangular(const ColoredSets& t, int ell, int k, const Rat& z,
                            XiTamper tamper = XiTamper::none,
                            std::map<std::string, Rat>* terms = nullptr) const {
    validate_window(ell, k);
    const LambdaFn lam = M_.lambda_fn();
    const Rat mu_val = mu(alg_, ell, k, z, t, lam, c_);
    SparseVec out(M_.dim());
    bool first = true;
    const int imin = alg_.family == Family::GL ? 1 : -alg_.n;
    for (int i = imin; i <= ell; ++i)
      for (int j = k; j <= alg_.n; ++j) {
        const CardinalityProfile profile = cardinality_profile(alg_, ell, k, i, j, t);
        if (!profile.feasible_on(t)) continue;  // discard rule
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          Rat coeff = alg_.family == Family::GL
                          ? xi_gl(alg_, ell, k, i, j, z, part, lam, c_)
                          : xi_o(alg_, ell, k, z, part, lam, c_) * Rat(rect_sign_o(ell, k, i, j));
          coeff /= mu_val;
          if (first) {
            if (tamper == XiTamper::flip_sign) coeff = -coeff;
            if (tamper == XiTamper::plus_one) coeff += Rat(1);
            first = false;
          }
          if (terms) {
            const std::string key = "i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                    " two=" + canonical_str(part.part_two);
            auto [it, fresh] = terms->try_emplace(key, coeff);
            if (!fresh) it->second += coeff;
          }
          out.axpy(coeff, M_.entry(i, j, z).apply(build(part.part_two)));
        }
      }
    return out;
  }

  // Partition sum for the action of the lowering zero mode attached to color
  // l; the twists enter explicitly, so they are passed by the caller.
  SparseVec zero_mode_action_sum(const ColoredSets& t, int ell, const Rat& chi_low,
                                 const Rat& chi_high) const {
    if (!alg_.color_legal(ell)) throw IndexError("illegal color " + std::to_string(ell));
    const LambdaFn lam = M_.lambda_fn();
    CardinalityProfile profile;
    profile.color_min = alg_.color_min();
    for (int s = alg_.color_min(); s <= alg_.color_max(); ++s)
      profile.required.emplace_back(s == ell ? 1 : 0, 0);
    SparseVec out(M_.dim());
    if (!profile.feasible_on(t)) return out;  // empty set: zero action
    for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
      const ParamSet& one = part.part_one.at(ell);
      const ParamSet& two = part.part_two.at(ell);
      const Rat term = chi_high * alpha_product(ell, one, lam) *
                           omega(Side::L, ell, two, one, t.neighbor(ell - 1), t.neighbor(ell + 1), alg_, c_) -
                       chi_low * omega(Side::R, ell, one, two, t.neighbor(ell - 1), t.neighbor(ell + 1), alg_, c_);
      ColoredSets reduced = t;
      reduced.set(ell, two);
      out.axpy(term, build(reduced));
    }
    return out;
  }

  static std::string canonical_str(const ColoredSets& t) {
    std::string s = "(";
    const auto key = t.key();
    for (std::size_t color = 0; color < key.size(); ++color) {
      if (color) s += ";";
      s += "{";
      for (std::size_t a = 0; a < key[color].size(); ++a) {
        if (a) s += ",";
        s += key[color][a].str();
      }
      s += "}";
    }
    return s + ")";
  }

 private:
  void validate_window(int ell, int k) const {
    const int lo = alg_.family == Family::GL ? 1 : -alg_.n;
    if (ell < lo || ell >= k || k > alg_.n) throw IndexError("illegal window (l,k)");
  }

  SparseVec add_gl(const ColoredSets& t, int ell, const Rat& z) const {
    const LambdaFn lam = M_.lambda_fn();
    const Rat lam_z = M_.lambda(ell + 1, z);
    if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_{l+1}(z) vanishes");
    const Rat hh = set_product(Fn::h, z, t.at(ell), c_) * set_product(Fn::h, t.at(ell), z, c_);
    SparseVec out(M_.dim());
    for (int i = 1; i <= ell; ++i)
      for (int j = ell + 1; j <= alg_.n; ++j) {
        CardinalityProfile profile;
        profile.color_min = alg_.color_min();
        for (int s = alg_.color_min(); s <= alg_.color_max(); ++s)
          profile.required.emplace_back(s >= i && s <= ell - 1 ? 1 : 0, s >= ell + 1 && s <= j - 1 ? 1 : 0);
        if (!profile.feasible_on(t)) continue;
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          const ColoredSets& one = part.part_one;
          const ColoredSets& two = part.part_two;
          const ColoredSets& three = part.part_three;
          const Rat den = lam_z * set_product(Fn::g, z, two.neighbor(ell - 1), c_) * hh *
                          set_product(Fn::g, two.neighbor(ell + 1), z, c_);
          const Rat coeff = gamma_right(alg_, i, ell, one, two, c_) *
                            gamma_left(alg_, ell + 1, j, two, three, lam, c_) / den;
          out.axpy(coeff, M_.entry(i, j, z).apply(build(two)));
        }
      }
    return out;
  }

  SparseVec add_o_positive(const ColoredSets& t, int ell, const Rat& z) const {
    const LambdaFn lam = M_.lambda_fn();
    const Rat lam_z = M_.lambda(ell + 1, z);
    if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_{l+1}(z) vanishes");
    const Rat den = lam_z * set_product(Fn::g, z, t.neighbor(ell - 1), c_) *
                    set_product(Fn::h, t.at(ell), z, c_) * set_product(Fn::h, z, t.at(ell), c_) *
                    set_product(Fn::g, t.neighbor(ell + 1), z, c_);
    if (den.is_zero()) throw ZeroNormalizationError("elementary denominator vanishes");
    SparseVec out(M_.dim());
    for (int i = -alg_.n; i <= ell; ++i)
      for (int j = ell + 1; j <= alg_.n; ++j) {
        CardinalityProfile profile;
        profile.color_min = alg_.color_min();
        for (int s = alg_.color_min(); s <= alg_.color_max(); ++s) {
          const int n_one = s < ell ? theta(s - i) + theta(-i - s - 1) : theta(-i - s - 1);
          const int n_three = s < ell + 1 ? 0 : theta(j - s - 1);
          profile.required.emplace_back(n_one, n_three);
        }
        if (!profile.feasible_on(t)) continue;
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          const ColoredSets& one = part.part_one;
          const ColoredSets& two = part.part_two;
          const ColoredSets& three = part.part_three;
          const Rat coeff = Rat(sigma(i + 1)) * set_product(Fn::g, z, one.neighbor(ell - 1), c_) *
                            set_product(Fn::h, one.at(ell), z, c_) *
                            set_product(Fn::g, three.neighbor(ell + 1), z, c_) *
                            gamma_right(alg_, std::max(i, 0), std::max(ell, std::abs(i)), one, two, c_) *
                            gamma_left(alg_, ell + 1, j, one.merged(two), three, lam, c_) / den;
          out.axpy(coeff, M_.entry(i, j, z).apply(build(two)));
        }
      }
    return out;
  }

  SparseVec add_o_zero(const ColoredSets& t, const Rat& z) const {
    const LambdaFn lam = M_.lambda_fn();
    const Rat lam_z = M_.lambda(1, z);
    if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_1(z) vanishes");
    const Rat z0 = shifted(z, 0, c_);
    const Rat den = lam_z * set_product(Fn::g, z0, t.at(0), c_) * set_product(Fn::h, z, t.at(0), c_) *
                    set_product(Fn::g, t.neighbor(1), z, c_);
    if (den.is_zero()) throw ZeroNormalizationError("elementary denominator vanishes");
    SparseVec out(M_.dim());
    for (int i = -alg_.n; i <= 0; ++i)
      for (int j = 1; j <= alg_.n; ++j) {
        CardinalityProfile profile;
        profile.color_min = 0;
        for (int s = 0; s <= alg_.n - 1; ++s)
          profile.required.emplace_back(theta(-i - s - 1), s == 0 ? 0 : theta(j - s - 1));
        if (!profile.feasible_on(t)) continue;
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          const ColoredSets& one = part.part_one;
          const ColoredSets& two = part.part_two;
          const ColoredSets& three = part.part_three;
          const Rat coeff = Rat(sigma(i + 1)) * set_product(Fn::g, z0, one.at(0), c_) *
                            set_product(Fn::g, three.neighbor(1), z, c_) *
                            gamma_right(alg_, 0, -i, one, two, c_) *
                            gamma_left(alg_, 1, j, one.merged(two), three, lam, c_) / den;
          out.axpy(coeff, M_.entry(i, j, z).apply(build(two)));
        }
      }
    return out;
  }

  SparseVec add_o_shifted_positive(const ColoredSets& t, int ell, const Rat& z) const {
    const LambdaFn lam = M_.lambda_fn();
    const Rat lam_z = M_.lambda(-ell, z);
    if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_{-l}(z) vanishes");
    const Rat zl = shifted(z, ell, c_);
    const Rat zl_up = shifted(z, ell + 1, c_);
    const Rat zl_dn = shifted(z, ell - 1, c_);
    const Rat den = lam_z * set_product(Fn::g, t.neighbor(ell + 1), zl_up, c_) *
                    set_product(Fn::h, t.at(ell), zl, c_) * set_product(Fn::h, zl, t.at(ell), c_) *
                    set_product(Fn::g, zl_dn, t.neighbor(ell - 1), c_);
    if (den.is_zero()) throw ZeroNormalizationError("shifted denominator vanishes");
    SparseVec out(M_.dim());
    for (int i = -alg_.n; i <= -ell - 1; ++i)
      for (int j = -ell; j <= alg_.n; ++j) {
        CardinalityProfile profile;
        profile.color_min = 0;
        for (int s = 0; s <= alg_.n - 1; ++s) {
          const int n_one = s < ell + 1 ? 0 : theta(-i - s - 1);
          const int n_three = s < ell ? theta(s + j) + theta(j - s - 1) : theta(j - s - 1);
          profile.required.emplace_back(n_one, n_three);
        }
        if (!profile.feasible_on(t)) continue;
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          const ColoredSets& one = part.part_one;
          const ColoredSets& two = part.part_two;
          const ColoredSets& three = part.part_three;
          Rat coeff = Rat(sigma(j)) * set_product(Fn::g, one.neighbor(ell + 1), zl_up, c_) *
                      set_product(Fn::h, zl, three.at(ell), c_) *
                      set_product(Fn::g, zl_dn, three.neighbor(ell - 1), c_) *
                      gamma_right(alg_, ell + 1, -i, one, two.merged(three), c_) *
                      gamma_left(alg_, std::max(-j, 0), std::max(ell, std::abs(j)), two, three, lam, c_) / den;
          if (j >= ell + 1) coeff = -coeff;
          out.axpy(coeff, M_.entry(i, j, z).apply(build(two)));
        }
      }
    return out;
  }

  SparseVec add_o_shifted_zero(const ColoredSets& t, const Rat& z) const {
    const LambdaFn lam = M_.lambda_fn();
    const Rat lam_z = M_.lambda(0, z);
    if (lam_z.is_zero()) throw ZeroNormalizationError("lambda_0(z) vanishes");
    const Rat z1 = shifted(z, 1, c_);
    const Rat den = lam_z * set_product(Fn::g, t.neighbor(1), z1, c_) *
                    set_product(Fn::g, z, t.at(0), c_) / set_product(Fn::g, z1, t.at(0), c_);
    if (den.is_zero()) throw ZeroNormalizationError("shifted denominator vanishes");
    SparseVec out(M_.dim());
    for (int i = -alg_.n; i <= -1; ++i)
      for (int j = 0; j <= alg_.n; ++j) {
        CardinalityProfile profile;
        profile.color_min = 0;
        for (int s = 0; s <= alg_.n - 1; ++s)
          profile.required.emplace_back(s == 0 ? 0 : theta(-i - s - 1), theta(j - s - 1));
        if (!profile.feasible_on(t)) continue;
        for (const PartitionTriple& part : enumerate_partitions(t, profile)) {
          const ColoredSets& one = part.part_one;
          const ColoredSets& two = part.part_two;
          const ColoredSets& three = part.part_three;
          const Rat coeff = Rat(sigma(j)) * set_product(Fn::g, one.neighbor(1), z1, c_) *
                            set_product(Fn::g, z, three.at(0), c_) *
                            gamma_right(alg_, 1, -i, one, two.merged(three), c_) *
                            gamma_left(alg_, 0, j, two, three, lam, c_) / den;
          out.axpy(coeff, M_.entry(i, j, z).apply(build(two)));
        }
      }
    return out;
  }

  const MonodromyProvider& M_;
  AlgebraSpec alg_;
  Rat c_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::vector<std::vector<Rat>>, SparseVec> memo_;
};

// Explicit product form of the one-color creation operator on a rank-one
// window {m, m+1}: prod_a T_{m,m+1}(t_a) normalized by lambda_{m+1}(t) and
// the mutual h-factors.  Applied to the vacuum this reproduces the one-color
// Bethe vector.
inline SparseMat pre_bethe_rank1(const MonodromyProvider& m, int window_lo, const ParamSet& params) {
  SparseMat op = SparseMat::identity(m.dim());
  Rat norm = 1;
  const Rat c = m.c();
  for (std::size_t a = 0; a < params.size(); ++a) {
    op = m.entry(window_lo, window_lo + 1, params[a]).mul(op);
    const Rat lam = m.lambda(window_lo + 1, params[a]);
    if (lam.is_zero()) throw ZeroNormalizationError("lambda vanishes at a creation argument");
    norm *= lam;
    for (std::size_t b = a + 1; b < params.size(); ++b)
      norm *= fn_h(params[a], params[b], c) * fn_h(params[b], params[a], c);
  }
  if (norm.is_zero()) throw ZeroNormalizationError("rank-1 creation normalization vanishes");
  return op.scaled(norm.inv());
}

// Creation operator for the three-index window {-1,0,1} of an orthogonal
// monodromy, defined by the same recursion that adds one color-0 parameter:
//   C({t,z}) = ( T_{0,1}(z) C(t)
//              - sum_{|I|=1} g(z_0,I) frak_f(I,II) T_{-1,1}(z) C(II) )
//              / ( lambda_1(z) frak_f(z_0,t) ).
inline SparseMat pre_bethe_o3_window(const MonodromyProvider& m, const ParamSet& params) {
  if (m.algebra().family != Family::O_ODD)
    throw FamilyError("the {-1,0,1} window needs an orthogonal monodromy");
  const Rat c = m.c();
  if (params.empty()) return SparseMat::identity(m.dim());
  const ParamSet sorted = params.sorted();
  const Rat z = sorted[sorted.size() - 1];
  const ParamSet rest = sorted.without_index(sorted.size() - 1);
  const Rat z0 = shifted(z, 0, c);
  const Rat lam = m.lambda(1, z);
  if (lam.is_zero()) throw ZeroNormalizationError("lambda_1(z) vanishes");
  const Rat den = lam * set_product(Fn::frak_f, z0, rest, c);
  if (den.is_zero()) throw ZeroNormalizationError("o3 window normalization vanishes");
  SparseMat op = m.entry(0, 1, z).mul(pre_bethe_o3_window(m, rest));
  for (std::size_t a = 0; a < rest.size(); ++a) {
    const ParamSet two = rest.without_index(a);
    const Rat coeff = fn_g(z0, rest[a], c) * set_product(Fn::frak_f, rest[a], two, c);
    op.axpy(-coeff, m.entry(-1, 1, z).mul(pre_bethe_o3_window(m, two)));
  }
  return op.scaled(den.inv());
}

// Dispatch on the block descriptor; only rank-one windows are supported.
inline SparseMat build_pre_bethe_operator(const MonodromyProvider& m, const ParamSet& params,
                                          std::pair<int, int> block) {
  if (block.first == -1 && block.second == 1) return pre_bethe_o3_window(m, params);
  if (block.second == block.first + 1) return pre_bethe_rank1(m, block.first, params);
  throw UnsupportedBlockError("pre-Bethe operators are only built on rank-one windows");
}

}  // namespace betherec
