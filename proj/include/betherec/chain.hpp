#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betherec/algebra.hpp"
#include "betherec/coefficients.hpp"
#include "betherec/errors.hpp"
#include "betherec/param_sets.hpp"
#include "betherec/rational.hpp"
#include "betherec/scalar_functions.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

// Encoding of tensor-product basis states (i_1..i_L), i_a in I_g, into flat
// indices.  Site 1 is the most significant digit, so numeric order of flat
// indices equals lexicographic order of multi-indices.
struct BasisCodec {
  AlgebraSpec alg;
  int L = 1;

  Idx dim() const {
    Idx d = 1;
    for (int a = 0; a < L; ++a) d *= static_cast<Idx>(alg.N());
    return d;
  }

  Idx encode(const std::vector<int>& multi) const {
    if (static_cast<int>(multi.size()) != L) throw IndexError("wrong multi-index length");
    Idx p = 0;
    for (int a = 0; a < L; ++a) p = p * alg.N() + alg.index_to_local(multi[a]);
    return p;
  }

  std::vector<int> decode(Idx p) const {
    std::vector<int> multi(L);
    for (int a = L - 1; a >= 0; --a) {
      multi[a] = alg.local_to_index(static_cast<int>(p % alg.N()));
      p /= alg.N();
    }
    return multi;
  }

  int site_local(Idx p, int site) const {  // site in 1..L, returns local state
    for (int a = L; a > site; --a) p /= alg.N();
    return static_cast<int>(p % alg.N());
  }

  Idx with_site_local(Idx p, int site, int local) const {
    long weight = 1;
    for (int a = L; a > site; --a) weight *= alg.N();
    const int old = site_local(p, site);
    return static_cast<Idx>(static_cast<long>(p) + (local - old) * weight);
  }

  std::string str(Idx p) const {
    const auto multi = decode(p);
    std::string s = "[";
    for (int a = 0; a < L; ++a) {
      if (a) s += ",";
      s += std::to_string(multi[a]);
    }
    return s + "]";
  }
};

// Deliberate defects injected for negative controls and the CLI tamper hook.
// transpose_r transposes the auxiliary factor of every R-matrix (the full
// two-site transpose would be a no-op: P and Q are symmetric).
enum class Tamper { none, flip_q_sign, transpose_r, zero_entry };

// Two-site R-matrix on C^N (x) C^N, composite index a*N + b:
//   R(u,v) = I + c P / (u-v) - c Q / (u-v+c kappa_n),
// the Q term being present only for the orthogonal family.
inline SparseMat build_r_matrix(const AlgebraSpec& alg, const Rat& u, const Rat& v, const Rat& c,
                                Tamper tamper = Tamper::none) {
  const int N = alg.N();
  const Idx dim = static_cast<Idx>(N) * N;
  const Rat d = u - v;
  if (d.is_zero()) throw PoleError("R-matrix at u=v");
  SparseMat r(dim, dim);
  const Rat g = c / d;
  for (Idx row = 0; row < dim; ++row) r.add(row, row, Rat(1));
  // P |x,y> = |y,x>: entry ((a,b),(b,a)) = 1.
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) r.add(static_cast<Idx>(a) * N + b, static_cast<Idx>(b) * N + a, g);
  if (alg.family == Family::O_ODD) {
    const Rat dq = d + c * alg.kappa();
    if (dq.is_zero()) throw PoleError("R-matrix at u-v = -c*kappa");
    Rat q = -c / dq;
    if (tamper == Tamper::flip_q_sign) q = -q;
    // Q |x,y> = delta_{x,-y} sum_i |-i,i>.
    for (int xi = alg.index_min(); xi <= alg.index_max(); ++xi) {
      const Idx col = static_cast<Idx>(alg.index_to_local(xi)) * N + alg.index_to_local(-xi);
      for (int ii = alg.index_min(); ii <= alg.index_max(); ++ii) {
        const Idx row = static_cast<Idx>(alg.index_to_local(-ii)) * N + alg.index_to_local(ii);
        r.add(row, col, q);
      }
    }
  }
  if (tamper == Tamper::transpose_r) {
    SparseMat t(dim, dim);
    for (Idx row = 0; row < dim; ++row)
      for (const auto& [col, val] : r.row(row)) {
        const Idx a = row / N, b = row % N, x = col / N, y = col % N;
        t.add(x * N + b, a * N + y, val);
      }
    return t;
  }
  return r;
}

// Monodromy matrix of one inhomogeneous chain at a fixed spectral point,
// sliced into the N x N array of operators on the physical space.
struct MonodromySlice {
  Rat z;
  int N = 0;
  Idx phys_dim = 0;
  std::vector<SparseMat> entries;  // (i,j) block at [local(i)*N + local(j)]

  const SparseMat& entry_local(int li, int lj) const { return entries[static_cast<std::size_t>(li) * N + lj]; }
};

// Concrete chain: algebra, L sites, pairwise distinct inhomogeneities xi_a,
// diagonal twist chi, deformation constant c.  Immutable after construction;
// monodromy slices, the vacuum and derived data are cached.
class Chain {
 public:
  Chain(AlgebraSpec alg, int L, std::vector<Rat> xi, std::map<int, Rat> chi, Rat c,
        Tamper tamper = Tamper::none, std::pair<int, int> tamper_entry = {0, 0})
      : alg_(alg), L_(L), xi_(std::move(xi)), chi_(std::move(chi)), c_(std::move(c)),
        tamper_(tamper), tamper_entry_(tamper_entry), codec_{alg, L} {
    validate();
  }

  const AlgebraSpec& algebra() const { return alg_; }
  int sites() const { return L_; }
  const std::vector<Rat>& xi() const { return xi_; }
  const Rat& c() const { return c_; }
  const Rat& chi(int i) const {
    auto it = chi_.find(i);
    if (it == chi_.end()) throw IndexError("no twist for index " + std::to_string(i));
    return it->second;
  }
  const std::map<int, Rat>& chi_map() const { return chi_; }
  const BasisCodec& codec() const { return codec_; }
  Idx phys_dim() const { return codec_.dim(); }

  // z must avoid the R-matrix poles against every inhomogeneity.
  bool spectral_point_ok(const Rat& z) const {
    for (const Rat& x : xi_) {
      if (z == x) return false;
      if (alg_.family == Family::O_ODD && (z - x + c_ * alg_.kappa()).is_zero()) return false;
    }
    return true;
  }

  const MonodromySlice& slice(const Rat& z) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = slices_.find(z);
    if (it != slices_.end()) return *it->second;
    auto s = std::make_shared<MonodromySlice>(build_slice(z));
    auto [pos, inserted] = slices_.emplace(z, std::move(s));
    return *pos->second;
  }

  const SparseMat& entry(int i, int j, const Rat& z) const {
    const MonodromySlice& s = slice(z);
    return s.entry_local(alg_.index_to_local(i), alg_.index_to_local(j));
  }

  // Lexicographically smallest basis vector annihilated by every
  // lower-triangular entry and preserved by every diagonal entry; the scan
  // also certifies uniqueness.
  Idx vacuum_index() const {
    std::call_once(vacuum_once_, [this] { vacuum_cache_ = scan_vacuum(); });
    return vacuum_cache_;
  }

  SparseVec vacuum() const { return SparseVec::basis(phys_dim(), vacuum_index()); }

  Rat lambda(int i, const Rat& z) const {
    const Idx v = vacuum_index();
    return entry(i, i, z).at(v, v);
  }

  LambdaFn lambda_fn() const {
    return [this](int i, const Rat& z) { return lambda(i, z); };
  }

  // alpha_s(z) = lambda_s(z)/lambda_{s+1}(z)
  Rat alpha(int s, const Rat& z) const { return lambda(s, z) / lambda(s + 1, z); }

  SparseMat transfer(const Rat& z) const {
    SparseMat t(phys_dim(), phys_dim());
    for (int i = alg_.index_min(); i <= alg_.index_max(); ++i) t.axpy(Rat(1), entry(i, i, z));
    return t;
  }

  // Monodromy on the auxiliary (x) physical space, T = D R_{0L} ... R_{01}.
  SparseMat full_monodromy(const Rat& z) const {
    if (!spectral_point_ok(z)) throw PoleError("monodromy at z=" + z.str() + " hits an inhomogeneity pole");
    const int N = alg_.N();
    const Idx pd = phys_dim();
    const Idx dim = static_cast<Idx>(N) * pd;
    SparseMat m = site_r_extended(z, 1);
    for (int a = 2; a <= L_; ++a) m = site_r_extended(z, a).mul(m);
    // left twist: row (alpha, p) scaled by chi_{index(alpha)}
    SparseMat d(dim, dim);
    for (Idx row = 0; row < dim; ++row) d.add(row, row, chi(alg_.local_to_index(static_cast<int>(row / pd))));
    SparseMat out = d.mul(m);
    if (tamper_ == Tamper::zero_entry) {
      const Idx li = static_cast<Idx>(alg_.index_to_local(tamper_entry_.first));
      const Idx lj = static_cast<Idx>(alg_.index_to_local(tamper_entry_.second));
      SparseMat cut(dim, dim);
      for (Idx row = 0; row < dim; ++row) {
        for (const auto& [col, val] : out.row(row))
          if (row / pd != li || col / pd != lj) cut.add(row, col, val);
      }
      out = cut;
    }
    return out;
  }

  std::string name() const {
    return alg_.name() + " L=" + std::to_string(L_);
  }

 private:
  void validate() const {
    if (L_ < 1) throw ConfigError("chain needs at least one site");
    if (c_.is_zero()) throw ConfigError("deformation constant c must be nonzero");
    if (static_cast<int>(xi_.size()) != L_) throw ConfigError("need exactly L inhomogeneities");
    for (std::size_t a = 0; a < xi_.size(); ++a)
      for (std::size_t b = a + 1; b < xi_.size(); ++b) {
        if (xi_[a] == xi_[b]) throw ConfigError("inhomogeneities must be pairwise distinct");
        if (alg_.family == Family::O_ODD) {
          const Rat diff = xi_[a] - xi_[b];
          const Rat pole = c_ * alg_.kappa();
          if (diff == pole || diff == -pole)
            throw ConfigError("inhomogeneity difference hits the crossing pole");
        }
      }
    for (int i = alg_.index_min(); i <= alg_.index_max(); ++i) {
      const Rat& x = chi(i);
      if (x.is_zero()) throw ConfigError("twists must be nonzero");
    }
    if (alg_.family == Family::O_ODD) {
      if (chi(0) != Rat(1)) throw ConfigError("orthogonal twist requires chi_0 = 1");
      for (int i = 1; i <= alg_.n; ++i)
        if (chi(i) * chi(-i) != Rat(1)) throw ConfigError("orthogonal twist requires chi_i chi_{-i} = 1");
    }
  }

  // R_{0a}(z, xi_a) extended to aux (x) phys.
  SparseMat site_r_extended(const Rat& z, int site) const {
    const int N = alg_.N();
    const Idx pd = phys_dim();
    const SparseMat r = build_r_matrix(alg_, z, xi_[site - 1], c_,
                                       tamper_ == Tamper::flip_q_sign || tamper_ == Tamper::transpose_r
                                           ? tamper_
                                           : Tamper::none);
    SparseMat out(static_cast<Idx>(N) * pd, static_cast<Idx>(N) * pd);
    for (Idx p = 0; p < pd; ++p) {
      const int beta = codec_.site_local(p, site);
      for (int alpha = 0; alpha < N; ++alpha) {
        const Idx row_comp = static_cast<Idx>(alpha) * pd + p;
        const Idx r_row = static_cast<Idx>(alpha) * N + beta;
        for (const auto& [r_col, val] : r.row(r_row)) {
          const int alpha2 = static_cast<int>(r_col) / N;
          const int beta2 = static_cast<int>(r_col) % N;
          const Idx col_comp = static_cast<Idx>(alpha2) * pd + codec_.with_site_local(p, site, beta2);
          out.add(row_comp, col_comp, val);
        }
      }
    }
    return out;
  }

  MonodromySlice build_slice(const Rat& z) const {
    const int N = alg_.N();
    const Idx pd = phys_dim();
    const SparseMat m = full_monodromy(z);
    MonodromySlice s;
    s.z = z;
    s.N = N;
    s.phys_dim = pd;
    s.entries.assign(static_cast<std::size_t>(N) * N, SparseMat(pd, pd));
    for (Idx row = 0; row < m.rows(); ++row) {
      const int li = static_cast<int>(row / pd);
      const Idx pr = row % pd;
      for (const auto& [col, val] : m.row(row)) {
        const int lj = static_cast<int>(col / pd);
        const Idx pc = col % pd;
        s.entries[static_cast<std::size_t>(li) * N + lj].add(pr, pc, val);
      }
    }
    return s;
  }

  Idx scan_vacuum() const {
    // Probe points: deterministic integers clear of every pole.
    std::vector<Rat> probes;
    long base = 101;
    while (probes.size() < 3) {
      Rat z(base++);
      if (spectral_point_ok(z)) probes.push_back(z);
    }
    // A basis vector e_m survives iff no lower-triangular block has a nonzero
    // entry in column m and diagonal blocks touch column m only on the
    // diagonal.  One pass over the stored entries marks all violations.
    const Idx pd = phys_dim();
    std::vector<char> bad(pd, 0);
    for (const Rat& z : probes) {
      const MonodromySlice& s = slice(z);
      for (int li = 0; li < alg_.N(); ++li)
        for (int lj = 0; lj < alg_.N(); ++lj) {
          if (li < lj) continue;
          const SparseMat& e = s.entry_local(li, lj);
          for (Idx r = 0; r < pd; ++r)
            for (const auto& ent : e.row(r))
              if (li > lj || r != ent.first) bad[ent.first] = 1;
        }
    }
    std::optional<Idx> found;
    for (Idx cand = 0; cand < pd; ++cand) {
      if (bad[cand]) continue;
      if (found) throw NoVacuumError("vacuum scan found more than one candidate");
      found = cand;
    }
    if (!found) throw NoVacuumError("vacuum scan found no annihilated basis vector");
    return *found;
  }

  AlgebraSpec alg_;
  int L_;
  std::vector<Rat> xi_;
  std::map<int, Rat> chi_;
  Rat c_;
  Tamper tamper_;
  std::pair<int, int> tamper_entry_;
  BasisCodec codec_;

  mutable std::mutex cache_mutex_;
  mutable std::map<Rat, std::shared_ptr<MonodromySlice>> slices_;
  mutable std::once_flag vacuum_once_;
  mutable Idx vacuum_cache_ = 0;
};

// Convenience twist maps.
inline std::map<int, Rat> unit_twists(const AlgebraSpec& alg) {
  std::map<int, Rat> chi;
  for (int i = alg.index_min(); i <= alg.index_max(); ++i) chi[i] = Rat(1);
  return chi;
}

// For the orthogonal family the positive-index twists determine the rest via
// chi_0 = 1 and chi_{-i} = 1/chi_i.
inline std::map<int, Rat> make_twists(const AlgebraSpec& alg, const std::vector<Rat>& positive) {
  std::map<int, Rat> chi;
  if (alg.family == Family::GL) {
    if (static_cast<int>(positive.size()) != alg.n) throw ConfigError("need n twist values for gl");
    for (int i = 1; i <= alg.n; ++i) chi[i] = positive[i - 1];
  } else {
    if (static_cast<int>(positive.size()) != alg.n) throw ConfigError("need n twist values for o");
    chi[0] = Rat(1);
    for (int i = 1; i <= alg.n; ++i) {
      if (positive[i - 1].is_zero()) throw ConfigError("twists must be nonzero");
      chi[i] = positive[i - 1];
      chi[-i] = positive[i - 1].inv();
    }
  }
  return chi;
}

}  // namespace betherec
