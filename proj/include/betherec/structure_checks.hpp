#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "betherec/chain.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

inline unsigned worker_count() {
  if (const char* env = std::getenv("BETHEREC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, total) across workers; results are combined deterministically by
// the caller.
inline void parallel_for(Idx total, const std::function<void(Idx, Idx)>& body) {
  const unsigned workers = std::min<unsigned>(worker_count(), total == 0 ? 1 : total);
  if (workers <= 1) {
    body(0, total);
    return;
  }
  std::vector<std::thread> pool;
  const Idx step = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const Idx lo = std::min<Idx>(w * step, total);
    const Idx hi = std::min<Idx>(lo + step, total);
    if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

struct EntryWitness {
  Idx row = 0, col = 0;
  Rat lhs, rhs;
  std::string str() const {
    return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): lhs=" + lhs.str() +
           " rhs=" + rhs.str();
  }
};

// R12 R13 R23 = R23 R13 R12 on C^N (x) C^N (x) C^N, with arguments
// (u,v), (u,w), (v,w).  Returns the first differing entry, if any.
inline std::optional<EntryWitness> yang_baxter_defect(const AlgebraSpec& alg, const Rat& u, const Rat& v,
                                                      const Rat& w, const Rat& c,
                                                      Tamper tamper = Tamper::none) {
  const int N = alg.N();
  const Idx dim = static_cast<Idx>(N) * N * N;
  auto lift = [&](const SparseMat& r, int first, int second) {
    // embeds a two-site matrix into factors (first, second) of the 3-fold space
    SparseMat out(dim, dim);
    for (Idx p = 0; p < dim; ++p) {
      int loc[3] = {static_cast<int>(p / (N * N)), static_cast<int>((p / N) % N), static_cast<int>(p % N)};
      const Idx r_row = static_cast<Idx>(loc[first]) * N + loc[second];
      for (const auto& [r_col, val] : r.row(r_row)) {
        int nl[3] = {loc[0], loc[1], loc[2]};
        nl[first] = static_cast<int>(r_col) / N;
        nl[second] = static_cast<int>(r_col) % N;
        const Idx q = (static_cast<Idx>(nl[0]) * N + nl[1]) * N + nl[2];
        out.add(p, q, val);
      }
    }
    return out;
  };
  const SparseMat r12 = lift(build_r_matrix(alg, u, v, c, tamper), 0, 1);
  const SparseMat r13 = lift(build_r_matrix(alg, u, w, c, tamper), 0, 2);
  const SparseMat r23 = lift(build_r_matrix(alg, v, w, c, tamper), 1, 2);
  const SparseMat lhs = r12.mul(r13).mul(r23);
  const SparseMat rhs = r23.mul(r13).mul(r12);
  if (auto diff = SparseMat::first_difference(lhs, rhs)) {
    auto [r0, c0, a, b] = *diff;
    return EntryWitness{r0, c0, a, b};
  }
  return std::nullopt;
}

// Packed exchange relation R(u,v) (T(u) (x) I)(I (x) T(v)) =
// (I (x) T(v))(T(u) (x) I) R(u,v) on aux1 (x) aux2 (x) phys, compared row by
// row without materializing either side.
inline std::optional<EntryWitness> rtt_defect(const Chain& chain, const Rat& u, const Rat& v) {
  const AlgebraSpec& alg = chain.algebra();
  const int N = alg.N();
  const Idx pd = chain.phys_dim();
  const Idx dim = static_cast<Idx>(N) * N * pd;
  const SparseMat tu = chain.full_monodromy(u);  // aux (x) phys
  const SparseMat tv = chain.full_monodromy(v);
  const SparseMat r = build_r_matrix(alg, u, v, chain.c());

  auto decomp = [&](Idx x) {
    struct {
      int a1, a2;
      Idx p;
    } d{static_cast<int>(x / (static_cast<Idx>(N) * pd)),
        static_cast<int>((x / pd) % N), x % pd};
    return d;
  };
  auto compose = [&](int a1, int a2, Idx p) {
    return (static_cast<Idx>(a1) * N + a2) * pd + p;
  };

  // row of T(u) (x) I_{aux2}
  auto row_tu1 = [&](Idx x, SparseVec& out) {
    const auto d = decomp(x);
    for (const auto& [col, val] : tu.row(static_cast<Idx>(d.a1) * pd + d.p))
      out.add(compose(static_cast<int>(col / pd), d.a2, col % pd), val);
  };
  // row of I_{aux1} (x) T(v)
  auto row_tv2 = [&](Idx x, SparseVec& out) {
    const auto d = decomp(x);
    for (const auto& [col, val] : tv.row(static_cast<Idx>(d.a2) * pd + d.p))
      out.add(compose(d.a1, static_cast<int>(col / pd), col % pd), val);
  };
  // row of R extended by the physical identity
  auto row_r = [&](Idx x, SparseVec& out) {
    const auto d = decomp(x);
    for (const auto& [col, val] : r.row(static_cast<Idx>(d.a1) * N + d.a2))
      out.add(compose(static_cast<int>(col) / N, static_cast<int>(col) % N, d.p), val);
  };

  std::mutex witness_mutex;
  std::optional<EntryWitness> witness;
  parallel_for(dim, [&](Idx lo, Idx hi) {
    std::optional<EntryWitness> local;
    for (Idx x = lo; x < hi && !local; ++x) {
      // lhs row: row_x(R) * (T(u) (x) 1) * (1 (x) T(v))
      SparseVec acc1(dim);
      {
        SparseVec rrow(dim);
        row_r(x, rrow);
        SparseVec mid(dim);
        for (const auto& [k, a] : rrow) {
          SparseVec t(dim);
          row_tu1(k, t);
          mid.axpy(a, t);
        }
        for (const auto& [k, a] : mid) {
          SparseVec t(dim);
          row_tv2(k, t);
          acc1.axpy(a, t);
        }
      }
      // rhs row: row_x(1 (x) T(v)) * (T(u) (x) 1) * R
      SparseVec acc2(dim);
      {
        SparseVec vrow(dim);
        row_tv2(x, vrow);
        SparseVec mid(dim);
        for (const auto& [k, a] : vrow) {
          SparseVec t(dim);
          row_tu1(k, t);
          mid.axpy(a, t);
        }
        for (const auto& [k, a] : mid) {
          SparseVec t(dim);
          row_r(k, t);
          acc2.axpy(a, t);
        }
      }
      if (auto diff = SparseVec::first_difference(acc1, acc2)) {
        auto [col, a, b] = *diff;
        local = EntryWitness{x, col, a, b};
      }
    }
    if (local) {
      std::lock_guard<std::mutex> lock(witness_mutex);
      if (!witness || local->row < witness->row) witness = local;
    }
  });
  return witness;
}

// Central element of the orthogonal chain: T(z)^t T(z + c kappa_n) with the
// transposition over the secondary diagonal.  Returns the scalar if the
// product is a multiple of the identity.
inline std::optional<Rat> central_element_scalar(const Chain& chain, const Rat& z,
                                                 std::string* witness = nullptr) {
  const AlgebraSpec& alg = chain.algebra();
  if (alg.family != Family::O_ODD) throw FamilyError("central element exists only for o_{2n+1}");
  const Rat zk = z + chain.c() * alg.kappa();
  if (!chain.spectral_point_ok(z) || !chain.spectral_point_ok(zk))
    throw PoleError("central element evaluated at a pole");
  const Idx pd = chain.phys_dim();
  std::optional<Rat> scalar;
  for (int i = alg.index_min(); i <= alg.index_max(); ++i)
    for (int j = alg.index_min(); j <= alg.index_max(); ++j) {
      SparseMat block(pd, pd);
      for (int k = alg.index_min(); k <= alg.index_max(); ++k)
        block.axpy(Rat(1), chain.entry(-k, -i, z).mul(chain.entry(k, j, zk)));
      if (i != j) {
        if (!block.is_zero()) {
          if (witness) *witness = "off-diagonal block (" + std::to_string(i) + "," + std::to_string(j) + ") nonzero";
          return std::nullopt;
        }
        continue;
      }
      auto s = block.as_scalar_identity();
      if (!s) {
        if (witness) *witness = "diagonal block " + std::to_string(i) + " is not scalar";
        return std::nullopt;
      }
      if (scalar && *scalar != *s) {
        if (witness) *witness = "diagonal blocks disagree: " + scalar->str() + " vs " + s->str();
        return std::nullopt;
      }
      scalar = s;
    }
  return scalar;
}

// j-independent combination of the vacuum eigenvalues of the orthogonal
// chain: F_j(z) = lambda_{-j}(z) lambda_j(z_j) prod_{s=j+1}^n
// lambda_s(z_s)/lambda_s(z_{s-1}).  Equals the central scalar at z - c kappa_n.
inline Rat lambda_ratio_invariant(const Chain& chain, int j, const Rat& z) {
  const AlgebraSpec& alg = chain.algebra();
  if (alg.family != Family::O_ODD) throw FamilyError("lambda relation is specific to o_{2n+1}");
  if (j < 0 || j > alg.n) throw IndexError("j out of range");
  const Rat& c = chain.c();
  Rat value = chain.lambda(-j, z) * chain.lambda(j, shifted(z, j, c));
  for (int s = j + 1; s <= alg.n; ++s)
    value *= chain.lambda(s, shifted(z, s, c)) / chain.lambda(s, shifted(z, s - 1, c));
  return value;
}

}  // namespace betherec
