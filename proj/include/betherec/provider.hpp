#pragma once

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>

#include "betherec/algebra.hpp"
#include "betherec/chain.hpp"
#include "betherec/sparse.hpp"

namespace betherec {

// Abstract access to a monodromy: its entries as physical-space operators,
// its vacuum eigenvalues, and the vacuum itself.  The Bethe constructor and
// every recurrence evaluator work against this interface, which is what makes
// embedding and reduction checks possible (sub-blocks and index-shifted
// blocks of one chain are again monodromies).
class MonodromyProvider {
 public:
  virtual ~MonodromyProvider() = default;

  virtual AlgebraSpec algebra() const = 0;
  virtual Rat c() const = 0;
  virtual Idx dim() const = 0;
  virtual SparseVec vacuum() const = 0;
  virtual const SparseMat& entry(int i, int j, const Rat& z) const = 0;
  virtual Rat lambda(int i, const Rat& z) const = 0;

  LambdaFn lambda_fn() const {
    return [this](int i, const Rat& z) { return lambda(i, z); };
  }
};

class ChainProvider : public MonodromyProvider {
 public:
  explicit ChainProvider(const Chain& chain) : chain_(chain) {}

  AlgebraSpec algebra() const override { return chain_.algebra(); }
  Rat c() const override { return chain_.c(); }
  Idx dim() const override { return chain_.phys_dim(); }
  SparseVec vacuum() const override { return chain_.vacuum(); }
  const SparseMat& entry(int i, int j, const Rat& z) const override { return chain_.entry(i, j, z); }
  Rat lambda(int i, const Rat& z) const override { return chain_.lambda(i, z); }

  const Chain& chain() const { return chain_; }

 private:
  const Chain& chain_;
};

// gl_m-type sub-block of a larger monodromy: indices 1..m are mapped onto
// base indices offset+1..offset+m.  For the orthogonal chain with offset 0
// this is the upper-left block, which closes under the exchange relations.
class GlWindowProvider : public MonodromyProvider {
 public:
  GlWindowProvider(const MonodromyProvider& base, int offset, int rank)
      : base_(base), offset_(offset), rank_(rank) {}

  AlgebraSpec algebra() const override { return AlgebraSpec(Family::GL, rank_); }
  Rat c() const override { return base_.c(); }
  Idx dim() const override { return base_.dim(); }
  SparseVec vacuum() const override { return base_.vacuum(); }
  const SparseMat& entry(int i, int j, const Rat& z) const override {
    check(i), check(j);
    return base_.entry(offset_ + i, offset_ + j, z);
  }
  Rat lambda(int i, const Rat& z) const override {
    check(i);
    return base_.lambda(offset_ + i, z);
  }

 private:
  void check(int i) const {
    if (i < 1 || i > rank_) throw IndexError("window index out of range");
  }
  const MonodromyProvider& base_;
  int offset_;
  int rank_;
};

// Index-reflected gl_n block of an orthogonal chain: entry (i,j) at argument
// w is the base entry (i-n-1, j-n-1) at w + c kappa_n.  This block again
// satisfies gl-type exchange relations.
class HatWindowProvider : public MonodromyProvider {
 public:
  explicit HatWindowProvider(const MonodromyProvider& base) : base_(base) {
    if (base_.algebra().family != Family::O_ODD)
      throw FamilyError("hat block requires an orthogonal base");
    n_ = base_.algebra().n;
    shift_ = base_.c() * base_.algebra().kappa();
  }

  AlgebraSpec algebra() const override { return AlgebraSpec(Family::GL, n_); }
  Rat c() const override { return base_.c(); }
  Idx dim() const override { return base_.dim(); }
  SparseVec vacuum() const override { return base_.vacuum(); }
  const SparseMat& entry(int i, int j, const Rat& z) const override {
    return base_.entry(i - n_ - 1, j - n_ - 1, z + shift_);
  }
  Rat lambda(int i, const Rat& z) const override { return base_.lambda(i - n_ - 1, z + shift_); }

 private:
  const MonodromyProvider& base_;
  int n_;
  Rat shift_;
};

// Records which entries (i,j) are touched; used to certify the block
// confinement of embedding constructions.
class AccessRecordingProvider : public MonodromyProvider {
 public:
  explicit AccessRecordingProvider(const MonodromyProvider& base) : base_(base) {}

  AlgebraSpec algebra() const override { return base_.algebra(); }
  Rat c() const override { return base_.c(); }
  Idx dim() const override { return base_.dim(); }
  SparseVec vacuum() const override { return base_.vacuum(); }
  const SparseMat& entry(int i, int j, const Rat& z) const override {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      accessed_.emplace(i, j);
    }
    return base_.entry(i, j, z);
  }
  Rat lambda(int i, const Rat& z) const override {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      accessed_.emplace(i, i);
    }
    return base_.lambda(i, z);
  }

  std::set<std::pair<int, int>> accessed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return accessed_;
  }
  void reset() {
    std::lock_guard<std::mutex> lock(mutex_);
    accessed_.clear();
  }

 private:
  const MonodromyProvider& base_;
  mutable std::mutex mutex_;
  mutable std::set<std::pair<int, int>> accessed_;
};

}  // namespace betherec
