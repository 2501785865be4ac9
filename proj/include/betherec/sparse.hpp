#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "betherec/errors.hpp"
#include "betherec/rational.hpp"

namespace betherec {

using Idx = std::uint32_t;

// Sparse exact vector; no stored zeros, deterministic iteration order.
class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(Idx dim) : dim_(dim) {}

  Idx dim() const { return dim_; }
  std::size_t nnz() const { return m_.size(); }
  bool is_zero() const { return m_.empty(); }

  void add(Idx i, const Rat& v) {
    if (v.is_zero()) return;
    auto it = m_.find(i);
    if (it == m_.end()) {
      m_.emplace(i, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) m_.erase(it);
    }
  }

  void set(Idx i, const Rat& v) {
    if (v.is_zero())
      m_.erase(i);
    else
      m_[i] = v;
  }

  Rat at(Idx i) const {
    auto it = m_.find(i);
    return it == m_.end() ? Rat(0) : it->second;
  }

  static SparseVec basis(Idx dim, Idx i) {
    SparseVec v(dim);
    v.m_.emplace(i, Rat(1));
    return v;
  }

  SparseVec& axpy(const Rat& a, const SparseVec& x) {
    if (a.is_zero()) return *this;
    for (const auto& [i, v] : x.m_) add(i, a * v);
    return *this;
  }

  SparseVec scaled(const Rat& a) const {
    SparseVec r(dim_);
    if (a.is_zero()) return r;
    for (const auto& [i, v] : m_) r.m_.emplace(i, a * v);
    return r;
  }

  SparseVec operator-(const SparseVec& o) const {
    SparseVec r = *this;
    for (const auto& [i, v] : o.m_) r.add(i, -v);
    return r;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.m_ == b.m_; }

  // First index at which the two vectors differ, with both values.
  static std::optional<std::tuple<Idx, Rat, Rat>> first_difference(const SparseVec& a, const SparseVec& b) {
    auto ia = a.m_.begin();
    auto ib = b.m_.begin();
    while (ia != a.m_.end() || ib != b.m_.end()) {
      if (ib == b.m_.end() || (ia != a.m_.end() && ia->first < ib->first)) {
        return std::make_tuple(ia->first, ia->second, Rat(0));
      }
      if (ia == a.m_.end() || ib->first < ia->first) {
        return std::make_tuple(ib->first, Rat(0), ib->second);
      }
      if (ia->second != ib->second) return std::make_tuple(ia->first, ia->second, ib->second);
      ++ia;
      ++ib;
    }
    return std::nullopt;
  }

  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }

 private:
  Idx dim_ = 0;
  std::map<Idx, Rat> m_;
};

// Row-sparse exact matrix with sorted rows.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(Idx rows, Idx cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMat identity(Idx n) {
    SparseMat m(n, n);
    for (Idx i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rat(1));
    return m;
  }

  Idx rows() const { return rows_; }
  Idx cols() const { return cols_; }

  std::size_t nnz() const {
    std::size_t t = 0;
    for (const auto& r : data_) t += r.size();
    return t;
  }
  bool is_zero() const {
    for (const auto& r : data_)
      if (!r.empty()) return false;
    return true;
  }

  using Row = std::vector<std::pair<Idx, Rat>>;
  const Row& row(Idx r) const { return data_[r]; }

  // Accumulating insert; rows are finalized (sorted, zero-pruned) on demand.
  void add(Idx r, Idx c, const Rat& v) {
    if (v.is_zero()) return;
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, Idx col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += v;
      if (it->second.is_zero()) row.erase(it);
    } else {
      row.insert(it, {c, v});
    }
  }

  Rat at(Idx r, Idx c) const {
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, Idx col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rat(0);
  }

  SparseVec apply(const SparseVec& v) const {
    SparseVec out(rows_);
    for (Idx r = 0; r < rows_; ++r) {
      Rat acc = 0;
      bool any = false;
      for (const auto& [c, a] : data_[r]) {
        const Rat x = v.at(c);
        if (!x.is_zero()) {
          acc += a * x;
          any = true;
        }
      }
      if (any && !acc.is_zero()) out.set(r, acc);
    }
    return out;
  }

  SparseMat mul(const SparseMat& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch in mul");
    SparseMat out(rows_, o.cols_);
    std::map<Idx, Rat> acc;
    for (Idx r = 0; r < rows_; ++r) {
      acc.clear();
      for (const auto& [k, a] : data_[r]) {
        for (const auto& [c, b] : o.data_[k]) {
          auto it = acc.find(c);
          if (it == acc.end())
            acc.emplace(c, a * b);
          else
            it->second += a * b;
        }
      }
      auto& row = out.data_[r];
      row.reserve(acc.size());
      for (const auto& [c, v] : acc)
        if (!v.is_zero()) row.emplace_back(c, v);
    }
    return out;
  }

  // this <- this + a*o
  SparseMat& axpy(const Rat& a, const SparseMat& o) {
    if (a.is_zero()) return *this;
    for (Idx r = 0; r < rows_; ++r)
      for (const auto& [c, v] : o.data_[r]) add(r, c, a * v);
    return *this;
  }

  SparseMat scaled(const Rat& a) const {
    SparseMat out(rows_, cols_);
    if (a.is_zero()) return out;
    for (Idx r = 0; r < rows_; ++r) {
      out.data_[r].reserve(data_[r].size());
      for (const auto& [c, v] : data_[r]) out.data_[r].emplace_back(c, a * v);
    }
    return out;
  }

  SparseMat operator-(const SparseMat& o) const {
    SparseMat out = *this;
    out.axpy(Rat(-1), o);
    return out;
  }
  SparseMat operator+(const SparseMat& o) const {
    SparseMat out = *this;
    out.axpy(Rat(1), o);
    return out;
  }

  SparseMat commutator(const SparseMat& o) const { return mul(o) - o.mul(*this); }

  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // First (row, col) where the matrices differ.
  static std::optional<std::tuple<Idx, Idx, Rat, Rat>> first_difference(const SparseMat& a, const SparseMat& b) {
    for (Idx r = 0; r < a.rows_; ++r) {
      auto ia = a.data_[r].begin();
      auto ib = b.data_[r].begin();
      while (ia != a.data_[r].end() || ib != b.data_[r].end()) {
        if (ib == b.data_[r].end() || (ia != a.data_[r].end() && ia->first < ib->first))
          return std::make_tuple(r, ia->first, ia->second, Rat(0));
        if (ia == a.data_[r].end() || ib->first < ia->first)
          return std::make_tuple(r, ib->first, Rat(0), ib->second);
        if (ia->second != ib->second) return std::make_tuple(r, ia->first, ia->second, ib->second);
        ++ia;
        ++ib;
      }
    }
    return std::nullopt;
  }

  // Scalar multiple of the identity?  Returns the scalar if so.
  std::optional<Rat> as_scalar_identity() const {
    if (rows_ != cols_ || rows_ == 0) return std::nullopt;
    const Rat lambda = at(0, 0);
    for (Idx r = 0; r < rows_; ++r) {
      const auto& row = data_[r];
      if (lambda.is_zero()) {
        if (!row.empty()) return std::nullopt;
      } else {
        if (row.size() != 1 || row[0].first != r || row[0].second != lambda) return std::nullopt;
      }
    }
    return lambda;
  }

 private:
  Idx rows_ = 0, cols_ = 0;
  std::vector<Row> data_;
};

}  // namespace betherec
