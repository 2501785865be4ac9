#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "betherec/algebra.hpp"
#include "betherec/errors.hpp"
#include "betherec/rational.hpp"

namespace betherec {

// An ordered collection of pairwise-distinct Bethe parameters of one color.
// All consuming operations treat it as a set (products over elements are
// permutation invariant), the ordering exists only for determinism.
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(std::vector<Rat> elems) : elems_(std::move(elems)) {
    for (std::size_t a = 0; a < elems_.size(); ++a)
      for (std::size_t b = a + 1; b < elems_.size(); ++b)
        if (elems_[a] == elems_[b])
          throw PoleError("coincident Bethe parameters: " + elems_[a].str());
  }
  ParamSet(std::initializer_list<Rat> elems) : ParamSet(std::vector<Rat>(elems)) {}

  static const ParamSet& empty_set() {
    static const ParamSet e;
    return e;
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Rat& operator[](std::size_t a) const { return elems_[a]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const Rat& v) const {
    return std::find(elems_.begin(), elems_.end(), v) != elems_.end();
  }

  ParamSet with(const Rat& z) const {
    std::vector<Rat> e = elems_;
    e.push_back(z);
    return ParamSet(std::move(e));
  }

  ParamSet without_index(std::size_t drop) const {
    std::vector<Rat> e;
    e.reserve(elems_.size() - 1);
    for (std::size_t a = 0; a < elems_.size(); ++a)
      if (a != drop) e.push_back(elems_[a]);
    ParamSet r;
    r.elems_ = std::move(e);  // distinctness inherited
    return r;
  }

  ParamSet subset(const std::vector<std::size_t>& idx) const {
    std::vector<Rat> e;
    e.reserve(idx.size());
    for (auto a : idx) e.push_back(elems_[a]);
    ParamSet r;
    r.elems_ = std::move(e);
    return r;
  }

  ParamSet sorted() const {
    std::vector<Rat> e = elems_;
    std::sort(e.begin(), e.end());
    ParamSet r;
    r.elems_ = std::move(e);
    return r;
  }

  // Union of two disjoint sets (used for merged partition parts).
  ParamSet merged(const ParamSet& other) const {
    std::vector<Rat> e = elems_;
    e.insert(e.end(), other.elems_.begin(), other.elems_.end());
    return ParamSet(std::move(e));
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t a = 0; a < elems_.size(); ++a) {
      if (a) s += ",";
      s += elems_[a].str();
    }
    return s + "}";
  }

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.sorted().elems_ == b.sorted().elems_;
  }

 private:
  std::vector<Rat> elems_;
};

// The collection {t^s} of Bethe parameter sets, one per color.  Accessing a
// color just outside the legal range (t^0 / t^n for gl, t^{-1} / t^n for o)
// yields the empty set, which is the convention every formula relies on.
class ColoredSets {
 public:
  ColoredSets() = default;
  explicit ColoredSets(const AlgebraSpec& alg) : alg_(alg), sets_(alg.color_max() - alg.color_min() + 1) {}
  ColoredSets(const AlgebraSpec& alg, std::vector<ParamSet> sets) : alg_(alg), sets_(std::move(sets)) {
    if (static_cast<int>(sets_.size()) != alg.color_max() - alg.color_min() + 1)
      throw IndexError("wrong number of colors");
  }

  const AlgebraSpec& algebra() const { return alg_; }

  const ParamSet& at(int color) const {
    if (!alg_.color_legal(color)) throw IndexError("illegal color " + std::to_string(color) + " for " + alg_.name());
    return sets_[color - alg_.color_min()];
  }

  // Lenient accessor used for neighbor sets in products; one step outside the
  // color range is the empty set by convention.
  const ParamSet& neighbor(int color) const {
    if (alg_.color_legal(color)) return sets_[color - alg_.color_min()];
    return ParamSet::empty_set();
  }

  void set(int color, ParamSet s) {
    if (!alg_.color_legal(color)) throw IndexError("illegal color " + std::to_string(color));
    sets_[color - alg_.color_min()] = std::move(s);
  }

  ColoredSets with(int color, const Rat& z) const {
    ColoredSets r = *this;
    r.set(color, r.at(color).with(z));
    return r;
  }

  std::size_t total_size() const {
    std::size_t t = 0;
    for (const auto& s : sets_) t += s.size();
    return t;
  }

  std::vector<std::size_t> cardinalities() const {
    std::vector<std::size_t> r;
    r.reserve(sets_.size());
    for (const auto& s : sets_) r.push_back(s.size());
    return r;
  }

  // Per-color union with another collection (parts of a partition).
  ColoredSets merged(const ColoredSets& other) const {
    ColoredSets r = *this;
    for (int s = alg_.color_min(); s <= alg_.color_max(); ++s)
      r.set(s, r.at(s).merged(other.at(s)));
    return r;
  }

  // Canonical form used as memoization key: per-color sorted values.
  std::vector<std::vector<Rat>> key() const {
    std::vector<std::vector<Rat>> k;
    k.reserve(sets_.size());
    for (const auto& s : sets_) {
      std::vector<Rat> v(s.begin(), s.end());
      std::sort(v.begin(), v.end());
      k.push_back(std::move(v));
    }
    return k;
  }

  std::string str() const {
    std::string out = "(";
    for (int s = alg_.color_min(); s <= alg_.color_max(); ++s) {
      if (s != alg_.color_min()) out += ";";
      out += std::to_string(s) + ":" + at(s).str();
    }
    return out + ")";
  }

 private:
  AlgebraSpec alg_;
  std::vector<ParamSet> sets_;
};

// Per-color required cardinalities (|t^s_I|, |t^s_III|) for one (i,j) term of
// a rectangular partition sum.  Infeasible profiles correspond to terms that
// must be discarded.
struct CardinalityProfile {
  int color_min = 0;
  std::vector<std::pair<int, int>> required;  // (|I|, |III|) per color

  int need_one(int color) const { return required[color - color_min].first; }
  int need_three(int color) const { return required[color - color_min].second; }

  bool feasible_on(const ColoredSets& t) const {
    for (int s = color_min; s < color_min + static_cast<int>(required.size()); ++s) {
      const auto& req = required[s - color_min];
      if (static_cast<std::size_t>(req.first + req.second) > t.at(s).size()) return false;
    }
    return true;
  }
};

// One term of a partition sum: the disjoint split of every color's set into
// parts I, II and III with union equal to the original set.
struct PartitionTriple {
  ColoredSets part_one;    // t_I
  ColoredSets part_two;    // t_II
  ColoredSets part_three;  // t_III
};

namespace detail {

inline void combinations(std::size_t total, std::size_t pick, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  // Lexicographic index order keeps the enumeration deterministic.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == pick) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = start; v < total; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

// Enumerates all partitions matching the profile; colors ascending, subset
// choices in lexicographic index order.  Count is
// prod_s C(r_s, |I|) * C(r_s - |I|, |III|).
inline std::vector<PartitionTriple> enumerate_partitions(const ColoredSets& t, const CardinalityProfile& profile) {
  if (!profile.feasible_on(t)) throw InfeasibleProfileError("partition profile exceeds set sizes");
  const AlgebraSpec& alg = t.algebra();

  struct ColorChoice {
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> splits;  // (I idx, III idx)
  };
  std::vector<ColorChoice> per_color;
  for (int s = alg.color_min(); s <= alg.color_max(); ++s) {
    const ParamSet& set = t.at(s);
    const int n_one = profile.need_one(s);
    const int n_three = profile.need_three(s);
    ColorChoice cc;
    std::vector<std::vector<std::size_t>> ones;
    detail::combinations(set.size(), static_cast<std::size_t>(n_one), ones);
    for (const auto& one : ones) {
      std::vector<std::size_t> rest;
      for (std::size_t v = 0; v < set.size(); ++v)
        if (std::find(one.begin(), one.end(), v) == one.end()) rest.push_back(v);
      std::vector<std::vector<std::size_t>> threes;
      detail::combinations(rest.size(), static_cast<std::size_t>(n_three), threes);
      for (const auto& three_local : threes) {
        std::vector<std::size_t> three;
        for (auto v : three_local) three.push_back(rest[v]);
        cc.splits.emplace_back(one, three);
      }
    }
    per_color.push_back(std::move(cc));
  }

  std::vector<PartitionTriple> out;
  std::vector<std::size_t> pick(per_color.size(), 0);
  while (true) {
    PartitionTriple tri{ColoredSets(alg), ColoredSets(alg), ColoredSets(alg)};
    for (int s = alg.color_min(); s <= alg.color_max(); ++s) {
      const ParamSet& set = t.at(s);
      const auto& split = per_color[s - alg.color_min()].splits[pick[s - alg.color_min()]];
      std::vector<std::size_t> two;
      for (std::size_t v = 0; v < set.size(); ++v) {
        const bool in_one = std::find(split.first.begin(), split.first.end(), v) != split.first.end();
        const bool in_three = std::find(split.second.begin(), split.second.end(), v) != split.second.end();
        if (!in_one && !in_three) two.push_back(v);
      }
      tri.part_one.set(s, set.subset(split.first));
      tri.part_two.set(s, set.subset(two));
      tri.part_three.set(s, set.subset(split.second));
    }
    out.push_back(std::move(tri));
    // odometer over colors, last color fastest
    int pos = static_cast<int>(pick.size()) - 1;
    while (pos >= 0) {
      if (++pick[pos] < per_color[pos].splits.size()) break;
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace betherec
