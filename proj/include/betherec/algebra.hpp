#pragma once

#include <string>
#include <vector>

#include "betherec/errors.hpp"
#include "betherec/rational.hpp"

namespace betherec {

enum class Family { GL, O_ODD };

inline std::string family_name(Family f) { return f == Family::GL ? "gl" : "o"; }

// Algebra family and rank.  Fixes the matrix index set I_g and the dimension
// N of the local space: indices 1..n (N = n) for gl_n, indices -n..n
// (N = 2n+1) for o_{2n+1}.
struct AlgebraSpec {
  Family family = Family::GL;
  int n = 2;

  AlgebraSpec() = default;
  AlgebraSpec(Family f, int rank) : family(f), n(rank) {
    if (family == Family::GL && n < 2) throw ConfigError("gl requires rank >= 2");
    if (family == Family::O_ODD && n < 1) throw ConfigError("o_{2n+1} requires n >= 1");
  }

  int N() const { return family == Family::GL ? n : 2 * n + 1; }

  int index_min() const { return family == Family::GL ? 1 : -n; }
  int index_max() const { return n; }
  bool index_legal(int i) const { return i >= index_min() && i <= index_max(); }

  // Matrix indices listed in increasing order; position of an index inside
  // this list is the "local" 0-based state used for basis encoding.
  int index_to_local(int i) const {
    if (!index_legal(i)) throw IndexError("matrix index out of range: " + std::to_string(i));
    return i - index_min();
  }
  int local_to_index(int a) const {
    if (a < 0 || a >= N()) throw IndexError("local state out of range");
    return a + index_min();
  }

  // Colors of Bethe parameter sets: 1..n-1 for gl_n, 0..n-1 for o_{2n+1}.
  int color_min() const { return family == Family::GL ? 1 : 0; }
  int color_max() const { return n - 1; }
  bool color_legal(int s) const { return s >= color_min() && s <= color_max(); }

  // kappa_n = n - 1/2; only meaningful for the orthogonal family (for gl the
  // R-matrix simply has no second pole term).
  Rat kappa() const {
    if (family != Family::O_ODD) throw FamilyError("kappa is defined only for o_{2n+1}");
    return Rat(2 * n - 1, 2);
  }

  std::string name() const { return family_name(family) + "_" + std::to_string(family == Family::GL ? n : 2 * n + 1); }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.family == b.family && a.n == b.n;
  }
};

}  // namespace betherec
