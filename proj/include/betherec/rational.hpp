#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "betherec/errors.hpp"

namespace betherec {

// Arbitrary-precision rational scalar.  Always stored in lowest terms with a
// positive denominator (mpq_class keeps that canonical form for us); division
// by zero throws PoleError instead of trapping inside GMP.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
  Rat(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT
  Rat(long n, long d) {
    if (d == 0) throw PoleError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Parses "p", "p/q" or "-p/q" with decimal integers.
  static Rat parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        return Rat(mpq_class(mpz_class(text, 10), 1));
      }
      mpz_class num(text.substr(0, slash), 10);
      mpz_class den(text.substr(slash + 1), 10);
      if (den == 0) throw PoleError("rational with zero denominator: " + text);
      mpq_class q(num, den);
      q.canonicalize();
      return Rat(std::move(q));
    } catch (const std::invalid_argument&) {
      throw ConfigError("cannot parse rational: '" + text + "'");
    }
  }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  std::string num_string() const { return v_.get_num().get_str(); }
  std::string den_string() const { return v_.get_den().get_str(); }
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw PoleError("division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
  }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw PoleError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  Rat inv() const {
    if (is_zero()) throw PoleError("inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rat half() { return Rat(1, 2); }

}  // namespace betherec
