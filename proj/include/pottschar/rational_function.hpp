#pragma once

// Quotients of MultiPoly. Normalization removes the rational content and
// the largest common monomial factor; no polynomial GCD is attempted, so
// equality is decided by cross-multiplication.

#include <pottschar/polyring.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace pottschar {

class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(MultiPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT

  RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
  }

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// True when the denominator is the constant 1.
  bool is_polynomial() const { return den_ == MultiPoly(1); }

  RationalFunction& operator+=(const RationalFunction& rhs) {
    if (den_ == rhs.den_) {
      *this = RationalFunction(num_ + rhs.num_, den_);
    } else {
      *this = RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
    }
    return *this;
  }

  RationalFunction& operator-=(const RationalFunction& rhs) { return *this += -rhs; }

  RationalFunction& operator*=(const RationalFunction& rhs) {
    *this = RationalFunction(num_ * rhs.num_, den_ * rhs.den_);
    return *this;
  }

  RationalFunction& operator/=(const RationalFunction& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by the zero rational function");
    *this = RationalFunction(num_ * rhs.den_, den_ * rhs.num_);
    return *this;
  }

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction out = a;
    out.num_ = -out.num_;
    return out;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = MultiPoly(1);
      return;
    }
    Exponents common{0, 0, 0};
    for (Var x : kAllVars) {
      auto k = static_cast<std::size_t>(x);
      common[k] = std::min(num_.min_degree(x), den_.min_degree(x));
    }
    if (common != Exponents{0, 0, 0}) {
      num_.divide_by_monomial(common, num_);
      den_.divide_by_monomial(common, den_);
    }
    Rational scale = den_.content();
    if (den_.leading_term().second < 0) scale = -scale;
    if (scale != 1) {
      Rational inv = 1 / scale;
      num_.scale(inv);
      den_.scale(inv);
    }
  }

  MultiPoly num_;
  MultiPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

inline RationalFunction pow(const RationalFunction& base, unsigned n) {
  return RationalFunction(pow(base.num(), n), pow(base.den(), n));
}

/// Integer power allowing negative exponents, e.g. Q^(2-F).
inline RationalFunction ipow(const MultiPoly& base, long n) {
  if (n >= 0) return RationalFunction(pow(base, static_cast<unsigned>(n)), MultiPoly(1));
  return RationalFunction(MultiPoly(1), pow(base, static_cast<unsigned>(-n)));
}

inline Rational eval(const RationalFunction& r, const Assignment& at) {
  Rational d = eval(r.den(), at);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return eval(r.num(), at) / d;
}

inline RationalFunction specialize(const RationalFunction& r, Var x, const Rational& value) {
  return RationalFunction(specialize(r.num(), x, value), specialize(r.den(), x, value));
}

/// Exact substitution x -> value into a polynomial:
/// sum_k p_k value^k = (sum_k p_k num^k den^(D-k)) / den^D with D = deg_x p.
inline RationalFunction substitute(const MultiPoly& p, Var x, const RationalFunction& value) {
  const auto idx = static_cast<std::size_t>(x);
  const std::uint32_t top = p.degree(x);
  std::map<std::uint32_t, MultiPoly> by_power;
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    rest[idx] = 0;
    by_power[e[idx]].add_term(rest, c);
  }
  MultiPoly num;
  for (const auto& [k, coeff] : by_power)
    num += coeff * pow(value.num(), k) * pow(value.den(), top - k);
  return RationalFunction(std::move(num), pow(value.den(), top));
}

inline RationalFunction substitute(const RationalFunction& r, Var x, const RationalFunction& value) {
  RationalFunction num = substitute(r.num(), x, value);
  RationalFunction den = substitute(r.den(), x, value);
  return num / den;
}

}  // namespace pottschar
