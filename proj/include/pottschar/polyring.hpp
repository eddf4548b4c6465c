#pragma once

// Sparse multivariate polynomials in the variables Q, v and Q0 with
// arbitrary-precision rational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pottschar {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Var : std::uint8_t { Q = 0, v = 1, Q0 = 2 };

inline constexpr std::array<Var, 3> kAllVars{Var::Q, Var::v, Var::Q0};

inline std::string_view var_name(Var x) {
  switch (x) {
    case Var::Q: return "Q";
    case Var::v: return "v";
    case Var::Q0: return "Q0";
  }
  return "?";
}

inline Var parse_var(std::string_view name) {
  if (name == "Q") return Var::Q;
  if (name == "v") return Var::v;
  if (name == "Q0") return Var::Q0;
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

/// Exponent vector (degQ, degv, degQ0). std::array compares
/// lexicographically, which is the monomial order used throughout.
using Exponents = std::array<std::uint32_t, 3>;

inline constexpr Exponents unit_exponent(Var x, std::uint32_t power = 1) {
  Exponents e{0, 0, 0};
  e[static_cast<std::size_t>(x)] = power;
  return e;
}

class MissingVariable : public std::invalid_argument {
 public:
  explicit MissingVariable(Var x)
      : std::invalid_argument("assignment does not cover variable " +
                              std::string(var_name(x))) {}
};

/// Builds a canonical rational from a numerator/denominator pair.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string rational_string(const Rational& r) { return r.get_str(10); }

/// Exact sparse polynomial. No zero coefficient is ever stored, so two
/// polynomials are equal iff their term maps are identical.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(long constant) { add_term(Exponents{0, 0, 0}, Rational(constant)); }  // NOLINT
  explicit MultiPoly(const Rational& constant) { add_term(Exponents{0, 0, 0}, constant); }

  static MultiPoly variable(Var x) { return monomial(Rational(1), unit_exponent(x)); }

  static MultiPoly monomial(const Rational& coeff, const Exponents& e) {
    MultiPoly p;
    p.add_term(e, coeff);
    return p;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0});
  }

  Rational constant_term() const { return coefficient(Exponents{0, 0, 0}); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::uint32_t degree(Var x) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(x)]);
    return d;
  }

  /// Smallest exponent of x over all terms (0 for the zero polynomial).
  std::uint32_t min_degree(Var x) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = UINT32_MAX;
    for (const auto& [e, c] : terms_) d = std::min(d, e[static_cast<std::size_t>(x)]);
    return d;
  }

  bool occurs(Var x) const { return degree(x) > 0; }

  /// Largest monomial under the lexicographic order, with its coefficient.
  const std::pair<const Exponents, Rational>& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(const Exponents& e, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const MultiPoly& rhs) {
    *this = *this * rhs;
    return *this;
  }

  MultiPoly& scale(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        out.add_term(Exponents{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
      }
    }
    return out;
  }

  MultiPoly scaled(const Rational& s) const {
    MultiPoly out = *this;
    return out.scale(s);
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  /// Multiplies by the monomial x^e, shifting every exponent.
  MultiPoly shifted(const Exponents& e) const {
    MultiPoly out;
    for (const auto& [ex, c] : terms_)
      out.terms_.emplace_hint(out.terms_.end(), Exponents{ex[0] + e[0], ex[1] + e[1], ex[2] + e[2]}, c);
    return out;
  }

  /// Exact division by the monomial x^e; false if some term is not divisible.
  bool divide_by_monomial(const Exponents& e, MultiPoly& quotient) const {
    MultiPoly out;
    for (const auto& [ex, c] : terms_) {
      if (ex[0] < e[0] || ex[1] < e[1] || ex[2] < e[2]) return false;
      out.terms_.emplace_hint(out.terms_.end(), Exponents{ex[0] - e[0], ex[1] - e[1], ex[2] - e[2]}, c);
    }
    quotient = std::move(out);
    return true;
  }

  /// Positive rational c such that (*this)/c has coprime integer
  /// coefficients. The zero polynomial has content 1.
  Rational content() const {
    if (terms_.empty()) return Rational(1);
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& [e, c] : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
  }

  bool has_integer_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (c.get_den() != 1) return false;
    return true;
  }

  bool has_nonnegative_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  /// Human-readable rendering, highest monomial first, e.g. "Q^2 + 2*Q*v - 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool constant = e == Exponents{0, 0, 0};
      bool wrote = false;
      if (constant || mag != 1) {
        os << rational_string(mag);
        wrote = true;
      }
      for (Var x : kAllVars) {
        auto k = e[static_cast<std::size_t>(x)];
        if (k == 0) continue;
        if (wrote) os << "*";
        os << var_name(x);
        if (k > 1) os << "^" << k;
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

inline MultiPoly pow(const MultiPoly& base, unsigned n) {
  MultiPoly result(1);
  MultiPoly b = base;
  while (n > 0) {
    if (n & 1U) result *= b;
    n >>= 1U;
    if (n > 0) b *= b;
  }
  return result;
}

inline Rational pow(const Rational& base, unsigned n) {
  Rational result(1);
  for (unsigned k = 0; k < n; ++k) result *= base;
  return result;
}

using Assignment = std::map<Var, Rational>;

/// Exact evaluation; throws MissingVariable when a variable that occurs in
/// p is not assigned.
inline Rational eval(const MultiPoly& p, const Assignment& at) {
  for (Var x : kAllVars)
    if (p.occurs(x) && !at.contains(x)) throw MissingVariable(x);
  Rational total(0);
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (Var x : kAllVars) {
      auto k = e[static_cast<std::size_t>(x)];
      if (k > 0) term *= pow(at.at(x), k);
    }
    total += term;
  }
  return total;
}

/// Replaces x by the constant value, leaving the other variables symbolic.
inline MultiPoly specialize(const MultiPoly& p, Var x, const Rational& value) {
  const auto idx = static_cast<std::size_t>(x);
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    rest[idx] = 0;
    out.add_term(rest, c * pow(value, e[idx]));
  }
  return out;
}

/// Polynomial substitution x -> replacement.
inline MultiPoly compose(const MultiPoly& p, Var x, const MultiPoly& replacement) {
  const auto idx = static_cast<std::size_t>(x);
  std::map<std::uint32_t, MultiPoly> powers;
  powers.emplace(0, MultiPoly(1));
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) {
    auto k = e[idx];
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, pow(replacement, k)).first;
    Exponents rest = e;
    rest[idx] = 0;
    out += it->second.shifted(rest).scaled(c);
  }
  return out;
}

}  // namespace pottschar
