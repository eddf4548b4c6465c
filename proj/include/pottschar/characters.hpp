#pragma once

// Amplitudes and character decompositions: Z, the fixed-NTC partition
// functions Z_{2j+1}, the F_{2l+1}, the minimal characters at integer p,
// the dual model with exterior weight Q0, and fixed transverse boundaries.

#include <pottschar/lattice.hpp>
#include <pottschar/oracle.hpp>
#include <pottschar/rational_function.hpp>
#include <pottschar/transfer.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace pottschar {

class DivisibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline MultiPoly signed_binomial_monomial(int l, int j, Exponents e) {
  Rational coeff(static_cast<long>(binomial(static_cast<unsigned>(l + j), l - j)));
  if ((l - j) % 2 != 0) coeff = -coeff;
  return MultiPoly::monomial(coeff, e);
}

}  // namespace detail

/// c_j^(l) = (-1)^(l-j) C(l+j, l-j) Q^j; zero unless 0 <= j <= l.
inline MultiPoly amp_cj(int j, int l) {
  if (j < 0 || l < 0 || j > l) return MultiPoly();
  return detail::signed_binomial_monomial(l, j, unit_exponent(Var::Q, static_cast<std::uint32_t>(j)));
}

/// c^(l) = (2l+1)_q as a degree-l polynomial in Q.
inline MultiPoly amp_c(int l) {
  if (l < 0) throw std::invalid_argument("amplitude index must be nonnegative");
  MultiPoly c;
  for (int j = 0; j <= l; ++j) c += amp_cj(j, l);
  return c;
}

/// b^(l) = (-1)^l + sum_{j=1}^l (-1)^(l-j) C(l+j, l-j) Q0 Q^(j-1).
inline MultiPoly amp_b(int l) {
  if (l < 0) throw std::invalid_argument("amplitude index must be nonnegative");
  MultiPoly b((l % 2 == 0) ? 1L : -1L);
  for (int j = 1; j <= l; ++j)
    b += detail::signed_binomial_monomial(l, j, Exponents{static_cast<std::uint32_t>(j - 1), 0, 1});
  return b;
}

/// K_{1,2l+1}(L, N) for l = 0..L, with K = 0 beyond L.
struct CharacterTable {
  CyclicStrip strip;
  std::vector<MultiPoly> K;

  int width() const noexcept { return strip.width(); }

  MultiPoly at(int l) const {
    if (l < 0 || l >= static_cast<int>(K.size())) return MultiPoly();
    return K[static_cast<std::size_t>(l)];
  }
};

inline CharacterTable make_character_table(const CyclicStrip& strip, int workers = 1) {
  return CharacterTable{strip, character_table(strip, workers)};
}

/// Z = sum_l c^(l) K_{1,2l+1}
inline MultiPoly z_from_K(const CharacterTable& table) {
  MultiPoly z;
  for (int l = 0; l <= table.width(); ++l) z += amp_c(l) * table.at(l);
  return z;
}

/// Z_{2j+1} = sum_{l>=j} c_j^(l) K_{1,2l+1}
inline MultiPoly z2j_from_K(const CharacterTable& table, int j) {
  if (j < 0 || j > table.width()) throw std::invalid_argument("NTC count must be in [0, L]");
  MultiPoly z;
  for (int l = j; l <= table.width(); ++l) z += amp_cj(j, l) * table.at(l);
  return z;
}

namespace detail {

inline MultiPoly divide_by_Q_power(const MultiPoly& p, int j) {
  MultiPoly q;
  if (!p.divide_by_monomial(unit_exponent(Var::Q, static_cast<std::uint32_t>(j)), q))
    throw DivisibilityError("Z_{2j+1} is not divisible by Q^" + std::to_string(j) + ": " + p.to_string());
  return q;
}

inline void check_spectrum(const NtcSpectrum& spectrum, int l) {
  if (l < 0) throw std::invalid_argument("bridge count must be nonnegative");
  if (spectrum.by_ntc.empty()) throw std::invalid_argument("empty NTC spectrum");
}

}  // namespace detail

/// K_{1,2l+1} = sum_{j>=l} n(j,l) Z_{2j+1} / Q^j from an oracle spectrum.
inline MultiPoly K_from_Z2j(const NtcSpectrum& spectrum, int l) {
  detail::check_spectrum(spectrum, l);
  MultiPoly k;
  for (int j = l; j <= spectrum.max_ntc(); ++j) {
    auto scaled = detail::divide_by_Q_power(spectrum.at(j), j);
    k += scaled.scaled(Rational(static_cast<long>(count_states(j, l))));
  }
  return k;
}

/// F_{2l+1} = sum_{j>=l} C(2j, j-l) Z_{2j+1} / Q^j.
inline MultiPoly bigF(const NtcSpectrum& spectrum, int l) {
  detail::check_spectrum(spectrum, l);
  MultiPoly f;
  for (int j = l; j <= spectrum.max_ntc(); ++j) {
    auto scaled = detail::divide_by_Q_power(spectrum.at(j), j);
    f += scaled.scaled(Rational(static_cast<long>(binomial(static_cast<unsigned>(2 * j), j - l))));
  }
  return f;
}

/// Q^(1/2) = 2 cos(pi/p), restricted to the p where Q is rational.
struct BerahaParam {
  int p = 0;
  Rational q_value;

  static BerahaParam from_p(int p) {
    switch (p) {
      case 2: return {2, Rational(0)};
      case 3: return {3, Rational(1)};
      case 4: return {4, Rational(2)};
      case 6: return {6, Rational(3)};
      default:
        throw std::invalid_argument("p = " + std::to_string(p) +
                                    " gives an irrational Q; supported p are 2, 3, 4, 6");
    }
  }

  static BerahaParam from_q(const Rational& q) {
    for (int p : {2, 3, 4, 6})
      if (from_p(p).q_value == q) return from_p(p);
    throw std::invalid_argument("Q = " + rational_string(q) + " is not a rational Beraha number");
  }

  bool even() const noexcept { return p % 2 == 0; }
  int kac_max() const noexcept { return (p - 2) / 2; }
};

/// Minimal character chi_{1,2l+1} with Q specialized to the Beraha value:
/// sum_{n>=0} (K_{np+l} - K_{(n+1)p-1-l}), K = 0 beyond L.
inline MultiPoly chi(const CharacterTable& table, int l, const BerahaParam& beraha) {
  const int p = beraha.p;
  if (l < 0 || l > p - 2) throw std::invalid_argument("chi index must be in [0, p-2]");
  const int L = table.width();
  MultiPoly out;
  for (int n = 0;; ++n) {
    int plus = n * p + l;
    int minus = (n + 1) * p - 1 - l;
    if (plus > L && minus > L) break;
    out += table.at(plus);
    out -= table.at(minus);
  }
  return specialize(out, Var::Q, beraha.q_value);
}

struct DecompositionTerm {
  int index = 0;             // l (or j for bigF)
  MultiPoly amplitude;
  RationalFunction character;
};

/// value = prefactor * sum_k amplitude_k * character_k
struct DecompositionResult {
  std::string target;
  std::string basis;  // "K", "chi" or "Z"
  RationalFunction prefactor{1};
  std::vector<DecompositionTerm> terms;
  RationalFunction value;

  RationalFunction resum() const {
    RationalFunction s;
    for (const auto& t : terms) s += RationalFunction(t.amplitude) * t.character;
    return prefactor * s;
  }

  bool consistent() const { return resum() == value; }

  std::vector<int> nonzero_indices() const {
    std::vector<int> out;
    for (const auto& t : terms)
      if (!t.amplitude.is_zero() && !t.character.is_zero()) out.push_back(t.index);
    return out;
  }
};

namespace detail {

inline DecompositionResult finish(DecompositionResult r) {
  r.value = r.resum();
  return r;
}

}  // namespace detail

inline DecompositionResult z_decomposition(const CharacterTable& table) {
  DecompositionResult r{"z", "K", RationalFunction(1), {}, {}};
  for (int l = 0; l <= table.width(); ++l) r.terms.push_back({l, amp_c(l), RationalFunction(table.at(l))});
  return detail::finish(std::move(r));
}

inline DecompositionResult z2j_decomposition(const CharacterTable& table, int j) {
  if (j < 0 || j > table.width()) throw std::invalid_argument("NTC count must be in [0, L]");
  DecompositionResult r{"z2j", "K", RationalFunction(1), {}, {}};
  for (int l = j; l <= table.width(); ++l) r.terms.push_back({l, amp_cj(j, l), RationalFunction(table.at(l))});
  return detail::finish(std::move(r));
}

/// F_{2l+1} in terms of the NTC spectrum, term index j.
inline DecompositionResult bigF_decomposition(const NtcSpectrum& spectrum, int l) {
  DecompositionResult r{"bigf", "Z", RationalFunction(1), {}, {}};
  for (int j = l; j <= spectrum.max_ntc(); ++j) {
    MultiPoly amp(Rational(static_cast<long>(binomial(static_cast<unsigned>(2 * j), j - l))));
    r.terms.push_back({j, amp, RationalFunction(spectrum.at(j), pow(MultiPoly::variable(Var::Q), static_cast<unsigned>(j)))});
  }
  return detail::finish(std::move(r));
}

/// Q^(2-F) v^E / Q0 * Z~_{Q0}(Q/v) = sum_l b^(l) K_{1,2l+1}
inline DecompositionResult dual_decomposition(const CharacterTable& table) {
  DecompositionResult r{"dual", "K", RationalFunction(1), {}, {}};
  for (int l = 0; l <= table.width(); ++l) r.terms.push_back({l, amp_b(l), RationalFunction(table.at(l))});
  return detail::finish(std::move(r));
}

/// Z at the Beraha value as sum over l <= (p-2)/2 of c^(l) chi_{1,2l+1}.
inline DecompositionResult z_minimal_decomposition(const CharacterTable& table, const BerahaParam& beraha) {
  DecompositionResult r{"z", "chi", RationalFunction(1), {}, {}};
  for (int l = 0; l <= beraha.kac_max(); ++l)
    r.terms.push_back({l, specialize(amp_c(l), Var::Q, beraha.q_value), RationalFunction(chi(table, l, beraha))});
  return detail::finish(std::move(r));
}

/// Z_1 at even p as sum over l <= (p-2)/2 of (-1)^l chi_{1,2l+1}.
inline DecompositionResult z1_minimal_decomposition(const CharacterTable& table, const BerahaParam& beraha) {
  if (!beraha.even()) throw std::invalid_argument("the chi decomposition of Z_1 needs even p");
  DecompositionResult r{"z2j", "chi", RationalFunction(1), {}, {}};
  for (int l = 0; l <= beraha.kac_max(); ++l)
    r.terms.push_back({l, MultiPoly(l % 2 == 0 ? 1L : -1L), RationalFunction(chi(table, l, beraha))});
  return detail::finish(std::move(r));
}

namespace detail {

/// (1+v)^(2N) Q^(F-2) (v/Q)^E for the direct strip of width L-1; the
/// direct coupling is Q/v when v is the fixed-boundary coupling.
inline RationalFunction zff_prefactor(const CyclicStrip& direct) {
  const MultiPoly Q = MultiPoly::variable(Var::Q);
  const MultiPoly v = MultiPoly::variable(Var::v);
  const auto E = static_cast<unsigned>(direct.edge_count());
  return RationalFunction(pow(MultiPoly(1) + v, static_cast<unsigned>(2 * direct.length()))) *
         ipow(Q, direct.face_count() - 2) * RationalFunction(pow(v, E), pow(Q, E));
}

inline CyclicStrip zff_direct_strip(int width, int length) {
  if (width < 3) throw std::invalid_argument("fixed-boundary decomposition needs L >= 3");
  return square_strip(width - 1, length);
}

inline RationalFunction at_dual_coupling(const MultiPoly& k) {
  const RationalFunction dual_v(MultiPoly::variable(Var::Q), MultiPoly::variable(Var::v));
  return substitute(k, Var::v, dual_v);
}

}  // namespace detail

/// Fixed-boundary decomposition over K of the width L-1 strip at the dual
/// coupling, Q0 = 1.
inline DecompositionResult zff_decomposition(int width, int length, int workers = 1) {
  auto direct = detail::zff_direct_strip(width, length);
  auto table = make_character_table(direct, workers);
  DecompositionResult r{"zff", "K", detail::zff_prefactor(direct), {}, {}};
  for (int l = 0; l <= table.width(); ++l)
    r.terms.push_back({l, specialize(amp_b(l), Var::Q0, Rational(1)), detail::at_dual_coupling(table.at(l))});
  return detail::finish(std::move(r));
}

/// Z_ff(L, N) as an exact rational function of (Q, v).
inline RationalFunction z_ff(int width, int length, int workers = 1) {
  return zff_decomposition(width, length, workers).value;
}

/// Z_ff at the Beraha value of even p, in minimal characters.
inline DecompositionResult zff_minimal_decomposition(int width, int length, const BerahaParam& beraha,
                                                     int workers = 1) {
  if (!beraha.even()) throw std::invalid_argument("the chi decomposition of Z_ff needs even p");
  auto direct = detail::zff_direct_strip(width, length);
  auto table = make_character_table(direct, workers);
  DecompositionResult r{"zff", "chi", specialize(detail::zff_prefactor(direct), Var::Q, beraha.q_value), {}, {}};
  const RationalFunction dual_v(MultiPoly(beraha.q_value), MultiPoly::variable(Var::v));
  for (int l = 0; l <= beraha.kac_max(); ++l) {
    MultiPoly amp = specialize(specialize(amp_b(l), Var::Q0, Rational(1)), Var::Q, beraha.q_value);
    r.terms.push_back({l, amp, substitute(chi(table, l, beraha), Var::v, dual_v)});
  }
  return detail::finish(std::move(r));
}

}  // namespace pottschar
