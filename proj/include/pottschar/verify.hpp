#pragma once

// Identity suites behind `pottschar verify`. Each check compares a
// transfer-matrix route against the brute-force oracle or an algebraic
// identity and records the polynomial difference when they disagree.

#include <pottschar/characters.hpp>
#include <pottschar/oracle.hpp>

#include <functional>
#include <string>
#include <vector>

namespace pottschar {

struct CheckOutcome {
  std::string suite;
  std::string lattice;
  std::string identity;
  bool passed = false;
  std::string diff;  // lhs - rhs when the check fails
};

struct VerifyOptions {
  int max_width = 3;
  int max_length = 4;
  int workers = 1;
  bool stop_at_first_failure = true;
};

namespace detail {

class Recorder {
 public:
  Recorder(std::vector<CheckOutcome>& out, bool stop) : out_(out), stop_(stop) {}

  bool halted() const noexcept { return halted_; }

  void poly(const std::string& suite, const std::string& lattice, const std::string& identity, const MultiPoly& lhs,
            const MultiPoly& rhs) {
    MultiPoly d = lhs - rhs;
    record(suite, lattice, identity, d.is_zero(), d.is_zero() ? "" : d.to_string());
  }

  void rational(const std::string& suite, const std::string& lattice, const std::string& identity,
                const RationalFunction& lhs, const RationalFunction& rhs) {
    bool ok = lhs == rhs;
    record(suite, lattice, identity, ok, ok ? "" : (lhs - rhs).to_string());
  }

  void value(const std::string& suite, const std::string& lattice, const std::string& identity, const Rational& lhs,
             const Rational& rhs) {
    record(suite, lattice, identity, lhs == rhs, lhs == rhs ? "" : rational_string(lhs - rhs));
  }

  void record(const std::string& suite, const std::string& lattice, const std::string& identity, bool ok,
              std::string diff) {
    if (halted_) return;
    out_.push_back({suite, lattice, identity, ok, std::move(diff)});
    if (!ok && stop_) halted_ = true;
  }

 private:
  std::vector<CheckOutcome>& out_;
  bool stop_;
  bool halted_ = false;
};

inline std::string lattice_name(int L, int N) { return "square:" + std::to_string(L) + "x" + std::to_string(N); }

}  // namespace detail

/// Z, Z_{2j+1}, the K <-> Z_{2j+1} inversion, the F identities and the
/// closed forms, on every square strip with L <= max_width, N <= max_length.
inline void verify_cyclic(const VerifyOptions& opt, std::vector<CheckOutcome>& out) {
  detail::Recorder rec(out, opt.stop_at_first_failure);
  const MultiPoly Q = MultiPoly::variable(Var::Q);
  const MultiPoly v = MultiPoly::variable(Var::v);
  for (int L = 1; L <= opt.max_width; ++L) {
    for (int N = 1; N <= opt.max_length; ++N) {
      if (rec.halted()) return;
      auto strip = square_strip(L, N);
      auto name = detail::lattice_name(L, N);
      auto table = make_character_table(strip, opt.workers);
      auto spectrum = fk_enumerate(strip, opt.workers);
      rec.poly("cyclic", name, "Z = sum_l c^(l) K_{1,2l+1}", z_from_K(table), spectrum.total());
      MultiPoly resum;
      for (int j = 0; j <= L; ++j) {
        auto zj = z2j_from_K(table, j);
        resum += zj;
        rec.poly("cyclic", name, "Z_" + std::to_string(2 * j + 1) + " = sum_l c_j^(l) K", zj, spectrum.at(j));
      }
      rec.poly("cyclic", name, "Z = sum_j Z_{2j+1}", resum, z_from_K(table));
      MultiPoly alternating;
      for (int l = 0; l <= L; ++l) alternating += table.at(l).scaled(Rational(l % 2 == 0 ? 1 : -1));
      rec.poly("cyclic", name, "Z_1 = sum_l (-1)^l K", alternating, spectrum.at(0));
      for (int l = 0; l <= L; ++l) {
        auto tag = std::to_string(2 * l + 1);
        rec.poly("cyclic", name, "K_1," + tag + " = sum_j n(j,l) Z_{2j+1}/Q^j", K_from_Z2j(spectrum, l), table.at(l));
        MultiPoly next = l + 1 <= L ? bigF(spectrum, l + 1) : MultiPoly();
        rec.poly("cyclic", name, "K_1," + tag + " = F_" + tag + " - F_" + std::to_string(2 * l + 3),
                 bigF(spectrum, l) - next, table.at(l));
      }
      rec.poly("cyclic", name, "K_1," + std::to_string(2 * L + 1) + " = v^(LN)", table.at(L),
               pow(v, static_cast<unsigned>(L * N)));
      if (L == 1) {
        rec.poly("cyclic", name, "K_1,1 = (Q+v)^N", table.at(0), pow(Q + v, static_cast<unsigned>(N)));
        rec.poly("cyclic", name, "K_1,3 = v^N", table.at(1), pow(v, static_cast<unsigned>(N)));
      }
    }
  }
}

/// Duality witnesses, the Q0 decomposition and its specializations, and
/// the fixed-boundary partition function against spin enumeration.
inline void verify_dual(const VerifyOptions& opt, std::vector<CheckOutcome>& out) {
  detail::Recorder rec(out, opt.stop_at_first_failure);
  const MultiPoly Q0 = MultiPoly::variable(Var::Q0);
  rec.poly("dual", "-", "b^(1) = Q0 - 1", amp_b(1), Q0 - MultiPoly(1));
  for (int L = 1; L <= opt.max_width; ++L) {
    for (int N = 1; N <= opt.max_length; ++N) {
      if (rec.halted()) return;
      auto strip = square_strip(L, N);
      auto name = detail::lattice_name(L, N);
      if (strip.edge_count() <= 20) {
        auto report = duality_witness_check(strip);
        rec.record("dual", name, "duality witnesses (dual NTC = j+1, weight identity, aggregate)", report.passed,
                   report.failure);
      }
      auto table = make_character_table(strip, opt.workers);
      auto hist = fk_histogram(strip, opt.workers);
      auto decomposition = dual_decomposition(table).value.num();
      rec.poly("dual", name, "dual oracle = sum_l b^(l) K", decomposition, dual_weight_sum(hist));
      auto spectrum = spectrum_from_histogram(hist);
      rec.poly("dual", name, "Q0 -> Q gives Z", compose(decomposition, Var::Q0, MultiPoly::variable(Var::Q)),
               spectrum.total());
      rec.poly("dual", name, "Q0 -> 0 gives Z_1", specialize(decomposition, Var::Q0, Rational(0)), spectrum.at(0));
    }
  }
  const std::vector<Rational> couplings{Rational(1), Rational(2), make_rational(1, 2)};
  for (int L = 3; L <= opt.max_width + 1; ++L) {
    for (int N = 2; N <= opt.max_length; ++N) {
      if (rec.halted()) return;
      FixedBoundaryLattice lattice(L, N);
      if (square_strip(L - 1, N).edge_count() > kMaxEnumeratedEdges) continue;
      auto zff = z_ff(L, N, opt.workers);
      auto name = "fixed:" + std::to_string(L) + "x" + std::to_string(N);
      for (int q : {2, 3}) {
        std::uint64_t states = 1;
        for (int k = 0; k < lattice.free_site_count() && states <= kMaxSpinStates; ++k) states *= q;
        if (states > kMaxSpinStates) continue;
        for (const auto& v : couplings) {
          rec.value("dual", name, "Z_ff(Q=" + std::to_string(q) + ", v=" + rational_string(v) + ") = spin sum",
                    eval(zff, {{Var::Q, Rational(q)}, {Var::v, v}}), zff_oracle(L, N, q, v));
        }
        auto minimal = zff_minimal_decomposition(L, N, BerahaParam::from_q(Rational(q)), opt.workers);
        rec.rational("dual", name, "Z_ff(Q=" + std::to_string(q) + ") = minimal-character form", minimal.value,
                     specialize(zff, Var::Q, Rational(q)));
      }
    }
  }
}

/// Amplitude periodicity at p = 4, 6 and the minimal-character forms of Z
/// and Z_1.
inline void verify_minimal(const VerifyOptions& opt, std::vector<CheckOutcome>& out) {
  detail::Recorder rec(out, opt.stop_at_first_failure);
  for (int p : {4, 6}) {
    auto beraha = BerahaParam::from_p(p);
    for (int l = 0; l <= 8; ++l) {
      auto c = specialize(amp_c(l), Var::Q, beraha.q_value);
      auto b = specialize(amp_b(l), Var::Q, beraha.q_value);
      for (int n = -2; n <= 2; ++n) {
        int shifted = n * p + l;
        int reflected = p - 1 + n * p - l;
        auto tag = "p=" + std::to_string(p) + ", l=" + std::to_string(l) + ", n=" + std::to_string(n);
        if (shifted >= 0 && shifted <= 8) {
          rec.poly("minimal", "-", "c^(l) = c^(np+l), " + tag, c, specialize(amp_c(shifted), Var::Q, beraha.q_value));
          rec.poly("minimal", "-", "b^(l) = b^(np+l), " + tag, b, specialize(amp_b(shifted), Var::Q, beraha.q_value));
        }
        if (reflected >= 0 && reflected <= 8) {
          rec.poly("minimal", "-", "c^(l) = -c^(p-1+np-l), " + tag, c,
                   -specialize(amp_c(reflected), Var::Q, beraha.q_value));
          rec.poly("minimal", "-", "b^(l) = -b^(p-1+np-l), " + tag, b,
                   -specialize(amp_b(reflected), Var::Q, beraha.q_value));
        }
      }
    }
  }
  for (int L = 1; L <= opt.max_width; ++L) {
    for (int N = 1; N <= opt.max_length; ++N) {
      if (rec.halted()) return;
      auto strip = square_strip(L, N);
      auto name = detail::lattice_name(L, N);
      auto table = make_character_table(strip, opt.workers);
      auto spectrum = fk_enumerate(strip, opt.workers);
      for (int p : {4, 6}) {
        auto beraha = BerahaParam::from_p(p);
        auto z = z_minimal_decomposition(table, beraha).value;
        rec.rational("minimal", name, "Z(p=" + std::to_string(p) + ") = sum c^(l) chi", z,
                     RationalFunction(specialize(spectrum.total(), Var::Q, beraha.q_value)));
        auto z1 = z1_minimal_decomposition(table, beraha).value;
        rec.rational("minimal", name, "Z_1(p=" + std::to_string(p) + ") = sum (-1)^l chi", z1,
                     RationalFunction(specialize(spectrum.at(0), Var::Q, beraha.q_value)));
      }
    }
  }
}

inline std::vector<CheckOutcome> run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
  std::vector<CheckOutcome> out;
  auto failed = [&] {
    return opt.stop_at_first_failure && !out.empty() && !out.back().passed;
  };
  if (suite == "cyclic" || suite == "all") verify_cyclic(opt, out);
  if (failed()) return out;
  if (suite == "dual" || suite == "all") verify_dual(opt, out);
  if (failed()) return out;
  if (suite == "minimal" || suite == "all") verify_minimal(opt, out);
  if (suite != "cyclic" && suite != "dual" && suite != "minimal" && suite != "all")
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace pottschar
