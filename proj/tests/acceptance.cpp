// Acceptance run: one PASS/FAIL line per criterion, exact equality
// throughout. Exit status is the number of failing criteria.

#include <pottschar/pottschar.hpp>

#include "support/brute_force.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace pottschar;

namespace {

struct Check {
  bool ok = true;
  std::string first_failure;
  int count = 0;

  void expect(bool cond, const std::string& what) {
    ++count;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

const MultiPoly Q = MultiPoly::variable(Var::Q);
const MultiPoly v = MultiPoly::variable(Var::v);
const MultiPoly Q0 = MultiPoly::variable(Var::Q0);

std::string name(int L, int N) { return "square:" + std::to_string(L) + "x" + std::to_string(N); }

void dimension_formula(Check& c) {
  for (int L = 1; L <= 6; ++L) {
    std::uint64_t squares = 0;
    for (int l = 0; l <= L; ++l) {
      auto n = count_states(L, l);
      auto states = enumerate_states(L, l);
      c.expect(states.size() == n, "enumerate_states size, L=" + std::to_string(L) + " l=" + std::to_string(l));
      c.expect(bruteforce::marked_states(L, l).size() == n,
               "set-partition enumeration, L=" + std::to_string(L) + " l=" + std::to_string(l));
      squares += n * n;
    }
    c.expect(squares == catalan(2 * L), "sum of squares, L=" + std::to_string(L));
  }
}

void block_structure(Check& c) {
  for (int L = 1; L <= 3; ++L) {
    auto report = verify_block_structure(square_strip(L, 1));
    c.expect(report.passed(), "L=" + std::to_string(L) + ": " + report.failure);
  }
}

void main_decomposition(Check& c) {
  for (int L = 1; L <= 3; ++L)
    for (int N = 1; N <= 4; ++N) {
      auto strip = square_strip(L, N);
      c.expect(z_from_K(make_character_table(strip)) == fk_z(strip), name(L, N));
    }
}

void constrained_decomposition(Check& c) {
  for (int L = 1; L <= 3; ++L)
    for (int N = 1; N <= 4; ++N) {
      auto strip = square_strip(L, N);
      auto table = make_character_table(strip);
      auto spectrum = fk_enumerate(strip);
      MultiPoly alternating;
      for (int j = 0; j <= L; ++j) {
        c.expect(z2j_from_K(table, j) == spectrum.at(j), name(L, N) + " Z_" + std::to_string(2 * j + 1));
        c.expect(K_from_Z2j(spectrum, j) == character_K(strip, j), name(L, N) + " K from Z, l=" + std::to_string(j));
        alternating += table.at(j).scaled(Rational(j % 2 == 0 ? 1 : -1));
      }
      c.expect(alternating == spectrum.at(0), name(L, N) + " alternating sum");
    }
}

void f_identities(Check& c) {
  for (int L = 1; L <= 3; ++L)
    for (int N = 1; N <= 4; ++N) {
      auto strip = square_strip(L, N);
      auto spectrum = fk_enumerate(strip);
      for (int l = 0; l <= L; ++l) {
        MultiPoly next = l < L ? bigF(spectrum, l + 1) : MultiPoly();
        c.expect(bigF(spectrum, l) - next == character_K(strip, l), name(L, N) + " l=" + std::to_string(l));
      }
    }
}

void amplitude_symmetries(Check& c) {
  const std::vector<long> at2{1, 1, -1, -1, 1, 1, -1, -1, 1};
  const std::vector<long> at3{1, 2, 1, -1, -2, -1, 1, 2, 1};
  for (int l = 0; l <= 8; ++l) {
    c.expect(eval(amp_c(l), {{Var::Q, Rational(2)}}) == at2[l], "c at Q=2, l=" + std::to_string(l));
    c.expect(eval(amp_c(l), {{Var::Q, Rational(3)}}) == at3[l], "c at Q=3, l=" + std::to_string(l));
  }
  auto b = [](int l) { return specialize(amp_b(l), Var::Q, Rational(2)); };
  for (int l = 0; l <= 8; ++l) {
    if (l + 4 <= 8) c.expect(b(l + 4) == b(l), "b period 4, l=" + std::to_string(l));
    if (l <= 3) c.expect(b(3 - l) == -b(l), "b reflection, l=" + std::to_string(l));
    c.expect(b(l) != MultiPoly() && (b(l).occurs(Var::Q0) == (l % 4 == 1 || l % 4 == 2)),
             "b Q0 dependence, l=" + std::to_string(l));
  }
}

void minimal_characters(Check& c) {
  for (int L = 2; L <= 3; ++L)
    for (int N = 2; N <= 4; ++N) {
      auto strip = square_strip(L, N);
      auto table = make_character_table(strip);
      auto spectrum = fk_enumerate(strip);
      for (int p : {4, 6}) {
        auto beraha = BerahaParam::from_p(p);
        auto expected = RationalFunction(specialize(spectrum.total(), Var::Q, beraha.q_value));
        c.expect(z_minimal_decomposition(table, beraha).value == expected, name(L, N) + " Z, p=" + std::to_string(p));
      }
      auto z1 = z1_minimal_decomposition(table, BerahaParam::from_p(4)).value;
      c.expect(z1 == RationalFunction(specialize(spectrum.at(0), Var::Q, Rational(2))), name(L, N) + " Z_1, p=4");
    }
}

void duality(Check& c) {
  for (auto [L, N] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    auto report = duality_witness_check(square_strip(L, N));
    c.expect(report.ntc_correspondence, name(L, N) + " dual NTC = j+1");
    c.expect(report.weights_match, name(L, N) + " per-configuration weights: " + report.failure);
    c.expect(report.aggregate_match, name(L, N) + " aggregate relation: " + report.failure);
  }
}

void dual_decomposition_check(Check& c) {
  c.expect(amp_b(1) == Q0 - MultiPoly(1), "b^(1) = Q0 - 1");
  for (int L = 1; L <= 2; ++L)
    for (int N = 2; N <= 3; ++N) {
      auto strip = square_strip(L, N);
      auto value = dual_decomposition(make_character_table(strip)).value;
      auto oracle = dual_oracle(strip);
      c.expect(value == RationalFunction(oracle), name(L, N) + " decomposition = oracle");
      c.expect(compose(value.num(), Var::Q0, Q) == fk_z(strip), name(L, N) + " Q0 -> Q");
      c.expect(specialize(value.num(), Var::Q0, Rational(0)) == fk_enumerate(strip).at(0), name(L, N) + " Q0 -> 0");
    }
}

void fixed_boundaries(Check& c) {
  const std::vector<Rational> couplings{Rational(1), Rational(2), make_rational(1, 2)};
  struct Case {
    int N;
    int q;
  };
  for (auto [N, q] : {Case{2, 2}, Case{3, 2}, Case{2, 3}}) {
    auto zff = z_ff(3, N);
    for (const auto& x : couplings)
      c.expect(eval(zff, {{Var::Q, Rational(q)}, {Var::v, x}}) == zff_oracle(3, N, q, x),
               "L=3 N=" + std::to_string(N) + " Q=" + std::to_string(q) + " v=" + rational_string(x));
  }
  for (int N = 2; N <= 3; ++N) {
    auto r = zff_minimal_decomposition(3, N, BerahaParam::from_p(4));
    c.expect(r.nonzero_indices() == std::vector<int>{0}, "Q=2 terms, N=" + std::to_string(N));
  }
  auto r = zff_minimal_decomposition(3, 2, BerahaParam::from_p(6));
  c.expect(r.nonzero_indices() == std::vector<int>{0, 2}, "Q=3 terms, N=2");
}

void closed_forms(Check& c) {
  for (int N = 1; N <= 4; ++N) {
    auto strip = square_strip(1, N);
    c.expect(character_K(strip, 0) == pow(Q + v, N), "K_1,1(1," + std::to_string(N) + ")");
    c.expect(character_K(strip, 1) == pow(v, N), "K_1,3(1," + std::to_string(N) + ")");
  }
  for (int L = 1; L <= 3; ++L)
    for (int N = 1; N <= 4; ++N)
      c.expect(character_K(square_strip(L, N), L) == pow(v, L * N), name(L, N) + " K_1,2L+1");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "dimension formula n(L,l) and Catalan sum", dimension_formula},
      {2, "block structure of the full transfer matrix", block_structure},
      {3, "Z = sum_l c^(l) K_{1,2l+1}", main_decomposition},
      {4, "constrained decomposition Z_{2j+1} and its inversion", constrained_decomposition},
      {5, "F identities", f_identities},
      {6, "amplitude symmetries", amplitude_symmetries},
      {7, "minimal characters at Q = 2, 3", minimal_characters},
      {8, "duality witnesses", duality},
      {9, "dual decomposition with Q0", dual_decomposition_check},
      {10, "fixed-boundary partition function", fixed_boundaries},
      {11, "closed-form spot checks", closed_forms},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& criterion : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.first_failure = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%d checks, %.2f s)", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.title, check.count, seconds);
    if (!check.ok) std::printf(" first failure: %s", check.first_failure.c_str());
    std::printf("\n");
    failures += check.ok ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              total);
  return failures;
}
