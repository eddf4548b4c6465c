#pragma once

// Brute-force ground truth: edge-subset enumeration of the cluster
// expansion with wrapping-cluster counts, spin sums at integer Q, the
// dual-lattice weight translation, and fixed-boundary spin sums.

#include <pottschar/lattice.hpp>
#include <pottschar/rational_function.hpp>

#include <bit>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace pottschar {

inline constexpr int kMaxEnumeratedEdges = 24;
inline constexpr std::uint64_t kMaxSpinStates = 10'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Union-find whose links carry an integer winding along the periodic
/// direction. Closing a cycle with nonzero total winding marks the
/// component as wrapping.
class WindingUnionFind {
 public:
  explicit WindingUnionFind(int n) : parent_(n), offset_(n), size_(n), wraps_(n) { reset(); }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), 0);
    std::fill(offset_.begin(), offset_.end(), 0);
    std::fill(size_.begin(), size_.end(), 1);
    std::fill(wraps_.begin(), wraps_.end(), false);
    components_ = static_cast<int>(parent_.size());
  }

  /// Root of x and the winding of x relative to it.
  std::pair<int, int> find(int x) {
    int off = 0;
    int r = x;
    while (parent_[r] != r) {
      off += offset_[r];
      r = parent_[r];
    }
    // path compression
    int acc = off;
    while (parent_[x] != x) {
      int next = parent_[x];
      int step = offset_[x];
      parent_[x] = r;
      offset_[x] = acc;
      acc -= step;
      x = next;
    }
    return {r, off};
  }

  /// Adds a link with position(b) = position(a) + winding.
  void unite(int a, int b, int winding) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    if (ra == rb) {
      if (ob != oa + winding) wraps_[ra] = true;
      return;
    }
    int off = oa + winding - ob;  // position(rb) relative to ra
    if (size_[ra] < size_[rb]) {
      std::swap(ra, rb);
      off = -off;
    }
    parent_[rb] = ra;
    offset_[rb] = off;
    size_[ra] += size_[rb];
    wraps_[ra] = wraps_[ra] || wraps_[rb];
    --components_;
  }

  int component_count() const noexcept { return components_; }
  bool root_wraps(int root) const noexcept { return wraps_[root]; }
  bool is_root(int x) const noexcept { return parent_[x] == x; }

  int wrapping_count() const {
    int n = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x)
      if (parent_[x] == static_cast<int>(x) && wraps_[x]) ++n;
    return n;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> offset_;
  std::vector<int> size_;
  std::vector<bool> wraps_;
  int components_ = 0;
};

/// Z_{2j+1} for j = 0..L.
struct NtcSpectrum {
  std::vector<MultiPoly> by_ntc;

  const MultiPoly& at(int j) const { return by_ntc.at(static_cast<std::size_t>(j)); }
  int max_ntc() const { return static_cast<int>(by_ntc.size()) - 1; }

  MultiPoly total() const {
    MultiPoly z;
    for (const auto& p : by_ntc) z += p;
    return z;
  }
};

/// Number of edge subsets with given (wrapping clusters j, clusters n,
/// occupied edges b).
class ClusterHistogram {
 public:
  ClusterHistogram(int max_ntc, int vertices, int edges)
      : ntc_(max_ntc + 1), clusters_(vertices + 1), edges_(edges + 1),
        counts_(static_cast<std::size_t>(ntc_ * clusters_ * edges_), 0) {}

  std::uint64_t& at(int j, int n, int b) { return counts_[index(j, n, b)]; }
  std::uint64_t at(int j, int n, int b) const { return counts_[index(j, n, b)]; }

  int max_ntc() const noexcept { return ntc_ - 1; }
  int max_clusters() const noexcept { return clusters_ - 1; }
  int max_edges() const noexcept { return edges_ - 1; }

  ClusterHistogram& operator+=(const ClusterHistogram& rhs) {
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += rhs.counts_[k];
    return *this;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int j = 0; j < ntc_; ++j)
      for (int n = 0; n < clusters_; ++n)
        for (int b = 0; b < edges_; ++b)
          if (auto c = at(j, n, b)) fn(j, n, b, c);
  }

 private:
  std::size_t index(int j, int n, int b) const {
    return (static_cast<std::size_t>(j) * clusters_ + n) * edges_ + b;
  }

  int ntc_;
  int clusters_;
  int edges_;
  std::vector<std::uint64_t> counts_;
};

namespace detail {

inline void check_edge_budget(int edges, int limit) {
  if (edges > limit)
    throw BudgetExceeded("strip has " + std::to_string(edges) + " edges; exhaustive enumeration is limited to " +
                         std::to_string(limit) + " (use a smaller strip)");
}

inline MultiPoly weight_monomial(const Rational& coeff, int q, int v, int q0 = 0) {
  return MultiPoly::monomial(coeff, Exponents{static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(v),
                                              static_cast<std::uint32_t>(q0)});
}

inline Rational to_rational(std::uint64_t count) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(count), 0, 0, &count);
  return Rational(z);
}

/// Splits [0, total) into `workers` contiguous ranges and runs fn on each.
template <class Fn>
void parallel_ranges(std::uint64_t total, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || total < 1024) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
    std::uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Exhaustive count over all 2^E edge subsets. Workers partition the
/// subset range; integer counts make the merge order irrelevant.
inline ClusterHistogram fk_histogram(const CyclicStrip& strip, int workers = 1) {
  const int E = strip.edge_count();
  detail::check_edge_budget(E, kMaxEnumeratedEdges);
  const int V = strip.vertex_count();
  const int L = strip.width();
  const auto edges = strip.edges();
  const std::uint64_t total = std::uint64_t{1} << E;
  workers = std::max(1, workers);
  std::vector<ClusterHistogram> partial(static_cast<std::size_t>(workers), ClusterHistogram(L, V, E));
  detail::parallel_ranges(total, workers, [&](int w, std::uint64_t lo, std::uint64_t hi) {
    WindingUnionFind uf(V);
    auto& hist = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      uf.reset();
      for (int k = 0; k < E; ++k)
        if (mask >> k & 1U) uf.unite(edges[k].a, edges[k].b, edges[k].winding);
      int j = uf.wrapping_count();
      if (j > L) throw std::logic_error("more wrapping clusters than rows");
      ++hist.at(j, uf.component_count(), std::popcount(mask));
    }
  });
  ClusterHistogram merged(L, V, E);
  for (const auto& h : partial) merged += h;
  return merged;
}

inline NtcSpectrum spectrum_from_histogram(const ClusterHistogram& hist) {
  NtcSpectrum s;
  s.by_ntc.resize(static_cast<std::size_t>(hist.max_ntc()) + 1);
  hist.for_each([&](int j, int n, int b, std::uint64_t c) {
    s.by_ntc[j] += detail::weight_monomial(detail::to_rational(c), n, b);
  });
  return s;
}

inline NtcSpectrum fk_enumerate(const CyclicStrip& strip, int workers = 1) {
  return spectrum_from_histogram(fk_histogram(strip, workers));
}

inline MultiPoly fk_z(const CyclicStrip& strip, int workers = 1) { return fk_enumerate(strip, workers).total(); }

/// Weights translated from the dual model with exterior clusters weighted
/// Q0: Q^t v^b when j = 0, Q0 Q^(j-1) Q^t v^b when j >= 1 (t = n - j).
inline MultiPoly dual_weight_sum(const ClusterHistogram& hist) {
  MultiPoly z;
  hist.for_each([&](int j, int n, int b, std::uint64_t c) {
    int t = n - j;
    if (j == 0) {
      z += detail::weight_monomial(detail::to_rational(c), t, b);
    } else {
      z += detail::weight_monomial(detail::to_rational(c), j - 1 + t, b, 1);
    }
  });
  return z;
}

inline MultiPoly dual_oracle(const CyclicStrip& strip, int workers = 1) {
  return dual_weight_sum(fk_histogram(strip, workers));
}

namespace detail {

/// sum_k hist[k] (1+v)^k
inline Rational bond_sum(const std::vector<std::uint64_t>& hist, const Rational& v) {
  Rational total(0);
  Rational factor(1);
  const Rational step = 1 + v;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] != 0) total += to_rational(hist[k]) * factor;
    factor *= step;
  }
  return total;
}

inline std::uint64_t checked_power(int base, int exponent, std::uint64_t limit) {
  std::uint64_t states = 1;
  for (int k = 0; k < exponent; ++k) {
    states *= static_cast<std::uint64_t>(base);
    if (states > limit)
      throw BudgetExceeded("spin enumeration needs more than " + std::to_string(limit) + " states");
  }
  return states;
}

}  // namespace detail

/// Spin-representation sum of prod_edges (1 + v delta) at integer Q.
inline Rational spin_z(const CyclicStrip& strip, int q, const Rational& v) {
  if (q < 1) throw std::invalid_argument("spin enumeration needs Q >= 1");
  const int V = strip.vertex_count();
  detail::checked_power(q, V, kMaxSpinStates);
  const auto edges = strip.edges();
  std::vector<std::uint64_t> hist(edges.size() + 1, 0);
  std::vector<int> spin(static_cast<std::size_t>(V), 0);
  while (true) {
    int satisfied = 0;
    for (const auto& e : edges) satisfied += spin[e.a] == spin[e.b];
    ++hist[satisfied];
    int k = 0;
    while (k < V && ++spin[k] == q) spin[k++] = 0;
    if (k == V) break;
  }
  return detail::bond_sum(hist, v);
}

/// Per-configuration statistics on both sides of the duality.
struct DualityWitness {
  std::uint64_t mask = 0;
  int ntc = 0;          // j
  int trivial = 0;      // t
  int edges = 0;        // b
  int dual_ntc = 0;     // wrapping or exterior-touching dual clusters
  int dual_trivial = 0; // t~
  int dual_edges = 0;   // b~ = E - b
  int dual_clusters = 0;
};

/// Visits every direct configuration with its dual complement.
inline void for_each_duality_witness(const CyclicStrip& strip, const std::function<void(const DualityWitness&)>& fn) {
  const int E = strip.edge_count();
  detail::check_edge_budget(E, 20);
  const auto edges = strip.edges();
  const auto dual = square_dual(strip);
  WindingUnionFind direct(strip.vertex_count());
  WindingUnionFind uf(dual.vertex_count);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << E); ++mask) {
    direct.reset();
    uf.reset();
    for (int k = 0; k < E; ++k) {
      if (mask >> k & 1U) {
        direct.unite(edges[k].a, edges[k].b, edges[k].winding);
      } else {
        uf.unite(dual.edges[k].a, dual.edges[k].b, dual.edges[k].winding);
      }
    }
    DualityWitness w;
    w.mask = mask;
    w.edges = std::popcount(mask);
    w.ntc = direct.wrapping_count();
    w.trivial = direct.component_count() - w.ntc;
    w.dual_edges = E - w.edges;
    w.dual_clusters = uf.component_count();
    std::set<int> nontrivial;
    for (int x = 0; x < dual.vertex_count; ++x)
      if (uf.is_root(x) && uf.root_wraps(x)) nontrivial.insert(x);
    nontrivial.insert(uf.find(dual.bottom).first);
    nontrivial.insert(uf.find(dual.top).first);
    w.dual_ntc = static_cast<int>(nontrivial.size());
    w.dual_trivial = w.dual_clusters - w.dual_ntc;
    fn(w);
  }
}

struct DualityReport {
  bool passed = false;
  std::uint64_t configurations = 0;
  bool ntc_correspondence = false;  // dual NTC = j + 1 everywhere
  bool weights_match = false;       // per-configuration weight identity
  bool aggregate_match = false;     // Q^(1-F) v^E Z~(Q/v) = Z(v)
  std::string failure;
};

/// Checks Q^(1-F) v^E Q^(j+1) Q^t~ (Q/v)^b~ = Q^j Q^t v^b for every
/// configuration, and the aggregate relation between Z and the dual Z.
inline DualityReport duality_witness_check(const CyclicStrip& strip) {
  DualityReport report;
  report.ntc_correspondence = true;
  report.weights_match = true;
  const int E = strip.edge_count();
  const int F = strip.face_count();
  const MultiPoly Q = MultiPoly::variable(Var::Q);
  const MultiPoly v = MultiPoly::variable(Var::v);
  const RationalFunction dual_v(Q, v);
  const RationalFunction prefactor = ipow(Q, 1 - F) * RationalFunction(pow(v, static_cast<unsigned>(E)));

  std::set<std::tuple<int, int, int, int>> checked;
  std::map<std::pair<int, int>, std::uint64_t> dual_hist;  // (dual clusters, dual edges)
  for_each_duality_witness(strip, [&](const DualityWitness& w) {
    ++report.configurations;
    ++dual_hist[{w.dual_clusters, w.dual_edges}];
    if (w.dual_ntc != w.ntc + 1 && report.ntc_correspondence) {
      report.ntc_correspondence = false;
      if (report.failure.empty())
        report.failure = "configuration " + std::to_string(w.mask) + ": " + std::to_string(w.dual_ntc) +
                         " dual NTC for " + std::to_string(w.ntc) + " direct NTC";
    }
    if (!checked.insert({w.ntc, w.trivial, w.edges, w.dual_trivial}).second) return;
    RationalFunction lhs = prefactor * ipow(Q, w.ntc + 1 + w.dual_trivial) * pow(dual_v, static_cast<unsigned>(w.dual_edges));
    RationalFunction rhs(pow(Q, static_cast<unsigned>(w.ntc + w.trivial)) * pow(v, static_cast<unsigned>(w.edges)));
    if (!(lhs == rhs) && report.weights_match) {
      report.weights_match = false;
      if (report.failure.empty())
        report.failure = "configuration " + std::to_string(w.mask) + ": " + lhs.to_string() + " != " + rhs.to_string();
    }
  });

  // dual partition function as a polynomial in (Q, w), then w -> Q/v
  MultiPoly dual_z;
  for (const auto& [key, count] : dual_hist)
    dual_z += detail::weight_monomial(detail::to_rational(count), key.first, key.second);
  RationalFunction lhs = prefactor * substitute(dual_z, Var::v, dual_v);
  report.aggregate_match = lhs == RationalFunction(fk_z(strip));
  if (!report.aggregate_match && report.failure.empty())
    report.failure = "aggregate duality relation fails: " + lhs.to_string();
  report.passed = report.ntc_correspondence && report.weights_match && report.aggregate_match;
  return report;
}

/// Spin sum on the fixed-boundary lattice: rows 0 and L-1 pinned to the
/// same value, every bond (fixed-row bonds included) weighted 1 + v delta.
inline Rational zff_oracle(int width, int length, int q, const Rational& v) {
  if (width < 3) throw std::invalid_argument("fixed-boundary oracle needs L >= 3");
  if (q < 1) throw std::invalid_argument("spin enumeration needs Q >= 1");
  FixedBoundaryLattice lattice(width, length);
  detail::checked_power(q, lattice.free_site_count(), kMaxSpinStates);
  const auto bonds = lattice.bonds();
  std::vector<int> free_sites;
  for (int s = 0; s < lattice.site_count(); ++s)
    if (!lattice.is_fixed_site(s)) free_sites.push_back(s);
  std::vector<int> spin(static_cast<std::size_t>(lattice.site_count()), 0);
  std::vector<std::uint64_t> hist(bonds.size() + 1, 0);
  const int free = static_cast<int>(free_sites.size());
  while (true) {
    int satisfied = 0;
    for (const auto& [a, b] : bonds) satisfied += spin[a] == spin[b];
    ++hist[satisfied];
    int k = 0;
    while (k < free && ++spin[free_sites[k]] == q) spin[free_sites[k++]] = 0;
    if (k == free) break;
  }
  return detail::bond_sum(hist, v);
}

}  // namespace pottschar
