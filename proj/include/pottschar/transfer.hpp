#pragma once

// Cluster transfer matrix restricted to l bridges, the characters
// K_{1,2l+1} = Tr(T_l^N), and the check of the full two-slice block
// structure.

#include <pottschar/lattice.hpp>
#include <pottschar/ncpart.hpp>
#include <pottschar/polyring.hpp>

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pottschar {

/// Dense square matrix of polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static PolyMatrix identity(std::size_t dim) {
    PolyMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = MultiPoly(1);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
    PolyMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) {
          const auto& bkj = b(k, j);
          if (!bkj.is_zero()) out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  MultiPoly trace() const {
    MultiPoly t;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<MultiPoly> data_;
};

/// Sub-block T_l: a matrix over the canonical states with l marks.
/// entries(target, source) is the weight of source -> target.
struct TransferBlock {
  int width = 0;
  int marks = 0;
  std::vector<ConnectivityState> basis;
  PolyMatrix entries;

  std::size_t dimension() const noexcept { return basis.size(); }

  std::optional<std::size_t> index_of(const ConnectivityState& s) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), s);
    if (it == basis.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - basis.begin());
  }
};

namespace detail {

inline const MultiPoly& var_v() {
  static const MultiPoly v = MultiPoly::variable(Var::v);
  return v;
}

inline const MultiPoly& var_Q() {
  static const MultiPoly q = MultiPoly::variable(Var::Q);
  return q;
}

/// Image of one state under one edge operator inside the l-mark sector.
/// Transitions that change the mark count are dropped.
template <class Emit>
void apply_edge(const ConnectivityState& s, const EdgeOp& op, Emit&& emit) {
  if (op.kind == EdgeKind::Vertical) {
    emit(s, MultiPoly(1));
    auto joined = join(s, op.site, op.site + 1);
    if (joined.mark_count() == s.mark_count()) emit(joined, var_v());
    return;
  }
  emit(s, var_v());
  auto out = detach(s, op.site);
  switch (out.tag) {
    case DetachTag::StillPopulated: emit(*out.state, MultiPoly(1)); break;
    case DetachTag::CompletedUnmarked: emit(*out.state, var_Q()); break;
    case DetachTag::TerminatedMarked: break;
  }
}

inline void check_marks(int width, int marks) {
  if (width < 1 || width > kMaxWidth) throw std::invalid_argument("width must be in [1, 32]");
  if (marks < 0 || marks > width) throw std::invalid_argument("mark count must be in [0, L]");
}

/// Builds the block whose column s is the image of basis[s] under the ops,
/// applied in order.
inline TransferBlock build_block(int width, int marks, const std::vector<EdgeOp>& ops) {
  check_marks(width, marks);
  TransferBlock block{width, marks, enumerate_states(width, marks), {}};
  const std::size_t n = block.dimension();
  block.entries = PolyMatrix(n);
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < n; ++k) index.emplace(block.basis[k].code(), k);
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<MultiPoly> vec(n);
    vec[src] = MultiPoly(1);
    for (const auto& op : ops) {
      std::vector<MultiPoly> next(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (vec[k].is_zero()) continue;
        apply_edge(block.basis[k], op, [&](const ConnectivityState& t, const MultiPoly& w) {
          next[index.at(t.code())] += vec[k] * w;
        });
      }
      vec = std::move(next);
    }
    for (std::size_t dst = 0; dst < n; ++dst) block.entries(dst, src) = std::move(vec[dst]);
  }
  return block;
}

}  // namespace detail

/// Matrix of a single edge operator on the l-mark sector.
inline TransferBlock edge_operator(int width, int marks, const EdgeOp& op) {
  if (op.kind == EdgeKind::Vertical ? (op.site < 0 || op.site + 1 >= width) : (op.site < 0 || op.site >= width))
    throw std::invalid_argument("edge operator site out of range");
  return detail::build_block(width, marks, {op});
}

/// One column of the strip: the product of its edge operators, first op
/// applied first.
inline TransferBlock column_transfer(const CyclicStrip& strip, int marks) {
  return detail::build_block(strip.width(), marks, strip.column_program());
}

inline PolyMatrix matrix_power(const PolyMatrix& m, int n) {
  if (n < 1) return PolyMatrix::identity(m.dim());
  PolyMatrix out = m;
  for (int k = 1; k < n; ++k) out = out * m;
  return out;
}

/// K_{1,2l+1} = Tr(T_l^N); the zero polynomial for l > L.
inline MultiPoly character_K(const CyclicStrip& strip, int marks) {
  if (marks < 0) throw std::invalid_argument("mark count must be nonnegative");
  if (marks > strip.width()) return MultiPoly();
  return matrix_power(column_transfer(strip, marks).entries, strip.length()).trace();
}

/// All characters K_{1,2l+1}, l = 0..L, indexed by l. Blocks are built
/// concurrently when workers > 1; the result does not depend on it.
inline std::vector<MultiPoly> character_table(const CyclicStrip& strip, int workers = 1) {
  const int L = strip.width();
  std::vector<MultiPoly> out(static_cast<std::size_t>(L) + 1);
  if (workers <= 1) {
    for (int l = 0; l <= L; ++l) out[l] = character_K(strip, l);
    return out;
  }
  for (int start = 0; start <= L; start += workers) {
    std::vector<std::future<MultiPoly>> jobs;
    for (int l = start; l <= L && l < start + workers; ++l)
      jobs.push_back(std::async(std::launch::async, [&strip, l] { return character_K(strip, l); }));
    for (int l = start; l <= L && l < start + workers; ++l) out[l] = jobs[l - start].get();
  }
  return out;
}

/// Full two-slice column transfer, sparse by source index.
struct TwoSliceTransfer {
  std::vector<TwoSliceState> basis;
  std::vector<std::map<std::size_t, MultiPoly>> columns;  // columns[src][dst]
};

namespace detail {

template <class Emit>
void apply_edge(const TwoSliceState& s, const EdgeOp& op, Emit&& emit) {
  const int L = s.width();
  const int pos = TwoSliceState::right_position(L, op.site);
  if (op.kind == EdgeKind::Vertical) {
    emit(s, MultiPoly(1));
    int a = s.labels()[pos];
    int b = s.labels()[TwoSliceState::right_position(L, op.site + 1)];
    if (a == b) {
      emit(s, var_v());
    } else {
      Labels labels = s.labels();
      for (auto& x : labels)
        if (x == b) x = static_cast<std::uint8_t>(a);
      emit(TwoSliceState(L, std::move(labels)), var_v());
    }
    return;
  }
  emit(s, var_v());
  int b = s.labels()[pos];
  int others = 0;
  for (int p = 0; p < 2 * L; ++p)
    if (p != pos && s.labels()[p] == b) ++others;
  if (others == 0) {
    // a cluster closes with no link to the left slice
    emit(s, var_Q());
    return;
  }
  Labels labels = s.labels();
  labels[pos] = static_cast<std::uint8_t>(s.block_count());
  emit(TwoSliceState(L, std::move(labels)), MultiPoly(1));
}

}  // namespace detail

inline TwoSliceTransfer two_slice_transfer(const CyclicStrip& strip) {
  TwoSliceTransfer t;
  t.basis = enumerate_two_slice(strip.width());
  const std::size_t n = t.basis.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < n; ++k) index.emplace(t.basis[k].code(), k);
  t.columns.resize(n);
  for (std::size_t src = 0; src < n; ++src) {
    std::map<std::size_t, MultiPoly> vec{{src, MultiPoly(1)}};
    for (const auto& op : strip.column_program()) {
      std::map<std::size_t, MultiPoly> next;
      for (const auto& [k, w] : vec) {
        detail::apply_edge(t.basis[k], op, [&](const TwoSliceState& s, const MultiPoly& weight) {
          next[index.at(s.code())] += w * weight;
        });
      }
      std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
      vec = std::move(next);
    }
    t.columns[src] = std::move(vec);
  }
  return t;
}

struct BlockStructureReport {
  int width = 0;
  std::size_t basis_size = 0;
  bool lower_triangular = false;
  std::vector<std::size_t> sub_block_count;      // N_l
  std::vector<std::size_t> sub_block_dimension;  // common dimension, 0 if they differ
  std::vector<bool> sub_blocks_equal;            // every sub-block equals T_l
  std::string failure;                           // first failing location, empty on success

  bool passed() const {
    if (!lower_triangular || !failure.empty()) return false;
    for (std::size_t l = 0; l < sub_blocks_equal.size(); ++l) {
      if (!sub_blocks_equal[l]) return false;
      auto n = count_states(width, static_cast<int>(l));
      if (sub_block_count[l] != n || sub_block_dimension[l] != n) return false;
    }
    return true;
  }
};

/// Builds the full transfer on two-slice partitions and checks that the
/// bridge number never increases, that each diagonal block splits into
/// n(L,l) sub-blocks labelled by the left-slice data, and that every
/// sub-block coincides with column_transfer(strip, l).
inline BlockStructureReport verify_block_structure(const CyclicStrip& strip) {
  const int L = strip.width();
  if (L > 4) throw std::invalid_argument("block-structure check supports L <= 4");
  BlockStructureReport report;
  report.width = L;
  auto full = two_slice_transfer(strip);
  report.basis_size = full.basis.size();
  const std::size_t n = full.basis.size();

  std::vector<int> bridges(n);
  std::vector<std::string> signature(n);
  std::vector<ConnectivityState> reduced;
  reduced.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    bridges[k] = full.basis[k].bridge_count();
    signature[k] = full.basis[k].left_signature();
    reduced.push_back(full.basis[k].reduce());
  }

  report.lower_triangular = true;
  for (std::size_t src = 0; src < n && report.lower_triangular; ++src)
    for (const auto& [dst, w] : full.columns[src])
      if (bridges[dst] > bridges[src]) {
        report.lower_triangular = false;
        report.failure = "bridge number increases: " + full.basis[src].to_string() + " -> " +
                         full.basis[dst].to_string();
        break;
      }

  for (int l = 0; l <= L; ++l) {
    auto block = column_transfer(strip, l);
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < n; ++k)
      if (bridges[k] == l) groups[signature[k]].push_back(k);
    report.sub_block_count.push_back(groups.size());

    bool equal = true;
    std::size_t common_dim = groups.empty() ? 0 : groups.begin()->second.size();
    for (const auto& [sig, members] : groups) {
      if (members.size() != common_dim) common_dim = 0;
      // reduce() must map the group one-to-one onto the basis of T_l
      std::vector<std::size_t> position(members.size());
      std::vector<bool> hit(block.dimension(), false);
      for (std::size_t m = 0; m < members.size() && equal; ++m) {
        auto idx = block.index_of(reduced[members[m]]);
        if (!idx || hit[*idx]) {
          equal = false;
          if (report.failure.empty())
            report.failure = "sub-block basis mismatch at " + full.basis[members[m]].to_string();
          break;
        }
        hit[*idx] = true;
        position[m] = *idx;
      }
      if (!equal) continue;
      if (members.size() != block.dimension()) {
        equal = false;
        if (report.failure.empty()) report.failure = "sub-block dimension differs from n(L,l)";
        continue;
      }
      std::map<std::size_t, std::size_t> local;
      for (std::size_t m = 0; m < members.size(); ++m) local.emplace(members[m], position[m]);
      for (std::size_t m = 0; m < members.size() && equal; ++m) {
        std::vector<MultiPoly> column(block.dimension());
        for (const auto& [dst, w] : full.columns[members[m]]) {
          if (bridges[dst] != l) continue;
          auto it = local.find(dst);
          if (it == local.end()) {
            equal = false;
            if (report.failure.empty())
              report.failure = "diagonal block couples different sub-blocks: " +
                               full.basis[members[m]].to_string() + " -> " + full.basis[dst].to_string();
            break;
          }
          column[it->second] = w;
        }
        for (std::size_t r = 0; r < block.dimension() && equal; ++r)
          if (!(column[r] == block.entries(r, position[m]))) {
            equal = false;
            if (report.failure.empty())
              report.failure = "sub-block entry differs from T_l at " + full.basis[members[m]].to_string();
          }
      }
    }
    report.sub_block_dimension.push_back(common_dim);
    report.sub_blocks_equal.push_back(equal);
  }
  return report;
}

}  // namespace pottschar
