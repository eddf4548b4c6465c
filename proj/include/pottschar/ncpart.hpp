#pragma once

// Non-crossing partitions of the slice points, with bridge marks on
// unnested blocks, and the two-slice partitions they are reduced from.
//
// Points are 0-based in the API; the text rendering is 1-based, e.g.
// "(12•)(3)" for L = 3 with {1,2} a marked block.

#include <pottschar/polyring.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pottschar {

inline constexpr int kMaxWidth = 32;

inline std::uint64_t binomial(unsigned n, long k) {
  if (k < 0 || k > static_cast<long>(n)) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, static_cast<unsigned long>(k));
  return b.get_ui();
}

inline std::uint64_t catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

/// Number of marked connectivity states with l marks on L points,
/// C(2L, L-l) - C(2L, L-l-1); zero for l > L.
inline std::uint64_t count_states(int width, int marks) {
  if (marks < 0 || marks > width) return 0;
  auto n = static_cast<unsigned>(2 * width);
  return binomial(n, width - marks) - binomial(n, width - marks - 1);
}

namespace detail {

using Labels = std::vector<std::uint8_t>;

/// Relabels blocks in order of first occurrence. Returns the old->new map.
inline std::vector<int> canonicalize(Labels& labels) {
  std::vector<int> remap(256, -1);
  int next = 0;
  for (auto& x : labels) {
    if (remap[x] < 0) remap[x] = next++;
    x = static_cast<std::uint8_t>(remap[x]);
  }
  return remap;
}

inline bool is_restricted_growth(const Labels& labels) {
  int next = 0;
  for (auto x : labels) {
    if (x > next) return false;
    if (x == next) ++next;
  }
  return true;
}

struct Layout {
  bool noncrossing = true;
  std::vector<bool> nested;  // per block label
};

/// Single left-to-right scan with a stack of open blocks. A block is
/// nested iff the stack is non-empty when it opens.
inline Layout analyze(const Labels& labels) {
  int blocks = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> last(blocks, -1);
  std::vector<int> first(blocks, -1);
  for (int p = 0; p < static_cast<int>(labels.size()); ++p) {
    last[labels[p]] = p;
    if (first[labels[p]] < 0) first[labels[p]] = p;
  }
  Layout out;
  out.nested.assign(blocks, false);
  std::vector<int> stack;
  for (int p = 0; p < static_cast<int>(labels.size()); ++p) {
    int b = labels[p];
    if (first[b] == p) {
      out.nested[b] = !stack.empty();
      stack.push_back(b);
    } else if (stack.back() != b) {
      out.noncrossing = false;
      return out;
    }
    if (last[b] == p) stack.pop_back();
  }
  return out;
}

/// All non-crossing partitions of n points as canonical label vectors.
inline std::vector<Labels> enumerate_noncrossing(int n) {
  std::vector<Labels> out;
  Labels labels(n);
  std::vector<std::uint8_t> open;
  auto rec = [&](auto&& self, int p, int blocks) -> void {
    if (p == n) {
      out.push_back(labels);
      return;
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      std::vector<std::uint8_t> saved(open.begin() + static_cast<long>(k) + 1, open.end());
      labels[p] = open[k];
      open.resize(k + 1);
      self(self, p + 1, blocks);
      open.insert(open.end(), saved.begin(), saved.end());
    }
    labels[p] = static_cast<std::uint8_t>(blocks);
    open.push_back(static_cast<std::uint8_t>(blocks));
    self(self, p + 1, blocks + 1);
    open.pop_back();
  };
  if (n > 0) rec(rec, 0, 0);
  return out;
}

}  // namespace detail

/// Right-slice connectivity with bridge marks on unnested blocks.
class ConnectivityState {
 public:
  static constexpr std::string_view kMark = "•";

  /// labels[i] is the block of point i; marked_blocks is a bitmask over
  /// block labels. Labels are canonicalized; invalid states throw.
  ConnectivityState(detail::Labels labels, std::uint32_t marked_blocks) {
    if (labels.empty() || labels.size() > kMaxWidth)
      throw std::invalid_argument("connectivity state width must be in [1, 32]");
    auto remap = detail::canonicalize(labels);
    std::uint32_t marks = 0;
    for (int old = 0; old < 32; ++old) {
      if (!(marked_blocks >> old & 1U)) continue;
      if (old >= static_cast<int>(remap.size()) || remap[old] < 0)
        throw std::invalid_argument("mark on a block label that does not occur");
      marks |= 1U << remap[old];
    }
    labels_ = std::move(labels);
    marked_ = marks;
    validate();
  }

  static ConnectivityState singletons(int width, bool all_marked = false) {
    detail::Labels labels(width);
    for (int i = 0; i < width; ++i) labels[i] = static_cast<std::uint8_t>(i);
    std::uint32_t marks = all_marked ? (width == 32 ? ~0U : (1U << width) - 1U) : 0U;
    return ConnectivityState(std::move(labels), marks);
  }

  int width() const noexcept { return static_cast<int>(labels_.size()); }
  int block_count() const noexcept { return *std::max_element(labels_.begin(), labels_.end()) + 1; }
  int block_of(int point) const { return labels_.at(point); }
  bool is_marked_block(int block) const noexcept { return marked_ >> block & 1U; }
  bool is_marked_point(int point) const { return is_marked_block(block_of(point)); }
  int mark_count() const noexcept { return __builtin_popcount(marked_); }
  const detail::Labels& labels() const noexcept { return labels_; }
  std::uint32_t marked_mask() const noexcept { return marked_; }

  int block_size(int block) const {
    return static_cast<int>(std::count(labels_.begin(), labels_.end(), block));
  }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(block_count());
    for (int i = 0; i < width(); ++i) out[labels_[i]].push_back(i);
    return out;
  }

  /// One byte per point: block label, high bit set on marked blocks.
  std::string code() const {
    std::string s(labels_.size(), '\0');
    for (std::size_t i = 0; i < labels_.size(); ++i)
      s[i] = static_cast<char>(labels_[i] | (is_marked_block(labels_[i]) ? 0x80 : 0));
    return s;
  }

  static ConnectivityState decode(std::string_view code) {
    if (code.empty()) throw std::invalid_argument("empty connectivity code");
    detail::Labels labels(code.size());
    std::vector<int> mark_of(code.size(), -1);
    std::uint32_t marks = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
      auto byte = static_cast<unsigned char>(code[i]);
      labels[i] = byte & 0x7F;
      int m = byte >> 7;
      if (labels[i] >= code.size()) throw std::invalid_argument("connectivity code label out of range");
      if (mark_of[labels[i]] >= 0 && mark_of[labels[i]] != m)
        throw std::invalid_argument("inconsistent mark bits within a block");
      mark_of[labels[i]] = m;
      if (m) marks |= 1U << labels[i];
    }
    if (!detail::is_restricted_growth(labels))
      throw std::invalid_argument("connectivity code is not canonical");
    return ConnectivityState(std::move(labels), marks);
  }

  /// "(12•)(3)": blocks by smallest point, 1-based points; comma-separated
  /// points once L >= 10.
  std::string to_string() const {
    bool commas = width() >= 10;
    std::string s;
    for (const auto& block : blocks()) {
      s += '(';
      for (std::size_t k = 0; k < block.size(); ++k) {
        if (commas && k > 0) s += ',';
        s += std::to_string(block[k] + 1);
      }
      if (is_marked_block(labels_[block.front()])) s += kMark;
      s += ')';
    }
    return s;
  }

  static ConnectivityState parse(std::string_view text, int width);

  friend bool operator==(const ConnectivityState& a, const ConnectivityState& b) {
    return a.labels_ == b.labels_ && a.marked_ == b.marked_;
  }
  friend bool operator<(const ConnectivityState& a, const ConnectivityState& b) { return a.code() < b.code(); }

 private:
  void validate() const {
    auto layout = detail::analyze(labels_);
    if (!layout.noncrossing) throw std::invalid_argument("blocks cross");
    for (int b = 0; b < static_cast<int>(layout.nested.size()); ++b)
      if (is_marked_block(b) && layout.nested[b]) throw std::invalid_argument("marked block is nested");
    if (layout.nested.size() < 32 && marked_ >> layout.nested.size() != 0)
      throw std::invalid_argument("mark on a block label that does not occur");
  }

  detail::Labels labels_;
  std::uint32_t marked_ = 0;
};

namespace detail {

/// Splits "(1'12)(35•)" style text into blocks of tokens.
struct ParsedBlock {
  std::vector<std::pair<int, bool>> points;  // (1-based index, primed)
  bool marked = false;
};

inline std::vector<ParsedBlock> parse_blocks(std::string_view text, bool multi_digit) {
  std::vector<ParsedBlock> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse partition '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    ParsedBlock block;
    while (i < text.size() && text[i] != ')') {
      if (text.substr(i, ConnectivityState::kMark.size()) == ConnectivityState::kMark) {
        block.marked = true;
        i += ConnectivityState::kMark.size();
        continue;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] < '0' || text[i] > '9') fail("unexpected character");
      int value = 0;
      if (multi_digit) {
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') value = value * 10 + (text[i++] - '0');
      } else {
        value = text[i++] - '0';
      }
      bool primed = i < text.size() && text[i] == '\'';
      if (primed) ++i;
      block.points.emplace_back(value, primed);
    }
    if (i >= text.size()) fail("unterminated block");
    ++i;
    if (block.points.empty()) fail("empty block");
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace detail

inline ConnectivityState ConnectivityState::parse(std::string_view text, int width) {
  if (width < 1 || width > kMaxWidth) throw std::invalid_argument("width must be in [1, 32]");
  detail::Labels labels(width, 0xFF);
  std::uint32_t marks = 0;
  auto blocks = detail::parse_blocks(text, width >= 10);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto [p, primed] : blocks[b].points) {
      if (primed || p < 1 || p > width || labels[p - 1] != 0xFF)
        throw std::invalid_argument("bad or repeated point in '" + std::string(text) + "'");
      labels[p - 1] = static_cast<std::uint8_t>(b);
    }
    if (blocks[b].marked) marks |= 1U << b;
  }
  if (std::find(labels.begin(), labels.end(), 0xFF) != labels.end())
    throw std::invalid_argument("partition does not cover every point");
  return ConnectivityState(std::move(labels), marks);
}

/// All states with exactly `marks` marked blocks, sorted by code.
inline std::vector<ConnectivityState> enumerate_states(int width, int marks) {
  std::vector<ConnectivityState> out;
  if (width < 1 || width > kMaxWidth) throw std::invalid_argument("width must be in [1, 32]");
  if (marks < 0 || marks > width) return out;
  for (const auto& labels : detail::enumerate_noncrossing(width)) {
    auto layout = detail::analyze(labels);
    std::vector<int> free_blocks;
    for (int b = 0; b < static_cast<int>(layout.nested.size()); ++b)
      if (!layout.nested[b]) free_blocks.push_back(b);
    int k = static_cast<int>(free_blocks.size());
    if (marks > k) continue;
    // choose `marks` of the unnested blocks
    std::vector<bool> pick(k, false);
    std::fill(pick.end() - marks, pick.end(), true);
    do {
      std::uint32_t mask = 0;
      for (int t = 0; t < k; ++t)
        if (pick[t]) mask |= 1U << free_blocks[t];
      out.emplace_back(labels, mask);
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Merges the blocks of points a and b. The merged block is marked iff
/// either part was. Throws if the result is not planar.
inline ConnectivityState join(const ConnectivityState& s, int a, int b) {
  if (a < 0 || b < 0 || a >= s.width() || b >= s.width()) throw std::out_of_range("join: point out of range");
  int ba = s.block_of(a);
  int bb = s.block_of(b);
  if (ba == bb) return s;
  detail::Labels labels = s.labels();
  for (auto& x : labels)
    if (x == bb) x = static_cast<std::uint8_t>(ba);
  std::uint32_t marks = s.marked_mask();
  if (s.is_marked_block(bb)) {
    marks &= ~(1U << bb);
    marks |= 1U << ba;
  }
  try {
    return ConnectivityState(std::move(labels), marks);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("join of points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                " in " + s.to_string() + " violates planarity");
  }
}

enum class DetachTag { StillPopulated, CompletedUnmarked, TerminatedMarked };

struct DetachOutcome {
  DetachTag tag;
  std::optional<ConnectivityState> state;  // empty iff TerminatedMarked
};

/// Removes point i from its block and re-inserts it as a fresh unmarked
/// singleton, reporting what happened to the vacated block.
inline DetachOutcome detach(const ConnectivityState& s, int i) {
  if (i < 0 || i >= s.width()) throw std::out_of_range("detach: point out of range");
  int b = s.block_of(i);
  if (s.block_size(b) == 1) {
    if (s.is_marked_block(b)) return {DetachTag::TerminatedMarked, std::nullopt};
    return {DetachTag::CompletedUnmarked, s};
  }
  detail::Labels labels = s.labels();
  labels[i] = static_cast<std::uint8_t>(s.block_count());
  return {DetachTag::StillPopulated, ConnectivityState(std::move(labels), s.marked_mask())};
}

/// Partition of the 2L points of two time slices. Internally the points
/// sit on a circle in the order 1', ..., L', L, ..., 1: left point i'
/// (0-based i) at position i, right point i at position 2L-1-i.
class TwoSliceState {
 public:
  TwoSliceState(int width, detail::Labels labels) : width_(width), labels_(std::move(labels)) {
    if (width < 1 || 2 * width > 64) throw std::invalid_argument("two-slice width must be in [1, 32]");
    if (static_cast<int>(labels_.size()) != 2 * width)
      throw std::invalid_argument("two-slice state needs 2L labels");
    detail::canonicalize(labels_);
    if (!detail::analyze(labels_).noncrossing) throw std::invalid_argument("two-slice blocks cross");
  }

  /// The state in which each right point is connected to its own left point.
  static TwoSliceState identity(int width) {
    detail::Labels labels(2 * width);
    for (int i = 0; i < width; ++i) {
      labels[left_position(width, i)] = static_cast<std::uint8_t>(i);
      labels[right_position(width, i)] = static_cast<std::uint8_t>(i);
    }
    return TwoSliceState(width, std::move(labels));
  }

  static int left_position(int /*width*/, int i) { return i; }
  static int right_position(int width, int i) { return 2 * width - 1 - i; }

  int width() const noexcept { return width_; }
  const detail::Labels& labels() const noexcept { return labels_; }
  int block_count() const { return *std::max_element(labels_.begin(), labels_.end()) + 1; }
  int right_block(int i) const { return labels_[right_position(width_, i)]; }
  int left_block(int i) const { return labels_[left_position(width_, i)]; }

  bool block_has_left(int b) const {
    for (int i = 0; i < width_; ++i)
      if (left_block(i) == b) return true;
    return false;
  }

  bool block_has_right(int b) const {
    for (int i = 0; i < width_; ++i)
      if (right_block(i) == b) return true;
    return false;
  }

  /// Blocks containing points of both slices.
  int bridge_count() const {
    int n = 0;
    for (int b = 0; b < block_count(); ++b)
      if (block_has_left(b) && block_has_right(b)) ++n;
    return n;
  }

  /// Left-slice data the transfer matrix cannot change within a fixed
  /// bridge number: the partition of the left points plus which of those
  /// left blocks are bridges.
  std::string left_signature() const {
    detail::Labels left(width_);
    for (int i = 0; i < width_; ++i) left[i] = static_cast<std::uint8_t>(left_block(i));
    std::string sig;
    detail::Labels canon = left;
    detail::canonicalize(canon);
    for (int i = 0; i < width_; ++i)
      sig += static_cast<char>(canon[i] | (block_has_right(left[i]) ? 0x80 : 0));
    return sig;
  }

  /// Right-slice connectivity with bridges turned into marks.
  ConnectivityState reduce() const {
    detail::Labels right(width_);
    std::uint32_t marks = 0;
    for (int i = 0; i < width_; ++i) right[i] = static_cast<std::uint8_t>(right_block(i));
    for (int i = 0; i < width_; ++i)
      if (block_has_left(right[i])) marks |= 1U << right[i];
    return ConnectivityState(std::move(right), marks);
  }

  std::string code() const { return std::string(labels_.begin(), labels_.end()); }

  /// Rendering as in "(1'12)(2')(3'4'6'6)(5')(35)(4)": blocks containing
  /// left points first, ordered by smallest left point, then right-only
  /// blocks by smallest right point.
  std::string to_string() const {
    bool commas = width_ >= 10;
    std::vector<std::vector<int>> lefts(block_count()), rights(block_count());
    for (int i = 0; i < width_; ++i) {
      lefts[left_block(i)].push_back(i);
      rights[right_block(i)].push_back(i);
    }
    std::vector<int> order;
    for (int i = 0; i < width_; ++i)
      if (lefts[left_block(i)].front() == i) order.push_back(left_block(i));
    for (int i = 0; i < width_; ++i) {
      int b = right_block(i);
      if (lefts[b].empty() && rights[b].front() == i) order.push_back(b);
    }
    std::string s;
    for (int b : order) {
      s += '(';
      bool first = true;
      for (int i : lefts[b]) {
        if (commas && !first) s += ',';
        s += std::to_string(i + 1) + "'";
        first = false;
      }
      for (int i : rights[b]) {
        if (commas && !first) s += ',';
        s += std::to_string(i + 1);
        first = false;
      }
      s += ')';
    }
    return s;
  }

  static TwoSliceState parse(std::string_view text, int width) {
    detail::Labels labels(2 * width, 0xFF);
    auto blocks = detail::parse_blocks(text, width >= 10);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].marked) throw std::invalid_argument("two-slice states carry no marks");
      for (auto [p, primed] : blocks[b].points) {
        if (p < 1 || p > width) throw std::invalid_argument("point out of range in '" + std::string(text) + "'");
        int pos = primed ? left_position(width, p - 1) : right_position(width, p - 1);
        if (labels[pos] != 0xFF) throw std::invalid_argument("repeated point in '" + std::string(text) + "'");
        labels[pos] = static_cast<std::uint8_t>(b);
      }
    }
    if (std::find(labels.begin(), labels.end(), 0xFF) != labels.end())
      throw std::invalid_argument("partition does not cover every point");
    return TwoSliceState(width, std::move(labels));
  }

  friend bool operator==(const TwoSliceState& a, const TwoSliceState& b) {
    return a.width_ == b.width_ && a.labels_ == b.labels_;
  }
  friend bool operator<(const TwoSliceState& a, const TwoSliceState& b) { return a.labels_ < b.labels_; }

 private:
  int width_;
  detail::Labels labels_;
};

/// All non-crossing partitions of the 2L two-slice points (Catalan(2L)).
inline std::vector<TwoSliceState> enumerate_two_slice(int width) {
  if (width < 1 || width > 16) throw std::invalid_argument("two-slice enumeration supports 1 <= L <= 16");
  std::vector<TwoSliceState> out;
  for (auto& labels : detail::enumerate_noncrossing(2 * width)) out.emplace_back(width, std::move(labels));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pottschar
