#pragma once

// Cyclic strips: width L (free), length N (periodic), built by repeating
// one column program N times. Also the square-lattice dual and the
// fixed-boundary spin lattice.

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pottschar {

enum class EdgeKind { Vertical, Horizontal };

/// vertical(i): bond {i, i+1} inside the current column.
/// horizontal(i): bond from row i of the current column to row i of the next.
struct EdgeOp {
  EdgeKind kind;
  int site;

  static EdgeOp vertical(int i) { return {EdgeKind::Vertical, i}; }
  static EdgeOp horizontal(int i) { return {EdgeKind::Horizontal, i}; }
  friend bool operator==(const EdgeOp&, const EdgeOp&) = default;
};

/// An edge between vertex ids a and b. `winding` counts how many times the
/// edge crosses the periodic seam going from a to b.
struct Edge {
  int a;
  int b;
  int winding;
};

class CyclicStrip {
 public:
  CyclicStrip(int width, int length, std::vector<EdgeOp> program, std::string family = "custom")
      : width_(width), length_(length), program_(std::move(program)), family_(std::move(family)) {
    if (width < 1) throw std::invalid_argument("strip width must be at least 1");
    if (length < 1) throw std::invalid_argument("strip length must be at least 1");
    std::vector<int> horizontals(width, 0);
    for (const auto& op : program_) {
      if (op.kind == EdgeKind::Vertical) {
        if (op.site < 0 || op.site + 1 >= width) throw std::invalid_argument("vertical bond index out of range");
      } else {
        if (op.site < 0 || op.site >= width) throw std::invalid_argument("horizontal bond index out of range");
        ++horizontals[op.site];
      }
    }
    for (int h : horizontals)
      if (h != 1) throw std::invalid_argument("each row must advance exactly once per column");
  }

  int width() const noexcept { return width_; }
  int length() const noexcept { return length_; }
  const std::vector<EdgeOp>& column_program() const noexcept { return program_; }
  const std::string& family() const noexcept { return family_; }

  int vertex_count() const noexcept { return width_ * length_; }
  int edge_count() const noexcept { return length_ * static_cast<int>(program_.size()); }
  /// Faces of the sphere compactification, both exterior faces included.
  int face_count() const noexcept { return edge_count() - vertex_count() + 2; }

  std::string spec_string() const {
    return family_ + ":" + std::to_string(width_) + "x" + std::to_string(length_);
  }

  bool is_square() const {
    auto expected = square_program(width_);
    return program_ == expected;
  }

  /// Vertex (row i, column c) has id c*L + i. Edges follow the program,
  /// column after column.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count()));
    std::vector<int> column(width_, 0);
    auto id = [&](int row, int unwrapped) { return (unwrapped % length_) * width_ + row; };
    auto wrap = [&](int unwrapped) { return unwrapped / length_; };
    for (int pass = 0; pass < length_; ++pass) {
      for (const auto& op : program_) {
        int i = op.site;
        if (op.kind == EdgeKind::Vertical) {
          out.push_back({id(i, column[i]), id(i + 1, column[i + 1]), wrap(column[i + 1]) - wrap(column[i])});
        } else {
          out.push_back({id(i, column[i]), id(i, column[i] + 1), wrap(column[i] + 1) - wrap(column[i])});
          ++column[i];
        }
      }
    }
    return out;
  }

  static std::vector<EdgeOp> square_program(int width) {
    std::vector<EdgeOp> program;
    for (int i = 0; i + 1 < width; ++i) program.push_back(EdgeOp::vertical(i));
    for (int i = 0; i < width; ++i) program.push_back(EdgeOp::horizontal(i));
    return program;
  }

 private:
  int width_;
  int length_;
  std::vector<EdgeOp> program_;
  std::string family_;
};

inline CyclicStrip square_strip(int width, int length) {
  if (width < 1 || length < 1) throw std::invalid_argument("square strip needs L >= 1 and N >= 1");
  return CyclicStrip(width, length, CyclicStrip::square_program(width), "square");
}

/// The same strip with the column program rotated left by `shift` ops.
inline CyclicStrip rotated(const CyclicStrip& strip, int shift) {
  auto program = strip.column_program();
  if (!program.empty()) {
    shift %= static_cast<int>(program.size());
    std::rotate(program.begin(), program.begin() + shift, program.end());
  }
  return CyclicStrip(strip.width(), strip.length(), std::move(program), "custom");
}

/// Parses "square:LxN".
inline CyclicStrip parse_lattice_spec(std::string_view spec) {
  auto fail = [&]() -> CyclicStrip {
    throw std::invalid_argument("bad lattice spec '" + std::string(spec) + "' (expected square:LxN)");
  };
  auto colon = spec.find(':');
  if (colon == std::string_view::npos || spec.substr(0, colon) != "square") return fail();
  auto dims = spec.substr(colon + 1);
  auto x = dims.find('x');
  if (x == std::string_view::npos) return fail();
  int width = -1;
  int length = -1;
  auto parse = [](std::string_view s, int& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
  };
  if (!parse(dims.substr(0, x), width) || !parse(dims.substr(x + 1), length)) return fail();
  return square_strip(width, length);
}

/// Dual of a square cyclic strip. Interior faces f(i, c), between rows i,
/// i+1 and columns c, c+1, have id c*(L-1) + i; the two exterior faces come
/// last. edges[k] crosses the k-th edge of strip.edges().
struct DualGraph {
  int vertex_count = 0;
  int bottom = 0;
  int top = 0;
  std::vector<Edge> edges;

  bool is_exterior(int vertex) const noexcept { return vertex == bottom || vertex == top; }
};

inline DualGraph square_dual(const CyclicStrip& strip) {
  if (!strip.is_square()) throw std::invalid_argument("dual construction needs a square column program");
  const int L = strip.width();
  const int N = strip.length();
  DualGraph dual;
  dual.bottom = (L - 1) * N;
  dual.top = dual.bottom + 1;
  dual.vertex_count = dual.bottom + 2;
  auto face = [&](int i, int c) { return c * (L - 1) + i; };
  for (int c = 0; c < N; ++c) {
    for (int i = 0; i + 1 < L; ++i) {
      int prev = (c + N - 1) % N;
      dual.edges.push_back({face(i, prev), face(i, c), c == 0 ? 1 : 0});
    }
    for (int i = 0; i < L; ++i) {
      int below = i == 0 ? dual.bottom : face(i - 1, c);
      int above = i == L - 1 ? dual.top : face(i, c);
      dual.edges.push_back({below, above, 0});
    }
  }
  return dual;
}

/// Square lattice of width L, periodic length N, with rows 0 and L-1 pinned
/// to a common spin value. Site (row r, column c) has id c*L + r.
class FixedBoundaryLattice {
 public:
  FixedBoundaryLattice(int width, int length) : width_(width), length_(length) {
    if (width < 2) throw std::invalid_argument("fixed-boundary lattice needs L >= 2");
    if (length < 1) throw std::invalid_argument("fixed-boundary lattice needs N >= 1");
  }

  int width() const noexcept { return width_; }
  int length() const noexcept { return length_; }
  int site_count() const noexcept { return width_ * length_; }
  int free_site_count() const noexcept { return (width_ - 2) * length_; }
  int fixed_site_count() const noexcept { return 2 * length_; }
  bool is_fixed_row(int row) const noexcept { return row == 0 || row == width_ - 1; }
  bool is_fixed_site(int id) const noexcept { return is_fixed_row(id % width_); }
  /// L = 2 leaves no free spins.
  bool is_degenerate() const noexcept { return width_ == 2; }

  /// Bonds inside the two fixed rows; each contributes a constant 1+v.
  int boundary_bond_count() const noexcept { return 2 * length_; }

  /// All bonds of the square lattice, fixed-row bonds included.
  std::vector<std::pair<int, int>> bonds() const {
    std::vector<std::pair<int, int>> out;
    auto id = [&](int r, int c) { return c * width_ + r; };
    for (int c = 0; c < length_; ++c) {
      for (int r = 0; r + 1 < width_; ++r) out.emplace_back(id(r, c), id(r + 1, c));
      for (int r = 0; r < width_; ++r) out.emplace_back(id(r, c), id(r, (c + 1) % length_));
    }
    return out;
  }

 private:
  int width_;
  int length_;
};

inline FixedBoundaryLattice fixed_boundary_lattice(int width, int length) {
  return FixedBoundaryLattice(width, length);
}

}  // namespace pottschar
