#include <pottschar/lattice.hpp>

#include <gtest/gtest.h>

using namespace pottschar;

TEST(SquareStrip, Counts) {
  auto s = square_strip(2, 3);
  EXPECT_EQ(s.vertex_count(), 6);
  EXPECT_EQ(s.edge_count(), 9);
  EXPECT_EQ(s.face_count(), 5);
  EXPECT_TRUE(s.is_square());
  EXPECT_EQ(s.spec_string(), "square:2x3");
}

TEST(SquareStrip, EulerRelationHolds) {
  for (int L = 1; L <= 5; ++L)
    for (int N = 1; N <= 5; ++N) {
      auto s = square_strip(L, N);
      EXPECT_EQ(s.edge_count(), N * (2 * L - 1));
      EXPECT_EQ(s.vertex_count() - s.edge_count() + s.face_count(), 2);
      EXPECT_EQ(static_cast<int>(s.edges().size()), s.edge_count());
    }
}

TEST(SquareStrip, InvalidDimensions) {
  EXPECT_THROW(square_strip(0, 2), std::invalid_argument);
  EXPECT_THROW(square_strip(2, 0), std::invalid_argument);
}

TEST(SquareStrip, EdgesAndWinding) {
  auto edges = square_strip(2, 2).edges();
  ASSERT_EQ(edges.size(), 6u);
  // column 0: vertical (0,1), horizontals (0,2), (1,3); column 1 wraps back
  EXPECT_EQ(edges[0].a, 0);
  EXPECT_EQ(edges[0].b, 1);
  EXPECT_EQ(edges[0].winding, 0);
  EXPECT_EQ(edges[1].b, 2);
  EXPECT_EQ(edges[4].a, 2);
  EXPECT_EQ(edges[4].b, 0);
  EXPECT_EQ(edges[4].winding, 1);
  int total = 0;
  for (const auto& e : edges) total += e.winding;
  EXPECT_EQ(total, 2);
}

TEST(SquareStrip, LengthOneHasSelfLoops) {
  auto edges = square_strip(2, 1).edges();
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[1].a, edges[1].b);
  EXPECT_EQ(edges[1].winding, 1);
}

TEST(CyclicStrip, ProgramValidation) {
  EXPECT_THROW(CyclicStrip(2, 2, {EdgeOp::vertical(0), EdgeOp::horizontal(0)}), std::invalid_argument);
  EXPECT_THROW(CyclicStrip(2, 2, {EdgeOp::vertical(1), EdgeOp::horizontal(0), EdgeOp::horizontal(1)}),
               std::invalid_argument);
  EXPECT_NO_THROW(CyclicStrip(2, 2, {EdgeOp::horizontal(0), EdgeOp::vertical(0), EdgeOp::horizontal(1)}));
}

TEST(CyclicStrip, RotationKeepsCounts) {
  auto base = square_strip(3, 2);
  for (int shift = 0; shift < 5; ++shift) {
    auto r = rotated(base, shift);
    EXPECT_EQ(r.edge_count(), base.edge_count());
    EXPECT_EQ(r.is_square(), shift == 0);
    EXPECT_EQ(r.face_count(), base.face_count());
  }
}

TEST(LatticeSpec, Parsing) {
  auto s = parse_lattice_spec("square:3x4");
  EXPECT_EQ(s.width(), 3);
  EXPECT_EQ(s.length(), 4);
  EXPECT_THROW(parse_lattice_spec("square:0x2"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("square:3"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("triangular:3x4"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("square:3x4x"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("square:-1x4"), std::invalid_argument);
}

TEST(DualGraph, SizesMatchFaces) {
  for (int L = 1; L <= 4; ++L)
    for (int N = 1; N <= 4; ++N) {
      auto s = square_strip(L, N);
      auto d = square_dual(s);
      EXPECT_EQ(d.vertex_count, s.face_count());
      EXPECT_EQ(static_cast<int>(d.edges.size()), s.edge_count());
      EXPECT_TRUE(d.is_exterior(d.bottom));
      EXPECT_TRUE(d.is_exterior(d.top));
    }
}

TEST(DualGraph, WidthOneDualIsTwoVerticesJoinedNTimes) {
  auto d = square_dual(square_strip(1, 3));
  EXPECT_EQ(d.vertex_count, 2);
  for (const auto& e : d.edges) {
    EXPECT_EQ(e.a, d.bottom);
    EXPECT_EQ(e.b, d.top);
  }
}

TEST(DualGraph, NeedsSquareProgram) {
  EXPECT_THROW(square_dual(rotated(square_strip(2, 2), 1)), std::invalid_argument);
}

TEST(FixedBoundary, Counts) {
  auto f = fixed_boundary_lattice(4, 3);
  EXPECT_EQ(f.site_count(), 12);
  EXPECT_EQ(f.free_site_count(), 6);
  EXPECT_EQ(f.fixed_site_count(), 6);
  EXPECT_EQ(f.boundary_bond_count(), 6);
  EXPECT_EQ(static_cast<int>(f.bonds().size()), 3 * 7);
  EXPECT_TRUE(f.is_fixed_site(0));
  EXPECT_TRUE(f.is_fixed_site(3));
  EXPECT_FALSE(f.is_fixed_site(5));
  EXPECT_FALSE(f.is_degenerate());
  EXPECT_TRUE(fixed_boundary_lattice(2, 3).is_degenerate());
  EXPECT_THROW(fixed_boundary_lattice(1, 3), std::invalid_argument);
}
