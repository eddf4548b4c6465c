#include <pottschar/characters.hpp>
#include <pottschar/oracle.hpp>
#include <pottschar/transfer.hpp>

#include <gtest/gtest.h>

using namespace pottschar;

namespace {

const MultiPoly Q = MultiPoly::variable(Var::Q);
const MultiPoly v = MultiPoly::variable(Var::v);

std::size_t index_of(const TransferBlock& t, const std::string& text) {
  auto idx = t.index_of(ConnectivityState::parse(text, t.width));
  EXPECT_TRUE(idx.has_value()) << text;
  return idx.value_or(0);
}

}  // namespace

TEST(EdgeOperator, VerticalJoinsWithWeightV) {
  auto t = edge_operator(2, 0, EdgeOp::vertical(0));
  ASSERT_EQ(t.dimension(), 2u);
  auto joined = index_of(t, "(12)");
  auto split = index_of(t, "(1)(2)");
  EXPECT_EQ(t.entries(joined, joined), MultiPoly(1) + v);
  EXPECT_EQ(t.entries(joined, split), v);
  EXPECT_EQ(t.entries(split, split), MultiPoly(1));
  EXPECT_TRUE(t.entries(split, joined).is_zero());
}

TEST(EdgeOperator, VerticalDropsJoinOfTwoMarks) {
  auto t = edge_operator(2, 2, EdgeOp::vertical(0));
  ASSERT_EQ(t.dimension(), 1u);
  EXPECT_EQ(t.entries(0, 0), MultiPoly(1));
}

TEST(EdgeOperator, HorizontalDetachRules) {
  auto t = edge_operator(2, 0, EdgeOp::horizontal(0));
  auto joined = index_of(t, "(12)");
  auto split = index_of(t, "(1)(2)");
  EXPECT_EQ(t.entries(joined, joined), v);
  EXPECT_EQ(t.entries(split, joined), MultiPoly(1));
  EXPECT_EQ(t.entries(split, split), v + Q);

  auto marked = edge_operator(1, 1, EdgeOp::horizontal(0));
  ASSERT_EQ(marked.dimension(), 1u);
  EXPECT_EQ(marked.entries(0, 0), v);
}

TEST(EdgeOperator, SiteValidation) {
  EXPECT_THROW(edge_operator(2, 0, EdgeOp::vertical(1)), std::invalid_argument);
  EXPECT_THROW(edge_operator(2, 0, EdgeOp::horizontal(2)), std::invalid_argument);
  EXPECT_THROW(edge_operator(2, 3, EdgeOp::horizontal(0)), std::invalid_argument);
}

TEST(ColumnTransfer, DimensionIsStateCount) {
  for (int L = 1; L <= 5; ++L)
    for (int l = 0; l <= L; ++l)
      EXPECT_EQ(column_transfer(square_strip(L, 1), l).dimension(), count_states(L, l));
}

TEST(ColumnTransfer, IsTheProductOfEdgeOperators) {
  auto strip = square_strip(3, 1);
  for (int l = 0; l <= 3; ++l) {
    PolyMatrix product = PolyMatrix::identity(count_states(3, l));
    for (const auto& op : strip.column_program()) product = edge_operator(3, l, op).entries * product;
    EXPECT_EQ(column_transfer(strip, l).entries, product) << "l=" << l;
  }
}

TEST(PolyMatrixTest, PowerAndTrace) {
  PolyMatrix m(2);
  m(0, 0) = Q;
  m(0, 1) = MultiPoly(1);
  m(1, 1) = v;
  auto cube = matrix_power(m, 3);
  EXPECT_EQ(cube(0, 0), pow(Q, 3));
  EXPECT_EQ(cube(0, 1), Q * Q + Q * v + v * v);
  EXPECT_EQ(cube.trace(), pow(Q, 3) + pow(v, 3));
  EXPECT_EQ(matrix_power(m, 0), PolyMatrix::identity(2));
}

TEST(CharacterK, WidthOneClosedForms) {
  for (int N = 1; N <= 6; ++N) {
    auto strip = square_strip(1, N);
    EXPECT_EQ(character_K(strip, 0), pow(Q + v, N));
    EXPECT_EQ(character_K(strip, 1), pow(v, N));
  }
}

TEST(CharacterK, AllMarksGiveVToTheArea) {
  for (int L = 1; L <= 4; ++L)
    for (int N = 1; N <= 4; ++N) EXPECT_EQ(character_K(square_strip(L, N), L), pow(v, L * N));
}

TEST(CharacterK, ZeroBeyondWidth) {
  EXPECT_TRUE(character_K(square_strip(2, 2), 3).is_zero());
  EXPECT_THROW(character_K(square_strip(2, 2), -1), std::invalid_argument);
}

TEST(CharacterK, AgreesWithOracleInversion) {
  for (int L = 1; L <= 3; ++L)
    for (int N = 1; N <= 3; ++N) {
      auto strip = square_strip(L, N);
      auto spectrum = fk_enumerate(strip);
      for (int l = 0; l <= L; ++l)
        EXPECT_EQ(character_K(strip, l), K_from_Z2j(spectrum, l)) << strip.spec_string() << " l=" << l;
    }
}

TEST(CharacterKProperty, NonnegativeIntegerCoefficients) {
  for (int L = 1; L <= 4; ++L)
    for (int N = 1; N <= 4; ++N)
      for (const auto& k : character_table(square_strip(L, N))) {
        EXPECT_TRUE(k.has_integer_coefficients());
        EXPECT_TRUE(k.has_nonnegative_coefficients());
        EXPECT_FALSE(k.occurs(Var::Q0));
      }
}

TEST(CharacterKProperty, RotationInvariance) {
  for (int L = 2; L <= 3; ++L)
    for (int N = 1; N <= 3; ++N) {
      auto strip = square_strip(L, N);
      auto reference = character_table(strip);
      for (int shift = 1; shift < static_cast<int>(strip.column_program().size()); ++shift)
        EXPECT_EQ(character_table(rotated(strip, shift)), reference) << strip.spec_string() << " shift=" << shift;
    }
}

TEST(CharacterKProperty, IndependentOfWorkerCount) {
  auto strip = square_strip(4, 3);
  auto serial = character_table(strip, 1);
  EXPECT_EQ(character_table(strip, 2), serial);
  EXPECT_EQ(character_table(strip, 5), serial);
}

TEST(TwoSliceTransferTest, BasisIsCatalan) {
  for (int L = 1; L <= 3; ++L) {
    auto t = two_slice_transfer(square_strip(L, 1));
    EXPECT_EQ(t.basis.size(), catalan(2 * L));
    EXPECT_EQ(t.columns.size(), t.basis.size());
  }
}

TEST(BlockStructure, PassesForSmallWidths) {
  for (int L = 1; L <= 3; ++L) {
    auto report = verify_block_structure(square_strip(L, 1));
    EXPECT_TRUE(report.passed()) << "L=" << L << ": " << report.failure;
    EXPECT_TRUE(report.lower_triangular);
    for (int l = 0; l <= L; ++l) {
      EXPECT_EQ(report.sub_block_count[l], count_states(L, l));
      EXPECT_EQ(report.sub_block_dimension[l], count_states(L, l));
    }
  }
}

TEST(BlockStructure, RejectsWideStrips) {
  EXPECT_THROW(verify_block_structure(square_strip(5, 1)), std::invalid_argument);
}
