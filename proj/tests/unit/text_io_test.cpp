#include <gtest/gtest.h>

#include "heightlab/errors.hpp"
#include "heightlab/text_io.hpp"

using namespace heightlab;

TEST(ParseField, Forms) {
  EXPECT_TRUE(parse_field("Q").is_rational());
  EXPECT_EQ(parse_field("Q(i)").m(), -1);
  EXPECT_EQ(parse_field("Q(sqrt2)").m(), 2);
  EXPECT_EQ(parse_field("Q(sqrt(-5))").m(), -5);
  EXPECT_THROW(parse_field("Q(sqrt4)"), ParseError);
  EXPECT_THROW(parse_field("R"), ParseError);
}

TEST(ParseScalar, RationalAndRadical) {
  const Field f = Field::quadratic(2);
  EXPECT_EQ(parse_scalar("-3/6", Field()), Scalar(mpq_class(-1, 2)));
  EXPECT_EQ(parse_scalar("1/2+3/4*r", f), Scalar(mpq_class(1, 2), mpq_class(3, 4), 2));
  EXPECT_EQ(parse_scalar("-r", f), Scalar(0, -1, 2));
  EXPECT_THROW(parse_scalar("r", Field()), ParseError);
}

TEST(ParseVector, RoundTrip) {
  const VectorK x = parse_vector(" [ 3 , -4/5 ] ", Field());
  EXPECT_EQ(format_vector(x), "[3,-4/5]");
  EXPECT_EQ(parse_vector(format_vector(x), Field()), x);
}

TEST(ParseMatrix, RoundTrip) {
  const Field f = Field::quadratic(-1);
  const MatrixK t = parse_matrix("[[1,r],[0,2-r]]", f);
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(parse_matrix(format_matrix(t), f), t);
}

TEST(ParseMatrix, ErrorsCarryPosition) {
  try {
    parse_matrix("[[1,2],[3,x]]", Field());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
  EXPECT_THROW(parse_matrix("[[1,2],[3]]", Field()), ParseError);
  EXPECT_THROW(parse_vector("[1/0]", Field()), ParseError);
  EXPECT_THROW(parse_vector("[1,2", Field()), ParseError);
}

TEST(ParsePlace, Labels) {
  EXPECT_TRUE(parse_place("inf", Field()).is_archimedean());
  EXPECT_EQ(parse_place("7", Field()).prime(), 7);
  const Field f = Field::quadratic(-1);
  EXPECT_NE(parse_place("5:0", f), parse_place("5:1", f));
  EXPECT_THROW(parse_place("6", Field()), ParseError);
}

TEST(ParseIntegerList, Basic) {
  const auto v = parse_integer_list("2, 3,101");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[2], 101);
}
