#include <gtest/gtest.h>

#include "qsearch/error.hpp"
#include "qsearch/field.hpp"

using namespace qsearch;

namespace {

class FieldAxioms : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldAxioms, HoldForAllElements) {
  const Field f = Field::construct(GetParam());
  const unsigned q = f.q();
  for (unsigned a = 0; a < q; ++a) {
    const Elem x{static_cast<std::uint16_t>(a)};
    EXPECT_EQ(f.add(x, f.zero()), x);
    EXPECT_EQ(f.mul(x, f.one()), x);
    EXPECT_EQ(f.add(x, f.neg(x)), f.zero());
    if (a != 0) EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
    for (unsigned b = 0; b < q; ++b) {
      const Elem y{static_cast<std::uint16_t>(b)};
      EXPECT_EQ(f.add(x, y), f.add(y, x));
      EXPECT_EQ(f.mul(x, y), f.mul(y, x));
      EXPECT_TRUE(f.valid(f.mul(x, y)));
      for (unsigned c = 0; c < q; c += (q > 9 ? 3 : 1)) {
        const Elem z{static_cast<std::uint16_t>(c)};
        EXPECT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        EXPECT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        EXPECT_EQ(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
      }
    }
  }
}

TEST_P(FieldAxioms, GeneratorHasFullOrder) {
  const Field f = Field::construct(GetParam());
  EXPECT_EQ(f.order(f.generator()), f.q() - 1);
  EXPECT_EQ(f.pow(f.generator(), f.q() - 1), f.one());
}

TEST_P(FieldAxioms, FrobeniusIsAdditive) {
  const Field f = Field::construct(GetParam());
  for (unsigned a = 0; a < f.q(); ++a) {
    for (unsigned b = 0; b < f.q(); ++b) {
      const Elem x{static_cast<std::uint16_t>(a)}, y{static_cast<std::uint16_t>(b)};
      EXPECT_EQ(f.pow(f.add(x, y), f.p()), f.add(f.pow(x, f.p()), f.pow(y, f.p())));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallOrders, FieldAxioms,
                         ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u));

TEST(Field, Gf4UsesXAsTwo) {
  const Field f = Field::construct(4);
  EXPECT_EQ(f.mul(Elem{2}, Elem{2}), Elem{3});  // x^2 = x + 1
  EXPECT_EQ(f.add(Elem{2}, Elem{1}), Elem{3});
  EXPECT_EQ(f.inv(Elem{2}), Elem{3});
}

TEST(Field, ModulusIsMonicIrreducibleOfDegreeE) {
  const Field f = Field::construct(9);
  ASSERT_EQ(f.modulus().size(), 3u);
  EXPECT_EQ(f.modulus().back(), 1u);
  // x^2 + 1 is the smallest monic irreducible quadratic over GF(3).
  EXPECT_EQ(f.modulus()[0], 1u);
  EXPECT_EQ(f.modulus()[1], 0u);
}

TEST(Field, RejectsBadOrders) {
  for (unsigned q : {0u, 1u, 6u, 10u, 12u, 100u}) {
    try {
      Field::construct(q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotAPrimePower);
    }
  }
  try {
    Field::construct(2048);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldTooLarge);
  }
}

TEST(Field, DivisionByZeroThrows) {
  const Field f = Field::construct(5);
  try {
    f.inv(f.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByZero);
  }
}

TEST(Field, PrimePowerFactorization) {
  unsigned p = 0, e = 0;
  ASSERT_TRUE(prime_power(243, p, e));
  EXPECT_EQ(p, 3u);
  EXPECT_EQ(e, 5u);
  EXPECT_FALSE(prime_power(36, p, e));
  EXPECT_TRUE(is_prime(1021));
  EXPECT_FALSE(is_prime(1));
}

}  // namespace
