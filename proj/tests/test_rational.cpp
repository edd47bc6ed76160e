#include <gtest/gtest.h>

#include <random>

#include "dualweight/errors.hpp"
#include "dualweight/rational.hpp"
#include "oracles.hpp"

using dw::Rational;

TEST(Rational, LowestTermsAndSign) {
  const Rational q(6, -4);
  EXPECT_EQ(q.numerator(), -3);
  EXPECT_EQ(q.denominator(), 2);
  EXPECT_EQ(q.to_string(), "-3/2");
  EXPECT_EQ(Rational(8, 4).to_string(), "2");
  EXPECT_EQ(Rational(0, -5).to_string(), "0");
}

TEST(Rational, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("5/3"), Rational(5, 3));
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1/2/3", " 1"})
    EXPECT_THROW(Rational::parse(bad), dw::FormatError) << bad;
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), dw::DivisionByZero);
  EXPECT_THROW(Rational(0).inverse(), dw::DivisionByZero);
  EXPECT_THROW(Rational(dw::BigInt(1), dw::BigInt(0)), dw::DivisionByZero);
}

TEST(Rational, HugeValuesStayExact) {
  Rational f(1);
  for (int i = 1; i <= 40; ++i) f *= Rational(i);
  Rational g = f;
  for (int i = 40; i >= 1; --i) g /= Rational(i);
  EXPECT_EQ(g, Rational(1));
  EXPECT_EQ(f.to_string(), "815915283247897734345611269596115894272000000000");
}

// Field axioms and canonical form on random fractions.
TEST(RationalProperty, FieldAxioms) {
  std::mt19937_64 gen(11);
  for (int it = 0; it < 2000; ++it) {
    const Rational a = oracle::random_rational(gen, 50);
    const Rational b = oracle::random_rational(gen, 50);
    const Rational c = oracle::random_rational(gen, 50);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - b) + b, a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(Rational::parse(a.to_string()), a);
    EXPECT_GT(a.denominator(), 0);
    EXPECT_EQ(gcd(a.numerator(), a.denominator()), a.is_zero() ? a.denominator() : dw::BigInt(1));
    EXPECT_EQ(a < b, a.numerator() * b.denominator() < b.numerator() * a.denominator());
  }
}
