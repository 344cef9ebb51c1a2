#include <gtest/gtest.h>

#include <gmpxx.h>

#include <limits>
#include <sstream>
#include <stdexcept>

#include "gtorsion/integer.hpp"
#include "support/oracles.hpp"

using gtorsion::Integer;

namespace {

mpz_class as_mpz(const Integer& v) {
  mpz_class z;
  v.get_mpz(z.get_mpz_t());
  return z;
}

Integer random_integer(oracle::Gen& gen) {
  // Mix of small values, values near the int64 boundary and multi-limb values.
  switch (gen.between(0, 3)) {
    case 0: return gen.between(-1000, 1000);
    case 1: return gen.between(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
    case 2: return Integer(gen.coin() ? std::numeric_limits<std::int64_t>::max() : std::numeric_limits<std::int64_t>::min()) +
                   Integer(gen.between(-3, 3));
    default: {
      Integer v = gen.between(1, 1'000'000'007);
      for (int i = 0; i < 3; ++i) v = v * Integer(gen.between(1LL << 40, 1LL << 50)) + Integer(gen.between(0, 99));
      return gen.coin() ? -v : v;
    }
  }
}

}  // namespace

TEST(Integer, SmallArithmetic) {
  EXPECT_EQ(Integer(7) + Integer(-9), Integer(-2));
  EXPECT_EQ(Integer(7) * Integer(-9), Integer(-63));
  EXPECT_EQ(tdiv(Integer(-7), Integer(2)), Integer(-3));
  EXPECT_EQ(tmod(Integer(-7), Integer(2)), Integer(-1));
  EXPECT_EQ(fdiv(Integer(-7), Integer(2)), Integer(-4));
  EXPECT_EQ(fmod(Integer(-7), Integer(2)), Integer(1));
  EXPECT_EQ(gcd(Integer(0), Integer(0)), Integer(0));
  EXPECT_EQ(gcd(Integer(-12), Integer(18)), Integer(6));
}

TEST(Integer, OverflowPromotesAndDemotes) {
  const Integer max = std::numeric_limits<std::int64_t>::max();
  const Integer big = max + Integer(1);
  EXPECT_FALSE(big.fits_int64());
  EXPECT_EQ(big.to_string(), "9223372036854775808");
  const Integer back = big - Integer(1);
  EXPECT_TRUE(back.fits_int64());
  EXPECT_EQ(back, max);

  // -min overflows int64 as well.
  const Integer min = std::numeric_limits<std::int64_t>::min();
  EXPECT_FALSE((-min).fits_int64());
  EXPECT_EQ(-(-min), min);
}

TEST(Integer, StringRoundTrip) {
  const Integer v("-123456789012345678901234567890");
  EXPECT_EQ(v.to_string(), "-123456789012345678901234567890");
  EXPECT_EQ(Integer(v.to_string()), v);
  std::ostringstream os;
  os << Integer(-5);
  EXPECT_EQ(os.str(), "-5");
  EXPECT_THROW(Integer("12x"), std::invalid_argument);
}

TEST(Integer, DivisionByZeroThrows) {
  EXPECT_ANY_THROW((void)tdiv(Integer(1), Integer(0)));
  EXPECT_ANY_THROW((void)divexact(Integer(7), Integer(2)));
}

TEST(IntegerProperty, MatchesGmpOnMixedSizes) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const Integer a = random_integer(gen);
    const Integer b = random_integer(gen);
    const mpz_class za = as_mpz(a), zb = as_mpz(b);
    ASSERT_EQ(as_mpz(a + b), za + zb);
    ASSERT_EQ(as_mpz(a - b), za - zb);
    ASSERT_EQ(as_mpz(a * b), za * zb);
    ASSERT_EQ((a <=> b) < 0, za < zb);
    ASSERT_EQ(a == b, za == zb);
    Integer acc = a;
    acc.add_mul(a, b);
    ASSERT_EQ(as_mpz(acc), za + za * zb);
    acc.sub_mul(b, b);
    ASSERT_EQ(as_mpz(acc), za + za * zb - zb * zb);
    if (!b.is_zero()) {
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
      ASSERT_EQ(as_mpz(tdiv(a, b)), q);
      ASSERT_EQ(as_mpz(tmod(a, b)), r);
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
      ASSERT_EQ(as_mpz(fdiv(a, b)), q);
      ASSERT_EQ(as_mpz(fmod(a, b)), r);
      ASSERT_EQ(divexact(a * b, b), a);
    }
    // Representation invariant: small iff it fits.
    const Integer s = a * b;
    ASSERT_EQ(s.fits_int64(), mpz_fits_slong_p(as_mpz(s).get_mpz_t()) != 0);
  }
}

TEST(IntegerProperty, BezoutIdentity) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Integer a = random_integer(gen);
    const Integer b = random_integer(gen);
    const auto [g, s, t] = gcdext(a, b);
    ASSERT_EQ(g, gcd(a, b));
    ASSERT_GE(g.sign(), 0);
    ASSERT_EQ(s * a + t * b, g);
  }
}

TEST(Integer, Pow) {
  EXPECT_EQ(pow(Integer(2), 100).to_string(), "1267650600228229401496703205376");
  EXPECT_EQ(pow(Integer(-3), 3), Integer(-27));
  EXPECT_EQ(pow(Integer(5), 0), Integer(1));
}
