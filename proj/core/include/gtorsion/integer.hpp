#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmp.h>

namespace gtorsion {

/// Arbitrary-precision signed integer.
///
/// Values that fit in 64 bits are stored inline and handled with
/// overflow-checked machine arithmetic; anything larger lives in a heap
/// allocated GMP integer. The representation is normalized after every
/// operation, so a value is "big" iff it does not fit in int64_t.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(std::int64_t v) noexcept : small_(v) {}  // NOLINT(implicit)
  Integer(int v) noexcept : small_(v) {}           // NOLINT(implicit)
  explicit Integer(std::string_view decimal);
  explicit Integer(mpz_srcptr z);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept : small_(other.small_), big_(other.big_) {
    other.big_ = nullptr;
    other.small_ = 0;
  }
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept;
  ~Integer();

  [[nodiscard]] bool is_small() const noexcept { return big_ == nullptr; }
  [[nodiscard]] std::int64_t small_value() const noexcept { return small_; }
  [[nodiscard]] bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return big_ == nullptr && small_ == 1; }
  [[nodiscard]] bool is_unit() const noexcept {
    return big_ == nullptr && (small_ == 1 || small_ == -1);
  }
  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool fits_int64() const noexcept { return big_ == nullptr; }
  /// Precondition: fits_int64().
  [[nodiscard]] std::int64_t to_int64() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::size_t bit_length() const noexcept;

  /// Writes the value into an initialized mpz_t.
  void get_mpz(mpz_ptr out) const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  /// this += a * b
  Integer& add_mul(const Integer& a, const Integer& b);
  /// this -= a * b
  Integer& sub_mul(const Integer& a, const Integer& b);
  void negate();

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator-(Integer a) {
    a.negate();
    return a;
  }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void set_from_mpz(mpz_srcptr z);
  void release() noexcept;

  std::int64_t small_{0};
  mpz_ptr big_{nullptr};
};

[[nodiscard]] Integer abs(const Integer& v);
/// Truncating quotient (rounds toward zero). Throws on division by zero.
[[nodiscard]] Integer tdiv(const Integer& a, const Integer& b);
/// Remainder matching tdiv: a == tdiv(a,b)*b + tmod(a,b), |tmod| < |b|.
[[nodiscard]] Integer tmod(const Integer& a, const Integer& b);
/// Floor quotient; floor_mod(a,b) has the sign of b.
[[nodiscard]] Integer fdiv(const Integer& a, const Integer& b);
[[nodiscard]] Integer fmod(const Integer& a, const Integer& b);
/// Exact division; throws std::domain_error when b does not divide a.
[[nodiscard]] Integer divexact(const Integer& a, const Integer& b);
[[nodiscard]] bool divides(const Integer& d, const Integer& a);
/// Nonnegative gcd; gcd(0,0) == 0.
[[nodiscard]] Integer gcd(const Integer& a, const Integer& b);
/// Extended gcd: g = s*a + t*b with g >= 0.
struct Bezout {
  Integer g, s, t;
};
[[nodiscard]] Bezout gcdext(const Integer& a, const Integer& b);
[[nodiscard]] Integer pow(const Integer& base, unsigned exp);

}  // namespace gtorsion
