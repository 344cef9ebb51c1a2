#include "gtorsion/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace gtorsion {

namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

// GMP on LP64 Linux: long is 64 bits, so mpz_*_si covers int64_t.
static_assert(sizeof(long) == sizeof(std::int64_t));

/// Scoped mpz temporary.
struct Mpz {
  mpz_t z;
  Mpz() { mpz_init(z); }
  explicit Mpz(const Integer& v) {
    mpz_init(z);
    v.get_mpz(z);
  }
  ~Mpz() { mpz_clear(z); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

}  // namespace

Integer::Integer(std::string_view decimal) {
  std::string s(decimal);
  Mpz t;
  if (mpz_set_str(t.z, s.c_str(), 10) != 0) {
    throw std::invalid_argument("Integer: not a decimal integer: " + s);
  }
  set_from_mpz(t.z);
}

Integer::Integer(mpz_srcptr z) { set_from_mpz(z); }

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_ != nullptr) {
    big_ = new __mpz_struct;
    mpz_init_set(big_, other.big_);
  }
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  if (other.big_ == nullptr) {
    release();
    small_ = other.small_;
  } else {
    if (big_ == nullptr) {
      big_ = new __mpz_struct;
      mpz_init_set(big_, other.big_);
    } else {
      mpz_set(big_, other.big_);
    }
    small_ = 0;
  }
  return *this;
}

Integer& Integer::operator=(Integer&& other) noexcept {
  if (this == &other) return *this;
  release();
  small_ = other.small_;
  big_ = other.big_;
  other.big_ = nullptr;
  other.small_ = 0;
  return *this;
}

Integer::~Integer() { release(); }

void Integer::release() noexcept {
  if (big_ != nullptr) {
    mpz_clear(big_);
    delete big_;
    big_ = nullptr;
  }
}

void Integer::set_from_mpz(mpz_srcptr z) {
  if (mpz_fits_slong_p(z)) {
    const std::int64_t v = mpz_get_si(z);  // z may alias big_
    release();
    small_ = v;
    return;
  }
  if (big_ == nullptr) {
    big_ = new __mpz_struct;
    mpz_init_set(big_, z);
  } else if (big_ != z) {
    mpz_set(big_, z);
  }
  small_ = 0;
}

void Integer::get_mpz(mpz_ptr out) const {
  if (big_ != nullptr) {
    mpz_set(out, big_);
  } else {
    mpz_set_si(out, small_);
  }
}

int Integer::sign() const noexcept {
  if (big_ != nullptr) return mpz_sgn(big_);
  return (small_ > 0) - (small_ < 0);
}

std::int64_t Integer::to_int64() const {
  if (big_ != nullptr) throw std::overflow_error("Integer does not fit in int64");
  return small_;
}

std::string Integer::to_string() const {
  if (big_ == nullptr) return std::to_string(small_);
  std::string out(mpz_sizeinbase(big_, 10) + 2, '\0');
  mpz_get_str(out.data(), 10, big_);
  out.resize(std::char_traits<char>::length(out.c_str()));
  return out;
}

std::size_t Integer::bit_length() const noexcept {
  if (big_ != nullptr) return mpz_sizeinbase(big_, 2);
  if (small_ == 0) return 0;
  std::uint64_t u = small_ < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(small_)
                               : static_cast<std::uint64_t>(small_);
  return 64 - static_cast<std::size_t>(__builtin_clzll(u));
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a(*this), b(rhs);
  mpz_add(a.z, a.z, b.z);
  set_from_mpz(a.z);
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a(*this), b(rhs);
  mpz_sub(a.z, a.z, b.z);
  set_from_mpz(a.z);
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a(*this), b(rhs);
  mpz_mul(a.z, a.z, b.z);
  set_from_mpz(a.z);
  return *this;
}

Integer& Integer::add_mul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz acc(*this), x(a), y(b);
  mpz_addmul(acc.z, x.z, y.z);
  set_from_mpz(acc.z);
  return *this;
}

Integer& Integer::sub_mul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz acc(*this), x(a), y(b);
  mpz_submul(acc.z, x.z, y.z);
  set_from_mpz(acc.z);
  return *this;
}

void Integer::negate() {
  if (big_ == nullptr) {
    if (small_ != kMin) {
      small_ = -small_;
      return;
    }
    Mpz a(*this);
    mpz_neg(a.z, a.z);
    set_from_mpz(a.z);
    return;
  }
  mpz_neg(big_, big_);
  set_from_mpz(big_);
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ == b.small_;
  if (a.big_ == nullptr || b.big_ == nullptr) return false;  // normalized
  return mpz_cmp(a.big_, b.big_) == 0;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ <=> b.small_;
  int c;
  if (a.big_ != nullptr && b.big_ != nullptr) {
    c = mpz_cmp(a.big_, b.big_);
  } else if (a.big_ != nullptr) {
    c = mpz_cmp_si(a.big_, b.small_);
  } else {
    c = -mpz_cmp_si(b.big_, a.small_);
  }
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer abs(const Integer& v) {
  if (v.sign() < 0) return -v;
  return v;
}

Integer tdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("Integer division by zero");
  if (a.is_small() && b.is_small() && !(a.small_value() == kMin && b.small_value() == -1)) {
    return Integer(a.small_value() / b.small_value());
  }
  Mpz x(a), y(b);
  mpz_tdiv_q(x.z, x.z, y.z);
  return Integer(x.z);
}

Integer tmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("Integer division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_value() == -1) return Integer(0);
    return Integer(a.small_value() % b.small_value());
  }
  Mpz x(a), y(b);
  mpz_tdiv_r(x.z, x.z, y.z);
  return Integer(x.z);
}

Integer fdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("Integer division by zero");
  if (a.is_small() && b.is_small() && !(a.small_value() == kMin && b.small_value() == -1)) {
    std::int64_t q = a.small_value() / b.small_value();
    if (a.small_value() % b.small_value() != 0 && ((a.small_value() < 0) != (b.small_value() < 0))) --q;
    return Integer(q);
  }
  Mpz x(a), y(b);
  mpz_fdiv_q(x.z, x.z, y.z);
  return Integer(x.z);
}

Integer fmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("Integer division by zero");
  if (a.is_small() && b.is_small() && b.small_value() != -1) {
    std::int64_t r = a.small_value() % b.small_value();
    if (r != 0 && ((r < 0) != (b.small_value() < 0))) r += b.small_value();
    return Integer(r);
  }
  Mpz x(a), y(b);
  mpz_fdiv_r(x.z, x.z, y.z);
  return Integer(x.z);
}

Integer divexact(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("Integer division by zero");
  if (a.is_small() && b.is_small() && !(a.small_value() == kMin && b.small_value() == -1)) {
    if (a.small_value() % b.small_value() != 0) throw std::domain_error("divexact: inexact");
    return Integer(a.small_value() / b.small_value());
  }
  Mpz x(a), y(b);
  if (!mpz_divisible_p(x.z, y.z)) throw std::domain_error("divexact: inexact");
  mpz_divexact(x.z, x.z, y.z);
  return Integer(x.z);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  if (a.is_small() && d.is_small()) {
    if (d.small_value() == -1) return true;
    return a.small_value() % d.small_value() == 0;
  }
  Mpz x(a), y(d);
  return mpz_divisible_p(x.z, y.z) != 0;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small_value() != kMin && b.small_value() != kMin) {
    std::uint64_t x = static_cast<std::uint64_t>(a.small_value() < 0 ? -a.small_value() : a.small_value());
    std::uint64_t y = static_cast<std::uint64_t>(b.small_value() < 0 ? -b.small_value() : b.small_value());
    while (y != 0) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<std::int64_t>(x));
  }
  Mpz x(a), y(b);
  mpz_gcd(x.z, x.z, y.z);
  return Integer(x.z);
}

Bezout gcdext(const Integer& a, const Integer& b) {
  Mpz g, s, t, x(a), y(b);
  mpz_gcdext(g.z, s.z, t.z, x.z, y.z);
  return Bezout{Integer(g.z), Integer(s.z), Integer(t.z)};
}

Integer pow(const Integer& base, unsigned exp) {
  Mpz x(base);
  mpz_pow_ui(x.z, x.z, exp);
  return Integer(x.z);
}

}  // namespace gtorsion
