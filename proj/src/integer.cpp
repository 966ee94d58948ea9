#include "bloch_forge/integer.hpp"

#include <ostream>
#include <stdexcept>

namespace bf {

namespace {

mpz_class mpz_of(int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Integer::Integer(unsigned long v) {
  if (v <= static_cast<unsigned long>(INT64_MAX)) {
    small_ = static_cast<int64_t>(v);
  } else {
    set_big(mpz_class(v));
  }
}

Integer::Integer(unsigned long long v) : Integer(static_cast<unsigned long>(v)) {}

Integer::Integer(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    small_ = z.get_si();
  } else {
    big_ = new mpz_class(z);
  }
}

Integer::Integer(const std::string& decimal) : Integer(mpz_class(decimal, 10)) {}

Integer& Integer::operator=(const Integer& o) {
  if (this == &o) return *this;
  small_ = o.small_;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = new mpz_class(*o.big_);
    }
  } else {
    delete big_;
    big_ = nullptr;
  }
  return *this;
}

Integer& Integer::operator=(Integer&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  small_ = o.small_;
  big_ = o.big_;
  o.big_ = nullptr;
  return *this;
}

void Integer::set_big(mpz_class&& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    small_ = z.get_si();
    delete big_;
    big_ = nullptr;
    return;
  }
  small_ = 0;
  if (big_) {
    *big_ = std::move(z);
  } else {
    big_ = new mpz_class(std::move(z));
  }
}

Integer Integer::from_mpz(mpz_class&& z) {
  Integer r;
  r.set_big(std::move(z));
  return r;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_of(small_); }

int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer does not fit in 64 bits");
  return small_;
}

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

Integer Integer::abs() const {
  if (!big_ && small_ != INT64_MIN) return Integer(static_cast<long long>(small_ < 0 ? -small_ : small_));
  return from_mpz(::abs(to_mpz()));
}

Integer Integer::operator-() const {
  if (!big_ && small_ != INT64_MIN) return Integer(static_cast<long long>(-small_));
  return from_mpz(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  set_big(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  set_big(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  set_big(to_mpz() * o.to_mpz());
  return *this;
}

void Integer::addmul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  mpz_class z = to_mpz();
  mpz_addmul(z.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  set_big(std::move(z));
}

void Integer::submul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  mpz_class z = to_mpz();
  mpz_submul(z.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  set_big(std::move(z));
}

Integer Integer::divexact(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    return Integer(static_cast<long long>(a.small_ / b.small_));
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return from_mpz(std::move(q));
}

Integer Integer::fdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    int64_t q = a.small_ / b.small_;
    int64_t r = a.small_ % b.small_;
    if (r != 0 && ((r < 0) != (b.small_ < 0))) --q;
    return Integer(static_cast<long long>(q));
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return from_mpz(std::move(q));
}

Integer Integer::mod(const Integer& a, const Integer& b) {
  if (b.sign() <= 0) throw std::domain_error("modulus must be positive");
  if (!a.big_ && !b.big_) {
    int64_t r = a.small_ % b.small_;
    if (r < 0) r += b.small_;
    return Integer(static_cast<long long>(r));
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return from_mpz(std::move(r));
}

bool Integer::divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  if (!a.big_ && !d.big_) {
    if (d.small_ == -1) return true;
    return a.small_ % d.small_ == 0;
  }
  return mpz_divisible_p(a.to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t()) != 0;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
    int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<long long>(x));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return from_mpz(std::move(g));
}

Integer Integer::lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  Integer g = gcd(a, b);
  return (divexact(a, g) * b).abs();
}

Integer Integer::ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  mpz_class g, ss, tt;
  mpz_gcdext(g.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  s = from_mpz(std::move(ss));
  t = from_mpz(std::move(tt));
  return from_mpz(std::move(g));
}

int Integer::compare(const Integer& o) const {
  if (!big_ && !o.big_) return (small_ > o.small_) - (small_ < o.small_);
  return cmp(to_mpz(), o.to_mpz());
}

int Integer::compare_abs(const Integer& o) const {
  if (!big_ && !o.big_ && small_ != INT64_MIN && o.small_ != INT64_MIN) {
    int64_t x = small_ < 0 ? -small_ : small_;
    int64_t y = o.small_ < 0 ? -o.small_ : o.small_;
    return (x > y) - (x < y);
  }
  return mpz_cmpabs(to_mpz().get_mpz_t(), o.to_mpz().get_mpz_t());
}

std::string Integer::str() const { return big_ ? big_->get_str() : std::to_string(small_); }

size_t Integer::hash() const {
  if (!big_) return std::hash<int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

std::ostream& operator<<(std::ostream& os, const Integer& x) { return os << x.str(); }

}  // namespace bf
