#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace bf {

// Arbitrary precision integer with an inline 64-bit fast path.
// Values that fit in int64 never allocate; overflow promotes to GMP.
class Integer {
 public:
  Integer() = default;
  Integer(int v) : small_(v) {}
  Integer(long v) : small_(v) {}
  Integer(long long v) : small_(v) {}
  Integer(unsigned v) : small_(v) {}
  Integer(unsigned long v);
  Integer(unsigned long long v);
  explicit Integer(const mpz_class& z);
  explicit Integer(const std::string& decimal);

  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? new mpz_class(*o.big_) : nullptr) {}
  Integer(Integer&& o) noexcept : small_(o.small_), big_(o.big_) { o.big_ = nullptr; }
  Integer& operator=(const Integer& o);
  Integer& operator=(Integer&& o) noexcept;
  ~Integer() { delete big_; }

  bool is_small() const { return big_ == nullptr; }
  int64_t small() const { return small_; }
  mpz_class to_mpz() const;
  bool fits_int64() const { return big_ == nullptr; }
  int64_t to_int64() const;  // throws if it does not fit

  int sign() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }

  Integer abs() const;
  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  // this += a * b
  void addmul(const Integer& a, const Integer& b);
  // this -= a * b
  void submul(const Integer& a, const Integer& b);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  // exact division; the caller guarantees b | a
  static Integer divexact(const Integer& a, const Integer& b);
  // floor division and non-negative remainder for b > 0
  static Integer fdiv(const Integer& a, const Integer& b);
  static Integer mod(const Integer& a, const Integer& b);
  static bool divides(const Integer& d, const Integer& a);
  static Integer gcd(const Integer& a, const Integer& b);
  static Integer lcm(const Integer& a, const Integer& b);
  // g = s*a + t*b, g >= 0
  static Integer ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

  int compare(const Integer& o) const;
  int compare_abs(const Integer& o) const;
  friend bool operator==(const Integer& a, const Integer& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Integer& a, const Integer& b) { return a.compare(b) != 0; }
  friend bool operator<(const Integer& a, const Integer& b) { return a.compare(b) < 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return a.compare(b) > 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return a.compare(b) <= 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return a.compare(b) >= 0; }

  std::string str() const;
  size_t hash() const;

 private:
  static Integer from_mpz(mpz_class&& z);
  void set_big(mpz_class&& z);

  int64_t small_ = 0;
  mpz_class* big_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const Integer& x);

}  // namespace bf

template <>
struct std::hash<bf::Integer> {
  size_t operator()(const bf::Integer& x) const { return x.hash(); }
};
