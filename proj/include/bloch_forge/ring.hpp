#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bf {

// Elements are indices 0..size()-1.  The index is the base-p (or base-q for
// truncated polynomials) reading of the canonical coordinate vector with the
// constant coordinate least significant, so 0 is zero and 1 is one.
using Elem = uint32_t;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct RingDescriptor {
  enum Kind { PrimeField, GaloisField, ZMod, TruncPoly };
  Kind kind = PrimeField;
  uint64_t p = 2;
  unsigned degree = 1;              // GaloisField: extension degree; ZMod: exponent k
  std::vector<unsigned> modulus;    // GaloisField, low to high, monic; empty = default
  std::shared_ptr<RingDescriptor> base;  // TruncPoly
  unsigned nilpotency = 1;          // TruncPoly: R = base[t]/(t^m)
};

struct UnitsGroup {
  std::vector<uint64_t> factors;   // d_1 | d_2 | ..., each >= 2
  std::vector<Elem> generators;    // one per factor, of that order
  std::vector<uint32_t> dlog_table;  // flattened, factors.size() entries per element; units only
  std::vector<int32_t> unit_pos;     // element -> position in unit list, -1 for non-units

  size_t rank() const { return factors.size(); }
  uint64_t order() const;
  std::vector<uint64_t> dlog(Elem x) const;
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr construct(const RingDescriptor& d);
  // Accepts gf(q), gf(q, poly=[c0,c1,...]), zmod(n), truncpoly(<base>, m),
  // and the shorthands F<q> and Z/<n>.
  static RingPtr parse(const std::string& desc);
  static RingPtr gf(uint64_t q);
  static RingPtr zmod(uint64_t n);
  static RingPtr truncpoly(const RingPtr& base, unsigned m);

  const RingDescriptor& descriptor() const { return desc_; }
  std::string name() const;
  uint64_t characteristic_prime() const { return p_; }
  size_t size() const { return n_; }
  bool is_field() const { return residue_ == nullptr; }
  RingPtr residue_field() const;
  size_t residue_size() const { return is_field() ? n_ : residue_->size(); }

  Elem zero() const { return 0; }
  Elem one() const { return n_ > 1 ? 1 : 0; }
  Elem from_int(long long v) const;
  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  bool is_unit(Elem x) const { return unit_[x]; }
  Elem inv(Elem x) const;  // throws std::domain_error for non-units
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, long long e) const;
  Elem residue(Elem x) const;

  std::vector<unsigned> coords(Elem x) const;
  Elem from_coords(const std::vector<unsigned>& c) const;
  std::string str(Elem x) const;
  // Evaluates +, -, *, /, ^ (integer exponents, negative allowed), integers
  // and the generator names (x for the field generator, t for the nilpotent).
  Elem parse_element(const std::string& s) const;
  Elem eval(const std::string& expr, const std::map<std::string, Elem>& vars) const;

  const std::vector<Elem>& units() const { return units_; }
  const UnitsGroup& units_group() const;
  // The generator x of a Galois field (or of the residue field embedded as
  // constants in a truncated polynomial ring); 0 when absent.
  Elem field_generator() const { return gen_; }

  Ring(const RingDescriptor& d, int);

 private:
  Elem mul_raw(Elem x, Elem y) const;
  Elem add_raw(Elem x, Elem y) const;
  Elem neg_raw(Elem x) const;
  Elem inv_raw(Elem x) const;

  RingDescriptor desc_;
  uint64_t p_ = 2;
  size_t n_ = 0;
  RingPtr base_;      // TruncPoly base field
  RingPtr residue_;   // null for fields
  unsigned dig_ = 1;  // number of digits in the index
  uint64_t radix_ = 2;
  Elem gen_ = 0;

  // Galois field log tables (fields with more than p elements).
  std::vector<uint32_t> log_, exp_;
  std::vector<unsigned> modulus_;

  // Dense tables for small rings.
  std::vector<uint16_t> add_tab_, mul_tab_;
  std::vector<Elem> neg_tab_, inv_tab_;
  std::vector<char> unit_;
  std::vector<Elem> units_;
  mutable std::shared_ptr<UnitsGroup> units_group_;
};

// Rabin irreducibility test for a monic polynomial over F_p (low to high).
bool is_irreducible(const std::vector<unsigned>& poly, uint64_t p);
// First monic irreducible polynomial of degree m over F_p in coefficient
// order (c_0 + c_1 p + ... minimal).
std::vector<unsigned> default_modulus(uint64_t p, unsigned m);
bool is_prime(uint64_t n);
// q = p^m with p prime, or {0,0} when q is not a prime power.
std::pair<uint64_t, unsigned> prime_power(uint64_t q);

}  // namespace bf
