#include "bloch_forge/ring.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bloch_forge/budget.hpp"
#include "bloch_forge/linalg.hpp"

namespace bf {

namespace {

using Poly = std::vector<uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr) {
    int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::domain_error("element is not a unit");
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

Poly poly_mod(Poly a, const Poly& f, uint64_t p) {
  trim(a);
  uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    uint64_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i) a[shift + i] = (a[shift + i] + p - c * f[i] % p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(c, f, p);
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f
Poly frobenius_power(const Poly& f, uint64_t p, unsigned k) {
  Poly x{0, 1};
  x = poly_mod(x, f, p);
  for (unsigned i = 0; i < k; ++i) {
    Poly r{1};
    Poly base = x;
    uint64_t e = p;
    while (e) {
      if (e & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    x = r;
  }
  return x;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string lower_nospace(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) o += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return o;
}

uint64_t parse_uint(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("expected a positive integer, got '" + s + "'");
  }
  return std::stoull(s);
}

const size_t kTableLimit = 256;

class ExprParser {
 public:
  ExprParser(const Ring& r, const std::string& s, const std::map<std::string, Elem>& vars)
      : r_(r), s_(s), vars_(vars) {}

  Elem run() {
    Elem v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Elem expr() {
    Elem v = term();
    for (;;) {
      if (eat('+')) {
        v = r_.add(v, term());
      } else if (eat('-')) {
        v = r_.sub(v, term());
      } else {
        return v;
      }
    }
  }
  Elem term() {
    Elem v = unary();
    for (;;) {
      if (eat('*')) {
        v = r_.mul(v, unary());
      } else if (eat('/')) {
        v = r_.div(v, unary());
      } else {
        return v;
      }
    }
  }
  Elem unary() {
    if (eat('-')) return r_.neg(unary());
    return power();
  }
  Elem power() {
    Elem v = primary();
    if (eat('^')) {
      bool negative = eat('-');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be an integer");
      long long e = std::stoll(s_.substr(start, pos_ - start));
      v = r_.pow(v, negative ? -e : e);
    }
    return v;
  }
  Elem primary() {
    skip();
    if (eat('(')) {
      Elem v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer n(s_.substr(start, pos_ - start));
      Integer m(static_cast<unsigned long long>(r_.size()));
      return r_.from_int(Integer::mod(n, m).to_int64());
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      auto it = vars_.find(id);
      if (it != vars_.end()) return it->second;
      const auto& d = r_.descriptor();
      if (id == "x" && r_.field_generator() != 0) return r_.field_generator();
      if (id == "t" && d.kind == RingDescriptor::TruncPoly && d.nilpotency > 1) {
        return static_cast<Elem>(r_.residue_size());
      }
      fail("unknown symbol '" + id + "'");
    }
    fail("unexpected end of input");
  }

  const Ring& r_;
  std::string s_;
  const std::map<std::string, Elem>& vars_;
  size_t pos_ = 0;
};

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<uint64_t, unsigned> prime_power(uint64_t q) {
  if (q < 2) return {0, 0};
  auto f = prime_factors(q);
  if (f.size() != 1) return {0, 0};
  unsigned m = 0;
  while (q > 1) {
    q /= f[0];
    ++m;
  }
  return {f[0], m};
}

bool is_irreducible(const std::vector<unsigned>& poly, uint64_t p) {
  Poly f(poly.begin(), poly.end());
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() < 2) return false;
  unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  Poly x = poly_mod(Poly{0, 1}, f, p);
  auto diff = [&](Poly a) {
    a.resize(std::max<size_t>(a.size(), 2), 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!diff(frobenius_power(f, p, m)).empty()) return false;
  for (uint64_t r : prime_factors(m)) {
    Poly g = poly_gcd(f, diff(frobenius_power(f, p, m / static_cast<unsigned>(r))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<unsigned> default_modulus(uint64_t p, unsigned m) {
  uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (uint64_t code = 0; code < count; ++code) {
    std::vector<unsigned> f(m + 1, 0);
    uint64_t c = code;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = static_cast<unsigned>(c % p);
      c /= p;
    }
    f[m] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

uint64_t UnitsGroup::order() const {
  uint64_t o = 1;
  for (auto f : factors) o *= f;
  return o;
}

std::vector<uint64_t> UnitsGroup::dlog(Elem x) const {
  if (x >= unit_pos.size() || unit_pos[x] < 0) throw std::domain_error("discrete log of a non-unit");
  size_t k = factors.size();
  const uint32_t* row = dlog_table.data() + static_cast<size_t>(unit_pos[x]) * k;
  return std::vector<uint64_t>(row, row + k);
}

Ring::Ring(const RingDescriptor& d, int) : desc_(d) {
  const Budget& budget = default_budget();
  auto check_size = [&](long double n) {
    if (n > static_cast<long double>(budget.max_ring_size) || n > 4e9L) {
      throw BudgetExceeded("ring has more elements than the configured cap");
    }
  };
  switch (d.kind) {
    case RingDescriptor::PrimeField:
      if (!is_prime(d.p)) throw std::invalid_argument("gf(p) needs a prime p");
      check_size(d.p);
      p_ = d.p;
      n_ = d.p;
      radix_ = d.p;
      dig_ = 1;
      break;
    case RingDescriptor::ZMod: {
      if (!is_prime(d.p) || d.degree < 1) throw std::invalid_argument("zmod needs a prime power");
      long double n = 1;
      for (unsigned i = 0; i < d.degree; ++i) n *= d.p;
      check_size(n);
      p_ = d.p;
      n_ = static_cast<size_t>(n);
      radix_ = n_;
      dig_ = 1;
      if (d.degree > 1) {
        RingDescriptor f;
        f.kind = RingDescriptor::PrimeField;
        f.p = d.p;
        residue_ = construct(f);
      }
      break;
    }
    case RingDescriptor::GaloisField: {
      if (!is_prime(d.p) || d.degree < 1) throw std::invalid_argument("gf(q) needs a prime power");
      long double n = 1;
      for (unsigned i = 0; i < d.degree; ++i) n *= d.p;
      check_size(n);
      p_ = d.p;
      n_ = static_cast<size_t>(n);
      radix_ = d.p;
      dig_ = d.degree;
      modulus_ = d.modulus.empty() ? default_modulus(d.p, d.degree) : d.modulus;
      if (modulus_.size() != d.degree + 1 || modulus_.back() != 1) {
        throw std::invalid_argument("modulus must be monic of the field degree");
      }
      if (!is_irreducible(modulus_, d.p)) throw std::invalid_argument("modulus polynomial is reducible");
      desc_.modulus = modulus_;
      if (d.degree > 1) gen_ = static_cast<Elem>(d.p);
      break;
    }
    case RingDescriptor::TruncPoly: {
      if (!d.base) throw std::invalid_argument("truncpoly needs a base field");
      base_ = construct(*d.base);
      if (!base_->is_field()) throw std::invalid_argument("truncpoly base must be a field");
      if (d.nilpotency < 1) throw std::invalid_argument("truncpoly degree must be positive");
      long double n = 1;
      for (unsigned i = 0; i < d.nilpotency; ++i) n *= base_->size();
      check_size(n);
      p_ = base_->characteristic_prime();
      n_ = static_cast<size_t>(n);
      radix_ = base_->size();
      dig_ = d.nilpotency;
      gen_ = base_->field_generator();
      if (d.nilpotency > 1) residue_ = base_;
      break;
    }
  }

  if (d.kind == RingDescriptor::GaloisField && d.degree > 1) {
    // log tables from a primitive element
    Poly f(modulus_.begin(), modulus_.end());
    auto to_poly = [&](Elem x) {
      Poly a(dig_);
      for (unsigned i = 0; i < dig_; ++i) {
        a[i] = x % p_;
        x = static_cast<Elem>(x / p_);
      }
      trim(a);
      return a;
    };
    auto from_poly = [&](const Poly& a) {
      Elem x = 0;
      for (size_t i = a.size(); i-- > 0;) x = static_cast<Elem>(x * p_ + a[i]);
      return x;
    };
    exp_.assign(n_ - 1, 0);
    log_.assign(n_, 0);
    for (Elem g = static_cast<Elem>(p_); g < n_; ++g) {
      Poly gp = to_poly(g);
      Poly cur{1};
      size_t k = 0;
      bool ok = true;
      for (; k < n_ - 1; ++k) {
        Elem e = from_poly(cur);
        if (k > 0 && e == 1) {
          ok = false;
          break;
        }
        exp_[k] = e;
        cur = poly_mulmod(cur, gp, f, p_);
      }
      if (ok) break;
    }
    for (size_t k = 0; k < n_ - 1; ++k) log_[exp_[k]] = static_cast<uint32_t>(k);
  }

  unit_.assign(n_, 0);
  for (Elem x = 0; x < n_; ++x) {
    bool u;
    if (is_field()) {
      u = x != 0;
    } else if (d.kind == RingDescriptor::ZMod) {
      u = x % p_ != 0;
    } else {
      u = x % radix_ != 0;
    }
    unit_[x] = u;
    if (u) units_.push_back(x);
  }

  if (n_ <= kTableLimit) {
    add_tab_.resize(n_ * n_);
    mul_tab_.resize(n_ * n_);
    neg_tab_.resize(n_);
    inv_tab_.assign(n_, 0);
    for (Elem x = 0; x < n_; ++x) {
      for (Elem y = 0; y < n_; ++y) {
        add_tab_[x * n_ + y] = static_cast<uint16_t>(add_raw(x, y));
        mul_tab_[x * n_ + y] = static_cast<uint16_t>(mul_raw(x, y));
      }
      neg_tab_[x] = neg_raw(x);
      if (unit_[x]) inv_tab_[x] = inv_raw(x);
    }
  }
}

RingPtr Ring::construct(const RingDescriptor& d) { return std::make_shared<Ring>(d, 0); }

RingPtr Ring::gf(uint64_t q) {
  auto [p, m] = prime_power(q);
  if (!p) throw std::invalid_argument("gf(q) needs a prime power, got " + std::to_string(q));
  RingDescriptor d;
  d.kind = m == 1 ? RingDescriptor::PrimeField : RingDescriptor::GaloisField;
  d.p = p;
  d.degree = m;
  return construct(d);
}

RingPtr Ring::zmod(uint64_t n) {
  auto [p, k] = prime_power(n);
  if (!p) throw std::invalid_argument("zmod(n) needs a prime power (local ring), got " + std::to_string(n));
  RingDescriptor d;
  d.kind = RingDescriptor::ZMod;
  d.p = p;
  d.degree = k;
  return construct(d);
}

RingPtr Ring::truncpoly(const RingPtr& base, unsigned m) {
  RingDescriptor d;
  d.kind = RingDescriptor::TruncPoly;
  d.base = std::make_shared<RingDescriptor>(base->descriptor());
  d.nilpotency = m;
  return construct(d);
}

RingPtr Ring::parse(const std::string& raw) {
  static std::mutex mu;
  static std::unordered_map<std::string, RingPtr> cache;
  std::string s = lower_nospace(raw);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
  }
  RingPtr r;
  auto args_of = [&](const std::string& head) -> std::string {
    if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return "";
    return s.substr(head.size() + 1, s.size() - head.size() - 2);
  };
  if (s.size() > 1 && s[0] == 'f' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    r = gf(parse_uint(s.substr(1)));
  } else if (s.rfind("f_", 0) == 0) {
    r = gf(parse_uint(s.substr(2)));
  } else if (s.rfind("z/", 0) == 0) {
    r = zmod(parse_uint(s.substr(2)));
  } else if (!args_of("zmod").empty()) {
    r = zmod(parse_uint(args_of("zmod")));
  } else if (!args_of("gf").empty()) {
    std::string a = args_of("gf");
    auto comma = a.find(',');
    uint64_t q = parse_uint(a.substr(0, comma));
    if (comma == std::string::npos) {
      r = gf(q);
    } else {
      std::string rest = a.substr(comma + 1);
      if (rest.rfind("poly=", 0) != 0) throw std::invalid_argument("expected poly=[...] in " + raw);
      rest = rest.substr(5);
      if (!rest.empty() && rest.front() == '[') rest = rest.substr(1);
      if (!rest.empty() && rest.back() == ']') rest.pop_back();
      std::vector<unsigned> coeffs;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) coeffs.push_back(static_cast<unsigned>(parse_uint(item)));
      auto [p, m] = prime_power(q);
      if (!p) throw std::invalid_argument("gf(q) needs a prime power");
      RingDescriptor d;
      d.kind = m == 1 ? RingDescriptor::PrimeField : RingDescriptor::GaloisField;
      d.p = p;
      d.degree = m;
      if (m > 1) d.modulus = coeffs;
      r = construct(d);
    }
  } else if (!args_of("truncpoly").empty()) {
    std::string a = args_of("truncpoly");
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == '(' || a[i] == '[') ++depth;
      if (a[i] == ')' || a[i] == ']') --depth;
      if (a[i] == ',' && depth == 0) split = i;
    }
    if (split == std::string::npos) throw std::invalid_argument("truncpoly(<base>, m) expected");
    std::string tail = a.substr(split + 1);
    // optional variable name: truncpoly(gf(4), t, 2)
    std::string head = a.substr(0, split);
    if (head.size() > 2 && head.substr(head.size() - 2) == ",t") head = head.substr(0, head.size() - 2);
    r = truncpoly(parse(head), static_cast<unsigned>(parse_uint(tail)));
  } else {
    throw std::invalid_argument("unknown ring descriptor '" + raw + "'");
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(s, r);
  return r;
}

std::string Ring::name() const {
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
      return "gf(" + std::to_string(n_) + ")";
    case RingDescriptor::ZMod:
      return "zmod(" + std::to_string(n_) + ")";
    case RingDescriptor::GaloisField: {
      std::string s = "gf(" + std::to_string(n_);
      if (modulus_ != default_modulus(p_, dig_)) {
        s += ",poly=[";
        for (size_t i = 0; i < modulus_.size(); ++i) s += (i ? "," : "") + std::to_string(modulus_[i]);
        s += "]";
      }
      return s + ")";
    }
    case RingDescriptor::TruncPoly:
      return "truncpoly(" + base_->name() + "," + std::to_string(dig_) + ")";
  }
  return "?";
}

RingPtr Ring::residue_field() const {
  if (residue_) return residue_;
  return shared_from_this();
}

Elem Ring::from_int(long long v) const {
  long long m = static_cast<long long>(desc_.kind == RingDescriptor::ZMod ? n_ : p_);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<Elem>(r);
}

Elem Ring::add_raw(Elem x, Elem y) const {
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return static_cast<Elem>((static_cast<uint64_t>(x) + y) % n_);
    case RingDescriptor::GaloisField: {
      if (p_ == 2) return x ^ y;
      Elem out = 0, scale = 1;
      for (unsigned i = 0; i < dig_; ++i) {
        out += static_cast<Elem>(((x % p_) + (y % p_)) % p_) * scale;
        x = static_cast<Elem>(x / p_);
        y = static_cast<Elem>(y / p_);
        scale = static_cast<Elem>(scale * p_);
      }
      return out;
    }
    case RingDescriptor::TruncPoly: {
      Elem out = 0, scale = 1;
      for (unsigned i = 0; i < dig_; ++i) {
        out += base_->add(static_cast<Elem>(x % radix_), static_cast<Elem>(y % radix_)) * scale;
        x = static_cast<Elem>(x / radix_);
        y = static_cast<Elem>(y / radix_);
        scale = static_cast<Elem>(scale * radix_);
      }
      return out;
    }
  }
  return 0;
}

Elem Ring::neg_raw(Elem x) const {
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return static_cast<Elem>((n_ - x) % n_);
    case RingDescriptor::GaloisField: {
      if (p_ == 2) return x;
      Elem out = 0, scale = 1;
      for (unsigned i = 0; i < dig_; ++i) {
        out += static_cast<Elem>((p_ - x % p_) % p_) * scale;
        x = static_cast<Elem>(x / p_);
        scale = static_cast<Elem>(scale * p_);
      }
      return out;
    }
    case RingDescriptor::TruncPoly: {
      Elem out = 0, scale = 1;
      for (unsigned i = 0; i < dig_; ++i) {
        out += base_->neg(static_cast<Elem>(x % radix_)) * scale;
        x = static_cast<Elem>(x / radix_);
        scale = static_cast<Elem>(scale * radix_);
      }
      return out;
    }
  }
  return 0;
}

Elem Ring::mul_raw(Elem x, Elem y) const {
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return static_cast<Elem>(static_cast<uint64_t>(x) * y % n_);
    case RingDescriptor::GaloisField:
      if (dig_ == 1) return static_cast<Elem>(static_cast<uint64_t>(x) * y % n_);
      if (x == 0 || y == 0) return 0;
      return exp_[(static_cast<uint64_t>(log_[x]) + log_[y]) % (n_ - 1)];
    case RingDescriptor::TruncPoly: {
      std::vector<Elem> a = std::vector<Elem>(dig_), b(dig_), c(dig_, 0);
      for (unsigned i = 0; i < dig_; ++i) {
        a[i] = static_cast<Elem>(x % radix_);
        b[i] = static_cast<Elem>(y % radix_);
        x = static_cast<Elem>(x / radix_);
        y = static_cast<Elem>(y / radix_);
      }
      for (unsigned i = 0; i < dig_; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; i + j < dig_; ++j) c[i + j] = base_->add(c[i + j], base_->mul(a[i], b[j]));
      }
      Elem out = 0;
      for (unsigned i = dig_; i-- > 0;) out = static_cast<Elem>(out * radix_ + c[i]);
      return out;
    }
  }
  return 0;
}

Elem Ring::inv_raw(Elem x) const {
  if (!unit_[x]) throw std::domain_error("element is not a unit");
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return static_cast<Elem>(inv_mod(x, n_));
    case RingDescriptor::GaloisField:
      if (dig_ == 1) return static_cast<Elem>(inv_mod(x, n_));
      return exp_[(n_ - 1 - log_[x]) % (n_ - 1)];
    case RingDescriptor::TruncPoly: {
      std::vector<Elem> u(dig_), v(dig_, 0);
      for (unsigned i = 0; i < dig_; ++i) {
        u[i] = static_cast<Elem>(x % radix_);
        x = static_cast<Elem>(x / radix_);
      }
      Elem u0i = base_->inv(u[0]);
      v[0] = u0i;
      for (unsigned j = 1; j < dig_; ++j) {
        Elem s = 0;
        for (unsigned i = 1; i <= j; ++i) s = base_->add(s, base_->mul(u[i], v[j - i]));
        v[j] = base_->neg(base_->mul(u0i, s));
      }
      Elem out = 0;
      for (unsigned i = dig_; i-- > 0;) out = static_cast<Elem>(out * radix_ + v[i]);
      return out;
    }
  }
  return 0;
}

Elem Ring::add(Elem x, Elem y) const { return add_tab_.empty() ? add_raw(x, y) : add_tab_[x * n_ + y]; }
Elem Ring::neg(Elem x) const { return neg_tab_.empty() ? neg_raw(x) : neg_tab_[x]; }
Elem Ring::mul(Elem x, Elem y) const { return mul_tab_.empty() ? mul_raw(x, y) : mul_tab_[x * n_ + y]; }

Elem Ring::inv(Elem x) const {
  if (!unit_[x]) throw std::domain_error("element " + str(x) + " is not a unit in " + name());
  return inv_tab_.empty() ? inv_raw(x) : inv_tab_[x];
}

Elem Ring::pow(Elem x, long long e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Elem Ring::residue(Elem x) const {
  if (is_field()) return x;
  if (desc_.kind == RingDescriptor::ZMod) return static_cast<Elem>(x % p_);
  return static_cast<Elem>(x % radix_);
}

std::vector<unsigned> Ring::coords(Elem x) const {
  std::vector<unsigned> c(dig_);
  for (unsigned i = 0; i < dig_; ++i) {
    c[i] = static_cast<unsigned>(x % radix_);
    x = static_cast<Elem>(x / radix_);
  }
  return c;
}

Elem Ring::from_coords(const std::vector<unsigned>& c) const {
  if (c.size() != dig_) throw std::invalid_argument("coordinate length mismatch");
  Elem out = 0;
  for (unsigned i = dig_; i-- > 0;) {
    if (c[i] >= radix_) throw std::invalid_argument("coordinate out of range");
    out = static_cast<Elem>(out * radix_ + c[i]);
  }
  return out;
}

std::string Ring::str(Elem x) const {
  if (x == 0) return "0";
  switch (desc_.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return std::to_string(x);
    case RingDescriptor::GaloisField: {
      if (dig_ == 1) return std::to_string(x);
      std::string s;
      auto c = coords(x);
      for (unsigned i = dig_; i-- > 0;) {
        if (!c[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
          s += std::to_string(c[i]);
          continue;
        }
        if (c[i] != 1) s += std::to_string(c[i]) + "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
      }
      return s;
    }
    case RingDescriptor::TruncPoly: {
      std::string s;
      auto c = coords(x);
      for (unsigned i = 0; i < dig_; ++i) {
        if (!c[i]) continue;
        if (!s.empty()) s += "+";
        std::string cs = base_->str(c[i]);
        if (i == 0) {
          s += cs;
          continue;
        }
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        if (cs != "1") s += cs + "*";
        s += "t";
        if (i > 1) s += "^" + std::to_string(i);
      }
      return s;
    }
  }
  return "?";
}

Elem Ring::eval(const std::string& expr, const std::map<std::string, Elem>& vars) const {
  return ExprParser(*this, expr, vars).run();
}

Elem Ring::parse_element(const std::string& s) const {
  static const std::map<std::string, Elem> none;
  return eval(s, none);
}

const UnitsGroup& Ring::units_group() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (units_group_) return *units_group_;
  auto ug = std::make_shared<UnitsGroup>();
  size_t nu = units_.size();
  ug->unit_pos.assign(n_, -1);
  for (size_t i = 0; i < nu; ++i) ug->unit_pos[units_[i]] = static_cast<int32_t>(i);

  // Greedy generators, then Schreier relations along a BFS tree.
  std::vector<Elem> gens;
  std::vector<char> in_sub(n_, 0);
  in_sub[one()] = 1;
  std::vector<Elem> sub{one()};
  for (Elem u : units_) {
    if (in_sub[u]) continue;
    gens.push_back(u);
    for (size_t i = 0; i < sub.size(); ++i) {
      for (Elem g : gens) {
        Elem y = mul(sub[i], g);
        if (!in_sub[y]) {
          in_sub[y] = 1;
          sub.push_back(y);
        }
      }
    }
  }
  size_t k = gens.size();
  std::vector<std::vector<long long>> vec(n_);
  std::vector<char> seen(n_, 0);
  std::deque<Elem> queue{one()};
  seen[one()] = 1;
  vec[one()] = std::vector<long long>(k, 0);
  IntMatrix rel(k, 0);
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < k; ++i) {
      Elem y = mul(x, gens[i]);
      std::vector<long long> v = vec[x];
      ++v[i];
      if (!seen[y]) {
        seen[y] = 1;
        vec[y] = v;
        queue.push_back(y);
      } else {
        SparseVec col;
        for (size_t j = 0; j < k; ++j) {
          long long d = v[j] - vec[y][j];
          if (d) col.emplace_back(static_cast<uint32_t>(j), Integer(d));
        }
        if (!col.empty()) rel.append_column(std::move(col));
      }
    }
  }
  Quotient q(rel);
  if (!q.group().is_finite()) throw std::logic_error("unit group relations incomplete");
  size_t r = q.group().torsion.size();
  for (const auto& d : q.group().torsion) ug->factors.push_back(static_cast<uint64_t>(d.to_int64()));
  for (const auto& g : q.generators()) {
    Elem e = one();
    for (size_t j = 0; j < k; ++j) {
      long long c = Integer::mod(g[j], Integer(static_cast<long long>(nu))).to_int64();
      e = mul(e, pow(gens[j], c));
    }
    ug->generators.push_back(e);
  }
  ug->dlog_table.assign(nu * r, 0);
  for (size_t i = 0; i < nu; ++i) {
    IntVector v;
    for (auto c : vec[units_[i]]) v.emplace_back(c);
    IntVector c = q.coordinates(v);
    for (size_t j = 0; j < r; ++j) ug->dlog_table[i * r + j] = static_cast<uint32_t>(c[j].to_int64());
  }
  units_group_ = ug;
  return *units_group_;
}

}  // namespace bf
