#pragma once

// Arithmetic for GF(2^e) and its quadratic extension GF(q^2).
//
// Elements are e-bit coefficient vectors over GF(2); the integer read off
// the bit vector is the canonical encoding (0 = zero, 1 = one).
// Multiplication and inversion go through log/antilog tables built at
// context construction, so a FieldCtx is immutable and cheap to share
// between threads.

#include <array>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace flockherd::gf {

struct FieldElem {
  std::uint16_t v = 0;
  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

inline constexpr FieldElem kZero{0};
inline constexpr FieldElem kOne{1};

namespace detail {

// Default reduction polynomials (Conway polynomials for these degrees),
// encoded with bit i = coefficient of x^i.
inline constexpr std::array<std::uint32_t, 11> kDefaultPoly = {
    0,      // e = 0 unused
    0x3,    // x + 1
    0x7,    // x^2 + x + 1
    0xb,    // x^3 + x + 1
    0x13,   // x^4 + x + 1
    0x25,   // x^5 + x^2 + 1
    0x5b,   // x^6 + x^4 + x^3 + x + 1
    0x83,   // x^7 + x + 1
    0x11d,  // x^8 + x^4 + x^3 + x^2 + 1
    0x211,  // x^9 + x^4 + 1
    0x46f,  // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
};

inline int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

// Remainder of a mod b in GF(2)[x].
inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  int da = poly_degree(a);
  while (da >= db) {
    a ^= b << (da - db);
    da = poly_degree(a);
  }
  return a;
}

inline bool poly_irreducible(std::uint32_t p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  if ((p & 1u) == 0) return d == 1;  // divisible by x unless p == x itself
  for (int dd = 1; 2 * dd <= d; ++dd) {
    for (std::uint64_t q = (1ull << dd) | 1u; q < (2ull << dd); q += 2) {
      if (poly_mod(p, q) == 0) return false;
    }
  }
  return true;
}

}  // namespace detail

// Context for GF(2^e), 1 <= e <= 16.
class FieldCtx {
 public:
  explicit FieldCtx(unsigned degree)
      : FieldCtx(degree, default_poly(degree)) {}

  FieldCtx(unsigned degree, std::uint32_t reduction_poly)
      : e_(degree), poly_(reduction_poly) {
    if (degree < 1 || degree > 16)
      throw std::invalid_argument("field degree must be in [1,16]");
    if (detail::poly_degree(poly_) != static_cast<int>(degree))
      throw std::invalid_argument("reduction polynomial degree mismatch");
    if (!detail::poly_irreducible(poly_))
      throw std::invalid_argument("reduction polynomial is reducible");
    q_ = 1u << e_;
    build_tables();
  }

  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t reduction_poly() const { return poly_; }
  FieldElem generator() const { return gen_; }

  static std::uint32_t default_poly(unsigned degree) {
    if (degree >= 1 && degree < detail::kDefaultPoly.size())
      return detail::kDefaultPoly[degree];
    // No table entry: smallest irreducible of the right degree.
    for (std::uint32_t p = (1u << degree) | 1u; p < (2u << degree); p += 2)
      if (detail::poly_irreducible(p)) return p;
    throw std::invalid_argument("no irreducible polynomial found");
  }

  FieldElem elem(std::uint32_t enc) const {
    if (enc >= q_) throw std::invalid_argument("encoding out of range");
    return FieldElem{static_cast<std::uint16_t>(enc)};
  }

  static FieldElem add(FieldElem a, FieldElem b) {
    return FieldElem{static_cast<std::uint16_t>(a.v ^ b.v)};
  }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.v == 0 || b.v == 0) return kZero;
    return FieldElem{exp_[log_[a.v] + log_[b.v]]};
  }

  FieldElem inv(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("inverse of zero");
    return FieldElem{exp_[q_ - 1 - log_[a.v]]};
  }

  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  FieldElem sq(FieldElem a) const { return FieldElem{sq_[a.v]}; }

  FieldElem sqrt(FieldElem a) const { return FieldElem{sqrt_[a.v]}; }

  FieldElem pow(FieldElem a, std::uint64_t k) const {
    if (a.v == 0) return k == 0 ? kOne : kZero;
    // exponents live mod q-1
    std::uint64_t le = (static_cast<std::uint64_t>(log_[a.v]) * (k % (q_ - 1))) % (q_ - 1);
    return FieldElem{exp_[le]};
  }

  // x -> x^(2^i), 0 <= i < e
  FieldElem frobenius(FieldElem a, unsigned i) const {
    return FieldElem{frob_[static_cast<std::size_t>(i % e_) * q_ + a.v]};
  }

  unsigned abs_trace(FieldElem a) const { return trace_[a.v]; }

  // Smallest-encoded element of absolute trace 1.
  FieldElem trace_one_smallest() const { return trace_one_; }

  static std::string to_hex(FieldElem a) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(a.v));
    return buf;
  }

  FieldElem from_hex(const std::string& s) const {
    return elem(static_cast<std::uint32_t>(std::stoul(s, nullptr, 16)));
  }

 private:
  // multiplication without tables, used only while building them
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    while (b) {
      if (b & 1u) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & q_) a ^= poly_;
    }
    return r;
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint32_t k) const {
    std::uint32_t r = 1;
    while (k) {
      if (k & 1u) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  }

  bool is_primitive(std::uint32_t g) const {
    if (g == 0) return false;
    std::uint32_t n = q_ - 1;
    if (n == 1) return true;
    std::uint32_t m = n;
    for (std::uint32_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      while (m % p == 0) m /= p;
      if (slow_pow(g, n / p) == 1) return false;
    }
    if (m > 1 && slow_pow(g, n / m) == 1) return false;
    return true;
  }

  void build_tables() {
    std::uint32_t g = 2 % q_;  // the class of x; primitive for Conway polys
    while (!is_primitive(g)) ++g;
    gen_ = FieldElem{static_cast<std::uint16_t>(g)};

    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1) + 1, 0);
    std::uint32_t p = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = static_cast<std::uint16_t>(p);
      log_[p] = i;
      p = slow_mul(p, g);
    }
    if (p != 1) throw std::logic_error("generator order mismatch");
    for (std::uint32_t i = q_ - 1; i <= 2 * (q_ - 1); ++i)
      exp_[i] = exp_[i - (q_ - 1)];

    sq_.assign(q_, 0);
    sqrt_.assign(q_, 0);
    trace_.assign(q_, 0);
    for (std::uint32_t x = 0; x < q_; ++x) {
      std::uint32_t s = slow_mul(x, x);
      sq_[x] = static_cast<std::uint16_t>(s);
      sqrt_[s] = static_cast<std::uint16_t>(x);
      std::uint32_t t = 0, y = x;
      for (unsigned i = 0; i < e_; ++i) {
        t ^= y;
        y = slow_mul(y, y);
      }
      if (t > 1) throw std::logic_error("trace not in GF(2)");
      trace_[x] = static_cast<std::uint8_t>(t);
    }
    trace_one_ = kZero;
    for (std::uint32_t x = 0; x < q_; ++x) {
      if (trace_[x] == 1) {
        trace_one_ = FieldElem{static_cast<std::uint16_t>(x)};
        break;
      }
    }

    frob_.assign(static_cast<std::size_t>(e_) * q_, 0);
    for (std::uint32_t x = 0; x < q_; ++x) frob_[x] = static_cast<std::uint16_t>(x);
    for (unsigned i = 1; i < e_; ++i)
      for (std::uint32_t x = 0; x < q_; ++x)
        frob_[static_cast<std::size_t>(i) * q_ + x] =
            sq_[frob_[static_cast<std::size_t>(i - 1) * q_ + x]];
  }

  unsigned e_;
  std::uint32_t poly_;
  std::uint32_t q_;
  FieldElem gen_;
  FieldElem trace_one_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> exp_;
  std::vector<std::uint16_t> sq_;
  std::vector<std::uint16_t> sqrt_;
  std::vector<std::uint8_t> trace_;
};

// u + v*w where w is a root of x^2 + x + c, irreducible over GF(q).
struct ExtFieldElem {
  FieldElem u, v;
  friend constexpr bool operator==(ExtFieldElem, ExtFieldElem) = default;
};

// Quadratic extension GF(q^2) of a base field.
class ExtFieldCtx {
 public:
  explicit ExtFieldCtx(const FieldCtx& base) : base_(&base) {
    // smallest c such that x^2 + x + c has no root in GF(q)
    for (std::uint32_t cv = 0; cv < base.order(); ++cv) {
      FieldElem c{static_cast<std::uint16_t>(cv)};
      bool has_root = false;
      for (std::uint32_t x = 0; x < base.order(); ++x) {
        FieldElem fx{static_cast<std::uint16_t>(x)};
        if (FieldCtx::add(base.sq(fx), FieldCtx::add(fx, c)) == kZero) {
          has_root = true;
          break;
        }
      }
      if (!has_root) {
        c_ = c;
        return;
      }
    }
    throw std::logic_error("no irreducible x^2+x+c over base field");
  }

  const FieldCtx& base() const { return *base_; }
  FieldElem min_poly_constant() const { return c_; }
  std::uint64_t order() const {
    return static_cast<std::uint64_t>(base_->order()) * base_->order();
  }

  ExtFieldElem from_base(FieldElem u) const { return {u, kZero}; }
  ExtFieldElem omega() const { return {kZero, kOne}; }
  bool is_base(ExtFieldElem x) const { return x.v == kZero; }

  // encoding = u + q*v, used for deterministic parameter scans
  std::uint32_t encode(ExtFieldElem x) const {
    return x.u.v + base_->order() * x.v.v;
  }
  ExtFieldElem decode(std::uint32_t enc) const {
    return {base_->elem(enc % base_->order()), base_->elem(enc / base_->order())};
  }

  static ExtFieldElem add(ExtFieldElem a, ExtFieldElem b) {
    return {FieldCtx::add(a.u, b.u), FieldCtx::add(a.v, b.v)};
  }

  ExtFieldElem mul(ExtFieldElem a, ExtFieldElem b) const {
    const FieldCtx& F = *base_;
    // (u1 + v1 w)(u2 + v2 w), w^2 = w + c
    FieldElem uu = F.mul(a.u, b.u);
    FieldElem vv = F.mul(a.v, b.v);
    FieldElem cross = FieldCtx::add(F.mul(a.u, b.v), F.mul(a.v, b.u));
    return {FieldCtx::add(uu, F.mul(c_, vv)), FieldCtx::add(cross, vv)};
  }

  ExtFieldElem sq(ExtFieldElem a) const { return mul(a, a); }

  // conjugate over GF(q): x -> x^q  (w -> w + 1)
  ExtFieldElem conj(ExtFieldElem a) const {
    return {FieldCtx::add(a.u, a.v), a.v};
  }

  FieldElem norm(ExtFieldElem a) const {
    ExtFieldElem n = mul(a, conj(a));
    if (n.v != kZero) throw std::logic_error("norm not in base field");
    return n.u;
  }

  ExtFieldElem inv(ExtFieldElem a) const {
    if (a.u == kZero && a.v == kZero) throw std::domain_error("inverse of zero");
    FieldElem ninv = base_->inv(norm(a));
    ExtFieldElem cj = conj(a);
    return {base_->mul(cj.u, ninv), base_->mul(cj.v, ninv)};
  }

  ExtFieldElem pow(ExtFieldElem a, std::uint64_t k) const {
    ExtFieldElem r = from_base(kOne);
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  // T(x) = x + x^q, always lies in the base field
  FieldElem rel_trace(ExtFieldElem a) const {
    ExtFieldElem t = add(a, conj(a));
    if (t.v != kZero) throw std::logic_error("relative trace not in base field");
    return t.u;
  }

 private:
  const FieldCtx* base_;
  FieldElem c_;
};

}  // namespace flockherd::gf
