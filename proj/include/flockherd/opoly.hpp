#pragma once

// O-permutations and o-polynomials.
//
// The search pipeline works on evaluation tables (O(1) lookups, one slot per
// field element) and converts to coefficient vectors only at storage and
// deduplication boundaries.  Certified o-polynomials over GF(q), q > 2, have
// zero coefficients in all odd degrees, so a packed record keeps only the
// q/2 - 1 even-degree coefficients (degrees 2, 4, ..., q-2), e bits each,
// LSB-first within the byte stream.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockherd/gf2e.hpp"

namespace flockherd::opoly {

using gf::FieldCtx;
using gf::FieldElem;
using gf::kOne;
using gf::kZero;

// values[t] = f(t), indexed by integer encoding; values[0] must be 0.
struct EvalTable {
  std::vector<FieldElem> values;

  EvalTable() = default;
  explicit EvalTable(std::size_t q) : values(q) {}

  FieldElem& operator[](std::size_t i) { return values[i]; }
  FieldElem operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
  friend bool operator==(const EvalTable&, const EvalTable&) = default;
};

// Coefficients for degrees 1..q-1; coeffs[d] is the degree-d coefficient
// (index 0 is kept but always zero: f(0) = 0 by construction).
struct OPoly {
  std::vector<FieldElem> coeffs;

  OPoly() = default;
  explicit OPoly(std::size_t q) : coeffs(q) {}

  std::size_t field_order() const { return coeffs.size(); }
  friend bool operator==(const OPoly&, const OPoly&) = default;

  int degree() const {
    for (int d = static_cast<int>(coeffs.size()) - 1; d >= 1; --d)
      if (coeffs[d] != kZero) return d;
    return 0;
  }
};

inline FieldElem evaluate(const FieldCtx& F, const OPoly& f, FieldElem t) {
  const std::size_t q = f.field_order();
  FieldElem acc = kZero;
  for (std::size_t d = q - 1; d >= 1; --d) {
    acc = FieldCtx::add(F.mul(acc, t), f.coeffs[d]);
  }
  return F.mul(acc, t);
}

inline EvalTable tabulate(const FieldCtx& F, const OPoly& f) {
  EvalTable t(F.order());
  for (std::uint32_t x = 0; x < F.order(); ++x)
    t[x] = evaluate(F, f, F.elem(x));
  return t;
}

// Unique polynomial of degree <= q-1 with zero constant term matching the
// table: c_i = sum_{x != 0} f(x) x^{-i}.  (Powers of x sum to zero over the
// multiplicative group except when the exponent is divisible by q-1.)
inline OPoly interpolate(const FieldCtx& F, const EvalTable& table) {
  const std::uint32_t q = F.order();
  if (table.size() != q) throw std::invalid_argument("table size mismatch");
  if (table[0] != kZero) throw std::invalid_argument("table[0] must be 0");
  OPoly f(q);
  for (std::uint32_t x = 1; x < q; ++x) {
    const FieldElem v = table[x];
    if (v == kZero) continue;
    const FieldElem w = F.inv(F.elem(x));
    FieldElem p = kOne;
    for (std::uint32_t i = 1; i < q; ++i) {
      p = F.mul(p, w);
      f.coeffs[i] = FieldCtx::add(f.coeffs[i], F.mul(v, p));
    }
  }
  return f;
}

inline bool is_permutation(const FieldCtx& F, const EvalTable& t) {
  const std::uint32_t q = F.order();
  if (q <= 64) {
    std::uint64_t seen = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
      const std::uint64_t bit = 1ull << t[x].v;
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  }
  std::vector<std::uint64_t> seen((q + 63) / 64);
  for (std::uint32_t x = 0; x < q; ++x) {
    const std::uint32_t v = t[x].v;
    std::uint64_t& word = seen[v >> 6];
    const std::uint64_t bit = 1ull << (v & 63);
    if (word & bit) return false;
    word |= bit;
  }
  return true;
}

// f is an o-permutation iff f is a permutation and, for every s, the
// difference quotient x -> (f(x+s)+f(s))/x (0 at 0) is a permutation.
// This is the innermost predicate of the search; exits on the first
// collision.
inline bool is_opermutation(const FieldCtx& F, const EvalTable& t) {
  const std::uint32_t q = F.order();
  if (t[0] != kZero) throw std::invalid_argument("table[0] must be 0");
  if (!is_permutation(F, t)) return false;
  if (q <= 64) {
    for (std::uint32_t s = 0; s < q; ++s) {
      std::uint64_t seen = 1;  // quotient value at x = 0
      const FieldElem fs = t[s];
      for (std::uint32_t x = 1; x < q; ++x) {
        const FieldElem num = FieldCtx::add(t[x ^ s], fs);
        const std::uint64_t bit = 1ull << F.mul(num, F.inv(F.elem(x))).v;
        if (seen & bit) return false;
        seen |= bit;
      }
    }
    return true;
  }
  std::vector<std::uint64_t> seen((q + 63) / 64);
  for (std::uint32_t s = 0; s < q; ++s) {
    for (auto& w : seen) w = 0;
    seen[0] = 1;
    const FieldElem fs = t[s];
    for (std::uint32_t x = 1; x < q; ++x) {
      const FieldElem num = FieldCtx::add(t[x ^ s], fs);
      const std::uint32_t v = F.mul(num, F.inv(F.elem(x))).v;
      std::uint64_t& word = seen[v >> 6];
      const std::uint64_t bit = 1ull << (v & 63);
      if (word & bit) return false;
      word |= bit;
    }
  }
  return true;
}

inline bool is_opermutation(const FieldCtx& F, const OPoly& f) {
  return is_opermutation(F, tabulate(F, f));
}

// (1/f(1)) f : the unique o-polynomial in <f>.
inline EvalTable scale_to_opolynomial(const FieldCtx& F, const EvalTable& t) {
  if (t[1] == kZero)
    throw std::invalid_argument("f(1) = 0: not an o-permutation");
  const FieldElem c = F.inv(t[1]);
  EvalTable r(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) r[x] = F.mul(t[x], c);
  return r;
}

inline OPoly to_opolynomial(const FieldCtx& F, const OPoly& f) {
  const FieldElem f1 = evaluate(F, f, kOne);
  if (f1 == kZero)
    throw std::invalid_argument("f(1) = 0: not an o-permutation");
  const FieldElem c = F.inv(f1);
  OPoly r(f.field_order());
  for (std::size_t d = 1; d < f.coeffs.size(); ++d)
    r.coeffs[d] = F.mul(f.coeffs[d], c);
  return r;
}

inline bool odd_coeffs_vanish(const OPoly& f) {
  for (std::size_t d = 1; d < f.coeffs.size(); d += 2)
    if (f.coeffs[d] != kZero) return false;
  return true;
}

// ---- packed even-coefficient records ----

inline std::size_t packed_record_size(const FieldCtx& F) {
  if (F.order() < 4) throw std::invalid_argument("packing requires q >= 4");
  const std::size_t bits = (F.order() / 2 - 1) * F.degree();
  return (bits + 7) / 8;
}

inline void pack_even_coeffs(const FieldCtx& F, const OPoly& f,
                             std::uint8_t* out) {
  const std::uint32_t q = F.order();
  const unsigned e = F.degree();
  const std::size_t n = packed_record_size(F);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0;
  std::size_t bit = 0;
  for (std::uint32_t d = 2; d <= q - 2; d += 2) {
    const std::uint32_t v = f.coeffs[d].v;
    for (unsigned j = 0; j < e; ++j, ++bit)
      if (v >> j & 1u) out[bit >> 3] |= static_cast<std::uint8_t>(1u << (bit & 7));
  }
}

inline OPoly unpack_even_coeffs(const FieldCtx& F, const std::uint8_t* in) {
  const std::uint32_t q = F.order();
  const unsigned e = F.degree();
  OPoly f(q);
  std::size_t bit = 0;
  for (std::uint32_t d = 2; d <= q - 2; d += 2) {
    std::uint32_t v = 0;
    for (unsigned j = 0; j < e; ++j, ++bit)
      if (in[bit >> 3] >> (bit & 7) & 1u) v |= 1u << j;
    f.coeffs[d] = F.elem(v);
  }
  return f;
}

// Canonicalize a certified o-permutation table into a packed record:
// scale to f(1) = 1, interpolate, require odd coefficients to vanish.
// A nonzero odd coefficient on a certified input is a hard error.
struct Packer {
  explicit Packer(const FieldCtx& F)
      : F_(F), q_(F.order()), record(packed_record_size(F)) {
    if (q_ > 2048)
      throw std::invalid_argument("packer table limited to q <= 2048");
    // inv_pow_[x*q + i] = x^{-i}; interpolation becomes a dense dot product
    // per coefficient.
    inv_pow_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t x = 1; x < q_; ++x) {
      const FieldElem w = F.inv(F.elem(x));
      FieldElem p = kOne;
      for (std::uint32_t i = 0; i < q_; ++i) {
        inv_pow_[static_cast<std::size_t>(x) * q_ + i] = p;
        p = F.mul(p, w);
      }
    }
  }

  // Scale the certified table to f(1) = 1, interpolate, pack the even
  // coefficients into `record`.  A nonzero odd-degree coefficient on a
  // certified o-permutation is a hard error.
  void pack_canonical(const EvalTable& t) {
    if (t[1] == kZero) throw std::domain_error("f(1) = 0: cannot canonicalize");
    const FieldElem c = F_.inv(t[1]);
    for (std::size_t i = 0; i < record.size(); ++i) record[i] = 0;
    std::size_t bit = 0;
    for (std::uint32_t d = 1; d < q_; ++d) {
      FieldElem cd = kZero;
      const FieldElem* pw = inv_pow_.data() + d;
      for (std::uint32_t x = 1; x < q_; ++x) {
        const FieldElem v = t[x];
        if (v != kZero) cd = FieldCtx::add(cd, F_.mul(v, pw[static_cast<std::size_t>(x) * q_]));
      }
      cd = F_.mul(cd, c);
      if (d & 1u) {
        if (cd != kZero)
          throw std::logic_error(
              "certified o-permutation has a nonzero odd-degree coefficient");
      } else if (d <= q_ - 2) {
        for (unsigned j = 0; j < F_.degree(); ++j, ++bit)
          if (cd.v >> j & 1u)
            record[bit >> 3] |= static_cast<std::uint8_t>(1u << (bit & 7));
      }
    }
  }

  const FieldCtx& F_;
  std::uint32_t q_;
  std::vector<FieldElem> inv_pow_;
  std::vector<std::uint8_t> record;
};

// ---- text serialization ----

inline std::string to_text(const FieldCtx& F, const OPoly& f) {
  std::string s;
  for (std::size_t d = 1; d < f.coeffs.size(); ++d) {
    if (d > 1) s += ',';
    s += FieldCtx::to_hex(f.coeffs[d]);
  }
  return s;
}

inline OPoly from_text(const FieldCtx& F, const std::string& s) {
  OPoly f(F.order());
  std::size_t pos = 0, d = 1;
  while (pos <= s.size() && d < F.order()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    f.coeffs[d++] = F.from_hex(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (d != F.order()) throw std::invalid_argument("coefficient count mismatch");
  return f;
}

}  // namespace flockherd::opoly
