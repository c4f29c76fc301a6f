#include "flockherd/gf2e.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace flockherd::gf;

TEST(FieldCtx, RejectsReduciblePoly) {
  // x^4 + 1 = (x+1)^4
  EXPECT_THROW(FieldCtx(4, 0x11), std::invalid_argument);
  // degree mismatch
  EXPECT_THROW(FieldCtx(3, 0x13), std::invalid_argument);
}

TEST(FieldCtx, DefaultPolysIrreducible) {
  for (unsigned e = 1; e <= 12; ++e) {
    FieldCtx F(e);
    EXPECT_EQ(F.order(), 1u << e);
  }
}

TEST(Arith, CharacteristicTwo) {
  FieldCtx F(6);
  for (std::uint32_t x = 0; x < F.order(); ++x) {
    FieldElem a = F.elem(x);
    EXPECT_EQ(FieldCtx::add(a, a), kZero);
    EXPECT_EQ(F.mul(kOne, a), a);
  }
}

TEST(Arith, GF4DefiningRelation) {
  FieldCtx F(2);  // x^2 = x + 1
  FieldElem w = F.elem(2);
  EXPECT_EQ(F.mul(w, w), F.elem(3));
}

TEST(Arith, InverseOfZeroThrows) {
  FieldCtx F(3);
  EXPECT_THROW(F.inv(kZero), std::domain_error);
}

TEST(Arith, FieldLawsExhaustiveSmall) {
  for (unsigned e : {2u, 3u}) {
    FieldCtx F(e);
    const std::uint32_t q = F.order();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) {
          FieldElem x = F.elem(a), y = F.elem(b), z = F.elem(c);
          EXPECT_EQ(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)));
          EXPECT_EQ(F.mul(x, FieldCtx::add(y, z)),
                    FieldCtx::add(F.mul(x, y), F.mul(x, z)));
        }
    for (std::uint32_t a = 1; a < q; ++a) {
      FieldElem x = F.elem(a);
      EXPECT_EQ(F.mul(x, F.inv(x)), kOne);
    }
  }
}

TEST(Arith, MulAssociativeGF64) {
  FieldCtx F(6);
  for (std::uint32_t a = 1; a < 64; a += 3)
    for (std::uint32_t b = 0; b < 64; ++b)
      for (std::uint32_t c = 0; c < 64; ++c)
        EXPECT_EQ(F.mul(F.mul(F.elem(a), F.elem(b)), F.elem(c)),
                  F.mul(F.elem(a), F.mul(F.elem(b), F.elem(c))));
}

TEST(Arith, PowMatchesRepeatedMul) {
  FieldCtx F(5);
  for (std::uint32_t a = 0; a < F.order(); ++a) {
    FieldElem acc = kOne;
    for (unsigned k = 0; k < 40; ++k) {
      EXPECT_EQ(F.pow(F.elem(a), k), (a == 0 && k == 0) ? kOne : acc);
      if (a == 0 && k == 0) acc = kZero;
      acc = F.mul(acc, F.elem(a));
    }
  }
}

TEST(Trace, Examples) {
  FieldCtx F4(2), F64(6);
  EXPECT_EQ(F4.abs_trace(kZero), 0u);
  EXPECT_EQ(F64.abs_trace(kOne), 0u);  // e = 6 copies of 1 cancel
  EXPECT_EQ(F4.abs_trace(F4.elem(2)), 1u);
}

TEST(Trace, InvariantUnderSquaring) {
  for (unsigned e : {2u, 3u, 4u, 5u, 6u}) {
    FieldCtx F(e);
    for (std::uint32_t x = 0; x < F.order(); ++x)
      EXPECT_EQ(F.abs_trace(F.elem(x)), F.abs_trace(F.sq(F.elem(x))));
  }
}

TEST(Trace, ArtinSchreierKernel) {
  // Tr(x + x^2) = 0, and every trace-0 element is a + a^2 for exactly two a.
  for (unsigned e : {2u, 3u, 4u, 5u, 6u}) {
    FieldCtx F(e);
    std::vector<int> hits(F.order(), 0);
    for (std::uint32_t a = 0; a < F.order(); ++a) {
      FieldElem im = FieldCtx::add(F.elem(a), F.sq(F.elem(a)));
      EXPECT_EQ(F.abs_trace(im), 0u);
      hits[im.v]++;
    }
    for (std::uint32_t x = 0; x < F.order(); ++x)
      EXPECT_EQ(hits[x], F.abs_trace(F.elem(x)) == 0 ? 2 : 0);
  }
}

TEST(Trace, TraceOneSmallest) {
  FieldCtx F4(2);
  EXPECT_EQ(F4.trace_one_smallest(), F4.elem(2));
  FieldCtx F64(6);
  int count = 0;
  for (std::uint32_t x = 0; x < 64; ++x)
    if (F64.abs_trace(F64.elem(x)) == 1) ++count;
  EXPECT_EQ(count, 32);
  EXPECT_EQ(F64.abs_trace(F64.trace_one_smallest()), 1u);
  for (std::uint32_t x = 0; x < F64.trace_one_smallest().v; ++x)
    EXPECT_EQ(F64.abs_trace(F64.elem(x)), 0u);
}

TEST(Sqrt, Examples) {
  FieldCtx F4(2);
  EXPECT_EQ(F4.sqrt(kZero), kZero);
  EXPECT_EQ(F4.sqrt(kOne), kOne);
  EXPECT_EQ(F4.sqrt(F4.elem(2)), F4.elem(3));  // (w^2)^2 = w^4 = w

  FieldCtx F64(6);
  for (std::uint32_t x = 0; x < 64; ++x) {
    FieldElem s = F64.sqrt(F64.elem(x));
    EXPECT_EQ(F64.mul(s, s), F64.elem(x));
  }
}

TEST(Sqrt, IsAutomorphism) {
  for (unsigned e : {3u, 6u}) {
    FieldCtx F(e);
    for (std::uint32_t a = 0; a < F.order(); ++a)
      for (std::uint32_t b = 0; b < F.order(); ++b) {
        FieldElem x = F.elem(a), y = F.elem(b);
        EXPECT_EQ(F.sqrt(F.mul(x, y)), F.mul(F.sqrt(x), F.sqrt(y)));
        EXPECT_EQ(F.sqrt(FieldCtx::add(x, y)),
                  FieldCtx::add(F.sqrt(x), F.sqrt(y)));
      }
  }
}

TEST(Frobenius, Examples) {
  FieldCtx F(6);
  for (std::uint32_t x = 0; x < 64; ++x) {
    FieldElem a = F.elem(x);
    EXPECT_EQ(F.frobenius(a, 0), a);
    EXPECT_EQ(F.frobenius(F.frobenius(a, 1), 5), a);
    EXPECT_EQ(F.frobenius(a, 5), F.sqrt(a));  // 2^5 = q/2
  }
}

TEST(ExtField, ConstructionAndBaseEmbedding) {
  FieldCtx F(6);
  ExtFieldCtx E(F);
  EXPECT_EQ(F.abs_trace(E.min_poly_constant()), 1u);
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = 0; b < 16; ++b) {
      ExtFieldElem x = E.from_base(F.elem(a)), y = E.from_base(F.elem(b));
      EXPECT_EQ(E.mul(x, y), E.from_base(F.mul(F.elem(a), F.elem(b))));
      EXPECT_EQ(ExtFieldCtx::add(x, y),
                E.from_base(FieldCtx::add(F.elem(a), F.elem(b))));
    }
}

TEST(ExtField, InverseAndPow) {
  FieldCtx F(4);
  ExtFieldCtx E(F);
  for (std::uint32_t enc = 1; enc < E.order(); ++enc) {
    ExtFieldElem x = E.decode(enc);
    ExtFieldElem xi = E.inv(x);
    EXPECT_EQ(E.mul(x, xi), E.from_base(kOne));
    // multiplicative order divides q^2 - 1
    EXPECT_EQ(E.pow(x, E.order() - 1), E.from_base(kOne));
  }
}

TEST(ExtField, RelTrace) {
  FieldCtx F(4);
  ExtFieldCtx E(F);
  for (std::uint32_t a = 0; a < F.order(); ++a)
    EXPECT_EQ(E.rel_trace(E.from_base(F.elem(a))), kZero);
  ExtFieldElem w = E.omega();
  EXPECT_EQ(FieldCtx::add(E.rel_trace(w), E.rel_trace(E.conj(w))), kZero);
}

TEST(ExtField, UnitCircleTraceNonzero) {
  // For every beta != 1 with beta^(q+1) = 1, T(beta) != 0: the order-(q+1)
  // subgroup meets the trace-zero kernel only at 1.  Exhaustive scan.
  for (unsigned e : {2u, 4u, 6u}) {
    FieldCtx F(e);
    ExtFieldCtx E(F);
    const std::uint64_t q = F.order();
    int count = 0;
    for (std::uint64_t enc = 0; enc < E.order(); ++enc) {
      ExtFieldElem b = E.decode(static_cast<std::uint32_t>(enc));
      if (b == E.from_base(kZero)) continue;
      if (E.pow(b, q + 1) != E.from_base(kOne)) continue;
      ++count;
      if (b == E.from_base(kOne)) continue;
      EXPECT_NE(E.rel_trace(b), kZero) << "enc=" << enc;
    }
    EXPECT_EQ(count, static_cast<int>(q + 1));
  }
}

TEST(Serialize, HexRoundTrip) {
  FieldCtx F(6);
  for (std::uint32_t x = 0; x < 64; ++x) {
    FieldElem a = F.elem(x);
    EXPECT_EQ(F.from_hex(FieldCtx::to_hex(a)), a);
  }
}
