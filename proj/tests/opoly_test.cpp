#include "flockherd/opoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flockherd::gf;
using namespace flockherd::opoly;

namespace {

OPoly monomial(const FieldCtx& F, unsigned d, FieldElem c = kOne) {
  OPoly f(F.order());
  f.coeffs[d] = c;
  return f;
}

EvalTable table_of(const FieldCtx& F, unsigned d, FieldElem c = kOne) {
  return tabulate(F, monomial(F, d, c));
}

// Textbook Lagrange interpolation: sum of y_j * prod_{k!=j} (x-x_k)/(x_j-x_k),
// built by explicit polynomial multiplication.  Test oracle only; O(q^3).
std::vector<FieldElem> lagrange_oracle(const FieldCtx& F, const EvalTable& t) {
  const std::uint32_t q = F.order();
  std::vector<FieldElem> acc(q + 1, kZero);
  for (std::uint32_t j = 0; j < q; ++j) {
    if (t[j] == kZero) continue;
    std::vector<FieldElem> basis = {kOne};
    FieldElem denom = kOne;
    for (std::uint32_t k = 0; k < q; ++k) {
      if (k == j) continue;
      // basis *= (x + x_k)
      std::vector<FieldElem> next(basis.size() + 1, kZero);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] = FieldCtx::add(next[i + 1], basis[i]);
        next[i] = FieldCtx::add(next[i], F.mul(basis[i], F.elem(k)));
      }
      basis = next;
      denom = F.mul(denom, FieldCtx::add(F.elem(j), F.elem(k)));
    }
    const FieldElem scale = F.mul(t[j], F.inv(denom));
    for (std::size_t i = 0; i < basis.size(); ++i)
      acc[i] = FieldCtx::add(acc[i], F.mul(basis[i], scale));
  }
  return acc;
}

EvalTable random_table(const FieldCtx& F, std::mt19937_64& rng) {
  EvalTable t(F.order());
  for (std::uint32_t x = 1; x < F.order(); ++x)
    t[x] = F.elem(static_cast<std::uint32_t>(rng() % F.order()));
  return t;
}

EvalTable random_perm_table(const FieldCtx& F, std::mt19937_64& rng) {
  std::vector<std::uint32_t> vals(F.order() - 1);
  for (std::uint32_t i = 0; i < F.order() - 1; ++i) vals[i] = i + 1;
  std::shuffle(vals.begin(), vals.end(), rng);
  EvalTable t(F.order());
  for (std::uint32_t x = 1; x < F.order(); ++x) t[x] = F.elem(vals[x - 1]);
  return t;
}

}  // namespace

TEST(Evaluate, Monomials) {
  FieldCtx F(3);
  EXPECT_EQ(evaluate(F, monomial(F, 2), kZero), kZero);
  EXPECT_EQ(evaluate(F, monomial(F, F.order() / 2), kOne), kOne);
  for (std::uint32_t x = 0; x < 8; ++x)
    EXPECT_EQ(evaluate(F, monomial(F, 2), F.elem(x)), F.sq(F.elem(x)));
}

TEST(Interpolate, Monomials) {
  FieldCtx F(3);
  EXPECT_EQ(interpolate(F, table_of(F, 2)), monomial(F, 2));
  EXPECT_EQ(interpolate(F, table_of(F, 1)), monomial(F, 1));
}

TEST(Interpolate, RejectsNonzeroOrigin) {
  FieldCtx F(2);
  EvalTable t(4);
  t[0] = kOne;
  EXPECT_THROW(interpolate(F, t), std::invalid_argument);
}

TEST(Interpolate, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (unsigned e : {3u, 4u}) {
    FieldCtx F(e);
    for (int it = 0; it < 20; ++it) {
      EvalTable t = random_table(F, rng);
      OPoly f = interpolate(F, t);
      EXPECT_EQ(tabulate(F, f), t);
    }
  }
}

TEST(Interpolate, MatchesLagrangeOracle) {
  std::mt19937_64 rng(11);
  for (unsigned e : {3u, 4u}) {
    FieldCtx F(e);
    for (int it = 0; it < 10; ++it) {
      EvalTable t = random_table(F, rng);
      OPoly f = interpolate(F, t);
      auto oracle = lagrange_oracle(F, t);
      EXPECT_EQ(oracle[0], kZero);  // f(0) = 0 forces zero constant term
      for (std::uint32_t d = 1; d < F.order(); ++d)
        EXPECT_EQ(f.coeffs[d], oracle[d]) << "degree " << d;
      EXPECT_EQ(oracle[F.order()], kZero);
    }
  }
}

TEST(IsPermutation, Examples) {
  FieldCtx F4(2), F8(3);
  EXPECT_TRUE(is_permutation(F4, table_of(F4, 2)));
  EXPECT_TRUE(is_permutation(F8, table_of(F8, F8.order() / 2)));
  // t + t^2 kills 0 and 1 over GF(4)
  OPoly f(4);
  f.coeffs[1] = kOne;
  f.coeffs[2] = kOne;
  EXPECT_FALSE(is_permutation(F4, tabulate(F4, f)));
}

TEST(IsOPermutation, Examples) {
  for (unsigned e : {2u, 3u, 4u}) {
    FieldCtx F(e);
    EXPECT_TRUE(is_opermutation(F, table_of(F, 2)));
    EXPECT_FALSE(is_opermutation(F, table_of(F, 1)));
  }
  // translation o-permutations t^(2^k), gcd(k, e) = 1
  FieldCtx F8(3);
  EXPECT_TRUE(is_opermutation(F8, table_of(F8, 4)));
  FieldCtx F16(4);
  EXPECT_TRUE(is_opermutation(F16, table_of(F16, 8)));
}

TEST(IsOPermutation, ScalarClosure) {
  FieldCtx F(3);
  for (std::uint32_t c = 1; c < 8; ++c) {
    EXPECT_TRUE(is_opermutation(F, table_of(F, 2, F.elem(c))));
    EXPECT_FALSE(is_opermutation(F, table_of(F, 1, F.elem(c))));
  }
}

TEST(ToOPolynomial, Examples) {
  FieldCtx F(3);
  OPoly f = monomial(F, 2);
  EXPECT_EQ(to_opolynomial(F, f), f);
  for (std::uint32_t c = 2; c < 8; ++c)
    EXPECT_EQ(to_opolynomial(F, monomial(F, 2, F.elem(c))), f);
  EXPECT_THROW(to_opolynomial(F, OPoly(8)), std::invalid_argument);
}

TEST(ToOPolynomial, ScalarMultiplesAreTheOPermutationsOfTheClass) {
  // <f> contains exactly q-1 o-permutations: the nonzero scalar multiples.
  FieldCtx F(3);
  int count = 0;
  for (std::uint32_t c = 1; c < 8; ++c)
    if (is_opermutation(F, table_of(F, 2, F.elem(c)))) ++count;
  EXPECT_EQ(count, 7);
}

TEST(Packing, RecordSizes) {
  EXPECT_EQ(packed_record_size(FieldCtx(2)), 1u);
  EXPECT_EQ(packed_record_size(FieldCtx(3)), 2u);
  EXPECT_EQ(packed_record_size(FieldCtx(4)), 4u);
  EXPECT_EQ(packed_record_size(FieldCtx(5)), 10u);
  EXPECT_EQ(packed_record_size(FieldCtx(6)), 24u);
}

TEST(Packing, RoundTrip) {
  std::mt19937_64 rng(3);
  FieldCtx F(4);
  for (int it = 0; it < 50; ++it) {
    OPoly f(F.order());
    for (std::uint32_t d = 2; d <= F.order() - 2; d += 2)
      f.coeffs[d] = F.elem(static_cast<std::uint32_t>(rng() % F.order()));
    std::vector<std::uint8_t> rec(packed_record_size(F));
    pack_even_coeffs(F, f, rec.data());
    EXPECT_EQ(unpack_even_coeffs(F, rec.data()), f);
  }
}

TEST(Packing, PackerMatchesInterpolatePath) {
  std::mt19937_64 rng(5);
  FieldCtx F(3);
  Packer packer(F);
  // conic class: t -> c t^2 canonicalizes to t^2
  for (std::uint32_t c = 1; c < 8; ++c) {
    packer.pack_canonical(table_of(F, 2, F.elem(c)));
    std::vector<std::uint8_t> expect(packed_record_size(F));
    pack_even_coeffs(F, monomial(F, 2), expect.data());
    EXPECT_EQ(packer.record, expect);
  }
  // random permutation tables: packer must agree with scale+interpolate+pack
  // whenever odd coefficients vanish, and throw otherwise
  for (int it = 0; it < 200; ++it) {
    EvalTable t = random_perm_table(F, rng);
    OPoly f = interpolate(F, scale_to_opolynomial(F, t));
    if (odd_coeffs_vanish(f)) {
      packer.pack_canonical(t);
      std::vector<std::uint8_t> expect(packed_record_size(F));
      pack_even_coeffs(F, f, expect.data());
      EXPECT_EQ(packer.record, expect);
    } else {
      EXPECT_THROW(packer.pack_canonical(t), std::logic_error);
    }
  }
}

TEST(Text, RoundTrip) {
  std::mt19937_64 rng(9);
  FieldCtx F(4);
  for (int it = 0; it < 10; ++it) {
    OPoly f = interpolate(F, random_table(F, rng));
    EXPECT_EQ(from_text(F, to_text(F, f)), f);
  }
}
