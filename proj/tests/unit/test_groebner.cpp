#include <gtest/gtest.h>

#include <random>

#include "mldforge/errors.hpp"
#include "mldforge/groebner.hpp"

using namespace mldforge;

namespace {

const fp_t kP = default_primes(1, 1)[0];

FpPoly mono(std::initializer_list<std::uint16_t> vars, fp_t c = 1) {
  FpPoly f;
  f.add_term(FpMono(vars), c, kP);
  return f;
}

FpPoly sum(std::initializer_list<FpPoly> parts) {
  FpPoly f;
  for (const auto& g : parts) f.add(g, kP);
  return f;
}

// Brute-force dimension of a monomial ideal: the largest coordinate subspace
// avoided by every monomial.
long coordinate_dim(const std::vector<std::vector<std::uint16_t>>& monos, std::size_t n) {
  long best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& m : monos) {
      bool inside = std::all_of(m.begin(), m.end(), [&](std::uint16_t v) { return (mask >> v) & 1; });
      if (inside) ok = false;
    }
    if (ok) best = std::max<long>(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST(Primes, Defaults) {
  auto ps = default_primes(1, 2);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_GT(ps[0], kPrimeFloor);
  EXPECT_LT(ps[0], ps[1]);
  auto p12 = default_primes(12, 3);
  for (auto p : p12) {
    EXPECT_TRUE(is_prime_u32(p));
    EXPECT_EQ((p - 1) % 12, 0u);
  }
  EXPECT_TRUE(is_prime_u32(2147483647u));
  EXPECT_FALSE(is_prime_u32(3215031751u));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PrimeField, Embedding) {
  std::uint32_t p = default_primes(3, 1)[0];
  PrimeField F(p, 3);
  fp_t w = F.omega();
  EXPECT_NE(w, 1u);
  EXPECT_EQ(fp_pow(w, 3, p), 1u);
  // 1 + z + z^2 = 0
  EXPECT_EQ(F.of(CycloScalar::zeta(3, 0) + CycloScalar::zeta(3, 1) + CycloScalar::zeta(3, 2)), 0u);
  EXPECT_EQ(F.of(Rational(1, 2)), fp_inv(2, p));
  EXPECT_EQ(F.of(CycloScalar::zeta(3, 1)) , w);
  EXPECT_EQ(fp_mul(F.of(CycloScalar::zeta(3, 1)), F.of(CycloScalar::zeta(3, 2)), p), 1u);
}

TEST(PrimeField, BadPrime) {
  EXPECT_THROW(PrimeField(101, 1), Error);
  std::uint32_t p = default_primes(1, 1)[0];
  if ((p - 1) % 7 != 0) EXPECT_THROW(PrimeField(p, 7), Error);
  PrimeField F(p, 1);
  EXPECT_THROW(F.of(Rational(1, static_cast<long>(p))), Error);
  EXPECT_THROW(F.of(CycloScalar::zeta(5, 1)), Error);
}

TEST(GroebnerDim, Examples) {
  EXPECT_EQ(groebner_dim({}, 3, kP), 3);
  EXPECT_EQ(groebner_dim({mono({0})}, 2, kP), 1);
  EXPECT_EQ(groebner_dim({mono({0, 0}), mono({0, 1}, 2)}, 2, kP), 1);
  EXPECT_EQ(groebner_dim({FpPoly::constant(3)}, 2, kP), std::nullopt);
  // x*y - 1 and x: empty
  EXPECT_EQ(groebner_dim({sum({mono({0, 1}), FpPoly::constant(kP - 1)}), mono({0})}, 2, kP), std::nullopt);
  // twisted cubic in A^3: dim 1
  std::vector<FpPoly> cubic{sum({mono({1}), mono({0, 0}, kP - 1)}), sum({mono({2}), mono({0, 0, 0}, kP - 1)})};
  EXPECT_EQ(groebner_dim(cubic, 3, kP), 1);
  // xy = zw cone: dim 3
  EXPECT_EQ(groebner_dim({sum({mono({0, 1}), mono({2, 3}, kP - 1)})}, 4, kP), 3);
}

TEST(GroebnerDim, PreprocessingMatchesPlainBuchberger) {
  std::mt19937 rng(7);
  GroebnerOptions plain;
  plain.substitution_limit = 0;
  plain.split_blocks = false;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 3 + rng() % 3;
    std::vector<FpPoly> sys;
    std::size_t k = 1 + rng() % 3;
    for (std::size_t e = 0; e < k; ++e) {
      FpPoly f;
      std::size_t terms = 1 + rng() % 3;
      for (std::size_t t = 0; t < terms; ++t) {
        FpMono m;
        std::size_t deg = rng() % 3 + (t == 0 ? 1 : 0);
        for (std::size_t d = 0; d < deg; ++d) m.push_back(static_cast<std::uint16_t>(rng() % n));
        std::sort(m.begin(), m.end());
        f.add_term(m, 1 + rng() % 5, kP);
      }
      sys.push_back(f);
    }
    auto a = groebner_dim(sys, n, kP);
    auto b = groebner_dim(sys, n, kP, plain);
    EXPECT_EQ(a, b) << "trial " << trial;
  }
}

TEST(GroebnerDim, UnitEliminationsMatchPlainBuchberger) {
  // Random systems with a relation u w = k, so w is invertible.
  std::mt19937 rng(11);
  GroebnerOptions plain;
  plain.substitution_limit = 0;
  plain.split_blocks = false;
  plain.unit_eliminations = false;
  GroebnerOptions linear_only;
  linear_only.unit_eliminations = false;
  int exercised = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 4 + rng() % 3;
    const auto u = static_cast<std::uint16_t>(n - 1), w = static_cast<std::uint16_t>(rng() % (n - 1));
    std::vector<FpPoly> sys{sum({mono({w, u}), mono({}, kP - 1 - rng() % 3)})};
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t e = 0; e < k; ++e) {
      FpPoly f;
      // A w*v term with v linear makes the equation solvable for v.
      const auto v = static_cast<std::uint16_t>(rng() % (n - 1));
      if (v != w) f.add(mono({std::min(v, w), std::max(v, w)}, 1 + rng() % 5), kP);
      const std::size_t terms = 1 + rng() % 3;
      for (std::size_t t = 0; t < terms; ++t) {
        FpMono m;
        for (std::size_t d = rng() % 3; d > 0; --d) m.push_back(static_cast<std::uint16_t>(rng() % (n - 1)));
        std::sort(m.begin(), m.end());
        f.add_term(m, 1 + rng() % 5, kP);
      }
      if (!f.is_zero()) sys.push_back(f);
    }
    GroebnerStats with, without;
    auto a = groebner_dim(sys, n, kP, {}, &with);
    groebner_dim(sys, n, kP, linear_only, &without);
    if (with.eliminated_vars + with.zero_vars > without.eliminated_vars + without.zero_vars) ++exercised;
    EXPECT_EQ(a, groebner_dim(sys, n, kP, plain)) << "trial " << trial;
  }
  EXPECT_GE(exercised, 20);
}

TEST(GroebnerDim, MonomialIdealsMatchBruteForce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 5;
    std::vector<FpPoly> sys;
    std::vector<std::vector<std::uint16_t>> supports;
    std::size_t k = 1 + rng() % 4;
    for (std::size_t e = 0; e < k; ++e) {
      FpMono m;
      std::size_t deg = 1 + rng() % 3;
      for (std::size_t d = 0; d < deg; ++d) m.push_back(static_cast<std::uint16_t>(rng() % n));
      std::sort(m.begin(), m.end());
      FpPoly f;
      f.add_term(m, 1, kP);
      sys.push_back(f);
      std::vector<std::uint16_t> s(m.begin(), m.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      supports.push_back(s);
    }
    EXPECT_EQ(groebner_dim(sys, n, kP), coordinate_dim(supports, n));
    EXPECT_EQ(static_cast<long>(n - min_hitting_set(supports)), coordinate_dim(supports, n));
  }
}

TEST(MinHittingSet, MatchesBruteForce) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 4 + rng() % 12;
    std::vector<std::vector<std::uint16_t>> supports(1 + rng() % 10);
    for (auto& s : supports) {
      std::size_t k = 1 + rng() % 3;
      for (std::size_t j = 0; j < k; ++j) s.push_back(static_cast<std::uint16_t>(rng() % n));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    EXPECT_EQ(static_cast<long>(n - min_hitting_set(supports)), coordinate_dim(supports, n)) << "trial " << trial;
  }
  EXPECT_EQ(min_hitting_set({}), 0u);
}

TEST(GroebnerBasis, Reduces) {
  // {x^2, 2xy}: monic leading terms x^2 and xy.
  auto g = groebner_basis({mono({0, 0}), mono({0, 1}, 2)}, 2, kP);
  ASSERT_EQ(g.size(), 2u);
  // unit ideal
  auto u = groebner_basis({sum({mono({0, 1}), FpPoly::constant(1)}), mono({0})}, 2, kP);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_TRUE(u[0].is_constant());
}

TEST(GroebnerDim, Budget) {
  GroebnerOptions tight;
  tight.spair_budget = 0;
  tight.substitution_limit = 0;
  std::vector<FpPoly> sys{sum({mono({0, 0}), mono({1, 2})}), sum({mono({0, 1}), mono({2, 2})})};
  EXPECT_THROW(groebner_dim(sys, 3, kP, tight), Error);
}

TEST(FpPoly, Printing) {
  FpPoly f = sum({mono({0, 0, 1}, 3), mono({2})});
  auto name = [](std::uint16_t v) { return "x" + std::to_string(v); };
  EXPECT_EQ(f.str(name), "x2 + 3*x0^2*x1");
}
