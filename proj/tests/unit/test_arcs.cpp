#include <gtest/gtest.h>

#include <random>

#include "mldforge/arcs.hpp"
#include "mldforge/errors.hpp"

using namespace mldforge;

namespace {

TPoly T(const std::string& s, std::size_t n) {
  SparsePoly p = parse_poly(s, ParseOptions{n, 1, true});
  TPoly r(n);
  for (const auto& [mono, c] : p.terms()) {
    Monomial x(n);
    for (std::size_t i = 0; i < n; ++i) x.exps[i] = mono.exps[i];
    r.add_term(x, Rational(static_cast<long>(mono.exps[n])), c);
  }
  return r;
}

std::vector<TPoly> maximal_ideal(std::size_t n) {
  std::vector<TPoly> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(T("x" + std::to_string(i + 1), n));
  return out;
}

const PrimeField& field() {
  static PrimeField F(default_primes(1, 1)[0], 1);
  return F;
}

std::string show(const std::vector<FpPoly>& sys, const JetSystem& js) {
  std::string out;
  for (const auto& f : sys) out += (out.empty() ? "" : "; ") + f.str([&](std::uint16_t v) { return js.var_name(v); });
  return out;
}

// min sum(v) subject to <v, m_i> >= c_i over small non-negative integers.
long brute_force_ip(const std::vector<std::vector<unsigned>>& monos, const std::vector<unsigned>& orders, std::size_t n,
                    unsigned cap) {
  long best = -1;
  std::vector<unsigned> v(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k < monos.size() && ok; ++k) {
      unsigned s = 0;
      for (std::size_t i = 0; i < n; ++i) s += v[i] * monos[k][i];
      ok = s >= orders[k];
    }
    if (ok) {
      long sum = 0;
      for (auto x : v) sum += x;
      if (best < 0 || sum < best) best = sum;
    }
    std::size_t i = 0;
    while (i < n && v[i] == cap) v[i++] = 0;
    if (i == n) break;
    ++v[i];
  }
  return best;
}

}  // namespace

TEST(JetSystem, Examples) {
  const auto& F = field();
  JetSystem a = jet_system({T("x1^2", 1)}, 1, 1, JetBase::OverK, F);
  ASSERT_EQ(a.equations.size(), 2u);
  EXPECT_EQ(a.equations[0].str([&](std::uint16_t v) { return a.var_name(v); }), "x1_0^2");
  EXPECT_EQ(a.equations[1].str([&](std::uint16_t v) { return a.var_name(v); }), "2*x1_0*x1_1");

  JetSystem b = jet_system({T("t*x1", 1)}, 1, 1, JetBase::OverKt, F);
  ASSERT_EQ(b.equations.size(), 2u);
  EXPECT_TRUE(b.equations[0].is_zero());
  EXPECT_EQ(b.equations[1].str([&](std::uint16_t v) { return b.var_name(v); }), "x1_0");

  JetSystem c = jet_system({}, 1, 2, JetBase::OverK, F);
  EXPECT_TRUE(c.equations.empty());
  EXPECT_EQ(c.nvars, 3u);
  EXPECT_EQ(groebner_dim(c.equations, c.nvars, F.p()), 3);

  EXPECT_THROW(jet_system({T("t*x1", 1)}, 1, 1, JetBase::OverK, F), Error);
}

TEST(JetSystem, Dump) {
  const auto& F = field();
  JetSystem a = jet_system({T("x1*x2 - x3^2", 3)}, 3, 1, JetBase::OverK, F);
  std::string d = a.dump();
  EXPECT_EQ(d.substr(0, d.find('\n')), "# jet system over k, level 1, prime " + std::to_string(F.p()));
  EXPECT_NE(d.find("x1_0*x2_1"), std::string::npos);
  EXPECT_EQ(std::count(d.begin(), d.end(), '\n'), 3);
}

TEST(ContactConstraints, Examples) {
  const auto& F = field();
  JetSystem js = jet_system({}, 1, 3, JetBase::OverK, F);
  auto a = contact_constraints({{{{T("x1", 1)}, ContactMode::AtLeast, 2}}}, 1, 3, F, 4);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(show(a[0], js), "x1_0; x1_1");

  JetSystem j0 = jet_system({}, 1, 0, JetBase::OverK, F);
  auto b = contact_constraints({{{{T("x1", 1)}, ContactMode::Exactly, 0}}}, 1, 0, F, 1);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(show(b[0], j0), "x1_0*u0 + " + std::to_string(F.p() - 1));

  JetSystem j2 = jet_system({}, 2, 1, JetBase::OverK, F);
  auto c = contact_constraints({{{maximal_ideal(2), ContactMode::AtLeast, 1}}}, 2, 1, F, 4);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(show(c[0], j2), "x1_0; x2_0");

  EXPECT_THROW(contact_constraints({{{{T("x1", 1)}, ContactMode::AtLeast, 3}}}, 1, 2, F, 3), Error);
}

TEST(CylinderCodim, Examples) {
  CylinderOptions opt;
  opt.levels = {1, 2, 3, 4};
  auto a = cylinder_codim({}, JetBase::OverK, 2, 2, {{{maximal_ideal(2), ContactMode::AtLeast, 1}}}, 0, opt, 1);
  for (const auto& [m, v] : a.values) EXPECT_EQ(v, 2) << "level " << m;
  EXPECT_TRUE(a.stabilized);
  EXPECT_FALSE(a.prime_conflict);
  EXPECT_EQ(a.primes_used.size(), 2u);

  opt.levels = {3, 4};
  auto b = cylinder_codim({}, JetBase::OverK, 1, 1, {{{{T("x1", 1)}, ContactMode::AtLeast, 3}}}, 0, opt, 1);
  EXPECT_EQ(b.values.at(3), 3);
  EXPECT_EQ(b.values.at(4), 3);
  EXPECT_EQ(b.codim, 3);
  EXPECT_TRUE(b.stabilized);
}

TEST(CylinderCodim, ConeA1Golden) {
  // Y = V(x1 x2 - x3^2), n = 2. Cells Cont^{>=1}(m) cap Cont^{=b}(Jac) with the
  // lift defect b: codim 2b for b >= 1, empty for b = 0; inf of codim - b is 1.
  std::vector<TPoly> eqs{T("x1*x2 - x3^2", 3)};
  auto jac = jacobian_minors(eqs, 3);
  ASSERT_EQ(jac.size(), 3u);
  long best = 1000;
  for (unsigned b = 0; b <= 3; ++b) {
    CylinderOptions opt;
    unsigned l0 = std::max({4u, 2 * b, 1 + b});
    opt.levels = {l0, l0 + 1, l0 + 2};
    ContactQuery q{{{maximal_ideal(3), ContactMode::AtLeast, 1}, {jac, ContactMode::Exactly, b}}};
    auto est = cylinder_codim(eqs, JetBase::OverK, 3, 2, q, b, opt, 1);
    EXPECT_TRUE(est.stabilized) << "b = " << b;
    EXPECT_FALSE(est.prime_conflict);
    if (b == 0) {
      EXPECT_FALSE(est.codim.has_value());
    } else {
      ASSERT_TRUE(est.codim.has_value());
      EXPECT_EQ(*est.codim, 2 * static_cast<long>(b)) << "b = " << b;
      best = std::min(best, *est.codim - static_cast<long>(b));
    }
  }
  EXPECT_EQ(best, 1);
}

TEST(Jacobian, Examples) {
  auto a = jacobian_minors({T("x1^2+x2^2+x3^2", 3)}, 3);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0], T("2*x1", 3));
  EXPECT_EQ(a[1], T("2*x2", 3));
  EXPECT_EQ(a[2], T("2*x3", 3));
  auto b = jacobian_minors({T("t*x1*x2 - x3^2", 3)}, 3);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], T("t*x2", 3));
  EXPECT_EQ(b[1], T("t*x1", 3));
  EXPECT_EQ(b[2], T("-2*x3", 3));
  auto c = jacobian_minors({T("x1", 3), T("x2", 3)}, 3);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], T("1", 3));
  auto d = jacobian_minors({}, 2);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], T("1", 2));
}

TEST(ArcsProperties, SmoothJetDimension) {
  const auto& F = field();
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned m = 0; m <= 6; ++m) EXPECT_EQ(locus_dim({}, JetBase::OverK, n, m, {}, F), static_cast<long>((m + 1) * n));
  for (unsigned m = 0; m <= 6; ++m)
    EXPECT_EQ(locus_dim({T("x1 - x2^2", 2)}, JetBase::OverK, 2, m, {}, F), static_cast<long>(m + 1));
}

TEST(ArcsProperties, MonomialContactMatchesIntegerProgram) {
  std::mt19937 rng(2024);
  const auto& F = field();
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 1 + rng() % 3;
    std::size_t k = 1 + rng() % 2;
    std::vector<std::vector<unsigned>> monos;
    std::vector<unsigned> orders;
    ContactQuery q;
    unsigned maxc = 0;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<unsigned> e(n);
      unsigned deg = 0;
      while (deg == 0) {
        deg = 0;
        for (auto& x : e) deg += (x = rng() % 3);
      }
      unsigned ord = 1 + rng() % 3;
      monos.push_back(e);
      orders.push_back(ord);
      maxc = std::max(maxc, ord);
      std::string s;
      for (std::size_t i = 0; i < n; ++i)
        if (e[i]) s += (s.empty() ? "" : "*") + ("x" + std::to_string(i + 1) + "^" + std::to_string(e[i]));
      q.clauses.push_back({{T(s, n)}, ContactMode::AtLeast, ord});
    }
    unsigned m = maxc;
    auto dim = locus_dim({}, JetBase::OverK, n, m, q, F);
    ASSERT_TRUE(dim.has_value());
    long codim = static_cast<long>((m + 1) * n) - *dim;
    EXPECT_EQ(codim, brute_force_ip(monos, orders, n, maxc)) << "trial " << trial;
  }
}

TEST(ArcsProperties, ExactContactPartition) {
  std::mt19937 rng(99);
  const auto& F = field();
  const std::vector<std::string> pool{"x1", "x2", "x1*x2", "x1^2 + x2", "x1 - x2^2", "x2^2", "x1^2 - x2^3"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TPoly> gens;
    std::size_t k = 1 + rng() % 2;
    for (std::size_t c = 0; c < k; ++c) gens.push_back(T(pool[rng() % pool.size()], 2));
    unsigned b = rng() % 3;
    unsigned m = b + 1;
    auto geq = locus_dim({}, JetBase::OverK, 2, m, {{{gens, ContactMode::AtLeast, b}}}, F);
    auto eq = locus_dim({}, JetBase::OverK, 2, m, {{{gens, ContactMode::Exactly, b}}}, F);
    auto gt = locus_dim({}, JetBase::OverK, 2, m, {{{gens, ContactMode::AtLeast, b + 1}}}, F);
    std::optional<long> expect = eq;
    if (gt && (!expect || *gt > *expect)) expect = gt;
    EXPECT_EQ(geq, expect) << "trial " << trial;
  }
}

TEST(ArcsProperties, PrimeIndependence) {
  auto ps = default_primes(1, 2);
  PrimeField F1(ps[0], 1), F2(ps[1], 1);
  std::vector<TPoly> eqs{T("x1*x2 - x3^2", 3)};
  auto jac = jacobian_minors(eqs, 3);
  for (unsigned b = 0; b <= 2; ++b)
    for (unsigned m = 2 * b + 2; m <= 2 * b + 3; ++m) {
      ContactQuery q{{{maximal_ideal(3), ContactMode::AtLeast, 1}, {jac, ContactMode::Exactly, b}}};
      EXPECT_EQ(locus_dim(eqs, JetBase::OverK, 3, m, q, F1), locus_dim(eqs, JetBase::OverK, 3, m, q, F2));
    }
}

TEST(VarietyDim, Basic) {
  EXPECT_EQ(variety_dim({parse_poly("x1*x2 - x3^2", 3, 1)}, 3, 1), 2);
  EXPECT_EQ(variety_dim({parse_poly("x1", 2, 1), parse_poly("x1 - 1", 2, 1)}, 2, 1), std::nullopt);
  EXPECT_EQ(variety_dim({}, 4, 1), 4);
}
