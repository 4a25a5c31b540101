#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "mldforge/errors.hpp"
#include "mldforge/mld.hpp"

using namespace mldforge;

namespace {

SparsePoly P(const std::string& s, std::size_t n, unsigned order = 1) { return parse_poly(s, ParseOptions{n, order, false}); }

CycloScalar z(unsigned m, long k = 1) { return CycloScalar::zeta(m, k); }

Matrix diag(const Vector& v) { return Matrix::diagonal(v); }

bool has_pseudo_reflection(const FiniteGroup& g) {
  for (std::size_t i = 1; i < g.order(); ++i)
    if (is_pseudo_reflection(g.element(i).matrix)) return true;
  return false;
}

// Random diagonal abelian groups of order <= 60 without pseudo-reflections:
// cyclic ones and products of two cyclic ones.
std::vector<FiniteGroup> random_groups(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<FiniteGroup> out;
  while (out.size() < count) {
    const std::size_t N = 2 + rng() % 2;
    auto gen = [&](unsigned r) {
      Vector v(N);
      for (auto& x : v) x = z(r, static_cast<long>(rng() % r));
      return diag(v);
    };
    std::vector<Matrix> gens{gen(2 + rng() % 11)};
    if (rng() % 3 == 0) gens.push_back(gen(2 + rng() % 4));
    FiniteGroup g = close_group(gens);
    if (g.order() < 2 || g.order() > 60 || has_pseudo_reflection(g)) continue;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<FiniteGroup> fixed_groups() {
  return {cyclic_group(2, {1, 1}), cyclic_group(3, {1, 1}), cyclic_group(3, {1, 1, 1}), cyclic_group(6, {1, 1}),
          cyclic_group(2, {1, 1, 1}), cyclic_group(2, {1, 1, 0}), cyclic_group(5, {1, 2}), cyclic_group(7, {1, 3, 5})};
}

// Minimum of sum(u) - sum_j delta_j min_m <u, m> over u in N' with
// 0 < u_i <= radius, by enumerating a = d u coordinate by coordinate.
struct BoxMin {
  std::optional<Rational> value;
  std::vector<Rational> u;
};

using MonomialFactor = std::pair<std::vector<std::vector<unsigned>>, Rational>;

BoxMin box_minimum(const DiagonalFrame& f, const std::vector<MonomialFactor>& factors, long radius) {
  const std::size_t N = f.basis.rows();
  const long d = f.d;
  std::set<std::vector<unsigned>> residues(f.exponents.begin(), f.exponents.end());
  BoxMin best;
  std::vector<long> a(N);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == N) {
      std::vector<unsigned> r(N);
      for (std::size_t k = 0; k < N; ++k) r[k] = static_cast<unsigned>(a[k] % d);
      if (!residues.count(r)) return;
      std::vector<Rational> u(N);
      Rational v;
      for (std::size_t k = 0; k < N; ++k) {
        u[k] = Rational(a[k], d);
        v += u[k];
      }
      for (const auto& [ms, delta] : factors) {
        std::optional<Rational> low;
        for (const auto& m : ms) {
          Rational s;
          for (std::size_t k = 0; k < N; ++k) s += u[k] * Rational(static_cast<long>(m[k]));
          if (!low || s < *low) low = s;
        }
        v -= delta * *low;
      }
      if (!best.value || v < *best.value) best = {v, u};
      return;
    }
    for (a[i] = 1; a[i] <= radius * d; ++a[i]) rec(i + 1);
  };
  rec(0);
  return best;
}

std::vector<unsigned> exps(const SparsePoly& m) { return m.terms().begin()->first.exps; }

Presentation a1_cone() { return {cyclic_group(1, {0, 0, 0}), {P("x1*x2 - x3^2", 3)}, {}, {}, {}}; }

Presentation mu3() { return {cyclic_group(3, {1, 1, 1}), {P("x1^2 + x2^2 + x3^2", 3)}, {}, {}, {}}; }

MldOptions small_grid() {
  MldOptions o;
  o.b1_max = 3;
  o.b2_max = 3;
  return o;
}

}  // namespace

TEST(QuotientGoldens, Lattice) {
  EXPECT_EQ(mld_toric_lattice(cyclic_group(2, {1, 1}), {}).value, MldValue::finite(1));
  EXPECT_EQ(mld_toric_lattice(cyclic_group(3, {1, 1}), {}).value, MldValue::finite(Rational(2, 3)));
  EXPECT_EQ(mld_toric_lattice(cyclic_group(2, {1, 1, 0}), {}).value, MldValue::finite(2));
  MldReport r = mld_toric_lattice(cyclic_group(6, {1, 1}), {});
  EXPECT_EQ(r.value, MldValue::finite(Rational(1, 3)));
  EXPECT_EQ(r.status, MldStatus::Exact);
  EXPECT_EQ(r.witness.u, (std::vector<Rational>{Rational(1, 6), Rational(1, 6)}));
}

TEST(QuotientGoldens, BoxEnumeration) {
  const std::vector<std::pair<FiniteGroup, Rational>> cases = {
      {cyclic_group(2, {1, 1}), 1}, {cyclic_group(3, {1, 1}), Rational(2, 3)},
      {cyclic_group(6, {1, 1}), Rational(1, 3)}, {cyclic_group(2, {1, 1, 0}), 2}};
  for (const auto& [g, want] : cases) {
    BoxMin b = box_minimum(diagonal_frame(g), {}, 3);
    ASSERT_TRUE(b.value);
    EXPECT_EQ(*b.value, want);
  }
}

TEST(QuotientGoldens, AgeTerms) {
  MldReport r = mld_quotient_age(cyclic_group(6, {1, 1}));
  ASSERT_EQ(r.terms.size(), 6u);
  EXPECT_EQ(r.terms[0].value, MldValue::finite(2));
  EXPECT_EQ(r.value, MldValue::finite(Rational(1, 3)));
  EXPECT_THROW(mld_quotient_age(close_group({diag({CycloScalar(-1), CycloScalar(1)})})), Error);
}

TEST(AgeLattice, RandomCorpus) {
  auto groups = random_groups(25, 5);
  for (const auto& g : fixed_groups()) groups.push_back(g);
  for (const auto& g : groups) {
    MldReport a = mld_quotient_age(g);
    MldReport l = mld_toric_lattice(g, {});
    EXPECT_EQ(a.value, l.value) << g.order();
    EXPECT_TRUE(a.value.is_finite());
  }
}

TEST(IpLattice, MonomialIdeals) {
  std::mt19937 rng(17);
  const std::vector<Rational> deltas = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2)};
  auto groups = random_groups(12, 23);
  for (const auto& g : fixed_groups()) groups.push_back(g);
  for (const auto& g : groups) {
    const std::size_t N = g.dimension();
    std::vector<SparsePoly> monos;
    for (const auto& h : invariant_generators(g))
      if (h.is_monomial()) monos.push_back(h);
    ASSERT_FALSE(monos.empty());
    for (int trial = 0; trial < 3; ++trial) {
      RIdealSpec ideal;
      std::vector<MonomialFactor> oracle;
      const int nf = trial == 0 ? 0 : 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < nf; ++j) {
        IdealFactor fac;
        fac.exponent = deltas[rng() % deltas.size()];
        const std::size_t k = 1 + rng() % std::min<std::size_t>(3, monos.size());
        std::vector<std::vector<unsigned>> ms;
        for (std::size_t i = 0; i < k; ++i) {
          const SparsePoly& m = monos[rng() % monos.size()];
          fac.gens.push_back(m);
          ms.push_back(exps(m));
        }
        oracle.push_back({ms, fac.exponent});
        ideal.factors.push_back(std::move(fac));
      }
      MldReport ip = mld_quotient_pair_ip(g, ideal);
      MldReport lat = mld_toric_lattice(g, ideal);
      EXPECT_EQ(ip.value, lat.value) << g.order() << " trial " << trial;
      EXPECT_EQ(ip.status, MldStatus::Exact);
      if (!lat.value.is_finite()) continue;
      BoxMin b = box_minimum(diagonal_frame(g), oracle, N == 2 ? 3 : 2);
      ASSERT_TRUE(b.value);
      EXPECT_GE(*b.value, lat.value.value);
      bool inside = std::all_of(lat.witness.u.begin(), lat.witness.u.end(), [&](const Rational& x) { return x <= Rational(N == 2 ? 3 : 2); });
      if (inside) EXPECT_EQ(*b.value, lat.value.value);
    }
  }
}

TEST(IpLattice, RootFactorMatchesGenerator) {
  // ((x1)^d)^delta given through its root against the plain generator.
  for (const auto& g : {cyclic_group(3, {1, 1}), cyclic_group(5, {1, 2}), cyclic_group(6, {1, 1})}) {
    const unsigned d = g.order();
    for (const Rational& delta : {Rational(1, 3), Rational(1, 2), Rational(1)}) {
      IdealFactor rooted{{P("x1^" + std::to_string(d), 2)}, delta / Rational(static_cast<long>(d)), {P("x1", 2)}};
      IdealFactor plain{rooted.gens, rooted.exponent, {}};
      MldReport ip = mld_quotient_pair_ip(g, RIdealSpec{{rooted}});
      MldReport lat = mld_toric_lattice(g, RIdealSpec{{plain}});
      EXPECT_EQ(ip.value, lat.value) << d << " " << delta;
    }
  }
}

TEST(IpLattice, ShiftedConesCoverLattice) {
  // u in N' with all u_i > 0 iff u = r + v for a residue r (zero entries
  // lifted to 1) and v >= 0 integral; checked on the box of radius 3.
  auto groups = random_groups(10, 41);
  for (const auto& g : fixed_groups()) groups.push_back(g);
  for (const auto& g : groups) {
    DiagonalFrame f = diagonal_frame(g);
    const std::size_t N = g.dimension();
    const long d = f.d;
    std::set<std::vector<unsigned>> residues(f.exponents.begin(), f.exponents.end());
    std::set<std::vector<long>> lattice, cones;
    std::vector<long> a(N);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == N) {
        std::vector<unsigned> r(N);
        for (std::size_t k = 0; k < N; ++k) r[k] = static_cast<unsigned>(a[k] % d);
        if (residues.count(r)) lattice.insert(a);
        return;
      }
      for (a[i] = 1; a[i] <= 3 * d; ++a[i]) rec(i + 1);
    };
    rec(0);
    for (const auto& e : residues) {
      std::vector<long> base(N);
      for (std::size_t k = 0; k < N; ++k) base[k] = e[k] ? e[k] : d;
      std::function<void(std::size_t, std::vector<long>&)> cone = [&](std::size_t i, std::vector<long>& p) {
        if (i == N) {
          cones.insert(p);
          return;
        }
        for (long v = 0; base[i] + v * d <= 3 * d; ++v) {
          p[i] = base[i] + v * d;
          cone(i + 1, p);
        }
      };
      std::vector<long> p(N);
      cone(0, p);
    }
    EXPECT_EQ(lattice, cones) << g.order();
  }
}

TEST(PairJets, AgreesWithIp) {
  std::vector<std::pair<FiniteGroup, RIdealSpec>> cases = {
      {cyclic_group(3, {1, 1}), {}},
      {cyclic_group(2, {1, 1}), {}},
      {cyclic_group(1, {0, 0}), RIdealSpec{{IdealFactor{{P("x1", 2), P("x2", 2)}, Rational(1), {}}}}},
      {cyclic_group(3, {1, 2}), RIdealSpec{{IdealFactor{{P("x1*x2", 2)}, Rational(1, 2), {}}}}},
      {cyclic_group(3, {1, 1}), RIdealSpec{{IdealFactor{{P("x1^3", 2)}, Rational(1, 3), {P("x1", 2)}}}}},
      {cyclic_group(2, {1, 1}), RIdealSpec{{IdealFactor{{P("x1^2", 2), P("x2^2", 2)}, Rational(1, 2), {}}}}},
  };
  for (const auto& [g, ideal] : cases) {
    MldReport ip = mld_quotient_pair_ip(g, ideal);
    MldReport jets = mld_quotient_pair_jets(g, ideal);
    EXPECT_EQ(ip.value, jets.value) << g.order();
    ASSERT_EQ(ip.terms.size(), g.order());
    for (const auto& t : jets.terms) {
      // Class terms of the jet route against the IP term of the representative.
      EXPECT_EQ(t.value, ip.terms[t.element].value) << g.order() << " class " << t.class_index;
    }
    EXPECT_NE(compare_reports(ip, jets), Verdict::Violated);
  }
}

TEST(PairJets, NonAbelianFallsBackToJets) {
  // Binary dihedral group of order 8 in SL(2): A^2/G is the D_4 du Val
  // singularity, canonical, so mld = 1.
  FiniteGroup g = close_group({diag({z(4), z(4, 3)}), Matrix({{CycloScalar(0), CycloScalar(1)}, {CycloScalar(-1), CycloScalar(0)}})});
  ASSERT_EQ(g.order(), 8u);
  MldReport r = mld_quotient_pair(g, {}, small_grid());
  EXPECT_EQ(r.engine, "quotient-pair-jets");
  EXPECT_EQ(r.value, MldValue::finite(1));
}

TEST(Validate, Examples) {
  Presentation branch{cyclic_group(2, {1, 1}), {P("x1", 2)}, {}, {}, {}};
  ValidationReport v = validate(branch);
  EXPECT_FALSE(v.accepted());
  ASSERT_FALSE(v.findings.empty());
  EXPECT_EQ(v.findings.front().kind, ErrorKind::BranchLocusTooBig);

  Presentation reflection{close_group({diag({CycloScalar(-1), CycloScalar(1)})}), {}, {}, {}, {}};
  EXPECT_EQ(validate(reflection).findings.front().kind, ErrorKind::PseudoReflection);
  Presentation with_reflection{close_group({diag({CycloScalar(-1), CycloScalar(1)}), diag({CycloScalar(1), CycloScalar(-1)})}), {}, {}, {}, {}};
  EXPECT_EQ(validate(with_reflection).findings.front().kind, ErrorKind::PseudoReflection);

  Presentation not_semi{cyclic_group(3, {1, 1, 1}), {P("x1^2 + x2", 3)}, {}, {}, {}};
  EXPECT_EQ(validate(not_semi).findings.front().kind, ErrorKind::NotSemiInvariant);

  Presentation off{cyclic_group(1, {0, 0}), {P("x1 + 1", 2)}, {}, {}, {}};
  EXPECT_EQ(validate(off).findings.front().kind, ErrorKind::PointNotOnY);

  Presentation two_equal{cyclic_group(1, {0, 0, 0}), {P("x1*x2 - x3^2", 3), P("x1*x2 - x3^2", 3)}, {}, {}, {}};
  EXPECT_EQ(validate(two_equal).findings.front().kind, ErrorKind::NotCompleteIntersection);

  EXPECT_TRUE(validate(a1_cone()).accepted());
  EXPECT_TRUE(validate(mu3()).accepted());
  try {
    require_valid(branch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BranchLocusTooBig);
  }
}

TEST(Hyperquotient, A1Golden) {
  MldOptions o;
  o.jet_min = 4;
  o.jet_max = 8;
  o.b1_max = 4;
  o.b2_max = 4;
  MldReport r = mld_hyperquotient(a1_cone(), o);
  EXPECT_EQ(r.value, MldValue::finite(1));
  EXPECT_EQ(r.status, MldStatus::StabilizedEstimate);
  EXPECT_GE(r.primes.size(), 2u);
  ASSERT_EQ(r.witness.b.size(), 1u);
  EXPECT_EQ(r.witness.b[0], 1u);
}

TEST(Hyperquotient, SmoothPresentations) {
  // A^2 with no equations, and a smooth hypersurface in A^3: mld = dimension.
  Presentation plane{cyclic_group(1, {0, 0}), {}, {}, {}, {}};
  EXPECT_EQ(mld_hyperquotient(plane, small_grid()).value, MldValue::finite(2));
  Presentation smooth{cyclic_group(1, {0, 0, 0}), {P("x1 - x2^2", 3)}, {}, {}, {}};
  EXPECT_EQ(mld_hyperquotient(smooth, small_grid()).value, MldValue::finite(2));
}

TEST(Hyperquotient, IdealVanishingOnY) {
  Presentation p = a1_cone();
  p.ideal.factors.push_back(IdealFactor{{P("x1*x2 - x3^2", 3)}, Rational(1), {}});
  try {
    mld_hyperquotient(p, small_grid());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdealVanishesOnY);
  }
}

TEST(Hyperquotient, PointNotOnY) {
  Presentation p = a1_cone();
  p.point = {CycloScalar(1), CycloScalar(1), CycloScalar(0)};
  try {
    mld_hyperquotient(p, small_grid());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointNotOnY);
  }
}

TEST(Pia, Mu3Identity) {
  BothSides b = pia_check(mu3(), small_grid());
  // Y is A^2/(1/6)(1,1); its value from the lattice engine is the target.
  MldValue target = mld_toric_lattice(cyclic_group(6, {1, 1}), {}).value;
  EXPECT_EQ(target, MldValue::finite(Rational(1, 3)));
  EXPECT_EQ(b.lhs.value, target);
  EXPECT_EQ(b.rhs.value, target);
  EXPECT_EQ(b.verdict, Verdict::Equal);
  ASSERT_EQ(b.rhs.terms.size(), 3u);
  // zeta^k I has age k and weight 2k/3 on f, leaving k/3; the identity
  // term is the A_1 value 1.
  const FiniteGroup g = mu3().group;
  for (const auto& t : b.rhs.terms) {
    const Rational a = age(g.eigen(t.element), g.order());
    const Rational want = t.element == 0 ? Rational(1) : a / Rational(3);
    EXPECT_EQ(t.value, MldValue::finite(want)) << t.element;
  }
}

TEST(Pia, ReduceShape) {
  PairProblem pp = pia_reduce(mu3());
  ASSERT_EQ(pp.ideal.factors.size(), 1u);
  const IdealFactor& f = pp.ideal.factors[0];
  EXPECT_EQ(f.exponent, Rational(1, 3));
  EXPECT_EQ(f.root.size(), 1u);
  ASSERT_EQ(f.gens.size(), 1u);
  EXPECT_EQ(f.gens[0], P("x1^2 + x2^2 + x3^2", 3).pow(3));
  EXPECT_TRUE(pia_reduce(Presentation{cyclic_group(2, {1, 1}), {}, {}, {}, {}}).ideal.is_unit());
}

TEST(Pia, DivisorOnA1Cone) {
  BothSides b = pia_divisor(a1_cone(), P("x3", 3), small_grid());
  EXPECT_EQ(b.lhs.value, MldValue::finite(0));
  EXPECT_EQ(b.rhs.value, MldValue::finite(0));
  EXPECT_EQ(b.verdict, Verdict::Equal);
}

TEST(Lsc, A1AndMu3) {
  const CycloScalar zero(0), one(1), i = z(4);
  LscScan a = lsc_scan(a1_cone(), {{zero, zero, zero}, {CycloScalar(4), one, CycloScalar(2)}, {one, one, one}, {CycloScalar(9), one, CycloScalar(3)}}, small_grid());
  ASSERT_EQ(a.rows.size(), 4u);
  EXPECT_TRUE(a.rows[0].special);
  EXPECT_EQ(a.rows[0].report.value, MldValue::finite(1));
  for (std::size_t k = 1; k < 4; ++k) {
    EXPECT_FALSE(a.rows[k].special);
    EXPECT_EQ(a.rows[k].report.value, MldValue::finite(2));
  }
  EXPECT_TRUE(a.holds);

  LscScan m = lsc_scan(mu3(), {{zero, zero, zero}, {one, i, zero}, {CycloScalar(3), CycloScalar(5) * i, CycloScalar(4)}, {zero, one, i}}, small_grid());
  EXPECT_EQ(m.rows[0].report.value, MldValue::finite(Rational(1, 3)));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(m.rows[k].report.value, MldValue::finite(2));
  EXPECT_TRUE(m.holds);
}

TEST(CompareReports, Semantics) {
  auto rep = [](MldValue v, MldStatus s) {
    MldReport r;
    r.value = v;
    r.status = s;
    return r;
  };
  const auto exact = MldStatus::Exact, est = MldStatus::StabilizedEstimate, ub = MldStatus::UpperBound;
  const MldValue one = MldValue::finite(1), half = MldValue::finite(Rational(1, 2));
  EXPECT_EQ(compare_reports(rep(one, exact), rep(one, ub)), Verdict::Equal);
  EXPECT_EQ(compare_reports(rep(one, exact), rep(half, exact)), Verdict::Violated);
  EXPECT_EQ(compare_reports(rep(one, exact), rep(half, est)), Verdict::Violated);
  EXPECT_EQ(compare_reports(rep(half, exact), rep(one, ub)), Verdict::ConsistentWithinStatus);
  EXPECT_EQ(compare_reports(rep(half, est), rep(one, ub)), Verdict::ConsistentWithinStatus);
  EXPECT_EQ(compare_reports(rep(MldValue::minus_infinity(), exact), rep(one, exact)), Verdict::Violated);
  EXPECT_EQ(compare_reports(rep(MldValue::unknown(), ub), rep(one, exact)), Verdict::ConsistentWithinStatus);
}
