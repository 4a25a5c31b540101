#include <gtest/gtest.h>

#include "mldforge/errors.hpp"
#include "mldforge/group.hpp"

using namespace mldforge;

namespace {

CycloScalar z(unsigned m, long k = 1) { return CycloScalar::zeta(m, k); }

Matrix diag(std::initializer_list<CycloScalar> e) { return Matrix::diagonal(Vector(e)); }

FiniteGroup quaternion() {
  Matrix i({{z(4), 0}, {0, -z(4)}});
  Matrix j({{0, -1}, {1, 0}});
  return close_group({i, j});
}

// Test corpus used by the property checks.
std::vector<FiniteGroup> corpus() {
  std::vector<FiniteGroup> gs;
  gs.push_back(close_group({Matrix::identity(2)}));
  gs.push_back(cyclic_group(2, {1, 1}));
  gs.push_back(cyclic_group(3, {1, 1}));
  gs.push_back(cyclic_group(3, {1, 1, 1}));
  gs.push_back(cyclic_group(6, {1, 1}));
  gs.push_back(cyclic_group(5, {1, 2, 3}));
  gs.push_back(cyclic_group(2, {1, 1, 0}));
  gs.push_back(quaternion());
  gs.push_back(close_group({Matrix({{0, 1}, {1, 0}}), diag({-1, -1})}));
  gs.push_back(close_group({Matrix({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})}));
  return gs;
}

}  // namespace

TEST(Group, ClosureExamples) {
  EXPECT_EQ(close_group({Matrix::identity(3)}).order(), 1u);
  EXPECT_EQ(close_group({diag({-1, -1})}).order(), 2u);
  FiniteGroup g = close_group({diag({z(3), z(3), z(3)})});
  EXPECT_EQ(g.order(), 3u);
  EXPECT_TRUE(g.element(0).matrix.is_identity());
  EXPECT_EQ(g.field_order(), 3u);
}

TEST(Group, OrderCap) {
  try {
    close_group({diag({z(12), z(12)})}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderCapExceeded);
  }
  // Infinite order generator.
  EXPECT_THROW(close_group({Matrix({{1, 1}, {0, 1}})}, 50), Error);
}

TEST(Group, ConjugacyClasses) {
  EXPECT_EQ(conjugacy_classes(close_group({Matrix::identity(2)})).size(), 1u);
  EXPECT_EQ(cyclic_group(3, {1, 2}).classes().size(), 3u);
  FiniteGroup q = quaternion();
  EXPECT_EQ(q.order(), 8u);
  std::vector<std::size_t> sizes;
  for (const auto& c : q.classes()) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 2, 2, 2}));
  // Brute force: each class is closed under conjugation by every element.
  for (const auto& c : q.classes()) {
    for (std::size_t m : c.members) {
      EXPECT_LE(c.representative, m);
      for (std::size_t h = 0; h < q.order(); ++h) {
        std::size_t conj = q.multiply(q.multiply(h, m), q.inverse(h));
        EXPECT_EQ(q.class_of(conj), q.class_of(m));
      }
    }
  }
}

TEST(Group, PseudoReflection) {
  EXPECT_FALSE(is_pseudo_reflection(Matrix::identity(2)));
  EXPECT_TRUE(is_pseudo_reflection(diag({-1, 1})));
  EXPECT_FALSE(is_pseudo_reflection(diag({-1, -1})));
}

TEST(Group, EigenDecompose) {
  EXPECT_EQ(eigen_decompose(Matrix::identity(3), 4).exponents, (std::vector<unsigned>{0, 0, 0}));
  EXPECT_EQ(eigen_decompose(diag({-1, -1}), 2).exponents, (std::vector<unsigned>{1, 1}));
  Matrix rot({{0, -1}, {1, 0}});
  EigenData e = eigen_decompose(rot, 4);
  EXPECT_EQ(e.exponents, (std::vector<unsigned>{1, 3}));
  Matrix d = e.eigenbasis.inverse() * rot * e.eigenbasis;
  EXPECT_EQ(d, diag({z(4), z(4, 3)}));
}

TEST(Group, Age) {
  EXPECT_EQ(age(Matrix::identity(2), 1), Rational(0));
  EXPECT_EQ(age(diag({-1, -1}), 2), Rational(1));
  EXPECT_EQ(age(diag({z(3), z(3)}), 3), Rational(2, 3));
}

TEST(Group, Stabilizer) {
  FiniteGroup g = cyclic_group(2, {1, 1});
  EXPECT_EQ(stabilizer(g, Vector{0, 0}).order(), 2u);
  EXPECT_EQ(stabilizer(g, Vector{1, 0}).order(), 1u);
  FiniteGroup h = cyclic_group(2, {1, 1, 0});
  EXPECT_EQ(stabilizer(h, Vector{0, 0, 5}).order(), 2u);
}

TEST(Group, Centralizer) {
  FiniteGroup q = quaternion();
  EXPECT_EQ(centralizer(q, Matrix::identity(2)).order(), 8u);
  EXPECT_EQ(centralizer(q, diag({-1, -1})).order(), 8u);
  EXPECT_EQ(centralizer(q, q.element(q.generators()[0]).matrix).order(), 4u);
  FiniteGroup c = cyclic_group(6, {1, 1});
  EXPECT_EQ(centralizer(c, c.element(3).matrix).order(), 6u);
  try {
    centralizer(q, diag({z(3), z(3)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ElementNotInGroup);
  }
}

TEST(Group, SimultaneousDiagonalization) {
  FiniteGroup c = cyclic_group(3, {1, 2});
  EXPECT_TRUE(simultaneous_diagonalize(c).basis.is_identity());

  FiniteGroup swap = close_group({Matrix({{0, 1}, {1, 0}})});
  auto sd = simultaneous_diagonalize(swap);
  EXPECT_EQ(sd.basis, Matrix({{1, 1}, {1, -1}}));
  std::size_t gen = swap.generators()[0];
  EXPECT_EQ(sd.exponents[gen], (std::vector<unsigned>{0, 1}));

  try {
    simultaneous_diagonalize(quaternion());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAbelian);
  }
}

TEST(GroupProperties, AgeSymmetry) {
  for (const auto& g : corpus()) {
    const unsigned d = g.order();
    for (std::size_t i = 0; i < d; ++i) {
      const auto& e = g.eigen(i).exponents;
      long ones = std::count(e.begin(), e.end(), 0u);
      Rational lhs = age(g.eigen(i), d) + age(g.eigen(g.inverse(i)), d);
      EXPECT_EQ(lhs, Rational(static_cast<long>(g.dimension()) - ones));
    }
  }
}

TEST(GroupProperties, AgeIsClassFunction) {
  for (const auto& g : corpus())
    for (const auto& c : g.classes())
      for (std::size_t m : c.members)
        EXPECT_EQ(age(g.eigen(m), g.order()), age(g.eigen(c.representative), g.order()));
}

TEST(GroupProperties, PseudoReflectionHasSmallAge) {
  FiniteGroup g = close_group({diag({-1, 1, 1}), diag({1, z(3), 1})});
  for (std::size_t i = 0; i < g.order(); ++i)
    if (is_pseudo_reflection(g.element(i).matrix)) EXPECT_LT(age(g.eigen(i), g.order()), Rational(1));
}

TEST(GroupProperties, EigenRoundTrip) {
  for (const auto& g : corpus()) {
    const unsigned d = g.order();
    for (std::size_t i = 0; i < d; ++i) {
      const auto& ed = g.eigen(i);
      Matrix dm = ed.eigenbasis.inverse() * g.element(i).matrix * ed.eigenbasis;
      Vector expect;
      for (unsigned e : ed.exponents) expect.push_back(z(d, e));
      EXPECT_EQ(dm, Matrix::diagonal(expect));
      EXPECT_TRUE(std::is_sorted(ed.exponents.begin(), ed.exponents.end()));
    }
  }
}

TEST(GroupProperties, Lagrange) {
  for (const auto& g : corpus()) {
    for (const Vector& p : {Vector(g.dimension(), 0), Vector(g.dimension(), 1)}) {
      EXPECT_EQ(g.order() % stabilizer(g, p).order(), 0u);
    }
    Vector mixed(g.dimension(), 0);
    mixed[0] = 1;
    EXPECT_EQ(g.order() % stabilizer(g, mixed).order(), 0u);
  }
}
