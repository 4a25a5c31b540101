#include "mldforge/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mldforge/errors.hpp"

namespace mldforge {

namespace {

unsigned matrix_order(const Matrix& m, std::size_t cap) {
  if (m.is_diagonal()) {
    // Order of a diagonal matrix of roots of unity: lcm of the entry orders.
    unsigned ord = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const CycloScalar& x = m(i, i);
      unsigned field = x.order();
      unsigned k = 1;
      CycloScalar p = x;
      while (!p.is_one()) {
        p *= x;
        if (++k > 2 * field + 2)
          throw Error(ErrorKind::OrderCapExceeded, "diagonal entry " + x.str() + " is not a root of unity");
      }
      ord = std::lcm(ord, k);
    }
    return ord;
  }
  Matrix p = m;
  unsigned k = 1;
  while (!p.is_identity()) {
    p = p * m;
    if (++k > cap) throw Error(ErrorKind::OrderCapExceeded, "element order exceeds cap");
  }
  return k;
}

}  // namespace

std::optional<std::size_t> FiniteGroup::index_of(const Matrix& m) const {
  if (m.rows() != dimension_ || m.cols() != dimension_ || entry_order_ % m.field_order() != 0)
    return std::nullopt;
  auto it = index_.find(m.embed(entry_order_).key(entry_order_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
  auto idx = index_of(elements_.at(a).matrix * elements_.at(b).matrix);
  if (!idx) throw Error(ErrorKind::InternalError, "group not closed under multiplication");
  return *idx;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      const Matrix& a = elements_[generators_[i]].matrix;
      const Matrix& b = elements_[generators_[j]].matrix;
      if (!(a * b == b * a)) return false;
    }
  return true;
}

bool FiniteGroup::is_diagonal() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](std::size_t g) { return elements_[g].matrix.is_diagonal(); });
}

FiniteGroup close_group(const std::vector<Matrix>& generators, std::size_t cap) {
  if (generators.empty()) throw Error(ErrorKind::InvalidInput, "a group needs at least one generator");
  const std::size_t n = generators.front().rows();
  unsigned entry_order = 1;
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw Error(ErrorKind::InvalidInput, "generators must all be square of the same size");
    if (g.rank() != n) throw Error(ErrorKind::InvalidInput, "generator is not invertible");
    entry_order = lcm_order(entry_order, g.field_order());
  }

  FiniteGroup G;
  G.dimension_ = n;
  G.entry_order_ = entry_order;
  std::vector<Matrix> gens;
  for (const auto& g : generators) gens.push_back(g.embed(entry_order));

  auto add = [&](Matrix m) {
    std::string key = m.key(entry_order);
    if (G.index_.count(key)) return false;
    if (G.elements_.size() >= cap)
      throw Error(ErrorKind::OrderCapExceeded, "group closure exceeds cap " + std::to_string(cap));
    G.index_.emplace(std::move(key), G.elements_.size());
    G.elements_.push_back(GroupElement{std::move(m), 1});
    return true;
  };

  add(Matrix::identity(n));
  std::vector<std::size_t> layer{0};
  while (!layer.empty()) {
    std::vector<Matrix> fresh;
    std::set<std::string> fresh_keys;
    for (std::size_t idx : layer)
      for (const auto& s : gens) {
        Matrix p = G.elements_[idx].matrix * s;
        std::string key = p.key(entry_order);
        if (G.index_.count(key) || fresh_keys.count(key)) continue;
        fresh_keys.insert(std::move(key));
        fresh.push_back(std::move(p));
      }
    std::sort(fresh.begin(), fresh.end(), [](const Matrix& a, const Matrix& b) { return compare(a, b) < 0; });
    layer.clear();
    for (auto& m : fresh) {
      std::size_t idx = G.elements_.size();
      if (add(std::move(m))) layer.push_back(idx);
    }
  }

  for (const auto& g : gens) G.generators_.push_back(*G.index_of(g));

  unsigned exponent = 1;
  for (auto& e : G.elements_) {
    e.order = matrix_order(e.matrix, cap);
    exponent = std::lcm(exponent, e.order);
  }
  G.field_order_ = lcm_order(entry_order, exponent);

  G.inverse_.resize(G.elements_.size());
  for (std::size_t i = 0; i < G.elements_.size(); ++i) {
    auto inv = G.index_of(G.elements_[i].matrix.inverse());
    if (!inv) throw Error(ErrorKind::InternalError, "inverse missing from closure");
    G.inverse_[i] = *inv;
  }

  G.classes_ = conjugacy_classes(G);
  G.class_of_.assign(G.elements_.size(), 0);
  for (std::size_t c = 0; c < G.classes_.size(); ++c)
    for (auto m : G.classes_[c].members) G.class_of_[m] = c;

  const unsigned d = G.order();
  G.eigen_.reserve(G.elements_.size());
  for (const auto& e : G.elements_) G.eigen_.push_back(eigen_decompose(e.matrix, d));
  return G;
}

FiniteGroup cyclic_group(unsigned r, const std::vector<long>& weights) {
  Vector diag;
  for (long w : weights) diag.push_back(CycloScalar::zeta(r, w));
  return close_group({Matrix::diagonal(diag)});
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t size = g.elements().size();
  std::vector<bool> seen(size, false);
  std::vector<ConjugacyClass> classes;
  std::vector<std::pair<Matrix, Matrix>> conjugators;
  for (auto s : g.generators()) conjugators.emplace_back(g.element(s).matrix.inverse(), g.element(s).matrix);
  for (std::size_t i = 0; i < size; ++i) {
    if (seen[i]) continue;
    ConjugacyClass cls;
    cls.representative = i;
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      cls.members.push_back(x);
      for (const auto& [sinv, s] : conjugators) {
        auto y = g.index_of(sinv * g.element(x).matrix * s);
        if (!y) throw Error(ErrorKind::InternalError, "conjugate missing from group");
        if (!seen[*y]) {
          seen[*y] = true;
          stack.push_back(*y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool is_pseudo_reflection(const Matrix& gamma) {
  if (gamma.is_identity()) return false;
  return (gamma - Matrix::identity(gamma.rows())).rank() == 1;
}

EigenData eigen_decompose(const Matrix& gamma, unsigned d) {
  const std::size_t n = gamma.rows();
  EigenData out;
  if (gamma.is_diagonal()) {
    std::vector<std::pair<unsigned, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(root_of_unity_log(gamma(i, i), d), i);
    std::stable_sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
    out.eigenbasis = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      out.exponents.push_back(e[k].first);
      out.eigenbasis(e[k].second, k) = CycloScalar(1);
    }
    return out;
  }
  unsigned ord = matrix_order(gamma, d);
  if (d % ord != 0)
    throw Error(ErrorKind::InternalError, "element order " + std::to_string(ord) + " does not divide " + std::to_string(d));
  std::vector<Vector> columns;
  const Matrix id = Matrix::identity(n);
  for (unsigned k = 0; k < ord; ++k) {
    CycloScalar lambda = CycloScalar::zeta(ord, k);
    auto kernel = (gamma - id.scaled(lambda)).kernel();
    for (auto& v : kernel) {
      out.exponents.push_back(k * (d / ord));
      columns.push_back(std::move(v));
    }
  }
  if (columns.size() != n)
    throw Error(ErrorKind::InternalError, "eigenspace dimensions do not add up to N");
  out.eigenbasis = Matrix::from_columns(columns, n);
  return out;
}

Rational age(const EigenData& eigen, unsigned d) {
  long sum = 0;
  for (auto e : eigen.exponents) sum += e;
  return Rational(mpz_class(sum), mpz_class(d));
}

Rational age(const Matrix& gamma, unsigned d) { return age(eigen_decompose(gamma, d), d); }

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> gens;
  std::set<std::size_t> span{0};
  for (std::size_t m : members) {
    if (span.count(m)) continue;
    gens.push_back(m);
    // Re-close the span with the new generator.
    std::vector<std::size_t> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto x : frontier)
        for (auto s : gens) {
          auto y = g.multiply(x, s);
          if (span.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
  }
  std::vector<Matrix> mats;
  for (auto s : gens) mats.push_back(g.element(s).matrix);
  if (mats.empty()) mats.push_back(Matrix::identity(g.dimension()));
  return close_group(mats, g.order());
}

FiniteGroup stabilizer(const FiniteGroup& g, const Vector& point) {
  if (point.size() != g.dimension()) throw Error(ErrorKind::InvalidInput, "point has wrong dimension");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.elements().size(); ++i)
    if (g.element(i).matrix * point == point) members.push_back(i);
  return subgroup(g, members);
}

FiniteGroup centralizer(const FiniteGroup& g, const Matrix& gamma) {
  if (!g.index_of(gamma)) throw Error(ErrorKind::ElementNotInGroup, "element is not in the group");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.elements().size(); ++i) {
    const Matrix& a = g.element(i).matrix;
    if (a * gamma == gamma * a) members.push_back(i);
  }
  return subgroup(g, members);
}

SimultaneousDiagonalization simultaneous_diagonalize(const FiniteGroup& g) {
  if (!g.is_abelian()) throw Error(ErrorKind::NotAbelian, "group is not abelian");
  const std::size_t n = g.dimension();
  const unsigned d = g.order();
  SimultaneousDiagonalization out;
  if (g.is_diagonal()) {
    out.basis = Matrix::identity(n);
  } else {
    // Refine a decomposition into invariant subspaces, one generator at a time.
    std::vector<Matrix> spaces{Matrix::identity(n)};
    for (auto gi : g.generators()) {
      const Matrix& gamma = g.element(gi).matrix;
      const unsigned ord = g.element(gi).order;
      std::vector<Matrix> refined;
      for (const auto& W : spaces) {
        const std::size_t k = W.cols();
        // Solve W * A = gamma * W for the restriction A.
        Matrix gw = gamma * W;
        Matrix aug(n, k + k);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < k; ++c) aug(r, c) = W(r, c);
          for (std::size_t c = 0; c < k; ++c) aug(r, k + c) = gw(r, c);
        }
        row_reduce(aug);
        Matrix A(k, k);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) A(r, c) = aug(r, k + c);
        const Matrix id = Matrix::identity(k);
        for (unsigned e = 0; e < ord; ++e) {
          auto ker = (A - id.scaled(CycloScalar::zeta(ord, e))).kernel();
          if (ker.empty()) continue;
          refined.push_back(W * Matrix::from_columns(ker, k));
        }
      }
      spaces = std::move(refined);
    }
    std::vector<Vector> cols;
    for (const auto& W : spaces)
      for (std::size_t c = 0; c < W.cols(); ++c) {
        Vector v = W.column(c);
        // Scale so the first nonzero entry is 1.
        auto lead = std::find_if(v.begin(), v.end(), [](const CycloScalar& x) { return !x.is_zero(); });
        CycloScalar s = lead->inverse();
        for (auto& x : v) x *= s;
        cols.push_back(std::move(v));
      }
    out.basis = Matrix::from_columns(cols, n);
  }
  const Matrix inv = out.basis.inverse();
  for (const auto& e : g.elements()) {
    Matrix D = inv * e.matrix * out.basis;
    if (!D.is_diagonal()) throw Error(ErrorKind::InternalError, "common eigenbasis does not diagonalize");
    std::vector<unsigned> ex;
    for (std::size_t k = 0; k < n; ++k) ex.push_back(root_of_unity_log(D(k, k), d));
    out.exponents.push_back(std::move(ex));
  }
  return out;
}

}  // namespace mldforge
