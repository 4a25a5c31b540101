#include <algorithm>
#include <functional>
#include <set>

#include "mldforge/lp.hpp"
#include "mldforge/mld.hpp"
#include "mldforge/twist.hpp"

namespace mldforge {

namespace {

std::vector<unsigned> exponent_vector(const SparsePoly& f) {
  if (!f.is_monomial()) throw Error(ErrorKind::NotMonomial, f.str() + " is not a monomial");
  return f.terms().begin()->first.exps;
}

Rational dot(const std::vector<Rational>& u, const std::vector<unsigned>& m) {
  Rational s;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) s += u[i] * Rational(static_cast<long>(m[i]));
  return s;
}

// One factor as a list of (x-exponent, t-offset) terms: its order along an
// arc with x-orders v is min <v, m> + s.
struct LinearFactor {
  std::vector<std::pair<std::vector<unsigned>, Rational>> terms;
  Rational coef;
  Rational offset;
};

// Adds z_j <= <v, m> + s for every term; z_j is variable `zvar`.
void add_factor_rows(LinearProgram& lp, std::size_t N, std::size_t zvar, const LinearFactor& fac) {
  for (const auto& [m, s] : fac.terms) {
    std::vector<Rational> row(lp.nvars);
    row[zvar] = 1;
    for (std::size_t i = 0; i < N; ++i) row[i] = -Rational(static_cast<long>(m[i]));
    lp.add_row(std::move(row), s);
  }
}

struct Solved {
  MldValue value;
  std::vector<Rational> u;
  std::size_t nodes = 0;
  long box = 0;
};

// min sum(v) + constant - sum coef_j z_j over integral v >= 0.
Solved solve_program(std::size_t N, const std::vector<LinearFactor>& factors, const Rational& constant,
                     const std::vector<std::pair<std::vector<unsigned>, Rational>>& extra_rows, const std::vector<Rational>& shift,
                     const MldOptions& options) {
  IntegerProgram ip;
  ip.lp = LinearProgram(N + factors.size());
  ip.integral.assign(N + factors.size(), false);
  for (std::size_t i = 0; i < N; ++i) {
    ip.lp.cost[i] = 1;
    ip.integral[i] = true;
  }
  ip.lp.constant = constant;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    ip.lp.cost[N + j] = -factors[j].coef;
    add_factor_rows(ip.lp, N, N + j, factors[j]);
  }
  // -<v, m> <= rhs
  for (const auto& [m, rhs] : extra_rows) {
    std::vector<Rational> row(ip.lp.nvars);
    for (std::size_t i = 0; i < N; ++i) row[i] = -Rational(static_cast<long>(m[i]));
    ip.lp.add_row(std::move(row), rhs);
  }
  IlpOptions io;
  io.initial_box = options.ip_box;
  IlpResult r = minimize_integer(ip, io);
  Solved s;
  s.nodes = r.nodes;
  s.box = r.box;
  if (r.status == LpStatus::Infeasible) return s;
  if (r.status == LpStatus::Unbounded) {
    s.value = MldValue::minus_infinity();
    return s;
  }
  s.value = MldValue::finite(r.value);
  for (std::size_t i = 0; i < N; ++i) s.u.push_back(r.x[i] + shift[i]);
  return s;
}

bool better(const MldValue& a, const MldValue& b) {
  if (b.kind == MldValue::Kind::Unknown) return a.kind != MldValue::Kind::Unknown;
  if (a.kind == MldValue::Kind::MinusInfinity) return b.kind != MldValue::Kind::MinusInfinity;
  if (a.kind != MldValue::Kind::Finite || b.kind != MldValue::Kind::Finite) return false;
  return a.value < b.value;
}

std::vector<SparsePoly> in_frame(const DiagonalFrame& frame, const std::vector<SparsePoly>& fs) {
  std::vector<SparsePoly> out;
  for (const auto& f : fs) out.push_back(to_eigencoordinates(frame.basis, f));
  return out;
}

void require_no_pseudo_reflections(const FiniteGroup& g) {
  for (std::size_t i = 1; i < g.order(); ++i)
    if (is_pseudo_reflection(g.element(i).matrix))
      throw Error(ErrorKind::PseudoReflection, "element " + std::to_string(i) + " " + g.element(i).matrix.str() + " is a pseudo-reflection");
}

}  // namespace

DiagonalFrame diagonal_frame(const FiniteGroup& g) {
  SimultaneousDiagonalization sd = simultaneous_diagonalize(g);
  return {sd.basis, g.order(), sd.exponents};
}

std::vector<std::vector<unsigned>> invariant_monomial_exponents(const DiagonalFrame& frame) {
  const std::size_t N = frame.basis.rows();
  const unsigned d = frame.d;
  std::vector<std::vector<unsigned>> found;
  auto invariant = [&](const std::vector<unsigned>& m) {
    for (const auto& e : frame.exponents) {
      unsigned long s = 0;
      for (std::size_t i = 0; i < N; ++i) s += static_cast<unsigned long>(e[i]) * m[i];
      if (s % d) return false;
    }
    return true;
  };
  // Monomials of degree k in increasing degree; an invariant monomial not
  // divisible by an earlier one is irreducible. Degrees up to |G| suffice.
  for (unsigned k = 1; k <= d; ++k) {
    std::vector<unsigned> m(N, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == N) {
        m[i] = left;
        if (!invariant(m)) return;
        for (const auto& g : found) {
          bool div = true;
          for (std::size_t j = 0; j < N && div; ++j) div = g[j] <= m[j];
          if (div) return;
        }
        found.push_back(m);
        return;
      }
      for (unsigned a = left + 1; a-- > 0;) {
        m[i] = a;
        rec(i + 1, left - a);
      }
    };
    rec(0, k);
  }
  return found;
}

MldReport mld_quotient_age(const FiniteGroup& g) {
  require_no_pseudo_reflections(g);
  MldReport rep;
  rep.engine = "age";
  rep.status = MldStatus::Exact;
  const unsigned d = g.order();
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    std::size_t el = g.classes()[ci].representative;
    const auto& e = g.eigen(el).exponents;
    Rational v = age(g.eigen(el), d);
    v += Rational(static_cast<long>(std::count(e.begin(), e.end(), 0u)));
    ClassTerm term{ci, el, MldValue::finite(v), MldStatus::Exact, {}};
    term.witness.class_index = ci;
    term.witness.element = el;
    rep.terms.push_back(term);
    if (better(term.value, rep.value)) {
      rep.value = term.value;
      rep.witness = term.witness;
    }
  }
  return rep;
}

MldReport mld_toric_lattice(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options) {
  ideal.check();
  const DiagonalFrame frame = diagonal_frame(g);
  const std::size_t N = g.dimension();
  std::vector<LinearFactor> factors;
  for (const auto& fac : ideal.factors) {
    LinearFactor lf;
    lf.coef = fac.exponent;
    for (const auto& h : in_frame(frame, fac.gens)) lf.terms.push_back({exponent_vector(h), Rational(0)});
    factors.push_back(std::move(lf));
  }
  MldReport rep;
  rep.engine = "toric-lattice";
  rep.status = MldStatus::Exact;
  // Residues of N' modulo Z^N, with zero coordinates lifted to 1 so that u
  // ranges over the interior of the positive orthant.
  std::set<std::vector<unsigned>> seen;
  std::size_t nodes = 0;
  long box = 0;
  for (std::size_t el = 0; el < g.order(); ++el) {
    const auto& e = frame.exponents[el];
    if (!seen.insert(e).second) continue;
    std::vector<Rational> r(N);
    Rational constant;
    for (std::size_t i = 0; i < N; ++i) {
      r[i] = e[i] ? Rational(static_cast<long>(e[i]), 1) / Rational(static_cast<long>(frame.d)) : Rational(1);
      constant += r[i];
    }
    std::vector<LinearFactor> shifted = factors;
    for (auto& lf : shifted)
      for (auto& [m, s] : lf.terms) s = dot(r, m);
    Solved s = solve_program(N, shifted, constant, {}, r, options);
    nodes += s.nodes;
    box = std::max(box, s.box);
    if (better(s.value, rep.value)) {
      rep.value = s.value;
      rep.witness = {};
      rep.witness.element = el;
      rep.witness.class_index = g.class_of(el);
      rep.witness.u = s.u;
    }
  }
  rep.diagnostics.push_back("residue classes: " + std::to_string(seen.size()) + ", branch-and-bound nodes: " +
                            std::to_string(nodes) + ", certified box radius: " + std::to_string(box));
  return rep;
}

MldReport mld_quotient_pair_ip(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options) {
  ideal.check();
  require_no_pseudo_reflections(g);
  const DiagonalFrame frame = diagonal_frame(g);
  const std::size_t N = g.dimension();
  const unsigned d = frame.d;
  const auto inv = invariant_monomial_exponents(frame);
  MldReport rep;
  rep.engine = "quotient-pair-ip";
  rep.status = MldStatus::Exact;
  std::size_t nodes = 0;
  for (std::size_t el = 0; el < g.order(); ++el) {
    const auto& e = frame.exponents[el];
    std::vector<Rational> shift(N);
    for (std::size_t i = 0; i < N; ++i) shift[i] = Rational(static_cast<long>(e[i]), 1) / Rational(static_cast<long>(d));
    Rational constant;
    for (const auto& x : shift) constant += x;  // age(gamma)
    std::vector<LinearFactor> factors;
    for (const auto& fac : ideal.factors) {
      LinearFactor lf;
      if (!fac.root.empty()) {
        // Twisted product of the root polynomials; the factor is
        // ((prod f)^|G|)^delta, so its order is |G|(w + ord of the product).
        TPoly prod(N);
        prod.add_term(Monomial(N), Rational(0), CycloScalar(1));
        Rational w;
        for (const auto& f : in_frame(frame, fac.root)) {
          exponent_vector(f);
          prod = prod * twisted_equation(e, f, d);
          w += diagonal_weight(e, f, d);
        }
        for (const auto& [tm, c] : prod.terms()) lf.terms.push_back({tm.x.exps, tm.t});
        lf.coef = fac.exponent * Rational(static_cast<long>(d));
        lf.offset = lf.coef * w;
      } else {
        for (const auto& h : in_frame(frame, fac.gens)) {
          auto m = exponent_vector(h);
          lf.terms.push_back({m, dot(shift, m)});
        }
        lf.coef = fac.exponent;
      }
      constant -= lf.offset;
      factors.push_back(std::move(lf));
    }
    // Cont^{>=1}(m_x): <v + e/d, m> >= 1 on invariant monomials.
    std::vector<std::pair<std::vector<unsigned>, Rational>> rows;
    for (const auto& m : inv) rows.push_back({m, dot(shift, m) - 1});
    Solved s = solve_program(N, factors, constant, rows, shift, options);
    nodes += s.nodes;
    ClassTerm term{g.class_of(el), el, s.value, MldStatus::Exact, {}};
    term.witness.element = el;
    term.witness.class_index = g.class_of(el);
    term.witness.u = s.u;
    if (better(s.value, rep.value)) {
      rep.value = s.value;
      rep.witness = term.witness;
    }
    rep.terms.push_back(std::move(term));
  }
  rep.diagnostics.push_back("invariant monomials: " + std::to_string(inv.size()) + ", branch-and-bound nodes: " +
                            std::to_string(nodes));
  return rep;
}

}  // namespace mldforge
