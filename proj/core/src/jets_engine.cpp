#include <algorithm>
#include <set>

#include "mldforge/mld.hpp"
#include "mldforge/parallel.hpp"
#include "mldforge/twist.hpp"

namespace mldforge {

namespace {

struct Axis {
  std::vector<TPoly> gens;
  ContactMode mode = ContactMode::AtLeast;
  Rational coef;
  unsigned bmax = 0;
  bool unit = false;  // some generator is a unit: order 0 on every arc
  bool jac = false;   // Jacobian axis: its order is the lift defect
};

struct ClassProblem {
  std::size_t class_index = 0;
  std::size_t element = 0;
  std::vector<TPoly> scheme;
  std::size_t N = 0;
  std::size_t n = 0;
  std::vector<TPoly> mx;
  std::vector<TPoly> mx_linear;
  Rational constant;
  std::vector<Axis> axes;
};

struct Context {
  const MldOptions& options;
  unsigned cyclotomic_order;
};

struct Sub {
  std::optional<Rational> min;  // nullopt: no finite cell
  std::vector<unsigned> b;
  unsigned level = 0;
  bool all_empty = true;
  bool closed = true;
  bool unknown = false;
  bool stabilized = true;
  bool conflict = false;
  std::size_t cells = 0;
  std::set<std::uint32_t> primes;
  std::set<std::string> notes;

  void merge(const Sub& o) {
    if (o.min && (!min || *o.min < *min)) {
      min = o.min;
      b = o.b;
      level = o.level;
    }
    all_empty = all_empty && o.all_empty;
    closed = closed && o.closed;
    unknown = unknown || o.unknown;
    stabilized = stabilized && o.stabilized;
    conflict = conflict || o.conflict;
    cells += o.cells;
    primes.insert(o.primes.begin(), o.primes.end());
    notes.insert(o.notes.begin(), o.notes.end());
  }
};

bool has_unit(const std::vector<TPoly>& gens) {
  for (const auto& g : gens)
    for (const auto& [tm, c] : g.terms())
      if (tm.x.degree() == 0 && tm.t.is_zero()) return true;
  return false;
}

Sub evaluate_cell(const ClassProblem& cp, const std::vector<unsigned>& b, const Context& ctx) {
  Sub out;
  out.cells = 1;
  out.b = b;
  unsigned e = 0, sum = 0, top = 1;
  ContactQuery q;
  q.clauses.push_back({cp.mx, ContactMode::AtLeast, 1});
  if (!cp.mx_linear.empty()) q.clauses.push_back({cp.mx_linear, ContactMode::AtLeast, 1});
  Rational value = cp.constant;
  for (std::size_t k = 0; k < cp.axes.size(); ++k) {
    const Axis& ax = cp.axes[k];
    if (ax.jac) e = b[k];
    else sum += b[k];
    top = std::max(top, b[k]);
    value -= ax.coef * Rational(static_cast<long>(b[k]));
    if (ax.mode == ContactMode::AtLeast && b[k] == 0) continue;
    q.clauses.push_back({ax.gens, ax.mode, b[k]});
  }
  const MldOptions& o = ctx.options;
  unsigned l0 = std::max({o.jet_min, 2 * e, sum + e, top});
  CylinderOptions copt;
  for (unsigned m = l0; m <= std::max(l0 + 1, std::min(l0 + 2, o.jet_max)); ++m) copt.levels.push_back(m);
  if (copt.levels.back() > o.jet_max) out.notes.insert("jet window extended past jet_max = " + std::to_string(o.jet_max));
  copt.primes = o.primes;
  copt.gb = o.gb;
  copt.threads = 1;
  try {
    CodimEstimate est = cylinder_codim(cp.scheme, JetBase::OverKt, cp.N, cp.n, q, e, copt, ctx.cyclotomic_order);
    out.primes.insert(est.primes_used.begin(), est.primes_used.end());
    out.stabilized = est.stabilized;
    out.conflict = est.prime_conflict;
    out.level = est.values.rbegin()->first;
    if (!est.failed_levels.empty()) out.notes.insert("S-pair budget exhausted at some jet levels");
    if (est.prime_conflict) out.notes.insert("primes disagreed; decided by a further prime");
    if (est.codim) {
      out.min = value + Rational(*est.codim);
      out.all_empty = false;
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::BudgetExceeded) throw;
    out.unknown = true;
    out.all_empty = false;
    out.stabilized = false;
    out.notes.insert("cell skipped: S-pair budget exhausted");
  }
  return out;
}

bool increased(const std::optional<Rational>& now, const std::optional<Rational>& before) {
  if (!now) return before.has_value();
  return before && *now > *before;
}

// Searches axis k and beyond. Along an axis the search stops once the
// sub-minimum has strictly increased twice in a row, or, for >= axes, once a
// whole slice is empty; stopping at the bound leaves the axis open.
Sub search(const ClassProblem& cp, std::size_t k, std::vector<unsigned>& b, const Context& ctx) {
  if (k == cp.axes.size()) return evaluate_cell(cp, b, ctx);
  const Axis& ax = cp.axes[k];
  Sub acc;
  bool axis_closed = ax.unit;
  const unsigned hi = ax.unit ? 0 : ax.bmax;
  std::optional<Rational> prev;
  bool have_prev = false;
  int rises = 0;
  for (unsigned v = 0; v <= hi; ++v) {
    b[k] = v;
    Sub sub = search(cp, k + 1, b, ctx);
    acc.merge(sub);
    if (sub.unknown) {
      rises = 0;
      have_prev = false;
      continue;
    }
    if (ax.mode == ContactMode::AtLeast && sub.all_empty) {
      axis_closed = true;
      break;
    }
    if (have_prev && increased(sub.min, prev)) {
      if (++rises >= 2) {
        axis_closed = true;
        break;
      }
    } else {
      rises = 0;
    }
    prev = sub.min;
    have_prev = true;
  }
  b[k] = 0;
  if (!axis_closed) {
    acc.closed = false;
    acc.notes.insert("grid bound reached without closure");
  }
  return acc;
}

ClassTerm run_class(const ClassProblem& cp, const Context& ctx, Sub& info) {
  std::vector<unsigned> b(cp.axes.size(), 0);
  info = search(cp, 0, b, ctx);
  ClassTerm t;
  t.class_index = cp.class_index;
  t.element = cp.element;
  t.witness.class_index = cp.class_index;
  t.witness.element = cp.element;
  if (info.min) {
    t.value = MldValue::finite(*info.min);
    t.witness.b = info.b;
    t.witness.level = info.level;
  }
  bool good = info.closed && info.stabilized && !info.conflict && !info.unknown;
  t.status = good ? MldStatus::StabilizedEstimate : MldStatus::UpperBound;
  return t;
}

unsigned default_bound(int option, std::size_t n) {
  return option >= 0 ? static_cast<unsigned>(option) : static_cast<unsigned>(2 * n + 2);
}

// Generators of m_x pulled back to the twisted space; those divisible by t
// impose nothing. Cont^{>=1} of them is the locus where the eigencoordinates
// with exponent 0 vanish at t = 0 (the invariants have no common zero on
// Fix(gamma) besides the origin), which is added as bare variables.
void contact_with_origin(const TwistedScheme& ts, const std::vector<SparsePoly>& invariants, ClassProblem& cp) {
  for (const auto& h : invariants) {
    TPoly p = ts.pullback(h);
    bool divisible = std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.first.t >= Rational(1); });
    if (!divisible) cp.mx.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < ts.N; ++i)
    if (ts.exponents[i] == 0) cp.mx_linear.push_back(TPoly::from_poly(SparsePoly::variable(ts.N, i)));
}

MldReport assemble(const std::string& engine, const std::vector<ClassTerm>& terms, const std::vector<Sub>& infos) {
  MldReport rep;
  rep.engine = engine;
  rep.terms = terms;
  rep.status = MldStatus::StabilizedEstimate;
  std::set<std::uint32_t> primes;
  std::set<std::string> notes;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const ClassTerm& t = terms[i];
    if (t.status != MldStatus::StabilizedEstimate) rep.status = MldStatus::UpperBound;
    if (t.value.is_finite() && (!rep.value.is_finite() || t.value.value < rep.value.value)) {
      rep.value = t.value;
      rep.witness = t.witness;
    }
    primes.insert(infos[i].primes.begin(), infos[i].primes.end());
    notes.insert(infos[i].notes.begin(), infos[i].notes.end());
    cells += infos[i].cells;
  }
  if (!rep.value.is_finite()) rep.status = MldStatus::UpperBound;
  rep.primes.assign(primes.begin(), primes.end());
  rep.diagnostics.push_back("dimensions computed over F_p for p in {" + [&] {
    std::string s;
    for (auto p : rep.primes) s += (s.empty() ? "" : ", ") + std::to_string(p);
    return s;
  }() + "} as a stand-in for characteristic 0");
  rep.diagnostics.push_back("grid cells evaluated: " + std::to_string(cells));
  for (const auto& n : notes) rep.diagnostics.push_back(n);
  return rep;
}

MldReport run_classes(const std::string& engine, const std::vector<ClassProblem>& problems, const Context& ctx) {
  std::vector<Sub> infos(problems.size());
  std::vector<std::size_t> idx(problems.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto terms = parallel_map(idx, [&](std::size_t i) { return run_class(problems[i], ctx, infos[i]); },
                            ctx.options.threads);
  return assemble(engine, terms, infos);
}

std::vector<SparsePoly> invariants_for(const FiniteGroup& g, std::vector<std::string>& notes) {
  if (!g.is_abelian())
    notes.push_back("invariant generators of the non-abelian group computed up to the Noether bound " +
                    std::to_string(g.order()));
  return invariant_generators(g);
}

unsigned data_order(const FiniteGroup& g, const RIdealSpec& ideal) {
  Presentation p{g, {}, ideal, {}, {}};
  return p.cyclotomic_order();
}

SparsePoly with_extra_variable(const SparsePoly& f, std::size_t n) {
  SparsePoly out(n);
  for (const auto& [m, c] : f.terms()) {
    Monomial x(n);
    std::copy(m.exps.begin(), m.exps.end(), x.exps.begin());
    out += SparsePoly::monomial(x, c);
  }
  return out;
}

void check_ideal_on_y(const Presentation& p, const MldOptions& options) {
  if (p.c() == 0) return;
  const std::size_t N = p.N();
  const unsigned M = p.cyclotomic_order();
  std::vector<SparsePoly> base;
  for (const auto& f : p.equations) base.push_back(with_extra_variable(f, N + 1));
  for (std::size_t j = 0; j < p.ideal.factors.size(); ++j) {
    bool all_vanish = true;
    for (const auto& h : p.ideal.factors[j].gens) {
      // h vanishes on Y iff V(f, 1 - u h) is empty.
      std::vector<SparsePoly> sys = base;
      SparsePoly u = SparsePoly::variable(N + 1, N);
      sys.push_back(SparsePoly::constant(N + 1, CycloScalar(1)) - u * with_extra_variable(h, N + 1));
      if (variety_dim(sys, N + 1, M, options.primes, options.gb)) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish)
      throw Error(ErrorKind::IdealVanishesOnY, "ideal factor " + std::to_string(j + 1) + " vanishes identically on Y");
  }
}

}  // namespace

MldReport mld_quotient_pair_jets(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options) {
  ideal.check();
  const std::size_t N = g.dimension();
  std::vector<std::string> notes;
  auto invariants = invariants_for(g, notes);
  const Rational D(static_cast<long>(g.order()));
  std::vector<ClassProblem> problems;
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    ClassProblem cp;
    cp.class_index = ci;
    cp.element = g.classes()[ci].representative;
    TwistedScheme ts = build_twisted_scheme(cp.element, g, {});
    cp.N = N;
    cp.n = N;
    cp.constant = ts.age;
    contact_with_origin(ts, invariants, cp);
    for (const auto& fac : ideal.factors) {
      if (fac.root.empty()) continue;
      TwistedScheme tr = build_twisted_scheme(cp.element, g, fac.root);
      TPoly prod(N);
      prod.add_term(Monomial(N), Rational(0), CycloScalar(1));
      for (const auto& eq : tr.equations) prod = prod * eq;
      Axis ax;
      ax.gens = {prod};
      ax.coef = fac.exponent * D;
      ax.bmax = default_bound(options.b1_max, N);
      ax.unit = has_unit(ax.gens);
      cp.constant -= ax.coef * tr.weight_total;
      cp.axes.push_back(std::move(ax));
    }
    for (const auto& fac : ideal.factors) {
      if (!fac.root.empty()) continue;
      Axis ax;
      for (const auto& h : fac.gens) ax.gens.push_back(ts.pullback(h));
      ax.coef = fac.exponent;
      ax.bmax = default_bound(options.b2_max, N);
      ax.unit = has_unit(ax.gens);
      cp.axes.push_back(std::move(ax));
    }
    problems.push_back(std::move(cp));
  }
  MldReport rep = run_classes("quotient-pair-jets", problems, Context{options, data_order(g, ideal)});
  rep.diagnostics.insert(rep.diagnostics.end(), notes.begin(), notes.end());
  return rep;
}

MldReport mld_quotient_pair(const FiniteGroup& g, const RIdealSpec& ideal, const MldOptions& options) {
  if (g.is_abelian()) {
    try {
      return mld_quotient_pair_ip(g, ideal, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotMonomial) throw;
    }
  }
  return mld_quotient_pair_jets(g, ideal, options);
}

MldReport mld_hyperquotient(const Presentation& input, const MldOptions& options) {
  bool at_origin = std::all_of(input.point.begin(), input.point.end(), [](const CycloScalar& x) { return x.is_zero(); });
  const Presentation p = at_origin ? input : localize(input, input.point);
  require_valid(p, options);
  check_ideal_on_y(p, options);
  const FiniteGroup& g = p.group;
  const std::size_t N = p.N(), c = p.c(), n = N - c;
  std::vector<std::string> notes;
  auto invariants = invariants_for(g, notes);
  std::vector<ClassProblem> problems;
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    ClassProblem cp;
    cp.class_index = ci;
    cp.element = g.classes()[ci].representative;
    TwistedScheme ts = build_twisted_scheme(cp.element, g, p.equations);
    cp.scheme = ts.equations;
    cp.N = N;
    cp.n = n;
    cp.constant = ts.age - ts.weight_total;
    contact_with_origin(ts, invariants, cp);
    for (const auto& fac : p.ideal.factors) {
      Axis ax;
      for (const auto& h : fac.gens) ax.gens.push_back(ts.pullback(h));
      ax.coef = fac.exponent;
      ax.bmax = default_bound(options.b1_max, n);
      ax.unit = has_unit(ax.gens);
      cp.axes.push_back(std::move(ax));
    }
    Axis jac;
    jac.gens = jacobian_fitting(ts);
    jac.mode = ContactMode::Exactly;
    jac.coef = 1;
    jac.bmax = default_bound(options.b2_max, n);
    jac.unit = has_unit(jac.gens);
    jac.jac = true;
    cp.axes.push_back(std::move(jac));
    problems.push_back(std::move(cp));
  }
  MldReport rep = run_classes("hyperquotient-jets", problems, Context{options, p.cyclotomic_order()});
  rep.diagnostics.insert(rep.diagnostics.end(), notes.begin(), notes.end());
  if (!at_origin)
    rep.diagnostics.push_back("localized at the point; stabilizer of order " + std::to_string(g.order()));
  if (rep.value.is_finite() && rep.value.value > Rational(static_cast<long>(n)))
    rep.diagnostics.push_back("warning: value exceeds the dimension " + std::to_string(n));
  if (p.flags.klt && rep.value.is_finite() && rep.value.value <= Rational(0))
    rep.diagnostics.push_back("warning: klt was asserted but the computed value is not positive");
  return rep;
}

}  // namespace mldforge
