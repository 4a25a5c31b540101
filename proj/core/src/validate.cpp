#include <numeric>

#include "mldforge/mld.hpp"

namespace mldforge {

namespace {

unsigned lcm_nonzero(unsigned a, unsigned b) { return std::lcm(std::max(1u, a), std::max(1u, b)); }

std::string element_label(const FiniteGroup& g, std::size_t i) {
  return "element " + std::to_string(i) + " " + g.element(i).matrix.str();
}

std::vector<SparsePoly> fixed_space_equations(const Matrix& gamma) {
  const std::size_t n = gamma.rows();
  Matrix a = gamma - Matrix::identity(n);
  std::vector<SparsePoly> out;
  for (std::size_t r = 0; r < n; ++r) {
    SparsePoly row(n);
    for (std::size_t c = 0; c < n; ++c)
      if (!a(r, c).is_zero()) row += SparsePoly::monomial(Monomial::variable(n, c), a(r, c));
    if (!row.is_zero()) out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

unsigned Presentation::cyclotomic_order() const {
  unsigned m = group.field_order();
  for (const auto& f : equations) m = lcm_nonzero(m, f.field_order());
  for (const auto& fac : ideal.factors) {
    for (const auto& h : fac.gens) m = lcm_nonzero(m, h.field_order());
    for (const auto& h : fac.root) m = lcm_nonzero(m, h.field_order());
  }
  for (const auto& x : point) m = lcm_nonzero(m, x.order());
  return m;
}

std::string_view to_string(MldStatus status) {
  switch (status) {
    case MldStatus::Exact: return "exact";
    case MldStatus::StabilizedEstimate: return "stabilized-estimate";
    case MldStatus::UpperBound: return "upper-bound";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::ConsistentWithinStatus: return "consistent-within-status";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

std::string MldValue::str() const {
  switch (kind) {
    case Kind::Finite: return value.str();
    case Kind::MinusInfinity: return "-inf";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

bool ValidationReport::accepted() const {
  return std::none_of(findings.begin(), findings.end(), [](const Finding& f) { return f.rejection; });
}

void ValidationReport::raise() const {
  for (const auto& f : findings)
    if (f.rejection) throw Error(f.kind, f.message);
}

ValidationReport validate(const Presentation& p, const MldOptions& options) {
  ValidationReport rep;
  const FiniteGroup& g = p.group;
  const std::size_t N = p.N(), c = p.c();
  auto reject = [&](ErrorKind k, std::optional<std::size_t> el, std::string msg) {
    rep.findings.push_back({k, true, el, std::move(msg)});
  };
  auto note = [&](std::string msg) { rep.findings.push_back({ErrorKind::InvalidInput, false, std::nullopt, std::move(msg)}); };

  for (std::size_t i = 1; i < g.order(); ++i)
    if (is_pseudo_reflection(g.element(i).matrix))
      reject(ErrorKind::PseudoReflection, i, "pseudo-reflection: " + element_label(g, i));

  for (std::size_t k = 0; k < c; ++k) {
    const SparsePoly& f = p.equations[k];
    if (f.nvars() != N) {
      reject(ErrorKind::InvalidInput, std::nullopt, "equation " + std::to_string(k + 1) + " has the wrong number of variables");
      continue;
    }
    try {
      semi_invariant_character(g, f);
    } catch (const NotSemiInvariantError& e) {
      reject(ErrorKind::NotSemiInvariant, e.element(), "equation " + std::to_string(k + 1) + " is not semi-invariant: " + e.what());
    }
    if (!f.evaluate(Vector(N, CycloScalar(0))).is_zero())
      reject(ErrorKind::PointNotOnY, std::nullopt, "equation " + std::to_string(k + 1) + " does not vanish at the origin");
  }

  try {
    p.ideal.check();
  } catch (const Error& e) {
    reject(e.kind(), std::nullopt, e.what());
  }
  for (std::size_t j = 0; j < p.ideal.factors.size(); ++j)
    for (const auto& h : p.ideal.factors[j].gens)
      if (!is_invariant(g, h))
        reject(ErrorKind::InvalidInput, std::nullopt,
               "generator " + h.str() + " of ideal factor " + std::to_string(j + 1) + " is not G-invariant");

  if (!rep.accepted()) return rep;

  const unsigned M = p.cyclotomic_order();
  const long n = static_cast<long>(N) - static_cast<long>(c);
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    std::size_t rep_el = g.classes()[ci].representative;
    if (rep_el == 0) continue;
    std::vector<SparsePoly> sys = p.equations;
    for (auto& l : fixed_space_equations(g.element(rep_el).matrix)) sys.push_back(std::move(l));
    auto d = variety_dim(sys, N, M, options.primes, options.gb);
    if (d && *d > n - 2)
      reject(ErrorKind::BranchLocusTooBig, rep_el,
             "fixed locus of " + element_label(g, rep_el) + " meets V(f) in dimension " + std::to_string(*d) +
                 " > " + std::to_string(n - 2));
  }
  auto dim = variety_dim(p.equations, N, M, options.primes, options.gb);
  if (!dim || *dim != n)
    reject(ErrorKind::NotCompleteIntersection, std::nullopt,
           "dim V(f) = " + (dim ? std::to_string(*dim) : std::string("empty")) + ", expected " + std::to_string(n));
  if (c > 0) note("dimension checks are made over F_p and hold with high probability in characteristic 0");
  if (p.flags.klt) note("klt asserted by the user");
  return rep;
}

void require_valid(const Presentation& p, const MldOptions& options) { validate(p, options).raise(); }

Presentation localize(const Presentation& p, const Vector& point) {
  const std::size_t N = p.N();
  if (point.size() != N) throw Error(ErrorKind::InvalidInput, "point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(N));
  for (std::size_t k = 0; k < p.c(); ++k)
    if (!p.equations[k].evaluate(point).is_zero())
      throw Error(ErrorKind::PointNotOnY, "equation " + std::to_string(k + 1) + " does not vanish at the point");
  bool origin = std::all_of(point.begin(), point.end(), [](const CycloScalar& x) { return x.is_zero(); });
  Presentation out{origin ? p.group : stabilizer(p.group, point), {}, {}, {}, p.flags};
  for (const auto& f : p.equations) out.equations.push_back(origin ? f : translate(f, point));
  out.ideal = p.ideal;
  if (!origin)
    for (auto& fac : out.ideal.factors) {
      for (auto& h : fac.gens) h = translate(h, point);
      for (auto& h : fac.root) h = translate(h, point);
    }
  return out;
}

Verdict compare_reports(const MldReport& a, const MldReport& b) {
  if (a.value == b.value) return Verdict::Equal;
  if (!a.value.is_finite() || !b.value.is_finite()) {
    if (a.value.kind == MldValue::Kind::Unknown || b.value.kind == MldValue::Kind::Unknown)
      return Verdict::ConsistentWithinStatus;
    // One side -inf: only an exact finite value contradicts it.
    const MldReport& fin = a.value.is_finite() ? a : b;
    const MldReport& inf = a.value.is_finite() ? b : a;
    return fin.status == MldStatus::Exact && inf.status == MldStatus::Exact ? Verdict::Violated
                                                                            : Verdict::ConsistentWithinStatus;
  }
  // Exact pins the value; the other statuses are upper bounds.
  const bool ea = a.status == MldStatus::Exact, eb = b.status == MldStatus::Exact;
  if (ea && eb) return Verdict::Violated;
  if (ea && a.value.value > b.value.value) return Verdict::Violated;
  if (eb && b.value.value > a.value.value) return Verdict::Violated;
  return Verdict::ConsistentWithinStatus;
}

}  // namespace mldforge
