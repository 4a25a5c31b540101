#include "mldforge/arcs.hpp"

#include <algorithm>
#include <sstream>

#include "mldforge/errors.hpp"
#include "mldforge/parallel.hpp"

namespace mldforge {

namespace {

using Series = std::vector<FpPoly>;

// Truncated power series in t with F_p-polynomial coefficients in the jet
// variables. Variables listed in zero_prefix (x_{i,j} with j < zero_prefix[i])
// are treated as 0.
class JetExpander {
 public:
  JetExpander(std::size_t N, unsigned upto, JetBase base, const PrimeField& F, std::vector<unsigned> zero_prefix)
      : N_(N), upto_(upto), base_(base), F_(F), zero_(std::move(zero_prefix)), powers_(N) {
    zero_.resize(N, 0);
  }

  Series expand(const TPoly& f) {
    Series out(upto_ + 1);
    const fp_t p = F_.p();
    for (const auto& [tm, c] : f.terms()) {
      if (tm.t.denominator() != 1) throw Error(ErrorKind::InternalError, "fractional t-exponent in jet expansion");
      if (base_ == JetBase::OverK && !tm.t.is_zero())
        throw Error(ErrorKind::InvalidInput, "t appears in an equation over k");
      long s = tm.t.numerator().get_si();
      std::size_t order = static_cast<std::size_t>(s);
      for (std::size_t i = 0; i < N_; ++i) order += static_cast<std::size_t>(tm.x.exps[i]) * zero_[i];
      if (order > upto_) continue;
      Series term(upto_ + 1);
      term[static_cast<std::size_t>(s)] = FpPoly::constant(F_.of(c));
      for (std::size_t i = 0; i < N_; ++i)
        if (tm.x.exps[i]) term = mul(term, power(i, tm.x.exps[i]));
      for (unsigned j = 0; j <= upto_; ++j) out[j].add(term[j], p);
    }
    return out;
  }

 private:
  Series mul(const Series& a, const Series& b) const {
    Series r(upto_ + 1);
    const fp_t p = F_.p();
    for (unsigned i = 0; i <= upto_; ++i) {
      if (a[i].is_zero()) continue;
      for (unsigned j = 0; i + j <= upto_; ++j)
        if (!b[j].is_zero()) r[i + j].add(a[i].mul(b[j], p), p);
    }
    return r;
  }

  const Series& power(std::size_t i, unsigned k) {
    auto& pw = powers_[i];
    if (pw.empty()) {
      Series one(upto_ + 1);
      one[0] = FpPoly::constant(1);
      pw.push_back(one);
      Series x(upto_ + 1);
      for (unsigned j = zero_[i]; j <= upto_; ++j) x[j] = FpPoly::variable(static_cast<std::uint16_t>(j * N_ + i));
      pw.push_back(x);
    }
    while (pw.size() <= k) pw.push_back(mul(pw.back(), pw[1]));
    return pw[k];
  }

  std::size_t N_;
  unsigned upto_;
  JetBase base_;
  const PrimeField& F_;
  std::vector<unsigned> zero_;
  std::vector<std::vector<Series>> powers_;
};

struct Compiled {
  std::vector<FpPoly> common;
  std::vector<std::vector<FpPoly>> options;  // one entry per component
  std::size_t nvars = 0;
};

// Bare variables x_i among the generators of a >= b clause vanish to order b.
std::vector<unsigned> zero_prefix(const ContactQuery& q, std::size_t N, unsigned m) {
  std::vector<unsigned> z(N, 0);
  for (const auto& cl : q.clauses) {
    if (cl.order == 0) continue;
    for (const auto& g : cl.gens) {
      if (g.terms().size() != 1) continue;
      const auto& [tm, c] = *g.terms().begin();
      if (!tm.t.is_zero() || tm.x.degree() != 1) continue;
      for (std::size_t i = 0; i < N; ++i)
        if (tm.x.exps[i]) z[i] = std::max(z[i], std::min(cl.order, m + 1));
    }
  }
  return z;
}

void check_orders(const ContactQuery& q, unsigned m) {
  for (const auto& cl : q.clauses)
    if (cl.order > m)
      throw Error(ErrorKind::LevelTooSmall,
                  "contact order " + std::to_string(cl.order) + " exceeds jet level " + std::to_string(m));
}

Compiled compile(const ContactQuery& q, JetExpander& ex, std::size_t N, unsigned m, const PrimeField& F,
                 std::size_t first_witness, const std::vector<unsigned>& zp) {
  check_orders(q, m);
  const fp_t p = F.p();
  Compiled out;
  for (std::size_t i = 0; i < N; ++i)
    for (unsigned j = 0; j < zp[i] && j <= m; ++j) out.common.push_back(FpPoly::variable(static_cast<std::uint16_t>(j * N + i)));
  out.options.push_back({});
  std::size_t witness = first_witness;
  for (const auto& cl : q.clauses) {
    std::vector<FpPoly> choices;
    for (const auto& g : cl.gens) {
      Series s = ex.expand(g);
      for (unsigned j = 0; j < cl.order; ++j)
        if (!s[j].is_zero()) out.common.push_back(s[j]);
      if (cl.mode == ContactMode::Exactly && !s[cl.order].is_zero()) {
        FpPoly w = s[cl.order].mul(FpPoly::variable(static_cast<std::uint16_t>(witness)), p);
        w.add_term({}, fp_neg(1, p), p);
        choices.push_back(std::move(w));
      }
    }
    if (cl.mode != ContactMode::Exactly) continue;
    ++witness;
    std::vector<std::vector<FpPoly>> next;
    for (const auto& comp : out.options)
      for (const auto& c : choices) {
        next.push_back(comp);
        next.back().push_back(c);
      }
    out.options = std::move(next);
  }
  out.nvars = witness;
  return out;
}

std::vector<FpPoly> jet_equations(const std::vector<TPoly>& eqs, JetExpander& ex, unsigned m) {
  std::vector<FpPoly> out;
  for (const auto& f : eqs) {
    Series s = ex.expand(f);
    for (unsigned j = 0; j <= m; ++j)
      if (!s[j].is_zero()) out.push_back(std::move(s[j]));
  }
  return out;
}

std::optional<long> max_dim(std::optional<long> a, std::optional<long> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

}  // namespace

std::string JetSystem::var_name(std::uint16_t v) const {
  if (v >= N * (level + 1)) return "u" + std::to_string(v - N * (level + 1));
  return "x" + std::to_string(v % N + 1) + "_" + std::to_string(v / N);
}

std::string JetSystem::dump() const {
  std::ostringstream os;
  os << "# jet system over " << (base == JetBase::OverK ? "k" : "k[t]") << ", level " << level << ", prime " << prime
     << "\n";
  for (const auto& f : equations) os << f.str([this](std::uint16_t v) { return var_name(v); }) << "\n";
  return os.str();
}

JetSystem jet_system(const std::vector<TPoly>& equations, std::size_t N, unsigned m, JetBase base,
                     const PrimeField& F) {
  JetExpander ex(N, m, base, F, {});
  JetSystem js;
  js.level = m;
  js.base = base;
  js.N = N;
  js.nvars = N * (m + 1);
  js.prime = F.p();
  for (const auto& f : equations) {
    Series s = ex.expand(f);
    for (unsigned j = 0; j <= m; ++j) js.equations.push_back(std::move(s[j]));
  }
  return js;
}

std::vector<std::vector<FpPoly>> contact_constraints(const ContactQuery& q, std::size_t N, unsigned m,
                                                     const PrimeField& F, std::size_t first_witness) {
  JetExpander ex(N, m, JetBase::OverKt, F, {});
  Compiled c = compile(q, ex, N, m, F, first_witness, std::vector<unsigned>(N, 0));
  std::vector<std::vector<FpPoly>> out;
  for (auto& opt : c.options) {
    std::vector<FpPoly> comp = c.common;
    comp.insert(comp.end(), opt.begin(), opt.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::optional<long> locus_dim(const std::vector<TPoly>& scheme_eqs, JetBase base, std::size_t N, unsigned m,
                              const ContactQuery& q, const PrimeField& F, const GroebnerOptions& gb) {
  check_orders(q, m);
  std::vector<unsigned> zp = zero_prefix(q, N, m);
  JetExpander ex(N, m, base, F, zp);
  std::vector<FpPoly> jets = jet_equations(scheme_eqs, ex, m);
  Compiled c = compile(q, ex, N, m, F, N * (m + 1), zp);
  jets.insert(jets.end(), c.common.begin(), c.common.end());
  std::optional<long> best;
  for (const auto& opt : c.options) {
    std::vector<FpPoly> sys = jets;
    sys.insert(sys.end(), opt.begin(), opt.end());
    best = max_dim(best, groebner_dim(sys, c.nvars, F.p(), gb));
  }
  return best;
}

CodimEstimate cylinder_codim(const std::vector<TPoly>& scheme_eqs, JetBase base, std::size_t N, std::size_t n,
                             const ContactQuery& q, long lift_defect, const CylinderOptions& options,
                             unsigned cyclotomic_order) {
  if (options.levels.empty()) throw Error(ErrorKind::InvalidInput, "empty jet level window");
  CodimEstimate est;
  est.primes_used = options.primes.empty() ? default_primes(cyclotomic_order, 2) : options.primes;
  std::vector<PrimeField> fields;
  for (auto p : est.primes_used) fields.emplace_back(p, cyclotomic_order);

  struct Job {
    unsigned level;
    std::size_t field;
  };
  struct Outcome {
    bool ok = false;
    std::optional<long> dim;
  };
  auto run = [&](unsigned level, const PrimeField& F) {
    Outcome o;
    try {
      o.dim = locus_dim(scheme_eqs, base, N, level, q, F, options.gb);
      o.ok = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
    return o;
  };
  std::vector<Job> jobs;
  for (unsigned m : options.levels)
    for (std::size_t k = 0; k < fields.size(); ++k) jobs.push_back({m, k});
  std::vector<Outcome> results =
      parallel_map(jobs, [&](const Job& j) { return run(j.level, fields[j.field]); }, options.threads);

  std::vector<std::uint32_t> extra;
  for (std::size_t li = 0; li < options.levels.size(); ++li) {
    unsigned m = options.levels[li];
    std::vector<std::optional<long>> dims;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const Outcome& o = results[li * fields.size() + k];
      if (o.ok) dims.push_back(o.dim);
    }
    if (dims.empty()) {
      est.failed_levels.push_back(m);
      continue;
    }
    std::optional<long> dim = dims.front();
    bool agree = std::all_of(dims.begin(), dims.end(), [&](const auto& d) { return d == dims.front(); });
    if (!agree) {
      est.prime_conflict = true;
      // A further prime decides by majority; ties go to the larger dimension.
      std::vector<std::uint32_t> cands = default_primes(cyclotomic_order, est.primes_used.size() + 4);
      for (auto p : cands) {
        if (std::find(est.primes_used.begin(), est.primes_used.end(), p) != est.primes_used.end()) continue;
        Outcome o = run(m, PrimeField(p, cyclotomic_order));
        if (std::find(extra.begin(), extra.end(), p) == extra.end()) extra.push_back(p);
        if (o.ok) dims.push_back(o.dim);
        break;
      }
      std::size_t best_count = 0;
      for (const auto& d : dims) {
        std::size_t cnt = static_cast<std::size_t>(std::count(dims.begin(), dims.end(), d));
        if (cnt > best_count || (cnt == best_count && max_dim(d, dim) == d)) {
          best_count = cnt;
          dim = d;
        }
      }
    }
    CodimValue v;
    if (dim) v = static_cast<long>((m + 1) * n) - (*dim - lift_defect);
    est.values[m] = v;
  }
  est.primes_used.insert(est.primes_used.end(), extra.begin(), extra.end());
  if (est.values.empty()) throw Error(ErrorKind::BudgetExceeded, "no jet level could be computed");
  est.codim = est.values.rbegin()->second;
  if (options.levels.size() >= 2) {
    auto a = est.values.find(options.levels[options.levels.size() - 2]);
    auto b = est.values.find(options.levels.back());
    est.stabilized = a != est.values.end() && b != est.values.end() && a->second == b->second;
  }
  return est;
}

namespace {

TPoly determinant(const std::vector<std::vector<TPoly>>& a, std::size_t N) {
  const std::size_t c = a.size();
  if (c == 1) return a[0][0];
  TPoly det(N);
  for (std::size_t col = 0; col < c; ++col) {
    if (a[0][col].is_zero()) continue;
    std::vector<std::vector<TPoly>> minor;
    for (std::size_t r = 1; r < c; ++r) {
      std::vector<TPoly> row;
      for (std::size_t k = 0; k < c; ++k)
        if (k != col) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    TPoly term = a[0][col] * determinant(minor, N);
    if (col % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace

std::vector<TPoly> jacobian_minors(const std::vector<TPoly>& eqs, std::size_t N) {
  const std::size_t c = eqs.size();
  if (c == 0) {
    TPoly one(N);
    one.add_term(Monomial(N), Rational(0), CycloScalar(Rational(1)));
    return {one};
  }
  std::vector<std::vector<TPoly>> jac(c);
  for (std::size_t r = 0; r < c; ++r)
    for (std::size_t i = 0; i < N; ++i) jac[r].push_back(eqs[r].derivative(i));
  std::vector<TPoly> out;
  if (c > N) return out;
  std::vector<std::size_t> cols(c);
  for (std::size_t k = 0; k < c; ++k) cols[k] = k;
  while (true) {
    std::vector<std::vector<TPoly>> sub(c);
    for (std::size_t r = 0; r < c; ++r)
      for (std::size_t k : cols) sub[r].push_back(jac[r][k]);
    TPoly det = determinant(sub, N);
    if (!det.is_zero() && std::find(out.begin(), out.end(), det) == out.end()) out.push_back(std::move(det));
    std::size_t k = c;
    while (k > 0 && cols[k - 1] == N - c + k - 1) --k;
    if (k == 0) break;
    ++cols[k - 1];
    for (std::size_t l = k; l < c; ++l) cols[l] = cols[l - 1] + 1;
  }
  return out;
}

std::vector<TPoly> jacobian_fitting(const TwistedScheme& ts) { return jacobian_minors(ts.equations, ts.N); }

std::optional<long> variety_dim(const std::vector<SparsePoly>& eqs, std::size_t N, unsigned cyclotomic_order,
                                const std::vector<std::uint32_t>& primes, const GroebnerOptions& gb) {
  std::vector<TPoly> ts;
  for (const auto& f : eqs) ts.push_back(TPoly::from_poly(f));
  std::vector<std::uint32_t> ps = primes.empty() ? default_primes(cyclotomic_order, 2) : primes;
  std::map<std::optional<long>, std::size_t> votes;
  std::optional<long> best;
  std::size_t best_count = 0;
  for (auto p : ps) {
    auto d = locus_dim(ts, JetBase::OverK, N, 0, {}, PrimeField(p, cyclotomic_order), gb);
    std::size_t cnt = ++votes[d];
    if (cnt > best_count || (cnt == best_count && max_dim(d, best) == d)) {
      best_count = cnt;
      best = d;
    }
  }
  return best;
}

}  // namespace mldforge
