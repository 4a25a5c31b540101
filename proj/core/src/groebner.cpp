#include "mldforge/groebner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "mldforge/errors.hpp"

namespace mldforge {

namespace {

template <std::size_t W>
struct Mono {
  std::array<std::uint8_t, W> e{};
  std::uint16_t deg = 0;
  std::uint64_t sig = 0;
};

template <std::size_t W>
bool divides(const Mono<W>& a, const Mono<W>& b) {
  if (a.deg > b.deg || (a.sig & ~b.sig)) return false;
  for (std::size_t i = 0; i < W; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

template <std::size_t W>
bool equal(const Mono<W>& a, const Mono<W>& b) {
  return a.deg == b.deg && a.sig == b.sig && a.e == b.e;
}

// Strict degrevlex "a > b".
template <std::size_t W>
bool greater(const Mono<W>& a, const Mono<W>& b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  for (std::size_t i = W; i-- > 0;)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

template <std::size_t W>
Mono<W> lcm(const Mono<W>& a, const Mono<W>& b) {
  Mono<W> r;
  for (std::size_t i = 0; i < W; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  r.sig = a.sig | b.sig;
  return r;
}

template <std::size_t W>
Mono<W> quotient(const Mono<W>& b, const Mono<W>& a) {
  Mono<W> r;
  for (std::size_t i = 0; i < W; ++i) {
    r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
    if (r.e[i]) r.sig |= 1ULL << (i % 64);
  }
  r.deg = static_cast<std::uint16_t>(b.deg - a.deg);
  return r;
}

template <std::size_t W>
Mono<W> product(const Mono<W>& a, const Mono<W>& b) {
  Mono<W> r;
  for (std::size_t i = 0; i < W; ++i) {
    unsigned s = static_cast<unsigned>(a.e[i]) + b.e[i];
    if (s > 255) throw Error(ErrorKind::BudgetExceeded, "exponent overflow in Groebner basis computation");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  r.deg = static_cast<std::uint16_t>(a.deg + b.deg);
  r.sig = a.sig | b.sig;
  return r;
}

template <std::size_t W>
bool coprime(const Mono<W>& a, const Mono<W>& b) {
  if (W <= 64) return (a.sig & b.sig) == 0;
  for (std::size_t i = 0; i < W; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

template <std::size_t W>
struct Term {
  Mono<W> m;
  fp_t c;
};

template <std::size_t W>
using Poly = std::vector<Term<W>>;

// h - c * q * g
template <std::size_t W>
Poly<W> sub_mul(const Poly<W>& h, fp_t c, const Mono<W>& q, const Poly<W>& g, fp_t p) {
  Poly<W> r;
  r.reserve(h.size() + g.size());
  std::size_t i = 0, j = 0;
  Mono<W> gm;
  bool have = false;
  while (i < h.size() || j < g.size()) {
    if (j < g.size() && !have) {
      gm = product(q, g[j].m);
      have = true;
    }
    if (j >= g.size() || (i < h.size() && greater(h[i].m, gm))) {
      r.push_back(h[i++]);
    } else if (i >= h.size() || greater(gm, h[i].m)) {
      r.push_back({gm, fp_neg(fp_mul(c, g[j].c, p), p)});
      ++j;
      have = false;
    } else {
      fp_t v = fp_sub(h[i].c, fp_mul(c, g[j].c, p), p);
      if (v) r.push_back({h[i].m, v});
      ++i;
      ++j;
      have = false;
    }
  }
  return r;
}

template <std::size_t W>
void make_monic(Poly<W>& h, fp_t p) {
  if (h.empty() || h[0].c == 1) return;
  fp_t inv = fp_inv(h[0].c, p);
  for (auto& t : h) t.c = fp_mul(t.c, inv, p);
}

template <std::size_t W>
class Buchberger {
 public:
  Buchberger(fp_t p, const GroebnerOptions& options) : p_(p), options_(options) {}

  // Returns false when the ideal is the unit ideal.
  bool run(std::vector<Poly<W>> input) {
    std::sort(input.begin(), input.end(), [](const Poly<W>& a, const Poly<W>& b) {
      if (a.empty() || b.empty()) return b.empty() && !a.empty();
      return greater(b[0].m, a[0].m);
    });
    for (auto& f : input) {
      if (!insert(std::move(f))) return false;
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (greater(pairs_[best].lcm, pairs_[k].lcm)) best = k;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (++spairs_ > options_.spair_budget)
        throw Error(ErrorKind::BudgetExceeded, "S-pair budget of " + std::to_string(options_.spair_budget) + " exhausted");
      const Poly<W>& a = polys_[pr.i];
      const Poly<W>& b = polys_[pr.j];
      Poly<W> s = sub_mul(Poly<W>{}, fp_neg(1, p_), quotient(pr.lcm, a[0].m), a, p_);
      s = sub_mul(s, 1, quotient(pr.lcm, b[0].m), b, p_);
      if (!insert(std::move(s))) return false;
    }
    return true;
  }

  std::vector<const Poly<W>*> basis() const {
    std::vector<const Poly<W>*> out;
    for (std::size_t k : active_) out.push_back(&polys_[k]);
    return out;
  }

  std::size_t spairs() const { return spairs_; }

 private:
  struct Pair {
    std::size_t i, j;
    Mono<W> lcm;
  };

  void reduce(Poly<W>& h) {
    while (!h.empty()) {
      const Poly<W>* div = nullptr;
      for (std::size_t k : active_)
        if (divides(polys_[k][0].m, h[0].m)) {
          div = &polys_[k];
          break;
        }
      if (!div) return;
      h = sub_mul(h, h[0].c, quotient(h[0].m, (*div)[0].m), *div, p_);
    }
  }

  bool insert(Poly<W> h) {
    reduce(h);
    if (h.empty()) return true;
    if (h[0].m.deg == 0) return false;
    make_monic(h, p_);
    polys_.push_back(std::move(h));
    update(polys_.size() - 1);
    return true;
  }

  // Gebauer-Moeller update.
  void update(std::size_t hi) {
    const Mono<W>& lh = polys_[hi][0].m;
    std::vector<Pair> c;
    for (std::size_t g : active_) c.push_back({g, hi, lcm(polys_[g][0].m, lh)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& pk = c[k];
      bool keep = coprime(polys_[pk.i][0].m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l)
          if (divides(c[l].lcm, pk.lcm)) keep = false;
        for (std::size_t l = 0; l < d.size() && keep; ++l)
          if (divides(d[l].lcm, pk.lcm)) keep = false;
      }
      if (keep) d.push_back(pk);
    }
    std::vector<Pair> kept;
    for (const auto& pr : pairs_) {
      bool drop = divides(lh, pr.lcm) && !equal(lcm(polys_[pr.i][0].m, lh), pr.lcm) &&
                  !equal(lcm(polys_[pr.j][0].m, lh), pr.lcm);
      if (!drop) kept.push_back(pr);
    }
    for (const auto& pr : d)
      if (!coprime(polys_[pr.i][0].m, lh)) kept.push_back(pr);
    pairs_ = std::move(kept);
    std::vector<std::size_t> act;
    for (std::size_t g : active_)
      if (!divides(lh, polys_[g][0].m)) act.push_back(g);
    act.push_back(hi);
    active_ = std::move(act);
  }

  fp_t p_;
  GroebnerOptions options_;
  std::vector<Poly<W>> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  std::size_t spairs_ = 0;
};

template <std::size_t W>
Poly<W> to_dense(const FpPoly& f, const std::unordered_map<std::uint16_t, std::size_t>& index) {
  Poly<W> r;
  r.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Term<W> t;
    t.c = c;
    for (std::uint16_t v : m) {
      std::size_t i = index.at(v);
      if (t.m.e[i] == 255) throw Error(ErrorKind::BudgetExceeded, "exponent overflow");
      ++t.m.e[i];
      ++t.m.deg;
      t.m.sig |= 1ULL << (i % 64);
    }
    r.push_back(t);
  }
  std::sort(r.begin(), r.end(), [](const Term<W>& a, const Term<W>& b) { return greater(a.m, b.m); });
  return r;
}

template <std::size_t W>
FpPoly to_sparse(const Poly<W>& f, const std::vector<std::uint16_t>& vars, fp_t p) {
  FpPoly r;
  for (const auto& t : f) {
    FpMono m;
    for (std::size_t i = 0; i < W; ++i)
      for (unsigned k = 0; k < t.m.e[i]; ++k) m.push_back(vars[i]);
    std::sort(m.begin(), m.end());
    r.add_term(m, t.c, p);
  }
  return r;
}

// Dimension of one block; nullopt when empty.
template <std::size_t W>
std::optional<long> block_dim(const std::vector<const FpPoly*>& polys, const std::vector<std::uint16_t>& vars, fp_t p,
                              const GroebnerOptions& options, GroebnerStats* stats) {
  std::unordered_map<std::uint16_t, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;
  std::vector<Poly<W>> input;
  for (const FpPoly* f : polys) input.push_back(to_dense<W>(*f, index));
  Buchberger<W> bb(p, options);
  bool proper = bb.run(std::move(input));
  if (stats) stats->spairs += bb.spairs();
  if (!proper) return std::nullopt;
  std::vector<std::vector<std::uint16_t>> supports;
  for (const Poly<W>* g : bb.basis()) {
    std::vector<std::uint16_t> s;
    for (std::size_t i = 0; i < W; ++i)
      if ((*g)[0].m.e[i]) s.push_back(static_cast<std::uint16_t>(i));
    supports.push_back(std::move(s));
  }
  return static_cast<long>(vars.size()) - static_cast<long>(min_hitting_set(supports));
}

std::optional<long> dispatch_block(const std::vector<const FpPoly*>& polys, const std::vector<std::uint16_t>& vars,
                                   fp_t p, const GroebnerOptions& options, GroebnerStats* stats) {
  if (vars.size() <= 16) return block_dim<16>(polys, vars, p, options, stats);
  if (vars.size() <= 32) return block_dim<32>(polys, vars, p, options, stats);
  if (vars.size() <= 64) return block_dim<64>(polys, vars, p, options, stats);
  if (vars.size() <= 128) return block_dim<128>(polys, vars, p, options, stats);
  throw Error(ErrorKind::BudgetExceeded, "Groebner block with " + std::to_string(vars.size()) + " variables");
}

enum class VarState : std::uint8_t { Free, Zero, Eliminated };

std::size_t occurrences(const FpMono& m, std::uint16_t v) {
  auto [lo, hi] = std::equal_range(m.begin(), m.end(), v);
  return static_cast<std::size_t>(hi - lo);
}

// Replaces v by r in f.
FpPoly substitute(const FpPoly& f, std::uint16_t v, const FpPoly& r, std::vector<FpPoly>& powers, fp_t p) {
  FpPoly out;
  for (const auto& [m, c] : f.terms()) {
    std::size_t k = occurrences(m, v);
    if (k == 0) {
      out.add_term(m, c, p);
      continue;
    }
    FpMono rest;
    for (auto x : m)
      if (x != v) rest.push_back(x);
    while (powers.size() <= k) powers.push_back(powers.back().mul(r, p));
    for (const auto& [pm, pc] : powers[k].terms()) out.add_term(fp_mono_mul(rest, pm), fp_mul(c, pc, p), p);
  }
  return out;
}

}  // namespace

std::size_t min_hitting_set(const std::vector<std::vector<std::uint16_t>>& supports_in) {
  // Keep only inclusion-minimal supports.
  std::vector<std::vector<std::uint16_t>> sup = supports_in;
  for (auto& s : sup) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sup.begin(), sup.end(), [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  std::vector<std::vector<std::uint16_t>> minimal;
  for (const auto& s : sup) {
    if (s.empty()) return 0;
    bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const auto& t) {
      return std::includes(s.begin(), s.end(), t.begin(), t.end());
    });
    if (!redundant) minimal.push_back(s);
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<char> chosen(65536, 0), excluded(65536, 0), mark(65536, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t count) {
    if (count >= best) return;
    // Branch on the unhit support with the fewest available variables; a
    // greedy packing of disjoint unhit supports gives the lower bound.
    const std::vector<std::uint16_t>* pick = nullptr;
    std::size_t pick_avail = 0;
    std::vector<std::uint16_t> touched;
    std::size_t packing = 0;
    bool infeasible = false;
    for (const auto& s : minimal) {
      bool hit = std::any_of(s.begin(), s.end(), [&](std::uint16_t v) { return chosen[v]; });
      if (hit) continue;
      std::size_t avail = 0;
      for (auto v : s) avail += !excluded[v];
      if (avail == 0) {
        infeasible = true;
        break;
      }
      if (!pick || avail < pick_avail) {
        pick = &s;
        pick_avail = avail;
      }
      if (std::none_of(s.begin(), s.end(), [&](std::uint16_t v) { return mark[v] != 0; })) {
        ++packing;
        for (auto v : s) {
          mark[v] = 1;
          touched.push_back(v);
        }
      }
    }
    for (auto v : touched) mark[v] = 0;
    if (infeasible) return;
    if (!pick) {
      best = count;
      return;
    }
    if (count + packing >= best) return;
    std::vector<std::uint16_t> newly_excluded;
    for (auto v : *pick) {
      if (excluded[v]) continue;
      chosen[v] = 1;
      rec(count + 1);
      chosen[v] = 0;
      excluded[v] = 1;
      newly_excluded.push_back(v);
    }
    for (auto v : newly_excluded) excluded[v] = 0;
  };
  rec(0);
  return best;
}

std::optional<long> groebner_dim(const std::vector<FpPoly>& system, std::size_t nvars, fp_t p,
                                 const GroebnerOptions& options, GroebnerStats* stats) {
  std::vector<VarState> state(nvars, VarState::Free);
  std::vector<FpPoly> polys;
  for (const auto& f : system)
    if (!f.is_zero()) polys.push_back(f);

  auto has_dead = [&](const FpMono& m) {
    return std::any_of(m.begin(), m.end(), [&](std::uint16_t v) { return state[v] == VarState::Zero; });
  };

  // units[w] = (u, k) when the system contains u w = k with k != 0, so that
  // w^{-1} = u / k.
  std::map<std::uint16_t, std::pair<std::uint16_t, fp_t>> units;
  auto find_units = [&] {
    units.clear();
    if (!options.unit_eliminations) return;
    for (const auto& f : polys) {
      if (f.size() != 2) continue;
      auto lo = f.terms().begin(), hi = std::next(lo);
      if (!lo->first.empty() || hi->first.size() != 2 || hi->first[0] == hi->first[1]) continue;
      const fp_t k = fp_mul(fp_neg(lo->second, p), fp_inv(hi->second, p), p);
      units[hi->first[0]] = {hi->first[1], k};
      units[hi->first[1]] = {hi->first[0], k};
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    find_units();
    // Monomial equations in a single variable force that variable to zero.
    bool zeroed = true;
    while (zeroed) {
      zeroed = false;
      for (const auto& f : polys) {
        if (f.is_constant()) return std::nullopt;
        if (f.size() != 1) continue;
        // Unit factors can be dropped from a monomial equation.
        FpMono m;
        for (auto v : f.terms().begin()->first)
          if (!units.count(v)) m.push_back(v);
        if (m.empty()) return std::nullopt;
        if (m.front() == m.back() && state[m.front()] == VarState::Free) {
          state[m.front()] = VarState::Zero;
          zeroed = true;
        }
      }
      if (!zeroed) break;
      std::vector<FpPoly> next;
      for (auto& f : polys) {
        FpPoly g;
        for (const auto& [m, c] : f.terms())
          if (!has_dead(m)) g.terms().emplace_hint(g.terms().end(), m, c);
        if (g.is_zero()) continue;
        if (g.is_constant()) return std::nullopt;
        next.push_back(std::move(g));
      }
      polys = std::move(next);
      changed = true;
    }
    // One linear elimination v = -(f - c v)/c, preferring short equations.
    std::size_t best_poly = polys.size();
    std::uint16_t best_var = 0;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      const FpPoly& f = polys[k];
      if (f.size() - 1 > options.substitution_limit) continue;
      if (best_poly < polys.size() && f.size() >= polys[best_poly].size()) continue;
      for (const auto& [m, c] : f.terms()) {
        if (m.size() != 1) continue;
        std::uint16_t v = m[0];
        bool alone = true;
        for (const auto& [m2, c2] : f.terms())
          if (m2.size() != 1 && occurrences(m2, v)) {
            alone = false;
            break;
          }
        if (alone) {
          best_poly = k;
          best_var = v;
          break;
        }
      }
    }
    // Failing that, v = -(f - c w v) u / (c k) where w is a unit; the unit
    // relation stays in the system, so the solution set is unchanged.
    std::optional<std::uint16_t> unit;
    if (best_poly == polys.size() && !units.empty()) {
      for (std::size_t k = 0; k < polys.size(); ++k) {
        const FpPoly& f = polys[k];
        if (f.size() - 1 > options.substitution_limit) continue;
        if (best_poly < polys.size() && f.size() >= polys[best_poly].size()) continue;
        if (f.size() == 2 && f.terms().begin()->first.empty()) continue;  // a unit relation itself
        bool found = false;
        for (const auto& [m, c] : f.terms()) {
          if (m.size() != 2 || m[0] == m[1]) continue;
          for (int side = 0; side < 2 && !found; ++side) {
            const std::uint16_t w = m[side], v = m[1 - side];
            if (!units.count(w) || units.at(w).first == v) continue;
            bool alone = true;
            for (const auto& [m2, c2] : f.terms())
              if (m2 != m && occurrences(m2, v)) {
                alone = false;
                break;
              }
            if (alone) {
              best_poly = k;
              best_var = v;
              unit = w;
              found = true;
            }
          }
          if (found) break;
        }
      }
    }
    if (best_poly < polys.size()) {
      const FpPoly& f = polys[best_poly];
      FpPoly r;
      if (!unit) {
        fp_t c = f.terms().at(FpMono{best_var});
        fp_t scale = fp_neg(fp_inv(c, p), p);
        for (const auto& [m, x] : f.terms())
          if (!(m.size() == 1 && m[0] == best_var)) r.add_term(m, fp_mul(x, scale, p), p);
      } else {
        const FpMono wv = fp_mono_mul(FpMono{*unit}, FpMono{best_var});
        const auto [u, k] = units.at(*unit);
        fp_t scale = fp_neg(fp_inv(fp_mul(f.terms().at(wv), k, p), p), p);
        for (const auto& [m, x] : f.terms())
          if (m != wv) r.add_term(fp_mono_mul(m, FpMono{u}), fp_mul(x, scale, p), p);
      }
      std::vector<FpPoly> powers{FpPoly::constant(1), r};
      std::vector<FpPoly> next;
      for (std::size_t k = 0; k < polys.size(); ++k) {
        if (k == best_poly) continue;
        bool uses = std::any_of(polys[k].terms().begin(), polys[k].terms().end(),
                                [&](const auto& t) { return occurrences(t.first, best_var) > 0; });
        FpPoly g = uses ? substitute(polys[k], best_var, r, powers, p) : std::move(polys[k]);
        if (g.is_zero()) continue;
        if (g.is_constant()) return std::nullopt;
        next.push_back(std::move(g));
      }
      state[best_var] = VarState::Eliminated;
      polys = std::move(next);
      changed = true;
    }
  }

  // Blocks of variables connected through equations.
  std::vector<std::size_t> parent(nvars);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> present(nvars, 0);
  for (const auto& f : polys) {
    std::size_t first = nvars;
    for (const auto& [m, c] : f.terms())
      for (auto v : m) {
        present[v] = 1;
        if (first == nvars) first = v;
        parent[find(v)] = find(first);
      }
  }
  long dim = 0;
  std::size_t zero = 0, elim = 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (state[v] == VarState::Zero) ++zero;
    else if (state[v] == VarState::Eliminated) ++elim;
    else if (!present[v]) ++dim;
  }
  std::unordered_map<std::size_t, std::pair<std::vector<const FpPoly*>, std::vector<std::uint16_t>>> blocks;
  if (options.split_blocks) {
    for (std::size_t v = 0; v < nvars; ++v)
      if (present[v]) blocks[find(v)].second.push_back(static_cast<std::uint16_t>(v));
    for (const auto& f : polys) blocks[find(f.terms().rbegin()->first.front())].first.push_back(&f);
  } else if (!polys.empty()) {
    auto& b = blocks[0];
    for (std::size_t v = 0; v < nvars; ++v)
      if (present[v]) b.second.push_back(static_cast<std::uint16_t>(v));
    for (const auto& f : polys) b.first.push_back(&f);
  }
  if (stats) {
    stats->zero_vars += zero;
    stats->eliminated_vars += elim;
    stats->blocks += blocks.size();
  }
  // Smaller blocks first: an empty block settles the answer early.
  std::vector<const std::pair<std::vector<const FpPoly*>, std::vector<std::uint16_t>>*> order;
  for (const auto& [k, b] : blocks) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->second.size() < b->second.size() || (a->second.size() == b->second.size() && a->second < b->second);
  });
  for (const auto* b : order) {
    if (stats) stats->largest_block = std::max(stats->largest_block, b->second.size());
    auto d = dispatch_block(b->first, b->second, p, options, stats);
    if (!d) return std::nullopt;
    dim += *d;
  }
  return dim;
}

std::vector<FpPoly> groebner_basis(const std::vector<FpPoly>& system, std::size_t nvars, fp_t p,
                                   const GroebnerOptions& options) {
  if (nvars > 128) throw Error(ErrorKind::BudgetExceeded, "too many variables for groebner_basis");
  std::vector<std::uint16_t> vars(nvars);
  std::iota(vars.begin(), vars.end(), 0);
  std::unordered_map<std::uint16_t, std::size_t> index;
  for (std::size_t i = 0; i < nvars; ++i) index[static_cast<std::uint16_t>(i)] = i;
  std::vector<Poly<128>> input;
  for (const auto& f : system)
    if (!f.is_zero()) input.push_back(to_dense<128>(f, index));
  Buchberger<128> bb(p, options);
  if (!bb.run(std::move(input))) return {FpPoly::constant(1)};
  std::vector<FpPoly> out;
  for (const auto* g : bb.basis()) out.push_back(to_sparse<128>(*g, vars, p));
  return out;
}

}  // namespace mldforge
