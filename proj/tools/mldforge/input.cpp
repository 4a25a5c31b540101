#include "input.hpp"

#include <numeric>
#include <sstream>

namespace mldforge::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string as_text(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad(what + " must be a string or an integer");
}

unsigned as_unsigned(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(what + " must be a non-negative integer");
  return static_cast<unsigned>(v.get<long long>());
}

Rational as_rational(const json& v, const std::string& what) {
  try {
    return Rational::parse(as_text(v, what));
  } catch (const Error&) {
    bad(what + " must be an integer or a string p/q");
  }
}

const json& require_array(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  return v;
}

FiniteGroup parse_group(const json& g, unsigned& order, std::size_t cap) {
  if (!g.is_object()) bad("group must be an object");
  if (const json* c = find(g, "cyclic")) {
    unsigned r = as_unsigned(c->at("r"), "group.cyclic.r");
    if (r == 0) bad("group.cyclic.r must be positive");
    std::vector<long> w;
    for (const auto& x : require_array(c->at("weights"), "group.cyclic.weights")) {
      if (!x.is_number_integer()) bad("group.cyclic.weights must be integers");
      w.push_back(x.get<long>());
    }
    if (w.empty()) bad("group.cyclic.weights must not be empty");
    order = std::lcm(order, r);
    return cyclic_group(r, w);
  }
  const json* gens = find(g, "generators");
  if (!gens) bad("group needs `cyclic` or `generators`");
  std::vector<Matrix> mats;
  for (const auto& m : require_array(*gens, "group.generators")) {
    std::vector<std::vector<CycloScalar>> rows;
    for (const auto& row : require_array(m, "generator")) {
      rows.emplace_back();
      for (const auto& e : require_array(row, "generator row")) rows.back().push_back(parse_scalar(as_text(e, "matrix entry"), order));
    }
    if (rows.empty() || rows.size() != rows.front().size()) bad("generators must be square matrices");
    for (const auto& r : rows)
      if (r.size() != rows.size()) bad("generators must be square matrices");
    mats.emplace_back(rows);
  }
  if (mats.empty()) bad("group.generators must not be empty");
  for (const auto& m : mats)
    if (m.rows() != mats.front().rows()) bad("generators have different sizes");
  return close_group(mats, cap);
}

std::vector<SparsePoly> parse_polys(const json& arr, std::size_t n, unsigned order, const std::string& what) {
  std::vector<SparsePoly> out;
  for (const auto& s : require_array(arr, what)) {
    if (!s.is_string()) bad(what + " entries must be strings");
    out.push_back(parse_poly(s.get<std::string>(), n, order));
  }
  return out;
}

Vector parse_point(const json& arr, std::size_t n, unsigned order) {
  Vector v;
  for (const auto& x : require_array(arr, "point")) v.push_back(parse_scalar(as_text(x, "point coordinate"), order));
  if (v.size() != n) bad("point must have " + std::to_string(n) + " coordinates");
  return v;
}

TPoly to_tpoly(const SparsePoly& p, std::size_t n) {
  TPoly r(n);
  for (const auto& [mono, c] : p.terms()) {
    Monomial x(n);
    for (std::size_t i = 0; i < n; ++i) x.exps[i] = mono.exps[i];
    r.add_term(x, Rational(static_cast<long>(mono.exps[n])), c);
  }
  return r;
}

std::vector<TPoly> parse_tpolys(const json& arr, std::size_t n, unsigned order, const std::string& what) {
  std::vector<TPoly> out;
  for (const auto& s : require_array(arr, what)) {
    if (!s.is_string()) bad(what + " entries must be strings");
    out.push_back(to_tpoly(parse_poly(s.get<std::string>(), ParseOptions{n, order, true}), n));
  }
  return out;
}

void parse_options(const json& o, MldOptions& opt) {
  if (!o.is_object()) bad("options must be an object");
  if (const json* lv = find(o, "jet_levels")) {
    require_array(*lv, "options.jet_levels");
    if (lv->size() != 2) bad("options.jet_levels must be [min, max]");
    opt.jet_min = as_unsigned((*lv)[0], "options.jet_levels");
    opt.jet_max = as_unsigned((*lv)[1], "options.jet_levels");
    if (opt.jet_min > opt.jet_max) bad("options.jet_levels must be increasing");
  }
  if (const json* b = find(o, "b1_max")) opt.b1_max = static_cast<int>(as_unsigned(*b, "options.b1_max"));
  if (const json* b = find(o, "b2_max")) opt.b2_max = static_cast<int>(as_unsigned(*b, "options.b2_max"));
  if (const json* b = find(o, "ip_box")) opt.ip_box = std::max(1u, as_unsigned(*b, "options.ip_box"));
  if (const json* b = find(o, "spair_budget")) opt.gb.spair_budget = std::max(1u, as_unsigned(*b, "options.spair_budget"));
  if (const json* t = find(o, "threads")) opt.threads = as_unsigned(*t, "options.threads");
  if (const json* p = find(o, "primes")) {
    for (const auto& x : require_array(*p, "options.primes")) opt.primes.push_back(as_unsigned(x, "options.primes"));
  }
}

}  // namespace

std::vector<std::uint32_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v > 0xffffffffUL) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      bad("bad prime `" + item + "`");
    }
  }
  if (out.empty()) bad("empty prime list");
  return out;
}

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) bad("input must be a JSON object");
  const json* ver = find(doc, "schema_version");
  if (!ver) bad("schema_version is required");
  if (!ver->is_number_integer() || ver->get<int>() != kSchemaVersion)
    bad("unsupported schema_version; expected " + std::to_string(kSchemaVersion));

  Problem pb;
  if (const json* f = find(doc, "field")) {
    if (const json* m = find(*f, "cyclotomic_order")) pb.field_order = std::max(1u, as_unsigned(*m, "field.cyclotomic_order"));
  }
  std::size_t cap = kDefaultGroupCap;
  if (const json* o = find(doc, "options")) {
    parse_options(*o, pb.options);
    if (const json* c = find(*o, "group_cap")) cap = as_unsigned(*c, "options.group_cap");
  }
  const json* g = find(doc, "group");
  if (!g) bad("group is required");
  Presentation& p = pb.presentation;
  p.group = parse_group(*g, pb.field_order, cap);
  const std::size_t N = p.group.dimension();
  const unsigned m = pb.field_order;

  if (const json* eqs = find(doc, "equations")) p.equations = parse_polys(*eqs, N, m, "equations");
  if (const json* ideal = find(doc, "ideal")) {
    for (const auto& fac : require_array(*ideal, "ideal")) {
      if (!fac.is_object()) bad("ideal entries must be objects");
      IdealFactor f;
      if (const json* e = find(fac, "exp")) f.exponent = as_rational(*e, "ideal.exp");
      if (const json* r = find(fac, "root")) f.root = parse_polys(*r, N, m, "ideal.root");
      if (const json* gs = find(fac, "gens")) f.gens = parse_polys(*gs, N, m, "ideal.gens");
      if (f.gens.empty() && !f.root.empty()) {
        SparsePoly prod = SparsePoly::constant(N, CycloScalar(1));
        for (const auto& r : f.root) prod = prod * r;
        f.gens = {prod.pow(p.group.order())};
      }
      p.ideal.factors.push_back(std::move(f));
    }
  }
  if (const json* pt = find(doc, "point")) p.point = parse_point(*pt, N, m);
  if (const json* flags = find(doc, "flags")) {
    if (const json* k = find(*flags, "klt")) p.flags.klt = k->get<bool>();
    if (const json* r = find(*flags, "regular_sequence")) p.flags.regular_sequence = r->get<bool>();
  }
  if (const json* d = find(doc, "divisor")) {
    if (!d->is_string()) bad("divisor must be a string");
    pb.divisor = parse_poly(d->get<std::string>(), N, m);
  }
  if (const json* pts = find(doc, "points"))
    for (const auto& pt : require_array(*pts, "points")) pb.points.push_back(parse_point(pt, N, m));
  if (const json* j = find(doc, "jets")) {
    JetsQuery q;
    if (const json* lv = find(*j, "levels"))
      for (const auto& x : require_array(*lv, "jets.levels")) q.levels.push_back(as_unsigned(x, "jets.levels"));
    if (q.levels.empty()) bad("jets.levels must not be empty");
    if (const json* b = find(*j, "base")) {
      const std::string s = b->get<std::string>();
      if (s == "k") q.base = JetBase::OverK;
      else if (s == "k[t]") q.base = JetBase::OverKt;
      else bad("jets.base must be \"k\" or \"k[t]\"");
    }
    if (const json* e = find(*j, "equations")) q.equations = parse_tpolys(*e, N, m, "jets.equations");
    else
      for (const auto& f : p.equations) q.equations.push_back(TPoly::from_poly(f));
    if (const json* cs = find(*j, "contact"))
      for (const auto& c : require_array(*cs, "jets.contact")) {
        ContactClause cl;
        cl.gens = parse_tpolys(c.at("gens"), N, m, "jets.contact.gens");
        const std::string mode = c.value("mode", std::string("at-least"));
        if (mode == "at-least") cl.mode = ContactMode::AtLeast;
        else if (mode == "exactly") cl.mode = ContactMode::Exactly;
        else bad("jets.contact.mode must be \"at-least\" or \"exactly\"");
        cl.order = as_unsigned(c.at("order"), "jets.contact.order");
        q.contact.clauses.push_back(std::move(cl));
      }
    pb.jets = std::move(q);
  }
  return pb;
}

}  // namespace mldforge::cli
