#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "input.hpp"
#include "render.hpp"

#ifndef MLDFORGE_VERSION
#define MLDFORGE_VERSION "0.0.0"
#endif

namespace mldforge::cli {

namespace {

struct Settings {
  std::string input = "-";
  std::string format = "json";
  std::string primes;
  std::string manifest;
  unsigned threads = 0;
};

struct Outcome {
  ojson json;
  std::string text;
  int code = 0;
  std::vector<std::uint32_t> primes;
};

class Timer {
 public:
  explicit Timer(std::map<std::string, double>& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& engine, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    sink_[engine] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

 private:
  std::map<std::string, double>& sink_;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

std::vector<std::string> exps_text(const std::vector<unsigned>& e) {
  std::vector<std::string> out;
  for (auto x : e) out.push_back(std::to_string(x));
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

unsigned display_order(const Problem& pb) { return std::lcm(pb.field_order, pb.presentation.cyclotomic_order()); }

void add_primes(Outcome& o, const MldReport& r) { o.primes.insert(o.primes.end(), r.primes.begin(), r.primes.end()); }

Outcome report_outcome(const MldReport& r) {
  Outcome o{to_json(r), report_table(r), 0, {}};
  add_primes(o, r);
  return o;
}

Outcome cmd_validate(const Problem& pb, Timer& timer) {
  ValidationReport v = timer.time("validate", [&] { return validate(pb.presentation, pb.options); });
  return {to_json(v), findings_table(v), v.accepted() ? 0 : 2, {}};
}

Outcome cmd_age(const Problem& pb, Timer& timer) {
  const FiniteGroup& g = pb.presentation.group;
  MldReport r = timer.time("age", [&] { return mld_quotient_age(g); });
  Outcome o;
  o.json["d"] = g.order();
  ojson classes = ojson::array();
  std::vector<std::vector<std::string>> rows{{"class", "element", "size", "exponents", "age"}};
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    const auto& cl = g.classes()[ci];
    const EigenData& e = g.eigen(cl.representative);
    const Rational a = age(e, g.order());
    ojson cj;
    cj["class"] = ci;
    cj["element"] = cl.representative;
    cj["size"] = cl.size();
    cj["exponents"] = e.exponents;
    cj["age"] = a.str();
    classes.push_back(cj);
    rows.push_back({std::to_string(ci), std::to_string(cl.representative), std::to_string(cl.size()),
                    "(" + join(exps_text(e.exponents), ", ") + ")/" + std::to_string(g.order()), a.str()});
  }
  o.json["classes"] = classes;
  o.json["mld"] = to_json(r);
  o.text = table(rows) + "\nmld " + r.value.str() + " (" + std::string(to_string(r.status)) + ")\n";
  return o;
}

Outcome cmd_semi(const Problem& pb, Timer& timer) {
  const Presentation& p = pb.presentation;
  const FiniteGroup& g = p.group;
  Outcome o;
  ojson eqs = ojson::array();
  std::vector<std::vector<std::string>> rows{{"equation", "class", "element", "character", "weight"}};
  for (std::size_t k = 0; k < p.equations.size(); ++k) {
    Character ch = timer.time("semi", [&] { return semi_invariant_character(g, p.equations[k]); });
    ojson ej;
    ej["index"] = k + 1;
    ej["d"] = ch.d;
    ojson per = ojson::array();
    for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
      const std::size_t el = g.classes()[ci].representative;
      const unsigned a = ch.exponents[el];
      const Rational w = Rational(static_cast<long>(a)) / Rational(static_cast<long>(ch.d));
      ojson cj;
      cj["class"] = ci;
      cj["element"] = el;
      cj["character"] = a;
      cj["weight"] = w.str();
      per.push_back(cj);
      rows.push_back({std::to_string(k + 1), std::to_string(ci), std::to_string(el),
                      std::to_string(a) + "/" + std::to_string(ch.d), w.str()});
    }
    ej["classes"] = per;
    eqs.push_back(ej);
  }
  o.json["equations"] = eqs;
  o.text = table(rows);
  return o;
}

Outcome cmd_twist(const Problem& pb, Timer& timer) {
  const Presentation& p = pb.presentation;
  const FiniteGroup& g = p.group;
  const unsigned disp = display_order(pb);
  Outcome o;
  ojson classes = ojson::array();
  for (std::size_t ci = 0; ci < g.classes().size(); ++ci) {
    const std::size_t el = g.classes()[ci].representative;
    TwistedScheme ts = timer.time("twist", [&] { return build_twisted_scheme(el, g, p.equations); });
    ojson cj;
    cj["class"] = ci;
    cj["element"] = el;
    cj["exponents"] = ts.exponents;
    cj["age"] = ts.age.str();
    std::vector<std::string> ws, es;
    for (const auto& w : ts.weights) ws.push_back(w.str());
    for (const auto& e : ts.equations) es.push_back(e.str(disp));
    cj["weights"] = ws;
    cj["weight_total"] = ts.weight_total.str();
    cj["equations"] = es;
    classes.push_back(cj);
    o.text += "class " + std::to_string(ci) + " (element " + std::to_string(el) + "), exponents (" +
              join(exps_text(ts.exponents), ", ") + ")/" + std::to_string(ts.d) + ", age " + ts.age.str() +
              ", weights [" + join(ws, ", ") + "]\n";
    for (const auto& e : es) o.text += "  " + e + "\n";
  }
  o.json["classes"] = classes;
  return o;
}

Outcome cmd_mld_quotient(const Problem& pb, Timer& timer) {
  const Presentation& p = pb.presentation;
  const FiniteGroup& g = p.group;
  if (!p.equations.empty()) throw Error(ErrorKind::InvalidInput, "mld-quotient takes no equations; use mld-hyper");
  MldReport by_age = timer.time("age", [&] { return mld_quotient_age(g); });
  if (!g.is_abelian()) {
    if (!p.ideal.is_unit()) throw Error(ErrorKind::NotAbelian, "ideals on non-abelian quotients need mld-pair");
    return report_outcome(by_age);
  }
  MldReport r = timer.time("toric-lattice", [&] { return mld_toric_lattice(g, p.ideal, pb.options); });
  if (p.ideal.is_unit()) {
    if (!(by_age.value == r.value)) throw Error(ErrorKind::InternalError, "age and lattice engines disagree");
    r.diagnostics.push_back("age engine agrees");
  }
  return report_outcome(r);
}

Outcome cmd_mld_pair(const Problem& pb, Timer& timer) {
  const Presentation& p = pb.presentation;
  if (!p.equations.empty()) throw Error(ErrorKind::InvalidInput, "mld-pair takes no equations; use pia-check");
  MldReport r = timer.time("quotient-pair", [&] { return mld_quotient_pair(p.group, p.ideal, pb.options); });
  return report_outcome(r);
}

Outcome cmd_mld_hyper(const Problem& pb, Timer& timer) {
  MldReport r = timer.time("hyperquotient-jets", [&] { return mld_hyperquotient(pb.presentation, pb.options); });
  return report_outcome(r);
}

Outcome both_outcome(const BothSides& b) {
  Outcome o{to_json(b), {}, 0, {}};
  o.text = "verdict  " + std::string(to_string(b.verdict)) + "\n\n[lhs: quotient pair]\n" + report_table(b.lhs) +
           "\n[rhs: hyperquotient]\n" + report_table(b.rhs);
  add_primes(o, b.lhs);
  add_primes(o, b.rhs);
  return o;
}

Outcome cmd_pia_check(const Problem& pb, Timer& timer) {
  return both_outcome(timer.time("pia-check", [&] { return pia_check(pb.presentation, pb.options); }));
}

Outcome cmd_pia_divisor(const Problem& pb, Timer& timer) {
  if (!pb.divisor) throw Error(ErrorKind::InvalidInput, "pia-divisor needs `divisor` in the input");
  return both_outcome(timer.time("pia-divisor", [&] { return pia_divisor(pb.presentation, *pb.divisor, pb.options); }));
}

Outcome cmd_lsc_scan(const Problem& pb, Timer& timer) {
  if (pb.points.empty()) throw Error(ErrorKind::InvalidInput, "lsc-scan needs `points` in the input");
  LscScan s = timer.time("lsc-scan", [&] { return lsc_scan(pb.presentation, pb.points, pb.options); });
  const unsigned disp = display_order(pb);
  Outcome o{to_json(s, disp), {}, 0, {}};
  std::vector<std::vector<std::string>> rows{{"point", "special", "mld", "status"}};
  for (const auto& r : s.rows) {
    rows.push_back({point_text(r.point, disp), r.special ? "yes" : "no", r.report.value.str(),
                    std::string(to_string(r.report.status))});
    add_primes(o, r.report);
  }
  o.text = table(rows) + "\nlower semicontinuity " + (s.holds ? "holds" : "fails") + " on the sample\n";
  for (const auto& n : s.notes) o.text += "note: " + n + "\n";
  return o;
}

Outcome cmd_jets_dim(const Problem& pb, Timer& timer) {
  if (!pb.jets) throw Error(ErrorKind::InvalidInput, "jets-dim needs `jets` in the input");
  const JetsQuery& q = *pb.jets;
  const std::size_t N = pb.presentation.N();
  const std::size_t c = q.equations.size();
  if (c > N) throw Error(ErrorKind::InvalidInput, "more equations than variables");
  const std::size_t n = N - c;
  CylinderOptions co;
  co.levels = q.levels;
  co.primes = pb.options.primes;
  co.gb = pb.options.gb;
  co.threads = pb.options.threads;
  unsigned order = pb.presentation.cyclotomic_order();
  CodimEstimate est = timer.time("jets-dim", [&] { return cylinder_codim(q.equations, q.base, N, n, q.contact, 0, co, order); });
  Outcome o;
  o.primes = est.primes_used;
  ojson levels = ojson::array();
  std::vector<std::vector<std::string>> rows{{"level", "dim", "codim"}};
  for (unsigned m : q.levels) {
    ojson lj;
    lj["level"] = m;
    auto it = est.values.find(m);
    if (it == est.values.end()) {
      lj["dim"] = "unknown";
      lj["codim"] = "unknown";
      rows.push_back({std::to_string(m), "unknown", "unknown"});
    } else if (!it->second) {
      lj["dim"] = "empty";
      lj["codim"] = "inf";
      rows.push_back({std::to_string(m), "empty", "inf"});
    } else {
      const long dim = static_cast<long>((m + 1) * n) - *it->second;
      lj["dim"] = dim;
      lj["codim"] = *it->second;
      rows.push_back({std::to_string(m), std::to_string(dim), std::to_string(*it->second)});
    }
    levels.push_back(lj);
  }
  o.json["n"] = n;
  o.json["levels"] = levels;
  o.json["stabilized"] = est.stabilized;
  o.json["prime_conflict"] = est.prime_conflict;
  o.json["primes"] = est.primes_used;
  o.text = table(rows) + "\nstabilized " + (est.stabilized ? "yes" : "no") + "\n";
  return o;
}

using Handler = std::function<Outcome(const Problem&, Timer&)>;

struct Command {
  const char* name;
  const char* help;
  Handler handler;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = {
      {"validate", "Check the hypotheses on Y = V(f)/G: no pseudo-reflections, semi-invariant equations, small branch locus, complete intersection", cmd_validate},
      {"age", "Ages of the conjugacy classes and the quotient mld min(age + fixed dimension)", cmd_age},
      {"semi", "Characters and weights w_gamma(f) of the equations under each class", cmd_semi},
      {"twist", "Twisted equations of each class: lambda_gamma pullback of f divided by t^w", cmd_twist},
      {"mld-quotient", "mld of A^N/G at the origin from the toric lattice (abelian) or ages", cmd_mld_quotient},
      {"mld-pair", "mld of a quotient pair (A^N/G, a) from arc orders on the twisted spaces", cmd_mld_pair},
      {"mld-hyper", "mld of a hyperquotient singularity from contact loci on the twisted arc spaces", cmd_mld_hyper},
      {"pia-check", "Precise inversion of adjunction: the pair side against the hyperquotient side", cmd_pia_check},
      {"pia-divisor", "Inversion of adjunction with a semi-invariant divisor g added to the equations", cmd_pia_divisor},
      {"lsc-scan", "mld at sample points of Y, testing lower semicontinuity", cmd_lsc_scan},
      {"jets-dim", "Dimensions of jet loci with contact conditions over F_p", cmd_jets_dim},
  };
  return cmds;
}

ojson error_json(const std::string& kind, const std::string& message) {
  ojson f;
  f["kind"] = kind;
  f["rejection"] = true;
  f["message"] = message;
  ojson e;
  e["kind"] = kind;
  e["message"] = message;
  e["findings"] = ojson::array({f});
  return e;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mldforge: exact minimal log discrepancies of quotient and hyperquotient singularities"};
  app.set_version_flag("--version", MLDFORGE_VERSION);
  app.require_subcommand(1);
  Settings s;
  std::string chosen;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", s.input, "Input JSON document, - for standard input")->required();
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--primes", s.primes, "Comma-separated primes (overrides MLDFORGE_PRIMES and the input)");
    sub->add_option("--threads", s.threads, "Worker threads, 0 for the hardware count");
    sub->add_option("--manifest", s.manifest, "Write a run manifest to this file");
    sub->callback([&chosen, name = c.name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << MLDFORGE_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  const bool json_out = s.format == "json";
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    if (json_out) {
      ojson doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = chosen;
      doc["error"] = error_json(kind, message);
      out << doc.dump(2) << "\n";
    }
    err << "error: " << message << "\n";
    return code;
  };

  std::map<std::string, double> timings;
  Timer timer(timings);
  std::string raw;
  Problem pb;
  Outcome result;
  try {
    raw = read_input(s.input);
    nlohmann::json doc = nlohmann::json::parse(raw);
    pb = parse_problem(doc);
    if (const char* env = std::getenv("MLDFORGE_PRIMES"); env && *env) pb.options.primes = parse_prime_list(env);
    if (!s.primes.empty()) pb.options.primes = parse_prime_list(s.primes);
    if (s.threads) pb.options.threads = s.threads;
    for (const auto& c : commands())
      if (chosen == c.name) result = c.handler(pb, timer);
  } catch (const nlohmann::json::parse_error& e) {
    return fail(2, "InvalidInput", std::string("malformed JSON: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(2, "InvalidInput", std::string("bad input document: ") + e.what());
  } catch (const Error& e) {
    return fail(is_rejection(e.kind()) ? 2 : 1, std::string(to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return fail(1, "InternalError", e.what());
  }

  if (json_out) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = chosen;
    doc["result"] = result.json;
    out << doc.dump(2) << "\n";
  } else {
    out << result.text;
  }

  if (!s.manifest.empty()) {
    std::set<std::uint32_t> primes(result.primes.begin(), result.primes.end());
    ojson m;
    m["tool"] = "mldforge";
    m["version"] = MLDFORGE_VERSION;
    m["command"] = chosen;
    m["input_sha256"] = sha256_hex(raw);
    m["primes_used"] = std::vector<std::uint32_t>(primes.begin(), primes.end());
    ojson opt;
    opt["jet_levels"] = {pb.options.jet_min, pb.options.jet_max};
    opt["b1_max"] = pb.options.b1_max;
    opt["b2_max"] = pb.options.b2_max;
    opt["primes"] = pb.options.primes;
    opt["ip_box"] = pb.options.ip_box;
    opt["format"] = s.format;
    m["options"] = opt;
    ojson t = ojson::object();
    for (const auto& [k, v] : timings) t[k] = v;
    m["wall_clock_ms"] = t;
    std::ofstream f(s.manifest);
    if (!f) {
      err << "error: cannot write manifest " << s.manifest << "\n";
      return 1;
    }
    f << m.dump(2) << "\n";
  }
  return result.code;
}

}  // namespace mldforge::cli
