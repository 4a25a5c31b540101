#include "render.hpp"

#include <algorithm>

namespace mldforge::cli {

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

template <class T, class F>
std::vector<std::string> map_str(const std::vector<T>& xs, F f) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

ojson witness_json(const MldWitness& w) {
  ojson j = ojson::object();
  if (w.class_index) j["class"] = *w.class_index;
  if (w.element) j["element"] = *w.element;
  if (!w.u.empty()) j["u"] = map_str(w.u, [](const Rational& r) { return r.str(); });
  if (!w.b.empty()) j["b"] = w.b;
  if (w.level) j["level"] = *w.level;
  return j;
}

std::string witness_text(const MldWitness& w) {
  std::vector<std::string> parts;
  if (w.class_index) parts.push_back("class " + std::to_string(*w.class_index));
  if (!w.u.empty()) parts.push_back("u = (" + join(map_str(w.u, [](const Rational& r) { return r.str(); }), ", ") + ")");
  if (!w.b.empty()) parts.push_back("b = (" + join(map_str(w.b, [](unsigned b) { return std::to_string(b); }), ", ") + ")");
  if (w.level) parts.push_back("level " + std::to_string(*w.level));
  return parts.empty() ? "-" : join(parts, ", ");
}

}  // namespace

std::string point_text(const Vector& v, unsigned display_order) {
  return "(" + join(map_str(v, [&](const CycloScalar& x) { return x.str(display_order); }), ", ") + ")";
}

ojson to_json(const MldReport& r) {
  ojson j;
  j["value"] = r.value.str();
  j["status"] = std::string(to_string(r.status));
  j["engine"] = r.engine;
  j["witness"] = witness_json(r.witness);
  ojson terms = ojson::array();
  for (const auto& t : r.terms) {
    ojson tj;
    tj["class"] = t.class_index;
    tj["element"] = t.element;
    tj["value"] = t.value.str();
    tj["status"] = std::string(to_string(t.status));
    tj["witness"] = witness_json(t.witness);
    terms.push_back(tj);
  }
  j["terms"] = terms;
  j["primes"] = r.primes;
  j["diagnostics"] = r.diagnostics;
  return j;
}

ojson to_json(const ValidationReport& v) {
  ojson j;
  j["accepted"] = v.accepted();
  ojson fs = ojson::array();
  for (const auto& f : v.findings) {
    ojson fj;
    fj["kind"] = f.rejection ? std::string(to_string(f.kind)) : std::string("Note");
    fj["rejection"] = f.rejection;
    if (f.element) fj["element"] = *f.element;
    fj["message"] = f.message;
    fs.push_back(fj);
  }
  j["findings"] = fs;
  return j;
}

ojson to_json(const BothSides& b) {
  ojson j;
  j["verdict"] = std::string(to_string(b.verdict));
  j["lhs"] = to_json(b.lhs);
  j["rhs"] = to_json(b.rhs);
  return j;
}

ojson to_json(const LscScan& s, unsigned display_order) {
  ojson j;
  j["holds"] = s.holds;
  ojson rows = ojson::array();
  for (const auto& r : s.rows) {
    ojson rj;
    rj["point"] = map_str(r.point, [&](const CycloScalar& x) { return x.str(display_order); });
    rj["special"] = r.special;
    rj["report"] = to_json(r.report);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  j["notes"] = s.notes;
  return j;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      line += rows[i][c];
      if (c + 1 < rows[i].size()) line += std::string(width[c] - rows[i][c].size() + 2, ' ');
    }
    out += line + "\n";
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
      out += std::string(total, '-') + "\n";
    }
  }
  return out;
}

std::string report_table(const MldReport& r) {
  std::string out = "mld      " + r.value.str() + "\nstatus   " + std::string(to_string(r.status)) + "\nengine   " +
                    r.engine + "\nwitness  " + witness_text(r.witness) + "\n";
  if (!r.terms.empty()) {
    std::vector<std::vector<std::string>> rows{{"class", "element", "value", "status", "witness"}};
    for (const auto& t : r.terms)
      rows.push_back({std::to_string(t.class_index), std::to_string(t.element), t.value.str(),
                      std::string(to_string(t.status)), witness_text(t.witness)});
    out += "\n" + table(rows);
  }
  if (!r.diagnostics.empty()) {
    out += "\n";
    for (const auto& d : r.diagnostics) out += "note: " + d + "\n";
  }
  return out;
}

std::string findings_table(const ValidationReport& v) {
  std::string out = std::string(v.accepted() ? "accepted" : "rejected") + "\n";
  if (v.findings.empty()) return out;
  std::vector<std::vector<std::string>> rows{{"kind", "element", "message"}};
  for (const auto& f : v.findings)
    rows.push_back({f.rejection ? std::string(to_string(f.kind)) : "Note", f.element ? std::to_string(*f.element) : "-", f.message});
  return out + "\n" + table(rows);
}

}  // namespace mldforge::cli
