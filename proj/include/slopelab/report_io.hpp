#pragma once

// Report rendering: JSON (exact {num, den} rationals plus a non-authoritative
// decimal), CSV rows and aligned text. JSON output re-parses to an equal
// InvariantsReport.

#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "families.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "verdicts.hpp"

namespace slopelab {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw RangeError("unknown format '" + s + "' (expected text, json, csv)");
}

inline std::string decimal_string(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.convert_to<double>());
  return buf;
}

inline Json rational_to_json(const Rational& q) {
  Json j;
  j["num"] = numerator_of(q).str();
  j["den"] = denominator_of(q).str();
  if (!is_integral(q)) j["decimal"] = decimal_string(q);
  return j;
}

inline Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw StructuralError("expected an exact {num, den} object");
  }
  return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

inline Integer integer_from_json(const Json& j) { return to_integer(rational_from_json(j), "integer field"); }

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["name"] = v.name;
  j["status"] = status_name(v.status);
  j["label"] = v.label();
  j["lhs"] = rational_to_json(v.lhs);
  j["rhs"] = rational_to_json(v.rhs);
  j["tag"] = v.tag;
  j["detail"] = v.detail;
  return j;
}

inline Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.name = j.at("name").get<std::string>();
  v.status = parse_status(j.at("status").get<std::string>());
  v.lhs = rational_from_json(j.at("lhs"));
  v.rhs = rational_from_json(j.at("rhs"));
  v.tag = j.at("tag").get<std::string>();
  v.detail = j.at("detail").get<std::string>();
  return v;
}

inline Json report_to_json(const InvariantsReport& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["family"] = family_name(r.params.family);
  Json params = Json::object();
  for (const auto& k : FamilyParams::names(r.params.family)) params[k] = r.params.get(k);
  j["params"] = params;
  j["n"] = r.n;
  j["g"] = r.g;
  Json inv;
  inv["K_rel_n"] = rational_to_json(Rational(r.k_rel_n));
  inv["deg_push"] = rational_to_json(Rational(r.deg_push));
  inv["rank"] = rational_to_json(Rational(r.rank));
  inv["KF_top"] = rational_to_json(Rational(r.kf_top));
  inv["pg_F"] = rational_to_json(Rational(r.pg_f));
  inv["chi"] = r.chi ? rational_to_json(Rational(*r.chi)) : Json(nullptr);
  inv["K_abs_n"] = rational_to_json(Rational(r.k_abs_n));
  inv["slope"] = r.slope ? rational_to_json(*r.slope) : Json(nullptr);
  j["invariants"] = inv;
  j["pushforward"] = r.pushforward;
  Json vs = Json::array();
  for (const auto& v : r.verdicts) vs.push_back(verdict_to_json(v));
  j["verdicts"] = vs;
  j["warnings"] = r.warnings;
  return j;
}

inline InvariantsReport report_from_json(const Json& j) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kReportSchemaVersion) {
    throw StructuralError("unsupported report schema version");
  }
  InvariantsReport r;
  r.params.family = parse_family(j.at("family").get<std::string>());
  for (const auto& [k, v] : j.at("params").items()) r.params.set(k, v.get<int>());
  r.n = j.at("n").get<int>();
  r.g = j.at("g").get<int>();
  if (r.params.family == Family::abelian_base) r.params.n = r.n;
  r.params.g = r.g;
  const auto& inv = j.at("invariants");
  r.k_rel_n = integer_from_json(inv.at("K_rel_n"));
  r.deg_push = integer_from_json(inv.at("deg_push"));
  r.rank = integer_from_json(inv.at("rank"));
  r.kf_top = integer_from_json(inv.at("KF_top"));
  r.pg_f = integer_from_json(inv.at("pg_F"));
  if (!inv.at("chi").is_null()) r.chi = integer_from_json(inv.at("chi"));
  r.k_abs_n = integer_from_json(inv.at("K_abs_n"));
  if (!inv.at("slope").is_null()) r.slope = rational_from_json(inv.at("slope"));
  r.pushforward = j.at("pushforward").get<std::string>();
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// CSV

inline const std::vector<std::string>& csv_verdict_columns() {
  static const std::vector<std::string> cols{"slope_inequality", "slope_four_thirds", "slope_two", "slope_chx",
                                             "noether_severi"};
  return cols;
}

inline std::string csv_header(Family f) {
  std::string h = "family";
  for (const auto& k : FamilyParams::names(f)) h += "," + k;
  h += ",n,K_rel_n,deg_push,rank,KF_top,pg_F,chi,K_abs_n,slope";
  for (const auto& c : csv_verdict_columns()) h += "," + c;
  return h + "\n";
}

inline std::string csv_row(const InvariantsReport& r) {
  std::ostringstream os;
  os << family_name(r.params.family);
  for (const auto& k : FamilyParams::names(r.params.family)) os << ',' << r.params.get(k);
  os << ',' << r.n << ',' << r.k_rel_n << ',' << r.deg_push << ',' << r.rank << ',' << r.kf_top << ',' << r.pg_f
     << ',' << (r.chi ? r.chi->str() : "") << ',' << r.k_abs_n << ',' << (r.slope ? to_string(*r.slope) : "");
  for (const auto& c : csv_verdict_columns()) {
    const Verdict* v = r.find(c);
    os << ',' << (v ? v->label() : "");
  }
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Text

inline std::string render_text(const InvariantsReport& r) {
  std::ostringstream os;
  os << "family " << family_name(r.params.family) << " (";
  bool first = true;
  for (const auto& k : FamilyParams::names(r.params.family)) {
    os << (first ? "" : ", ") << k << " = " << r.params.get(k);
    first = false;
  }
  os << ")\n";
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  auto line = [&](const std::string& label, const std::string& value) {
    os << "  " << std::left << std::setw(28) << label << value << '\n';
  };
  line("dimension n", std::to_string(r.n));
  line("base genus g", std::to_string(r.g));
  line("K_{X/B}^n", r.k_rel_n.str());
  line("deg f_* omega_{X/B}", r.deg_push.str());
  line("f_* omega_{X/B}", r.pushforward);
  line("K_F^{n-1}", r.kf_top.str());
  line("p_g(F)", r.pg_f.str());
  line("K_X^n", r.k_abs_n.str());
  line("chi(X, omega_X)", r.chi ? r.chi->str() : "n/a");
  line("slope", r.slope ? to_string(*r.slope) : "n/a");
  os << "verdicts:\n";
  for (const auto& v : r.verdicts) {
    os << "  " << std::left << std::setw(20) << v.name << std::setw(20) << v.label();
    if (v.status != Status::inapplicable) os << to_string(v.lhs) << " vs " << to_string(v.rhs);
    if (!v.detail.empty()) os << (v.status != Status::inapplicable ? "  " : "") << "(" << v.detail << ")";
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Slope bound comparison table

inline Json table1_to_json(int kf2, int pg, const Table1Row& row) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["KF2"] = kf2;
  j["pg"] = pg;
  j["previous"] = rational_to_json(row.previous);
  j["ours"] = rational_to_json(row.ours);
  j["coincide"] = row.coincide;
  return j;
}

inline std::string table1_csv(int kf2, int pg, const Table1Row& row) {
  return "KF2,pg,previous,ours,coincide\n" + std::to_string(kf2) + "," + std::to_string(pg) + "," +
         to_string(row.previous) + "," + to_string(row.ours) + "," + (row.coincide ? "true" : "false") + "\n";
}

inline std::string table1_text(int kf2, int pg, const Table1Row& row) {
  const std::vector<std::string> head{"K_F^2", "p_g(F)", "Previous bound", "Our bound", "Coincide"};
  const std::vector<std::string> cells{std::to_string(kf2), std::to_string(pg), "s >= " + to_string(row.previous),
                                       "s >= " + to_string(row.ours), row.coincide ? "yes" : "no"};
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = std::max(head[i].size(), cells[i].size());
  auto rule = [&] {
    std::string s = "+";
    for (auto w : width) s += std::string(w + 2, '-') + "+";
    return s + "\n";
  };
  auto row_of = [&](const std::vector<std::string>& v) {
    std::string s = "|";
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += " " + v[i] + std::string(width[i] - v[i].size(), ' ') + " |";
    }
    return s + "\n";
  };
  return rule() + row_of(head) + rule() + row_of(cells) + rule();
}

}  // namespace slopelab
