#pragma once

// Parameter sweeps. A sweep spec is a key/value text document:
//
//   # comment
//   family = kobayashi12
//   e      = 3..10
//   g      = 0..3, 5
//   format = csv          (optional)
//   cap    = 1000000      (optional, maximum number of points)
//
// Values are inclusive ranges `a..b`, single integers, or comma-separated
// mixtures of both. A range with a > b is empty. Parameters not listed keep
// their defaults.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "families.hpp"
#include "invariants.hpp"
#include "report.hpp"
#include "report_io.hpp"

namespace slopelab {

inline constexpr std::size_t kDefaultSweepCap = 1'000'000;

struct SweepSpec {
  Family family = Family::abelian_base;
  /// Values per parameter name, in FamilyParams::names order once parsed.
  std::map<std::string, std::vector<int>> values;
  std::optional<Format> format;
  std::size_t cap = kDefaultSweepCap;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& s, const std::string& where) {
  std::string t = trim(s);
  if (t.empty()) throw RangeError("empty value in " + where);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    throw RangeError("not an integer in " + where + ": '" + t + "'");
  }
  if (used != t.size()) throw RangeError("not an integer in " + where + ": '" + t + "'");
  return v;
}

inline std::vector<int> parse_values(const std::string& text, const std::string& key, std::size_t limit) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item, key));
      continue;
    }
    int lo = parse_int(item.substr(0, dots), key);
    int hi = parse_int(item.substr(dots + 2), key);
    if (hi >= lo && static_cast<long long>(hi) - lo + 1 > static_cast<long long>(limit)) {
      throw CapacityError("range for '" + key + "' exceeds the point cap",
                          static_cast<std::size_t>(static_cast<long long>(hi) - lo + 1), limit);
    }
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline SweepSpec parse_sweep_spec(std::istream& in) {
  SweepSpec spec;
  std::optional<Family> family;
  std::map<std::string, std::string> raw;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw RangeError("sweep spec line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw RangeError("sweep spec line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    if (key == "family") {
      family = parse_family(value);
    } else if (key == "format") {
      spec.format = parse_format(value);
    } else if (key == "cap") {
      int c = detail::parse_int(value, "cap");
      if (c < 0) throw RangeError("cap must be non-negative");
      spec.cap = static_cast<std::size_t>(c);
    } else {
      raw[key] = value;
    }
  }
  if (!family) throw RangeError("sweep spec: missing 'family'");
  spec.family = *family;
  auto names = FamilyParams::names(spec.family);
  for (const auto& [key, value] : raw) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw RangeError("sweep spec: parameter '" + key + "' does not apply to family " + family_name(spec.family));
    }
    spec.values[key] = detail::parse_values(value, key, spec.cap);
  }
  FamilyParams defaults;
  defaults.family = spec.family;
  for (const auto& k : names) {
    if (!spec.values.count(k)) spec.values[k] = {defaults.get(k)};
  }
  return spec;
}

inline SweepSpec parse_sweep_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_spec(in);
}

/// Number of points, saturating at SIZE_MAX.
inline std::size_t sweep_size(const SweepSpec& spec) {
  auto names = FamilyParams::names(spec.family);
  std::size_t total = 1;
  for (const auto& k : names) {
    std::size_t m = spec.values.at(k).size();
    if (m == 0) return 0;
    total = total > SIZE_MAX / m ? SIZE_MAX : total * m;
  }
  return total;
}

/// Points in lexicographic order of FamilyParams::names. Every point is
/// validated; the first out-of-domain point throws RangeError.
inline std::vector<FamilyParams> sweep_points(const SweepSpec& spec) {
  std::size_t count = sweep_size(spec);
  if (count > spec.cap) throw CapacityError("sweep exceeds the point cap", count, spec.cap);
  auto names = FamilyParams::names(spec.family);
  std::vector<FamilyParams> points;
  if (count == 0) return points;
  points.reserve(count);
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    FamilyParams p;
    p.family = spec.family;
    for (std::size_t i = 0; i < names.size(); ++i) p.set(names[i], spec.values.at(names[i])[idx[i]]);
    p.validate();
    points.push_back(p);
    std::size_t i = names.size();
    while (i-- > 0) {
      if (++idx[i] < spec.values.at(names[i]).size()) break;
      idx[i] = 0;
      if (i == 0) return points;
    }
  }
}

struct SweepSummary {
  std::size_t points = 0;
  std::size_t holds = 0;
  std::size_t violated = 0;
  std::size_t equality = 0;
  std::size_t inapplicable = 0;
};

struct SweepResult {
  Family family = Family::abelian_base;
  std::vector<InvariantsReport> rows;
  SweepSummary summary;  // counts of the slope-inequality verdict
};

/// Evaluates every point on up to `jobs` worker threads. Rows keep the
/// lexicographic point order regardless of scheduling.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 0) {
  auto points = sweep_points(spec);
  SweepResult res;
  res.family = spec.family;
  res.rows.resize(points.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, points.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      try {
        res.rows[i] = invariants(points[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  res.summary.points = res.rows.size();
  for (const auto& r : res.rows) {
    const Verdict* v = r.find("slope_inequality");
    switch (v ? v->status : Status::inapplicable) {
      case Status::holds:
        ++res.summary.holds;
        break;
      case Status::violated:
        ++res.summary.violated;
        break;
      case Status::equality:
        ++res.summary.equality;
        break;
      case Status::inapplicable:
        ++res.summary.inapplicable;
        break;
    }
  }
  return res;
}

inline std::string summary_line(const SweepSummary& s) {
  return "summary: points=" + std::to_string(s.points) + " HOLDS=" + std::to_string(s.holds) +
         " VIOLATED=" + std::to_string(s.violated) + " EQUALITY=" + std::to_string(s.equality) +
         " INAPPLICABLE=" + std::to_string(s.inapplicable);
}

inline std::string render_sweep(const SweepResult& res, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json: {
      Json j;
      j["schema_version"] = kReportSchemaVersion;
      j["family"] = family_name(res.family);
      Json rows = Json::array();
      for (const auto& r : res.rows) rows.push_back(report_to_json(r));
      j["rows"] = rows;
      Json s;
      s["points"] = res.summary.points;
      s["HOLDS"] = res.summary.holds;
      s["VIOLATED"] = res.summary.violated;
      s["EQUALITY"] = res.summary.equality;
      s["INAPPLICABLE"] = res.summary.inapplicable;
      j["summary"] = s;
      os << render_json(j);
      break;
    }
    case Format::csv:
      os << csv_header(res.family);
      for (const auto& r : res.rows) os << csv_row(r);
      os << "# " << summary_line(res.summary) << '\n';
      break;
    case Format::text: {
      auto names = FamilyParams::names(res.family);
      std::vector<std::string> head = names;
      for (const char* h : {"K_{X/B}^n", "deg f_*w", "K_F^{n-1}", "p_g", "slope", "slope inequality"}) {
        head.emplace_back(h);
      }
      std::vector<std::vector<std::string>> table;
      for (const auto& r : res.rows) {
        std::vector<std::string> row;
        for (const auto& k : names) row.push_back(std::to_string(r.params.get(k)));
        row.push_back(r.k_rel_n.str());
        row.push_back(r.deg_push.str());
        row.push_back(r.kf_top.str());
        row.push_back(r.pg_f.str());
        row.push_back(r.slope ? to_string(*r.slope) : "n/a");
        const Verdict* v = r.find("slope_inequality");
        row.push_back(v ? v->label() : "");
        table.push_back(std::move(row));
      }
      std::vector<std::size_t> width(head.size());
      for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
      for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          os << std::right << std::setw(static_cast<int>(width[i])) << row[i] << (i + 1 < row.size() ? "  " : "\n");
        }
      };
      emit(head);
      for (const auto& row : table) emit(row);
      os << summary_line(res.summary) << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace slopelab
