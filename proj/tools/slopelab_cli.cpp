// slopelab: evaluate fibration families, run parameter sweeps, compare slope bounds.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <string>

#include <slopelab/slopelab.hpp>

namespace {

using namespace slopelab;

constexpr int kExitParam = 2;
constexpr int kExitCapacity = 3;

std::string render_report(const InvariantsReport& r, Format f) {
  switch (f) {
    case Format::json:
      return render_json(report_to_json(r));
    case Format::csv:
      return csv_header(r.params.family) + csv_row(r);
    case Format::text:
      break;
  }
  return render_text(r);
}

std::string render_table1(int kf2, int pg, Format f) {
  Table1Row row = table1_bounds(kf2, pg);
  switch (f) {
    case Format::json:
      return render_json(table1_to_json(kf2, pg, row));
    case Format::csv:
      return table1_csv(kf2, pg, row);
    case Format::text:
      break;
  }
  return table1_text(kf2, pg, row);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + out + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slope inequalities for fibrations over curves"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format_name = "text";
  std::string out;
  auto* format_opt = app.add_option("--format", format_name, "Output format")
                         ->check(CLI::IsMember({"text", "json", "csv"}))
                         ->capture_default_str();
  app.add_option("--out", out, "Write output to this file instead of stdout");

  auto* fam = app.add_subcommand("family", "Invariants and verdicts of one family member");
  std::string family_arg;
  FamilyParams p;
  fam->add_option("name", family_arg, "abelian-base, p1-base, kobayashi12 or surf23")->required();
  std::map<std::string, CLI::Option*> param_opts{
      {"n", fam->add_option("--n", p.n, "Total dimension (abelian-base)")},
      {"g", fam->add_option("--g", p.g, "Genus of the base curve")},
      {"chi_a", fam->add_option("--chi-a", p.chi_a, "h^0(A, D_A) of the abelian factor (abelian-base)")},
      {"deg_da", fam->add_option("--deg-da", p.deg_da, "Degree of D_A on P^1 (p1-base)")},
      {"deg_db", fam->add_option("--deg-db", p.deg_db, "Degree of D_B on the base curve (abelian-base, p1-base)")},
      {"e", fam->add_option("--e", p.e, "Degree of D_B (kobayashi12)")},
      {"deg_d2", fam->add_option("--deg-d2", p.deg_d2, "Degree of D_2 (surf23)")},
  };

  auto* sw = app.add_subcommand("sweep", "Evaluate a family over a parameter grid");
  std::string spec_path;
  unsigned jobs = 0;
  std::optional<long long> cap;
  sw->add_option("--spec", spec_path, "Sweep spec file")->required();
  sw->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
  sw->add_option("--cap", cap, "Maximum number of points (overrides the spec)");

  auto* t1 = app.add_subcommand("table1", "Previous and new slope lower bounds for (K_F^2, p_g(F))");
  int kf2 = 0, pg = 0;
  t1->add_option("--kf2", kf2, "K_F^2")->required();
  t1->add_option("--pg", pg, "p_g(F)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParam;
  }

  try {
    Format format = parse_format(format_name);
    if (fam->parsed()) {
      p.family = parse_family(family_arg);
      auto names = FamilyParams::names(p.family);
      for (const auto& [key, opt] : param_opts) {
        if (opt->count() && std::find(names.begin(), names.end(), key) == names.end()) {
          throw RangeError(opt->get_name() + " does not apply to family " + family_arg);
        }
      }
      auto r = invariants(p);
      emit(render_report(r, format), out);
      if (format != Format::text) {
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
      }
    } else if (sw->parsed()) {
      std::ifstream in(spec_path);
      if (!in) throw RangeError("cannot read sweep spec '" + spec_path + "'");
      SweepSpec spec = parse_sweep_spec(in);
      if (cap) {
        if (*cap < 0) throw RangeError("--cap must be non-negative");
        spec.cap = static_cast<std::size_t>(*cap);
      }
      if (format_opt->count() == 0 && spec.format) format = *spec.format;
      emit(render_sweep(run_sweep(spec, jobs), format), out);
    } else if (t1->parsed()) {
      emit(render_table1(kf2, pg, format), out);
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << " (" << e.requested() << " points requested, cap " << e.cap() << ")\n";
    return kExitCapacity;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParam;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParam;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParam;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
