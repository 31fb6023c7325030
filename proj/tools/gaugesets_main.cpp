// gaugesets: scenario-based set-valued statistics from the command line.
//
// Exit codes: 0 success, 1 usage or internal error, 2 gauge parse error,
// 3 schema/format violation, 4 plotting a non-planar model, 5 missing
// H-representation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaugesets/engine.hpp"
#include "gaugesets/errors.hpp"
#include "gaugesets/io.hpp"
#include "gaugesets/scalar_gauge.hpp"

namespace gs = gaugesets;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitGaugeParse = 2;
constexpr int kExitSchema = 3;
constexpr int kExitPlotDim = 4;
constexpr int kExitMissingHrep = 5;

struct InputFlags {
  std::string scenarios_path;
  std::string points_path;
  std::string atom_column;
  int bins = 0;
};

gs::io::ScenarioLoad load_input(const InputFlags& in) {
  if (!in.scenarios_path.empty() && !in.points_path.empty())
    throw gs::FormatError("use exactly one of --scenarios/--points");
  if (!in.scenarios_path.empty()) return gs::io::load_scenarios(in.scenarios_path);
  if (in.points_path.empty()) throw gs::FormatError("one of --scenarios/--points is required");
  const gs::io::CsvTable table = gs::io::read_csv(in.points_path);
  const gs::io::PointColumns cols = gs::io::interpret_points(table, in.atom_column, in.bins);
  gs::PointIngest ingest = gs::from_point_samples(cols.rows, cols.weights, cols.atoms);
  return gs::io::ScenarioLoad{std::move(ingest.model), std::move(ingest.partition),
                              !cols.atoms.empty()};
}

std::vector<gs::Vec> grid_for(const gs::RandomSetModel& model, int n, std::uint64_t seed) {
  gs::GridSpec spec;
  spec.seed = seed;
  if (model.dim() == 2) {
    spec.scheme = gs::GridScheme::Uniform2D;
    spec.n = n > 0 ? n : 720;
  } else if (model.dim() == 3) {
    spec.scheme = gs::GridScheme::Fibonacci;
    spec.n = n > 0 ? n : 2048;
  } else {
    spec.scheme = gs::GridScheme::Random;
    spec.n = n > 0 ? n : 4096;
  }
  return gs::direction_grid(model.dim(), spec);
}

void emit_region_file(const gs::io::RegionFile& file, const std::string& out_path) {
  if (out_path.empty())
    std::cout << gs::io::region_file_to_json(file);
  else
    gs::io::save_region_file(out_path, file);
}

void emit_svg(const std::string& path, const std::vector<gs::io::RegionFileAtom>& atoms,
              bool show_grid, const std::vector<gs::Vec>& dirs) {
  gs::io::SvgOptions opt;
  opt.show_grid = show_grid;
  if (show_grid) opt.grid_dirs = dirs;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gs::FormatError("cannot write '" + path + "'");
  out << gs::io::render_svg(atoms, opt);
}

int cmd_scalar(const std::string& gauge_text, const std::string& csv_path,
               const std::string& atom_column, int bins) {
  const gs::GaugeSpec gauge = gs::io::parse_gauge(gauge_text);
  const gs::io::CsvTable table = gs::io::read_csv(csv_path);
  const gs::io::PointColumns cols =
      gs::io::interpret_points(table, atom_column, bins, /*allow_pos_inf=*/true);

  std::vector<double> weights = cols.weights;
  if (weights.empty())
    weights.assign(cols.rows.size(), 1.0 / static_cast<double>(cols.rows.size()));
  double wsum = 0.0;
  for (double w : weights) wsum += w;

  std::vector<std::string> atom_labels{""};
  if (!cols.atoms.empty()) {
    atom_labels.clear();
    for (const std::string& a : cols.atoms) {
      bool seen = false;
      for (const std::string& known : atom_labels) seen = seen || known == a;
      if (!seen) atom_labels.push_back(a);
    }
  }

  std::printf("%-12s %-10s %s\n", "column", "atom", "value");
  for (std::size_t j = 0; j < cols.names.size(); ++j) {
    for (const std::string& atom : atom_labels) {
      std::vector<double> values, w;
      for (std::size_t i = 0; i < cols.rows.size(); ++i) {
        if (!cols.atoms.empty() && cols.atoms[i] != atom) continue;
        values.push_back(cols.rows[i][j]);
        w.push_back(weights[i]);
      }
      double aw = 0.0;
      for (double x : w) aw += x;
      for (double& x : w) x /= aw;
      const gs::ExtReal value = gs::eval_gauge(gauge, gs::WeightedSample(values, w));
      std::printf("%-12s %-10s %s\n", cols.names[j].c_str(),
                  atom.empty() ? "(all)" : atom.c_str(), gs::io::format_ext(value).c_str());
    }
  }
  return kExitOk;
}

int cmd_region(const std::string& gauge_text, const InputFlags& in, int grid_n,
               const std::string& out_path, const std::string& plot_path, bool show_grid,
               std::optional<std::uint64_t> seed_flag) {
  const gs::GaugeSpec gauge = gs::io::parse_gauge(gauge_text);
  const std::uint64_t seed = gs::io::resolve_seed(seed_flag);
  gs::io::ScenarioLoad input = load_input(in);
  if (!plot_path.empty() && input.model.dim() != 2)
    throw gs::DomainError("--plot requires a 2-D model");

  const std::vector<gs::Vec> dirs = grid_for(input.model, grid_n, seed);
  const gs::ConditionalRegionResult result =
      gs::conditional_regions(input.model, input.partition, gauge, dirs);

  gs::io::RegionFile file;
  file.gauge = gauge.str();
  file.grid = static_cast<int>(dirs.size());
  file.seed = seed;
  for (const gs::AtomRegion& ar : result.atoms)
    file.atoms.push_back(gs::io::region_file_atom(ar.label, ar.region));

  emit_region_file(file, out_path);
  if (!plot_path.empty()) emit_svg(plot_path, file.atoms, show_grid, dirs);
  return kExitOk;
}

int cmd_cone(const std::string& scenarios_path, const std::string& mode,
             const std::string& out_path) {
  gs::io::ScenarioLoad input = gs::io::load_scenarios(scenarios_path);
  if (!input.model.all_cones())
    throw gs::SchemaError("cone command: every scenario body must be a cone");

  gs::io::RegionFile file;
  file.grid = 0;
  file.seed = 0;
  if (mode == "g9") {
    file.gauge = "g9";
    file.atoms.push_back(gs::io::body_file_atom("", gs::cone_gauge_g9(input.model)));
  } else if (mode.rfind("quantile:", 0) == 0) {
    const double alpha = std::stod(mode.substr(9));
    file.gauge = mode;
    file.atoms.push_back(
        gs::io::body_file_atom("", gs::cone_gauge_quantile(input.model, alpha)));
  } else if (mode.rfind("vorobev:", 0) == 0) {
    const double alpha = std::stod(mode.substr(8));
    file.gauge = mode;
    const std::vector<gs::ConvexBody> comps = gs::vorobev_quantile(input.model, alpha);
    for (std::size_t i = 0; i < comps.size(); ++i)
      file.atoms.push_back(gs::io::body_file_atom(
          comps.size() == 1 ? "" : "component-" + std::to_string(i), comps[i]));
  } else {
    throw gs::FormatError("cone command: unknown mode '" + mode + "'");
  }
  emit_region_file(file, out_path);
  return kExitOk;
}

int cmd_bodies(const std::string& op, const InputFlags& in, const std::string& out_path) {
  gs::io::ScenarioLoad input = load_input(in);
  std::vector<std::pair<std::string, gs::ConvexBody>> bodies;
  if (op == "expectation")
    bodies = gs::selection_expectation(input.model, input.partition);
  else if (op == "core")
    bodies = gs::conditional_core(input.model, input.partition);
  else
    bodies = gs::conditional_hull(input.model, input.partition);

  gs::io::RegionFile file;
  file.gauge = op;
  for (auto& [label, body] : bodies)
    file.atoms.push_back(gs::io::body_file_atom(label, body));
  emit_region_file(file, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-valued gauges of finite scenario models"};
  app.require_subcommand(1);

  std::string gauge_text, mode, out_path, plot_path, input_csv;
  InputFlags in;
  int grid_n = 0;
  bool show_grid = false;
  std::optional<std::uint64_t> seed_flag;

  std::vector<CLI::Option*> bins_opts;
  const auto add_bins = [&](CLI::App* cmd) {
    CLI::Option* opt =
        cmd->add_option("--bins", in.bins,
                        "bin a numeric atom column into N equal-frequency bins (default 10)")
            ->expected(0, 1);
    bins_opts.push_back(opt);
  };

  CLI::App* scalar = app.add_subcommand("scalar", "scalar gauges of CSV columns");
  scalar->add_option("--gauge", gauge_text)->required();
  scalar->add_option("--input", input_csv)->required();
  scalar->add_option("--atom-column", in.atom_column);
  add_bins(scalar);

  CLI::App* region = app.add_subcommand("region", "set-valued gauge region");
  region->add_option("--gauge", gauge_text)->required();
  region->add_option("--scenarios", in.scenarios_path);
  region->add_option("--points", in.points_path);
  region->add_option("--grid", grid_n);
  region->add_option("--atom-column", in.atom_column);
  add_bins(region);
  region->add_option("--out", out_path);
  region->add_option("--plot", plot_path);
  region->add_option("--seed", seed_flag);
  region->add_flag("--show-grid", show_grid);

  CLI::App* cone = app.add_subcommand("cone", "gauges of random cone models");
  cone->add_option("--scenarios", in.scenarios_path)->required();
  cone->add_option("--mode", mode)->required();
  cone->add_option("--out", out_path);

  for (const char* name : {"expectation", "core", "hull"}) {
    CLI::App* sub = app.add_subcommand(name, "per-atom set statistics");
    sub->add_option("--scenarios", in.scenarios_path);
    sub->add_option("--points", in.points_path);
    sub->add_option("--atom-column", in.atom_column);
    add_bins(sub);
    sub->add_option("--out", out_path);
  }

  CLI11_PARSE(app, argc, argv);

  // `--bins` with no count selects the conventional ten equal-frequency bins
  for (const CLI::Option* opt : bins_opts)
    if (opt->count() > 0 && in.bins <= 0) in.bins = 10;

  try {
    if (scalar->parsed()) return cmd_scalar(gauge_text, input_csv, in.atom_column, in.bins);
    if (region->parsed())
      return cmd_region(gauge_text, in, grid_n, out_path, plot_path, show_grid, seed_flag);
    if (cone->parsed()) return cmd_cone(in.scenarios_path, mode, out_path);
    for (const char* name : {"expectation", "core", "hull"})
      if (app.get_subcommand(name)->parsed()) return cmd_bodies(name, in, out_path);
    std::cerr << "error: no subcommand\n";
    return kExitError;
  } catch (const gs::GaugeParseError& e) {
    std::cerr << "gauge error: " << e.what() << "\n";
    return kExitGaugeParse;
  } catch (const gs::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const gs::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const gs::MissingHRepError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingHrep;
  } catch (const gs::DomainError& e) {
    const std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    return msg.find("--plot") != std::string::npos ? kExitPlotDim : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
