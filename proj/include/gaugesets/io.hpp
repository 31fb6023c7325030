#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaugesets/engine.hpp"
#include "gaugesets/gauge_spec.hpp"
#include "gaugesets/region.hpp"
#include "gaugesets/scenario.hpp"

namespace gaugesets::io {

inline constexpr const char* kSchemaTag = "gaugesets/v1";

/// CLI gauge grammar: quantile:A, quantile-upper:A, essinf, esssup, mean,
/// avgq-right:A, avgq-left:A, expectile:T, norm:P:A, dual(...), maxext:M(...),
/// minext:M(...). Throws GaugeParseError naming the offending token.
GaugeSpec parse_gauge(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

struct PointColumns {
  std::vector<std::string> names;  // coordinate column names
  std::vector<Vec> rows;
  std::vector<double> weights;        // empty when absent
  std::vector<std::string> atoms;     // empty when absent
};

/// Splits a CSV into coordinates, the optional `weight` column and the
/// optional atom column; a positive `bins` turns a numeric atom column into
/// equal-frequency bin labels. Point coordinates must be finite;
/// allow_pos_inf admits +inf cells (scalar sample columns).
PointColumns interpret_points(const CsvTable& table, const std::string& atom_column,
                              int bins = 0, bool allow_pos_inf = false);

struct ScenarioLoad {
  RandomSetModel model;
  Partition partition;
  bool has_atoms = false;
};

/// Scenario JSON: {"schema": "gaugesets/v1", "scenarios": [{prob, atom?,
/// body: {kind, ...}}]}. Violations raise SchemaError; probabilities must
/// sum to 1 within 1e-6 and are renormalised on load.
ScenarioLoad load_scenarios(const std::string& path);

struct RegionFileAtom {
  std::string label;
  bool empty = false;
  std::vector<HalfSpace> constraints;
  std::optional<std::vector<Vec2>> vertices2d;
  std::optional<std::vector<Vec2>> rays2d;
};

struct RegionFile {
  std::vector<RegionFileAtom> atoms;
  std::string gauge;
  int grid = 0;
  std::uint64_t seed = 0;
};

RegionFileAtom region_file_atom(const std::string& label, const Region& region);
RegionFileAtom body_file_atom(const std::string& label, const ConvexBody& body);

std::string region_file_to_json(const RegionFile& file);
RegionFile region_file_from_json(const std::string& text);
void save_region_file(const std::string& path, const RegionFile& file);
RegionFile load_region_file(const std::string& path);

struct SvgOptions {
  bool show_grid = false;
  std::vector<Vec> grid_dirs;
};

/// 800x800 SVG of per-atom 2-D regions clipped to a data-driven bounding
/// box; clipped (artificial) edges are dashed, fills at 30% opacity.
std::string render_svg(const std::vector<RegionFileAtom>& atoms, const SvgOptions& options);

/// GAUGESETS_SEED environment override; an explicit CLI seed wins.
std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed);

std::string format_ext(const ExtReal& v);

}  // namespace gaugesets::io
