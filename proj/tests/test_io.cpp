#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "gaugesets/engine.hpp"
#include "gaugesets/errors.hpp"
#include "gaugesets/io.hpp"

using namespace gaugesets;

namespace {

std::string temp_file(const std::string& name) {
  return std::string("io_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("gauge grammar") {
  CHECK(io::parse_gauge("quantile:0.1").str() == "quantile:0.1");
  CHECK(io::parse_gauge("quantile-upper:0.25").kind() == GaugeSpec::Kind::QuantileUpper);
  CHECK(io::parse_gauge("essinf").kind() == GaugeSpec::Kind::EssInf);
  CHECK(io::parse_gauge("esssup").kind() == GaugeSpec::Kind::EssSup);
  CHECK(io::parse_gauge("mean").kind() == GaugeSpec::Kind::Expectation);
  CHECK(io::parse_gauge("avgq-right:0.9").alpha() == 0.9);
  CHECK(io::parse_gauge("avgq-left:0.1").alpha() == 0.1);
  CHECK(io::parse_gauge("expectile:0.9").tau() == 0.9);
  CHECK(io::parse_gauge("norm:2:1").p() == 2.0);
  CHECK(io::parse_gauge("dual(esssup)").kind() == GaugeSpec::Kind::Dual);
  const GaugeSpec me = io::parse_gauge("maxext:3(avgq-right:0.5)");
  CHECK(me.kind() == GaugeSpec::Kind::MaxExt);
  CHECK(me.m() == 3);
  CHECK(me.inner().alpha() == 0.5);
  CHECK(io::parse_gauge("minext:2(mean)").kind() == GaugeSpec::Kind::MinExt);
  CHECK(io::parse_gauge("dual(maxext:2(norm:2:0.5))").str() ==
        "dual(maxext:2(norm:2:0.5))");

  CHECK_THROWS_AS(io::parse_gauge("quantile:1.5"), GaugeParseError);
  CHECK_THROWS_AS(io::parse_gauge("quantile:zebra"), GaugeParseError);
  CHECK_THROWS_AS(io::parse_gauge("frobnicate:1"), GaugeParseError);
  CHECK_THROWS_AS(io::parse_gauge("maxext:x(mean)"), GaugeParseError);
  CHECK_THROWS_AS(io::parse_gauge(""), GaugeParseError);
  CHECK_THROWS_AS(io::parse_gauge("norm:2"), GaugeParseError);

  // round trip through str() for every kind
  for (const char* text : {"quantile:0.3", "quantile-upper:0.3", "essinf", "esssup",
                           "mean", "avgq-right:0.75", "avgq-left:0.25", "expectile:0.6",
                           "norm:3:0.5", "dual(avgq-right:0.9)", "maxext:4(mean)"}) {
    const GaugeSpec g = io::parse_gauge(text);
    CHECK(io::parse_gauge(g.str()).str() == g.str());
  }
}

TEST_CASE("csv parsing") {
  const std::string path = temp_file("pts.csv");
  write_file(path, "x,y,weight,group\n1.0,2.0,0.25,a\n3.0,4.0,0.75,b\n");
  const io::CsvTable t = io::read_csv(path);
  REQUIRE(t.header.size() == 4);
  REQUIRE(t.rows.size() == 2);

  const io::PointColumns cols = io::interpret_points(t, "group");
  REQUIRE(cols.rows.size() == 2);
  CHECK(cols.names == std::vector<std::string>{"x", "y"});
  CHECK(cols.rows[0] == Vec{1.0, 2.0});
  CHECK(cols.weights == std::vector<double>{0.25, 0.75});
  CHECK(cols.atoms == std::vector<std::string>{"a", "b"});

  CHECK_THROWS_AS(io::interpret_points(t, "nonexistent"), FormatError);

  write_file(path, "x,y\n1.0\n");
  CHECK_THROWS_AS(io::read_csv(path), FormatError);
  write_file(path, "x\ninf\n");
  CHECK_THROWS_AS(io::interpret_points(io::read_csv(path), ""), FormatError);
  std::remove(path.c_str());
}

TEST_CASE("scenario file loading") {
  const std::string path = temp_file("scen.json");
  write_file(path, R"({
    "schema": "gaugesets/v1",
    "scenarios": [
      {"prob": 0.5, "atom": "a", "body": {"kind": "box", "lo": [0,0], "hi": [1,1]}},
      {"prob": 0.25, "atom": "b", "body": {"kind": "point", "coords": [2,2]}},
      {"prob": 0.25, "atom": "b", "body": {"kind": "cone", "rays": [[-1,0],[0,-1]]}}
    ]
  })");
  const io::ScenarioLoad load = io::load_scenarios(path);
  CHECK(load.model.size() == 3);
  CHECK(load.partition.atom_count() == 2);
  CHECK(load.has_atoms);
  CHECK(load.model.scenario(2).body.is_cone());

  write_file(path, "{not json");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  write_file(path, R"({"scenarios": []})");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  write_file(path, R"({"scenarios": [{"prob": 0.4, "body": {"kind": "point", "coords": [0]}}]})");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  write_file(path, R"({"scenarios": [{"prob": 1.0, "body": {"kind": "blob"}}]})");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  write_file(path, R"({"schema": "gaugesets/v2", "scenarios": [
      {"prob": 1.0, "body": {"kind": "point", "coords": [0,0]}}]})");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  write_file(path, R"({"scenarios": [{"prob": 1.0,
      "body": {"kind": "box", "lo": [1,1], "hi": [0,0]}}]})");
  CHECK_THROWS_AS(io::load_scenarios(path), SchemaError);
  std::remove(path.c_str());
}

TEST_CASE("region file round trip") {
  RandomSetModel m({{0.6, ConvexBody::box({0.0, 0.0}, {1.0, 2.0}), "a"},
                    {0.4, ConvexBody::translated_cone({3.0, 0.0}, {{-1.0, 0.0}}), "b"}});
  const Partition p = Partition::from_model(m);
  GridSpec gs;
  gs.n = 32;
  const ConditionalRegionResult res =
      conditional_regions(m, p, GaugeSpec::ess_sup(), direction_grid(2, gs));

  io::RegionFile file;
  file.gauge = "esssup";
  file.grid = 32;
  file.seed = 17;
  for (const AtomRegion& ar : res.atoms)
    file.atoms.push_back(io::region_file_atom(ar.label, ar.region));

  const std::string text = io::region_file_to_json(file);
  const io::RegionFile back = io::region_file_from_json(text);
  CHECK(io::region_file_to_json(back) == text);  // lossless round trip
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.gauge == "esssup");
  CHECK(back.grid == 32);
  CHECK(back.seed == 17);
  CHECK(back.atoms[0].label == "a");
  REQUIRE(back.atoms[0].vertices2d);
  CHECK(back.atoms[0].constraints.size() == file.atoms[0].constraints.size());

  // infinite offsets serialize as tokens
  io::RegionFile inf_file;
  io::RegionFileAtom atom;
  atom.label = "x";
  atom.constraints.push_back({{1.0, 0.0}, ExtReal::pos_inf()});
  atom.constraints.push_back({{0.0, 1.0}, ExtReal::neg_inf()});
  inf_file.atoms.push_back(atom);
  const std::string itext = io::region_file_to_json(inf_file);
  CHECK(itext.find("\"inf\"") != std::string::npos);
  CHECK(itext.find("\"-inf\"") != std::string::npos);
  const io::RegionFile iback = io::region_file_from_json(itext);
  CHECK(iback.atoms[0].constraints[0].offset.is_pos_inf());
  CHECK(iback.atoms[0].constraints[1].offset.is_neg_inf());
}

TEST_CASE("svg rendering") {
  RandomSetModel m({{1.0, ConvexBody::translated_cone({1.0, 1.0}, {{-1.0, 0.0}, {0.0, -1.0}}), ""}});
  GridSpec gs;
  gs.n = 64;
  const auto dirs = direction_grid(2, gs);
  const Region r = wulff_region(m, GaugeSpec::ess_sup(), dirs);
  std::vector<io::RegionFileAtom> atoms{io::region_file_atom("q", r)};
  io::SvgOptions opt;
  const std::string svg = io::render_svg(atoms, opt);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("fill-opacity=\"0.3\"") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // clipped quadrant edges
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  opt.show_grid = true;
  opt.grid_dirs = dirs;
  const std::string svg2 = io::render_svg(atoms, opt);
  CHECK(svg2.size() > svg.size());
}

TEST_CASE("seed resolution") {
  unsetenv("GAUGESETS_SEED");
  CHECK(io::resolve_seed(std::nullopt) == 0);
  CHECK(io::resolve_seed(7u) == 7u);
  setenv("GAUGESETS_SEED", "123", 1);
  CHECK(io::resolve_seed(std::nullopt) == 123u);
  CHECK(io::resolve_seed(9u) == 9u);  // explicit flag wins
  unsetenv("GAUGESETS_SEED");
}
