#include "gaugesets/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gaugesets/errors.hpp"

namespace gaugesets::io {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok, const char* ctx) {
  const std::string t = trim(tok);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || p != end)
    throw FormatError(std::string(ctx) + ": bad number '" + t + "'");
  return v;
}

double gauge_param(const std::string& tok) {
  try {
    const std::string t = trim(tok);
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw GaugeParseError("bad gauge parameter '" + trim(tok) + "'");
  }
}

}  // namespace

GaugeSpec parse_gauge(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw GaugeParseError("empty gauge specification");

  const auto wrapped = [&](const std::string& prefix) -> std::optional<std::string> {
    if (t.rfind(prefix, 0) == 0 && t.back() == ')')
      return t.substr(prefix.size(), t.size() - prefix.size() - 1);
    return std::nullopt;
  };

  try {
    if (auto inner = wrapped("dual(")) return GaugeSpec::dual(parse_gauge(*inner));
    for (const char* kw : {"maxext", "minext"}) {
      const std::string prefix = std::string(kw) + ":";
      if (t.rfind(prefix, 0) == 0) {
        const std::size_t open = t.find('(');
        if (open == std::string::npos || t.back() != ')')
          throw GaugeParseError("malformed extension '" + t + "'");
        const std::string mtok = t.substr(prefix.size(), open - prefix.size());
        int m = 0;
        try {
          std::size_t used = 0;
          m = std::stoi(mtok, &used);
          if (used != mtok.size()) throw std::invalid_argument(mtok);
        } catch (const std::exception&) {
          throw GaugeParseError("bad extension count '" + mtok + "'");
        }
        const GaugeSpec inner = parse_gauge(t.substr(open + 1, t.size() - open - 2));
        return kw == std::string("maxext") ? GaugeSpec::max_ext(m, inner)
                                           : GaugeSpec::min_ext(m, inner);
      }
    }

    if (t == "essinf") return GaugeSpec::ess_inf();
    if (t == "esssup") return GaugeSpec::ess_sup();
    if (t == "mean") return GaugeSpec::expectation();

    const std::size_t colon = t.find(':');
    const std::string head = colon == std::string::npos ? t : t.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : t.substr(colon + 1);
    if (head == "quantile") return GaugeSpec::quantile_lower(gauge_param(rest));
    if (head == "quantile-upper") return GaugeSpec::quantile_upper(gauge_param(rest));
    if (head == "avgq-right") return GaugeSpec::avg_quantile_right(gauge_param(rest));
    if (head == "avgq-left") return GaugeSpec::avg_quantile_left(gauge_param(rest));
    if (head == "expectile") return GaugeSpec::expectile(gauge_param(rest));
    if (head == "norm") {
      const std::size_t colon2 = rest.find(':');
      if (colon2 == std::string::npos)
        throw GaugeParseError("norm gauge needs two parameters, got '" + rest + "'");
      return GaugeSpec::norm_gauge(gauge_param(rest.substr(0, colon2)),
                                   gauge_param(rest.substr(colon2 + 1)));
    }
    throw GaugeParseError("unknown gauge '" + head + "'");
  } catch (const std::invalid_argument& e) {
    throw GaugeParseError("invalid gauge '" + t + "': " + e.what());
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open CSV file '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (line.back() == ',') cells.push_back("");
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size())
        throw FormatError("CSV row has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(table.header.size()));
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw FormatError("CSV file '" + path + "' is empty");
  return table;
}

PointColumns interpret_points(const CsvTable& table, const std::string& atom_column, int bins,
                              bool allow_pos_inf) {
  PointColumns out;
  std::size_t weight_at = table.header.size();
  std::size_t atom_at = table.header.size();
  std::vector<std::size_t> coord_cols;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (table.header[j] == "weight") {
      weight_at = j;
    } else if (!atom_column.empty() && table.header[j] == atom_column) {
      atom_at = j;
    } else {
      coord_cols.push_back(j);
      out.names.push_back(table.header[j]);
    }
  }
  if (!atom_column.empty() && atom_at == table.header.size())
    throw FormatError("atom column '" + atom_column + "' not found");
  if (coord_cols.empty()) throw FormatError("no coordinate columns in CSV");

  std::vector<std::string> atom_raw;
  for (const auto& row : table.rows) {
    Vec p;
    p.reserve(coord_cols.size());
    for (std::size_t j : coord_cols) {
      const double v = parse_number(row[j], "points CSV");
      if (!std::isfinite(v) && !(allow_pos_inf && v > 0))
        throw FormatError(allow_pos_inf ? "value columns admit inf but not -inf"
                                        : "points CSV: coordinates must be finite");
      p.push_back(v);
    }
    out.rows.push_back(std::move(p));
    if (weight_at < table.header.size()) {
      const double w = parse_number(row[weight_at], "weight column");
      if (!std::isfinite(w)) throw FormatError("weight column: weights must be finite");
      out.weights.push_back(w);
    }
    if (atom_at < table.header.size()) atom_raw.push_back(row[atom_at]);
  }

  if (!atom_raw.empty()) {
    if (bins > 0) {
      std::vector<double> vals;
      vals.reserve(atom_raw.size());
      for (const std::string& s : atom_raw) vals.push_back(parse_number(s, "atom column"));
      out.atoms = equal_frequency_bins(vals, bins);
    } else {
      out.atoms = std::move(atom_raw);
    }
  }
  return out;
}

namespace {

Vec json_vec(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) throw SchemaError(std::string(ctx) + ": expected a vector");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw SchemaError(std::string(ctx) + ": expected numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<Vec> json_vec_list(const json& j, const char* ctx) {
  if (!j.is_array()) throw SchemaError(std::string(ctx) + ": expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& x : j) out.push_back(json_vec(x, ctx));
  return out;
}

ConvexBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("body: missing kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "point") {
    if (!j.contains("coords")) throw SchemaError("point body: missing coords");
    return ConvexBody::point(json_vec(j["coords"], "point body"));
  }
  if (kind == "box") {
    if (!j.contains("lo") || !j.contains("hi")) throw SchemaError("box body: missing lo/hi");
    const Vec lo = json_vec(j["lo"], "box body");
    const Vec hi = json_vec(j["hi"], "box body");
    if (lo.size() != hi.size()) throw SchemaError("box body: lo/hi dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) throw SchemaError("box body: lo exceeds hi");
    return ConvexBody::box(lo, hi);
  }
  if (kind == "polytope") {
    if (!j.contains("vertices")) throw SchemaError("polytope body: missing vertices");
    std::vector<Vec> rays;
    if (j.contains("rays")) rays = json_vec_list(j["rays"], "polytope body rays");
    return ConvexBody::polytope(json_vec_list(j["vertices"], "polytope body"), std::move(rays));
  }
  if (kind == "cone") {
    if (!j.contains("rays")) throw SchemaError("cone body: missing rays");
    const std::vector<Vec> rays = json_vec_list(j["rays"], "cone body");
    if (rays.empty()) throw SchemaError("cone body: needs at least one ray");
    return ConvexBody::cone(static_cast<int>(rays[0].size()), rays);
  }
  if (kind == "translated_cone") {
    if (!j.contains("point") || !j.contains("rays"))
      throw SchemaError("translated_cone body: missing point/rays");
    return ConvexBody::translated_cone(json_vec(j["point"], "translated_cone body"),
                                       json_vec_list(j["rays"], "translated_cone body"));
  }
  if (kind == "halfspace") {
    if (!j.contains("normal") || !j.contains("offset"))
      throw SchemaError("halfspace body: missing normal/offset");
    if (!j["offset"].is_number())
      throw SchemaError("halfspace body: offset must be a finite number");
    return ConvexBody::halfspace_body(json_vec(j["normal"], "halfspace body"),
                                      j["offset"].get<double>());
  }
  throw SchemaError("body: unknown kind '" + kind + "'");
}

json offset_to_json(const ExtReal& v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

ExtReal offset_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return ExtReal::pos_inf();
    if (s == "-inf") return ExtReal::neg_inf();
    throw SchemaError("offset: unknown token '" + s + "'");
  }
  if (!j.is_number()) throw SchemaError("offset: expected number or inf token");
  return ExtReal(j.get<double>());
}

}  // namespace

ScenarioLoad load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scenario file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("scenario file: top level must be an object");
  if (doc.contains("schema")) {
    if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSchemaTag)
      throw SchemaError("scenario file: schema must be '" + std::string(kSchemaTag) + "'");
  }
  if (!doc.contains("scenarios") || !doc["scenarios"].is_array() || doc["scenarios"].empty())
    throw SchemaError("scenario file: missing nonempty 'scenarios' array");

  std::vector<Scenario> scenarios;
  bool has_atoms = false;
  double prob_sum = 0.0;
  for (const auto& js : doc["scenarios"]) {
    if (!js.is_object()) throw SchemaError("scenario: expected an object");
    if (!js.contains("prob") || !js["prob"].is_number())
      throw SchemaError("scenario: missing numeric 'prob'");
    Scenario s;
    s.prob = js["prob"].get<double>();
    if (s.prob < 0.0) throw SchemaError("scenario: negative probability");
    prob_sum += s.prob;
    if (js.contains("atom")) {
      if (!js["atom"].is_string()) throw SchemaError("scenario: atom must be a string");
      s.atom = js["atom"].get<std::string>();
      has_atoms = true;
    }
    if (!js.contains("body")) throw SchemaError("scenario: missing body");
    s.body = body_from_json(js["body"]);
    scenarios.push_back(std::move(s));
  }
  if (std::fabs(prob_sum - 1.0) > 1e-6)
    throw SchemaError("scenario file: probabilities sum to " + std::to_string(prob_sum) +
                      ", expected 1");

  try {
    RandomSetModel model(std::move(scenarios), 1e-6);
    Partition part = has_atoms ? Partition::from_model(model) : Partition::trivial(model);
    return ScenarioLoad{std::move(model), std::move(part), has_atoms};
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("scenario file: ") + e.what());
  }
}

RegionFileAtom region_file_atom(const std::string& label, const Region& region) {
  RegionFileAtom atom;
  atom.label = label;
  atom.empty = region.is_empty();
  atom.constraints = region.constraints();
  if (region.chain()) {
    atom.vertices2d = region.chain()->vertices;
    atom.rays2d = region.chain()->rays;
  }
  return atom;
}

RegionFileAtom body_file_atom(const std::string& label, const ConvexBody& body) {
  RegionFileAtom atom;
  atom.label = label;
  atom.empty = body.is_empty();
  if (body.is_empty()) return atom;
  if (body.hrep()) atom.constraints = *body.hrep();
  if (body.dim() == 2 && body.vrep_exact()) {
    if (!body.hrep()) {
      ConvexBody copy = body;
      ensure_hrep(copy);
      atom.constraints = *copy.hrep();
    }
    std::vector<Vec2> verts, rays;
    for (const Vec& v : body.vertices()) verts.push_back(to_vec2(v));
    for (const Vec& r : body.rays()) rays.push_back(to_vec2(r));
    atom.vertices2d = std::move(verts);
    atom.rays2d = std::move(rays);
  }
  return atom;
}

std::string region_file_to_json(const RegionFile& file) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["meta"] = {{"gauge", file.gauge}, {"grid", file.grid}, {"seed", file.seed}};
  json atoms = json::array();
  for (const RegionFileAtom& a : file.atoms) {
    json ja;
    ja["label"] = a.label;
    ja["empty"] = a.empty;
    json cs = json::array();
    for (const HalfSpace& hs : a.constraints)
      cs.push_back({{"normal", hs.normal}, {"offset", offset_to_json(hs.offset)}});
    ja["constraints"] = std::move(cs);
    if (a.vertices2d) {
      json vv = json::array();
      for (const Vec2& v : *a.vertices2d) vv.push_back({v[0], v[1]});
      ja["vertices2d"] = std::move(vv);
    }
    if (a.rays2d) {
      json rr = json::array();
      for (const Vec2& r : *a.rays2d) rr.push_back({r[0], r[1]});
      ja["rays2d"] = std::move(rr);
    }
    atoms.push_back(std::move(ja));
  }
  doc["atoms"] = std::move(atoms);
  return doc.dump(2) + "\n";
}

RegionFile region_file_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("region file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
    throw SchemaError("region file: missing atoms");
  RegionFile file;
  if (doc.contains("meta")) {
    const json& m = doc["meta"];
    if (m.contains("gauge")) file.gauge = m["gauge"].get<std::string>();
    if (m.contains("grid")) file.grid = m["grid"].get<int>();
    if (m.contains("seed")) file.seed = m["seed"].get<std::uint64_t>();
  }
  for (const auto& ja : doc["atoms"]) {
    RegionFileAtom a;
    a.label = ja.value("label", std::string());
    a.empty = ja.value("empty", false);
    if (ja.contains("constraints")) {
      for (const auto& jc : ja["constraints"]) {
        HalfSpace hs;
        hs.normal = json_vec(jc["normal"], "region constraint");
        hs.offset = offset_from_json(jc["offset"]);
        a.constraints.push_back(std::move(hs));
      }
    }
    const auto read_pairs = [](const json& arr) {
      std::vector<Vec2> out;
      for (const auto& p : arr) out.push_back({p[0].get<double>(), p[1].get<double>()});
      return out;
    };
    if (ja.contains("vertices2d")) a.vertices2d = read_pairs(ja["vertices2d"]);
    if (ja.contains("rays2d")) a.rays2d = read_pairs(ja["rays2d"]);
    file.atoms.push_back(std::move(a));
  }
  return file;
}

void save_region_file(const std::string& path, const RegionFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << region_file_to_json(file);
}

RegionFile load_region_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open region file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return region_file_from_json(ss.str());
}

namespace {

std::string fnum(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#000000"};

}  // namespace

std::string render_svg(const std::vector<RegionFileAtom>& atoms, const SvgOptions& options) {
  // bounding box from the finite chain data
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  bool any = false;
  for (const RegionFileAtom& a : atoms) {
    if (!a.vertices2d) continue;
    for (const Vec2& v : *a.vertices2d) {
      lo_x = std::min(lo_x, v[0]);
      hi_x = std::max(hi_x, v[0]);
      lo_y = std::min(lo_y, v[1]);
      hi_y = std::max(hi_y, v[1]);
      any = true;
    }
  }
  if (!any) {
    lo_x = lo_y = -1.0;
    hi_x = hi_y = 1.0;
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  const double pad = 0.2 * span;
  lo_x -= pad;
  lo_y -= pad;
  hi_x += pad;
  hi_y += pad;
  const double w = hi_x - lo_x, h = hi_y - lo_y;
  const double side = std::max(w, h);
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  lo_x = cx - 0.5 * side;
  hi_x = cx + 0.5 * side;
  lo_y = cy - 0.5 * side;
  hi_y = cy + 0.5 * side;

  const auto X = [&](double x) { return 800.0 * (x - lo_x) / side; };
  const auto Y = [&](double y) { return 800.0 * (hi_y - y) / side; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

  std::vector<HalfSpace> bbox = {
      {{1.0, 0.0}, ExtReal(hi_x)},
      {{-1.0, 0.0}, ExtReal(-lo_x)},
      {{0.0, 1.0}, ExtReal(hi_y)},
      {{0.0, -1.0}, ExtReal(-lo_y)},
  };

  std::size_t color = 0;
  for (const RegionFileAtom& a : atoms) {
    const char* col = kPalette[color % 8];
    ++color;
    if (a.empty) continue;
    std::vector<HalfSpace> hs = a.constraints;
    hs.insert(hs.end(), bbox.begin(), bbox.end());
    const Region clipped = intersect_halfspaces_2d(hs);
    if (clipped.is_empty() || !clipped.chain()) continue;
    const std::vector<Vec2>& poly = clipped.chain()->vertices;
    if (poly.size() < 2) continue;

    std::ostringstream path;
    path << "M";
    for (const Vec2& v : poly) path << " " << fnum(X(v[0])) << " " << fnum(Y(v[1]));
    path << " Z";
    svg << "<path d=\"" << path.str() << "\" fill=\"" << col
        << "\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";

    // solid edges on true boundary, dashed where the bbox clipped
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
      const Vec2 mid{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
      bool on_bbox = false;
      for (const HalfSpace& b : bbox) {
        const double t = b.offset.value();
        if (std::fabs(dot2(to_vec2(b.normal), mid) - t) <= 1e-7 * std::max(1.0, std::fabs(t))) {
          // dashed only if the original region extends past this side
          bool original = false;
          for (const HalfSpace& c : a.constraints) {
            if (!c.offset.finite()) continue;
            const Vec2 n = to_vec2(c.normal);
            const double nn = norm2(n);
            if (nn == 0.0) continue;
            if (std::fabs(dot2(n, mid) - c.offset.value()) <= 1e-7 * nn * std::max(1.0, side))
              original = true;
          }
          if (!original) on_bbox = true;
          break;
        }
      }
      svg << "<line x1=\"" << fnum(X(p[0])) << "\" y1=\"" << fnum(Y(p[1])) << "\" x2=\""
          << fnum(X(q[0])) << "\" y2=\"" << fnum(Y(q[1])) << "\" stroke=\"" << col
          << "\" stroke-width=\"1.5\"" << (on_bbox ? " stroke-dasharray=\"6 4\"" : "")
          << "/>\n";
    }
    if (!a.label.empty() && !poly.empty()) {
      svg << "<text x=\"" << fnum(X(poly[0][0]) + 4) << "\" y=\"" << fnum(Y(poly[0][1]) - 4)
          << "\" font-size=\"12\" fill=\"" << col << "\">" << a.label << "</text>\n";
    }
  }

  if (options.show_grid) {
    const double gx = 400.0, gy = 400.0, len = 40.0;
    for (const Vec& d : options.grid_dirs) {
      if (d.size() != 2) continue;
      svg << "<line x1=\"" << fnum(gx) << "\" y1=\"" << fnum(gy) << "\" x2=\""
          << fnum(gx + len * d[0]) << "\" y2=\"" << fnum(gy - len * d[1])
          << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed) {
  if (cli_seed) return *cli_seed;
  if (const char* env = std::getenv("GAUGESETS_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 0;
}

std::string format_ext(const ExtReal& v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v.value());
  return buf;
}

}  // namespace gaugesets::io
