#include "weightlab/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace weightlab {

namespace {

using json = nlohmann::ordered_json;

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InputError(std::string("field '") + key + "' must be a number");
}

double get_number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

std::vector<double> get_numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw InputError(std::string("field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int get_dim(const json& j) {
  const int d = j.value("dim", 1);
  if (d != 1 && d != 2) throw InputError("dim must be 1 or 2");
  return d;
}

YoungFn young_from(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "identity") return YoungFn::identity();
  if (kind == "power") return YoungFn::power(get_number(j, "r"));
  if (kind == "power_log") return YoungFn::power_log(get_number(j, "r"), get_number(j, "beta"));
  if (kind == "exp_minus_one") return YoungFn::exp_minus_one();
  if (kind == "bump") return YoungFn::bump(get_number(j, "p"), get_number(j, "eps"));
  if (kind == "scaled_power") return YoungFn::scaled_power(get_number(j, "coef"), get_number(j, "r"));
  if (kind == "sup_indicator") return YoungFn::sup_indicator();
  if (kind == "legendre") {
    if (!j.contains("base")) throw InputError("legendre needs a base function");
    return YoungFn::legendre(young_from(j.at("base")));
  }
  throw InputError("unknown Young function kind '" + kind + "'");
}

json cube_json(const Cube& c) {
  json corner = json::array();
  for (int i = 0; i < c.dim; ++i) corner.push_back(c.corner[i]);
  return json{{"corner", corner}, {"side", c.side}};
}

json geometry_json(const GridGeometry& g) {
  json lo = json::array();
  for (int i = 0; i < g.dim; ++i) lo.push_back(g.lo[i]);
  return json{{"dim", g.dim}, {"lo", lo}, {"side", g.side}, {"n", g.n}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

SegmentWeight1D parse_weight(const std::string& text) {
  const json j = parse_doc(text);
  if (get_dim(j) != 1) throw InputError("segment weights are one-dimensional");
  if (!j.contains("segments") || !j.at("segments").is_array()) throw InputError("weight needs a segments array");
  std::vector<Segment> segs;
  for (const auto& s : j.at("segments")) {
    const double lo = get_number(s, "lo");
    const double hi = get_number(s, "hi");
    const std::string form = s.value("form", "");
    const double c = get_number_or(s, "c", 1.0);
    if (form == "power") {
      segs.push_back(Segment::power(lo, hi, c, get_number_or(s, "a", 0.0), get_number(s, "gamma")));
    } else if (form == "exp") {
      segs.push_back(Segment::exponential(lo, hi, c, get_number_or(s, "s", 0.0)));
    } else {
      throw InputError("segment form must be 'power' or 'exp'");
    }
  }
  const std::string tail = j.value("tail", "zero");
  if (tail != "zero" && tail != "extend") throw InputError("tail must be 'zero' or 'extend'");
  return SegmentWeight1D(std::move(segs), tail == "extend" ? Tail::extend : Tail::zero);
}

SquareMatrix parse_matrix(const std::string& text) {
  const json j = parse_doc(text);
  const int d = get_dim(j);
  const auto e = get_numbers(j, "entries");
  if (d == 1) {
    if (e.size() != 1) throw InputError("a 1x1 matrix has one entry");
    return SquareMatrix::scalar(e[0]);
  }
  if (e.size() != 4) throw InputError("a 2x2 matrix has four entries");
  return SquareMatrix::of(e[0], e[1], e[2], e[3]);
}

CubeFamily parse_family(const std::string& text) {
  const json j = parse_doc(text);
  const auto levels = get_numbers(j, "levels");
  if (levels.size() != 2) throw InputError("levels must be [min, max]");
  const auto box = get_numbers(j, "box");
  Cube b;
  if (box.size() == 2) {
    b = Cube{1, {box[0], 0.0}, box[1] - box[0]};
  } else if (box.size() == 4) {
    const double sx = box[2] - box[0], sy = box[3] - box[1];
    if (std::abs(sx - sy) > 1e-12 * std::max(std::abs(sx), 1.0)) throw InputError("2D box must be a square");
    b = Cube{2, {box[0], box[1]}, sx};
  } else {
    throw InputError("box must be [lo, hi] or [x0, y0, x1, y1]");
  }
  std::vector<Cube> extra;
  if (j.contains("extra")) {
    for (const auto& e : j.at("extra")) {
      const auto corner = get_numbers(e, "corner");
      if (static_cast<int>(corner.size()) != b.dim) throw InputError("extra cube corner has the wrong dimension");
      extra.push_back(Cube{b.dim, {corner[0], b.dim == 2 ? corner[1] : 0.0}, get_number(e, "side")});
    }
  }
  return CubeFamily(b, static_cast<int>(levels[0]), static_cast<int>(levels[1]),
                    static_cast<int>(get_number_or(j, "shifts", 1.0)), std::move(extra));
}

YoungFn parse_young(const std::string& text) { return young_from(parse_doc(text)); }

GridFunction parse_grid(const std::string& text) {
  const json j = parse_doc(text);
  const int d = get_dim(j);
  const auto lo = get_numbers(j, "lo");
  if (static_cast<int>(lo.size()) != d) throw InputError("lo has the wrong dimension");
  auto values = get_numbers(j, "values");
  std::size_t n = values.size();
  if (d == 2) {
    n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (n * n != values.size()) throw InputError("2D values must hold n*n entries");
  }
  const GridGeometry g{d, {lo[0], d == 2 ? lo[1] : 0.0}, get_number(j, "side"), n};
  g.validate();
  return GridFunction(g, std::move(values));
}

std::string constant_report_json(const ConstantReport& r, const ClassSpec& spec) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "constant";
  j["class"] = spec.describe();
  j["value"] = num(r.value);
  j["argmax"] = cube_json(r.argmax);
  j["family"] = r.family;
  if (r.witness) {
    json w{{"cube", cube_json(r.witness->cube)}, {"reason", r.witness->reason}};
    if (r.witness->segment != std::numeric_limits<std::size_t>::max()) w["segment"] = r.witness->segment;
    j["witness"] = w;
  }
  if (!r.trace.empty()) {
    json t = json::array();
    for (const auto& c : r.trace) t.push_back(json{{"cube", cube_json(c.cube)}, {"value", num(c.value)}});
    j["trace"] = t;
  }
  return dump(j);
}

std::string decomposition_json(const CZDecomposition& dec) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "cz";
  j["a"] = dec.a;
  j["alpha"] = dec.alpha;
  j["geometry"] = geometry_json(dec.geometry);
  json levels = json::array();
  for (std::size_t l = 0; l < dec.levels.size(); ++l) {
    const auto& lv = dec.levels[l];
    json cubes = json::array();
    for (std::size_t q = 0; q < lv.cubes.size(); ++q) {
      const auto& sc = lv.cubes[q];
      json start = json::array();
      for (int i = 0; i < dec.geometry.dim; ++i) start.push_back(sc.cube.start[i]);
      json ranges = json::array();
      const auto cells = e_cells(dec, l, q);
      for (std::size_t i = 0; i < cells.size();) {
        std::size_t k = i;
        while (k + 1 < cells.size() && cells[k + 1] == cells[k] + 1) ++k;
        ranges.push_back(json::array({cells[i], cells[k]}));
        i = k + 1;
      }
      cubes.push_back(json{{"start", start}, {"len", sc.cube.len}, {"average", num(sc.average)}, {"e_cells", ranges}});
    }
    levels.push_back(json{{"k", lv.k}, {"threshold", num(lv.threshold)}, {"cubes", cubes}});
  }
  j["levels"] = levels;
  return dump(j);
}

std::string maximal_report_json(const GridFunction& field, const std::string& op, const std::string& family) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "maximal";
  j["operator"] = op;
  j["family"] = family;
  j["geometry"] = geometry_json(field.geometry());
  j["max"] = num(field.max_value());
  json values = json::array();
  for (double v : field.values()) values.push_back(num(v));
  j["values"] = values;
  return dump(j);
}

std::string suites_json(const std::vector<SuiteResult>& suites) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "verify";
  bool all = true;
  json arr = json::array();
  for (const auto& s : suites) {
    all = all && s.passed();
    json checks = json::array();
    for (const auto& c : s.checks) {
      json inputs = json::object();
      for (const auto& [k, v] : c.inputs) inputs[k] = num(v);
      checks.push_back(json{{"name", c.name},
                            {"description", c.description},
                            {"value", num(c.value)},
                            {"relation", c.relation},
                            {"passed", c.passed},
                            {"basis", to_string(c.basis)},
                            {"inputs", inputs}});
    }
    arr.push_back(json{{"id", s.id}, {"passed", s.passed()}, {"checks", checks}});
  }
  j["passed"] = all;
  j["suites"] = arr;
  return dump(j);
}

std::string rh_probe_json(const RhProbe& probe, const ClassSpec& spec) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "rh-probe";
  j["class"] = spec.describe();
  j["aap"] = num(probe.aap);
  json rows = json::array();
  for (std::size_t i = 0; i < probe.rh.size(); ++i) {
    rows.push_back(json{{"s", probe.rh[i].first}, {"rh", num(probe.rh[i].second)}, {"dual_rh", num(probe.dual_rh[i].second)}});
  }
  j["rows"] = rows;
  return dump(j);
}

std::string field_csv(const GridFunction& field) {
  const auto& g = field.geometry();
  std::ostringstream os;
  os.precision(17);
  os << (g.dim == 1 ? "cell,x,value,in_domain\n" : "cell,x,y,value,in_domain\n");
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const Point p = g.cell_center(c);
    os << c << ',' << p[0] << ',';
    if (g.dim == 2) os << p[1] << ',';
    os << field[c] << ',' << (field.in_domain(c) ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace weightlab
