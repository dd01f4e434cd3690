#include "currentlab/chain_io.h"

#include <iterator>
#include <sstream>

namespace currentlab {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& what) { throw ParseError(what); }

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) Fail(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

double AsNumber(const json& v, const std::string& where) {
  if (!v.is_number()) Fail(where + ": expected a number");
  return v.get<double>();
}

int64_t AsInteger(const json& v, const std::string& where) {
  if (!v.is_number_integer()) Fail(where + ": expected an integer");
  return v.get<int64_t>();
}

std::vector<std::vector<double>> AsMatrix(const json& v, const std::string& where) {
  if (!v.is_array()) Fail(where + ": expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) Fail(where + "[" + std::to_string(i) + "]: expected an array");
    std::vector<double> row;
    for (size_t j = 0; j < v[i].size(); ++j) {
      row.push_back(AsNumber(v[i][j], where + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]"));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Metric MetricFromJson(const json& m, int* coordinate_dims) {
  std::string kind = "euclidean";
  if (m.contains("kind")) {
    if (!m["kind"].is_string()) Fail("metric.kind: expected a string");
    kind = m["kind"].get<std::string>();
  }
  int extra = 0;
  if (m.contains("interval_dims")) extra = static_cast<int>(AsInteger(m["interval_dims"], "metric.interval_dims"));
  Metric metric;
  if (kind == "euclidean") {
    if (*coordinate_dims - extra < 1) Fail("metric: vertices have too few coordinates");
    metric = Metric::Euclidean(*coordinate_dims - extra);
  } else if (kind == "sphere") {
    double r = m.contains("radius") ? AsNumber(m["radius"], "metric.radius") : 1.0;
    metric = Metric::Sphere(r);
  } else if (kind == "flat_torus") {
    std::vector<double> periods;
    for (const auto& p : Require(m, "periods", "metric")) periods.push_back(AsNumber(p, "metric.periods"));
    metric = Metric::FlatTorus(periods);
  } else if (kind == "matrix") {
    auto space = std::make_shared<const FiniteMetricSpace>(
        AsMatrix(Require(m, "distances", "metric"), "metric.distances"));
    metric = Metric::Matrix(space);
  } else {
    Fail("metric.kind: unknown kind '" + kind + "'");
  }
  for (int i = 0; i < extra; ++i) metric = metric.WithInterval();
  return metric;
}

json MetricToJson(const Metric& metric) {
  json m;
  switch (metric.kind()) {
    case MetricKind::kEuclidean:
      m["kind"] = "euclidean";
      break;
    case MetricKind::kSphere:
      m["kind"] = "sphere";
      m["radius"] = metric.sphere_radius();
      break;
    case MetricKind::kFlatTorus:
      m["kind"] = "flat_torus";
      m["periods"] = metric.periods();
      break;
    case MetricKind::kMatrix:
      m["kind"] = "matrix";
      m["distances"] = metric.matrix()->matrix();
      break;
  }
  if (metric.extra_dims() > 0) m["interval_dims"] = metric.extra_dims();
  return m;
}

struct ParsedComplex {
  ComplexPtr complex;
  // JSON list position -> complex index, per dimension (dimension 0 is the
  // identity and left empty).
  std::vector<std::vector<int>> listed;
};

ParsedComplex ParseComplex(const json& c) {
  const json& verts = Require(c, "vertices", "complex");
  ParsedComplex out;
  std::vector<double> coords;
  int width = -1;
  Metric metric;
  bool matrix_kind = c.contains("metric") && c["metric"].value("kind", "") == "matrix";
  if (matrix_kind && (!verts.is_array() || verts.empty())) {
    metric = MetricFromJson(c["metric"], &width);
    int n = metric.matrix()->size();
    for (int i = 0; i < n; ++i) coords.push_back(i);
  } else {
    auto rows = AsMatrix(verts, "complex.vertices");
    for (size_t i = 0; i < rows.size(); ++i) {
      if (width < 0) width = static_cast<int>(rows[i].size());
      if (static_cast<int>(rows[i].size()) != width) {
        Fail("complex.vertices[" + std::to_string(i) + "]: ragged coordinate row");
      }
      coords.insert(coords.end(), rows[i].begin(), rows[i].end());
    }
    if (width < 1) Fail("complex.vertices: no coordinates");
    metric = c.contains("metric") ? MetricFromJson(c["metric"], &width) : Metric::Euclidean(width);
    if (metric.dims() != width) Fail("complex.metric: coordinate count does not match vertices");
  }
  std::vector<Simplex> gens;
  std::vector<std::pair<int, Simplex>> listed_raw;
  if (c.contains("simplices")) {
    const json& s = c["simplices"];
    if (!s.is_object()) Fail("complex.simplices: expected an object keyed by dimension");
    for (auto it = s.begin(); it != s.end(); ++it) {
      int k;
      try {
        k = std::stoi(it.key());
      } catch (...) {
        Fail("complex.simplices: key '" + it.key() + "' is not a dimension");
      }
      if (k < 0 || k + 1 > kMaxSimplexVertices) Fail("complex.simplices: unsupported dimension");
      if (!it.value().is_array()) Fail("complex.simplices." + it.key() + ": expected an array");
      for (size_t i = 0; i < it.value().size(); ++i) {
        const json& tuple = it.value()[i];
        std::string where = "complex.simplices." + it.key() + "[" + std::to_string(i) + "]";
        if (!tuple.is_array() || static_cast<int>(tuple.size()) != k + 1) {
          Fail(where + ": expected " + std::to_string(k + 1) + " vertex ids");
        }
        Simplex smp;
        for (const auto& v : tuple) smp.v[smp.size++] = static_cast<int>(AsInteger(v, where));
        gens.push_back(smp);
        listed_raw.emplace_back(k, smp);
      }
    }
  }
  try {
    out.complex = GeometricComplex::Create(metric, std::move(coords), gens);
  } catch (const ArgumentError& e) {
    Fail(std::string("complex: ") + e.what());
  }
  out.listed.assign(out.complex->dim() + 1, {});
  for (auto& [k, smp] : listed_raw) {
    if (k == 0) continue;
    Simplex canon = smp;
    Canonicalize(&canon);
    out.listed[k].push_back(out.complex->Find(canon));
  }
  return out;
}

}  // namespace

json ParseJsonText(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    size_t limit = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON", line, col);
  }
}

ComplexPtr ComplexFromJson(const json& doc) {
  const json& c = doc.contains("complex") ? doc["complex"] : doc;
  return ParseComplex(c).complex;
}

SimplicialCurrent ChainFromJson(const json& doc) {
  ParsedComplex pc = ParseComplex(Require(doc, "complex", "document"));
  const json& cur = Require(doc, "current", "document");
  int k = static_cast<int>(AsInteger(Require(cur, "dim", "current"), "current.dim"));
  if (k < 0 || k > std::max(pc.complex->dim(), 0)) Fail("current.dim: outside the complex's dimensions");
  SimplicialCurrent t(pc.complex, k);
  if (cur.contains("coeffs")) {
    const json& coeffs = cur["coeffs"];
    if (!coeffs.is_array()) Fail("current.coeffs: expected an array");
    for (size_t i = 0; i < coeffs.size(); ++i) {
      std::string where = "current.coeffs[" + std::to_string(i) + "]";
      const json& entry = coeffs[i];
      if (!entry.is_array() || entry.size() != 2) Fail(where + ": expected [simplex_index, c]");
      int64_t idx = AsInteger(entry[0], where);
      int64_t c = AsInteger(entry[1], where);
      int simplex;
      if (k == 0) {
        if (idx < 0 || idx >= pc.complex->num_vertices()) Fail(where + ": vertex index out of range");
        simplex = static_cast<int>(idx);
      } else {
        if (idx < 0 || idx >= static_cast<int64_t>(pc.listed[k].size())) {
          Fail(where + ": simplex index out of range");
        }
        simplex = pc.listed[k][idx];
      }
      t.Add(simplex, c);
    }
  }
  return t;
}

json ComplexToJson(const GeometricComplex& complex) {
  json c;
  const int n = complex.metric().dims();
  json verts = json::array();
  for (int v = 0; v < complex.num_vertices(); ++v) {
    verts.push_back(std::vector<double>(complex.point(v), complex.point(v) + n));
  }
  c["vertices"] = verts;
  json simplices = json::object();
  std::vector<char> in_edge(complex.num_vertices(), 0);
  for (int k = 1; k <= complex.dim(); ++k) {
    json list = json::array();
    for (int i = 0; i < complex.num_simplices(k); ++i) {
      const Simplex& s = complex.simplex(k, i);
      list.push_back(std::vector<int>(s.begin(), s.end()));
      for (int v : s) in_edge[v] = 1;
    }
    simplices[std::to_string(k)] = list;
  }
  json isolated = json::array();
  for (int v = 0; v < complex.num_vertices(); ++v)
    if (complex.used_vertices()[v] && !in_edge[v]) isolated.push_back(std::vector<int>{v});
  if (!isolated.empty()) simplices["0"] = isolated;
  c["simplices"] = simplices;
  c["metric"] = MetricToJson(complex.metric());
  return c;
}

json ChainToJson(const SimplicialCurrent& t) {
  json doc;
  doc["complex"] = ComplexToJson(*t.complex());
  json coeffs = json::array();
  for (const auto& [i, c] : t.coeffs()) coeffs.push_back({i, c});
  doc["current"] = {{"dim", t.dim()}, {"coeffs", coeffs}};
  return doc;
}

OffMesh ReadOff(std::istream& in) {
  std::vector<std::string> tokens;
  std::vector<int> token_line;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      tokens.push_back(tok);
      token_line.push_back(number);
    }
  }
  size_t pos = 0;
  auto next_line = [&]() { return pos < token_line.size() ? token_line[pos] : number; };
  auto next_int = [&]() -> long {
    if (pos >= tokens.size()) throw ParseError("unexpected end of OFF data", number, 1);
    try {
      size_t used = 0;
      long v = std::stol(tokens[pos], &used);
      if (used != tokens[pos].size()) throw std::invalid_argument("");
      ++pos;
      return v;
    } catch (...) {
      throw ParseError("expected an integer, got '" + tokens[pos] + "'", next_line(), 1);
    }
  };
  auto next_double = [&]() -> double {
    if (pos >= tokens.size()) throw ParseError("unexpected end of OFF data", number, 1);
    try {
      size_t used = 0;
      double v = std::stod(tokens[pos], &used);
      if (used != tokens[pos].size()) throw std::invalid_argument("");
      ++pos;
      return v;
    } catch (...) {
      throw ParseError("expected a number, got '" + tokens[pos] + "'", next_line(), 1);
    }
  };
  if (pos < tokens.size() && tokens[pos] == "OFF") ++pos;
  long nv = next_int(), nf = next_int();
  next_int();
  if (nv < 0 || nf < 0) throw ParseError("negative OFF counts", next_line(), 1);
  std::vector<double> coords;
  for (long i = 0; i < 3 * nv; ++i) coords.push_back(next_double());
  std::vector<Simplex> triangles;
  std::vector<Simplex> oriented;
  for (long f = 0; f < nf; ++f) {
    int at = next_line();
    long k = next_int();
    if (k < 3) throw ParseError("face with fewer than 3 vertices", at, 1);
    std::vector<int> poly;
    for (long j = 0; j < k; ++j) {
      long v = next_int();
      if (v < 0 || v >= nv) throw ParseError("face vertex out of range", at, 1);
      poly.push_back(static_cast<int>(v));
    }
    for (long j = 1; j + 1 < k; ++j) {
      Simplex s{poly[0], poly[j], poly[j + 1]};
      oriented.push_back(s);
      triangles.push_back(s);
    }
    // Trailing color values, if any, stay on the face's line.
    while (pos < tokens.size() && token_line[pos] == at) ++pos;
  }
  OffMesh mesh;
  try {
    mesh.complex = GeometricComplex::Create(Metric::Euclidean(3), std::move(coords), triangles);
    mesh.surface = SimplicialCurrent(mesh.complex, 2);
    for (const Simplex& s : oriented) mesh.surface.AddSimplex(s, 1);
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("OFF mesh: ") + e.what());
  }
  return mesh;
}

SignedPointSet PointSetFromJson(const json& doc) {
  SignedPointSet out;
  try {
    if (doc.contains("distances")) {
      out.space = FiniteMetricSpace(AsMatrix(doc["distances"], "distances"));
    } else {
      auto pts = AsMatrix(Require(doc, "points", "document"), "points");
      out.space = FiniteMetricSpace::FromPoints(pts);
    }
  } catch (const ArgumentError& e) {
    Fail(std::string("points: ") + e.what());
  }
  for (const auto& v : Require(doc, "theta", "document")) out.theta.push_back(static_cast<int>(AsInteger(v, "theta")));
  for (const auto& v : Require(doc, "sigma", "document")) out.sigma.push_back(static_cast<int>(AsInteger(v, "sigma")));
  if (static_cast<int>(out.theta.size()) != out.space.size() ||
      static_cast<int>(out.sigma.size()) != out.space.size()) {
    Fail("theta and sigma need one entry per point");
  }
  return out;
}

}  // namespace currentlab
