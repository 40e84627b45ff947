#include "vemasp/errors.hpp"
#include "vemasp/mesh.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace vemasp {

namespace {

using nlohmann::json;

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& member(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  if (!it->is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return *it;
}

}  // namespace

PolygonalMesh parse_mesh(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_column(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("mesh file must hold a JSON object");

  const json& jv = member(doc, "vertices");
  const json& jc = member(doc, "cells");

  std::vector<Point2> vertices;
  vertices.reserve(jv.size());
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const json& p = jv[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError("vertices[" + std::to_string(i) + "]: expected [x, y]");
    }
    vertices.push_back({p[0].get<double>(), p[1].get<double>()});
  }

  std::vector<std::vector<int>> cells;
  cells.reserve(jc.size());
  const auto nv = static_cast<long long>(vertices.size());
  for (std::size_t c = 0; c < jc.size(); ++c) {
    const json& cyc = jc[c];
    if (!cyc.is_array()) throw ParseError("cells[" + std::to_string(c) + "]: expected an index array");
    std::vector<int> ids;
    ids.reserve(cyc.size());
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const std::string where = "cells[" + std::to_string(c) + "][" + std::to_string(k) + "]";
      if (!cyc[k].is_number_integer()) throw ParseError(where + ": expected an integer");
      const long long v = cyc[k].get<long long>();
      if (v < 0 || v >= nv) {
        throw ParseError(where + ": vertex index " + std::to_string(v) + " outside [0, " +
                         std::to_string(nv) + ")");
      }
      ids.push_back(static_cast<int>(v));
    }
    cells.push_back(std::move(ids));
  }

  PolygonalMesh mesh(std::move(vertices), std::move(cells));
  const ValidationReport report = validate(mesh);
  if (!report.nonmanifold_facets.empty() || report.euler_characteristic != 1) {
    throw TopologyError("mesh failed topology checks on load: " + report.summary());
  }
  return mesh;
}

PolygonalMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open mesh file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_mesh(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_mesh(const PolygonalMesh& mesh) {
  // nlohmann/json prints doubles in shortest round-trip form.
  std::ostringstream os;
  os << "{\n  \"vertices\": [";
  const auto& vs = mesh.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << '[' << json(vs[i].x).dump() << ", " << json(vs[i].y).dump() << ']';
  }
  os << "\n  ],\n  \"cells\": [";
  const auto& cs = mesh.cells();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    os << (c ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < cs[c].size(); ++k) os << (k ? ", " : "") << cs[c][k];
    os << ']';
  }
  os << "\n  ]\n}\n";
  return os.str();
}

void write_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write mesh file " + path.string());
  out << format_mesh(mesh);
  if (!out) throw InvalidArgument("failed writing mesh file " + path.string());
}

}  // namespace vemasp
