#include "stresskit/io.hpp"

#include "stresskit/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stresskit::io {

namespace {

int require_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw Error(ErrorKind::InvalidInput, std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

Matrix rows_to_matrix(const nlohmann::json& rows, Eigen::Index cols, const char* what) {
  if (!rows.is_array()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be an array of rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::InvalidInput,
                  std::string(what) + " row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (!row[a].is_number()) throw Error(ErrorKind::InvalidInput, std::string(what) + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = row[a].get<double>();
    }
  }
  return m;
}

}  // namespace

Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "graph JSON must be an object");
  const int n = require_int(j, "num_vertices");
  if (!j.contains("edges") || !j.at("edges").is_array()) {
    throw Error(ErrorKind::InvalidInput, "missing array field 'edges'");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(ErrorKind::InvalidInput, "each edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(n, edges);
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"num_vertices", g.num_vertices()}, {"edges", edges}};
}

Framework framework_from_json(const nlohmann::json& j) {
  Graph g = graph_from_json(j);
  const int d = require_int(j, "dim");
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dim must be at least 1");
  if (!j.contains("coordinates")) throw Error(ErrorKind::InvalidInput, "missing field 'coordinates'");
  Matrix coords = rows_to_matrix(j.at("coordinates"), d, "coordinates");
  if (coords.rows() != g.num_vertices()) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(g.num_vertices()) + " coordinate rows, got " +
                                             std::to_string(coords.rows()));
  }
  return Framework(std::move(g), d, std::move(coords));
}

nlohmann::json framework_to_json(const Framework& f) {
  nlohmann::json j = graph_to_json(f.graph());
  j["dim"] = f.dim();
  j["coordinates"] = matrix_to_json(f.coords());
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

Graph load_graph(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin::by_name(source.substr(prefix.size()));
  return graph_from_json(read_json_file(source));
}

void write_stress_csv(std::ostream& out, const Matrix& omega) {
  char buf[32];
  for (Eigen::Index i = 0; i < omega.rows(); ++i) {
    for (Eigen::Index j = 0; j < omega.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", omega(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

Matrix read_stress_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad CSV cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw Error(ErrorKind::InvalidInput, "stress CSV must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Load load_from_json(const nlohmann::json& j, int n, int d) {
  const nlohmann::json& rows = j.is_object() ? j.at("load") : j;
  Load load{rows_to_matrix(rows, d, "load")};
  if (load.forces.rows() != n) {
    throw Error(ErrorKind::InvalidInput, "load must have one vector per vertex");
  }
  return load;
}

nlohmann::json resolution_to_json(const Graph& g, const Resolution& r) {
  nlohmann::json entries = nlohmann::json::array();
  const auto& edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    entries.push_back({{"edge", {edges[k].u, edges[k].v}}, {"weight", r.weights(static_cast<Eigen::Index>(k))}});
  }
  return {{"resolution", entries}};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::InvalidInput, "expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

nlohmann::json stress_class_to_json(const StressClass& c) {
  return {{"rank", c.rank},
          {"is_gstress", c.is_gstress},
          {"is_fstress", c.is_fstress},
          {"is_psd", c.is_psd},
          {"gstress_exact", c.gstress_exact},
          {"fstress_exact", c.fstress_exact}};
}

}  // namespace stresskit::io
