#pragma once

#include "stresskit/statics.hpp"
#include "stresskit/stresses.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace stresskit::io {

/// {"num_vertices": n, "edges": [[i,j], ...]}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

/// Graph JSON plus "dim" and "coordinates".
Framework framework_from_json(const nlohmann::json& j);
nlohmann::json framework_to_json(const Framework& f);

/// Reads a JSON document; throws InvalidInput on I/O or parse failure.
nlohmann::json read_json_file(const std::string& path);

/// "builtin:<name>" or a path to a graph JSON file.
Graph load_graph(const std::string& source);

/// n rows of n comma-separated values, printed with round-trip precision.
void write_stress_csv(std::ostream& out, const Matrix& omega);
/// Throws InvalidInput on malformed or non-square content.
Matrix read_stress_csv(std::istream& in);

/// {"load": [[f_1], ...]} or a bare array of rows.
Load load_from_json(const nlohmann::json& j, int n, int d);
nlohmann::json resolution_to_json(const Graph& g, const Resolution& r);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json stress_class_to_json(const StressClass& c);

}  // namespace stresskit::io
