#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hyperwalk/hypergraph.hpp"

namespace hyperwalk {

using Json = nlohmann::ordered_json;

/// Either shape of the hyper-graph document, picked by its "edges"/"arcs" key.
using AnyHypergraph = std::variant<Hypergraph, DirectedHypergraph>;

/**
 * Parses the hyper-graph JSON document.
 *
 *   {"n": 3, "edges": [[0, 1], [1, 2]]}
 *   {"n": 3, "arcs": [{"org": [0], "dst": [1]}, ...]}
 *
 * An optional "labels" array of n strings is accepted in both shapes.
 * Throws ValidationError with the offending edge/arc index.
 */
AnyHypergraph parse_hypergraph(std::string_view text);
AnyHypergraph load_hypergraph(const std::filesystem::path& path);

Json to_json(const Hypergraph& h);
Json to_json(const DirectedHypergraph& d);
Json to_json(const RadioHypergraph& r);

struct Point {
    double x = 0;
    double y = 0;
};

/// Reads "x,y" rows after a header line. Blank lines are skipped.
std::vector<Point> parse_points_csv(std::string_view text);

/// printf "%.17g"; non-finite values become "inf", "-inf" and "nan".
std::string format_double(double value);

/// Row-major CSV with 17 significant digits per entry.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// JSON has no infinity; unreachable values are written as the string "inf".
Json number_or_inf(double value);

std::string read_text_file(const std::filesystem::path& path);

} // namespace hyperwalk
