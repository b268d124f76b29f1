#include "hyperwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hyperwalk/error.hpp"

namespace hyperwalk {
namespace {

VertexSet read_vertex_list(const Json& node, const std::string& where)
{
    if (!node.is_array()) throw ValidationError(where + ": expected an array of vertex indices");
    VertexSet out;
    out.reserve(node.size());
    for (const auto& item : node) {
        if (!item.is_number_integer()) throw ValidationError(where + ": vertex entries must be integers");
        auto value = item.get<long long>();
        if (value < 0) {
            throw ValidationError(where + ": vertex " + std::to_string(value) + " out of range");
        }
        out.push_back(static_cast<Vertex>(value));
    }
    return out;
}

std::vector<std::string> read_labels(const Json& doc)
{
    std::vector<std::string> labels;
    if (!doc.contains("labels")) return labels;
    const auto& node = doc.at("labels");
    if (!node.is_array()) throw ValidationError("labels: expected an array of strings");
    for (const auto& item : node) {
        if (!item.is_string()) throw ValidationError("labels: expected an array of strings");
        labels.push_back(item.get<std::string>());
    }
    return labels;
}

Json vertex_list(const VertexSet& s)
{
    Json arr = Json::array();
    for (Vertex v : s) arr.push_back(v);
    return arr;
}

} // namespace

AnyHypergraph parse_hypergraph(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed hyper-graph document: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("malformed hyper-graph document: expected a JSON object");
    if (!doc.contains("n") || !doc.at("n").is_number_integer() || doc.at("n").get<long long>() < 1) {
        throw ValidationError("malformed hyper-graph document: \"n\" must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc.at("n").get<long long>());
    const bool has_edges = doc.contains("edges");
    const bool has_arcs = doc.contains("arcs");
    if (has_edges == has_arcs) {
        throw ValidationError("malformed hyper-graph document: exactly one of \"edges\" or \"arcs\" is required");
    }
    auto labels = read_labels(doc);

    if (has_edges) {
        const auto& node = doc.at("edges");
        if (!node.is_array()) throw ValidationError("malformed hyper-graph document: \"edges\" must be an array");
        std::vector<VertexSet> edges;
        for (std::size_t i = 0; i < node.size(); ++i) {
            edges.push_back(read_vertex_list(node[i], "edge " + std::to_string(i)));
        }
        return Hypergraph(n, std::move(edges), std::move(labels));
    }

    const auto& node = doc.at("arcs");
    if (!node.is_array()) throw ValidationError("malformed hyper-graph document: \"arcs\" must be an array");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string where = "arc " + std::to_string(i);
        const auto& a = node[i];
        if (!a.is_object() || !a.contains("org") || !a.contains("dst")) {
            throw ValidationError(where + ": expected an object with \"org\" and \"dst\"");
        }
        arcs.push_back(Arc{read_vertex_list(a.at("org"), where + " org"), read_vertex_list(a.at("dst"), where + " dst")});
    }
    return DirectedHypergraph(n, std::move(arcs), std::move(labels));
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AnyHypergraph load_hypergraph(const std::filesystem::path& path)
{
    return parse_hypergraph(read_text_file(path));
}

Json to_json(const Hypergraph& h)
{
    Json doc;
    doc["n"] = h.num_vertices();
    Json edges = Json::array();
    for (const auto& e : h.edges()) edges.push_back(vertex_list(e));
    doc["edges"] = std::move(edges);
    if (!h.labels().empty()) doc["labels"] = h.labels();
    return doc;
}

Json to_json(const DirectedHypergraph& d)
{
    Json doc;
    doc["n"] = d.num_vertices();
    Json arcs = Json::array();
    for (const auto& a : d.arcs()) {
        Json item;
        item["org"] = vertex_list(a.org);
        item["dst"] = vertex_list(a.dst);
        arcs.push_back(std::move(item));
    }
    doc["arcs"] = std::move(arcs);
    if (!d.labels().empty()) doc["labels"] = d.labels();
    return doc;
}

Json to_json(const RadioHypergraph& r)
{
    return to_json(r.directed());
}

std::vector<Point> parse_points_csv(std::string_view text)
{
    std::vector<Point> points;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (header) {
            header = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ValidationError("points line " + std::to_string(line_no) + ": expected x,y");
        }
        auto parse = [&](std::string_view field) {
            while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
            while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
            double value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw ValidationError("points line " + std::to_string(line_no) + ": bad number '" +
                                      std::string(field) + "'");
            }
            return value;
        };
        std::string_view view(line);
        points.push_back(Point{parse(view.substr(0, comma)), parse(view.substr(comma + 1))});
    }
    return points;
}

std::string format_double(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Json number_or_inf(double value)
{
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

} // namespace hyperwalk
