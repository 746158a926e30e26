// Reading and writing the *Vertices/*Edges network format. Writers emit a
// canonical form (label-sorted vertices, normalized edge order) so that a
// read-write round trip of any valid file is stable from the second write on.
#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/graph.hpp"

namespace scimap {

struct NetworkFile {
    WeightedGraph graph;
    std::optional<Positions> coordinates;  // present only when every vertex had x y
};

namespace detail {

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline bool parse_double_token(const std::string& token, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(token, &used);
        return used == token.size();
    } catch (...) {
        return false;
    }
}

inline bool parse_int_token(const std::string& token, long& out) {
    try {
        std::size_t used = 0;
        out = std::stol(token, &used);
        return used == token.size();
    } catch (...) {
        return false;
    }
}

// Vertex line: id, quoted label, optionally x y.
struct VertexLine {
    long id = 0;
    std::string label;
    bool has_coords = false;
    double x = 0.0, y = 0.0;
};

inline VertexLine parse_vertex_line(const std::string& line, std::size_t line_number) {
    VertexLine v;
    std::size_t i = 0;
    auto skip_space = [&]() {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    auto take_token = [&]() {
        skip_space();
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        return line.substr(start, i - start);
    };

    const std::string id_token = take_token();
    if (!parse_int_token(id_token, v.id))
        throw Error("line " + std::to_string(line_number) + ": vertex id '" + id_token +
                    "' is not an integer");
    skip_space();
    if (i >= line.size() || line[i] != '"')
        throw Error("line " + std::to_string(line_number) + ": vertex label must be quoted");
    ++i;
    while (i < line.size() && line[i] != '"') v.label += line[i++];
    if (i >= line.size())
        throw Error("line " + std::to_string(line_number) + ": unterminated vertex label");
    ++i;

    const std::string xs = take_token();
    if (xs.empty()) return v;
    const std::string ys = take_token();
    if (ys.empty() || !parse_double_token(xs, v.x) || !parse_double_token(ys, v.y))
        throw Error("line " + std::to_string(line_number) + ": malformed vertex coordinates");
    skip_space();
    if (i < line.size())
        throw Error("line " + std::to_string(line_number) + ": unexpected trailing content");
    v.has_coords = true;
    return v;
}

}  // namespace detail

inline NetworkFile read_network(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;
    long declared = -1;
    std::vector<detail::VertexLine> vertices;
    std::vector<GraphEdge> parsed_edges;
    bool in_edges = false;
    std::map<long, int> id_to_index;

    while (std::getline(in, line)) {
        ++line_number;
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '%') continue;  // comment

        if (line[0] == '*') {
            std::istringstream header(line);
            std::string keyword;
            header >> keyword;
            for (auto& c : keyword) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (keyword == "*vertices") {
                if (declared >= 0)
                    throw Error("line " + std::to_string(line_number) + ": repeated *Vertices section");
                if (!(header >> declared) || declared < 0)
                    throw Error("line " + std::to_string(line_number) + ": *Vertices needs a count");
            } else if (keyword == "*edges") {
                if (declared < 0)
                    throw Error("line " + std::to_string(line_number) + ": *Edges before *Vertices");
                if (static_cast<long>(vertices.size()) != declared)
                    throw Error("line " + std::to_string(line_number) + ": *Vertices declared " +
                                std::to_string(declared) + " vertices, found " +
                                std::to_string(vertices.size()));
                in_edges = true;
            } else {
                throw Error("line " + std::to_string(line_number) + ": unknown section '" + keyword + "'");
            }
            continue;
        }

        if (!in_edges) {
            if (declared < 0)
                throw Error("line " + std::to_string(line_number) + ": content before *Vertices");
            auto v = detail::parse_vertex_line(line, line_number);
            if (id_to_index.count(v.id))
                throw Error("line " + std::to_string(line_number) + ": duplicate vertex id " +
                            std::to_string(v.id));
            if (v.id < 1 || v.id > declared)
                throw Error("line " + std::to_string(line_number) + ": vertex id " +
                            std::to_string(v.id) + " outside 1.." + std::to_string(declared));
            id_to_index[v.id] = static_cast<int>(vertices.size());
            vertices.push_back(std::move(v));
        } else {
            std::istringstream fields(line);
            long u = 0, v = 0;
            double w = 0.0;
            std::string u_tok, v_tok, w_tok, extra;
            fields >> u_tok >> v_tok >> w_tok;
            if (fields >> extra)
                throw Error("line " + std::to_string(line_number) + ": unexpected trailing content");
            if (!detail::parse_int_token(u_tok, u) || !detail::parse_int_token(v_tok, v))
                throw Error("line " + std::to_string(line_number) + ": malformed edge endpoints");
            if (w_tok.empty() || !detail::parse_double_token(w_tok, w))
                throw Error("line " + std::to_string(line_number) + ": edge needs a numeric weight");
            if (!id_to_index.count(u) || !id_to_index.count(v))
                throw Error("line " + std::to_string(line_number) + ": edge references undeclared vertex " +
                            std::to_string(id_to_index.count(u) ? v : u));
            if (u == v)
                throw Error("line " + std::to_string(line_number) + ": self-loop on vertex " +
                            std::to_string(u));
            parsed_edges.push_back({id_to_index.at(u), id_to_index.at(v), w});
        }
    }
    if (declared < 0) throw Error("network file has no *Vertices section");
    if (!in_edges && static_cast<long>(vertices.size()) != declared)
        throw Error("*Vertices declared " + std::to_string(declared) + " vertices, found " +
                    std::to_string(vertices.size()));

    NetworkFile out;
    for (const auto& v : vertices) out.graph.add_node(v.label);
    for (const auto& e : parsed_edges) out.graph.add_edge(e.u, e.v, e.w);
    const bool all_coords =
        !vertices.empty() && std::all_of(vertices.begin(), vertices.end(),
                                         [](const auto& v) { return v.has_coords; });
    if (all_coords) {
        Positions pos;
        for (const auto& v : vertices) pos.push_back({v.x, v.y});
        out.coordinates = std::move(pos);
    }
    return out;
}

inline NetworkFile read_network(const std::string& text) {
    std::istringstream in(text);
    return read_network(in);
}

namespace detail {

// The format has no escape for quotes or line breaks inside labels, so the
// writer substitutes them rather than fail; every other byte (non-ASCII
// included) passes through verbatim.
inline std::string network_safe_label(const std::string& label) {
    std::string out;
    for (char c : label) out += (c == '"') ? '\'' : (c == '\n' || c == '\r') ? ' ' : c;
    return out;
}

}  // namespace detail

// Canonical writer: vertices sorted by label and renumbered 1..N, edges with
// the lower renumbered endpoint first, sorted, weights with six decimals.
inline void write_network(std::ostream& out, const WeightedGraph& g,
                          const Positions* coordinates = nullptr) {
    const std::size_t n = g.node_count();
    if (coordinates && coordinates->size() != n)
        throw Error("coordinate count " + std::to_string(coordinates->size()) +
                    " does not match vertex count " + std::to_string(n));

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& la = g.node(a).label;
        const auto& lb = g.node(b).label;
        return la != lb ? la < lb : a < b;
    });
    std::vector<int> new_id(n);
    for (std::size_t i = 0; i < n; ++i) new_id[order[i]] = static_cast<int>(i) + 1;

    out << "*Vertices " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        const int old = order[i];
        out << (i + 1) << " \"" << detail::network_safe_label(g.node(old).label) << '"';
        if (coordinates)
            out << ' ' << format_fixed((*coordinates)[old].x, 6) << ' '
                << format_fixed((*coordinates)[old].y, 6);
        out << '\n';
    }

    std::vector<GraphEdge> edges = g.edges();
    for (auto& e : edges) {
        int u = new_id[e.u], v = new_id[e.v];
        if (u > v) std::swap(u, v);
        e.u = u;
        e.v = v;
    }
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    out << "*Edges\n";
    for (const auto& e : edges)
        out << e.u << ' ' << e.v << ' ' << format_fixed(e.w, 6) << '\n';
}

inline std::string write_network(const WeightedGraph& g, const Positions* coordinates = nullptr) {
    std::ostringstream out;
    write_network(out, g, coordinates);
    return out.str();
}

}  // namespace scimap
