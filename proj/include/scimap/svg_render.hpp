// Static map and animation-frame rendering to standalone SVG. Output is a
// pure function of (graph, positions, encoding): fixed three-decimal
// coordinates, a fixed palette, no environment-dependent content.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/dynamic_layout.hpp"
#include "scimap/graph.hpp"
#include "scimap/graph_stats.hpp"

namespace scimap {

enum class SizeSource { degree, weighted_degree, constant };
enum class ColorSource { community, factor, constant };

struct VisualEncoding {
    SizeSource node_size_source = SizeSource::degree;
    ColorSource node_color_source = ColorSource::constant;
    std::vector<int> clusters;              // community/factor index per node; -1 = neutral
    std::string neutral_color = "#ffffff";  // factor-neutral and unclustered nodes
    double min_edge_width = 0.5;
    double max_edge_width = 4.0;
    double canvas_width = 800.0;
    double canvas_height = 600.0;
    bool draw_labels = true;
    double margin_fraction = 0.05;  // of the shorter canvas side, each border
    double max_node_radius = 14.0;
    double min_node_radius = 2.5;
    double label_size = 10.0;
    std::string background = "#fffff8";
};

namespace detail {

inline const std::array<const char*, 12>& cluster_palette() {
    static const std::array<const char*, 12> palette = {
        "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
        "#f781bf", "#1b9e77", "#66a61e", "#e6ab02", "#7570b3", "#80b1d3"};
    return palette;
}

inline std::string node_color(std::size_t i, const VisualEncoding& enc) {
    if (enc.node_color_source == ColorSource::constant) return "#377eb8";
    const int cluster = i < enc.clusters.size() ? enc.clusters[i] : -1;
    if (cluster < 0) return enc.neutral_color;
    return cluster_palette()[static_cast<std::size_t>(cluster) % cluster_palette().size()];
}

inline std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string svg_num(double v) { return format_fixed(v, 3); }

// Uniform mapping from a data bounding box onto the canvas, y flipped so
// larger data y is drawn higher. A degenerate span maps to the center.
struct CanvasTransform {
    double scale = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    Point2 apply(const Point2& p) const {
        return {offset_x + scale * p.x, offset_y - scale * p.y};
    }
};

inline CanvasTransform fit_canvas(double min_x, double max_x, double min_y, double max_y,
                                  const VisualEncoding& enc) {
    const double margin = enc.margin_fraction * std::min(enc.canvas_width, enc.canvas_height);
    const double usable_w = enc.canvas_width - 2.0 * margin;
    const double usable_h = enc.canvas_height - 2.0 * margin;
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;

    CanvasTransform t;
    if (span_x > 0.0 || span_y > 0.0)
        t.scale = std::min(span_x > 0.0 ? usable_w / span_x : usable_w / span_y,
                           span_y > 0.0 ? usable_h / span_y : usable_h / span_x);
    const double cx = (min_x + max_x) / 2.0;
    const double cy = (min_y + max_y) / 2.0;
    t.offset_x = enc.canvas_width / 2.0 - t.scale * cx;
    t.offset_y = enc.canvas_height / 2.0 + t.scale * cy;
    return t;
}

// Circle area proportional to the size value; non-positive values and the
// all-zero case fall back to the minimum radius, keeping the mapping
// monotone non-decreasing.
inline double node_radius(double value, double max_value, const VisualEncoding& enc) {
    if (max_value <= 0.0 || value <= 0.0) return enc.min_node_radius;
    const double r = enc.max_node_radius * std::sqrt(value / max_value);
    return std::max(r, enc.min_node_radius);
}

inline double edge_width(double w, double min_w, double max_w, const VisualEncoding& enc) {
    if (max_w <= min_w) return (enc.min_edge_width + enc.max_edge_width) / 2.0;
    const double f = (w - min_w) / (max_w - min_w);
    return enc.min_edge_width + f * (enc.max_edge_width - enc.min_edge_width);
}

inline void svg_open(std::ostream& out, const VisualEncoding& enc) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(enc.canvas_width)
        << "\" height=\"" << svg_num(enc.canvas_height) << "\" viewBox=\"0 0 "
        << svg_num(enc.canvas_width) << ' ' << svg_num(enc.canvas_height) << "\">\n"
        << "<rect width=\"" << svg_num(enc.canvas_width) << "\" height=\""
        << svg_num(enc.canvas_height) << "\" fill=\"" << enc.background << "\"/>\n";
}

inline std::vector<double> node_sizes(const WeightedGraph& g, const VisualEncoding& enc) {
    switch (enc.node_size_source) {
        case SizeSource::degree: return degree_centrality(g, false);
        case SizeSource::weighted_degree: return degree_centrality(g, true);
        case SizeSource::constant: return {};
    }
    return {};
}

}  // namespace detail

// Render one network map. Edges are drawn under nodes; an empty graph yields
// a valid document with no shapes.
inline std::string render_map(const WeightedGraph& g, const Positions& positions,
                              const VisualEncoding& enc = {}) {
    const std::size_t n = g.node_count();
    if (positions.size() < n)
        throw Error("no position for node '" + g.node(static_cast<int>(positions.size())).label + "'");
    if (positions.size() > n)
        throw Error("got " + std::to_string(positions.size()) + " positions for " +
                    std::to_string(n) + " nodes");
    if (enc.node_color_source != ColorSource::constant && enc.clusters.size() != n)
        throw Error("cluster count " + std::to_string(enc.clusters.size()) +
                    " does not match node count " + std::to_string(n));

    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    if (n > 0) {
        min_x = max_x = positions[0].x;
        min_y = max_y = positions[0].y;
        for (const auto& p : positions) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const auto t = detail::fit_canvas(min_x, max_x, min_y, max_y, enc);

    const auto sizes = detail::node_sizes(g, enc);
    double max_size = 0.0;
    for (double s : sizes) max_size = std::max(max_size, s);
    double min_w = 0.0, max_w = 0.0;
    if (!g.edges().empty()) {
        min_w = max_w = g.edges()[0].w;
        for (const auto& e : g.edges()) {
            min_w = std::min(min_w, e.w);
            max_w = std::max(max_w, e.w);
        }
    }
    auto radius_of = [&](std::size_t i) {
        return sizes.empty() ? 0.5 * enc.max_node_radius
                             : detail::node_radius(sizes[i], max_size, enc);
    };

    std::ostringstream out;
    detail::svg_open(out, enc);

    out << "<g stroke=\"#999999\" stroke-opacity=\"0.6\" fill=\"none\">\n";
    for (const auto& e : g.edges()) {
        const auto a = t.apply(positions[e.u]);
        const auto b = t.apply(positions[e.v]);
        out << "<line x1=\"" << detail::svg_num(a.x) << "\" y1=\"" << detail::svg_num(a.y)
            << "\" x2=\"" << detail::svg_num(b.x) << "\" y2=\"" << detail::svg_num(b.y)
            << "\" stroke-width=\"" << detail::svg_num(detail::edge_width(e.w, min_w, max_w, enc))
            << "\"/>\n";
    }
    out << "</g>\n<g stroke=\"#333333\" stroke-width=\"0.75\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = t.apply(positions[i]);
        out << "<circle cx=\"" << detail::svg_num(p.x) << "\" cy=\"" << detail::svg_num(p.y)
            << "\" r=\"" << detail::svg_num(radius_of(i)) << "\" fill=\""
            << detail::node_color(i, enc) << "\"/>\n";
    }
    out << "</g>\n";

    if (enc.draw_labels) {
        out << "<g font-family=\"sans-serif\" font-size=\"" << detail::svg_num(enc.label_size)
            << "\" fill=\"#111111\" text-anchor=\"middle\">\n";
        for (std::size_t i = 0; i < n; ++i) {
            const auto p = t.apply(positions[i]);
            out << "<text x=\"" << detail::svg_num(p.x) << "\" y=\""
                << detail::svg_num(p.y + radius_of(i) + enc.label_size) << "\">"
                << detail::xml_escape(g.node(static_cast<int>(i)).label) << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// Render every frame of a sequence with one camera: the bounding box is
// computed across ALL frames so that the scaling never changes between
// frames. Node opacity is carried through; constructs draw as diamonds.
inline std::vector<std::string> render_frames(const AnimationSequence& seq,
                                              const VisualEncoding& enc = {}) {
    for (const auto& frame : seq.frames)
        for (const auto& node : frame.nodes)
            if (node.node_id < 0 || node.node_id >= static_cast<int>(seq.labels.size()))
                throw Error("frame node id " + std::to_string(node.node_id) +
                            " outside the label universe");

    bool any = false;
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto& frame : seq.frames)
        for (const auto& node : frame.nodes) {
            if (!any) {
                min_x = max_x = node.x;
                min_y = max_y = node.y;
                any = true;
            }
            min_x = std::min(min_x, node.x);
            max_x = std::max(max_x, node.x);
            min_y = std::min(min_y, node.y);
            max_y = std::max(max_y, node.y);
        }
    const auto t = detail::fit_canvas(min_x, max_x, min_y, max_y, enc);
    const double r = 0.5 * enc.max_node_radius;

    auto color_of = [&](int id) {
        if (enc.node_color_source == ColorSource::constant) return std::string("#377eb8");
        const int cluster = id < static_cast<int>(seq.clusters.size()) ? seq.clusters[id] : -1;
        if (cluster < 0) return enc.neutral_color;
        return std::string(
            detail::cluster_palette()[static_cast<std::size_t>(cluster) %
                                      detail::cluster_palette().size()]);
    };

    std::vector<std::string> out;
    for (const auto& frame : seq.frames) {
        std::ostringstream svg;
        detail::svg_open(svg, enc);
        svg << "<g stroke=\"#333333\" stroke-width=\"0.75\">\n";
        for (const auto& node : frame.nodes) {
            const auto p = t.apply({node.x, node.y});
            const std::string color = color_of(node.node_id);
            if (node.construct) {
                svg << "<path d=\"M " << detail::svg_num(p.x) << ' ' << detail::svg_num(p.y - r)
                    << " L " << detail::svg_num(p.x + r) << ' ' << detail::svg_num(p.y) << " L "
                    << detail::svg_num(p.x) << ' ' << detail::svg_num(p.y + r) << " L "
                    << detail::svg_num(p.x - r) << ' ' << detail::svg_num(p.y) << " Z\" fill=\""
                    << color << "\" opacity=\"" << detail::svg_num(node.opacity) << "\"/>\n";
            } else {
                svg << "<circle cx=\"" << detail::svg_num(p.x) << "\" cy=\"" << detail::svg_num(p.y)
                    << "\" r=\"" << detail::svg_num(r) << "\" fill=\"" << color << "\" opacity=\""
                    << detail::svg_num(node.opacity) << "\"/>\n";
            }
        }
        svg << "</g>\n";
        if (enc.draw_labels) {
            svg << "<g font-family=\"sans-serif\" font-size=\"" << detail::svg_num(enc.label_size)
                << "\" fill=\"#111111\" text-anchor=\"middle\">\n";
            for (const auto& node : frame.nodes) {
                const auto p = t.apply({node.x, node.y});
                svg << "<text x=\"" << detail::svg_num(p.x) << "\" y=\""
                    << detail::svg_num(p.y + r + enc.label_size) << "\" opacity=\""
                    << detail::svg_num(node.opacity) << "\">"
                    << detail::xml_escape(seq.labels[node.node_id]) << "</text>\n";
            }
            svg << "</g>\n";
        }
        svg << "</svg>\n";
        out.push_back(svg.str());
    }
    return out;
}

}  // namespace scimap
