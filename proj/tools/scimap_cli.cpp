// Command-line front end: each analysis stage is a subcommand reading and
// writing the documented file formats, so stages compose through files.
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scimap/scimap.hpp"

namespace {

using namespace scimap;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

LabeledMatrix load_matrix(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_matrix_csv(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

NetworkFile load_network(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_network(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

LabeledMatrix to_labeled(const SimilarityMatrix& sim) {
    LabeledMatrix out;
    out.row_labels = sim.labels;
    out.col_labels = sim.labels;
    out.values = sim.values;
    return out;
}

// A square labeled CSV reinterpreted as a symmetric matrix. Cells written by
// this tool are exact decimal strings, so symmetry survives the round trip;
// hand-edited asymmetry beyond 1e-9 is rejected, smaller drift symmetrized.
SimilarityMatrix similarity_from_labeled(const LabeledMatrix& mat, Measure measure,
                                         const std::string& path) {
    if (mat.rows() != mat.cols())
        throw Error(path + ": expected a square matrix, got " + std::to_string(mat.rows()) + "x" +
                    std::to_string(mat.cols()));
    for (std::size_t i = 0; i < mat.rows(); ++i)
        if (mat.row_labels[i] != mat.col_labels[i])
            throw Error(path + ": row label '" + mat.row_labels[i] + "' does not match column label '" +
                        mat.col_labels[i] + "'");
    auto sim = SimilarityMatrix::zeros(mat.row_labels, measure);
    sim.values = mat.values;
    sim.require_symmetric(1e-9);
    for (std::size_t i = 0; i < sim.size(); ++i)
        for (std::size_t j = i + 1; j < sim.size(); ++j) sim.at(j, i) = sim.at(i, j);
    return sim;
}

std::set<VariableKind> parse_kinds(const std::string& spec) {
    std::set<VariableKind> kinds;
    for (const auto& raw : detail::split(spec, ',')) {
        const std::string k = detail::trim(raw);
        if (k == "words" || k == "word")
            kinds.insert(VariableKind::word);
        else if (k == "authors" || k == "author")
            kinds.insert(VariableKind::author);
        else if (k == "references" || k == "reference")
            kinds.insert(VariableKind::reference);
        else
            throw Error("unknown variable kind '" + k + "' (use words, authors, references)");
    }
    if (kinds.empty()) throw Error("at least one variable kind is required");
    return kinds;
}

std::vector<std::string> load_stopwords(const std::string& path) {
    std::vector<std::string> words;
    auto in = open_input(path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string w = detail::trim(line);
        if (!w.empty() && w[0] != '#') words.push_back(w);
    }
    return words;
}

// Group specs for mi3: comma-separated column labels; a token that matches
// no label but parses as an integer selects the 0-based column index.
std::vector<std::size_t> parse_group(const std::string& spec, const LabeledMatrix& mat,
                                     const std::string& flag) {
    std::vector<std::size_t> cols;
    for (const auto& raw : detail::split(spec, ',')) {
        const std::string token = detail::trim(raw);
        if (token.empty()) throw Error(flag + ": empty column selector");
        bool found = false;
        for (std::size_t c = 0; c < mat.cols(); ++c)
            if (mat.col_labels[c] == token) {
                cols.push_back(c);
                found = true;
                break;
            }
        if (found) continue;
        const bool numeric = !token.empty() && token.find_first_not_of("0123456789") == std::string::npos;
        if (!numeric)
            throw Error(flag + ": no column labeled '" + token + "'");
        cols.push_back(static_cast<std::size_t>(std::stoul(token)));
    }
    return cols;
}

std::string zero_padded(std::size_t index, std::size_t count) {
    std::size_t width = 3;
    std::size_t v = count > 0 ? count - 1 : 0;
    std::size_t digits = 1;
    while (v >= 10) {
        v /= 10;
        ++digits;
    }
    width = std::max(width, digits);
    std::string s = std::to_string(index);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

// label,community CSV (header required); labels must exist in the graph,
// unlisted nodes stay unclustered.
std::vector<int> load_clusters(const std::string& path, const WeightedGraph& g) {
    std::vector<int> clusters(g.node_count(), -1);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < g.node_count(); ++i)
        index[g.node(static_cast<int>(i)).label] = static_cast<int>(i);

    auto in = open_input(path);
    std::string record;
    std::size_t line_number = 0;
    if (!scimap::detail::csv_read_record(in, record, line_number))
        throw Error(path + ": empty cluster file");
    const auto header = scimap::detail::csv_split(record, line_number);
    if (header.size() != 2 || header[0] != "label" || header[1] != "community")
        throw Error(path + ": cluster files start with 'label,community'");
    while (scimap::detail::csv_read_record(in, record, line_number)) {
        if (record.empty()) continue;
        const auto fields = scimap::detail::csv_split(record, line_number);
        if (fields.size() != 2)
            throw Error(path + ": line " + std::to_string(line_number) + ": expected 2 fields");
        auto it = index.find(fields[0]);
        if (it == index.end())
            throw Error(path + ": line " + std::to_string(line_number) + ": no node labeled '" +
                        fields[0] + "'");
        clusters[it->second] =
            static_cast<int>(scimap::detail::csv_parse_number(fields[1], line_number));
    }
    return clusters;
}

GeodesicMode parse_geodesic(const std::string& s) {
    if (s == "hop") return GeodesicMode::hop;
    if (s == "inverse-weight") return GeodesicMode::inverse_weight;
    throw Error("unknown geodesic mode '" + s + "' (use hop, inverse-weight)");
}

DisconnectedPolicy parse_disconnected(const std::string& s) {
    if (s == "error") return DisconnectedPolicy::error;
    if (s == "bridge") return DisconnectedPolicy::bridge;
    throw Error("unknown disconnected policy '" + s + "' (use error, bridge)");
}

struct GlobalFlags {
    std::uint32_t seed = 1;
};

int cmd_matrix(const std::string& corpus_path, const std::string& kinds_spec, int min_occurrence,
               const std::string& stopword_path, int min_token_length, int granularity,
               const std::string& output) {
    CorpusConfig cfg;
    cfg.min_token_length = min_token_length;
    cfg.slice_granularity_years = granularity;
    if (!stopword_path.empty())
        for (const auto& w : load_stopwords(stopword_path)) cfg.stopwords.insert(w);

    auto in = open_input(corpus_path);
    std::vector<DocumentRecord> docs;
    try {
        docs = parse_corpus(in, cfg);
    } catch (const Error& e) {
        throw Error(corpus_path + ": " + e.what());
    }
    const auto universe = build_universe(docs, parse_kinds(kinds_spec), min_occurrence);
    write_file(output, write_matrix_csv(occurrence_matrix(docs, universe)));
    return 0;
}

int cmd_similarity(const std::string& matrix_path, const std::string& measure,
                   const std::string& axis, bool binarize, const std::string& output) {
    LabeledMatrix mat = load_matrix(matrix_path);
    if (axis != "rows" && axis != "columns")
        throw Error("unknown axis '" + axis + "' (use rows, columns)");
    SimilarityMatrix sim;
    if (measure == "euclidean") {
        sim = euclidean_distances(mat, axis == "rows" ? Axis::rows : Axis::columns);
    } else {
        if (axis == "rows") mat = transpose(mat);
        if (measure == "cosine")
            sim = cosine(mat);
        else if (measure == "pearson")
            sim = pearson(mat);
        else if (measure == "cooccurrence")
            sim = cooccurrence(mat, binarize);
        else
            throw Error("unknown measure '" + measure +
                        "' (use cosine, pearson, euclidean, cooccurrence)");
    }
    write_file(output, write_matrix_csv(to_labeled(sim)));
    return 0;
}

int cmd_graph(const std::string& similarity_path, double tau, bool include_equal,
              bool drop_isolates, const std::string& output) {
    const auto sim = similarity_from_labeled(load_matrix(similarity_path), Measure::cosine,
                                             similarity_path);
    WeightedGraph g = threshold_graph(sim, tau, include_equal);
    if (drop_isolates) g = g.drop_isolates();
    write_file(output, write_network(g));
    return 0;
}

int cmd_layout(const GlobalFlags& global, const std::string& matrix_path,
               const std::string& network_path, const std::string& weighting_spec,
               const std::string& geodesic, const std::string& disconnected, int max_iterations,
               double epsilon, const std::string& output, const std::string& trace_path) {
    if (matrix_path.empty() == network_path.empty())
        throw Error("exactly one of --matrix and --network is required");
    SimilarityMatrix d;
    if (!matrix_path.empty()) {
        d = similarity_from_labeled(load_matrix(matrix_path), Measure::euclidean_distance,
                                    matrix_path);
    } else {
        const auto net = load_network(network_path);
        d = geodesic_distances(net.graph, parse_geodesic(geodesic),
                               parse_disconnected(disconnected));
    }

    StressWeighting weighting;
    if (weighting_spec == "uniform")
        weighting = StressWeighting::uniform;
    else if (weighting_spec == "kk")
        weighting = StressWeighting::kk;
    else
        throw Error("unknown weighting '" + weighting_spec + "' (use uniform, kk)");

    LayoutConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.convergence_epsilon = epsilon;
    cfg.seed = global.seed;
    const auto res = mds_layout(d, weighting, cfg);

    std::ostringstream coords;
    write_coordinates_csv(coords, d.labels, res.positions);
    write_file(output, coords.str());
    if (!trace_path.empty()) {
        std::ostringstream trace;
        write_stress_trace_csv(trace, res.stress_trace);
        write_file(trace_path, trace.str());
    }

    const double s = kruskal_stress(res.positions, d);
    std::cout << "kruskal_stress=" << format_general(s) << '\n'
              << "normalized_raw_stress=" << format_general(s * s) << '\n';
    if (weighting == StressWeighting::kk)
        std::cout << "kk_stress=" << format_general(kk_stress(res.positions, d).total) << '\n';
    return 0;
}

int cmd_animate(const GlobalFlags& global, const std::vector<std::string>& slice_paths,
                double omega, int window, int steps_between, const std::string& geodesic,
                const std::string& disconnected, int max_iterations, double epsilon,
                const std::string& prefix) {
    std::vector<WeightedGraph> graphs;
    for (const auto& path : slice_paths) graphs.push_back(load_network(path).graph);
    const auto net = build_time_sliced_network(graphs, parse_geodesic(geodesic),
                                               parse_disconnected(disconnected));

    LayoutConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.convergence_epsilon = epsilon;
    cfg.seed = global.seed;
    const auto res = dynamic_layout(net, omega, cfg, window);

    auto seq = animation_frames(res.frames, net);
    seq = interpolate_frames(seq, steps_between);

    std::ostringstream records;
    write_frame_records_csv(records, seq);
    write_file(prefix + "_frames.csv", records.str());

    VisualEncoding enc;
    enc.node_size_source = SizeSource::constant;
    const auto svgs = render_frames(seq, enc);
    for (std::size_t i = 0; i < svgs.size(); ++i)
        write_file(prefix + "_" + zero_padded(i, svgs.size()) + ".svg", svgs[i]);

    const auto decomp = dynamic_stress(res.frames, net);
    std::cout << "total_stress=" << format_general(decomp.total) << '\n'
              << "static_stress=" << format_general(decomp.static_term) << '\n'
              << "dynamic_stress=" << format_general(decomp.dynamic_term) << '\n'
              << "frames=" << seq.frames.size() << '\n';
    return 0;
}

int cmd_stats(const GlobalFlags& global, const std::string& network_path,
              const std::string& output) {
    const auto net = load_network(network_path);
    const auto& g = net.graph;
    if (g.node_count() == 0) throw Error(network_path + ": network has no vertices");

    const auto degree = degree_centrality(g, false);
    std::vector<double> betweenness(g.node_count(), 0.0);
    if (g.node_count() >= 3) betweenness = betweenness_centrality<double>(g, true);
    const auto partition = louvain_communities(g, global.seed);

    std::ostringstream out;
    out << "# q=" << format_general(partition.q) << '\n';
    out << "label,degree,betweenness,community\n";
    for (std::size_t i = 0; i < g.node_count(); ++i)
        out << scimap::detail::csv_quote(g.node(static_cast<int>(i)).label) << ','
            << format_cell(degree[i]) << ',' << format_fixed(betweenness[i], 6) << ','
            << partition.assignment[i] << '\n';
    write_file(output, out.str());
    std::cout << "q=" << format_general(partition.q) << '\n';
    return 0;
}

int cmd_mi3(const std::string& matrix_path, const std::string& g1, const std::string& g2,
            const std::string& g3) {
    const auto mat = load_matrix(matrix_path);
    const std::array<std::vector<std::size_t>, 3> groups = {
        parse_group(g1, mat, "--group1"), parse_group(g2, mat, "--group2"),
        parse_group(g3, mat, "--group3")};
    const auto joint = group_distribution(mat, groups);
    const double mu = mutual_information_3(joint);
    std::cout << "mu_mbits=" << format_general(mu) << " n_docs=" << mat.rows() << " groups="
              << groups[0].size() << ',' << groups[1].size() << ',' << groups[2].size() << '\n';
    return 0;
}

int cmd_render(const std::string& network_path, const std::string& coords_path,
               const std::string& clusters_path, const std::string& size_spec, bool no_labels,
               double width, double height, const std::string& output) {
    const auto net = load_network(network_path);
    const auto& g = net.graph;

    Positions positions;
    if (!coords_path.empty()) {
        std::vector<std::string> labels;
        Positions listed;
        auto in = open_input(coords_path);
        try {
            read_coordinates_csv(in, labels, listed);
        } catch (const Error& e) {
            throw Error(coords_path + ": " + e.what());
        }
        std::map<std::string, Point2> by_label;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (by_label.count(labels[i]))
                throw Error(coords_path + ": duplicate label '" + labels[i] + "'");
            by_label[labels[i]] = listed[i];
        }
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            const auto& label = g.node(static_cast<int>(i)).label;
            auto it = by_label.find(label);
            if (it == by_label.end())
                throw Error(coords_path + ": no coordinates for node '" + label + "'");
            positions.push_back(it->second);
        }
    } else if (net.coordinates) {
        positions = *net.coordinates;
    } else {
        throw Error("network file has no coordinates; pass --coordinates");
    }

    VisualEncoding enc;
    enc.canvas_width = width;
    enc.canvas_height = height;
    enc.draw_labels = !no_labels;
    if (size_spec == "degree")
        enc.node_size_source = SizeSource::degree;
    else if (size_spec == "weighted-degree")
        enc.node_size_source = SizeSource::weighted_degree;
    else if (size_spec == "constant")
        enc.node_size_source = SizeSource::constant;
    else
        throw Error("unknown size source '" + size_spec + "' (use degree, weighted-degree, constant)");
    if (!clusters_path.empty()) {
        enc.node_color_source = ColorSource::community;
        enc.clusters = load_clusters(clusters_path, g);
    }

    write_file(output, render_map(g, positions, enc));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"science-mapping toolkit: matrices, similarity networks, MDS layouts, animation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", scimap::version_string);

    GlobalFlags global;
    app.add_option("--seed", global.seed, "seed for every stochastic component")->capture_default_str();

    // matrix
    auto* matrix = app.add_subcommand("matrix", "build an occurrence matrix from a corpus file");
    std::string m_corpus, m_kinds = "words", m_stopwords, m_output;
    int m_min_occurrence = 1, m_min_token_length = 1, m_granularity = 1;
    matrix->add_option("--corpus", m_corpus, "corpus file (pipe-delimited)")->required();
    matrix->add_option("--kinds", m_kinds, "comma list of words, authors, references")
        ->capture_default_str();
    matrix->add_option("--min-occurrence", m_min_occurrence, "minimum distinct-document frequency")
        ->capture_default_str();
    matrix->add_option("--stopwords", m_stopwords, "stopword list, one word per line");
    matrix->add_option("--min-token-length", m_min_token_length, "drop shorter title tokens")
        ->capture_default_str();
    matrix->add_option("--granularity", m_granularity, "time-slice width in years")
        ->capture_default_str();
    matrix->add_option("--output", m_output, "occurrence matrix CSV")->required();

    // similarity
    auto* similarity = app.add_subcommand("similarity", "derive a similarity/distance matrix");
    std::string s_matrix, s_measure = "cosine", s_axis = "columns", s_output;
    bool s_binarize = false;
    similarity->add_option("--matrix", s_matrix, "occurrence matrix CSV")->required();
    similarity->add_option("--measure", s_measure, "cosine, pearson, euclidean, cooccurrence")
        ->capture_default_str();
    similarity->add_option("--axis", s_axis, "compare rows or columns")->capture_default_str();
    similarity->add_flag("--binarize", s_binarize, "0/1 counts before co-occurrence");
    similarity->add_option("--output", s_output, "similarity matrix CSV")->required();

    // graph
    auto* graph = app.add_subcommand("graph", "threshold a similarity matrix into a network");
    std::string g_similarity, g_output;
    double g_tau = 0.0;
    bool g_include_equal = false, g_drop_isolates = false;
    graph->add_option("--similarity", g_similarity, "similarity matrix CSV")->required();
    graph->add_option("--tau", g_tau, "threshold: keep entries above tau")->required();
    graph->add_flag("--include-equal", g_include_equal, "keep entries equal to tau as well");
    graph->add_flag("--drop-isolates", g_drop_isolates, "remove unconnected nodes");
    graph->add_option("--output", g_output, "network file")->required();

    // layout
    auto* layout = app.add_subcommand("layout", "2D MDS layout of a distance matrix or network");
    std::string l_matrix, l_network, l_weighting = "uniform", l_geodesic = "hop",
                l_disconnected = "error", l_output, l_trace;
    int l_max_iterations = 500;
    double l_epsilon = 1e-6;
    layout->add_option("--matrix", l_matrix, "distance matrix CSV");
    layout->add_option("--network", l_network, "network file (geodesic distances)");
    layout->add_option("--weighting", l_weighting, "uniform or kk (1/d^2)")->capture_default_str();
    layout->add_option("--geodesic", l_geodesic, "hop or inverse-weight")->capture_default_str();
    layout->add_option("--disconnected", l_disconnected, "error or bridge")->capture_default_str();
    layout->add_option("--max-iterations", l_max_iterations, "majorization sweep limit")
        ->capture_default_str();
    layout->add_option("--epsilon", l_epsilon, "relative stress-decrease stop")->capture_default_str();
    layout->add_option("--output", l_output, "coordinates CSV")->required();
    layout->add_option("--trace", l_trace, "also write the stress trace CSV");

    // animate
    auto* animate = app.add_subcommand("animate", "dynamic layout over time-sliced networks");
    std::vector<std::string> a_slices;
    std::string a_geodesic = "hop", a_disconnected = "error", a_prefix;
    double a_omega = 0.5, a_epsilon = 1e-6;
    int a_window = 1, a_steps = 0, a_max_iterations = 500;
    animate->add_option("--slices", a_slices, "network file per time slice, in order")
        ->required()
        ->expected(-1);
    animate->add_option("--omega", a_omega, "inter-slice displacement weight")->capture_default_str();
    animate->add_option("--window", a_window, "temporal coupling window")->capture_default_str();
    animate->add_option("--steps-between", a_steps, "interpolated frames per transition")
        ->capture_default_str();
    animate->add_option("--geodesic", a_geodesic, "hop or inverse-weight")->capture_default_str();
    animate->add_option("--disconnected", a_disconnected, "error or bridge")->capture_default_str();
    animate->add_option("--max-iterations", a_max_iterations, "majorization sweep limit")
        ->capture_default_str();
    animate->add_option("--epsilon", a_epsilon, "relative stress-decrease stop")
        ->capture_default_str();
    animate->add_option("--output-prefix", a_prefix, "prefix for frame records and frame images")
        ->required();

    // stats
    auto* stats = app.add_subcommand("stats", "degree, betweenness, communities, modularity");
    std::string st_network, st_output;
    stats->add_option("--network", st_network, "network file")->required();
    stats->add_option("--output", st_output, "statistics CSV")->required();

    // mi3
    auto* mi3 = app.add_subcommand("mi3", "three-way mutual information of column groups");
    std::string i_matrix, i_g1, i_g2, i_g3;
    mi3->add_option("--matrix", i_matrix, "occurrence matrix CSV")->required();
    mi3->add_option("--group1", i_g1, "comma list of column labels (or indices)")->required();
    mi3->add_option("--group2", i_g2, "comma list of column labels (or indices)")->required();
    mi3->add_option("--group3", i_g3, "comma list of column labels (or indices)")->required();

    // render
    auto* render = app.add_subcommand("render", "draw a network map as SVG");
    std::string r_network, r_coords, r_clusters, r_size = "degree", r_output;
    bool r_no_labels = false;
    double r_width = 800.0, r_height = 600.0;
    render->add_option("--network", r_network, "network file")->required();
    render->add_option("--coordinates", r_coords, "coordinates CSV (else embedded coordinates)");
    render->add_option("--clusters", r_clusters, "label,community CSV for node colors");
    render->add_option("--size", r_size, "degree, weighted-degree, constant")->capture_default_str();
    render->add_flag("--no-labels", r_no_labels, "omit node labels");
    render->add_option("--width", r_width, "canvas width")->capture_default_str();
    render->add_option("--height", r_height, "canvas height")->capture_default_str();
    render->add_option("--output", r_output, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (matrix->parsed())
            return cmd_matrix(m_corpus, m_kinds, m_min_occurrence, m_stopwords, m_min_token_length,
                              m_granularity, m_output);
        if (similarity->parsed())
            return cmd_similarity(s_matrix, s_measure, s_axis, s_binarize, s_output);
        if (graph->parsed())
            return cmd_graph(g_similarity, g_tau, g_include_equal, g_drop_isolates, g_output);
        if (layout->parsed())
            return cmd_layout(global, l_matrix, l_network, l_weighting, l_geodesic, l_disconnected,
                              l_max_iterations, l_epsilon, l_output, l_trace);
        if (animate->parsed())
            return cmd_animate(global, a_slices, a_omega, a_window, a_steps, a_geodesic,
                               a_disconnected, a_max_iterations, a_epsilon, a_prefix);
        if (stats->parsed()) return cmd_stats(global, st_network, st_output);
        if (mi3->parsed()) return cmd_mi3(i_matrix, i_g1, i_g2, i_g3);
        if (render->parsed())
            return cmd_render(r_network, r_coords, r_clusters, r_size, r_no_labels, r_width,
                              r_height, r_output);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
