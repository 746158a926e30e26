// End-to-end library walkthrough: parse a small corpus, build the word
// occurrence matrix, derive cosine similarities, threshold them into a
// network, lay the network out, detect communities, and write an SVG map.
#include <fstream>
#include <iostream>

#include "scimap/scimap.hpp"

int main() {
    using namespace scimap;

    const std::string corpus_text =
        "d1 | Mapping citation networks | Smith | 2006\n"
        "d2 | Citation networks of journals | Jones | 2006\n"
        "d3 | Semantic word maps | Chen | 2007\n"
        "d4 | Word maps and meaning | Chen | 2007\n"
        "d5 | Mapping journals with citation data | Smith | 2008\n"
        "d6 | Semantic meaning of word use | Okafor | 2008\n";

    CorpusConfig corpus_cfg;
    corpus_cfg.stopwords = {"and", "of", "with"};
    const auto docs = parse_corpus(corpus_text, corpus_cfg);
    const auto universe = build_universe(docs, {VariableKind::word}, 2);
    const auto occurrences = occurrence_matrix(docs, universe);

    const auto similarity = cosine(occurrences);
    const auto graph = threshold_graph(similarity, 0.2);

    const auto distances = geodesic_distances(graph, GeodesicMode::hop, DisconnectedPolicy::bridge);
    LayoutConfig layout_cfg;
    layout_cfg.seed = 7;
    const auto layout = mds_layout(distances, StressWeighting::uniform, layout_cfg);

    const auto partition = louvain_communities(graph, layout_cfg.seed);

    VisualEncoding enc;
    enc.node_color_source = ColorSource::community;
    enc.clusters = partition.assignment;
    std::ofstream svg("co_word_map.svg", std::ios::binary);
    svg << render_map(graph, layout.positions, enc);

    std::cout << "variables: " << universe.size() << "\n"
              << "edges: " << graph.edges().size() << "\n"
              << "communities: q=" << format_general(partition.q) << "\n"
              << "kruskal stress: " << format_general(kruskal_stress(layout.positions, distances))
              << "\n"
              << "wrote co_word_map.svg\n";
    return 0;
}
