#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "scimap/dynamic_layout.hpp"

using namespace scimap;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SimilarityMatrix slice_distances(std::vector<std::string> labels, std::vector<double> values) {
    auto d = SimilarityMatrix::zeros(std::move(labels), Measure::euclidean_distance);
    d.values = std::move(values);
    return d;
}

// Two global nodes A, B; slice 0 holds both at distance 1, slice 1 holds A only.
TimeSlicedNetwork churn_network() {
    TimeSlicedNetwork net;
    net.node_labels = {"A", "B"};
    net.slices.push_back({slice_distances({"A", "B"}, {0, 1, 1, 0}), {0, 1}});
    net.slices.push_back({slice_distances({"A"}, {0}), {0}});
    return net;
}

TimeSlicedNetwork triangle_network(std::size_t slices) {
    TimeSlicedNetwork net;
    net.node_labels = {"A", "B", "C"};
    for (std::size_t t = 0; t < slices; ++t)
        net.slices.push_back(
            {slice_distances({"A", "B", "C"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}), {0, 1, 2}});
    return net;
}

}  // namespace

TEST_CASE("dynamic_stress decomposes a hand example") {
    auto net = churn_network();
    LayoutFrameSet fs;
    fs.omega = 0.5;
    fs.frames = {{{0, 0}, {2, 0}}, {{3, 4}}};

    auto d = dynamic_stress(fs, net);
    // Slice 0: two ordered pairs of (2-1)^2/1^2; slice 1 has no pairs.
    CHECK_THAT(d.static_term, WithinAbs(2.0, 1e-12));
    // A moves (0,0) -> (3,4): 0.5 * 25. B leaves and contributes nothing.
    CHECK_THAT(d.dynamic_term, WithinAbs(12.5, 1e-12));
    CHECK_THAT(d.total, WithinAbs(14.5, 1e-12));
}

TEST_CASE("dynamic_stress validates its inputs") {
    auto net = churn_network();
    LayoutFrameSet fs;
    fs.frames = {{{0, 0}, {2, 0}}};
    CHECK_THROWS_WITH(dynamic_stress(fs, net), ContainsSubstring("frame count"));

    fs.frames = {{{0, 0}}, {{0, 0}}};
    CHECK_THROWS_WITH(dynamic_stress(fs, net), ContainsSubstring("frame 0"));

    auto bad = churn_network();
    bad.slices[0].distances.at(0, 1) = 0.0;
    bad.slices[0].distances.at(1, 0) = 0.0;
    fs.frames = {{{0, 0}, {2, 0}}, {{0, 0}}};
    CHECK_THROWS_WITH(dynamic_stress(fs, bad),
                      ContainsSubstring("zero distance") && ContainsSubstring("slice 0"));

    auto dup = churn_network();
    dup.slices[0].present = {0, 0};
    CHECK_THROWS_WITH(dynamic_stress(fs, dup), ContainsSubstring("listed twice"));
}

TEST_CASE("initial_frames keeps persistent nodes and nudges coincident entries") {
    TimeSlicedNetwork net;
    net.node_labels = {"A", "B", "C"};
    net.slices.push_back({slice_distances({"A"}, {0}), {0}});
    net.slices.push_back(
        {slice_distances({"A", "B", "C"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}), {0, 1, 2}});

    LayoutConfig cfg;
    cfg.seed = 5;
    auto frames = initial_frames(net, cfg);
    REQUIRE(frames.size() == 2);
    REQUIRE(frames[0].size() == 1);
    REQUIRE(frames[1].size() == 3);

    // A stays put.
    CHECK(frames[1][0].x == frames[0][0].x);
    CHECK(frames[1][0].y == frames[0][0].y);
    // Entering nodes start near the persistent centroid (= A), not on top of
    // each other or of A.
    CHECK(distance(frames[1][1], frames[0][0]) < 1e-4);
    CHECK(distance(frames[1][2], frames[0][0]) < 1e-4);
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : frames[1]) distinct.insert({p.x, p.y});
    CHECK(distinct.size() == 3);

    // Same seed, same frames.
    auto again = initial_frames(net, cfg);
    CHECK(again[1][2].x == frames[1][2].x);
}

TEST_CASE("dynamic_layout trace is monotone and the decomposition is stored") {
    auto net = triangle_network(3);
    LayoutConfig cfg;
    cfg.seed = 3;
    auto res = dynamic_layout(net, 0.5, cfg);

    REQUIRE(res.stress_trace.size() >= 2);
    for (std::size_t k = 1; k < res.stress_trace.size(); ++k)
        CHECK(res.stress_trace[k] <= res.stress_trace[k - 1] + 1e-12);

    // Stored decomposition matches an independent evaluation and the trace end.
    auto d = dynamic_stress(res.frames, net);
    CHECK_THAT(res.frames.static_stress, WithinRel(d.static_term, 1e-12));
    CHECK_THAT(res.frames.dynamic_stress, WithinAbs(d.dynamic_term, 1e-12));
    CHECK_THAT(res.stress_trace.back(), WithinRel(d.total, 1e-9) || WithinAbs(d.total, 1e-12));
    CHECK(res.frames.omega == 0.5);
}

TEST_CASE("dynamic_layout with omega 0 reduces to independent static slices") {
    auto net = triangle_network(2);
    LayoutConfig cfg;
    cfg.seed = 9;
    cfg.convergence_epsilon = 1e-12;
    cfg.max_iterations = 2000;
    auto res = dynamic_layout(net, 0.0, cfg);
    CHECK(res.frames.dynamic_stress == 0.0);
    CHECK_THAT(res.stress_trace.back(), WithinRel(res.frames.static_stress, 1e-12));
    // The triangle embeds exactly, so each slice reaches (near-)zero stress.
    CHECK(res.frames.static_stress < 1e-10);
}

TEST_CASE("dynamic_layout pulls persistent nodes together as omega grows") {
    auto net = triangle_network(2);
    LayoutConfig cfg;
    cfg.seed = 13;
    cfg.convergence_epsilon = 1e-10;
    cfg.max_iterations = 3000;

    auto init = initial_frames(net, cfg);
    auto low = dynamic_layout(net, 0.01, cfg, 1, &init);
    auto high = dynamic_layout(net, 10.0, cfg, 1, &init);

    auto movement = [&](const DynamicLayoutResult& r) {
        double m = 0.0;
        for (std::size_t a = 0; a < 3; ++a)
            m += squared_distance(r.frames.frames[0][a], r.frames.frames[1][a]);
        return m;
    };
    CHECK(movement(high) < movement(low));
}

TEST_CASE("dynamic_layout window couples slices beyond neighbors") {
    // One node, three slices, no within-slice pairs: the objective is purely
    // temporal, so everything contracts to a single point.
    TimeSlicedNetwork net;
    net.node_labels = {"A"};
    for (int t = 0; t < 3; ++t) net.slices.push_back({slice_distances({"A"}, {0}), {0}});
    LayoutConfig cfg;
    cfg.convergence_epsilon = 1e-12;
    cfg.max_iterations = 5000;

    auto res = dynamic_layout(net, 1.0, cfg, 2);
    CHECK(res.stress_trace.back() < 1e-9);
    CHECK(distance(res.frames.frames[0][0], res.frames.frames[2][0]) < 1e-4);
}

TEST_CASE("dynamic_layout validates parameters and initial frames") {
    auto net = triangle_network(2);
    LayoutConfig cfg;
    CHECK_THROWS_WITH(dynamic_layout(net, -0.1, cfg), ContainsSubstring("omega"));
    CHECK_THROWS_WITH(dynamic_layout(net, 0.5, cfg, 0), ContainsSubstring("window"));

    std::vector<Positions> bad_init{{{0, 0}, {1, 0}, {0, 1}}};  // one frame, two slices
    CHECK_THROWS_WITH(dynamic_layout(net, 0.5, cfg, 1, &bad_init),
                      ContainsSubstring("frame count"));
}

TEST_CASE("animation_frames carries slice membership into records") {
    auto net = churn_network();
    LayoutFrameSet fs;
    fs.omega = 0.0;
    fs.frames = {{{0, 0}, {2, 0}}, {{1, 1}}};
    auto seq = animation_frames(fs, net);

    CHECK(seq.labels == std::vector<std::string>{"A", "B"});
    CHECK(seq.base_node_count == 2);
    REQUIRE(seq.frames.size() == 2);
    CHECK(seq.frames[0].t == 0.0);
    REQUIRE(seq.frames[0].nodes.size() == 2);
    CHECK(seq.frames[0].nodes[1].node_id == 1);
    CHECK(seq.frames[0].nodes[1].x == 2.0);
    CHECK(seq.frames[0].nodes[1].opacity == 1.0);
    REQUIRE(seq.frames[1].nodes.size() == 1);
    CHECK(seq.frames[1].nodes[0].node_id == 0);
}

TEST_CASE("project_eigenvector_nodes adds a loading-weighted centroid") {
    auto net = churn_network();
    LayoutFrameSet fs;
    fs.frames = {{{0, 0}, {2, 0}}, {{1, 1}}};
    auto seq = animation_frames(fs, net);

    // Two nodes, two factors, row-major loadings per node.
    std::vector<double> loadings = {0.8, -0.2,   // A
                                    0.2, 0.9};   // B
    auto with = project_eigenvector_nodes(seq, loadings, 2, 0);

    REQUIRE(with.labels.size() == 3);
    CHECK(with.labels[2] == "factor_1");
    CHECK(with.clusters[2] == 0);
    CHECK(with.base_node_count == 2);

    // Frame 0: centroid of A(0,0) w=0.8 and B(2,0) w=0.2 -> x = 0.4.
    REQUIRE(with.frames[0].nodes.size() == 3);
    const auto& c0 = with.frames[0].nodes.back();
    CHECK(c0.construct);
    CHECK_THAT(c0.x, WithinAbs(0.4, 1e-12));
    CHECK_THAT(c0.y, WithinAbs(0.0, 1e-12));

    // Frame 1: only A present, weight 0.8 -> construct sits on A.
    const auto& c1 = with.frames[1].nodes.back();
    CHECK_THAT(c1.x, WithinAbs(1.0, 1e-12));
    CHECK_THAT(c1.y, WithinAbs(1.0, 1e-12));

    // Factor 2 loads positively only on B; frame 1 has no B, so no construct.
    auto f2 = project_eigenvector_nodes(seq, loadings, 2, 1);
    CHECK(f2.frames[0].nodes.size() == 3);
    CHECK(f2.frames[1].nodes.size() == 1);

    std::vector<double> negative = {-1.0, -0.2, -0.5, -0.9};
    CHECK_THROWS_WITH(project_eigenvector_nodes(seq, negative, 2, 0),
                      ContainsSubstring("no positive loadings"));
    CHECK_THROWS_WITH(project_eigenvector_nodes(seq, loadings, 2, 5),
                      ContainsSubstring("factor index"));
    CHECK_THROWS_WITH(project_eigenvector_nodes(seq, {0.8, 0.1}, 2, 0),
                      ContainsSubstring("node count"));
}

TEST_CASE("interpolate_frames lerps positions and fades churn") {
    AnimationSequence seq;
    seq.labels = {"A", "B", "C"};
    seq.clusters = {-1, -1, -1};
    seq.base_node_count = 3;
    AnimationFrame f0, f1;
    f0.t = 0.0;
    f0.nodes = {{0, 0, 0, 1.0, false}, {1, 2, 2, 1.0, false}};
    f1.t = 1.0;
    f1.nodes = {{0, 1, 0, 1.0, false}, {2, 5, 5, 1.0, false}};
    seq.frames = {f0, f1};

    auto out = interpolate_frames(seq, 1);
    REQUIRE(out.frames.size() == 3);  // (T-1)(s+1)+1
    const auto& mid = out.frames[1];
    CHECK_THAT(mid.t, WithinAbs(0.5, 1e-15));
    REQUIRE(mid.nodes.size() == 3);

    // Persistent node halfway.
    CHECK(mid.nodes[0].node_id == 0);
    CHECK_THAT(mid.nodes[0].x, WithinAbs(0.5, 1e-15));
    CHECK(mid.nodes[0].opacity == 1.0);
    // Leaving node fades out in place.
    CHECK(mid.nodes[1].node_id == 1);
    CHECK(mid.nodes[1].x == 2.0);
    CHECK_THAT(mid.nodes[1].opacity, WithinAbs(0.5, 1e-15));
    // Entering node fades in at its target.
    CHECK(mid.nodes[2].node_id == 2);
    CHECK(mid.nodes[2].x == 5.0);
    CHECK_THAT(mid.nodes[2].opacity, WithinAbs(0.5, 1e-15));

    // steps 0 is the identity; negative steps are rejected.
    CHECK(interpolate_frames(seq, 0).frames.size() == 2);
    CHECK_THROWS_AS(interpolate_frames(seq, -1), Error);

    auto three = interpolate_frames(seq, 3);
    CHECK(three.frames.size() == 5);
    CHECK(three.frames.back().nodes.size() == 2);
}

TEST_CASE("build_time_sliced_network maps labels to a shared universe") {
    WeightedGraph g0;
    g0.add_node("beta");
    g0.add_node("alpha");
    g0.add_edge(0, 1, 1.0);
    WeightedGraph g1;
    g1.add_node("gamma");
    g1.add_node("alpha");
    g1.add_edge(0, 1, 2.0);

    auto net = build_time_sliced_network({g0, g1}, GeodesicMode::hop);
    CHECK(net.node_labels == std::vector<std::string>{"alpha", "beta", "gamma"});
    REQUIRE(net.slices.size() == 2);
    // Slice rows follow graph node order; presence maps into the universe.
    CHECK(net.slices[0].present == std::vector<int>{1, 0});
    CHECK(net.slices[1].present == std::vector<int>{2, 0});
    CHECK(net.slices[0].distances.at(0, 1) == 1.0);

    // Disconnected slice honors the policy.
    WeightedGraph g2;
    g2.add_node("alpha");
    g2.add_node("beta");
    CHECK_THROWS_WITH(build_time_sliced_network({g2}, GeodesicMode::hop),
                      ContainsSubstring("disconnected"));
}
