#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "scimap/corpus.hpp"
#include "scimap/matrix.hpp"

using namespace scimap;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

LabeledMatrix make_matrix(std::vector<std::string> rows, std::vector<std::string> cols,
                          std::vector<double> values) {
    LabeledMatrix m;
    m.row_labels = std::move(rows);
    m.col_labels = std::move(cols);
    m.values = std::move(values);
    return m;
}

}  // namespace

TEST_CASE("occurrence_matrix counts words, flags authors and references") {
    CorpusConfig cfg;
    auto docs = parse_corpus(
        "d1 | graph graph theory | Smith, A; Smith, A | 2001 | R1\n"
        "d2 | graph drawing | Jones, B | 2002 | R1; R2\n",
        cfg);
    auto uni = build_universe(docs, {VariableKind::word, VariableKind::author, VariableKind::reference}, 1);
    auto m = occurrence_matrix(docs, uni);

    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == uni.size());
    CHECK(m.row_labels == std::vector<std::string>{"d1", "d2"});

    // Word cells are counts.
    CHECK(m.at(0, uni.column_of("graph", VariableKind::word)) == 2.0);
    CHECK(m.at(1, uni.column_of("graph", VariableKind::word)) == 1.0);
    // Author cells are presence even when listed twice.
    CHECK(m.at(0, uni.column_of("Smith, A", VariableKind::author)) == 1.0);
    CHECK(m.at(1, uni.column_of("Smith, A", VariableKind::author)) == 0.0);
    // Reference cells are presence.
    CHECK(m.at(0, uni.column_of("R2", VariableKind::reference)) == 0.0);
    CHECK(m.at(1, uni.column_of("R2", VariableKind::reference)) == 1.0);
}

TEST_CASE("transpose swaps labels and cells") {
    auto m = make_matrix({"r1", "r2"}, {"c1", "c2", "c3"}, {1, 2, 3, 4, 5, 6});
    auto t = transpose(m);
    REQUIRE(t.rows() == 3);
    REQUIRE(t.cols() == 2);
    CHECK(t.row_labels == m.col_labels);
    CHECK(t.col_labels == m.row_labels);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) CHECK(t.at(j, i) == m.at(i, j));
}

TEST_CASE("cooccurrence sums products, diagonal keeps the marginal") {
    // Two documents, three variables.
    auto m = make_matrix({"d1", "d2"}, {"a", "b", "c"},
                         {2, 1, 0,
                          3, 0, 1});

    SECTION("raw counts") {
        auto s = cooccurrence(m, false);
        CHECK(s.measure == Measure::cooccurrence);
        CHECK(s.at(0, 1) == 2.0);   // 2*1 + 3*0
        CHECK(s.at(0, 2) == 3.0);   // 2*0 + 3*1
        CHECK(s.at(1, 2) == 0.0);
        CHECK(s.at(0, 0) == 13.0);  // 4 + 9
        s.require_symmetric();
    }

    SECTION("binarized") {
        auto s = cooccurrence(m, true);
        CHECK(s.at(0, 1) == 1.0);
        CHECK(s.at(0, 0) == 2.0);  // document frequency on the diagonal
    }
}

TEST_CASE("cosine matches hand values and flags zero-norm columns") {
    auto m = make_matrix({"d1", "d2"}, {"a", "b", "c"},
                         {1, 1, 0,
                          0, 1, 0});
    auto s = cosine(m);
    CHECK(s.measure == Measure::cosine);
    CHECK(s.at(0, 0) == 1.0);
    CHECK_THAT(s.at(0, 1), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    // Zero column: flagged, scores 0 everywhere including its own diagonal.
    CHECK(s.degenerate[2] == 1);
    CHECK(s.at(2, 2) == 0.0);
    CHECK(s.at(0, 2) == 0.0);
    CHECK(s.degenerate[0] == 0);
    s.require_symmetric();
}

TEST_CASE("pearson is exact on a hand example and clamps rounding") {
    auto m = make_matrix({"d1", "d2", "d3"}, {"a", "b", "c", "d"},
                         {1, 2, 1, 5,
                          2, 4, 0, 5,
                          3, 6, 2, 5});
    auto s = pearson(m);
    CHECK_THAT(s.at(0, 1), WithinAbs(1.0, 1e-12));   // b = 2a
    CHECK(std::abs(s.at(0, 2)) <= 1.0);
    // Constant column: flagged, zero row/diagonal.
    CHECK(s.degenerate[3] == 1);
    CHECK(s.at(3, 3) == 0.0);
    CHECK(s.at(0, 3) == 0.0);

    CHECK_THROWS_WITH(pearson(make_matrix({"d1"}, {"a"}, {1})),
                      ContainsSubstring("at least 2 rows"));
}

TEST_CASE("euclidean_distances works along either axis") {
    auto m = make_matrix({"r1", "r2"}, {"c1", "c2"}, {0, 0, 3, 4});

    auto rows = euclidean_distances(m, Axis::rows);
    REQUIRE(rows.size() == 2);
    CHECK(rows.labels == std::vector<std::string>{"r1", "r2"});
    CHECK_THAT(rows.at(0, 1), WithinAbs(5.0, 1e-15));
    CHECK(rows.at(0, 0) == 0.0);

    auto cols = euclidean_distances(m, Axis::columns);
    REQUIRE(cols.size() == 2);
    CHECK(cols.labels == std::vector<std::string>{"c1", "c2"});
    CHECK_THAT(cols.at(0, 1), WithinAbs(1.0, 1e-15));  // columns (0,3) and (0,4)
}

TEST_CASE("cosine_to_distance inverts similarity and keeps a zero diagonal") {
    auto m = make_matrix({"d1", "d2"}, {"a", "b"}, {1, 1, 0, 1});
    auto s = cosine(m);
    auto d = cosine_to_distance(s);
    CHECK(d.measure == Measure::euclidean_distance);
    CHECK(d.at(0, 0) == 0.0);
    CHECK_THAT(d.at(0, 1), WithinAbs(1.0 - s.at(0, 1), 1e-15));

    auto co = cooccurrence(m, false);
    CHECK_THROWS_WITH(cosine_to_distance(co), ContainsSubstring("expects a cosine matrix"));
}

TEST_CASE("threshold_graph keeps edges strictly above tau by default") {
    auto s = SimilarityMatrix::zeros({"a", "b", "c"}, Measure::cosine);
    s.at(0, 1) = s.at(1, 0) = 0.5;
    s.at(0, 2) = s.at(2, 0) = 0.2;
    s.at(1, 2) = s.at(2, 1) = 0.0;

    auto g = threshold_graph(s, 0.2);
    REQUIRE(g.node_count() == 3);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(2) == 0);  // isolated nodes stay

    auto ge = threshold_graph(s, 0.2, true);
    CHECK(ge.edge_count() == 2);

    // Edge weights carry the similarity value.
    CHECK(g.edges()[0].w == 0.5);
}

TEST_CASE("threshold_graph rejects asymmetric input") {
    auto s = SimilarityMatrix::zeros({"a", "b"}, Measure::cosine);
    s.at(0, 1) = 0.5;  // mirror left at 0
    CHECK_THROWS_WITH(threshold_graph(s, 0.1), ContainsSubstring("not symmetric"));
}
