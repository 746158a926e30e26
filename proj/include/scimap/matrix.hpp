// Document x variable occurrence matrices and the symmetric matrices derived
// from them: co-occurrence counts, cosine / Pearson similarity, Euclidean
// distance, and thresholded similarity graphs.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/corpus.hpp"
#include "scimap/graph.hpp"

namespace scimap {

// Dense row-major matrix with row/column labels. Occurrence matrices are
// LabeledMatrix instances whose cells happen to be counts.
struct LabeledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<double> values;  // row-major, rows() x cols()

    std::size_t rows() const { return row_labels.size(); }
    std::size_t cols() const { return col_labels.size(); }

    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols() + j]; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(rows());
        for (std::size_t i = 0; i < rows(); ++i) out[i] = at(i, j);
        return out;
    }
    std::vector<double> row(std::size_t i) const {
        return {values.begin() + static_cast<long>(i * cols()),
                values.begin() + static_cast<long>((i + 1) * cols())};
    }
};

enum class Measure { cosine, pearson, euclidean_distance, cooccurrence };

inline const char* to_string(Measure m) {
    switch (m) {
        case Measure::cosine: return "cosine";
        case Measure::pearson: return "pearson";
        case Measure::euclidean_distance: return "euclidean_distance";
        case Measure::cooccurrence: return "cooccurrence";
    }
    return "?";
}

// Symmetric v x v matrix tagged with its measure. Symmetry is exact by
// construction: the upper triangle is computed once and mirrored. Also the
// carrier for target-distance matrices (measure = euclidean_distance).
struct SimilarityMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;        // row-major, n x n
    Measure measure = Measure::cosine;
    std::vector<std::uint8_t> degenerate;  // flagged columns (zero-norm / constant)

    std::size_t size() const { return labels.size(); }

    double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }

    static SimilarityMatrix zeros(std::vector<std::string> labels, Measure measure) {
        SimilarityMatrix s;
        s.labels = std::move(labels);
        s.values.assign(s.size() * s.size(), 0.0);
        s.measure = measure;
        s.degenerate.assign(s.size(), 0);
        return s;
    }

    void require_symmetric(double tol = 0.0) const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (std::abs(at(i, j) - at(j, i)) > tol)
                    throw Error("matrix not symmetric at (" + labels[i] + ", " + labels[j] + ")");
    }
};

inline LabeledMatrix transpose(const LabeledMatrix& mat) {
    LabeledMatrix out;
    out.row_labels = mat.col_labels;
    out.col_labels = mat.row_labels;
    out.values.assign(mat.values.size(), 0.0);
    for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) out.at(j, i) = mat.at(i, j);
    return out;
}

// c_ij = occurrences of variable j in document i. Word columns carry token
// counts; author and reference columns are 0/1 presence.
inline LabeledMatrix occurrence_matrix(const std::vector<DocumentRecord>& docs,
                                       const VariableUniverse& universe) {
    LabeledMatrix m;
    m.row_labels.reserve(docs.size());
    for (const auto& d : docs) m.row_labels.push_back(d.doc_id);
    m.col_labels.reserve(universe.size());
    for (const auto& e : universe.entries) m.col_labels.push_back(e.label);
    m.values.assign(docs.size() * universe.size(), 0.0);

    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (const auto& t : docs[i].title_tokens)
            if (universe.contains(t, VariableKind::word))
                m.at(i, universe.column_of(t, VariableKind::word)) += 1.0;
        for (const auto& a : docs[i].authors)
            if (universe.contains(a, VariableKind::author))
                m.at(i, universe.column_of(a, VariableKind::author)) = 1.0;
        for (const auto& r : docs[i].references)
            if (universe.contains(r, VariableKind::reference))
                m.at(i, universe.column_of(r, VariableKind::reference)) = 1.0;
    }
    return m;
}

// Symmetric affiliation matrix: entry (j, j') = sum_i f(c_ij) f(c_ij') with
// f identity or 0/1 indicator. The diagonal keeps the column marginal.
inline SimilarityMatrix cooccurrence(const LabeledMatrix& mat, bool binarize) {
    auto s = SimilarityMatrix::zeros(mat.col_labels, Measure::cooccurrence);
    const std::size_t n = mat.rows(), v = mat.cols();
    auto f = [&](double c) { return binarize ? (c != 0.0 ? 1.0 : 0.0) : c; };
    for (std::size_t j = 0; j < v; ++j) {
        for (std::size_t k = j; k < v; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += f(mat.at(i, j)) * f(mat.at(i, k));
            s.at(j, k) = sum;
            s.at(k, j) = sum;
        }
    }
    return s;
}

// Cosine of the angle between column vectors. Zero-norm columns score 0
// against everything, their own diagonal included, and are flagged.
inline SimilarityMatrix cosine(const LabeledMatrix& mat) {
    auto s = SimilarityMatrix::zeros(mat.col_labels, Measure::cosine);
    const std::size_t n = mat.rows(), v = mat.cols();
    std::vector<double> norm(v, 0.0);
    for (std::size_t j = 0; j < v; ++j) {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) sq += mat.at(i, j) * mat.at(i, j);
        norm[j] = std::sqrt(sq);
        if (norm[j] == 0.0) s.degenerate[j] = 1;
    }
    for (std::size_t j = 0; j < v; ++j) {
        if (norm[j] == 0.0) continue;
        s.at(j, j) = 1.0;
        for (std::size_t k = j + 1; k < v; ++k) {
            if (norm[k] == 0.0) continue;
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += mat.at(i, j) * mat.at(i, k);
            const double c = dot / (norm[j] * norm[k]);
            s.at(j, k) = c;
            s.at(k, j) = c;
        }
    }
    return s;
}

// Product-moment correlation between columns. Constant columns score 0
// everywhere (diagonal included) and are flagged.
inline SimilarityMatrix pearson(const LabeledMatrix& mat) {
    const std::size_t n = mat.rows(), v = mat.cols();
    if (n < 2) throw Error("pearson requires at least 2 rows, got " + std::to_string(n));
    auto s = SimilarityMatrix::zeros(mat.col_labels, Measure::pearson);
    std::vector<double> mean(v, 0.0), sd(v, 0.0);
    for (std::size_t j = 0; j < v; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += mat.at(i, j);
        mean[j] = sum / static_cast<double>(n);
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = mat.at(i, j) - mean[j];
            sq += d * d;
        }
        sd[j] = std::sqrt(sq);
        if (sd[j] == 0.0) s.degenerate[j] = 1;
    }
    for (std::size_t j = 0; j < v; ++j) {
        if (sd[j] == 0.0) continue;
        s.at(j, j) = 1.0;
        for (std::size_t k = j + 1; k < v; ++k) {
            if (sd[k] == 0.0) continue;
            double cov = 0.0;
            for (std::size_t i = 0; i < n; ++i) cov += (mat.at(i, j) - mean[j]) * (mat.at(i, k) - mean[k]);
            double r = cov / (sd[j] * sd[k]);
            r = std::clamp(r, -1.0, 1.0);
            s.at(j, k) = r;
            s.at(k, j) = r;
        }
    }
    return s;
}

enum class Axis { rows, columns };

// Pairwise L2 distances between rows or columns.
inline SimilarityMatrix euclidean_distances(const LabeledMatrix& mat, Axis between) {
    const bool by_rows = between == Axis::rows;
    const std::size_t count = by_rows ? mat.rows() : mat.cols();
    const std::size_t dim = by_rows ? mat.cols() : mat.rows();
    auto s = SimilarityMatrix::zeros(by_rows ? mat.row_labels : mat.col_labels,
                                     Measure::euclidean_distance);
    auto coord = [&](std::size_t item, std::size_t d) {
        return by_rows ? mat.at(item, d) : mat.at(d, item);
    };
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            double sq = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = coord(a, d) - coord(b, d);
                sq += diff * diff;
            }
            const double dist = std::sqrt(sq);
            s.at(a, b) = dist;
            s.at(b, a) = dist;
        }
    }
    return s;
}

// (1 - cosine) as a vector-space distance.
inline SimilarityMatrix cosine_to_distance(const SimilarityMatrix& sim) {
    if (sim.measure != Measure::cosine)
        throw Error("cosine_to_distance expects a cosine matrix, got " + std::string(to_string(sim.measure)));
    auto d = SimilarityMatrix::zeros(sim.labels, Measure::euclidean_distance);
    d.degenerate = sim.degenerate;
    for (std::size_t i = 0; i < sim.size(); ++i)
        for (std::size_t j = 0; j < sim.size(); ++j)
            d.at(i, j) = i == j ? 0.0 : 1.0 - sim.at(i, j);
    return d;
}

// Undirected graph with an edge wherever the off-diagonal value clears the
// threshold. Isolated nodes stay in the graph; callers drop them explicitly.
inline WeightedGraph threshold_graph(const SimilarityMatrix& sim, double tau, bool include_equal = false) {
    sim.require_symmetric();
    WeightedGraph g;
    for (const auto& label : sim.labels) g.add_node(label);
    for (std::size_t i = 0; i < sim.size(); ++i) {
        for (std::size_t j = i + 1; j < sim.size(); ++j) {
            const double v = sim.at(i, j);
            if (v > tau || (include_equal && v == tau))
                g.add_edge(static_cast<int>(i), static_cast<int>(j), v);
        }
    }
    return g;
}

}  // namespace scimap
