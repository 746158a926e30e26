// Static 2D layout: Kruskal stress, Kamada-Kawai weighted stress, and an
// iterative-majorization MDS solver over a target-distance matrix.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/graph.hpp"
#include "scimap/matrix.hpp"

namespace scimap {

enum class StressWeighting { uniform, kk };
enum class LayoutInit { random, given };

struct LayoutConfig {
    int max_iterations = 500;
    double convergence_epsilon = 1e-6;  // relative stress decrease per sweep
    std::uint32_t seed = 1;
    LayoutInit init = LayoutInit::random;
    Positions initial;  // used when init == given

    void validate() const {
        if (max_iterations < 1) throw Error("max_iterations must be >= 1");
        if (!(convergence_epsilon > 0.0)) throw Error("convergence_epsilon must be > 0");
    }
};

struct LayoutResult {
    Positions positions;
    std::vector<double> stress_trace;  // objective before the first sweep, then after each sweep
};

namespace detail {

inline void require_distance_matrix(const SimilarityMatrix& d) {
    d.require_symmetric();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.at(i, i) != 0.0)
            throw Error("distance matrix has nonzero diagonal at '" + d.labels[i] + "'");
        for (std::size_t j = 0; j < d.size(); ++j)
            if (d.at(i, j) < 0.0)
                throw Error("negative distance at (" + d.labels[i] + ", " + d.labels[j] + ")");
    }
}

inline void require_positive_offdiagonal(const SimilarityMatrix& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d.at(i, j) == 0.0)
                throw Error("zero distance between '" + d.labels[i] + "' and '" + d.labels[j] +
                            "' is incompatible with 1/d^2 weighting");
}

inline double pair_weight(StressWeighting w, double d) {
    return w == StressWeighting::uniform ? 1.0 : 1.0 / (d * d);
}

// Weighted stress over ordered pairs, the objective the solver minimizes:
// sum_{i != j} w_ij (||x_i - x_j|| - d_ij)^2.
inline double weighted_stress(const Positions& pos, const SimilarityMatrix& d, StressWeighting w) {
    double total = 0.0;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double resid = distance(pos[i], pos[j]) - d.at(i, j);
            total += pair_weight(w, d.at(i, j)) * resid * resid;
        }
    }
    return total;
}

// One majorization update of node i against fixed positions of the others,
// plus optional quadratic anchors (the dynamic layout's temporal terms).
// Static pair coefficients are 2*w_ij because ordered pairs count each
// unordered pair twice in the objective.
struct Anchor {
    Point2 target;
    double weight = 0.0;
};

inline Point2 majorize_node(const Positions& pos, std::size_t i, const SimilarityMatrix& d,
                            StressWeighting w, const std::vector<Anchor>& anchors) {
    double denom = 0.0;
    double nx = 0.0, ny = 0.0;
    const std::size_t n = d.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dij = d.at(i, j);
        const double c = 2.0 * pair_weight(w, dij);
        const double len = distance(pos[i], pos[j]);
        double ux = 0.0, uy = 0.0;
        if (len > 0.0) {
            ux = (pos[i].x - pos[j].x) / len;
            uy = (pos[i].y - pos[j].y) / len;
        }
        nx += c * (pos[j].x + dij * ux);
        ny += c * (pos[j].y + dij * uy);
        denom += c;
    }
    for (const auto& a : anchors) {
        nx += a.weight * a.target.x;
        ny += a.weight * a.target.y;
        denom += a.weight;
    }
    if (denom == 0.0) return pos[i];
    return Point2{nx / denom, ny / denom};
}

inline Positions random_positions(std::size_t n, SeededRng& rng) {
    Positions pos(n);
    for (auto& p : pos) {
        p.x = rng.uniform(-1.0, 1.0);
        p.y = rng.uniform(-1.0, 1.0);
    }
    return pos;
}

inline void mean_center(Positions& pos) {
    if (pos.empty()) return;
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pos) {
        cx += p.x;
        cy += p.y;
    }
    cx /= static_cast<double>(pos.size());
    cy /= static_cast<double>(pos.size());
    for (auto& p : pos) {
        p.x -= cx;
        p.y -= cy;
    }
}

inline void require_finite(const Positions& pos) {
    for (const auto& p : pos)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error("layout produced non-finite coordinates");
}

}  // namespace detail

// Eq.-1-style normalized stress: S = sqrt(sum (||x_i-x_j|| - d_ij)^2 / sum d_ij^2).
inline double kruskal_stress(const Positions& pos, const SimilarityMatrix& d) {
    detail::require_distance_matrix(d);
    if (pos.size() != d.size())
        throw Error("positions count " + std::to_string(pos.size()) + " does not match matrix size " +
                    std::to_string(d.size()));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i == j) continue;
            const double resid = distance(pos[i], pos[j]) - d.at(i, j);
            num += resid * resid;
            den += d.at(i, j) * d.at(i, j);
        }
    }
    if (den == 0.0) throw Error("all-zero distance matrix: Kruskal stress undefined");
    return std::sqrt(num / den);
}

// S^2 of the above; the value reported as "normalized raw stress".
inline double normalized_raw_stress(const Positions& pos, const SimilarityMatrix& d) {
    const double s = kruskal_stress(pos, d);
    return s * s;
}

struct KkStress {
    double total = 0.0;
    SimilarityMatrix per_pair;  // s_ij per ordered pair, zero diagonal
};

// Eq.-2-style weighted stress: s_ij = (1/d_ij^2)(||x_i - x_j|| - d_ij)^2.
inline KkStress kk_stress(const Positions& pos, const SimilarityMatrix& d) {
    detail::require_distance_matrix(d);
    detail::require_positive_offdiagonal(d);
    if (pos.size() != d.size())
        throw Error("positions count " + std::to_string(pos.size()) + " does not match matrix size " +
                    std::to_string(d.size()));
    KkStress out;
    out.per_pair = SimilarityMatrix::zeros(d.labels, Measure::euclidean_distance);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i == j) continue;
            const double dij = d.at(i, j);
            const double resid = distance(pos[i], pos[j]) - dij;
            out.per_pair.at(i, j) = resid * resid / (dij * dij);
        }
    }
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) out.total += out.per_pair.at(i, j);
    return out;
}

// MDS by node-wise stress majorization sweeps. Every sweep is monotone
// non-increasing in the weighted stress; the trace holds the objective at
// the start and after each sweep. The result is mean-centered; orientation
// is arbitrary.
inline LayoutResult mds_layout(const SimilarityMatrix& d, StressWeighting weighting,
                               const LayoutConfig& cfg) {
    cfg.validate();
    detail::require_distance_matrix(d);
    if (weighting == StressWeighting::kk) detail::require_positive_offdiagonal(d);

    const std::size_t n = d.size();
    LayoutResult res;
    if (cfg.init == LayoutInit::given) {
        if (cfg.initial.size() != n)
            throw Error("given initial positions count " + std::to_string(cfg.initial.size()) +
                        " does not match matrix size " + std::to_string(n));
        res.positions = cfg.initial;
    } else {
        SeededRng rng(cfg.seed);
        res.positions = detail::random_positions(n, rng);
    }

    const std::vector<detail::Anchor> no_anchors;
    double stress = detail::weighted_stress(res.positions, d, weighting);
    res.stress_trace.push_back(stress);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i)
            res.positions[i] = detail::majorize_node(res.positions, i, d, weighting, no_anchors);
        const double next = detail::weighted_stress(res.positions, d, weighting);
        res.stress_trace.push_back(next);
        const bool converged = stress == 0.0 || (stress - next) < cfg.convergence_epsilon * stress;
        stress = next;
        if (converged) break;
    }
    detail::mean_center(res.positions);
    detail::require_finite(res.positions);
    return res;
}

enum class GeodesicMode { hop, inverse_weight };
enum class DisconnectedPolicy { error, bridge };  // bridge: 1.5 x largest finite distance

// All-pairs shortest-path lengths. hop: unit edge length; inverse_weight:
// length 1/w so stronger ties are shorter.
inline SimilarityMatrix geodesic_distances(const WeightedGraph& g, GeodesicMode mode,
                                           DisconnectedPolicy policy = DisconnectedPolicy::error) {
    const std::size_t n = g.node_count();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(g.node(static_cast<int>(i)).label);
    auto dist = SimilarityMatrix::zeros(std::move(labels), Measure::euclidean_distance);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(row.begin(), row.end(), inf);
        row[s] = 0.0;
        if (mode == GeodesicMode::hop) {
            std::queue<int> q;
            q.push(static_cast<int>(s));
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                for (const auto& [v, w] : g.neighbors(u)) {
                    (void)w;
                    if (row[v] == inf) {
                        row[v] = row[u] + 1.0;
                        q.push(v);
                    }
                }
            }
        } else {
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            pq.emplace(0.0, static_cast<int>(s));
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (du > row[u]) continue;
                for (const auto& [v, w] : g.neighbors(u)) {
                    if (w <= 0.0)
                        throw Error("inverse_weight geodesics require positive weights; edge (" +
                                    g.node(u).label + ", " + g.node(v).label + ") has weight " +
                                    format_general(w));
                    const double cand = du + 1.0 / w;
                    if (cand < row[v]) {
                        row[v] = cand;
                        pq.emplace(cand, v);
                    }
                }
            }
        }
        for (std::size_t t = 0; t < n; ++t) dist.at(s, t) = row[t];
    }

    bool disconnected = false;
    double max_finite = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (dist.at(i, j) == inf)
                disconnected = true;
            else
                max_finite = std::max(max_finite, dist.at(i, j));
        }
    }
    if (disconnected) {
        if (policy == DisconnectedPolicy::error) {
            const auto comp = g.components();
            const int comp_count = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
            std::string msg = "graph is disconnected (" + std::to_string(comp_count) + " components):";
            for (int c = 0; c < comp_count; ++c) {
                msg += " [";
                bool first = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (comp[i] != c) continue;
                    if (!first) msg += ", ";
                    msg += g.node(static_cast<int>(i)).label;
                    first = false;
                }
                msg += "]";
            }
            throw Error(msg);
        }
        const double bridge = 1.5 * (max_finite > 0.0 ? max_finite : 1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (dist.at(i, j) == inf) dist.at(i, j) = bridge;
    }
    return dist;
}

}  // namespace scimap
