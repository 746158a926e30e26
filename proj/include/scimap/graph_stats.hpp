// Network statistics: degree and betweenness centrality, seeded Louvain
// community detection with exact modularity scoring, and an eigendecomposition
// based factor model for similarity matrices.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/graph.hpp"
#include "scimap/matrix.hpp"

namespace scimap {

// Plain or weighted degree per node, in node order.
inline std::vector<double> degree_centrality(const WeightedGraph& g, bool weighted = false) {
    std::vector<double> out(g.node_count(), 0.0);
    for (std::size_t i = 0; i < g.node_count(); ++i)
        out[i] = weighted ? g.weighted_degree(static_cast<int>(i))
                          : static_cast<double>(g.degree(static_cast<int>(i)));
    return out;
}

// Brandes' accumulation over hop-count geodesics. The accumulation type is a
// template parameter so the identical algorithm can run over exact rationals
// in tests; path counts stay integral either way. Results are undirected
// betweenness (each unordered pair contributes once). When normalized, values
// are divided by (n-1)(n-2)/2.
template <typename Value = double>
std::vector<Value> betweenness_centrality(const WeightedGraph& g, bool normalized = false) {
    const std::size_t n = g.node_count();
    std::vector<Value> centrality(n, Value(0));
    std::vector<std::vector<int>> predecessors(n);
    std::vector<std::uint64_t> sigma(n);
    std::vector<int> dist(n);
    std::vector<Value> delta(n);
    std::vector<int> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        for (auto& p : predecessors) p.clear();
        order.clear();

        sigma[s] = 1;
        dist[s] = 0;
        std::deque<int> queue{static_cast<int>(s)};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const auto& [w, weight] : g.neighbors(v)) {
                (void)weight;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    predecessors[w].push_back(v);
                }
            }
        }

        std::fill(delta.begin(), delta.end(), Value(0));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (int v : predecessors[w]) {
                Value share = Value(sigma[v]) / Value(sigma[w]);
                share *= Value(1) + delta[w];
                delta[v] += share;
            }
            if (w != static_cast<int>(s)) centrality[w] += delta[w];
        }
    }

    // Each unordered source pair was visited from both ends.
    for (auto& c : centrality) c /= Value(2);
    if (normalized) {
        if (n < 3) throw Error("normalized betweenness needs at least 3 nodes");
        const Value scale = Value(static_cast<std::uint64_t>(n - 1) * (n - 2)) / Value(2);
        for (auto& c : centrality) c /= scale;
    }
    return centrality;
}

// Newman-Girvan modularity of a node->community assignment on a weighted
// graph. Assignments must cover every node; community ids are arbitrary ints.
inline double modularity_q(const WeightedGraph& g, const std::vector<int>& communities) {
    if (communities.size() != g.node_count())
        throw Error("community assignment covers " + std::to_string(communities.size()) +
                    " nodes, graph has " + std::to_string(g.node_count()));
    const double m = g.total_edge_weight();
    if (m <= 0.0) throw Error("modularity is undefined on a graph with no edge weight");

    double q = 0.0;
    for (const auto& e : g.edges()) {
        if (communities[e.u] == communities[e.v]) q += e.w / m;
    }
    std::map<int, double> community_degree;
    for (std::size_t i = 0; i < g.node_count(); ++i)
        community_degree[communities[i]] += g.weighted_degree(static_cast<int>(i));
    for (const auto& [c, k] : community_degree) {
        (void)c;
        q -= (k / (2.0 * m)) * (k / (2.0 * m));
    }
    return q;
}

struct CommunityResult {
    std::vector<int> assignment;  // node -> community, ids contiguous from 0
    double q = 0.0;
    int levels = 0;  // coarsening rounds that improved modularity
};

namespace detail {

// Compact working graph for the coarsening phases: adjacency lists plus
// per-node self-loop weight (intra-community weight folded by aggregation).
struct LouvainGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    double total_weight = 0.0;  // m: sum of edge weights, self-loops included

    std::size_t size() const { return adj.size(); }

    double weighted_degree(int v) const {
        double k = 2.0 * self_loop[v];
        for (const auto& [u, w] : adj[v]) {
            (void)u;
            k += w;
        }
        return k;
    }
};

// One local-move pass: nodes in a seeded shuffle order, strictly positive
// modularity gain required, ties resolved toward the lowest community index.
inline bool louvain_local_pass(const LouvainGraph& g, std::vector<int>& community, SeededRng& rng) {
    const std::size_t n = g.size();
    std::vector<double> community_degree(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) community_degree[community[v]] += g.weighted_degree(static_cast<int>(v));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    const double m = g.total_weight;
    bool moved_any = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int v : order) {
            const int home = community[v];
            const double k_v = g.weighted_degree(v);

            std::map<int, double> links;  // community -> weight from v
            links[home];                  // moving back must always be a candidate
            for (const auto& [u, w] : g.adj[v]) links[community[u]] += w;

            community_degree[home] -= k_v;
            const double base = links[home] - community_degree[home] * k_v / (2.0 * m);
            int best = home;
            double best_gain = 0.0;
            for (const auto& [c, w] : links) {
                if (c == home) continue;
                const double gain = (w - community_degree[c] * k_v / (2.0 * m)) - base;
                if (gain > best_gain || (gain == best_gain && best != home && c < best)) {
                    if (gain > 0.0) {
                        best = c;
                        best_gain = gain;
                    }
                }
            }
            community_degree[best] += k_v;
            if (best != home) {
                community[v] = best;
                improved = true;
                moved_any = true;
            }
        }
    }
    return moved_any;
}

inline LouvainGraph louvain_aggregate(const LouvainGraph& g, const std::vector<int>& community,
                                      std::vector<int>& dense_id) {
    dense_id.assign(g.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
        int& id = dense_id[v];
        // First occurrence order keeps ids stable across runs.
        for (std::size_t u = 0; u < v; ++u)
            if (community[u] == community[v]) {
                id = dense_id[u];
                break;
            }
        if (id < 0) id = next++;
    }

    LouvainGraph out;
    out.adj.resize(next);
    out.self_loop.assign(next, 0.0);
    out.total_weight = g.total_weight;
    std::vector<std::map<int, double>> acc(next);
    for (std::size_t v = 0; v < g.size(); ++v) {
        out.self_loop[dense_id[v]] += g.self_loop[v];
        for (const auto& [u, w] : g.adj[v]) {
            if (static_cast<std::size_t>(u) < v) continue;  // each undirected edge once
            const int cu = dense_id[v], cv = dense_id[u];
            if (cu == cv)
                out.self_loop[cu] += w;
            else
                acc[std::min(cu, cv)][std::max(cu, cv)] += w;
        }
    }
    for (int v = 0; v < next; ++v)
        for (const auto& [u, w] : acc[v]) {
            out.adj[v].emplace_back(u, w);
            out.adj[u].emplace_back(v, w);
        }
    return out;
}

}  // namespace detail

// Seeded Louvain: local moves until no strictly improving move exists, then
// community aggregation, repeated while modularity improves. Deterministic
// for a fixed seed; final ids are contiguous in order of first appearance.
inline CommunityResult louvain_communities(const WeightedGraph& g, std::uint64_t seed = 1) {
    if (g.edges().empty()) throw Error("community detection needs at least one edge");
    const std::size_t n = g.node_count();

    detail::LouvainGraph work;
    work.adj.resize(n);
    work.self_loop.assign(n, 0.0);
    for (const auto& e : g.edges()) {
        work.adj[e.u].emplace_back(e.v, e.w);
        work.adj[e.v].emplace_back(e.u, e.w);
        work.total_weight += e.w;
    }

    SeededRng rng(seed);
    std::vector<int> node_to_community(n);
    std::iota(node_to_community.begin(), node_to_community.end(), 0);

    CommunityResult result;
    result.assignment.resize(n);
    std::iota(result.assignment.begin(), result.assignment.end(), 0);

    std::vector<int> flat(n);
    std::iota(flat.begin(), flat.end(), 0);
    while (true) {
        std::vector<int> community(work.size());
        std::iota(community.begin(), community.end(), 0);
        const bool moved = detail::louvain_local_pass(work, community, rng);
        if (!moved && result.levels > 0) break;

        std::vector<int> dense_id;
        work = detail::louvain_aggregate(work, community, dense_id);
        for (auto& c : flat) c = dense_id[c];
        ++result.levels;
        if (!moved) break;
        if (work.size() == 1) break;
    }

    // Renumber communities contiguously by first occurrence over node order.
    std::map<int, int> renumber;
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = renumber.emplace(flat[v], static_cast<int>(renumber.size()));
        result.assignment[v] = it->second;
        (void)inserted;
    }
    result.q = modularity_q(g, result.assignment);
    return result;
}

// Principal-factor decomposition of a symmetric similarity matrix.
struct FactorModel {
    std::size_t variables = 0;
    std::size_t factors = 0;
    std::vector<double> loadings;     // variables x factors, row-major
    std::vector<double> eigenvalues;  // descending, one per retained factor
    std::vector<double> variance_explained;

    double loading(std::size_t variable, std::size_t factor) const {
        return loadings[variable * factors + factor];
    }
};

namespace detail {

// Cyclic Jacobi rotations on a dense symmetric matrix; returns eigenvalues on
// the diagonal and accumulates rotations into vecs (columns = eigenvectors).
inline void jacobi_eigen(std::vector<double>& a, std::size_t n, std::vector<double>& vecs) {
    vecs.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vecs[i * n + i] = 1.0;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off <= 1e-24 * n * n) return;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vecs[k * n + p], vkq = vecs[k * n + q];
                    vecs[k * n + p] = c * vkp - s * vkq;
                    vecs[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off > 1e-18 * n * n)
        throw Error("eigendecomposition did not converge (off-diagonal residual " +
                    format_general(std::sqrt(off)) + ")");
}

}  // namespace detail

// Retain the leading factors of a symmetric similarity matrix. Loadings are
// eigenvector * sqrt(eigenvalue); each factor's sign is chosen so its largest
// absolute loading is positive. Factors with non-positive eigenvalues cannot
// be retained.
inline FactorModel factor_model(const SimilarityMatrix& sim, std::size_t factor_count) {
    const std::size_t n = sim.size();
    if (factor_count == 0) throw Error("factor count must be >= 1");
    if (factor_count > n)
        throw Error("cannot retain " + std::to_string(factor_count) + " factors from " +
                    std::to_string(n) + " variables");
    sim.require_symmetric(1e-12);

    std::vector<double> a = sim.values;
    std::vector<double> vecs;
    detail::jacobi_eigen(a, n, vecs);

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

    FactorModel model;
    model.variables = n;
    model.factors = factor_count;
    model.loadings.assign(n * factor_count, 0.0);
    for (std::size_t f = 0; f < factor_count; ++f) {
        const std::size_t col = idx[f];
        double lambda = a[col * n + col];
        if (lambda <= 0.0)
            throw Error("factor " + std::to_string(f + 1) + " has non-positive eigenvalue " +
                        format_general(lambda));
        model.eigenvalues.push_back(lambda);
        model.variance_explained.push_back(lambda / static_cast<double>(n));

        const double scale = std::sqrt(lambda);
        std::size_t peak = 0;
        for (std::size_t v = 1; v < n; ++v)
            if (std::abs(vecs[v * n + col]) > std::abs(vecs[peak * n + col])) peak = v;
        const double sign = vecs[peak * n + col] < 0.0 ? -1.0 : 1.0;
        for (std::size_t v = 0; v < n; ++v)
            model.loadings[v * factor_count + f] = sign * scale * vecs[v * n + col];
    }
    return model;
}

// Variables whose loading stays at or below the threshold on every factor:
// candidates for the neutral color in rendering.
inline std::vector<std::size_t> factor_neutral_nodes(const FactorModel& model, double threshold) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < model.variables; ++v) {
        bool neutral = true;
        for (std::size_t f = 0; f < model.factors; ++f)
            if (model.loading(v, f) > threshold) {
                neutral = false;
                break;
            }
        if (neutral) out.push_back(v);
    }
    return out;
}

}  // namespace scimap
