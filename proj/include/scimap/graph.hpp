// Undirected weighted graph with per-node display attributes.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scimap/common.hpp"

namespace scimap {

struct GraphNode {
    std::string label;
    std::string kind;      // word/author/reference when known, else empty
    double size = 0.0;     // display size source value
    int cluster = -1;      // community or factor index; -1 = unassigned
};

struct GraphEdge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

class WeightedGraph {
public:
    int add_node(GraphNode node) {
        nodes_.push_back(std::move(node));
        adjacency_.emplace_back();
        return static_cast<int>(nodes_.size()) - 1;
    }

    int add_node(const std::string& label) { return add_node(GraphNode{label, "", 0.0, -1}); }

    // Parallel edges merge by summing weights; self-loops are not part of the
    // similarity-network domain and are rejected.
    void add_edge(int u, int v, double w) {
        check_node(u);
        check_node(v);
        if (u == v) throw Error("self-loop on node '" + nodes_[u].label + "' is not supported");
        if (u > v) std::swap(u, v);
        auto key = std::make_pair(u, v);
        auto it = edge_index_.find(key);
        if (it != edge_index_.end()) {
            edges_[it->second].w += w;
            refresh_adjacency(edges_[it->second]);
            return;
        }
        edge_index_[key] = edges_.size();
        edges_.push_back(GraphEdge{u, v, w});
        adjacency_[u].emplace_back(v, w);
        adjacency_[v].emplace_back(u, w);
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const GraphNode& node(int i) const {
        check_node(i);
        return nodes_[i];
    }
    GraphNode& node(int i) {
        check_node(i);
        return nodes_[i];
    }

    const std::vector<GraphEdge>& edges() const { return edges_; }

    const std::vector<std::pair<int, double>>& neighbors(int i) const {
        check_node(i);
        return adjacency_[i];
    }

    int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

    double weighted_degree(int i) const {
        double sum = 0.0;
        for (const auto& [j, w] : neighbors(i)) sum += w;
        return sum;
    }

    double total_edge_weight() const {
        double sum = 0.0;
        for (const auto& e : edges_) sum += e.w;
        return sum;
    }

    std::vector<int> isolated_nodes() const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (adjacency_[i].empty()) out.push_back(i);
        return out;
    }

    // Connected components by node index order; returns component id per node.
    std::vector<int> components() const {
        std::vector<int> comp(nodes_.size(), -1);
        int next = 0;
        std::vector<int> stack;
        for (int s = 0; s < static_cast<int>(nodes_.size()); ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = next;
            stack.push_back(s);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (const auto& [v, w] : adjacency_[u]) {
                    (void)w;
                    if (comp[v] < 0) {
                        comp[v] = next;
                        stack.push_back(v);
                    }
                }
            }
            ++next;
        }
        return comp;
    }

    // Copy without degree-0 nodes. old_to_new, when given, receives -1 for
    // dropped nodes and the new index otherwise.
    WeightedGraph drop_isolates(std::vector<int>* old_to_new = nullptr) const {
        WeightedGraph out;
        std::vector<int> remap(nodes_.size(), -1);
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (!adjacency_[i].empty()) remap[i] = out.add_node(nodes_[i]);
        for (const auto& e : edges_) out.add_edge(remap[e.u], remap[e.v], e.w);
        if (old_to_new) *old_to_new = remap;
        return out;
    }

private:
    void check_node(int i) const {
        if (i < 0 || i >= static_cast<int>(nodes_.size()))
            throw Error("node index " + std::to_string(i) + " out of range");
    }

    void refresh_adjacency(const GraphEdge& e) {
        for (auto& [j, w] : adjacency_[e.u])
            if (j == e.v) w = e.w;
        for (auto& [j, w] : adjacency_[e.v])
            if (j == e.u) w = e.w;
    }

    std::vector<GraphNode> nodes_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::map<std::pair<int, int>, std::size_t> edge_index_;
};

}  // namespace scimap
