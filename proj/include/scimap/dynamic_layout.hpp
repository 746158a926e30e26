// Time-sliced layout: joint majorization of per-slice stress plus an
// inter-slice displacement penalty, stress decomposition into static and
// dynamic components, construct projection, and frame interpolation.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/graph.hpp"
#include "scimap/layout.hpp"
#include "scimap/matrix.hpp"

namespace scimap {

struct TimeSlice {
    SimilarityMatrix distances;  // square over the present nodes, slice order
    std::vector<int> present;    // global node ids, one per matrix row
};

struct TimeSlicedNetwork {
    std::vector<TimeSlice> slices;
    std::vector<std::string> node_labels;  // global id -> label

    std::size_t slice_count() const { return slices.size(); }

    void validate() const {
        for (std::size_t t = 0; t < slices.size(); ++t) {
            const auto& s = slices[t];
            if (s.present.size() != s.distances.size())
                throw Error("slice " + std::to_string(t) + ": presence size " +
                            std::to_string(s.present.size()) + " does not match matrix size " +
                            std::to_string(s.distances.size()));
            std::vector<bool> seen(node_labels.size(), false);
            for (std::size_t a = 0; a < s.present.size(); ++a) {
                const int id = s.present[a];
                if (id < 0 || id >= static_cast<int>(node_labels.size()))
                    throw Error("slice " + std::to_string(t) + ": node id " + std::to_string(id) +
                                " out of universe range");
                if (seen[id])
                    throw Error("slice " + std::to_string(t) + ": node '" + node_labels[id] +
                                "' listed twice");
                seen[id] = true;
            }
        }
    }

    // global id -> row in slice t, or -1 when absent.
    std::vector<int> slice_index(std::size_t t) const {
        std::vector<int> idx(node_labels.size(), -1);
        for (std::size_t a = 0; a < slices[t].present.size(); ++a)
            idx[slices[t].present[a]] = static_cast<int>(a);
        return idx;
    }
};

struct LayoutFrameSet {
    std::vector<Positions> frames;  // frames[t] aligned with slices[t].present
    double omega = 0.0;
    double static_stress = 0.0;
    double dynamic_stress = 0.0;
};

struct StressDecomposition {
    double total = 0.0;
    double static_term = 0.0;
    double dynamic_term = 0.0;
};

namespace detail {

inline void require_frames_aligned(const LayoutFrameSet& frames, const TimeSlicedNetwork& net) {
    if (frames.frames.size() != net.slices.size())
        throw Error("frame count " + std::to_string(frames.frames.size()) +
                    " does not match slice count " + std::to_string(net.slices.size()));
    for (std::size_t t = 0; t < net.slices.size(); ++t)
        if (frames.frames[t].size() != net.slices[t].present.size())
            throw Error("frame " + std::to_string(t) + " covers " +
                        std::to_string(frames.frames[t].size()) + " nodes, slice has " +
                        std::to_string(net.slices[t].present.size()));
}

inline void require_slice_distances(const TimeSlicedNetwork& net) {
    for (std::size_t t = 0; t < net.slices.size(); ++t) {
        const auto& d = net.slices[t].distances;
        d.require_symmetric();
        for (std::size_t a = 0; a < d.size(); ++a) {
            if (d.at(a, a) != 0.0)
                throw Error("slice " + std::to_string(t) + ": nonzero diagonal at '" + d.labels[a] + "'");
            for (std::size_t b = a + 1; b < d.size(); ++b)
                if (d.at(a, b) == 0.0)
                    throw Error("zero distance between '" + d.labels[a] + "' and '" + d.labels[b] +
                                "' in slice " + std::to_string(t));
        }
    }
}

}  // namespace detail

// Evaluate the dynamic stress of a frame set: per-slice 1/d^2-weighted stress
// over ordered pairs plus omega-weighted squared displacement of nodes
// persisting from one slice to the next. The total is accumulated in a single
// interleaved pass so the decomposition identity is a genuine check.
inline StressDecomposition dynamic_stress(const LayoutFrameSet& frames, const TimeSlicedNetwork& net) {
    net.validate();
    detail::require_frames_aligned(frames, net);
    detail::require_slice_distances(net);

    const std::size_t T = net.slices.size();
    StressDecomposition out;
    for (std::size_t t = 0; t < T; ++t)
        out.static_term += detail::weighted_stress(frames.frames[t], net.slices[t].distances,
                                                   StressWeighting::kk);
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const auto next_index = net.slice_index(t + 1);
        const auto& pres = net.slices[t].present;
        for (std::size_t a = 0; a < pres.size(); ++a) {
            const int b = next_index[pres[a]];
            if (b < 0) continue;
            out.dynamic_term +=
                frames.omega * squared_distance(frames.frames[t][a], frames.frames[t + 1][b]);
        }
    }
    for (std::size_t t = 0; t < T; ++t) {
        out.total += detail::weighted_stress(frames.frames[t], net.slices[t].distances,
                                             StressWeighting::kk);
        if (t + 1 < T) {
            const auto next_index = net.slice_index(t + 1);
            const auto& pres = net.slices[t].present;
            for (std::size_t a = 0; a < pres.size(); ++a) {
                const int b = next_index[pres[a]];
                if (b < 0) continue;
                out.total +=
                    frames.omega * squared_distance(frames.frames[t][a], frames.frames[t + 1][b]);
            }
        }
    }
    return out;
}

// Deterministic starting configuration: slice 0 is random from the seed;
// later slices keep persistent nodes where they were and place entering
// nodes at the centroid of the persistent nodes (origin when there are
// none). Exact coincidences get a sub-micro seeded nudge so majorization
// directions stay defined.
inline std::vector<Positions> initial_frames(const TimeSlicedNetwork& net, const LayoutConfig& cfg) {
    net.validate();
    SeededRng rng(cfg.seed);
    const std::size_t T = net.slices.size();
    std::vector<Positions> frames(T);
    if (T == 0) return frames;

    frames[0] = detail::random_positions(net.slices[0].present.size(), rng);
    for (std::size_t t = 1; t < T; ++t) {
        const auto prev_index = net.slice_index(t - 1);
        const auto& pres = net.slices[t].present;
        frames[t].resize(pres.size());

        Point2 centroid{0.0, 0.0};
        int persistent = 0;
        for (std::size_t a = 0; a < pres.size(); ++a) {
            const int p = prev_index[pres[a]];
            if (p < 0) continue;
            centroid.x += frames[t - 1][p].x;
            centroid.y += frames[t - 1][p].y;
            ++persistent;
        }
        if (persistent > 0) {
            centroid.x /= persistent;
            centroid.y /= persistent;
        }

        for (std::size_t a = 0; a < pres.size(); ++a) {
            const int p = prev_index[pres[a]];
            Point2 pos = p >= 0 ? frames[t - 1][p] : centroid;
            auto coincides = [&](const Point2& q) {
                for (std::size_t b = 0; b < a; ++b)
                    if (frames[t][b].x == q.x && frames[t][b].y == q.y) return true;
                return false;
            };
            while (p < 0 && coincides(pos)) {
                pos.x = centroid.x + rng.uniform(-1e-6, 1e-6);
                pos.y = centroid.y + rng.uniform(-1e-6, 1e-6);
            }
            frames[t][a] = pos;
        }
    }
    return frames;
}

struct DynamicLayoutResult {
    LayoutFrameSet frames;
    std::vector<double> stress_trace;  // optimized objective at start and after each sweep
};

// Minimize the dynamic stress by node-wise majorization sweeps over every
// (slice, node) pair in deterministic index order. Each node update uses its
// within-slice distance terms plus quadratic attraction to its own positions
// in neighboring slices. window extends the temporal coupling to t +- delta
// for delta <= window with weight omega/delta^2; the reported decomposition
// is always the single-step form.
inline DynamicLayoutResult dynamic_layout(const TimeSlicedNetwork& net, double omega,
                                          const LayoutConfig& cfg, int window = 1,
                                          const std::vector<Positions>* initial = nullptr) {
    cfg.validate();
    if (omega < 0.0) throw Error("omega must be >= 0");
    if (window < 1) throw Error("window must be >= 1");
    net.validate();
    detail::require_slice_distances(net);

    const std::size_t T = net.slices.size();
    DynamicLayoutResult res;
    res.frames.omega = omega;
    if (initial) {
        res.frames.frames = *initial;
        detail::require_frames_aligned(res.frames, net);
    } else {
        res.frames.frames = initial_frames(net, cfg);
    }
    if (T == 0) return res;

    std::vector<std::vector<int>> index(T);
    for (std::size_t t = 0; t < T; ++t) index[t] = net.slice_index(t);

    auto objective = [&]() {
        double total = 0.0;
        for (std::size_t t = 0; t < T; ++t)
            total += detail::weighted_stress(res.frames.frames[t], net.slices[t].distances,
                                             StressWeighting::kk);
        for (int delta = 1; delta <= window; ++delta) {
            const double w = omega / (static_cast<double>(delta) * delta);
            for (std::size_t t = 0; t + delta < T; ++t) {
                const auto& pres = net.slices[t].present;
                for (std::size_t a = 0; a < pres.size(); ++a) {
                    const int b = index[t + delta][pres[a]];
                    if (b < 0) continue;
                    total += w * squared_distance(res.frames.frames[t][a],
                                                  res.frames.frames[t + delta][b]);
                }
            }
        }
        return total;
    };

    double stress = objective();
    res.stress_trace.push_back(stress);
    std::vector<detail::Anchor> anchors;
    for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
        for (std::size_t t = 0; t < T; ++t) {
            const auto& pres = net.slices[t].present;
            for (std::size_t a = 0; a < pres.size(); ++a) {
                anchors.clear();
                for (int delta = 1; delta <= window; ++delta) {
                    const double w = omega / (static_cast<double>(delta) * delta);
                    if (w == 0.0) continue;
                    if (t >= static_cast<std::size_t>(delta)) {
                        const int b = index[t - delta][pres[a]];
                        if (b >= 0)
                            anchors.push_back({res.frames.frames[t - delta][b], w});
                    }
                    if (t + delta < T) {
                        const int b = index[t + delta][pres[a]];
                        if (b >= 0)
                            anchors.push_back({res.frames.frames[t + delta][b], w});
                    }
                }
                res.frames.frames[t][a] = detail::majorize_node(
                    res.frames.frames[t], a, net.slices[t].distances, StressWeighting::kk, anchors);
            }
        }
        const double next = objective();
        res.stress_trace.push_back(next);
        const bool converged = stress == 0.0 || (stress - next) < cfg.convergence_epsilon * stress;
        stress = next;
        if (converged) break;
    }

    // One common translation across all frames keeps both stress components
    // unchanged; per-frame centering would not.
    double cx = 0.0, cy = 0.0;
    std::size_t count = 0;
    for (const auto& frame : res.frames.frames)
        for (const auto& p : frame) {
            cx += p.x;
            cy += p.y;
            ++count;
        }
    if (count > 0) {
        cx /= static_cast<double>(count);
        cy /= static_cast<double>(count);
        for (auto& frame : res.frames.frames)
            for (auto& p : frame) {
                p.x -= cx;
                p.y -= cy;
                detail::require_finite({p});
            }
    }

    const auto decomp = dynamic_stress(res.frames, net);
    res.frames.static_stress = decomp.static_term;
    res.frames.dynamic_stress = decomp.dynamic_term;
    return res;
}

// Renderable frame sequence: the bridge between layout results and the
// SVG/record emitters.
struct FrameNodeRecord {
    int node_id = 0;
    double x = 0.0;
    double y = 0.0;
    double opacity = 1.0;
    bool construct = false;
};

struct AnimationFrame {
    double t = 0.0;  // slice coordinate; fractional for interpolated frames
    std::vector<FrameNodeRecord> nodes;
};

struct AnimationSequence {
    std::vector<std::string> labels;   // node_id -> label (constructs appended)
    std::vector<int> clusters;         // node_id -> cluster (-1 = none)
    std::size_t base_node_count = 0;   // ids below this are real variables
    std::vector<AnimationFrame> frames;
};

inline AnimationSequence animation_frames(const LayoutFrameSet& frames, const TimeSlicedNetwork& net) {
    net.validate();
    detail::require_frames_aligned(frames, net);
    AnimationSequence seq;
    seq.labels = net.node_labels;
    seq.clusters.assign(net.node_labels.size(), -1);
    seq.base_node_count = net.node_labels.size();
    for (std::size_t t = 0; t < net.slices.size(); ++t) {
        AnimationFrame frame;
        frame.t = static_cast<double>(t);
        const auto& pres = net.slices[t].present;
        for (std::size_t a = 0; a < pres.size(); ++a)
            frame.nodes.push_back({pres[a], frames.frames[t][a].x, frames.frames[t][a].y, 1.0, false});
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

// Add one construct pseudo-node for the chosen factor at the loading-weighted
// centroid of the positively loading nodes present in each frame. Constructs
// never participate in stress; they are display-only.
inline AnimationSequence project_eigenvector_nodes(const AnimationSequence& seq,
                                                   const std::vector<double>& loadings,
                                                   std::size_t factor_count, std::size_t factor_index) {
    if (factor_index >= factor_count) throw Error("factor index out of range");
    if (loadings.size() != seq.base_node_count * factor_count)
        throw Error("loading matrix rows " + std::to_string(loadings.size() / std::max<std::size_t>(factor_count, 1)) +
                    " do not match node count " + std::to_string(seq.base_node_count));
    auto weight_of = [&](int id) {
        return std::max(loadings[static_cast<std::size_t>(id) * factor_count + factor_index], 0.0);
    };
    double any_positive = 0.0;
    for (std::size_t i = 0; i < seq.base_node_count; ++i) any_positive += weight_of(static_cast<int>(i));
    if (any_positive == 0.0)
        throw Error("factor " + std::to_string(factor_index + 1) + " has no positive loadings");

    AnimationSequence out = seq;
    const int construct_id = static_cast<int>(out.labels.size());
    out.labels.push_back("factor_" + std::to_string(factor_index + 1));
    out.clusters.push_back(static_cast<int>(factor_index));
    for (auto& frame : out.frames) {
        double wsum = 0.0, cx = 0.0, cy = 0.0;
        for (const auto& rec : frame.nodes) {
            if (rec.construct || rec.node_id >= static_cast<int>(seq.base_node_count)) continue;
            const double w = weight_of(rec.node_id);
            if (w <= 0.0) continue;
            wsum += w;
            cx += w * rec.x;
            cy += w * rec.y;
        }
        if (wsum == 0.0) continue;  // no positively loading node present: construct absent here
        frame.nodes.push_back({construct_id, cx / wsum, cy / wsum, 1.0, true});
    }
    return out;
}

// Linear interpolation between consecutive frames. Nodes entering at t+1
// fade in at their target position; nodes leaving after t fade out in
// place. T input frames with s inserted steps yield (T-1)(s+1)+1 frames.
inline AnimationSequence interpolate_frames(const AnimationSequence& seq, int steps_between) {
    if (steps_between < 0) throw Error("steps_between must be >= 0");
    if (steps_between == 0 || seq.frames.size() < 2) return seq;

    AnimationSequence out;
    out.labels = seq.labels;
    out.clusters = seq.clusters;
    out.base_node_count = seq.base_node_count;
    const std::size_t T = seq.frames.size();
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const auto& cur = seq.frames[t];
        const auto& nxt = seq.frames[t + 1];
        out.frames.push_back(cur);
        std::map<int, const FrameNodeRecord*> cur_by_id, nxt_by_id;
        for (const auto& r : cur.nodes) cur_by_id[r.node_id] = &r;
        for (const auto& r : nxt.nodes) nxt_by_id[r.node_id] = &r;

        for (int s = 1; s <= steps_between; ++s) {
            const double f = static_cast<double>(s) / (steps_between + 1);
            AnimationFrame frame;
            frame.t = cur.t + f * (nxt.t - cur.t);
            for (const auto& [id, a] : cur_by_id) {
                auto it = nxt_by_id.find(id);
                if (it != nxt_by_id.end()) {
                    const auto* b = it->second;
                    frame.nodes.push_back({id, a->x + f * (b->x - a->x), a->y + f * (b->y - a->y),
                                           a->opacity + f * (b->opacity - a->opacity), a->construct});
                } else {
                    frame.nodes.push_back({id, a->x, a->y, a->opacity * (1.0 - f), a->construct});
                }
            }
            for (const auto& [id, b] : nxt_by_id)
                if (!cur_by_id.count(id))
                    frame.nodes.push_back({id, b->x, b->y, b->opacity * f, b->construct});
            out.frames.push_back(std::move(frame));
        }
    }
    out.frames.push_back(seq.frames.back());
    return out;
}

// Glue for file-based pipelines: one graph per slice, node identity by
// label, per-slice geodesic distances.
inline TimeSlicedNetwork build_time_sliced_network(const std::vector<WeightedGraph>& slices,
                                                   GeodesicMode mode,
                                                   DisconnectedPolicy policy = DisconnectedPolicy::error) {
    TimeSlicedNetwork net;
    std::map<std::string, int> ids;
    for (const auto& g : slices)
        for (std::size_t i = 0; i < g.node_count(); ++i) ids.emplace(g.node(static_cast<int>(i)).label, 0);
    int next = 0;
    for (auto& [label, id] : ids) {
        id = next++;
        net.node_labels.push_back(label);
    }
    for (std::size_t t = 0; t < slices.size(); ++t) {
        TimeSlice slice;
        slice.distances = geodesic_distances(slices[t], mode, policy);
        for (std::size_t i = 0; i < slices[t].node_count(); ++i) {
            const auto& label = slices[t].node(static_cast<int>(i)).label;
            slice.present.push_back(ids.at(label));
        }
        std::vector<bool> seen(net.node_labels.size(), false);
        for (int id : slice.present) {
            if (seen[id])
                throw Error("slice " + std::to_string(t) + ": duplicate node label '" +
                            net.node_labels[id] + "'");
            seen[id] = true;
        }
        net.slices.push_back(std::move(slice));
    }
    net.validate();
    return net;
}

}  // namespace scimap
