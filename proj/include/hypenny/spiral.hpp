#pragma once

// Combinatorics of the regular (p,q) tessellation, grown lazily, plus the
// greedy spiral enumeration of its vertices and geometric realizations of
// spiral patches as circle packings.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "hypenny/geom.hpp"

namespace hypenny {

// Rotation system of the tessellation with p-gon faces and q faces around
// every vertex, materialized face by face.  Every vertex keeps its incident
// neighbors in clockwise order ("fan"); a fan with fewer than q built faces
// is a contiguous arc, a saturated fan is the full cyclic order.
class Tiling {
public:
    Tiling(int p, int q);

    int p() const { return p_; }
    int q() const { return q_; }
    int vertex_count() const { return static_cast<int>(recs_.size()); }

    const std::vector<int>& fan(int v) const { return recs_[v].fan; }
    int faces_built(int v) const { return recs_[v].faces; }
    bool complete(int v) const { return recs_[v].faces == q_; }

    // Build faces around v until its fan closes up.
    void saturate(int v);

    // Neighbor that follows u in clockwise order around v, building the
    // missing face on demand.
    int cw_next(int v, int u);

    bool adjacent(int u, int v) const;

private:
    struct VertexRec {
        std::vector<int> fan;
        int faces = 0;
    };

    void add_face_at_back(int x);
    int unbuilt(int v) const { return q_ - recs_[v].faces; }

    int p_, q_;
    std::vector<VertexRec> recs_;
};

struct SpiralStep {
    int tiling_id;
    int new_edges;               // tangencies to previously placed vertices
    int anchor_u = -1, anchor_v = -1;  // clockwise-consecutive placed
                                       // neighbors (tiling ids)
};

// Greedy spiral enumeration: starting from an edge, each new vertex is the
// clockwise-next frontier vertex after the most recently used contact.
class Spiral {
public:
    Spiral(int p, int q);  // requires p == 3, q >= 7

    void extend_to(int n);
    int size() const { return static_cast<int>(steps_.size()); }
    const std::vector<SpiralStep>& steps() const { return steps_; }

    long long edges(int n);                       // cumulative after n vertices
    std::vector<long long> edge_profile(int n);   // [k] = edges(k), 0 <= k <= n

    const Tiling& tiling() const { return tiling_; }
    Tiling& tiling() { return tiling_; }
    int spiral_index(int tiling_id) const;  // 1-based; 0 if not placed

private:
    void place_next();

    Tiling tiling_;
    std::vector<SpiralStep> steps_;
    std::vector<int> spiral_index_;   // tiling id -> 1-based spiral index
    std::vector<long long> cum_edges_;  // [k] = edges among first k vertices
};

// Geometric realization of the first n spiral vertices as a packing of
// circles with diameter d (centers at tiling distance d).
struct EmbeddedSpiral {
    double d = 0.0;
    std::vector<HPoint> pos;                   // [i] = center of vertex i+1
    std::vector<std::pair<int, int>> edges;    // 0-based index pairs, u < v
    std::vector<std::array<int, 3>> faces;     // bounded triangular faces
    std::vector<int> boundary;                 // outer face cycle, 0-based
};

// Requires 3 <= n <= already-extended size is not needed; extends on demand.
EmbeddedSpiral embed_spiral(Spiral& s, int n, double d);

struct PatchMetrics {
    int n = 0;
    long long e = 0;
    long long bounded_faces = 0;
    long long boundary_len = 0;
    double area = 0.0;
    double perimeter = 0.0;
    double oler_slack = 0.0;  // area/A(d) + perimeter/d - (2n-2)
    double gb_gap = 0.0;      // area - faces * A(d)
};

PatchMetrics measure_patch(const EmbeddedSpiral& es);

// Maximum edge count over every connected n-vertex subset of the (p,q)
// tessellation, by exhaustive enumeration rooted at a fixed vertex.
// Returns [0..n_max]; entry [k] is the maximum for k vertices.
std::vector<long long> exhaustive_max_edges(int p, int q, int n_max);

}  // namespace hypenny
