#include "hypenny/spiral.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "hypenny/errors.hpp"
#include "hypenny/hyptrig.hpp"

namespace hypenny {

// ---------------------------------------------------------------------------
// Tiling

Tiling::Tiling(int p, int q) : p_(p), q_(q) {
    require(p >= 3 && q >= 3, "tiling: need at least triangle faces and 3 faces per vertex");
    require((p - 2) * (q - 2) >= 4, "tiling: (p,q) must not be spherical");
    recs_.resize(2);
    recs_[0].fan = {1};
    recs_[1].fan = {0};
}

// Build one face in the unbuilt sector of x, adjacent to the edge between x
// and the last entry of x's fan.  The face boundary is collected in two arcs:
// arcA walks from x across vertices whose fans this face closes (via their
// front edges), arcB likewise from the back neighbor (via back edges); any
// remaining boundary vertices are created fresh.
void Tiling::add_face_at_back(int x) {
    check_cert(unbuilt(x) > 0, "tiling: vertex already saturated");

    std::vector<int> arcA{x};
    while (unbuilt(arcA.back()) == 1) {
        const auto& f = recs_[arcA.back()].fan;
        check_cert(static_cast<int>(f.size()) == q_, "tiling: fan arc out of sync");
        arcA.push_back(f.front());
        check_cert(static_cast<int>(arcA.size()) <= p_, "tiling: face closure wrapped around");
    }
    int back_nbr = recs_[x].fan.back();
    std::vector<int> arcB{back_nbr};
    while (unbuilt(arcB.back()) == 1) {
        const auto& f = recs_[arcB.back()].fan;
        check_cert(static_cast<int>(f.size()) == q_, "tiling: fan arc out of sync");
        arcB.push_back(f.back());
        check_cert(static_cast<int>(arcA.size() + arcB.size()) <= p_,
                   "tiling: face closure wrapped around");
    }
    for (int a : arcA)
        for (int b : arcB) check_cert(a != b, "tiling: face arcs collided");

    int existing = static_cast<int>(arcA.size() + arcB.size());
    int fresh = p_ - existing;
    check_cert(fresh >= 0, "tiling: face overfilled");

    for (int v : arcA) ++recs_[v].faces;
    for (int v : arcB) ++recs_[v].faces;

    int a_end = arcA.back();
    int b_end = arcB.back();
    if (fresh == 0) {
        auto& fa = recs_[a_end].fan;
        check_cert(std::find(fa.begin(), fa.end(), b_end) == fa.end(),
                   "tiling: closing edge already present");
        fa.push_back(b_end);
        auto& fb = recs_[b_end].fan;
        fb.insert(fb.begin(), a_end);
        return;
    }

    int first = vertex_count();
    recs_.resize(recs_.size() + fresh);
    for (int j = 0; j < fresh; ++j) {
        int prev = (j == 0) ? a_end : first + j - 1;
        int next = (j == fresh - 1) ? b_end : first + j + 1;
        recs_[first + j].fan = {prev, next};
        recs_[first + j].faces = 1;
    }
    recs_[a_end].fan.push_back(first);
    auto& fb = recs_[b_end].fan;
    fb.insert(fb.begin(), first + fresh - 1);
}

void Tiling::saturate(int v) {
    require(v >= 0 && v < vertex_count(), "tiling: no such vertex");
    while (unbuilt(v) > 0) add_face_at_back(v);
}

int Tiling::cw_next(int v, int u) {
    require(v >= 0 && v < vertex_count(), "tiling: no such vertex");
    {
        const auto& f = recs_[v].fan;
        auto it = std::find(f.begin(), f.end(), u);
        require(it != f.end(), "cw_next: vertices are not adjacent");
        std::size_t i = static_cast<std::size_t>(it - f.begin());
        if (i + 1 < f.size()) return f[i + 1];
        if (complete(v)) return f[0];
    }
    add_face_at_back(v);
    const auto& f = recs_[v].fan;
    std::size_t i = static_cast<std::size_t>(std::find(f.begin(), f.end(), u) - f.begin());
    if (i + 1 < f.size()) return f[i + 1];
    check_cert(complete(v), "cw_next: fan failed to grow");
    return f[0];
}

bool Tiling::adjacent(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
    const auto& f = recs_[u].fan;
    return std::find(f.begin(), f.end(), v) != f.end();
}

// ---------------------------------------------------------------------------
// Spiral

Spiral::Spiral(int p, int q) : tiling_(p, q) {
    require(p == 3, "spiral: defined for triangular tessellations");
    require(q >= 7, "spiral: vertex order must be at least 7");
    tiling_.saturate(0);
    tiling_.saturate(1);
    spiral_index_.assign(tiling_.vertex_count(), 0);
    spiral_index_[0] = 1;
    spiral_index_[1] = 2;
    steps_ = {{0, 0, -1, -1}, {1, 1, -1, -1}};
    cum_edges_ = {0, 0, 1};
}

int Spiral::spiral_index(int tiling_id) const {
    if (tiling_id < 0 || tiling_id >= static_cast<int>(spiral_index_.size())) return 0;
    return spiral_index_[tiling_id];
}

void Spiral::place_next() {
    int i = size();  // placing vertex number i+1
    int cur = steps_[i - 1].tiling_id;
    int prev = steps_[i - 2].tiling_id;
    const auto& fan = tiling_.fan(cur);
    int q = tiling_.q();
    check_cert(static_cast<int>(fan.size()) == q, "spiral: current vertex not saturated");

    auto placed = [&](int id) { return spiral_index(id) != 0; };

    int pos_prev = static_cast<int>(std::find(fan.begin(), fan.end(), prev) - fan.begin());
    check_cert(pos_prev < q, "spiral: predecessor missing from fan");
    // Clockwise from the predecessor, the placed contacts of cur form an
    // arc; the next vertex sits just past its far end.
    int last_placed_off = 0;
    for (int off = 1; off < q; ++off) {
        if (placed(fan[(pos_prev + off) % q])) last_placed_off = off;
    }
    int next = fan[(pos_prev + last_placed_off + 1) % q];
    check_cert(!placed(next), "spiral: selection landed on a placed vertex");

    const auto& nf = tiling_.fan(next);
    int de = 0;
    for (int u : nf) de += placed(u) ? 1 : 0;

    SpiralStep step;
    step.tiling_id = next;
    step.new_edges = de;
    int m = static_cast<int>(nf.size());
    int pairs = tiling_.complete(next) ? m : m - 1;
    for (int j = 0; j < pairs; ++j) {
        int u = nf[j], w = nf[(j + 1) % m];
        if (placed(u) && placed(w)) {
            step.anchor_u = u;
            step.anchor_v = w;
            break;
        }
    }
    check_cert(step.anchor_u != -1, "spiral: no adjacent pair of placed contacts");

    tiling_.saturate(next);
    spiral_index_.resize(tiling_.vertex_count(), 0);
    spiral_index_[next] = i + 1;
    steps_.push_back(step);
    cum_edges_.push_back(cum_edges_.back() + de);
}

void Spiral::extend_to(int n) {
    require(n >= 0, "spiral: negative size");
    while (size() < n) place_next();
}

long long Spiral::edges(int n) {
    require(n >= 0, "spiral: negative size");
    extend_to(n);
    return cum_edges_[n];
}

std::vector<long long> Spiral::edge_profile(int n) {
    edges(n);
    return {cum_edges_.begin(), cum_edges_.begin() + n + 1};
}

// ---------------------------------------------------------------------------
// Embedding

EmbeddedSpiral embed_spiral(Spiral& s, int n, double d) {
    require(n >= 3, "embed_spiral: need at least 3 circles");
    require(d > 0.0, "embed_spiral: diameter must be positive");
    s.extend_to(n);
    double alpha = alpha_of_d(d);

    EmbeddedSpiral es;
    es.d = d;
    es.pos.resize(n);
    const auto& steps = s.steps();

    // Positions propagate outward from the center by breadth-first search, so
    // roundoff compounds only over the patch radius, never along the whole
    // spiral.  Around a saturated vertex the fan entries sit at exact angle
    // steps of alpha (clockwise), which pins every neighbor once one
    // reference neighbor is placed.
    std::vector<char> have(n, 0);
    es.pos[0] = origin();
    es.pos[1] = point_from_polar(d, 0.0);
    have[0] = have[1] = 1;
    std::queue<std::pair<int, int>> frontier;  // (vertex, positioned reference)
    frontier.push({0, 1});
    frontier.push({1, 0});
    int positioned = 2;
    while (!frontier.empty()) {
        auto [i, r] = frontier.front();
        frontier.pop();
        const auto& fan = s.tiling().fan(steps[i].tiling_id);
        int q = static_cast<int>(fan.size());
        check_cert(q == s.tiling().q(), "embed_spiral: placed vertex not saturated");
        int j0 = static_cast<int>(
            std::find(fan.begin(), fan.end(), steps[r].tiling_id) - fan.begin());
        check_cert(j0 < q, "embed_spiral: reference neighbor missing");
        for (int j = 0; j < q; ++j) {
            int su = s.spiral_index(fan[j]) - 1;
            if (su < 0 || su >= n || have[su]) continue;
            es.pos[su] = Isometry::rotation_about(es.pos[i], -(j - j0) * alpha)(es.pos[r]);
            have[su] = 1;
            ++positioned;
            frontier.push({su, i});
        }
    }
    check_cert(positioned == n, "embed_spiral: patch not connected");

    // Tangency list from the tessellation fans.
    for (int i = 0; i < n; ++i) {
        int id = steps[i].tiling_id;
        for (int u : s.tiling().fan(id)) {
            int j = s.spiral_index(u) - 1;
            if (j >= 0 && j < i) es.edges.push_back({j, i});
        }
    }
    check_cert(static_cast<long long>(es.edges.size()) == s.edges(n),
               "embed_spiral: tangency count mismatch");

    // Bounded faces: fan-consecutive placed pairs around each placed vertex.
    std::set<std::array<int, 3>> face_set;
    for (int i = 0; i < n; ++i) {
        int id = steps[i].tiling_id;
        const auto& fan = s.tiling().fan(id);
        int q = static_cast<int>(fan.size());
        for (int j = 0; j < q; ++j) {
            int a = s.spiral_index(fan[j]) - 1;
            int b = s.spiral_index(fan[(j + 1) % q]) - 1;
            if (a >= 0 && a < n && b >= 0 && b < n) {
                std::array<int, 3> tri{i, a, b};
                std::sort(tri.begin(), tri.end());
                face_set.insert(tri);
            }
        }
    }
    es.faces.assign(face_set.begin(), face_set.end());

    // Outer boundary: orbits of the directed-edge successor map on the
    // induced rotation system.  Each bounded face accounts for one orbit of
    // length 3; the one remaining orbit is the boundary.
    std::vector<std::vector<int>> ring(n);  // placed neighbors, cyclic order
    for (int i = 0; i < n; ++i) {
        int id = steps[i].tiling_id;
        for (int u : s.tiling().fan(id)) {
            int j = s.spiral_index(u) - 1;
            if (j >= 0 && j < n) ring[i].push_back(j);
        }
    }
    std::map<std::pair<int, int>, char> seen;
    for (const auto& e : es.edges) {
        seen[{e.first, e.second}] = 0;
        seen[{e.second, e.first}] = 0;
    }
    std::map<std::array<int, 3>, int> unclaimed;
    for (const auto& f : es.faces) unclaimed[f] = 1;

    std::vector<std::vector<int>> leftovers;
    for (auto& [edge, visited] : seen) {
        if (visited) continue;
        std::vector<int> orbit;
        std::pair<int, int> cur = edge;
        do {
            seen[cur] = 1;
            orbit.push_back(cur.first);
            const auto& rg = ring[cur.second];
            int m = static_cast<int>(rg.size());
            int pos = static_cast<int>(std::find(rg.begin(), rg.end(), cur.first) - rg.begin());
            cur = {cur.second, rg[(pos + 1) % m]};
        } while (cur != edge);
        if (orbit.size() == 3) {
            std::array<int, 3> tri{orbit[0], orbit[1], orbit[2]};
            std::sort(tri.begin(), tri.end());
            auto it = unclaimed.find(tri);
            if (it != unclaimed.end() && it->second > 0) {
                --it->second;
                continue;  // a bounded face
            }
        }
        leftovers.push_back(std::move(orbit));
    }
    check_cert(leftovers.size() == 1, "embed_spiral: boundary trace did not close");
    es.boundary = leftovers.front();
    for (const auto& [f, cnt] : unclaimed)
        check_cert(cnt == 0, "embed_spiral: face unmatched by an orbit");

    // Certify the packing numerically: tangent pairs at distance d, all
    // other pairs strictly farther.
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : es.edges) adj[e.first][e.second] = adj[e.second][e.first] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double dist = hdist(es.pos[i], es.pos[j]);
            if (adj[i][j]) {
                check_cert(std::abs(dist - d) <= 1e-8 * (1.0 + d),
                           "embed_spiral: tangency length off");
            } else {
                check_cert(dist > d + 1e-9, "embed_spiral: non-tangent circles too close");
            }
        }
    return es;
}

PatchMetrics measure_patch(const EmbeddedSpiral& es) {
    require(es.pos.size() >= 3, "measure_patch: need at least 3 circles");
    PatchMetrics pm;
    pm.n = static_cast<int>(es.pos.size());
    pm.e = static_cast<long long>(es.edges.size());
    pm.bounded_faces = static_cast<long long>(es.faces.size());
    pm.boundary_len = static_cast<long long>(es.boundary.size());
    check_cert(pm.n - pm.e + pm.bounded_faces + 1 == 2, "measure_patch: Euler count off");

    std::vector<HPoint> loop;
    loop.reserve(es.boundary.size());
    for (int i : es.boundary) loop.push_back(es.pos[i]);
    pm.area = polygon_area(loop);
    pm.perimeter = polygon_perimeter(loop);

    double unit = triangle_area(es.d);
    pm.gb_gap = pm.area - static_cast<double>(pm.bounded_faces) * unit;
    pm.oler_slack = pm.area / unit + pm.perimeter / es.d - (2.0 * pm.n - 2.0);
    return pm;
}

// ---------------------------------------------------------------------------
// Exhaustive search

std::vector<long long> exhaustive_max_edges(int p, int q, int n_max) {
    require(n_max >= 1, "exhaustive_max_edges: need at least one vertex");
    require(n_max <= 12, "exhaustive_max_edges: enumeration beyond 12 vertices is impractical");

    Tiling t(p, q);
    // Saturate a combinatorial ball: every subset of n_max vertices
    // containing vertex 0 lives within graph distance n_max - 1.
    std::vector<int> dist;
    {
        std::queue<int> bfs;
        dist.assign(t.vertex_count(), -1);
        dist[0] = 0;
        bfs.push(0);
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop();
            if (dist[v] > n_max - 1) continue;
            t.saturate(v);
            dist.resize(t.vertex_count(), -1);
            for (int u : t.fan(v)) {
                if (dist[u] == -1) {
                    dist[u] = dist[v] + 1;
                    bfs.push(u);
                }
            }
        }
    }

    std::vector<long long> best(n_max + 1, 0);
    std::vector<char> in_s(t.vertex_count(), 0), banned(t.vertex_count(), 0);
    long long cur_e = 0;
    int sz = 0;

    // Depth-first enumeration of connected supersets: candidates are popped
    // one by one; after a candidate's branch is exhausted it is banned for
    // the rest of this level, which makes every subset appear exactly once.
    auto rec = [&](auto&& self, std::vector<int> ext) -> void {
        best[sz] = std::max(best[sz], cur_e);
        if (sz == n_max) return;
        std::vector<int> banned_here;
        while (!ext.empty()) {
            int v = ext.back();
            ext.pop_back();
            int de = 0;
            for (int u : t.fan(v)) de += in_s[u] ? 1 : 0;
            in_s[v] = 1;
            ++sz;
            cur_e += de;
            std::vector<int> child = ext;
            for (int u : t.fan(v)) {
                if (in_s[u] || banned[u] || dist[u] > n_max - 1) continue;
                bool reached_before = false;
                for (int w : t.fan(u)) {
                    if (w != v && in_s[w]) {
                        reached_before = true;
                        break;
                    }
                }
                if (!reached_before) child.push_back(u);
            }
            self(self, std::move(child));
            in_s[v] = 0;
            --sz;
            cur_e -= de;
            banned[v] = 1;
            banned_here.push_back(v);
        }
        for (int v : banned_here) banned[v] = 0;
    };

    in_s[0] = 1;
    sz = 1;
    std::vector<int> ext0;
    for (int u : t.fan(0)) {
        if (dist[u] <= n_max - 1) ext0.push_back(u);
    }
    rec(rec, std::move(ext0));
    return best;
}

}  // namespace hypenny
