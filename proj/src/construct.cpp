#include "hypenny/construct.hpp"

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <unordered_set>
#include <vector>

#include "hypenny/errors.hpp"
#include "hypenny/hyptrig.hpp"

namespace hypenny {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// Extended-precision per-point data attached to every PennyPacking.
//
// Point j is stored in the coordinate frame of reflection round strip[j]; the
// constant isometry `hop` maps frame r+1 coordinates to frame r coordinates.
// Frames exist because the configuration spans a hyperbolic diameter of order
// rounds*d: coordinates of far points in a single frame are ~cosh(diameter),
// and the cancellation in the bilinear form would destroy any fixed-precision
// certification.  Evaluated pairwise in the frame of the lower strip, every
// near pair keeps both operands small and the check stays accurate.

namespace detail {
struct PackingFrames {
    __float128 d = 0;
    int q = 0;
    std::vector<int> strip;
    std::vector<std::array<__float128, 3>> local;
    std::array<__float128, 9> hop{};
    double line_clearance = 0.0;
    double line_separation = 0.0;
};
}  // namespace detail

namespace {

using F = __float128;

constexpr double kDefaultTol = 1e-9;

struct P3 {
    F t = 1, x = 0, y = 0;
};

struct M3 {
    F m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
};

struct G3 {
    F u0 = 0, u1 = 1, u2 = 0;  // unit spacelike normal: u1^2 + u2^2 - u0^2 == 1
};

F mink(const P3& a, const P3& b) { return a.t * b.t - a.x * b.x - a.y * b.y; }

P3 snap(P3 p) {
    p.t = sqrtq(1 + p.x * p.x + p.y * p.y);
    return p;
}

P3 apply(const M3& M, const P3& p) {
    P3 w;
    w.t = M.m[0][0] * p.t + M.m[0][1] * p.x + M.m[0][2] * p.y;
    w.x = M.m[1][0] * p.t + M.m[1][1] * p.x + M.m[1][2] * p.y;
    w.y = M.m[2][0] * p.t + M.m[2][1] * p.x + M.m[2][2] * p.y;
    return snap(w);
}

M3 mul(const M3& A, const M3& B) {
    M3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            F s = 0;
            for (int k = 0; k < 3; ++k) s += A.m[i][k] * B.m[k][j];
            out.m[i][j] = s;
        }
    return out;
}

M3 inverse(const M3& M) {
    // For form-preserving M the inverse is J * M^T * J, J = diag(1,-1,-1).
    M3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            F sign = ((i == 0) == (j == 0)) ? 1 : -1;
            out.m[i][j] = sign * M.m[j][i];
        }
    return out;
}

M3 rotation(F a) {
    F c = cosq(a), s = sinq(a);
    M3 r;
    r.m[1][1] = c;
    r.m[1][2] = -s;
    r.m[2][1] = s;
    r.m[2][2] = c;
    return r;
}

M3 boost_x(F t) {
    F ch = coshq(t), sh = sinhq(t);
    M3 b;
    b.m[0][0] = ch;
    b.m[0][1] = sh;
    b.m[1][0] = sh;
    b.m[1][1] = ch;
    return b;
}

M3 move_origin_to(const P3& p) {
    F phi = atan2q(p.y, p.x);
    F r = acoshq(p.t < 1 ? F(1) : p.t);
    return mul(rotation(phi), mul(boost_x(r), rotation(-phi)));
}

M3 rotation_about(const P3& p, F a) {
    M3 t = move_origin_to(p);
    return mul(t, mul(rotation(a), inverse(t)));
}

G3 line_through(const P3& p, const P3& q) {
    F c0 = p.x * q.y - p.y * q.x;
    F c1 = p.y * q.t - p.t * q.y;
    F c2 = p.t * q.x - p.x * q.t;
    G3 g{c0, -c1, -c2};
    F s = g.u1 * g.u1 + g.u2 * g.u2 - g.u0 * g.u0;
    check_cert(s > 0, "line_through: points do not span a line");
    F inv = 1 / sqrtq(s);
    return {g.u0 * inv, g.u1 * inv, g.u2 * inv};
}

F line_offset(const P3& p, const G3& g) { return p.t * g.u0 - p.x * g.u1 - p.y * g.u2; }

M3 reflection_across(const G3& g) {
    F u[3] = {g.u0, g.u1, g.u2};
    F ju[3] = {g.u0, -g.u1, -g.u2};
    M3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = (i == j ? 1 : 0) + 2 * u[i] * ju[j];
    return r;
}

G3 apply_line(const M3& M, const G3& g) {
    F v[3] = {g.u0, g.u1, g.u2};
    F w[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += M.m[i][j] * v[j];
    F s = w[1] * w[1] + w[2] * w[2] - w[0] * w[0];
    check_cert(s > 0, "apply_line: image normal lost its normalization");
    F inv = 1 / sqrtq(s);
    return {w[0] * inv, w[1] * inv, w[2] * inv};
}

F max_abs_coord(const P3& p) {
    F m = fabsq(p.t);
    if (fabsq(p.x) > m) m = fabsq(p.x);
    if (fabsq(p.y) > m) m = fabsq(p.y);
    return m;
}

F coord_gap(const P3& a, const P3& b) {
    F g = fabsq(a.t - b.t);
    if (fabsq(a.x - b.x) > g) g = fabsq(a.x - b.x);
    if (fabsq(a.y - b.y) > g) g = fabsq(a.y - b.y);
    return g;
}

bool coincide(const P3& a, const P3& b) {
    F scale = 1 + max_abs_coord(a);
    return coord_gap(a, b) < F(1e-22) * scale;
}

HPoint to_hpoint(const P3& p) {
    return {static_cast<double>(p.t), static_cast<double>(p.x), static_cast<double>(p.y)};
}

// ---------------------------------------------------------------------------
// The reflection engine.  Everything about one round is a constant of d:
//
//   tmpl        the standard cap: hubs b = (d/2, angle pi), c = (d/2, angle 0),
//               apex A0 below the axis, arms of q-3 triangles around each hub;
//   fold line   through the two arm tips (the cap's extreme points);
//   H           the isometry identifying the next round's frame: reflecting
//               the cap produces a mirror-congruent cap around the images of
//               A1 and A0, and H maps the standard cap exactly onto it.
//
// Consequently the reflected points have the same local coordinates in their
// own frame every round (new_local), and all safety margins (clearance of
// retained points from the fold line, separation of consecutive fold lines)
// are single template constants.

struct Engine {
    int q = 0;
    F d = 0, alpha = 0, alpha4 = 0;
    std::vector<P3> tmpl;                        // 2q-3 points, slot-indexed
    std::vector<std::pair<int, int>> tmpl_edges; // 4q-9 slot pairs
    std::vector<int> non_tip;                    // slots reflected each round
    int tip_b = 0, tip_c = 0;                    // slots fixed by the fold
    M3 H, Hinv;
    std::vector<P3> new_local;  // slot-indexed own-frame coords of the images
    F line_clearance = 0;
    F line_separation = 0;
};

// Slot layout: 0 = b, 1 = c, 2 = apex A0, 2+j = A_j (j = 1..q-3),
// q-1+j = A_{-j} (j = 1..q-3).
int slot_b(int /*q*/, int j) { return j == 0 ? 2 : 2 + j; }
int slot_c(int q, int j) { return j == 0 ? 2 : q - 1 + j; }

Engine make_engine(double d_in) {
    require(d_in > 0.0, "packing construction: d must be positive");
    Engine e;
    e.d = d_in;
    const F pi_f = M_PIq;
    e.alpha = 2 * asinq(1 / (2 * coshq(e.d / 2)));
    e.alpha4 = 2 * asinq(sqrtq(F(2)) * sinq(e.alpha / 2));
    e.q = 2 + static_cast<int>(floorq((2 * pi_f - e.alpha4) / e.alpha));
    check_cert(e.q == fan_order(d_in),
               "packing construction: extended-precision fan order disagrees with double "
               "evaluation (d is numerically on a critical boundary)");
    check_cert((e.q - 2) * e.alpha > pi_f,
               "packing construction: fan arms do not wrap past the halfway line");

    const int q = e.q;
    e.tip_b = slot_b(q, q - 3);
    e.tip_c = slot_c(q, q - 3);

    // Standard cap.
    e.tmpl.resize(2 * q - 3);
    e.tmpl[0] = snap({0, -sinhq(e.d / 2), 0});
    e.tmpl[1] = snap({0, sinhq(e.d / 2), 0});
    M3 swing_b = rotation_about(e.tmpl[0], -e.alpha);  // clockwise around b
    M3 swing_c = rotation_about(e.tmpl[1], e.alpha);   // anticlockwise around c
    P3 cur = apply(swing_b, e.tmpl[1]);
    e.tmpl[2] = cur;
    for (int j = 1; j <= q - 3; ++j) {
        cur = apply(swing_b, cur);
        e.tmpl[slot_b(q, j)] = cur;
    }
    P3 probe_b = apply(swing_b, cur);
    cur = apply(swing_c, e.tmpl[0]);
    check_cert(coincide(cur, e.tmpl[2]),
               "packing construction: the two fan apexes disagree");
    for (int j = 1; j <= q - 3; ++j) {
        cur = apply(swing_c, cur);
        e.tmpl[slot_c(q, j)] = cur;
    }
    P3 probe_c = apply(swing_c, cur);

    // Cap edges: hub pair, apex spokes, then per-arm spokes and chains.
    e.tmpl_edges.emplace_back(0, 1);
    e.tmpl_edges.emplace_back(0, 2);
    e.tmpl_edges.emplace_back(1, 2);
    for (int j = 1; j <= q - 3; ++j) {
        e.tmpl_edges.emplace_back(0, slot_b(q, j));
        e.tmpl_edges.emplace_back(slot_b(q, j - 1), slot_b(q, j));
        e.tmpl_edges.emplace_back(1, slot_c(q, j));
        e.tmpl_edges.emplace_back(slot_c(q, j - 1), slot_c(q, j));
    }

    // Template self-check: edges have length d, everything else is >= d, and
    // adding one more triangle per arm would overlap (maximality of q).
    {
        std::unordered_set<std::uint64_t> eset;
        const std::uint64_t n_slots = e.tmpl.size();
        for (auto [a, b] : e.tmpl_edges)
            eset.insert(std::min(a, b) * n_slots + std::max(a, b));
        const F cosh_d = coshq(e.d);
        // Coordinates reach ~cosh(2d) and arms chain ~q rotations, so the
        // attainable agreement scales with cosh(2d); 1e-20 leaves ten orders
        // of headroom over the worst accumulated rounding.
        const F tol = F(1e-20) * (1 + coshq(2 * e.d));
        const F cosh_lo = coshq(e.d - F(1e-12));
        for (std::uint64_t a = 0; a < n_slots; ++a)
            for (std::uint64_t b = a + 1; b < n_slots; ++b) {
                F m = mink(e.tmpl[a], e.tmpl[b]);
                if (eset.count(a * n_slots + b))
                    check_cert(fabsq(m - cosh_d) <= tol,
                               "packing construction: a cap edge is not at distance d");
                else
                    check_cert(m >= cosh_lo,
                               "packing construction: two cap points are closer than d");
            }
        check_cert(mink(e.tmpl[e.tip_b], e.tmpl[e.tip_c]) >= cosh_lo,
                   "packing construction: arm tips are closer than d");
        check_cert(mink(probe_b, probe_c) < coshq(e.d + F(1e-9)),
                   "packing construction: fan order is not maximal (probe points clear d)");
    }

    // Fold line and the safety margins of the retained points.
    G3 fold = line_through(e.tmpl[e.tip_b], e.tmpl[e.tip_c]);
    M3 refl = reflection_across(fold);
    F min_clear = -1;
    bool sign_set = false;
    bool neg = false;
    for (int s = 0; s < static_cast<int>(e.tmpl.size()); ++s) {
        if (s == e.tip_b || s == e.tip_c) continue;
        e.non_tip.push_back(s);
        F off = line_offset(e.tmpl[s], fold);
        if (!sign_set) {
            neg = off < 0;
            sign_set = true;
        }
        check_cert((off < 0) == neg,
                   "packing construction: retained cap points straddle the fold line");
        F clear = asinhq(fabsq(off));
        if (min_clear < 0 || clear < min_clear) min_clear = clear;
    }
    check_cert(min_clear >= e.d / 2 - F(1e-9),
               "packing construction: a retained cap point sits closer than d/2 to the fold "
               "line");
    e.line_clearance = min_clear;

    // Frame hop: align the standard hubs with the images of A1 and A0.  The
    // reflection reverses orientation, so exactly one of the direct alignment
    // and its composition with the axis mirror matches the image of b (the
    // next round's apex); certification picks it and rejects ambiguity.
    P3 b_new = apply(refl, e.tmpl[slot_b(q, 1)]);
    P3 c_new = apply(refl, e.tmpl[2]);
    P3 apex_new = apply(refl, e.tmpl[0]);
    M3 t1_inv = inverse(move_origin_to(e.tmpl[0]));
    P3 c_loc = apply(t1_inv, e.tmpl[1]);
    M3 t2 = move_origin_to(b_new);
    P3 c_loc2 = apply(inverse(t2), c_new);
    F turn = atan2q(c_loc2.y, c_loc2.x) - atan2q(c_loc.y, c_loc.x);
    M3 direct = mul(t2, mul(rotation(turn), t1_inv));
    M3 mirror;  // reflection across the x-axis line, fixing both standard hubs
    mirror.m[2][2] = -1;
    M3 flipped = mul(direct, mirror);
    bool direct_ok = coincide(apply(direct, e.tmpl[2]), apex_new);
    bool flipped_ok = coincide(apply(flipped, e.tmpl[2]), apex_new);
    check_cert(direct_ok != flipped_ok,
               "packing construction: frame alignment is ambiguous");
    e.H = direct_ok ? direct : flipped;
    e.Hinv = inverse(e.H);

    // Own-frame coordinates of the reflected points, with the congruence
    // checks that pin the whole self-similar bookkeeping: the images of
    // b, c, A0, A1, A2, A_-1 land exactly on standard cap slots.
    e.new_local.resize(e.tmpl.size());
    M3 to_own = mul(e.Hinv, refl);
    for (int s : e.non_tip) e.new_local[s] = apply(to_own, e.tmpl[s]);
    check_cert(coincide(e.new_local[0], e.tmpl[2]),
               "packing construction: image of b is not the new apex");
    check_cert(coincide(e.new_local[1], e.tmpl[slot_c(q, 1)]),
               "packing construction: image of c is not the new first low-arm point");
    check_cert(coincide(e.new_local[2], e.tmpl[1]),
               "packing construction: image of the apex is not the new c hub");
    check_cert(coincide(e.new_local[slot_b(q, 1)], e.tmpl[0]),
               "packing construction: image of A1 is not the new b hub");
    check_cert(coincide(e.new_local[slot_b(q, 2)], e.tmpl[slot_b(q, 1)]),
               "packing construction: image of A2 is not the new A1");
    check_cert(coincide(e.new_local[slot_c(q, 1)], e.tmpl[slot_c(q, 2)]),
               "packing construction: image of A_-1 is not the new A_-2");

    // Consecutive fold lines must be ultraparallel (they bound disjoint
    // half-planes, which is what keeps distinct rounds from colliding).
    G3 next_fold = apply_line(e.H, fold);
    F inner = fold.u0 * next_fold.u0 - fold.u1 * next_fold.u1 - fold.u2 * next_fold.u2;
    check_cert(fabsq(inner) > 1,
               "packing construction: consecutive fold lines are not ultraparallel");
    e.line_separation = acoshq(fabsq(inner));

    return e;
}

// ---------------------------------------------------------------------------
// Incremental builder over the engine.

class Builder {
public:
    explicit Builder(double d) : eng_(make_engine(d)) {}

    const Engine& engine() const { return eng_; }
    long long size() const { return static_cast<long long>(pts_.size()); }

    // Full standard cap as round 0.
    void base_full() {
        cap_.assign(eng_.tmpl.size(), -1);
        for (int s = 0; s < static_cast<int>(eng_.tmpl.size()); ++s) {
            cap_[s] = add_point(eng_.tmpl[s], 0);
        }
        for (auto [a, b] : eng_.tmpl_edges) add_edge(cap_[a], cap_[b]);
    }

    // First n points of the cap, hubs first, arms alternating; every point
    // after the second contributes exactly two edges.
    void base_partial(long long n) {
        const int q = eng_.q;
        cap_.assign(eng_.tmpl.size(), -1);
        std::vector<int> order = {0, 1, 2};
        for (int j = 1; j <= q - 3; ++j) {
            order.push_back(slot_b(q, j));
            order.push_back(slot_c(q, j));
        }
        for (int s : order) {
            if (size() == n) return;
            cap_[s] = add_point(eng_.tmpl[s], capframe_);
            if (s == 1) add_edge(cap_[0], cap_[1]);
            if (s == 2) {
                add_edge(cap_[0], cap_[2]);
                add_edge(cap_[1], cap_[2]);
            }
            if (s > 2) {
                bool low = s >= q;  // arm around c
                int j = low ? s - q + 1 : s - 2;
                add_edge(cap_[low ? 1 : 0], cap_[s]);
                add_edge(cap_[low ? slot_c(q, j - 1) : slot_b(q, j - 1)], cap_[s]);
            }
        }
    }

    // Fills up to `want` empty arm slots of the current cap (spoke + chain
    // edges each); returns how many were filled.
    long long build_up(long long want) {
        const int q = eng_.q;
        long long filled = 0;
        std::vector<int> order;
        for (int j = 2; j <= q - 3; ++j) order.push_back(slot_b(q, j));
        for (int j = 3; j <= q - 3; ++j) order.push_back(slot_c(q, j));
        for (int s : order) {
            if (filled == want) break;
            if (cap_[s] >= 0) continue;
            check_cert(cap_[s - 1] >= 0, "fan completion: chain predecessor missing");
            cap_[s] = add_point(eng_.tmpl[s], capframe_);
            add_edge(cap_[s < q ? 0 : 1], cap_[s]);
            add_edge(cap_[s - 1], cap_[s]);
            ++filled;
        }
        return filled;
    }

    // One reflection round: images of all non-tip cap points (4q-9 edge
    // images), then the congruent relabeling that makes the image the next
    // round's partially-built cap.
    void reflect() {
        const int q = eng_.q;
        for (int g : cap_) check_cert(g >= 0, "reflection: cap is not complete");
        std::vector<int> image(eng_.tmpl.size(), -1);
        image[eng_.tip_b] = cap_[eng_.tip_b];
        image[eng_.tip_c] = cap_[eng_.tip_c];
        for (int s : eng_.non_tip) image[s] = add_point(eng_.new_local[s], capframe_ + 1);
        for (auto [a, b] : eng_.tmpl_edges) add_edge(image[a], image[b]);
        std::vector<int> next(eng_.tmpl.size(), -1);
        next[0] = image[slot_b(q, 1)];
        next[1] = image[2];
        next[2] = image[0];
        next[slot_b(q, 1)] = image[slot_b(q, 2)];
        next[slot_c(q, 1)] = image[1];
        next[slot_c(q, 2)] = image[slot_c(q, 1)];
        cap_ = std::move(next);
        ++capframe_;
    }

    // Degree-2 pads: an apex swung off an existing edge, accepted only if it
    // clears every non-parent point by a strict margin (so no accidental
    // touching pair appears).  Edges are tried oldest first so the pads hug
    // the existing configuration instead of chaining off one another; a long
    // runaway chain would drift far from every frame origin and its pair
    // distances would no longer be certifiable at full precision.  An edge
    // whose four candidates are all blocked stays blocked (points are only
    // ever added), so it is skipped for good.
    void pad(long long count) {
        std::vector<P3> in_final(pts_.size());
        for (size_t j = 0; j < pts_.size(); ++j) in_final[j] = to_final_frame(j);
        const F near_hi = coshq(eng_.d + F(1e-6));
        std::vector<char> dead(edges_.size(), 0);
        for (long long made = 0; made < count; ++made) {
            bool placed = false;
            for (size_t eidx = 0; eidx < edges_.size() && !placed; ++eidx) {
                if (dead[eidx]) continue;
                auto [ua, ub] = edges_[eidx];
                for (int variant = 0; variant < 4 && !placed; ++variant) {
                    int anchor = (variant < 2) ? ua : ub;
                    int other = (variant < 2) ? ub : ua;
                    F ang = (variant % 2 == 0) ? eng_.alpha : -eng_.alpha;
                    P3 cand =
                        apply(rotation_about(in_final[anchor], ang), in_final[other]);
                    bool ok = true;
                    for (size_t j = 0; j < in_final.size() && ok; ++j) {
                        if (static_cast<int>(j) == ua || static_cast<int>(j) == ub)
                            continue;
                        if (mink(cand, in_final[j]) < near_hi) ok = false;
                    }
                    if (!ok) continue;
                    int g = add_point(cand, capframe_);
                    add_edge(ua, g);
                    add_edge(ub, g);
                    in_final.push_back(cand);
                    placed = true;
                }
                if (!placed) dead[eidx] = 1;
            }
            check_cert(placed, "padding: no admissible degree-2 attachment found");
            dead.resize(edges_.size(), 0);
        }
    }

    PennyPacking finish(double d_in, int rounds) const {
        PennyPacking p;
        p.d = d_in;
        p.q = eng_.q;
        p.rounds = rounds;
        p.edges = edges_;
        p.centers.reserve(pts_.size());
        int max_strip = 0;
        for (int s : strips_) max_strip = std::max(max_strip, s);
        std::vector<M3> to_base(static_cast<size_t>(max_strip) + 1);
        for (int s = 1; s <= max_strip; ++s)
            to_base[static_cast<size_t>(s)] = mul(to_base[static_cast<size_t>(s) - 1], eng_.H);
        for (size_t j = 0; j < pts_.size(); ++j)
            p.centers.push_back(
                to_hpoint(apply(to_base[static_cast<size_t>(strips_[j])], pts_[j])));
        auto fr = std::make_shared<detail::PackingFrames>();
        fr->d = eng_.d;
        fr->q = eng_.q;
        fr->strip = strips_;
        fr->local.reserve(pts_.size());
        for (const P3& pt : pts_) fr->local.push_back({pt.t, pt.x, pt.y});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                fr->hop[static_cast<size_t>(3 * i + j)] = eng_.H.m[i][j];
        fr->line_clearance = static_cast<double>(eng_.line_clearance);
        fr->line_separation = static_cast<double>(eng_.line_separation);
        p.frames = std::move(fr);
        return p;
    }

private:
    int add_point(const P3& p, int strip) {
        pts_.push_back(p);
        strips_.push_back(strip);
        return static_cast<int>(pts_.size()) - 1;
    }

    void add_edge(int a, int b) {
        check_cert(a >= 0 && b >= 0 && a != b, "builder: malformed edge");
        edges_.emplace_back(std::min(a, b), std::max(a, b));
    }

    P3 to_final_frame(size_t j) const {
        P3 w = pts_[j];
        for (int s = strips_[j]; s < capframe_; ++s) w = apply(eng_.Hinv, w);
        return w;
    }

    Engine eng_;
    std::vector<P3> pts_;
    std::vector<int> strips_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> cap_;
    int capframe_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Fan diagnostics (double precision; the cap sits within ~1.5 d of the origin).

// Sign of the volume form on three hyperboloid points: positive when the walk
// a -> b -> c turns anticlockwise (seen in the projective disk).
static double turn3(const HPoint& a, const HPoint& b, const HPoint& c) {
    return a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - a.x1 * (b.x0 * c.x2 - b.x2 * c.x0) +
           a.x2 * (b.x0 * c.x1 - b.x1 * c.x0);
}

FanConfig build_fan(double d) {
    require(d > 0.0, "build_fan: d must be positive");
    FanConfig f;
    f.d = d;
    f.q = fan_order(d);
    AngleSet a = angles_of_d(d);
    f.alpha = a.alpha;
    f.alpha4 = a.alpha4;
    const int q = f.q;
    check_cert((q - 2) * f.alpha > pi, "build_fan: arms do not wrap past the halfway line");

    f.b = point_from_polar(d / 2, pi);
    f.c = point_from_polar(d / 2, 0.0);
    Isometry swing_b = Isometry::rotation_about(f.b, -f.alpha);
    Isometry swing_c = Isometry::rotation_about(f.c, f.alpha);
    f.arm_b.push_back(swing_b(f.c));
    f.arm_c.push_back(swing_c(f.b));
    // Coordinate comparison: the distance between near-coincident points is
    // too ill-conditioned (acosh near 1) to test coincidence with.
    auto coords_agree = [&](const HPoint& u, const HPoint& v) {
        double gap = std::max({std::abs(u.x0 - v.x0), std::abs(u.x1 - v.x1),
                               std::abs(u.x2 - v.x2)});
        return gap < 1e-12 * (1.0 + std::cosh(1.5 * d));
    };
    check_cert(coords_agree(f.arm_b[0], f.arm_c[0]), "build_fan: the two apexes disagree");
    for (int j = 1; j <= q - 3; ++j) {
        f.arm_b.push_back(swing_b(f.arm_b.back()));
        f.arm_c.push_back(swing_c(f.arm_c.back()));
    }
    f.probe_b = swing_b(f.arm_b.back());
    f.probe_c = swing_c(f.arm_c.back());

    const double slack = 1e-9;
    for (int j = 0; j <= q - 3; ++j) {
        const HPoint& prev_b = (j == 0) ? f.c : f.arm_b[static_cast<size_t>(j) - 1];
        const HPoint& prev_c = (j == 0) ? f.b : f.arm_c[static_cast<size_t>(j) - 1];
        check_cert(std::abs(hdist(f.b, f.arm_b[static_cast<size_t>(j)]) - d) < slack &&
                       std::abs(hdist(prev_b, f.arm_b[static_cast<size_t>(j)]) - d) < slack &&
                       std::abs(hdist(f.c, f.arm_c[static_cast<size_t>(j)]) - d) < slack &&
                       std::abs(hdist(prev_c, f.arm_c[static_cast<size_t>(j)]) - d) < slack,
                   "build_fan: a fan triangle side is off d");
    }
    check_cert(hdist(f.arm_b.back(), f.arm_c.back()) >= d - slack,
               "build_fan: arm tips are closer than d");
    check_cert(hdist(f.probe_b, f.probe_c) < d + slack,
               "build_fan: fan order is not maximal (probe tips clear d)");

    // The tip angle and its one-further variant, with the four inequalities
    // that make the reflection construction safe.
    f.tip_angle = angle_at(f.arm_c.back(), f.arm_b.back(), f.c);
    double tip_angle_b = angle_at(f.arm_b.back(), f.arm_c.back(), f.b);
    check_cert(std::abs(f.tip_angle - tip_angle_b) < 1e-8,
               "build_fan: tip angles disagree between the two arms");

    // Probe hinge angle.  The two probes sweep toward each other from opposite
    // sides of the symmetry axis; once they pass each other the hinge opens on
    // the far side and the consistent measurement is the reflex complement of
    // the principal angle.  At the one side length per fan order where they
    // land on the same point the direction is undefined, so the angle is
    // reported as NaN (both one-sided limits exceed the square angle there).
    if (hdist(f.probe_b, f.probe_c) < 1e-6 * (1.0 + d)) {
        f.probe_tip_angle = std::numeric_limits<double>::quiet_NaN();
    } else {
        double raw = angle_at(f.probe_c, f.probe_b, f.c);
        bool crossed = (turn3(f.arm_c.back(), f.arm_b.back(), f.c) > 0.0) !=
                       (turn3(f.probe_c, f.probe_b, f.c) > 0.0);
        f.probe_tip_angle = crossed ? 2.0 * pi - raw : raw;
    }

    check_cert(f.tip_angle <= f.alpha4 + slack,
               "build_fan: tip angle exceeds the square angle");
    check_cert(f.alpha4 <= 2.0 * pi - (q - 2) * f.alpha + slack,
               "build_fan: square angle exceeds the leftover fan gap");
    check_cert(std::isnan(f.probe_tip_angle) || f.probe_tip_angle > f.alpha4 - slack,
               "build_fan: probe tip angle does not exceed the square angle");
    check_cert(f.alpha4 > 2.0 * pi - (q - 1) * f.alpha - slack,
               "build_fan: square angle fits one triangle further out");
    check_cert(2.0 * f.tip_angle >= f.alpha - slack,
               "build_fan: doubled tip angle is below the triangle angle");
    check_cert(pi - (f.alpha + f.tip_angle) >= f.alpha / 2 - slack,
               "build_fan: tip supplement is below half the triangle angle");
    return f;
}

FanConfig place_square(FanConfig f) {
    require(f.q >= 6 && !f.arm_b.empty(), "place_square: fan not built");
    const double d = f.d;
    require(hdist(f.arm_b.back(), f.arm_c.back()) >= d - 1e-9,
            "place_square: arm tips closer than d");
    require(hdist(f.probe_b, f.probe_c) < d, "place_square: probe tips are not inside d");

    f.square_a = Isometry::rotation_about(f.b, f.alpha4)(f.c);
    f.square_d = Isometry::rotation_about(f.c, -f.alpha4)(f.b);
    const double slack = 1e-9;
    check_cert(std::abs(hdist(f.square_a, f.square_d) - d) < slack,
               "place_square: far side of the square is off d");
    check_cert(std::abs(angle_at(f.square_a, f.square_d, f.b) - f.alpha4) < slack &&
                   std::abs(angle_at(f.square_d, f.square_a, f.c) - f.alpha4) < slack,
               "place_square: free corner angle is off the square angle");

    // Containment: each free corner splits the angular gap between its hub's
    // arm tip and probe, so the two sub-angles must add up to one triangle
    // angle (and each must be nonnegative).
    auto inside = [&](const HPoint& hub, const HPoint& corner, const HPoint& tip,
                      const HPoint& probe) {
        double a1 = angle_at(hub, corner, tip);
        double a2 = angle_at(hub, corner, probe);
        double whole = angle_at(hub, tip, probe);
        return a1 <= whole + slack && a2 <= whole + slack &&
               std::abs(a1 + a2 - whole) < 1e-8;
    };
    check_cert(inside(f.b, f.square_a, f.arm_b.back(), f.probe_b),
               "place_square: corner A leaves its angular gap");
    check_cert(inside(f.c, f.square_d, f.arm_c.back(), f.probe_c),
               "place_square: corner D leaves its angular gap");
    f.has_square = true;
    return f;
}

// ---------------------------------------------------------------------------
// Packings.

ConstructionResult iterate(double d, int i) {
    require(d > 0.0, "iterate: d must be positive");
    require(i >= 1 && i <= 12, "iterate: iteration count must lie in [1, 12]");
    Builder b(d);
    b.base_full();
    for (int r = 1; r <= i; ++r) {
        if (r >= 2) b.build_up(std::numeric_limits<long long>::max());
        b.reflect();
    }
    ConstructionResult res;
    res.iterations = i;
    res.graph = b.finish(d, i);
    res.n = static_cast<long long>(res.graph.centers.size());
    res.e = static_cast<long long>(res.graph.edges.size());
    const long long q = res.graph.q;
    check_cert(res.n == 6 + (4 * q - 14) * i && res.e == 9 + (8 * q - 27) * i,
               "iterate: point/edge counts deviate from the closed forms");
    res.ratio = static_cast<double>(res.e) / static_cast<double>(res.n);
    res.cert = certify_packing(res.graph);
    return res;
}

PennyPacking build_packing_n(double d, long long n) {
    require(d > 0.0, "build_packing_n: d must be positive");
    require(n >= 1, "build_packing_n: need at least one point");
    const int q = fan_order(d);
    const long long cap_n = 2 * q - 3;
    const long long period = 4 * q - 14;
    const long long rounds = (n >= 4 * q - 8) ? (n - 6) / period : 0;
    require(rounds <= 12, "build_packing_n: n exceeds the 12-round cap");

    Builder b(d);
    if (n < cap_n) {
        b.base_partial(n);
        return b.finish(d, 0);
    }
    b.base_full();
    for (int r = 1; r <= rounds; ++r) {
        if (r >= 2) b.build_up(std::numeric_limits<long long>::max());
        b.reflect();
    }
    long long t = n - b.size();
    check_cert(t >= 0, "build_packing_n: round bookkeeping overshot n");
    t -= b.build_up(t);
    if (t > 0) b.pad(t);
    check_cert(b.size() == n, "build_packing_n: final point count mismatch");
    return b.finish(d, static_cast<int>(rounds));
}

long long packing_edge_target(double d, long long n) {
    require(d > 0.0, "packing_edge_target: d must be positive");
    require(n >= 1, "packing_edge_target: need at least one point");
    if (n <= 2) return n - 1;
    const int q = fan_order(d);
    const long long period = 4 * q - 14;
    const long long rounds = (n >= 4 * q - 8) ? (n - 6) / period : 0;
    return 2 * n - 3 + rounds;
}

PackingCertificate certify_packing(const PennyPacking& p, double tol) {
    require(p.frames != nullptr, "certify_packing: packing carries no frame data");
    if (tol < 0.0) tol = kDefaultTol * std::max(1.0, p.d);
    require(tol > 0.0, "certify_packing: tolerance must be positive");
    const detail::PackingFrames& fr = *p.frames;
    const size_t n = fr.local.size();
    check_cert(p.centers.size() == n && fr.strip.size() == n,
               "certify_packing: inconsistent point arrays");

    PackingCertificate out;
    out.points = static_cast<long long>(n);
    out.edges = static_cast<long long>(p.edges.size());
    out.line_clearance = fr.line_clearance;
    out.line_separation = fr.line_separation;
    out.min_pair_slack = 0.25;

    std::unordered_set<std::uint64_t> eset;
    for (auto [a, b] : p.edges) {
        check_cert(a >= 0 && b >= 0 && a != b && static_cast<size_t>(a) < n &&
                       static_cast<size_t>(b) < n,
                   "certify_packing: edge index out of range");
        std::uint64_t key = static_cast<std::uint64_t>(std::min(a, b)) * n +
                            static_cast<std::uint64_t>(std::max(a, b));
        check_cert(eset.insert(key).second, "certify_packing: duplicate edge");
    }

    M3 hop;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) hop.m[i][j] = fr.hop[static_cast<size_t>(3 * i + j)];
    auto point_of = [&](size_t j) {
        return P3{fr.local[j][0], fr.local[j][1], fr.local[j][2]};
    };

    const F d = fr.d;
    const F near_cut = coshq(d + F(0.25));
    double max_resid = 0.0;
    double min_slack = 0.25;

    std::vector<P3> down;  // coords of point j in frames strip[j], ..., 0
    for (size_t j = 1; j < n; ++j) {
        down.assign(static_cast<size_t>(fr.strip[j]) + 1, P3{});
        down[static_cast<size_t>(fr.strip[j])] = point_of(j);
        for (int s = fr.strip[j] - 1; s >= 0; --s)
            down[static_cast<size_t>(s)] = apply(hop, down[static_cast<size_t>(s) + 1]);
        for (size_t i = 0; i < j; ++i) {
            check_cert(fr.strip[i] <= fr.strip[j],
                       "certify_packing: strips are not creation-ordered");
            F m = mink(point_of(i), down[static_cast<size_t>(fr.strip[i])]);
            bool is_edge =
                eset.count(static_cast<std::uint64_t>(i) * n + static_cast<std::uint64_t>(j)) >
                0;
            if (m < near_cut) {
                F dist = acoshq(m < 1 ? F(1) : m);
                if (is_edge) {
                    double resid = static_cast<double>(fabsq(dist - d));
                    check_cert(resid <= tol, "certify_packing: an edge is off distance d");
                    max_resid = std::max(max_resid, resid);
                } else {
                    double slack = static_cast<double>(dist - d);
                    check_cert(slack >= -tol,
                               "certify_packing: a non-edge pair is closer than d");
                    min_slack = std::min(min_slack, slack);
                }
            } else {
                check_cert(!is_edge, "certify_packing: an edge is far off distance d");
            }
            ++out.pair_checks;
        }
    }
    out.max_edge_residual = max_resid;
    out.min_pair_slack = min_slack;
    return out;
}

// ---------------------------------------------------------------------------
// Horocycle packings (long double internally; Euclidean circle geometry).

namespace {

constexpr long double kTau = 6.283185307179586476925286766559L;

struct HGap {
    int left = 0, right = 0;          // circle indices bracketing the gap
    long double th_lo = 0, span = 0;  // boundary arc (CCW from th_lo, length span)
    long double r = 0;                // radius of the unique inscribed horocycle
    long double th = 0;               // its boundary tangency angle
    long long seq = 0;                // creation order, breaks radius ties
};

struct GapSmaller {
    bool operator()(const HGap& a, const HGap& b) const {
        if (a.r != b.r) return a.r < b.r;
        return a.seq > b.seq;
    }
};

long double arc_offset(long double th, long double lo) {
    long double a = std::fmod(th - lo, kTau);
    if (a < 0) a += kTau;
    return a;
}

HGap make_gap(int left, int right, long double th_lo, long double span, long long seq,
              const std::vector<std::complex<long double>>& centers,
              const std::vector<long double>& radii) {
    HGap g;
    g.left = left;
    g.right = right;
    g.th_lo = th_lo;
    g.span = span;
    g.seq = seq;
    const long double k1 = 1.0L / radii[static_cast<size_t>(left)];
    const long double k2 = 1.0L / radii[static_cast<size_t>(right)];
    long double rad = k1 * k2 - k1 - k2;  // (k1-1)(k2-1) - 1 >= 0 for horocycles
    if (rad < 0) rad = 0;
    const long double k_new = k1 + k2 - 1.0L + 2.0L * std::sqrt(rad);
    const std::complex<long double> z1 = centers[static_cast<size_t>(left)];
    const std::complex<long double> z2 = centers[static_cast<size_t>(right)];
    const std::complex<long double> s = std::sqrt(k1 * k2 * z1 * z2);
    int hits = 0;
    for (int sign = -1; sign <= 1; sign += 2) {
        std::complex<long double> z = (k1 * z1 + k2 * z2 + 2.0L * sign * s) / k_new;
        long double a = arc_offset(std::arg(z), th_lo);
        if (a > 0 && a < span) {
            g.r = 1.0L / k_new;
            g.th = std::arg(z);
            ++hits;
        }
    }
    check_cert(hits == 1, "horocycle_pack: gap candidate selection is ambiguous");
    return g;
}

}  // namespace

HorocyclePacking horocycle_pack(int n) {
    require(n >= 2, "horocycle_pack: need at least two circles");
    std::vector<std::complex<long double>> centers;
    std::vector<long double> radii;
    std::vector<long double> angles;
    HorocyclePacking out;

    centers.emplace_back(0.0L, 0.5L);
    centers.emplace_back(0.0L, -0.5L);
    radii = {0.5L, 0.5L};
    angles = {kTau / 4, 3 * kTau / 4};
    out.tangencies.emplace_back(0, 1);

    std::priority_queue<HGap, std::vector<HGap>, GapSmaller> gaps;
    long long seq = 0;
    gaps.push(make_gap(0, 1, angles[0], kTau / 2, seq++, centers, radii));
    gaps.push(make_gap(1, 0, angles[1], kTau / 2, seq++, centers, radii));

    while (static_cast<int>(centers.size()) < n) {
        HGap g = gaps.top();
        gaps.pop();
        const int idx = static_cast<int>(centers.size());
        const long double r = g.r;
        centers.emplace_back((1.0L - r) * std::cos(g.th), (1.0L - r) * std::sin(g.th));
        radii.push_back(r);
        angles.push_back(g.th);
        out.tangencies.emplace_back(std::min(g.left, idx), std::max(g.left, idx));
        out.tangencies.emplace_back(std::min(g.right, idx), std::max(g.right, idx));
        const long double cut = arc_offset(g.th, g.th_lo);
        gaps.push(make_gap(g.left, idx, g.th_lo, cut, seq++, centers, radii));
        gaps.push(make_gap(idx, g.right, g.th, g.span - cut, seq++, centers, radii));
    }

    out.circles.reserve(centers.size());
    for (size_t j = 0; j < centers.size(); ++j)
        out.circles.push_back({static_cast<double>(centers[j].real()),
                               static_cast<double>(centers[j].imag()),
                               static_cast<double>(radii[j])});
    return out;
}

void certify_horocycles(const HorocyclePacking& h, double tol) {
    require(tol > 0.0, "certify_horocycles: tolerance must be positive");
    const size_t n = h.circles.size();
    std::unordered_set<std::uint64_t> tset;
    for (auto [a, b] : h.tangencies) {
        check_cert(a >= 0 && b >= 0 && a != b && static_cast<size_t>(a) < n &&
                       static_cast<size_t>(b) < n,
                   "certify_horocycles: tangency index out of range");
        std::uint64_t key = static_cast<std::uint64_t>(std::min(a, b)) * n +
                            static_cast<std::uint64_t>(std::max(a, b));
        check_cert(tset.insert(key).second, "certify_horocycles: duplicate tangency");
    }
    for (size_t i = 0; i < n; ++i) {
        const Horocycle& ci = h.circles[i];
        check_cert(ci.r > 0.0, "certify_horocycles: nonpositive radius");
        double rho = std::hypot(ci.cx, ci.cy);
        check_cert(std::abs(rho + ci.r - 1.0) <= tol,
                   "certify_horocycles: circle is not tangent to the unit circle");
        for (size_t j = i + 1; j < n; ++j) {
            const Horocycle& cj = h.circles[j];
            double dist = std::hypot(ci.cx - cj.cx, ci.cy - cj.cy);
            double sum = ci.r + cj.r;
            if (tset.count(static_cast<std::uint64_t>(i) * n + j))
                check_cert(std::abs(dist - sum) <= tol,
                           "certify_horocycles: declared tangency is off");
            else
                check_cert(dist >= sum - tol, "certify_horocycles: two circles overlap");
        }
    }
}

}  // namespace hypenny
