#pragma once

#include "curvnet/net.hpp"

namespace curvnet {

// ---------------------------------------------------------------------------
// Triangulated vertex star: the local polyhedral approximation at a vertex.
// Straight edge vectors point away from the center; the fan is ordered
// counterclockwise with respect to the Darboux frame normal, so every
// consecutive pair (e, f) spanning a cell satisfies n . (e x f) > 0.
// ---------------------------------------------------------------------------

struct StarEdge {
    int edge_id = -1;
    Vec3 vec;                       // far endpoint minus center
    int family = 1;
    double intrinsic_length = 0.0;  // l(e) of the curved edge
    bool heuristic = false;
};

struct VertexStar {
    int vertex_id = -1;
    Vec3 center;
    SurfacePointData point;
    bool boundary = false;
    std::vector<StarEdge> edges;      // CCW
    std::vector<char> pair_has_cell;  // fan triangle (i, i+1 mod n)?

    int valence() const { return static_cast<int>(edges.size()); }
    int next(int i) const { return (i + 1) % valence(); }
    int prev(int i) const { return (i + valence() - 1) % valence(); }
    bool has_fan_pair(int i) const { return pair_has_cell[i] != 0; }

    // both fan triangles around edge i exist
    bool edge_interior(int i) const { return has_fan_pair(i) && has_fan_pair(prev(i)); }
};

struct StarMetrics {
    double eps = 0.0;          // max intrinsic edge length
    double rho = 1.0;          // shape regularity
    bool sampling_ok = false;  // eps <= 1/(16 K rho^2)
    bool weak_rho_ok = false;  // eps <= 1/(2 K rho)
    bool weak_ok = false;      // eps <= 1/(2 K)
    double angle_defect = 0.0;
};

struct FramedEdge {
    int edge_id = -1;
    double ex = 0.0, ey = 0.0, en = 0.0;  // Darboux frame components
    double ed = 0.0;                      // tangential deviation
    int family = 1;
};

namespace detail {

inline void validate_star_geometry(const VertexStar& star) {
    const int n = star.valence();
    for (int i = 0; i < n; ++i) {
        if (norm(star.edges[i].vec) < 1e-12)
            throw DegenerateStarError("zero-length edge vector at vertex " +
                                      std::to_string(star.vertex_id));
    }
    for (int i = 0; i < n; ++i) {
        if (!star.has_fan_pair(i)) continue;
        const Vec3& e = star.edges[i].vec;
        const Vec3& f = star.edges[star.next(i)].vec;
        double s = norm(cross(e, f)) / (norm(e) * norm(f));
        if (s < 1e-10)
            throw DegenerateStarError("collinear fan pair at vertex " +
                                      std::to_string(star.vertex_id));
        if (dot(star.point.n, cross(e, f)) <= 0.0)
            throw DegenerateStarError("fan orientation violated at vertex " +
                                      std::to_string(star.vertex_id) +
                                      " (projection folds; sampling condition violated?)");
    }
}

}  // namespace detail

// Star from explicit edge vectors in a given cyclic order (tests, synthetic
// configurations, random hinges). `interior` marks every consecutive pair as
// spanning a cell.
inline VertexStar make_star(const SurfacePointData& point,
                            const std::vector<StarEdge>& edges_ccw, bool interior = true) {
    VertexStar star;
    star.vertex_id = -1;
    star.center = point.position;
    star.point = point;
    star.boundary = !interior;
    star.edges = edges_ccw;
    star.pair_has_cell.assign(star.edges.size(), interior ? 1 : 0);
    if (!interior && star.edges.size() >= 2) {
        // all pairs but the closing one
        star.pair_has_cell.assign(star.edges.size(), 1);
        star.pair_has_cell.back() = 0;
    }
    detail::validate_star_geometry(star);
    return star;
}

inline VertexStar build_star(const CurvatureLineNet& net, int vertex_id) {
    const NetVertex& v = net.vertices[vertex_id];
    const VertexLink& link = net.links[vertex_id];
    if (link.edges_ccw.size() < 2)
        throw DegenerateStarError("vertex " + std::to_string(vertex_id) + " has valence < 2");

    VertexStar star;
    star.vertex_id = vertex_id;
    star.center = v.position;
    star.point = v.point;
    star.boundary = v.boundary;
    for (size_t i = 0; i < link.edges_ccw.size(); ++i) {
        int eid = link.edges_ccw[i];
        const NetEdge& e = net.edges[eid];
        StarEdge se;
        se.edge_id = eid;
        se.vec = net.straight_edge_vector(eid, vertex_id);
        se.family = e.family;
        se.intrinsic_length = e.intrinsic_length;
        se.heuristic = e.heuristic;
        star.edges.push_back(se);
    }
    star.pair_has_cell.assign(link.pair_has_cell.begin(), link.pair_has_cell.end());
    detail::validate_star_geometry(star);
    return star;
}

// Smallest rho >= 1 with eps/rho <= |e| for every edge and |e||f|/|e x f| <= rho
// for every fan pair.
inline double shape_regularity(const VertexStar& star, double eps) {
    double rho = 1.0;
    for (const StarEdge& e : star.edges) rho = std::max(rho, eps / norm(e.vec));
    const int n = star.valence();
    for (int i = 0; i < n; ++i) {
        if (!star.has_fan_pair(i)) continue;
        const Vec3& e = star.edges[i].vec;
        const Vec3& f = star.edges[star.next(i)].vec;
        rho = std::max(rho, norm(e) * norm(f) / norm(cross(e, f)));
    }
    return rho;
}

inline double star_angle_defect(const VertexStar& star) {
    double total = 0.0;
    const int n = star.valence();
    for (int i = 0; i < n; ++i) {
        if (!star.has_fan_pair(i)) continue;
        total += angle_between(star.edges[i].vec, star.edges[star.next(i)].vec);
    }
    return kTwoPi - total;
}

inline StarMetrics star_metrics(const VertexStar& star, const SurfaceBounds& bounds) {
    StarMetrics m;
    for (const StarEdge& e : star.edges) m.eps = std::max(m.eps, e.intrinsic_length);
    m.rho = shape_regularity(star, m.eps);
    double K = bounds.K;
    if (K <= 0.0) {  // flat surface: every sampling condition holds
        m.sampling_ok = m.weak_rho_ok = m.weak_ok = true;
    } else {
        m.sampling_ok = m.eps <= 1.0 / (16.0 * K * m.rho * m.rho);
        m.weak_rho_ok = m.eps <= 1.0 / (2.0 * K * m.rho);
        m.weak_ok = m.eps <= 1.0 / (2.0 * K);
    }
    m.angle_defect = star_angle_defect(star);
    return m;
}

// Exact orthonormal change of basis into the Darboux frame at the center.
inline std::vector<FramedEdge> framed_edges(const VertexStar& star) {
    std::vector<FramedEdge> out;
    out.reserve(star.edges.size());
    for (const StarEdge& e : star.edges) {
        FramedEdge fe;
        fe.edge_id = e.edge_id;
        fe.family = e.family;
        fe.ex = dot(e.vec, star.point.v1);
        fe.ey = dot(e.vec, star.point.v2);
        fe.en = dot(e.vec, star.point.n);
        fe.ed = (e.family == 1) ? std::abs(fe.ey) : std::abs(fe.ex);
        out.push_back(fe);
    }
    return out;
}

// Triangle fan of a star as OBJ, for inspection in a mesh viewer.
inline void write_star_obj(const VertexStar& star, std::ostream& os) {
    os << "# vertex star " << star.vertex_id << ", valence " << star.valence() << "\n";
    auto emit = [&](const Vec3& p) {
        os << "v " << format_double(p.x) << " " << format_double(p.y) << " " << format_double(p.z)
           << "\n";
    };
    emit(star.center);
    for (const StarEdge& e : star.edges) emit(star.center + e.vec);
    for (int i = 0; i < star.valence(); ++i) {
        if (!star.has_fan_pair(i)) continue;
        os << "f 1 " << i + 2 << " " << star.next(i) + 2 << "\n";
    }
}

// ---------------------------------------------------------------------------
// Per-vertex sampling-condition report over a whole net
// ---------------------------------------------------------------------------

struct SamplingFlags {
    int vertex_id = -1;
    double eps = 0.0, rho = 1.0;
    bool strict_ok = false;   // eps <= 1/(16 K rho^2)
    bool weak_rho_ok = false; // eps <= 1/(2 K rho)
    bool weak_ok = false;     // eps <= 1/(2 K)
    bool skipped = false;     // boundary vertex
};

inline std::vector<SamplingFlags> check_sampling(const CurvatureLineNet& net,
                                                 const SurfaceBounds& bounds) {
    std::vector<SamplingFlags> out;
    for (const NetVertex& v : net.vertices) {
        SamplingFlags f;
        f.vertex_id = v.id;
        if (v.boundary) {
            f.skipped = true;
            out.push_back(f);
            continue;
        }
        VertexStar star = build_star(net, v.id);
        StarMetrics m = star_metrics(star, bounds);
        f.eps = m.eps;
        f.rho = m.rho;
        f.strict_ok = m.sampling_ok;
        f.weak_rho_ok = m.weak_rho_ok;
        f.weak_ok = m.weak_ok;
        out.push_back(f);
    }
    return out;
}

}  // namespace curvnet
