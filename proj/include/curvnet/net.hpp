#pragma once

#include <map>
#include <ostream>
#include <set>

#include "curvnet/surface.hpp"

namespace curvnet {

// ---------------------------------------------------------------------------
// Discrete net of curvature lines: vertices, curved edges (dense parameter
// polylines plus intrinsic lengths), 2-cells and per-vertex cyclic adjacency.
// ---------------------------------------------------------------------------

struct NetVertex {
    int id = -1;
    Vec2 uv;
    Vec3 position;
    SurfacePointData point;
    bool boundary = false;
};

struct NetEdge {
    int id = -1;
    int v0 = -1, v1 = -1;
    int family = 1;                 // 1 or 2
    std::vector<Vec2> samples;      // parameter-domain polyline, v0 -> v1
    double intrinsic_length = 0.0;  // l(e)
    bool separatrix = false;        // umbilic nets: edge traced from a separatrix
    bool heuristic = false;         // umbilic nets: filler ray / ring arc, not a traced line
};

struct NetCell {
    std::vector<int> vertices;  // cyclic
    std::vector<int> edges;     // cyclic, edges[i] joins vertices[i], vertices[i+1]
};

// Outgoing edges at a vertex in counterclockwise order w.r.t. the surface
// normal; pair_has_cell[i] tells whether (edges_ccw[i], edges_ccw[i+1 mod n])
// bound a common 2-cell.
struct VertexLink {
    std::vector<int> edges_ccw;
    std::vector<char> pair_has_cell;
};

struct CurvatureLineNet {
    SurfaceChart chart;
    std::vector<NetVertex> vertices;
    std::vector<NetEdge> edges;
    std::vector<NetCell> cells;
    std::vector<VertexLink> links;

    int other_end(int edge_id, int vid) const {
        const NetEdge& e = edges[edge_id];
        return e.v0 == vid ? e.v1 : e.v0;
    }

    // Unit tangent of the curved edge at the given endpoint, pointing away
    // from that endpoint.
    Vec3 edge_direction_at(int edge_id, int vid) const {
        const NetEdge& e = edges[edge_id];
        Vec2 a, b;
        if (e.v0 == vid) {
            a = e.samples.front();
            b = e.samples[1];
        } else {
            a = e.samples.back();
            b = e.samples[e.samples.size() - 2];
        }
        return normalized(chart.position(b) - chart.position(a));
    }

    Vec3 straight_edge_vector(int edge_id, int vid) const {
        int other = other_end(edge_id, vid);
        return vertices[other].position - vertices[vid].position;
    }
};

// ---------------------------------------------------------------------------
// Assembly helpers shared by the generators
// ---------------------------------------------------------------------------

inline double polyline_intrinsic_length(const SurfaceChart& chart, const std::vector<Vec2>& samples) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        Vec2 a = samples[i], b = samples[i + 1];
        Vec2 d = b - a;
        auto speed = [&](double t) {
            Jet3 j = chart.jet(a.u + t * d.u, a.v + t * d.v);
            return norm(j.xu * d.u + j.xv * d.v);
        };
        total += adaptive_simpson(speed, 0.0, 1.0, 1e-14);
    }
    return total;
}

// Builds the per-vertex counterclockwise adjacency and marks which consecutive
// edge pairs bound a cell. Must run after vertices/edges/cells are final.
inline void build_links(CurvatureLineNet& net) {
    net.links.assign(net.vertices.size(), {});
    std::vector<std::vector<int>> incident(net.vertices.size());
    for (const NetEdge& e : net.edges) {
        incident[e.v0].push_back(e.id);
        incident[e.v1].push_back(e.id);
    }
    for (const NetVertex& v : net.vertices) {
        auto& edges = incident[v.id];
        std::vector<std::pair<double, int>> by_angle;
        for (int eid : edges) {
            Vec3 dir = net.edge_direction_at(eid, v.id);
            double ang = std::atan2(dot(dir, v.point.v2), dot(dir, v.point.v1));
            by_angle.push_back({ang, eid});
        }
        std::sort(by_angle.begin(), by_angle.end());
        VertexLink link;
        for (auto& [ang, eid] : by_angle) link.edges_ccw.push_back(eid);
        net.links[v.id] = std::move(link);
    }
    // cell incidence for consecutive pairs
    std::set<std::tuple<int, int, int>> pair_cells;  // (vertex, min edge, max edge)
    for (const NetCell& c : net.cells) {
        size_t n = c.vertices.size();
        for (size_t i = 0; i < n; ++i) {
            int vid = c.vertices[i];
            int e_in = c.edges[(i + n - 1) % n];
            int e_out = c.edges[i];
            pair_cells.insert({vid, std::min(e_in, e_out), std::max(e_in, e_out)});
        }
    }
    for (const NetVertex& v : net.vertices) {
        VertexLink& link = net.links[v.id];
        size_t n = link.edges_ccw.size();
        link.pair_has_cell.assign(n, 0);
        for (size_t i = 0; i < n; ++i) {
            int e0 = link.edges_ccw[i];
            int e1 = link.edges_ccw[(i + 1) % n];
            if (n == 1) break;
            if (pair_cells.count({v.id, std::min(e0, e1), std::max(e0, e1)}))
                link.pair_has_cell[i] = 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Structural invariants
// ---------------------------------------------------------------------------

struct NetViolation {
    std::string what;
};

inline std::vector<NetViolation> check_net_invariants(const CurvatureLineNet& net) {
    std::vector<NetViolation> out;
    auto fail = [&](const std::string& s) { out.push_back({s}); };

    for (const NetEdge& e : net.edges) {
        if (e.samples.size() < 2) {
            fail("edge " + std::to_string(e.id) + ": fewer than two samples");
            continue;
        }
        Vec3 p0 = net.chart.position(e.samples.front());
        Vec3 p1 = net.chart.position(e.samples.back());
        if (distance(p0, net.vertices[e.v0].position) > 1e-10)
            fail("edge " + std::to_string(e.id) + ": start does not coincide with v0");
        if (distance(p1, net.vertices[e.v1].position) > 1e-10)
            fail("edge " + std::to_string(e.id) + ": end does not coincide with v1");
    }

    for (const NetVertex& v : net.vertices) {
        const VertexLink& link = net.links[v.id];
        size_t valence = link.edges_ccw.size();
        if (v.boundary) continue;
        if (v.point.umbilic) {
            if (valence <= 2)
                fail("umbilic vertex " + std::to_string(v.id) + ": valence " +
                     std::to_string(valence) + " <= 2");
            continue;
        }
        if (valence != 4) {
            fail("interior vertex " + std::to_string(v.id) + ": valence " +
                 std::to_string(valence) + " != 4");
            continue;
        }
        for (size_t i = 0; i < valence; ++i) {
            int f0 = net.edges[link.edges_ccw[i]].family;
            int f1 = net.edges[link.edges_ccw[(i + 1) % valence]].family;
            if (f0 == f1) {
                fail("vertex " + std::to_string(v.id) + ": families do not alternate");
                break;
            }
        }
    }

    // Two cells may share nothing, one vertex, or one full edge.
    std::map<int, std::vector<int>> vertex_cells;
    for (size_t ci = 0; ci < net.cells.size(); ++ci)
        for (int vid : net.cells[ci].vertices) vertex_cells[vid].push_back(static_cast<int>(ci));
    std::set<std::pair<int, int>> candidate_pairs;
    for (auto& [vid, cs] : vertex_cells)
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t k = i + 1; k < cs.size(); ++k)
                candidate_pairs.insert({std::min(cs[i], cs[k]), std::max(cs[i], cs[k])});
    for (auto& [i, k] : candidate_pairs) {
        std::set<int> vi(net.cells[i].vertices.begin(), net.cells[i].vertices.end());
        std::vector<int> shared;
        for (int vid : net.cells[k].vertices)
            if (vi.count(vid)) shared.push_back(vid);
        if (shared.size() <= 1) continue;
        if (shared.size() > 2) {
            fail("cells " + std::to_string(i) + ", " + std::to_string(k) +
                 " share more than an edge");
            continue;
        }
        std::set<int> ei(net.cells[i].edges.begin(), net.cells[i].edges.end());
        bool common_edge = false;
        for (int eid : net.cells[k].edges)
            if (ei.count(eid)) common_edge = true;
        if (!common_edge)
            fail("cells " + std::to_string(i) + ", " + std::to_string(k) +
                 " share two vertices but no edge");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

// Plain-text sections: VERTICES (id u v x y z), EDGES (id v0 v1 family length
// nsamples u0 v0 u1 v1 ...), CELLS (vertex ids).
inline void write_net_text(const CurvatureLineNet& net, std::ostream& os) {
    os << "VERTICES " << net.vertices.size() << "\n";
    for (const NetVertex& v : net.vertices) {
        os << v.id << " " << format_double(v.uv.u) << " " << format_double(v.uv.v) << " "
           << format_double(v.position.x) << " " << format_double(v.position.y) << " "
           << format_double(v.position.z) << "\n";
    }
    os << "EDGES " << net.edges.size() << "\n";
    for (const NetEdge& e : net.edges) {
        os << e.id << " " << e.v0 << " " << e.v1 << " " << e.family << " "
           << format_double(e.intrinsic_length) << " " << e.samples.size();
        for (const Vec2& s : e.samples)
            os << " " << format_double(s.u) << " " << format_double(s.v);
        os << "\n";
    }
    os << "CELLS " << net.cells.size() << "\n";
    for (const NetCell& c : net.cells) {
        for (size_t i = 0; i < c.vertices.size(); ++i)
            os << (i ? " " : "") << c.vertices[i];
        os << "\n";
    }
}

// OBJ with the straight-edge net: vertex positions and line elements.
inline void write_net_obj(const CurvatureLineNet& net, std::ostream& os) {
    os << "# curvature-line net: " << net.vertices.size() << " vertices, " << net.edges.size()
       << " edges\n";
    for (const NetVertex& v : net.vertices)
        os << "v " << format_double(v.position.x) << " " << format_double(v.position.y) << " "
           << format_double(v.position.z) << "\n";
    for (const NetEdge& e : net.edges) os << "l " << e.v0 + 1 << " " << e.v1 + 1 << "\n";
}

}  // namespace curvnet
