#pragma once

#include "curvnet/config.hpp"
#include "curvnet/netgen.hpp"

namespace curvnet {

// ---------------------------------------------------------------------------
// Angular scan of the principal direction field around an isolated umbilic.
//
// On a circle of parameter radius r around the umbilic we track the family-1
// direction as a line field via its double angle. Separatrix rays are the
// angles psi where the family-1 direction is radial; the index of the
// singularity is the winding of the double angle divided by two. The generic
// patterns classify as: lemon (1 ray, index +1/2), monstar (3 rays, +1/2),
// star (3 rays, -1/2).
// ---------------------------------------------------------------------------

struct UmbilicScan {
    std::vector<double> ray_angles;  // family-1 radial directions, in [0, 2pi)
    double index = 0.0;
};

namespace detail {

// double angle of the family-1 direction at polar angle psi on the scan circle
inline double family1_double_angle(const SurfaceChart& chart, double r, double psi) {
    Vec2 uv{r * std::cos(psi), r * std::sin(psi)};
    SurfacePointData p = eval_point(chart, uv, false);
    double chi = std::atan2(p.v1.y, p.v1.x);
    return 2.0 * chi;
}

}  // namespace detail

inline UmbilicScan scan_umbilic(const SurfaceChart& chart, double radius, int samples = 1440) {
    UmbilicScan out;
    std::vector<double> g(samples + 1), h(samples + 1);
    double unwrapped = 0.0, prev2chi = 0.0, first2chi = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double psi = kTwoPi * i / samples;
        double two_chi = detail::family1_double_angle(chart, radius, psi);
        if (i == 0) {
            prev2chi = two_chi;
            unwrapped = two_chi;
            first2chi = two_chi;
        } else {
            double d = two_chi - prev2chi;
            while (d > kPi) d -= kTwoPi;
            while (d < -kPi) d += kTwoPi;
            unwrapped += d;
            prev2chi = two_chi;
        }
        // radial iff sin(2chi - 2psi) = 0 with cos(2chi - 2psi) = +1 branch
        g[i] = std::sin(unwrapped - 2.0 * psi);
        h[i] = std::cos(unwrapped - 2.0 * psi);
    }
    // winding of the double angle over the circle, halved
    out.index = (unwrapped - first2chi) / (2.0 * kTwoPi);

    for (int i = 0; i < samples; ++i) {
        if (g[i] == 0.0 && h[i] > 0.0) {
            out.ray_angles.push_back(wrap_angle_02pi(kTwoPi * i / samples));
            continue;
        }
        if (g[i] * g[i + 1] < 0.0 && h[i] > 0.0 && h[i + 1] > 0.0) {
            double a = kTwoPi * i / samples, b = kTwoPi * (i + 1) / samples;
            double ga = g[i];
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b);
                double two_chi = detail::family1_double_angle(chart, radius, m);
                double gm = std::sin(two_chi - 2.0 * m);
                // pick the branch consistent with the endpoints
                if (std::cos(two_chi - 2.0 * m) < 0.0) break;
                if (ga * gm <= 0.0)
                    b = m;
                else {
                    a = m;
                    ga = gm;
                }
            }
            out.ray_angles.push_back(wrap_angle_02pi(0.5 * (a + b)));
        }
    }
    std::sort(out.ray_angles.begin(), out.ray_angles.end());
    // merge duplicates (a root sampled exactly plus its bracketed twin, or a
    // wrap-around pair at 0 and 2pi)
    std::vector<double> merged;
    for (double a : out.ray_angles) {
        if (!merged.empty() && a - merged.back() < 1e-4) continue;
        merged.push_back(a);
    }
    if (merged.size() >= 2 && (merged.front() + kTwoPi) - merged.back() < 1e-4) merged.pop_back();
    out.ray_angles = std::move(merged);
    return out;
}

inline bool pattern_matches(const UmbilicScan& scan, UmbilicPattern pattern) {
    int rays = static_cast<int>(scan.ray_angles.size());
    double idx = scan.index;
    switch (pattern) {
        case UmbilicPattern::Lemon: return rays == 1 && std::abs(idx - 0.5) < 0.1;
        case UmbilicPattern::Monstar: return rays == 3 && std::abs(idx - 0.5) < 0.1;
        case UmbilicPattern::Star: return rays == 3 && std::abs(idx + 0.5) < 0.1;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Valence-k umbilic nets.
//
// The construction is a documented heuristic (the source patterns specify only
// what the nets look like, not how to build them): separatrix rays are traced
// curvature lines seeded just outside the umbilic; filler rays raise the
// umbilic valence to the requested sector count; ring arcs interpolate in
// polar parameter coordinates between consecutive ray vertices. Rays carry
// family 1, arcs family 2 (the polar grid structure), which keeps family tags
// alternating at every ring vertex.
// ---------------------------------------------------------------------------

inline CurvatureLineNet umbilic_net(const SurfaceChart& chart, UmbilicPattern pattern, int rings,
                                    int sectors, double outer_radius, const TraceConfig& cfg_in) {
    if (rings < 2) throw ConfigError("umbilic_net requires rings >= 2");
    if (sectors < 3) throw ConfigError("umbilic_net requires sectors >= 3");
    auto umb = chart.known_umbilics();
    bool at_origin = false;
    for (const Vec2& q : umb)
        if (q.u == 0.0 && q.v == 0.0) at_origin = true;
    if (chart.kind() != ChartKind::MongePatch || !at_origin)
        throw PatternValidationError("umbilic_net requires a Monge patch with its umbilic at the origin");

    double scan_r = 0.5 * outer_radius;
    UmbilicScan scan = scan_umbilic(chart, scan_r);
    if (!pattern_matches(scan, pattern))
        throw PatternValidationError(std::string("patch does not realize the requested pattern '") +
                                     pattern_name(pattern) + "': found " +
                                     std::to_string(scan.ray_angles.size()) + " rays, index " +
                                     format_double(scan.index));

    // Ray angles: separatrices plus symmetric fillers. Each angular gap is
    // subdivided evenly so that the umbilic reaches at least `sectors` rays
    // and no sector exceeds max_gap (clustered monstar separatrices would
    // otherwise leave a near-full-circle gap). A lemon with one separatrix
    // and sectors = 3 gets two fillers at 2pi/3 offsets.
    const double max_gap = 2.0 * kTwoPi / 5.0;
    std::vector<double> rays;
    std::vector<char> is_sep;
    {
        const std::vector<double>& seps = scan.ray_angles;
        size_t n = seps.size();
        std::vector<int> fillers(n, 0);
        auto gap_of = [&](size_t i) {
            double a = seps[i];
            double b = (i + 1 < n) ? seps[i + 1] : seps[0] + kTwoPi;
            return b - a;
        };
        int deficit = sectors - static_cast<int>(n);
        for (int d = 0; d < deficit; ++d) {
            size_t widest = 0;
            double best = -1.0;
            for (size_t i = 0; i < n; ++i) {
                double eff = gap_of(i) / (fillers[i] + 1);
                if (eff > best) {
                    best = eff;
                    widest = i;
                }
            }
            ++fillers[widest];
        }
        for (size_t i = 0; i < n; ++i) {
            double g = gap_of(i) / (fillers[i] + 1);
            while (g > max_gap) {
                ++fillers[i];
                g = gap_of(i) / (fillers[i] + 1);
            }
        }
        for (size_t i = 0; i < n; ++i) {
            rays.push_back(seps[i]);
            is_sep.push_back(1);
            for (int f = 1; f <= fillers[i]; ++f) {
                rays.push_back(wrap_angle_02pi(seps[i] + gap_of(i) * f / (fillers[i] + 1)));
                is_sep.push_back(0);
            }
        }
        // keep (angle, separatrix) pairs sorted by angle
        std::vector<size_t> order(rays.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return rays[a] < rays[b]; });
        std::vector<double> r2;
        std::vector<char> s2;
        for (size_t i : order) {
            r2.push_back(rays[i]);
            s2.push_back(is_sep[i]);
        }
        rays = std::move(r2);
        is_sep = std::move(s2);
    }
    const int M = static_cast<int>(rays.size());

    TraceConfig cfg = cfg_in;
    cfg.step = std::min(cfg.step, outer_radius / (rings * 24.0));
    cfg.sample_spacing = cfg.step;
    cfg.umbilic_stop_radius = std::min(cfg.umbilic_stop_radius, 1e-4 * outer_radius);
    PrincipalTracer tracer(chart, cfg);

    // ray polylines with vertices at arc radii k * outer_radius / rings
    const double dr = outer_radius / rings;
    std::vector<std::vector<Vec2>> ray_paths(M);       // from umbilic outward, dense
    std::vector<std::vector<double>> ray_s(M);         // arc length from the umbilic
    std::vector<std::vector<Vec2>> ray_vertex_uv(M);   // rings entries
    const double seed_r = 1e-3 * outer_radius;
    for (int m = 0; m < M; ++m) {
        double psi = rays[m];
        Vec2 seed{seed_r * std::cos(psi), seed_r * std::sin(psi)};
        std::vector<Vec2> path;
        std::vector<double> ss;
        path.push_back({0.0, 0.0});
        ss.push_back(0.0);
        double stub = polyline_intrinsic_length(chart, {path[0], seed});
        path.push_back(seed);
        ss.push_back(stub);
        if (is_sep[m]) {
            Vec3 outward = chart.position(seed) - chart.position({0.0, 0.0});
            TracedLine line = tracer.trace(seed, 1, outer_radius * 1.02 - stub, outward);
            if (line.length() + stub < outer_radius)
                throw NetConstructionError("separatrix trace ended before the outer ring (ray " +
                                           std::to_string(m) + ")");
            for (size_t i = 1; i < line.uv.size(); ++i) {
                path.push_back(line.uv[i]);
                ss.push_back(stub + line.s[i]);
            }
        } else {
            // filler: straight parameter ray, marked heuristic below.
            // Arc length along the surface dominates the parameter radius, so
            // 1.3x the target radius suffices if it fits inside the domain.
            int n = rings * 24;
            double he = std::min({std::abs(chart.domain().u1), std::abs(chart.domain().u0),
                                  std::abs(chart.domain().v1), std::abs(chart.domain().v0)});
            double far = std::min(1.3 * outer_radius,
                                  0.98 * he / std::max(std::abs(std::cos(psi)), std::abs(std::sin(psi))));
            for (int i = 1; i <= n; ++i) {
                double t = seed_r + (far - seed_r) * i / n;
                Vec2 q{t * std::cos(psi), t * std::sin(psi)};
                path.push_back(q);
                ss.push_back(ss.back() +
                             polyline_intrinsic_length(chart, {path[path.size() - 2], q}));
            }
        }
        ray_paths[m] = path;
        ray_s[m] = ss;
        // vertices at arc radii
        for (int k = 1; k <= rings; ++k) {
            double target = k * dr;
            size_t i = 0;
            while (i + 1 < ss.size() && ss[i + 1] < target) ++i;
            if (i + 1 >= ss.size())
                throw NetConstructionError("ray too short for ring " + std::to_string(k));
            double t = (target - ss[i]) / (ss[i + 1] - ss[i]);
            ray_vertex_uv[m].push_back(path[i] + t * (path[i + 1] - path[i]));
        }
    }

    CurvatureLineNet net;
    net.chart = chart;
    {
        NetVertex v;
        v.id = 0;
        v.uv = {0.0, 0.0};
        v.point = eval_point(chart, v.uv);
        v.position = v.point.position;
        net.vertices.push_back(v);
    }
    auto vid = [&](int k, int m) { return 1 + (k - 1) * M + m; };  // k = 1..rings
    for (int k = 1; k <= rings; ++k)
        for (int m = 0; m < M; ++m) {
            NetVertex v;
            v.id = vid(k, m);
            v.uv = ray_vertex_uv[m][k - 1];
            v.point = eval_point(chart, v.uv);
            v.position = v.point.position;
            v.boundary = (k == rings);
            net.vertices.push_back(v);
        }

    // ray edges between consecutive rings (and the umbilic)
    std::map<std::pair<int, int>, int> ray_edge;  // (m, k) = segment ending at ring k
    for (int m = 0; m < M; ++m) {
        for (int k = 1; k <= rings; ++k) {
            NetEdge e;
            e.id = static_cast<int>(net.edges.size());
            e.v0 = (k == 1) ? 0 : vid(k - 1, m);
            e.v1 = vid(k, m);
            e.family = 1;
            e.separatrix = is_sep[m] != 0;
            e.heuristic = is_sep[m] == 0;
            double s0 = (k - 1) * dr, s1 = k * dr;
            std::vector<Vec2> seg;
            seg.push_back(k == 1 ? Vec2{0.0, 0.0} : ray_vertex_uv[m][k - 2]);
            for (size_t i = 0; i < ray_paths[m].size(); ++i)
                if (ray_s[m][i] > s0 + 1e-12 && ray_s[m][i] < s1 - 1e-12)
                    seg.push_back(ray_paths[m][i]);
            seg.push_back(ray_vertex_uv[m][k - 1]);
            e.samples = seg;
            e.intrinsic_length = polyline_intrinsic_length(chart, seg);
            ray_edge[{m, k}] = e.id;
            net.edges.push_back(e);
        }
    }

    // ring arcs: polar interpolation between consecutive ray vertices
    std::map<std::pair<int, int>, int> arc_edge;  // (k, m) = arc from ray m to ray m+1
    for (int k = 1; k <= rings; ++k) {
        for (int m = 0; m < M; ++m) {
            int m2 = (m + 1) % M;
            Vec2 a = ray_vertex_uv[m][k - 1], b = ray_vertex_uv[m2][k - 1];
            double pa = std::atan2(a.v, a.u), ra = norm(a);
            double pb = std::atan2(b.v, b.u), rb = norm(b);
            while (pb <= pa) pb += kTwoPi;
            int n = 25;
            std::vector<Vec2> seg;
            for (int i = 0; i <= n; ++i) {
                double t = static_cast<double>(i) / n;
                double phi = pa + t * (pb - pa);
                double rad = ra + t * (rb - ra);
                seg.push_back({rad * std::cos(phi), rad * std::sin(phi)});
            }
            seg.front() = a;
            seg.back() = b;
            NetEdge e;
            e.id = static_cast<int>(net.edges.size());
            e.v0 = vid(k, m);
            e.v1 = vid(k, m2);
            e.family = 2;
            e.heuristic = true;
            e.samples = seg;
            e.intrinsic_length = polyline_intrinsic_length(chart, seg);
            arc_edge[{k, m}] = e.id;
            net.edges.push_back(e);
        }
    }

    // cells: M triangles at the umbilic, quads elsewhere
    for (int m = 0; m < M; ++m) {
        int m2 = (m + 1) % M;
        NetCell c;
        c.vertices = {0, vid(1, m), vid(1, m2)};
        c.edges = {ray_edge[{m, 1}], arc_edge[{1, m}], ray_edge[{m2, 1}]};
        net.cells.push_back(c);
    }
    for (int k = 1; k < rings; ++k)
        for (int m = 0; m < M; ++m) {
            int m2 = (m + 1) % M;
            NetCell c;
            c.vertices = {vid(k, m), vid(k + 1, m), vid(k + 1, m2), vid(k, m2)};
            c.edges = {ray_edge[{m, k + 1}], arc_edge[{k + 1, m}], ray_edge[{m2, k + 1}],
                       arc_edge[{k, m}]};
            net.cells.push_back(c);
        }

    build_links(net);
    return net;
}

}  // namespace curvnet
