#pragma once

#include "curvnet/net.hpp"
#include "curvnet/trace.hpp"

namespace curvnet {

namespace detail {

// Family of the curvature line with (ambient) tangent `dir` at `uv`:
// 1 if it runs along v1, else 2. At umbilics the fallback frame decides,
// ties broken toward family 1.
inline int family_of_direction(const SurfacePointData& p, const Vec3& dir) {
    return std::abs(dot(dir, p.v1)) >= std::abs(dot(dir, p.v2)) ? 1 : 2;
}

inline std::vector<Vec2> straight_param_samples(const Vec2& a, const Vec2& b, int n) {
    std::vector<Vec2> s;
    s.reserve(n);
    for (int i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / (n - 1);
        s.push_back({a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)});
    }
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Analytic quad nets on surfaces of revolution: meridians and parallels are
// the curvature lines, so grid lines in the parameter domain are exact.
// ---------------------------------------------------------------------------

inline CurvatureLineNet revolution_net(const SurfaceChart& chart, int n_meridians,
                                       int n_parallels) {
    if (!chart.supports_revolution_net())
        throw UnsupportedChartError("revolution_net requires a sphere, cylinder, or surface of revolution");
    if (n_meridians < 3 || n_parallels < 2)
        throw ConfigError("revolution_net requires n_meridians >= 3 and n_parallels >= 2");

    const Domain& dom = chart.domain();
    const int nu = n_meridians;
    const int nv = n_parallels;  // number of parallel circles
    const bool v_closed = dom.v_periodic;
    const int n_vrings = v_closed ? nv : nv;
    const double du = dom.u_extent() / nu;
    const double dv = v_closed ? dom.v_extent() / nv : dom.v_extent() / (nv - 1);

    CurvatureLineNet net;
    net.chart = chart;
    auto vid = [&](int i, int j) { return j * nu + (i % nu + nu) % nu; };

    for (int j = 0; j < n_vrings; ++j) {
        for (int i = 0; i < nu; ++i) {
            NetVertex v;
            v.id = vid(i, j);
            v.uv = {dom.u0 + i * du, dom.v0 + j * dv};
            v.point = eval_point(chart, v.uv);
            v.position = v.point.position;
            v.boundary = !v_closed && (j == 0 || j == n_vrings - 1);
            net.vertices.push_back(v);
        }
    }

    const int samples_per_edge = 17;
    auto add_edge = [&](int va, int vb, const Vec2& uva, const Vec2& uvb) {
        NetEdge e;
        e.id = static_cast<int>(net.edges.size());
        e.v0 = va;
        e.v1 = vb;
        e.samples = detail::straight_param_samples(uva, uvb, samples_per_edge);
        e.intrinsic_length = polyline_intrinsic_length(chart, e.samples);
        Vec2 mid = {0.5 * (uva.u + uvb.u), 0.5 * (uva.v + uvb.v)};
        SurfacePointData pm = eval_point(chart, mid, false);
        Jet3 jm = chart.jet(mid.u, mid.v);
        Vec3 tangent = normalized(jm.xu * (uvb.u - uva.u) + jm.xv * (uvb.v - uva.v));
        e.family = detail::family_of_direction(pm, tangent);
        net.edges.push_back(e);
        return e.id;
    };

    // parallel edges (constant v), then meridian edges (constant u)
    std::map<std::pair<int, int>, int> parallel_edge, meridian_edge;
    for (int j = 0; j < n_vrings; ++j)
        for (int i = 0; i < nu; ++i) {
            Vec2 a = {dom.u0 + i * du, dom.v0 + j * dv};
            Vec2 b = {dom.u0 + (i + 1) * du, dom.v0 + j * dv};
            parallel_edge[{i, j}] = add_edge(vid(i, j), vid(i + 1, j), a, b);
        }
    int n_meridian_rows = v_closed ? n_vrings : n_vrings - 1;
    for (int j = 0; j < n_meridian_rows; ++j)
        for (int i = 0; i < nu; ++i) {
            Vec2 a = {dom.u0 + i * du, dom.v0 + j * dv};
            Vec2 b = {dom.u0 + i * du, dom.v0 + (j + 1) * dv};
            int vb = v_closed ? vid(i, (j + 1) % n_vrings) : vid(i, j + 1);
            meridian_edge[{i, j}] = add_edge(vid(i, j), vb, a, b);
        }

    for (int j = 0; j < n_meridian_rows; ++j)
        for (int i = 0; i < nu; ++i) {
            int jn = v_closed ? (j + 1) % n_vrings : j + 1;
            NetCell c;
            c.vertices = {vid(i, j), vid(i + 1, j), vid(i + 1, jn), vid(i, jn)};
            c.edges = {parallel_edge[{i, j}], meridian_edge[{(i + 1) % nu, j}],
                       parallel_edge[{i, jn % n_vrings}], meridian_edge[{i, j}]};
            net.cells.push_back(c);
        }

    build_links(net);
    return net;
}

// ---------------------------------------------------------------------------
// Traced nets: rows are family-1 traces, columns family-2 traces; vertices are
// row/column intersections localized by bisection refinement in the parameter
// domain.
// ---------------------------------------------------------------------------

struct SeedGrid {
    Vec2 center;
    int n_rows = 5;          // family-1 lines
    int n_cols = 5;          // family-2 lines
    double row_spacing = 0.1;  // arc length between rows, measured along the spine
    double col_spacing = 0.1;  // arc length between columns, measured along the center row
};

namespace detail {

struct TraceRecord {
    std::vector<Vec2> uv;
    std::vector<double> s;
    double seed_s = 0.0;  // arc parameter of the seed point
};

// Two-sided trace through `seed`, re-parameterized so s increases along the
// full line (seed sits at s = backward length).
inline TraceRecord two_sided_trace(const PrincipalTracer& tracer, const Vec2& seed, int family,
                                   const Vec3& forward_hint, double back_len, double fwd_len) {
    TracedLine fwd = tracer.trace(seed, family, fwd_len, forward_hint);
    TracedLine bwd = tracer.trace(seed, family, back_len, -1.0 * forward_hint);
    TraceRecord rec;
    rec.seed_s = bwd.length();
    for (size_t i = bwd.uv.size(); i-- > 1;) {
        rec.uv.push_back(bwd.uv[i]);
        rec.s.push_back(bwd.length() - bwd.s[i]);
    }
    for (size_t i = 0; i < fwd.uv.size(); ++i) {
        rec.uv.push_back(fwd.uv[i]);
        rec.s.push_back(bwd.length() + fwd.s[i]);
    }
    return rec;
}

inline bool segment_intersection(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1,
                                 double& ta, double& tb, double slack = 1e-9) {
    Vec2 da = a1 - a0, db = b1 - b0, d0 = b0 - a0;
    double det = cross2(da, db);
    double scale = std::max(norm(da) * norm(db), 1e-300);
    if (std::abs(det) < 1e-14 * scale) return false;
    ta = cross2(d0, db) / det;
    tb = cross2(d0, da) / det;
    return ta >= -slack && ta <= 1 + slack && tb >= -slack && tb <= 1 + slack;
}

struct IntersectionHit {
    Vec2 uv;
    double s_row = 0.0, s_col = 0.0;
    double crossing_sin = 1.0;
};

// Subdivision refinement of a bracketed crossing: both traces are re-integrated
// at 1/16 of the bracket per round until the bracket is below tol.
inline IntersectionHit refine_intersection(const PrincipalTracer& tracer, const TraceRecord& row,
                                           size_t ri, const TraceRecord& col, size_t ci,
                                           double tol = 1e-9) {
    const SurfaceChart& chart = tracer.chart();
    Vec2 ra = row.uv[ri], rb = row.uv[ri + 1];
    Vec2 ca = col.uv[ci], cb = col.uv[ci + 1];
    double rs0 = row.s[ri], rs1 = row.s[ri + 1];
    double cs0 = col.s[ci], cs1 = col.s[ci + 1];

    auto subdiv = [&](const Vec2& a, const Vec2& b, double len, int family,
                      std::vector<Vec2>& pts, std::vector<double>& ss) {
        Vec3 hint = chart.position(b) - chart.position(a);
        TraceConfig sub = tracer.config();
        sub.step = std::max(len / 16.0, 1e-14);
        sub.sample_spacing = sub.step;
        PrincipalTracer local(chart, sub);
        TracedLine leg = local.trace(a, family, len, hint);
        pts = leg.uv;
        ss = leg.s;
    };

    for (int round = 0; round < 40; ++round) {
        double bracket = std::max(norm(rb - ra), norm(cb - ca));
        if (bracket < tol) break;
        std::vector<Vec2> rp, cp;
        std::vector<double> rss, css;
        subdiv(ra, rb, rs1 - rs0, 1, rp, rss);
        subdiv(ca, cb, cs1 - cs0, 2, cp, css);
        // Among the candidate fine pairs, take the one containing the crossing
        // most strictly; the slack only admits crossings sitting on a shared
        // sample endpoint up to re-integration roundoff.
        bool found = false;
        double best_penalty = 1e300;
        size_t bi = 0, bk = 0;
        for (size_t i = 0; i + 1 < rp.size(); ++i)
            for (size_t k = 0; k + 1 < cp.size(); ++k) {
                double ta, tb;
                if (segment_intersection(rp[i], rp[i + 1], cp[k], cp[k + 1], ta, tb, 0.05)) {
                    double penalty = std::max(0.0, ta - 1.0) + std::max(0.0, -ta) +
                                     std::max(0.0, tb - 1.0) + std::max(0.0, -tb);
                    if (penalty < best_penalty) {
                        best_penalty = penalty;
                        bi = i;
                        bk = k;
                        found = true;
                    }
                }
            }
        if (found) {
            double nrs0 = rs0 + rss[bi], nrs1 = rs0 + rss[bi + 1];
            double ncs0 = cs0 + css[bk], ncs1 = cs0 + css[bk + 1];
            ra = rp[bi];
            rb = rp[bi + 1];
            ca = cp[bk];
            cb = cp[bk + 1];
            rs0 = nrs0;
            rs1 = nrs1;
            cs0 = ncs0;
            cs1 = ncs1;
        }
        if (!found)
            throw NetConstructionError(
                "lost trace intersection during bisection refinement near (" +
                format_double(0.5 * (ra.u + rb.u)) + ", " + format_double(0.5 * (ra.v + rb.v)) +
                "), bracket " + format_double(bracket));
    }

    double ta, tb;
    IntersectionHit hit;
    if (!segment_intersection(ra, rb, ca, cb, ta, tb, 0.1)) {
        ta = tb = 0.5;  // bracket below tolerance; midpoint is within tol of the crossing
    }
    hit.uv = ra + ta * (rb - ra);
    hit.s_row = rs0 + ta * (rs1 - rs0);
    hit.s_col = cs0 + tb * (cs1 - cs0);
    Vec2 dr = rb - ra, dc = cb - ca;
    double denom = std::max(norm(dr) * norm(dc), 1e-300);
    hit.crossing_sin = std::abs(cross2(dr, dc)) / denom;
    return hit;
}

// All crossings of a row trace with a column trace, bracketed on the stored
// samples and refined.
struct SegmentBlocks {
    // bounding boxes of 32-segment chunks, for pruning the pair scan
    static constexpr size_t kBlock = 32;
    std::vector<std::array<double, 4>> boxes;  // umin, umax, vmin, vmax

    explicit SegmentBlocks(const std::vector<Vec2>& pts) {
        for (size_t b = 0; b + 1 < pts.size(); b += kBlock) {
            std::array<double, 4> box{1e300, -1e300, 1e300, -1e300};
            for (size_t i = b; i < std::min(pts.size(), b + kBlock + 1); ++i) {
                box[0] = std::min(box[0], pts[i].u);
                box[1] = std::max(box[1], pts[i].u);
                box[2] = std::min(box[2], pts[i].v);
                box[3] = std::max(box[3], pts[i].v);
            }
            boxes.push_back(box);
        }
    }
    static bool overlap(const std::array<double, 4>& a, const std::array<double, 4>& b) {
        return a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3];
    }
};

inline std::vector<IntersectionHit> find_intersections(const PrincipalTracer& tracer,
                                                       const TraceRecord& row,
                                                       const TraceRecord& col) {
    std::vector<IntersectionHit> hits;
    SegmentBlocks rb(row.uv), cb(col.uv);
    constexpr size_t B = SegmentBlocks::kBlock;
    for (size_t bi = 0; bi < rb.boxes.size(); ++bi) {
        for (size_t bk = 0; bk < cb.boxes.size(); ++bk) {
            if (!SegmentBlocks::overlap(rb.boxes[bi], cb.boxes[bk])) continue;
            size_t i_end = std::min(row.uv.size() - 1, (bi + 1) * B);
            size_t k_end = std::min(col.uv.size() - 1, (bk + 1) * B);
            for (size_t i = bi * B; i < i_end; ++i) {
                for (size_t k = bk * B; k < k_end; ++k) {
                    double ta, tb;
                    if (segment_intersection(row.uv[i], row.uv[i + 1], col.uv[k], col.uv[k + 1],
                                             ta, tb))
                        hits.push_back(refine_intersection(tracer, row, i, col, k));
                }
            }
        }
    }
    // duplicate brackets around a shared sample point collapse to one hit
    std::vector<IntersectionHit> unique;
    for (const IntersectionHit& h : hits) {
        bool dup = false;
        for (const IntersectionHit& u : unique)
            if (norm(h.uv - u.uv) < 1e-7) dup = true;
        if (!dup) unique.push_back(h);
    }
    return unique;
}

// Portion of a trace between two arc parameters, with exact endpoints patched in.
inline std::vector<Vec2> trace_slice(const TraceRecord& rec, double s0, const Vec2& p0, double s1,
                                     const Vec2& p1) {
    std::vector<Vec2> out;
    out.push_back(p0);
    for (size_t i = 0; i < rec.uv.size(); ++i)
        if (rec.s[i] > s0 + 1e-12 && rec.s[i] < s1 - 1e-12) out.push_back(rec.uv[i]);
    out.push_back(p1);
    return out;
}

}  // namespace detail

inline CurvatureLineNet traced_net(const SurfaceChart& chart, const SeedGrid& grid,
                                   const TraceConfig& cfg) {
    if (grid.n_rows < 2 || grid.n_cols < 2)
        throw ConfigError("traced_net requires at least a 2x2 seed grid");
    PrincipalTracer tracer(chart, cfg);

    SurfacePointData center = eval_point(chart, grid.center, false);
    // Umbilic charts (plane, sphere) fall back to the du-aligned frame; the
    // hints below make that choice explicit and deterministic.
    Vec3 hint1 = center.v1, hint2 = center.v2;

    const double row_span = 0.5 * (grid.n_rows - 1) * grid.row_spacing;
    const double col_span = 0.5 * (grid.n_cols - 1) * grid.col_spacing;
    const double margin_r = 0.55 * grid.row_spacing;
    const double margin_c = 0.55 * grid.col_spacing;

    // spine: family-2 line through the center; row anchors sit along it
    std::vector<double> offsets;
    for (int i = 1; i <= (grid.n_rows - 1) / 2 + (grid.n_rows - 1) % 2; ++i)
        offsets.push_back(i * grid.row_spacing);
    std::vector<Vec2> anchors_up, anchors_dn;
    int up_count = (grid.n_rows - 1) - (grid.n_rows - 1) / 2;
    int dn_count = (grid.n_rows - 1) / 2;
    {
        std::vector<double> offs;
        for (int i = 1; i <= up_count; ++i) offs.push_back(i * grid.row_spacing);
        if (!offs.empty()) anchors_up = trace_anchors(tracer, grid.center, 2, offs, hint2);
        offs.clear();
        for (int i = 1; i <= dn_count; ++i) offs.push_back(i * grid.row_spacing);
        if (!offs.empty()) anchors_dn = trace_anchors(tracer, grid.center, 2, offs, -1.0 * hint2);
    }
    std::vector<Vec2> row_seeds;  // ordered bottom to top
    for (size_t i = anchors_dn.size(); i-- > 0;) row_seeds.push_back(anchors_dn[i]);
    row_seeds.push_back(grid.center);
    for (const Vec2& a : anchors_up) row_seeds.push_back(a);

    // rows: family-1 traces through the row seeds
    std::vector<detail::TraceRecord> rows;
    for (const Vec2& seed : row_seeds) {
        SurfacePointData sp = eval_point(chart, seed, false);
        Vec3 h1 = dot(sp.v1, hint1) < 0.0 ? -sp.v1 : sp.v1;
        rows.push_back(detail::two_sided_trace(tracer, seed, 1, h1, col_span + margin_c,
                                               col_span + margin_c));
    }

    // columns: family-2 traces through anchors along the center row
    std::vector<Vec2> col_seeds;
    std::vector<double> col_offsets;  // signed arc offset of each column along the center row
    {
        int left = (grid.n_cols - 1) / 2;
        int right = (grid.n_cols - 1) - left;
        std::vector<std::pair<double, Vec2>> seeds;
        seeds.push_back({0.0, grid.center});
        std::vector<double> offs;
        for (int i = 1; i <= right; ++i) offs.push_back(i * grid.col_spacing);
        if (!offs.empty()) {
            auto a = trace_anchors(tracer, grid.center, 1, offs, hint1);
            for (size_t i = 0; i < a.size(); ++i) seeds.push_back({offs[i], a[i]});
        }
        offs.clear();
        for (int i = 1; i <= left; ++i) offs.push_back(i * grid.col_spacing);
        if (!offs.empty()) {
            auto a = trace_anchors(tracer, grid.center, 1, offs, -1.0 * hint1);
            for (size_t i = 0; i < a.size(); ++i) seeds.push_back({-offs[i], a[i]});
        }
        std::sort(seeds.begin(), seeds.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [off, uv] : seeds) {
            col_seeds.push_back(uv);
            col_offsets.push_back(off);
        }
    }
    std::vector<detail::TraceRecord> cols;
    for (const Vec2& seed : col_seeds) {
        SurfacePointData sp = eval_point(chart, seed, false);
        Vec3 h2 = dot(sp.v2, hint2) < 0.0 ? -sp.v2 : sp.v2;
        cols.push_back(detail::two_sided_trace(tracer, seed, 2, h2, row_span + margin_r,
                                               row_span + margin_r));
    }

    // vertices at row x column intersections
    const int R = static_cast<int>(rows.size());
    const int C = static_cast<int>(cols.size());
    std::vector<std::vector<detail::IntersectionHit>> vert(R, std::vector<detail::IntersectionHit>(C));
    double rho_target = std::max(grid.row_spacing / grid.col_spacing,
                                 grid.col_spacing / grid.row_spacing);
    for (int i = 0; i < R; ++i)
        for (int k = 0; k < C; ++k) {
            auto hits = detail::find_intersections(tracer, rows[i], cols[k]);
            if (hits.empty())
                throw NetConstructionError("no intersection for row " + std::to_string(i) +
                                           ", column " + std::to_string(k));
            // nearest to the expected grid location along the row
            double expect = rows[i].seed_s + col_offsets[k];
            std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
                return std::abs(a.s_row - expect) < std::abs(b.s_row - expect);
            });
            detail::IntersectionHit hit = hits.front();
            if (hit.crossing_sin < 1.0 / (4.0 * std::max(rho_target, 1.0)))
                throw NetConstructionError("near-tangential trace crossing at row " +
                                           std::to_string(i) + ", column " + std::to_string(k));
            vert[i][k] = hit;
        }

    CurvatureLineNet net;
    net.chart = chart;
    auto vid = [&](int i, int k) { return i * C + k; };
    for (int i = 0; i < R; ++i)
        for (int k = 0; k < C; ++k) {
            NetVertex v;
            v.id = vid(i, k);
            v.uv = vert[i][k].uv;
            v.point = eval_point(chart, v.uv);
            v.position = v.point.position;
            v.boundary = (i == 0 || i == R - 1 || k == 0 || k == C - 1);
            net.vertices.push_back(v);
        }

    std::map<std::pair<int, int>, int> row_edge, col_edge;
    for (int i = 0; i < R; ++i)
        for (int k = 0; k + 1 < C; ++k) {
            NetEdge e;
            e.id = static_cast<int>(net.edges.size());
            e.v0 = vid(i, k);
            e.v1 = vid(i, k + 1);
            e.family = 1;
            e.samples = detail::trace_slice(rows[i], vert[i][k].s_row, vert[i][k].uv,
                                            vert[i][k + 1].s_row, vert[i][k + 1].uv);
            e.intrinsic_length = polyline_intrinsic_length(chart, e.samples);
            row_edge[{i, k}] = e.id;
            net.edges.push_back(e);
        }
    for (int k = 0; k < C; ++k)
        for (int i = 0; i + 1 < R; ++i) {
            NetEdge e;
            e.id = static_cast<int>(net.edges.size());
            e.v0 = vid(i, k);
            e.v1 = vid(i + 1, k);
            e.family = 2;
            e.samples = detail::trace_slice(cols[k], vert[i][k].s_col, vert[i][k].uv,
                                            vert[i + 1][k].s_col, vert[i + 1][k].uv);
            e.intrinsic_length = polyline_intrinsic_length(chart, e.samples);
            col_edge[{i, k}] = e.id;
            net.edges.push_back(e);
        }
    for (int i = 0; i + 1 < R; ++i)
        for (int k = 0; k + 1 < C; ++k) {
            NetCell c;
            c.vertices = {vid(i, k), vid(i, k + 1), vid(i + 1, k + 1), vid(i + 1, k)};
            c.edges = {row_edge[{i, k}], col_edge[{i, k + 1}], row_edge[{i + 1, k}],
                       col_edge[{i, k}]};
            net.cells.push_back(c);
        }

    build_links(net);
    return net;
}

}  // namespace curvnet
