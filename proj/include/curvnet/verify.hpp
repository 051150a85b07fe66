#pragma once

#include "curvnet/curvature.hpp"

namespace curvnet {

enum class CheckStatus { Pass, Fail, Skip };

inline const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

// Ratio sequences for the bounds whose constants the estimates leave implicit;
// asserted as boundedness across refinement, never as fixed numbers.
struct RatioRecord {
    std::string name;
    double value = 0.0;
};

struct BoundReport {
    int vertex_id = -1;
    double eps = 0.0, rho = 1.0;
    double phi = 0.0;    // max angle between n and fan-triangle normals
    double delta = 0.0;  // 1/(2 rho^2)
    double K = 0.0, Kprime = 0.0;
    std::vector<CheckResult> checks;
    std::vector<RatioRecord> ratios;

    int count(CheckStatus s) const {
        int n = 0;
        for (const CheckResult& c : checks)
            if (c.status == s) ++n;
        return n;
    }
};

namespace detail {

inline CheckResult bound_check(const std::string& name, double lhs, double rhs) {
    CheckResult c;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.status = leq_with_slack(lhs, rhs) ? CheckStatus::Pass : CheckStatus::Fail;
    return c;
}

inline CheckResult skip_check(const std::string& name, const std::string& reason) {
    CheckResult c;
    c.name = name;
    c.status = CheckStatus::Skip;
    c.note = reason;
    return c;
}

}  // namespace detail

inline const std::vector<std::string>& bound_check_names() {
    static const std::vector<std::string> names = {
        "area_upper",        "area_lower_max",    "area_lower_three", "area_chosen",
        "delaunay_three",    "gauss_lt_2delta",   "normal_angle",     "normal_angle_cap",
        "projection_inject", "gauss_bonnet",      "height_bound",     "tangential_component",
        "deviation_product"};
    return names;
}

// All star-local inequality checks for one vertex. Skip logic is total:
// boundary, sampling violation, and umbilic proximity produce skips with
// reasons, never silent omissions.
inline BoundReport verify_vertex(const VertexStar& star, const StarMetrics& metrics,
                                 const SurfaceBounds& bounds) {
    BoundReport rep;
    rep.vertex_id = star.vertex_id;
    rep.eps = metrics.eps;
    rep.rho = metrics.rho;
    rep.K = bounds.K;
    rep.Kprime = bounds.Kprime;
    rep.delta = 1.0 / (2.0 * metrics.rho * metrics.rho);

    if (star.boundary) {
        for (const std::string& n : bound_check_names())
            rep.checks.push_back(detail::skip_check(n, "boundary vertex"));
        return rep;
    }

    const double eps = metrics.eps, rho = metrics.rho;
    const double K = bounds.K, Kp = bounds.Kprime;

    // Remainder ratios are refinement diagnostics; they need only the frame
    // and the fan, so they are recorded whether or not the sampling condition
    // holds at this vertex.
    {
        std::vector<FramedEdge> framed = framed_edges(star);
        double q1 = 0.0, q2 = 0.0;
        for (size_t i = 0; i < framed.size(); ++i) {
            const FramedEdge& fe = framed[i];
            double elen2 = norm2(star.edges[i].vec);
            double P = osculating_height(star.point, fe.ex, fe.ey);
            q1 = std::max(q1, std::abs(fe.en + P) / (eps * eps * eps));
            double second = 0.5 * star.point.kappa1 * elen2 +
                            0.5 * star.point.delta_kappa * fe.ey * fe.ey;
            q2 = std::max(q2, std::abs(fe.en + second) / (eps * eps * eps));
        }
        rep.ratios.push_back({"paraboloid_remainder", q1});
        rep.ratios.push_back({"expansion_remainder", q2});
        if (!star.point.umbilic && star.valence() == 4) {
            std::vector<EdgeCurvature> ecs_r = compute_all_edge_curvatures(star);
            double e1 = 0.0, e2 = 0.0;
            for (const EdgeCurvature& ec : ecs_r) {
                int i = ec.star_index;
                double kperp = ec.family == 1 ? star.point.kappa2 : star.point.kappa1;
                double lhs = std::abs(ec.k_sin - 2.0 * ec.area * kperp);
                double dsum = framed[i].ed + framed[star.next(i)].ed + framed[star.prev(i)].ed;
                double denom1 =
                    std::abs(star.point.delta_kappa) * dsum * eps + eps * eps * eps;
                e1 = std::max(e1, lhs / denom1);
                e2 = std::max(e2, lhs / (eps * eps * eps));
            }
            rep.ratios.push_back({"edge_estimate_vs_bound", e1});
            rep.ratios.push_back({"edge_estimate_vs_eps3", e2});
        }
    }

    if (!metrics.sampling_ok) {
        for (const std::string& n : bound_check_names())
            rep.checks.push_back(detail::skip_check(n, "sampling condition violated"));
        return rep;
    }

    std::vector<EdgeCurvature> ecs = compute_all_edge_curvatures(star);

    // circumcentric area bounds
    {
        double max_area = -1e300, worst_upper = -1e300;
        for (const EdgeCurvature& ec : ecs) {
            worst_upper = std::max(worst_upper, ec.area);
            max_area = std::max(max_area, ec.area);
        }
        rep.checks.push_back(detail::bound_check("area_upper", worst_upper, sqr(sqr(rho)) * sqr(eps)));
        rep.checks.push_back(
            detail::bound_check("area_lower_max", sqr(eps) / (4.0 * rho * rho * rho), max_area));

        if (star.valence() == 4) {
            double need = sqr(eps) / (16.0 * sqr(sqr(rho)));
            int good = 0;
            for (const EdgeCurvature& ec : ecs)
                if (leq_with_slack(need, ec.area)) ++good;
            CheckResult c;
            c.name = "area_lower_three";
            c.lhs = 3.0;
            c.rhs = good;
            c.status = good >= 3 ? CheckStatus::Pass : CheckStatus::Fail;
            rep.checks.push_back(c);
        } else {
            rep.checks.push_back(detail::skip_check("area_lower_three", "valence != 4"));
        }

        AreaMaximizingChoice choice = select_area_maximizing(star, ecs);
        double C = 16.0 * sqr(sqr(rho));
        bool ok = true;
        auto in_band = [&](int idx) {
            return idx >= 0 && leq_with_slack(sqr(eps) / C, ecs[idx].area) &&
                   leq_with_slack(ecs[idx].area, C * sqr(eps));
        };
        double worst = 0.0;
        if (choice.umbilic) {
            ok = in_band(choice.single);
            worst = choice.single >= 0 ? ecs[choice.single].area : 0.0;
        } else {
            ok = in_band(choice.family1) && in_band(choice.family2);
            if (choice.family1 >= 0 && choice.family2 >= 0)
                worst = std::min(ecs[choice.family1].area, ecs[choice.family2].area);
        }
        CheckResult c;
        c.name = "area_chosen";
        c.lhs = worst;
        c.rhs = C * sqr(eps);
        c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        rep.checks.push_back(c);
    }

    // delta-Delaunay count and the Gauss hypothesis K_p < 2 delta
    if (star.valence() == 4) {
        double delta = rep.delta;
        int good = 0;
        for (const EdgeCurvature& ec : ecs) {
            if (ec.alpha >= delta - 1e-12 && ec.beta >= delta - 1e-12 &&
                ec.alpha + ec.beta <= kPi - delta + 1e-12)
                ++good;
        }
        CheckResult c;
        c.name = "delaunay_three";
        c.lhs = 3.0;
        c.rhs = good;
        c.status = good >= 3 ? CheckStatus::Pass : CheckStatus::Fail;
        rep.checks.push_back(c);
        rep.checks.push_back(
            detail::bound_check("gauss_lt_2delta", metrics.angle_defect, 2.0 * delta));
    } else {
        rep.checks.push_back(detail::skip_check("delaunay_three", "valence != 4"));
        rep.checks.push_back(detail::skip_check("gauss_lt_2delta", "valence != 4"));
    }

    // normal angles, projection injectivity, Gauss-Bonnet
    {
        double sin_phi = 0.0, phi = 0.0;
        for (int i = 0; i < star.valence(); ++i) {
            if (!star.has_fan_pair(i)) continue;
            Vec3 tn = normalized(cross(star.edges[i].vec, star.edges[star.next(i)].vec));
            double a = angle_between(star.point.n, tn);
            phi = std::max(phi, a);
        }
        sin_phi = std::sin(std::min(phi, 0.5 * kPi));
        rep.phi = phi;
        rep.checks.push_back(detail::bound_check("normal_angle", sin_phi, (4.0 * rho + 2.0) * K * eps));
        rep.checks.push_back(detail::bound_check("normal_angle_cap", sin_phi, 3.0 / 8.0));

        bool inject = true;
        double angle_sum = 0.0;
        std::vector<Vec3> proj;
        for (const StarEdge& e : star.edges)
            proj.push_back(e.vec - dot(e.vec, star.point.n) * star.point.n);
        for (int i = 0; i < star.valence(); ++i) {
            const Vec3& a = proj[i];
            const Vec3& b = proj[star.next(i)];
            if (dot(star.point.n, cross(a, b)) <= 0.0) inject = false;
            angle_sum += angle_between(a, b);
        }
        if (std::abs(angle_sum - kTwoPi) > 1e-9) inject = false;
        CheckResult c;
        c.name = "projection_inject";
        c.lhs = angle_sum;
        c.rhs = kTwoPi;
        c.status = inject ? CheckStatus::Pass : CheckStatus::Fail;
        rep.checks.push_back(c);

        rep.checks.push_back(detail::bound_check("gauss_bonnet", metrics.angle_defect,
                                                 kTwoPi * (1.0 - std::cos(phi))));
    }

    // Darboux-frame height bound |e_n| <= K |e|^2
    {
        std::vector<FramedEdge> framed = framed_edges(star);
        double worst_height = -1e300, worst_bound = 0.0;
        for (size_t i = 0; i < framed.size(); ++i) {
            const FramedEdge& fe = framed[i];
            double elen2 = norm2(star.edges[i].vec);
            if (std::abs(fe.en) - K * elen2 > worst_height - worst_bound) {
                worst_height = std::abs(fe.en);
                worst_bound = K * elen2;
            }
        }
        rep.checks.push_back(detail::bound_check("height_bound", worst_height, worst_bound));
    }

    // tangential component of the curvature vector
    {
        double worst = 0.0;
        for (const EdgeCurvature& ec : ecs) {
            Vec3 kt = ec.kvec - dot(ec.kvec, star.point.n) * star.point.n;
            worst = std::max(worst, norm(kt));
        }
        rep.checks.push_back(detail::bound_check("tangential_component", worst,
                                                 10.0 * K * K * rho * rho * eps * eps * eps));
    }

    // |delta_kappa * e_d| <= (K^2 + 4 K') eps^2, canonical association
    if (!star.point.umbilic) {
        std::vector<FramedEdge> framed = framed_edges(star);
        double worst = 0.0;
        for (const FramedEdge& fe : framed)
            worst = std::max(worst, std::abs(star.point.delta_kappa * fe.ed));
        rep.checks.push_back(
            detail::bound_check("deviation_product", worst, (K * K + 4.0 * Kp) * sqr(eps)));
    } else {
        rep.checks.push_back(detail::skip_check("deviation_product", "umbilic vertex"));
    }

    return rep;
}

// ---------------------------------------------------------------------------
// Geodesic curvature identity of principal lines (chart-level check):
//   kg_1 = grad_{v2} kappa1 / (kappa1 - kappa2),
//   kg_2 = grad_{v1} kappa2 / (kappa1 - kappa2),
// with the gradient taken by central finite differences (intrinsic step 1e-4).
// ---------------------------------------------------------------------------

struct GeodesicIdentityCheck {
    CheckStatus status = CheckStatus::Skip;
    double kg_field = 0.0;     // from the Frenet decomposition of the direction field
    double kg_identity = 0.0;  // from the curvature-derivative identity
    double rel_err = 0.0;
    bool magnitude_bound_ok = true;  // |kg| <= K' / |kappa1 - kappa2|
    std::string note;
};

inline GeodesicIdentityCheck check_geodesic_identity(const SurfaceChart& chart, const Vec2& uv,
                                                     const SurfaceBounds& bounds, int family = 1) {
    GeodesicIdentityCheck out;
    SurfacePointData p = eval_point(chart, uv, true);
    if (p.umbilic || std::abs(p.delta_kappa) <= 1e-6 * std::max(bounds.K, 1e-300)) {
        out.note = "umbilic proximity";
        return out;
    }
    const double h = 1e-4;
    Jet3 j = chart.jet(uv.u, uv.v);
    Vec3 grad_dir = (family == 1) ? p.v2 : p.v1;
    Vec2 vel = detail::parameter_velocity(j, grad_dir);
    auto kappa_at = [&](const Vec2& q) {
        SurfacePointData pq = eval_point(chart, q, false);
        return family == 1 ? pq.kappa1 : pq.kappa2;
    };
    double kp = kappa_at({uv.u + h * vel.u, uv.v + h * vel.v});
    double km = kappa_at({uv.u - h * vel.u, uv.v - h * vel.v});
    double grad = (kp - km) / (2.0 * h);

    out.kg_field = (family == 1) ? p.kg1 : p.kg2;
    out.kg_identity = grad / (p.kappa1 - p.kappa2);
    out.rel_err = std::abs(out.kg_field - out.kg_identity) / std::max(std::abs(out.kg_field), 1e-6);
    out.magnitude_bound_ok =
        std::abs(out.kg_field) <=
        bounds.Kprime / std::abs(p.kappa1 - p.kappa2) * (1.0 + 1e-3) + 1e-12;
    out.status = (out.rel_err <= 1e-3 && out.magnitude_bound_ok) ? CheckStatus::Pass
                                                                 : CheckStatus::Fail;
    return out;
}

}  // namespace curvnet
