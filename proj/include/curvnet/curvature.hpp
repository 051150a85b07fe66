#pragma once

#include "curvnet/star.hpp"

namespace curvnet {

// The three Steiner-type integrated curvature variants.
enum class Variant { Angle, Sin, Tan };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Angle: return "angle";
        case Variant::Sin: return "sin";
        case Variant::Tan: return "tan";
    }
    return "?";
}

inline Variant variant_from_string(const std::string& s) {
    if (s == "angle") return Variant::Angle;
    if (s == "sin") return Variant::Sin;
    if (s == "tan") return Variant::Tan;
    throw ConfigError("unknown variant: " + s + " (expected angle|sin|tan)");
}

inline constexpr std::array<Variant, 3> kAllVariants{Variant::Angle, Variant::Sin, Variant::Tan};

// ---------------------------------------------------------------------------
// Edge-based quantities on a vertex star
// ---------------------------------------------------------------------------

// Signed dihedral angle across edge i: the angle between the oriented normals
// n1 = (e x f)/|.| and n2 = (g x e)/|.| of the adjacent fan triangles, with
// sign((n1 x n2) . e_hat). Bending away from the chart normal (a sphere with
// outward normals) comes out positive.
inline double dihedral_angle(const VertexStar& star, int i) {
    if (!star.edge_interior(i))
        throw NoSecondFaceError("edge " + std::to_string(i) + " lacks a second fan triangle");
    const Vec3& e = star.edges[i].vec;
    const Vec3& f = star.edges[star.next(i)].vec;
    const Vec3& g = star.edges[star.prev(i)].vec;
    Vec3 n1 = normalized(cross(e, f));
    Vec3 n2 = normalized(cross(g, e));
    Vec3 cr = cross(n1, n2);
    double s = norm(cr);
    double c = std::clamp(dot(n1, n2), -1.0, 1.0);
    double theta = std::atan2(s, c);
    double orient = dot(cr, e) >= 0.0 ? 1.0 : -1.0;
    return s == 0.0 ? 0.0 : orient * theta;
}

inline double integrated_edge_curvature(double theta, double chord_length, Variant variant) {
    if (!(std::abs(theta) < kPi))
        throw VariantOverflowError("dihedral angle out of range (-pi, pi)");
    switch (variant) {
        case Variant::Angle: return theta * chord_length;
        case Variant::Sin: return 2.0 * std::sin(0.5 * theta) * chord_length;
        case Variant::Tan:
            if (std::abs(theta) >= kPi - 1e-6)
                throw VariantOverflowError("tan variant overflows near theta = pi");
            return 2.0 * std::tan(0.5 * theta) * chord_length;
    }
    return 0.0;
}

// Discrete curvature vector k = J_f e + J_g e, the sum of the two rotations of
// e by pi/2 about the axes e x f and e x g.
inline Vec3 curvature_vector(const VertexStar& star, int i) {
    if (!star.edge_interior(i))
        throw NoSecondFaceError("edge " + std::to_string(i) + " lacks a second fan triangle");
    const Vec3& e = star.edges[i].vec;
    const Vec3& f = star.edges[star.next(i)].vec;
    const Vec3& g = star.edges[star.prev(i)].vec;
    double cf = norm(cross(e, f));
    double cg = norm(cross(e, g));
    if (cf < 1e-300 || cg < 1e-300) throw DegenerateTriangleError("degenerate fan pair");
    Vec3 jf = (norm2(e) * f - dot(f, e) * e) / cf;
    Vec3 jg = (norm2(e) * g - dot(g, e) * e) / cg;
    return jf + jg;
}

struct CircumcentricArea {
    double area = 0.0;    // A_e, signed
    double area_f = 0.0;  // share in the (e, f) triangle
    double area_g = 0.0;  // share in the (e, g) triangle
    double alpha = 0.0;   // angle opposing e in the (e, f) triangle
    double beta = 0.0;    // angle opposing e in the (e, g) triangle
    int sgn = 0;
};

inline CircumcentricArea circumcentric_area(const VertexStar& star, int i) {
    if (!star.edge_interior(i))
        throw NoSecondFaceError("edge " + std::to_string(i) + " lacks a second fan triangle");
    const Vec3& e = star.edges[i].vec;
    const Vec3& f = star.edges[star.next(i)].vec;
    const Vec3& g = star.edges[star.prev(i)].vec;
    double cf = norm(cross(e, f));
    double cg = norm(cross(e, g));
    if (cf < 1e-300 || cg < 1e-300) throw DegenerateTriangleError("degenerate fan pair");
    CircumcentricArea a;
    a.alpha = std::atan2(cf, dot(f, f - e));
    a.beta = std::atan2(cg, dot(g, g - e));
    a.area_f = dot(f, f - e) * norm2(e) / (4.0 * cf);
    a.area_g = dot(g, g - e) * norm2(e) / (4.0 * cg);
    a.area = a.area_f + a.area_g;
    a.sgn = (a.area > 0.0) - (a.area < 0.0);
    return a;
}

// Independent route for A_e: unfold the hinge into the plane, construct both
// circumcenters, and measure the dual edge. The sign follows the ray rule:
// positive iff T1 lies before T2 along the ray from C1 through C2.
struct UnfoldedArea {
    double area = 0.0;
    double dual_length = 0.0;  // |*e|
    int sgn = 0;
};

inline UnfoldedArea circumcentric_area_unfolded(const Vec3& e, const Vec3& f, const Vec3& g) {
    double L = norm(e);
    if (L < 1e-300) throw DegenerateTriangleError("zero-length edge");
    Vec3 ehat = e / L;
    double fx = dot(f, ehat);
    double gx = dot(g, ehat);
    double hf = std::sqrt(std::max(norm2(f) - fx * fx, 0.0));
    double hg = std::sqrt(std::max(norm2(g) - gx * gx, 0.0));
    if (hf < 1e-300 || hg < 1e-300) throw DegenerateTriangleError("degenerate unfolded triangle");
    // T1 apex above the edge, T2 apex below
    double y1 = (fx * fx + hf * hf - L * fx) / (2.0 * hf);
    double y2 = -(gx * gx + hg * hg - L * gx) / (2.0 * hg);
    UnfoldedArea r;
    r.dual_length = std::abs(y1 - y2);
    double dy = y2 - y1;  // ray C1 -> C2
    double t1 = (hf / 3.0 - y1) * dy;
    double t2 = (-hg / 3.0 - y1) * dy;
    r.sgn = t1 < t2 ? 1 : (t1 > t2 ? -1 : 0);
    r.area = 0.5 * r.sgn * L * r.dual_length;
    return r;
}

struct EdgeCurvature {
    int star_index = -1;
    int edge_id = -1;
    int family = 1;
    double chord = 0.0;
    double theta = 0.0;
    double k_angle = 0.0, k_sin = 0.0, k_tan = 0.0;
    Vec3 kvec;
    double alpha = 0.0, beta = 0.0;
    double area = 0.0, area_f = 0.0, area_g = 0.0;
    int sgn = 0;

    double k(Variant v) const {
        switch (v) {
            case Variant::Angle: return k_angle;
            case Variant::Sin: return k_sin;
            case Variant::Tan: return k_tan;
        }
        return 0.0;
    }
    double mean(Variant v) const { return 0.5 * k(v); }
};

inline EdgeCurvature compute_edge_curvature(const VertexStar& star, int i) {
    EdgeCurvature ec;
    ec.star_index = i;
    ec.edge_id = star.edges[i].edge_id;
    ec.family = star.edges[i].family;
    ec.chord = norm(star.edges[i].vec);
    ec.theta = dihedral_angle(star, i);
    ec.k_angle = integrated_edge_curvature(ec.theta, ec.chord, Variant::Angle);
    ec.k_sin = integrated_edge_curvature(ec.theta, ec.chord, Variant::Sin);
    ec.k_tan = integrated_edge_curvature(ec.theta, ec.chord, Variant::Tan);
    ec.kvec = curvature_vector(star, i);
    CircumcentricArea a = circumcentric_area(star, i);
    ec.alpha = a.alpha;
    ec.beta = a.beta;
    ec.area = a.area;
    ec.area_f = a.area_f;
    ec.area_g = a.area_g;
    ec.sgn = a.sgn;
    return ec;
}

inline std::vector<EdgeCurvature> compute_all_edge_curvatures(const VertexStar& star) {
    std::vector<EdgeCurvature> out;
    for (int i = 0; i < star.valence(); ++i)
        if (star.edge_interior(i)) out.push_back(compute_edge_curvature(star, i));
    return out;
}

// ---------------------------------------------------------------------------
// Vertex-based quantities
// ---------------------------------------------------------------------------

inline double angle_defect(const VertexStar& star) { return star_angle_defect(star); }

struct VertexAreaMean {
    double area = 0.0;  // A_p = 1/2 sum A_e (may be negative, reported as-is)
    double mean = 0.0;  // H_p = 1/2 sum H_e
};

inline VertexAreaMean vertex_area_and_mean(const std::vector<EdgeCurvature>& ecs, Variant variant) {
    VertexAreaMean r;
    for (const EdgeCurvature& ec : ecs) {
        r.area += 0.5 * ec.area;
        r.mean += 0.5 * ec.mean(variant);
    }
    return r;
}

struct AreaMaximizingChoice {
    bool umbilic = false;
    int family1 = -1;  // index into the EdgeCurvature list
    int family2 = -1;
    int single = -1;   // umbilic case
};

// Area-maximizing edge per family (or overall for umbilic vertices); ties go
// to the lowest edge id.
inline AreaMaximizingChoice select_area_maximizing(const VertexStar& star,
                                                   const std::vector<EdgeCurvature>& ecs) {
    AreaMaximizingChoice choice;
    choice.umbilic = star.point.umbilic;
    auto better = [&](int cand, int cur) {
        if (cur < 0) return true;
        if (ecs[cand].area > ecs[cur].area) return true;
        if (ecs[cand].area < ecs[cur].area) return false;
        return ecs[cand].edge_id < ecs[cur].edge_id;
    };
    for (int i = 0; i < static_cast<int>(ecs.size()); ++i) {
        if (choice.umbilic) {
            if (better(i, choice.single)) choice.single = i;
        } else if (ecs[i].family == 1) {
            if (better(i, choice.family1)) choice.family1 = i;
        } else {
            if (better(i, choice.family2)) choice.family2 = i;
        }
    }
    return choice;
}

struct PrincipalEstimates {
    double k1 = 0.0, k2 = 0.0;
    int edge_for_k2 = -1;  // edge id of the chosen family-1 edge
    int edge_for_k1 = -1;  // edge id of the chosen family-2 edge
};

// k2 = k_e / (2 A_e) over the chosen family-1 edge (the edge along v1 measures
// curvature orthogonal to itself), k1 analogously from the family-2 edge.
// Umbilic vertices report the single estimate as both.
inline PrincipalEstimates principal_estimates(const VertexStar& star,
                                              const std::vector<EdgeCurvature>& ecs,
                                              Variant variant) {
    AreaMaximizingChoice choice = select_area_maximizing(star, ecs);
    PrincipalEstimates pe;
    auto estimate = [&](int idx) {
        const EdgeCurvature& ec = ecs[idx];
        if (!(ec.area > 0.0))
            throw AreaPositivityError(
                "chosen area-maximizing edge has non-positive circumcentric area (vertex " +
                std::to_string(star.vertex_id) + "); sampling condition violated");
        return ec.k(variant) / (2.0 * ec.area);
    };
    if (choice.umbilic) {
        if (choice.single < 0) throw AreaPositivityError("umbilic vertex without interior edges");
        pe.k1 = pe.k2 = estimate(choice.single);
        pe.edge_for_k1 = pe.edge_for_k2 = ecs[choice.single].edge_id;
    } else {
        if (choice.family1 < 0 || choice.family2 < 0)
            throw AreaPositivityError("missing principal family among star edges (vertex " +
                                      std::to_string(star.vertex_id) + ")");
        pe.k2 = estimate(choice.family1);
        pe.k1 = estimate(choice.family2);
        pe.edge_for_k2 = ecs[choice.family1].edge_id;
        pe.edge_for_k1 = ecs[choice.family2].edge_id;
    }
    return pe;
}

struct VertexCurvature {
    int vertex_id = -1;
    double k1 = 0.0, k2 = 0.0;
    int edge_for_k1 = -1, edge_for_k2 = -1;
    double area = 0.0;          // A_p
    double mean = 0.0;          // H_p
    double angle_defect = 0.0;  // K_p
};

inline VertexCurvature compute_vertex_curvature(const VertexStar& star, Variant variant) {
    std::vector<EdgeCurvature> ecs = compute_all_edge_curvatures(star);
    PrincipalEstimates pe = principal_estimates(star, ecs, variant);
    VertexAreaMean am = vertex_area_and_mean(ecs, variant);
    VertexCurvature vc;
    vc.vertex_id = star.vertex_id;
    vc.k1 = pe.k1;
    vc.k2 = pe.k2;
    vc.edge_for_k1 = pe.edge_for_k1;
    vc.edge_for_k2 = pe.edge_for_k2;
    vc.area = am.area;
    vc.mean = am.mean;
    vc.angle_defect = angle_defect(star);
    return vc;
}

}  // namespace curvnet
