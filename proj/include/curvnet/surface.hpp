#pragma once

#include <cassert>
#include <functional>

#include "curvnet/core.hpp"

namespace curvnet {

// ---------------------------------------------------------------------------
// Parametric charts with analytic derivatives up to third order.
//
// Sign conventions used throughout the library:
//   * chart normals point outward for the closed built-ins (sphere, torus,
//     ellipsoids, cylinder) and along +z for plane / Monge patches;
//   * the shape operator is S = dn (derivative of the Gauss map), so a sphere
//     with outward normal has kappa = +1/R and a cylinder +1/r;
//   * principal curvatures are ordered kappa1 <= kappa2, and v1, v2, n = v1 x v2
//     form a right-handed Darboux frame.
// Under this convention the surface lies on the -n side of the tangent plane
// where curvatures are positive, i.e. the height of the surface measured
// along n is -(kappa1/2) x^2 - (kappa2/2) y^2 + O(r^3) in frame coordinates.
// ---------------------------------------------------------------------------

enum class ChartKind { Sphere, Plane, Cylinder, Revolution, TriaxialEllipsoid, MongePatch };

inline const char* chart_kind_name(ChartKind k) {
    switch (k) {
        case ChartKind::Sphere: return "sphere";
        case ChartKind::Plane: return "plane";
        case ChartKind::Cylinder: return "cylinder";
        case ChartKind::Revolution: return "revolution";
        case ChartKind::TriaxialEllipsoid: return "triaxial";
        case ChartKind::MongePatch: return "monge";
    }
    return "?";
}

struct Domain {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
    bool u_periodic = false;
    bool v_periodic = false;

    bool contains(const Vec2& p, double slack = 0.0) const {
        bool uin = u_periodic || (p.u >= u0 - slack && p.u <= u1 + slack);
        bool vin = v_periodic || (p.v >= v0 - slack && p.v <= v1 + slack);
        return uin && vin;
    }
    double u_extent() const { return u1 - u0; }
    double v_extent() const { return v1 - v0; }
};

// Position and partial derivatives at a parameter point.
struct Jet3 {
    Vec3 x;
    Vec3 xu, xv;
    Vec3 xuu, xuv, xvv;
    Vec3 xuuu, xuuv, xuvv, xvvv;
};

struct Rotation {
    // rows of the matrix
    Vec3 r0{1, 0, 0}, r1{0, 1, 0}, r2{0, 0, 1};

    Vec3 apply(const Vec3& v) const { return {dot(r0, v), dot(r1, v), dot(r2, v)}; }

    static Rotation about_axis(const Vec3& axis, double angle) {
        Vec3 a = normalized(axis);
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Rotation r;
        r.r0 = {t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y};
        r.r1 = {t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x};
        r.r2 = {t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c};
        return r;
    }
};

class SurfaceChart {
  public:
    static SurfaceChart sphere(double radius, double lat_band = 1.2) {
        SurfaceChart c;
        c.kind_ = ChartKind::Sphere;
        c.a_ = radius;
        c.dom_ = {0.0, kTwoPi, -lat_band, lat_band, true, false};
        return c;
    }

    static SurfaceChart plane(double half_extent = 1.0) {
        SurfaceChart c;
        c.kind_ = ChartKind::Plane;
        c.dom_ = {-half_extent, half_extent, -half_extent, half_extent, false, false};
        return c;
    }

    static SurfaceChart cylinder(double radius, double height) {
        SurfaceChart c;
        c.kind_ = ChartKind::Cylinder;
        c.a_ = radius;
        c.dom_ = {0.0, kTwoPi, 0.0, height, true, false};
        return c;
    }

    // Surface of revolution around the z axis with profile
    //   f(v) = p0 + p1*cos(v),  g(v) = p2*sin(v).
    static SurfaceChart revolution(double p0, double p1, double p2, double v_lo, double v_hi,
                                   bool v_periodic) {
        SurfaceChart c;
        c.kind_ = ChartKind::Revolution;
        c.p0_ = p0;
        c.p1_ = p1;
        c.p2_ = p2;
        c.dom_ = {0.0, kTwoPi, v_lo, v_hi, true, v_periodic};
        return c;
    }

    static SurfaceChart torus(double major, double minor) {
        return revolution(major, minor, minor, 0.0, kTwoPi, true);
    }

    static SurfaceChart ellipsoid_of_revolution(double equator, double polar,
                                                double lat_band = 1.2) {
        return revolution(0.0, equator, polar, -lat_band, lat_band, false);
    }

    static SurfaceChart triaxial_ellipsoid(double a, double b, double c, double lat_band = 1.2) {
        SurfaceChart ch;
        ch.kind_ = ChartKind::TriaxialEllipsoid;
        ch.a_ = a;
        ch.b_ = b;
        ch.c_ = c;
        ch.dom_ = {0.0, kTwoPi, -lat_band, lat_band, true, false};
        return ch;
    }

    // z = (kxx/2) x^2 + kxy x y + (kyy/2) y^2 + c30 x^3 + c21 x^2 y + c12 x y^2 + c03 y^3
    static SurfaceChart monge(double kxx, double kxy, double kyy, std::array<double, 4> cubic,
                              double half_extent) {
        SurfaceChart c;
        c.kind_ = ChartKind::MongePatch;
        c.quad_ = {kxx, kxy, kyy};
        c.cubic_ = cubic;
        c.dom_ = {-half_extent, half_extent, -half_extent, half_extent, false, false};
        return c;
    }

    ChartKind kind() const { return kind_; }
    const Domain& domain() const { return dom_; }
    void set_domain(const Domain& d) { dom_ = d; }

    double param(int i) const {
        switch (i) {
            case 0: return a_;
            case 1: return b_;
            case 2: return c_;
            default: return 0.0;
        }
    }
    const std::array<double, 3>& monge_quadratic() const { return quad_; }
    const std::array<double, 4>& monge_cubic() const { return cubic_; }
    std::array<double, 3> revolution_profile() const { return {p0_, p1_, p2_}; }

    bool supports_revolution_net() const {
        return kind_ == ChartKind::Sphere || kind_ == ChartKind::Cylinder ||
               kind_ == ChartKind::Revolution;
    }

    bool totally_umbilic() const {
        if (kind_ == ChartKind::Sphere || kind_ == ChartKind::Plane) return true;
        if (kind_ == ChartKind::MongePatch) {
            bool quad_umb = quad_[1] == 0.0 && quad_[0] == quad_[2];
            bool cubic_zero = cubic_[0] == 0.0 && cubic_[1] == 0.0 && cubic_[2] == 0.0 &&
                              cubic_[3] == 0.0;
            return quad_umb && cubic_zero;
        }
        return false;
    }

    // Isolated umbilic parameter points, where known in closed form.
    std::vector<Vec2> known_umbilics() const {
        std::vector<Vec2> r;
        if (kind_ == ChartKind::TriaxialEllipsoid && a_ > b_ && b_ > c_) {
            // umbilics lie in the x-z cross-section
            double sv = std::sqrt((b_ * b_ - c_ * c_) / (a_ * a_ - c_ * c_));
            double vs = std::asin(sv);
            r.push_back({0.0, vs});
            r.push_back({0.0, -vs});
            r.push_back({kPi, vs});
            r.push_back({kPi, -vs});
        }
        if (kind_ == ChartKind::MongePatch && quad_[1] == 0.0 && quad_[0] == quad_[2]) {
            r.push_back({0.0, 0.0});
        }
        return r;
    }

    SurfaceChart transformed(const Rotation& rot, const Vec3& shift, double scale = 1.0) const {
        SurfaceChart c = *this;
        // compose: new = scale * rot * old + shift, rows of (rot * rot_)
        Rotation comp;
        comp.r0 = {dot(rot.r0, col(rot_, 0)), dot(rot.r0, col(rot_, 1)), dot(rot.r0, col(rot_, 2))};
        comp.r1 = {dot(rot.r1, col(rot_, 0)), dot(rot.r1, col(rot_, 1)), dot(rot.r1, col(rot_, 2))};
        comp.r2 = {dot(rot.r2, col(rot_, 0)), dot(rot.r2, col(rot_, 1)), dot(rot.r2, col(rot_, 2))};
        c.rot_ = comp;
        c.shift_ = scale * rot.apply(shift_) + shift;
        c.scale_ = scale_ * scale;
        c.has_transform_ = true;
        return c;
    }

    Jet3 jet(double u, double v) const {
        Jet3 j = raw_jet(u, v);
        if (has_transform_) {
            auto tf = [&](const Vec3& p) { return scale_ * rot_.apply(p); };
            j.x = tf(j.x) + shift_;
            j.xu = tf(j.xu);
            j.xv = tf(j.xv);
            j.xuu = tf(j.xuu);
            j.xuv = tf(j.xuv);
            j.xvv = tf(j.xvv);
            j.xuuu = tf(j.xuuu);
            j.xuuv = tf(j.xuuv);
            j.xuvv = tf(j.xuvv);
            j.xvvv = tf(j.xvvv);
        }
        return j;
    }

    Vec3 position(const Vec2& uv) const { return jet(uv.u, uv.v).x; }

  private:
    static Vec3 col(const Rotation& r, int i) {
        if (i == 0) return {r.r0.x, r.r1.x, r.r2.x};
        if (i == 1) return {r.r0.y, r.r1.y, r.r2.y};
        return {r.r0.z, r.r1.z, r.r2.z};
    }

    Jet3 raw_jet(double u, double v) const {
        Jet3 j;
        double cu = std::cos(u), su = std::sin(u);
        double cv = std::cos(v), sv = std::sin(v);
        switch (kind_) {
            case ChartKind::Sphere: {
                double R = a_;
                j.x = {R * cv * cu, R * cv * su, R * sv};
                j.xu = {-R * cv * su, R * cv * cu, 0};
                j.xv = {-R * sv * cu, -R * sv * su, R * cv};
                j.xuu = {-R * cv * cu, -R * cv * su, 0};
                j.xuv = {R * sv * su, -R * sv * cu, 0};
                j.xvv = {-R * cv * cu, -R * cv * su, -R * sv};
                j.xuuu = {R * cv * su, -R * cv * cu, 0};
                j.xuuv = {R * sv * cu, R * sv * su, 0};
                j.xuvv = {R * cv * su, -R * cv * cu, 0};
                j.xvvv = {R * sv * cu, R * sv * su, -R * cv};
                break;
            }
            case ChartKind::Plane: {
                j.x = {u, v, 0};
                j.xu = {1, 0, 0};
                j.xv = {0, 1, 0};
                break;
            }
            case ChartKind::Cylinder: {
                double r = a_;
                j.x = {r * cu, r * su, v};
                j.xu = {-r * su, r * cu, 0};
                j.xv = {0, 0, 1};
                j.xuu = {-r * cu, -r * su, 0};
                j.xuuu = {r * su, -r * cu, 0};
                break;
            }
            case ChartKind::Revolution: {
                double f = p0_ + p1_ * cv, fp = -p1_ * sv, fpp = -p1_ * cv, fppp = p1_ * sv;
                double g = p2_ * sv, gp = p2_ * cv, gpp = -p2_ * sv, gppp = -p2_ * cv;
                j.x = {f * cu, f * su, g};
                j.xu = {-f * su, f * cu, 0};
                j.xv = {fp * cu, fp * su, gp};
                j.xuu = {-f * cu, -f * su, 0};
                j.xuv = {-fp * su, fp * cu, 0};
                j.xvv = {fpp * cu, fpp * su, gpp};
                j.xuuu = {f * su, -f * cu, 0};
                j.xuuv = {-fp * cu, -fp * su, 0};
                j.xuvv = {-fpp * su, fpp * cu, 0};
                j.xvvv = {fppp * cu, fppp * su, gppp};
                break;
            }
            case ChartKind::TriaxialEllipsoid: {
                double a = a_, b = b_, c = c_;
                j.x = {a * cv * cu, b * cv * su, c * sv};
                j.xu = {-a * cv * su, b * cv * cu, 0};
                j.xv = {-a * sv * cu, -b * sv * su, c * cv};
                j.xuu = {-a * cv * cu, -b * cv * su, 0};
                j.xuv = {a * sv * su, -b * sv * cu, 0};
                j.xvv = {-a * cv * cu, -b * cv * su, -c * sv};
                j.xuuu = {a * cv * su, -b * cv * cu, 0};
                j.xuuv = {a * sv * cu, b * sv * su, 0};
                j.xuvv = {a * cv * su, -b * cv * cu, 0};
                j.xvvv = {a * sv * cu, b * sv * su, -c * cv};
                break;
            }
            case ChartKind::MongePatch: {
                double kxx = quad_[0], kxy = quad_[1], kyy = quad_[2];
                double c30 = cubic_[0], c21 = cubic_[1], c12 = cubic_[2], c03 = cubic_[3];
                double h = 0.5 * kxx * u * u + kxy * u * v + 0.5 * kyy * v * v +
                           c30 * u * u * u + c21 * u * u * v + c12 * u * v * v + c03 * v * v * v;
                double hu = kxx * u + kxy * v + 3 * c30 * u * u + 2 * c21 * u * v + c12 * v * v;
                double hv = kxy * u + kyy * v + c21 * u * u + 2 * c12 * u * v + 3 * c03 * v * v;
                double huu = kxx + 6 * c30 * u + 2 * c21 * v;
                double huv = kxy + 2 * c21 * u + 2 * c12 * v;
                double hvv = kyy + 2 * c12 * u + 6 * c03 * v;
                j.x = {u, v, h};
                j.xu = {1, 0, hu};
                j.xv = {0, 1, hv};
                j.xuu = {0, 0, huu};
                j.xuv = {0, 0, huv};
                j.xvv = {0, 0, hvv};
                j.xuuu = {0, 0, 6 * c30};
                j.xuuv = {0, 0, 2 * c21};
                j.xuvv = {0, 0, 2 * c12};
                j.xvvv = {0, 0, 6 * c03};
                break;
            }
        }
        return j;
    }

    ChartKind kind_ = ChartKind::Plane;
    double a_ = 1.0, b_ = 1.0, c_ = 1.0;
    double p0_ = 0.0, p1_ = 1.0, p2_ = 1.0;
    std::array<double, 3> quad_{0, 0, 0};
    std::array<double, 4> cubic_{0, 0, 0, 0};
    Domain dom_;
    Rotation rot_;
    Vec3 shift_{0, 0, 0};
    double scale_ = 1.0;
    bool has_transform_ = false;
};

// ---------------------------------------------------------------------------
// Pointwise differential geometry
// ---------------------------------------------------------------------------

struct PointFrame {
    Vec3 t1, t2, n;  // orthonormal, n = t1 x t2
    Sym2 S;          // shape operator in the (t1, t2) basis, S = dn convention
};

inline PointFrame shape_operator(const SurfaceChart& chart, const Vec2& uv) {
    Jet3 j = chart.jet(uv.u, uv.v);
    double E = dot(j.xu, j.xu), F = dot(j.xu, j.xv), G = dot(j.xv, j.xv);
    double det = E * G - F * F;
    double scale2 = std::max(E, G);
    if (!(det > 1e-18 * std::max(scale2 * scale2, 1e-300)))
        throw ImmersionError("degenerate metric at (" + format_double(uv.u) + ", " +
                             format_double(uv.v) + ")");

    PointFrame fr;
    fr.n = normalized(cross(j.xu, j.xv));
    double L = dot(j.xuu, fr.n), M = dot(j.xuv, fr.n), N = dot(j.xvv, fr.n);

    fr.t1 = j.xu / std::sqrt(E);
    Vec3 t2raw = j.xv - (F / E) * j.xu;
    double D = norm(t2raw);
    fr.t2 = t2raw / D;

    // coordinates of t1, t2 in the (xu, xv) basis
    double w1u = 1.0 / std::sqrt(E), w1v = 0.0;
    double w2u = -F / (E * D), w2v = 1.0 / D;

    auto II = [&](double au, double av, double bu, double bv) {
        return au * (L * bu + M * bv) + av * (M * bu + N * bv);
    };
    // S = dn, hence the matrix of S as a bilinear form is -II
    fr.S.a = -II(w1u, w1v, w1u, w1v);
    fr.S.b = -0.5 * (II(w1u, w1v, w2u, w2v) + II(w2u, w2v, w1u, w1v));
    fr.S.c = -II(w2u, w2v, w2u, w2v);
    return fr;
}

struct SurfacePointData {
    Vec2 uv;
    Vec3 position;
    Vec3 v1, v2, n;          // Darboux frame, n = v1 x v2
    double kappa1 = 0.0;     // kappa1 <= kappa2
    double kappa2 = 0.0;
    double delta_kappa = 0.0;  // kappa2 - kappa1
    bool umbilic = false;
    double kg1 = 0.0;        // geodesic curvature of the principal line along v1
    double kg2 = 0.0;        // ... along v2
};

// |delta_kappa| below this multiple of the local curvature scale flags an
// umbilic; far below any experiment's delta_kappa scale.
inline constexpr double kUmbilicRelTol = 1e-8;

namespace detail {

// Parameter velocity (du, dv) with xu*du + xv*dv = w for tangent w.
inline Vec2 parameter_velocity(const Jet3& j, const Vec3& w) {
    double E = dot(j.xu, j.xu), F = dot(j.xu, j.xv), G = dot(j.xv, j.xv);
    double du, dv;
    if (!solve2x2(E, F, F, G, dot(j.xu, w), dot(j.xv, w), du, dv))
        throw ImmersionError("degenerate metric in parameter_velocity");
    return {du, dv};
}

inline SurfacePointData eval_point_impl(const SurfaceChart& chart, const Vec2& uv,
                                        bool with_geodesic);

// Principal direction of `family` at uv, sign-aligned with `align`.
inline Vec3 principal_dir_aligned(const SurfaceChart& chart, const Vec2& uv, int family,
                                  const Vec3& align) {
    SurfacePointData pd = eval_point_impl(chart, uv, false);
    Vec3 d = (family == 1) ? pd.v1 : pd.v2;
    if (dot(d, align) < 0.0) d = -d;
    return d;
}

inline SurfacePointData eval_point_impl(const SurfaceChart& chart, const Vec2& uv,
                                        bool with_geodesic) {
    PointFrame fr = shape_operator(chart, uv);
    Jet3 j = chart.jet(uv.u, uv.v);

    SurfacePointData p;
    p.uv = uv;
    p.position = j.x;
    p.n = fr.n;

    Eigen2 eg = sym2_eigen(fr.S);
    p.kappa1 = eg.lambda1;
    p.kappa2 = eg.lambda2;
    p.delta_kappa = p.kappa2 - p.kappa1;
    double kscale = std::max(std::abs(p.kappa1), std::abs(p.kappa2));
    p.umbilic = std::abs(p.delta_kappa) <= kUmbilicRelTol * kscale + 1e-14;

    if (p.umbilic) {
        // deterministic fallback: v1 along the du direction
        p.v1 = fr.t1;
    } else {
        p.v1 = eg.c1 * fr.t1 + eg.s1 * fr.t2;
        // deterministic sign rule on the 2-d eigenvector components
        if (std::abs(eg.c1) >= std::abs(eg.s1)) {
            if (eg.c1 < 0.0) p.v1 = -p.v1;
        } else if (eg.s1 < 0.0) {
            p.v1 = -p.v1;
        }
    }
    p.v2 = cross(p.n, p.v1);

    if (with_geodesic && !p.umbilic) {
        const double h = 1e-4;  // intrinsic step, fixed for reproducibility
        for (int fam = 1; fam <= 2; ++fam) {
            Vec3 dir = (fam == 1) ? p.v1 : p.v2;
            Vec2 vel = parameter_velocity(j, dir);
            Vec2 qp = {uv.u + h * vel.u, uv.v + h * vel.v};
            Vec2 qm = {uv.u - h * vel.u, uv.v - h * vel.v};
            Vec3 dp = principal_dir_aligned(chart, qp, fam, dir);
            Vec3 dm = principal_dir_aligned(chart, qm, fam, dir);
            Vec3 deriv = (dp - dm) / (2.0 * h);
            Vec3 side = cross(p.n, dir);
            double kg = dot(deriv, side);
            if (fam == 1)
                p.kg1 = kg;
            else
                p.kg2 = kg;
        }
    }
    return p;
}

}  // namespace detail

inline SurfacePointData eval_point(const SurfaceChart& chart, const Vec2& uv,
                                   bool with_geodesic = true) {
    return detail::eval_point_impl(chart, uv, with_geodesic);
}

// Height of the osculating paraboloid P(x, y) = (kappa1/2) x^2 + (kappa2/2) y^2.
inline double osculating_height(const SurfacePointData& p, double x, double y) {
    return 0.5 * p.kappa1 * x * x + 0.5 * p.kappa2 * y * y;
}

// Principal direction of the requested family as a vector (line field with the
// sign disambiguated by `previous`).
inline Vec3 principal_direction_field(const SurfaceChart& chart, const Vec2& uv, int family,
                                      const std::optional<Vec3>& previous = std::nullopt) {
    SurfacePointData p = eval_point(chart, uv, false);
    if (p.umbilic && !previous)
        throw UmbilicAmbiguityError("principal direction undefined at umbilic without a previous direction");
    Vec3 d = (family == 1) ? p.v1 : p.v2;
    if (previous && dot(d, *previous) < 0.0) d = -d;
    return d;
}

// ---------------------------------------------------------------------------
// Global curvature bounds K (normal curvature) and K' (its derivative)
// ---------------------------------------------------------------------------

struct SurfaceBounds {
    double K = 0.0;       // >= sup |kappa_i|, operator norm bound for S
    double Kprime = 0.0;  // >= sup ||grad_v S||op over unit v
    int grid_density = 0;
};

namespace detail {

// Shape operator expressed in the frame obtained by projecting (t1, t2) from
// a nearby base point onto the tangent plane at q; the projected frame is
// parallel to first order, so central differences of these matrices converge
// to the covariant derivative of S.
inline Sym2 shape_in_projected_frame(const SurfaceChart& chart, const Vec2& q, const Vec3& t1,
                                     const Vec3& t2) {
    PointFrame fq = shape_operator(chart, q);
    Vec3 e1 = normalized(t1 - dot(t1, fq.n) * fq.n);
    Vec3 e2raw = t2 - dot(t2, fq.n) * fq.n;
    e2raw = e2raw - dot(e2raw, e1) * e1;
    Vec3 e2 = normalized(e2raw);
    auto comp = [&](const Vec3& w) { return Vec2{dot(w, fq.t1), dot(w, fq.t2)}; };
    Vec2 c1 = comp(e1), c2 = comp(e2);
    auto SofQ = [&](const Vec2& a, const Vec2& b) {
        return a.u * (fq.S.a * b.u + fq.S.b * b.v) + a.v * (fq.S.b * b.u + fq.S.c * b.v);
    };
    Sym2 m;
    m.a = SofQ(c1, c1);
    m.b = 0.5 * (SofQ(c1, c2) + SofQ(c2, c1));
    m.c = SofQ(c2, c2);
    return m;
}

}  // namespace detail

inline SurfaceBounds estimate_bounds(const SurfaceChart& chart, int grid_density = 48) {
    if (grid_density < 32) throw ConfigError("estimate_bounds: grid density must be >= 32");
    const Domain& d = chart.domain();
    const double fd_step = 1e-4;      // intrinsic step for grad S
    const double safety = 1.05;       // guards grid-maximum underestimation
    const int n_dirs = 8;

    double maxK = 0.0, maxKp = 0.0;
    int nu = grid_density, nv = grid_density;
    for (int i = 0; i <= nu; ++i) {
        if (d.u_periodic && i == nu) continue;
        double u = d.u0 + d.u_extent() * i / nu;
        for (int k = 0; k <= nv; ++k) {
            if (d.v_periodic && k == nv) continue;
            double v = d.v0 + d.v_extent() * k / nv;
            PointFrame fr = shape_operator(chart, {u, v});
            Jet3 j = chart.jet(u, v);
            maxK = std::max(maxK, fr.S.op_norm());
            for (int t = 0; t < n_dirs; ++t) {
                double th = kPi * t / n_dirs;
                Vec3 dir = std::cos(th) * fr.t1 + std::sin(th) * fr.t2;
                Vec2 vel = detail::parameter_velocity(j, dir);
                Vec2 qp = {u + fd_step * vel.u, v + fd_step * vel.v};
                Vec2 qm = {u - fd_step * vel.u, v - fd_step * vel.v};
                Sym2 sp = detail::shape_in_projected_frame(chart, qp, fr.t1, fr.t2);
                Sym2 sm = detail::shape_in_projected_frame(chart, qm, fr.t1, fr.t2);
                Sym2 ds{(sp.a - sm.a) / (2 * fd_step), (sp.b - sm.b) / (2 * fd_step),
                        (sp.c - sm.c) / (2 * fd_step)};
                maxKp = std::max(maxKp, ds.op_norm());
            }
        }
    }
    SurfaceBounds b;
    b.K = safety * maxK;
    b.Kprime = safety * maxKp;
    b.grid_density = grid_density;
    return b;
}

}  // namespace curvnet
