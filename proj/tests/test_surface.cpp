#include <doctest.h>

#include "curvnet/config.hpp"
#include "curvnet/surface.hpp"

using namespace curvnet;

namespace {

// finite-difference consistency of the analytic jets
void check_jets(const SurfaceChart& chart, const Vec2& uv) {
    const double h = 1e-5;
    Jet3 j = chart.jet(uv.u, uv.v);
    auto fd = [&](auto get, double du, double dv) {
        Vec3 p = get(chart.jet(uv.u + h * du, uv.v + h * dv));
        Vec3 m = get(chart.jet(uv.u - h * du, uv.v - h * dv));
        return (p - m) / (2 * h);
    };
    auto pos = [](const Jet3& q) { return q.x; };
    auto xu = [](const Jet3& q) { return q.xu; };
    auto xv = [](const Jet3& q) { return q.xv; };
    auto xuu = [](const Jet3& q) { return q.xuu; };
    auto xuv = [](const Jet3& q) { return q.xuv; };
    auto xvv = [](const Jet3& q) { return q.xvv; };
    double scale = 1.0 + norm(j.xu) + norm(j.xv);
    CHECK(norm(fd(pos, 1, 0) - j.xu) < 1e-8 * scale);
    CHECK(norm(fd(pos, 0, 1) - j.xv) < 1e-8 * scale);
    CHECK(norm(fd(xu, 1, 0) - j.xuu) < 1e-7 * scale);
    CHECK(norm(fd(xu, 0, 1) - j.xuv) < 1e-7 * scale);
    CHECK(norm(fd(xv, 0, 1) - j.xvv) < 1e-7 * scale);
    CHECK(norm(fd(xuu, 1, 0) - j.xuuu) < 1e-6 * scale);
    CHECK(norm(fd(xuu, 0, 1) - j.xuuv) < 1e-6 * scale);
    CHECK(norm(fd(xuv, 0, 1) - j.xuvv) < 1e-6 * scale);
    CHECK(norm(fd(xvv, 0, 1) - j.xvvv) < 1e-6 * scale);
}

std::vector<SurfaceChart> builtin_charts() {
    return {SurfaceChart::sphere(2.0),
            SurfaceChart::plane(1.5),
            SurfaceChart::cylinder(0.8, 2.0),
            SurfaceChart::torus(2.0, 0.5),
            SurfaceChart::ellipsoid_of_revolution(1.3, 0.9, 1.2),
            SurfaceChart::triaxial_ellipsoid(2.0, 1.5, 1.0, 1.2),
            SurfaceChart::monge(0.5, 0.1, -0.3, {0.05, -0.02, 0.03, 0.01}, 1.0)};
}

Vec2 random_domain_point(const SurfaceChart& chart, SplitMix64& rng) {
    const Domain& d = chart.domain();
    return {rng.uniform(d.u0, d.u1), rng.uniform(d.v0, d.v1)};
}

}  // namespace

TEST_CASE("analytic jets match finite differences on all chart families") {
    SplitMix64 rng(11);
    for (const SurfaceChart& chart : builtin_charts())
        for (int i = 0; i < 25; ++i) check_jets(chart, random_domain_point(chart, rng));
}

TEST_CASE("sphere is totally umbilic with kappa = 1/R") {
    SurfaceChart s = SurfaceChart::sphere(2.0);
    SplitMix64 rng(3);
    for (int i = 0; i < 50; ++i) {
        SurfacePointData p = eval_point(s, random_domain_point(s, rng));
        CHECK(p.kappa1 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.kappa2 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.umbilic);
        // outward normal
        CHECK(dot(p.n, p.position) > 0);
    }
}

TEST_CASE("cylinder principal curvatures and outward frame") {
    SurfaceChart c = SurfaceChart::cylinder(1.0, 1.0);
    SurfacePointData p = eval_point(c, {0.7, 0.4});
    CHECK(p.kappa1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p.kappa2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(p.umbilic);
    // v1 axial, v2 circumferential, n radial outward
    CHECK(std::abs(p.v1.z) == doctest::Approx(1.0));
    CHECK(std::abs(p.v2.z) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(dot(p.n, Vec3{std::cos(0.7), std::sin(0.7), 0.0}) == doctest::Approx(1.0));
    // axial curvature lines are geodesics, and so are the circles
    CHECK(std::abs(p.kg1) < 1e-10);
    CHECK(std::abs(p.kg2) < 1e-10);
}

TEST_CASE("triaxial ellipsoid pole curvatures") {
    // (a, b, c) = (2, 1.5, 1) at the pole (0, 0, 1): c/a^2 and c/b^2
    SurfaceChart e = SurfaceChart::triaxial_ellipsoid(2.0, 1.5, 1.0, kPi / 2);
    SurfacePointData p = eval_point(e, {0.25, kPi / 2 - 1e-6});
    CHECK(p.kappa1 == doctest::Approx(0.25).epsilon(1e-5));
    CHECK(p.kappa2 == doctest::Approx(1.0 / 2.25).epsilon(1e-5));
}

TEST_CASE("torus curvatures and parallel geodesic curvature in closed form") {
    SurfaceChart t = SurfaceChart::torus(2.0, 0.5);
    SplitMix64 rng(5);
    for (int i = 0; i < 40; ++i) {
        Vec2 uv = random_domain_point(t, rng);
        SurfacePointData p = eval_point(t, uv);
        double f = 2.0 + 0.5 * std::cos(uv.v);
        CHECK(p.kappa1 == doctest::Approx(std::cos(uv.v) / f).epsilon(1e-10));
        CHECK(p.kappa2 == doctest::Approx(2.0).epsilon(1e-10));
        // parallels are the kappa1 family; their geodesic curvature is sin v / f
        CHECK(p.kg1 == doctest::Approx(std::sin(uv.v) / f).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("frame orthonormality and eigen residuals on random points") {
    SplitMix64 rng(17);
    for (const SurfaceChart& chart : builtin_charts()) {
        double K_scale = 0.0;
        for (int i = 0; i < 10500; ++i) {
            Vec2 uv = random_domain_point(chart, rng);
            SurfacePointData p = eval_point(chart, uv, false);
            CHECK(std::abs(dot(p.v1, p.v2)) < 1e-12);
            CHECK(std::abs(norm(p.v1) - 1) < 1e-12);
            CHECK(std::abs(norm(p.v2) - 1) < 1e-12);
            CHECK(norm(cross(p.v1, p.v2) - p.n) < 1e-12);
            // S v_i = kappa_i v_i in the frame basis
            PointFrame fr = shape_operator(chart, uv);
            K_scale = std::max({K_scale, std::abs(p.kappa1), std::abs(p.kappa2)});
            auto apply = [&](const Vec3& w) {
                double c1 = dot(w, fr.t1), c2 = dot(w, fr.t2);
                return (fr.S.a * c1 + fr.S.b * c2) * fr.t1 + (fr.S.b * c1 + fr.S.c * c2) * fr.t2;
            };
            if (!p.umbilic) {
                CHECK(norm(apply(p.v1) - p.kappa1 * p.v1) <= 1e-9 * (1.0 + K_scale));
                CHECK(norm(apply(p.v2) - p.kappa2 * p.v2) <= 1e-9 * (1.0 + K_scale));
            }
        }
    }
}

TEST_CASE("directional derivative of kappa matches finite differences (torus closed form)") {
    SurfaceChart t = SurfaceChart::torus(2.0, 0.5);
    // d kappa1 / dv analytically: kappa1 = cos v / (R + r cos v)
    auto dk1_dv = [](double v) {
        double f = 2.0 + 0.5 * std::cos(v);
        return (-std::sin(v) * f - std::cos(v) * (-0.5 * std::sin(v))) / (f * f);
    };
    for (double v : {0.4, 1.1, 2.5, 4.0}) {
        const double h = 1e-4;
        double fd = (eval_point(t, {0.3, v + h}, false).kappa1 -
                     eval_point(t, {0.3, v - h}, false).kappa1) /
                    (2 * h);
        CHECK(fd == doctest::Approx(dk1_dv(v)).epsilon(1e-5));
    }
}

TEST_CASE("rigid motion equivariance") {
    SplitMix64 rng(23);
    Rotation rot = Rotation::about_axis({0.3, -0.5, 0.8}, 1.1);
    Vec3 shift{0.4, -2.0, 1.0};
    for (const SurfaceChart& chart : builtin_charts()) {
        SurfaceChart moved = chart.transformed(rot, shift);
        for (int i = 0; i < 30; ++i) {
            Vec2 uv = random_domain_point(chart, rng);
            SurfacePointData p = eval_point(chart, uv, false);
            SurfacePointData q = eval_point(moved, uv, false);
            CHECK(std::abs(p.kappa1 - q.kappa1) < 1e-10 * (1 + std::abs(p.kappa1)));
            CHECK(std::abs(p.kappa2 - q.kappa2) < 1e-10 * (1 + std::abs(p.kappa2)));
            CHECK(norm(q.position - (rot.apply(p.position) + shift)) < 1e-12 * (1 + norm(p.position)));
            CHECK(norm(q.n - rot.apply(p.n)) < 1e-10);
            if (!p.umbilic) {
                // principal directions map as lines
                CHECK(norm(cross(q.v1, rot.apply(p.v1))) < 1e-9);
            }
        }
    }
}

TEST_CASE("scaling covariance of curvatures and bounds") {
    SurfaceChart t = SurfaceChart::torus(2.0, 0.5);
    double lambda = 2.5;
    SurfaceChart scaled = t.transformed(Rotation{}, Vec3{0, 0, 0}, lambda);
    SurfacePointData p = eval_point(t, {0.4, 1.0}, false);
    SurfacePointData q = eval_point(scaled, {0.4, 1.0}, false);
    CHECK(q.kappa1 == doctest::Approx(p.kappa1 / lambda).epsilon(1e-12));
    CHECK(q.kappa2 == doctest::Approx(p.kappa2 / lambda).epsilon(1e-12));
    SurfaceBounds b = estimate_bounds(t, 32);
    SurfaceBounds bs = estimate_bounds(scaled, 32);
    CHECK(bs.K == doctest::Approx(b.K / lambda).epsilon(1e-6));
    CHECK(bs.Kprime == doctest::Approx(b.Kprime / (lambda * lambda)).epsilon(1e-4));
}

TEST_CASE("osculating paraboloid height") {
    SurfacePointData flat;
    flat.kappa1 = 0;
    flat.kappa2 = 0;
    CHECK(osculating_height(flat, 0.7, -1.2) == 0.0);
    SurfacePointData p;
    p.kappa1 = 1;
    p.kappa2 = 2;
    CHECK(osculating_height(p, 1, 1) == doctest::Approx(1.5));
    SurfacePointData s = eval_point(SurfaceChart::sphere(2.0), {0.3, 0.1}, false);
    CHECK(osculating_height(s, 0.1, 0.0) == doctest::Approx(0.0025));
}

TEST_CASE("estimate_bounds on closed-form surfaces") {
    SurfaceBounds s = estimate_bounds(SurfaceChart::sphere(1.0), 32);
    CHECK(s.K == doctest::Approx(1.05).epsilon(1e-9));
    CHECK(s.Kprime < 1e-6);
    SurfaceBounds c = estimate_bounds(SurfaceChart::cylinder(0.5, 1.0), 32);
    CHECK(c.K == doctest::Approx(2.0 * 1.05).epsilon(1e-9));
    // torus: max |kappa| = 1/r = 2
    SurfaceBounds t = estimate_bounds(SurfaceChart::torus(2.0, 0.5), 48);
    CHECK(t.K == doctest::Approx(2.0 * 1.05).epsilon(1e-6));
    CHECK_THROWS_AS(estimate_bounds(SurfaceChart::sphere(1.0), 16), ConfigError);
}

TEST_CASE("K and K' dominate sampled curvatures and their derivatives") {
    SplitMix64 rng(31);
    for (const SurfaceChart& chart :
         {SurfaceChart::torus(2.0, 0.5), SurfaceChart::triaxial_ellipsoid(2.0, 1.5, 1.0, 1.1)}) {
        SurfaceBounds b = estimate_bounds(chart, 48);
        const double h = 1e-4;
        for (int i = 0; i < 300; ++i) {
            Vec2 uv = random_domain_point(chart, rng);
            SurfacePointData p = eval_point(chart, uv, false);
            CHECK(std::max(std::abs(p.kappa1), std::abs(p.kappa2)) <= b.K * (1 + 1e-9));
            if (p.umbilic || std::abs(p.delta_kappa) < 1e-3) continue;
            // |grad_v kappa_i| along principal directions
            Jet3 j = chart.jet(uv.u, uv.v);
            for (int fam = 1; fam <= 2; ++fam) {
                Vec3 dir = fam == 1 ? p.v1 : p.v2;
                Vec2 vel = detail::parameter_velocity(j, dir);
                auto k_of = [&](const Vec2& q, int which) {
                    SurfacePointData pd = eval_point(chart, q, false);
                    return which == 1 ? pd.kappa1 : pd.kappa2;
                };
                for (int which = 1; which <= 2; ++which) {
                    double gk = (k_of({uv.u + h * vel.u, uv.v + h * vel.v}, which) -
                                 k_of({uv.u - h * vel.u, uv.v - h * vel.v}, which)) /
                                (2 * h);
                    CHECK(std::abs(gk) <= b.Kprime * (1 + 1e-6) + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("principal_direction_field sign continuity and umbilic error") {
    SurfaceChart c = SurfaceChart::cylinder(1.0, 1.0);
    Vec3 up = principal_direction_field(c, {0.3, 0.5}, 1, Vec3{0, 0, 1});
    CHECK(norm(up - Vec3{0, 0, 1}) < 1e-14);
    Vec3 down = principal_direction_field(c, {0.3, 0.5}, 1, Vec3{0, 0, -1});
    CHECK(norm(down - Vec3{0, 0, -1}) < 1e-14);
    SurfaceChart s = SurfaceChart::sphere(1.0);
    CHECK_THROWS_AS(principal_direction_field(s, {0.3, 0.5}, 1), UmbilicAmbiguityError);
    CHECK_NOTHROW(principal_direction_field(s, {0.3, 0.5}, 1, Vec3{0, 0, 1}));
    // ellipsoid generic point: matches a brute-force eigen decomposition
    SurfaceChart e = SurfaceChart::triaxial_ellipsoid(2.0, 1.5, 1.0, 1.1);
    Vec2 uv{0.9, 0.3};
    Vec3 d1 = principal_direction_field(e, uv, 1);
    PointFrame fr = shape_operator(e, uv);
    Eigen2 eg = sym2_eigen(fr.S);
    Vec3 expect = eg.c1 * fr.t1 + eg.s1 * fr.t2;
    CHECK(norm(cross(d1, expect)) < 1e-10);
}

TEST_CASE("degenerate metric raises immersion error") {
    // sphere pole: the parameterization degenerates at v = pi/2
    SurfaceChart s = SurfaceChart::sphere(1.0, kPi / 2);
    CHECK_THROWS_AS(eval_point(s, {0.0, kPi / 2}), ImmersionError);
}

TEST_CASE("surface_from_config builds every documented kind") {
    auto cfg = KeyValueConfig::parse_string("kind = torus\nmajor_radius = 2\nminor_radius = 0.5\n");
    CHECK(surface_from_config(cfg).kind() == ChartKind::Revolution);
    cfg = KeyValueConfig::parse_string("kind = sphere\nradius = 1\n");
    CHECK(surface_from_config(cfg).totally_umbilic());
    cfg = KeyValueConfig::parse_string("kind = monge_star\n");
    SurfaceChart star = surface_from_config(cfg);
    CHECK(star.kind() == ChartKind::MongePatch);
    CHECK(star.known_umbilics().size() == 1);
    CHECK_THROWS_AS(surface_from_config(KeyValueConfig::parse_string("kind = blob\n")), ConfigError);
}
