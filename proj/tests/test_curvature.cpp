#include <doctest.h>

#include "curvnet/netgen.hpp"
#include "test_helpers.hpp"

using namespace curvnet;
using curvnet::testing::cylinder_star;
using curvnet::testing::planar_star;
using curvnet::testing::random_hinge;

TEST_CASE("dihedral angles on canonical stars") {
    VertexStar flat = planar_star(1.0, 1.0);
    for (int i = 0; i < 4; ++i) CHECK(dihedral_angle(flat, i) == doctest::Approx(0.0));

    VertexStar cyl = cylinder_star(0.2, 0.1);
    CHECK(dihedral_angle(cyl, 0) == doctest::Approx(0.2).epsilon(1e-14));  // axial edge
    CHECK(dihedral_angle(cyl, 2) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(dihedral_angle(cyl, 1) == doctest::Approx(0.0));  // chord edge: coplanar strips
    CHECK(dihedral_angle(cyl, 3) == doctest::Approx(0.0));
}

TEST_CASE("integrated edge curvature variants") {
    for (Variant v : kAllVariants) CHECK(integrated_edge_curvature(0.0, 1.0, v) == 0.0);
    CHECK(integrated_edge_curvature(kPi / 2, 1.0, Variant::Angle) == doctest::Approx(kPi / 2));
    CHECK(integrated_edge_curvature(kPi / 2, 1.0, Variant::Sin) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(integrated_edge_curvature(kPi / 2, 1.0, Variant::Tan) == doctest::Approx(2.0));
    // variant ordering for theta in (0, pi)
    SplitMix64 rng(9);
    for (int i = 0; i < 200; ++i) {
        double th = rng.uniform(1e-6, kPi - 1e-3);
        double a = integrated_edge_curvature(th, 1.0, Variant::Angle);
        double s = integrated_edge_curvature(th, 1.0, Variant::Sin);
        double t = integrated_edge_curvature(th, 1.0, Variant::Tan);
        CHECK(s <= a);
        CHECK(a <= t);
        // Taylor remainders
        if (th <= 1.0) {
            CHECK(std::abs(th - 2 * std::sin(th / 2)) <= th * th * th / 24.0 * (1 + 1e-6));
            CHECK(std::abs(2 * std::tan(th / 2) - th) <= th * th * th / 8.0 * (1 + 1e-6));
        }
    }
    CHECK_THROWS_AS(integrated_edge_curvature(kPi - 1e-9, 1.0, Variant::Tan),
                    VariantOverflowError);
}

TEST_CASE("curvature vector via the two quarter rotations") {
    // e = (1,0,0), f = (0,1,0): J_f e = f
    Vec3 e{1, 0, 0}, f{0, 1, 0};
    Vec3 jf = (norm2(e) * f - dot(f, e) * e) / norm(cross(e, f));
    CHECK(norm(jf - f) < 1e-15);

    VertexStar flat = planar_star(1.0, 1.0);
    CHECK(norm(curvature_vector(flat, 0)) < 1e-15);

    VertexStar cyl = cylinder_star(0.2, 0.1);
    Vec3 k = curvature_vector(cyl, 0);
    CHECK(norm(k) == doctest::Approx(2 * std::sin(0.1) * 0.1).epsilon(1e-12));
    // parallel to the surface normal (pointing toward the bending center)
    CHECK(norm(cross(k, cyl.point.n)) < 1e-10);
    CHECK(std::abs(dot(k, cyl.edges[0].vec)) < 1e-15);
}

TEST_CASE("circumcentric areas on canonical stars") {
    // planar unit square lattice: A_e = 1/2 per edge (alpha = beta = 45 deg)
    VertexStar flat = planar_star(1.0, 1.0);
    CircumcentricArea a = circumcentric_area(flat, 0);
    CHECK(a.area == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.alpha == doctest::Approx(kPi / 4));
    CHECK(a.beta == doctest::Approx(kPi / 4));
    CHECK(a.sgn == 1);

    // planar equilateral lattice of side s: A_e = s^2 / (2 sqrt(3))
    {
        SurfaceChart pl = SurfaceChart::plane(10.0);
        SurfacePointData p = eval_point(pl, {0.0, 0.0});
        double s = 0.7;
        std::vector<StarEdge> edges(6);
        for (int i = 0; i < 6; ++i) {
            double ang = i * kPi / 3;
            edges[i].vec = {s * std::cos(ang), s * std::sin(ang), 0};
            edges[i].family = 1 + i % 2;
            edges[i].intrinsic_length = s;
            edges[i].edge_id = i;
        }
        VertexStar hexa = make_star(p, edges);
        CircumcentricArea ae = circumcentric_area(hexa, 0);
        CHECK(ae.area == doctest::Approx(s * s / (2 * std::sqrt(3.0))).epsilon(1e-14));
    }

    // cylinder axial edge: A_e = h sin(dtheta/2), right angles at the center
    VertexStar cyl = cylinder_star(0.2, 0.1);
    CircumcentricArea ac = circumcentric_area(cyl, 0);
    CHECK(ac.area == doctest::Approx(0.1 * std::sin(0.1)).epsilon(1e-14));
    CHECK(ac.area_f == doctest::Approx(ac.area_g).epsilon(1e-12));
}

TEST_CASE("A_e = A_ef + A_eg and triangle decomposition") {
    SplitMix64 rng(77);
    for (int i = 0; i < 500; ++i) {
        VertexStar hinge = random_hinge(rng);
        CircumcentricArea a = circumcentric_area(hinge, 1);
        CHECK(a.area == doctest::Approx(a.area_f + a.area_g).epsilon(1e-12));
        // the three signed circumcentric shares of one triangle sum to its area
        const Vec3& e = hinge.edges[1].vec;
        const Vec3& f = hinge.edges[2].vec;
        double cf = norm(cross(e, f));
        double share_e = dot(f, f - e) * norm2(e) / (4 * cf);
        double share_f = dot(e, e - f) * norm2(f) / (4 * cf);
        double share_far = dot(e, f) * norm2(f - e) / (4 * cf);
        CHECK(share_e + share_f + share_far == doctest::Approx(0.5 * cf).epsilon(1e-10));
    }
}

TEST_CASE("cot-formula area agrees with the unfolded dual-edge construction") {
    SplitMix64 rng(123);
    for (int i = 0; i < 20000; ++i) {
        VertexStar hinge = random_hinge(rng);
        CircumcentricArea a = circumcentric_area(hinge, 1);
        UnfoldedArea u = circumcentric_area_unfolded(hinge.edges[1].vec, hinge.edges[2].vec,
                                                     hinge.edges[0].vec);
        CHECK(std::abs(a.area - u.area) <= 1e-10 * (1 + std::abs(a.area)));
        // Delaunay sign rule: positive iff alpha + beta < pi
        if (std::abs(a.alpha + a.beta - kPi) > 1e-9) {
            CHECK(u.sgn == (a.alpha + a.beta < kPi ? 1 : -1));
            CHECK(a.sgn == u.sgn);
        }
    }
}

TEST_CASE("curvature vector norm matches the sin variant on random hinges") {
    SplitMix64 rng(321);
    for (int i = 0; i < 20000; ++i) {
        VertexStar hinge = random_hinge(rng);
        EdgeCurvature ec = compute_edge_curvature(hinge, 1);
        CHECK(norm(ec.kvec) ==
              doctest::Approx(std::abs(ec.k_sin)).epsilon(1e-10).scale(1.0 + norm(ec.kvec)));
        CHECK(std::abs(dot(ec.kvec, hinge.edges[1].vec)) <=
              1e-10 * (1 + norm(ec.kvec)) * norm(hinge.edges[1].vec));
    }
}

TEST_CASE("angle defect") {
    CHECK(angle_defect(planar_star(1.0, 1.0)) == doctest::Approx(0.0).epsilon(1e-14));
    // cube corner: three right angles
    SurfaceChart pl = SurfaceChart::plane(10.0);
    SurfacePointData p = eval_point(pl, {0.0, 0.0});
    p.n = normalized(Vec3{1, 1, 1});
    p.v1 = normalized(Vec3{1, -1, 0});
    p.v2 = cross(p.n, p.v1);
    std::vector<StarEdge> edges(3);
    edges[0].vec = {1, 0, 0};
    edges[1].vec = {0, 1, 0};
    edges[2].vec = {0, 0, 1};
    for (int i = 0; i < 3; ++i) {
        edges[i].family = 1 + i % 2;
        edges[i].intrinsic_length = 1.0;
        edges[i].edge_id = i;
    }
    VertexStar corner = make_star(p, edges);
    CHECK(angle_defect(corner) == doctest::Approx(kPi / 2).epsilon(1e-13));
}

TEST_CASE("vertex area and mean curvature") {
    // planar square lattice spacing s: A_p = s^2, H_p = 0
    double s = 0.8;
    VertexStar flat = planar_star(s, s);
    auto ecs = compute_all_edge_curvatures(flat);
    VertexAreaMean am = vertex_area_and_mean(ecs, Variant::Sin);
    CHECK(am.area == doctest::Approx(s * s).epsilon(1e-13));
    CHECK(am.mean == doctest::Approx(0.0));
    // cylinder star
    VertexStar cyl = cylinder_star(0.2, 0.1);
    auto cecs = compute_all_edge_curvatures(cyl);
    VertexAreaMean cam = vertex_area_and_mean(cecs, Variant::Sin);
    CHECK(cam.mean == doctest::Approx(0.5 * 2 * std::sin(0.1) * 0.1).epsilon(1e-12));
    CHECK(cam.area == doctest::Approx(2 * 0.1 * std::sin(0.1)).epsilon(1e-12));
}

TEST_CASE("negative circumcentric areas are reported, not clamped") {
    // hinge with alpha + beta > pi: short neighbors whose tips sit past the
    // midpoint of a long edge make both opposing angles obtuse
    SurfaceChart pl = SurfaceChart::plane(10.0);
    SurfacePointData p = eval_point(pl, {0.0, 0.0});
    std::vector<StarEdge> edges(3);
    edges[0].vec = {0.5, -0.15, 0};  // g
    edges[1].vec = {1.0, 0, 0};      // e
    edges[2].vec = {0.5, 0.15, 0};   // f
    for (int i = 0; i < 3; ++i) {
        edges[i].family = 1 + i % 2;
        edges[i].intrinsic_length = norm(edges[i].vec);
        edges[i].edge_id = i;
    }
    VertexStar star = make_star(p, edges, false);
    CircumcentricArea a = circumcentric_area(star, 1);
    CHECK(a.alpha + a.beta > kPi);
    CHECK(a.area < 0.0);
    CHECK(a.sgn == -1);
    UnfoldedArea u = circumcentric_area_unfolded(edges[1].vec, edges[2].vec, edges[0].vec);
    CHECK(u.sgn == -1);
    CHECK(std::abs(u.area - a.area) < 1e-12);
}

TEST_CASE("area-maximizing selection and tie breaking") {
    VertexStar cyl = cylinder_star(0.2, 0.1);
    auto ecs = compute_all_edge_curvatures(cyl);
    AreaMaximizingChoice c = select_area_maximizing(cyl, ecs);
    CHECK_FALSE(c.umbilic);
    // all four areas tie; lowest edge id wins per family
    CHECK(ecs[c.family1].edge_id == 0);
    CHECK(ecs[c.family2].edge_id == 1);
    // umbilic star: single global maximum
    SurfaceChart sph = SurfaceChart::sphere(2.0);
    SurfacePointData sp = eval_point(sph, {0.3, 0.2});
    REQUIRE(sp.umbilic);
    std::vector<StarEdge> edges(4);
    edges[0].vec = 0.10 * sp.v1;
    edges[1].vec = 0.20 * sp.v2;
    edges[2].vec = -0.10 * sp.v1;
    edges[3].vec = -0.20 * sp.v2;
    for (int i = 0; i < 4; ++i) {
        edges[i].vec = edges[i].vec - 0.5 * norm2(edges[i].vec) * sp.n;
        edges[i].family = 1 + i % 2;
        edges[i].intrinsic_length = norm(edges[i].vec) * 1.001;
        edges[i].edge_id = i;
    }
    VertexStar ustar = make_star(sp, edges);
    auto uecs = compute_all_edge_curvatures(ustar);
    AreaMaximizingChoice uc = select_area_maximizing(ustar, uecs);
    CHECK(uc.umbilic);
    double best = -1e300;
    for (auto& ec : uecs) best = std::max(best, ec.area);
    CHECK(uecs[uc.single].area == doctest::Approx(best));
}

TEST_CASE("principal estimates: plane, cylinder exact, sphere refining") {
    {
        auto ecs = compute_all_edge_curvatures(planar_star(1.0, 1.0));
        PrincipalEstimates pe = principal_estimates(planar_star(1.0, 1.0), ecs, Variant::Sin);
        CHECK(pe.k1 == doctest::Approx(0.0));
        CHECK(pe.k2 == doctest::Approx(0.0));
    }
    {
        VertexStar cyl = cylinder_star(0.2, 0.1);
        auto ecs = compute_all_edge_curvatures(cyl);
        PrincipalEstimates pe = principal_estimates(cyl, ecs, Variant::Sin);
        CHECK(pe.k2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pe.k1 == doctest::Approx(0.0));
    }
    {
        // sphere R = 2: estimate approaches 0.5 linearly in the star size
        SurfaceChart s = SurfaceChart::sphere(2.0);
        double prev_err = 1e300;
        for (double step : {0.2, 0.1, 0.05}) {
            CurvatureLineNet net = revolution_net(s, (int)std::lround(kTwoPi / step), 9);
            double worst = 0;
            for (const NetVertex& v : net.vertices) {
                if (v.boundary || std::abs(v.uv.v) > 1e-9) continue;
                VertexStar star = build_star(net, v.id);
                auto ecs = compute_all_edge_curvatures(star);
                PrincipalEstimates pe = principal_estimates(star, ecs, Variant::Sin);
                worst = std::max({worst, std::abs(pe.k1 - 0.5), std::abs(pe.k2 - 0.5)});
            }
            CHECK(worst < prev_err);
            prev_err = worst;
        }
        CHECK(prev_err < 2e-3);
    }
}

TEST_CASE("non-positive chosen area raises area-positivity error") {
    SurfaceChart pl = SurfaceChart::plane(10.0);
    SurfacePointData p = eval_point(pl, {0.0, 0.0});
    // non-umbilic point data so the selection runs per family
    p.kappa1 = -1.0;
    p.kappa2 = 1.0;
    p.delta_kappa = 2.0;
    p.umbilic = false;
    // valence-6 planar star whose two family-1 edges are both sandwiched by
    // short close neighbors (alpha + beta > pi -> negative area)
    auto polar = [](double len, double deg) {
        double a = deg * kPi / 180.0;
        return Vec3{len * std::cos(a), len * std::sin(a), 0.0};
    };
    std::vector<StarEdge> edges(6);
    edges[0].vec = polar(1.0, 0);       // family 1, negative area
    edges[1].vec = polar(0.522, 16.7);  // close neighbor
    edges[2].vec = polar(0.522, 163.3);
    edges[3].vec = polar(1.0, 180);     // family 1, negative area
    edges[4].vec = polar(0.522, 196.7);
    edges[5].vec = polar(0.522, 343.3);
    int families[6] = {1, 2, 2, 1, 2, 2};
    for (int i = 0; i < 6; ++i) {
        edges[i].family = families[i];
        edges[i].intrinsic_length = norm(edges[i].vec);
        edges[i].edge_id = i;
    }
    VertexStar star = make_star(p, edges);
    auto ecs = compute_all_edge_curvatures(star);
    bool family1_negative = true;
    for (auto& ec : ecs)
        if (ec.family == 1) family1_negative &= ec.area < 0;
    CHECK(family1_negative);
    // the family-2 side has positive areas and the maximum is the one chosen
    AreaMaximizingChoice choice = select_area_maximizing(star, ecs);
    double best2 = -1e300;
    for (auto& ec : ecs)
        if (ec.family == 2) best2 = std::max(best2, ec.area);
    CHECK(best2 > 0);
    CHECK(ecs[choice.family2].area == doctest::Approx(best2));
    CHECK_THROWS_AS(principal_estimates(star, ecs, Variant::Sin), AreaPositivityError);
}

TEST_CASE("rigid motion invariance and scaling covariance of edge quantities") {
    SplitMix64 rng(55);
    Rotation rot = Rotation::about_axis({1, 2, 3}, 0.8);
    for (int trial = 0; trial < 200; ++trial) {
        VertexStar hinge = random_hinge(rng);
        EdgeCurvature ec = compute_edge_curvature(hinge, 1);

        VertexStar moved = hinge;
        for (StarEdge& e : moved.edges) e.vec = rot.apply(e.vec);
        moved.point.v1 = rot.apply(moved.point.v1);
        moved.point.v2 = rot.apply(moved.point.v2);
        moved.point.n = rot.apply(moved.point.n);
        EdgeCurvature em = compute_edge_curvature(moved, 1);
        CHECK(em.theta == doctest::Approx(ec.theta).epsilon(1e-10));
        CHECK(em.area == doctest::Approx(ec.area).epsilon(1e-9));
        CHECK(norm(em.kvec - rot.apply(ec.kvec)) < 1e-10 * (1 + norm(ec.kvec)));

        double lambda = 1.0 + rng.uniform(0.0, 3.0);
        VertexStar scaled = hinge;
        for (StarEdge& e : scaled.edges) {
            e.vec = lambda * e.vec;
            e.intrinsic_length *= lambda;
        }
        EdgeCurvature es = compute_edge_curvature(scaled, 1);
        CHECK(es.theta == doctest::Approx(ec.theta).epsilon(1e-10));
        CHECK(es.k_sin == doctest::Approx(lambda * ec.k_sin).epsilon(1e-10));
        CHECK(es.area == doctest::Approx(lambda * lambda * ec.area).epsilon(1e-9));
        CHECK(angle_defect(scaled) == doctest::Approx(angle_defect(hinge)).epsilon(1e-9));
    }
}

TEST_CASE("boundary edge has no second face") {
    SplitMix64 rng(2);
    VertexStar hinge = random_hinge(rng);
    CHECK_THROWS_AS(dihedral_angle(hinge, 0), NoSecondFaceError);
    CHECK_THROWS_AS(circumcentric_area(hinge, 2), NoSecondFaceError);
}
