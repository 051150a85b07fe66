// Acceptance suite: every quantitative requirement is asserted here at its
// stated tolerance, one pass/fail line per criterion.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "curvnet/harness.hpp"
#include "test_helpers.hpp"

using namespace curvnet;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt_slope(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", s);
    return buf;
}

// criterion 1: exact cylinder oracle
void criterion_1() {
    VertexStar star = curvnet::testing::cylinder_star(0.2, 0.1);
    auto ecs = compute_all_edge_curvatures(star);
    PrincipalEstimates pe = principal_estimates(star, ecs, Variant::Sin);
    double theta_axial = ecs[0].theta;
    double area_axial = ecs[0].area;
    double theta_chord = ecs[1].theta;
    bool ok = std::abs(theta_axial - 0.2) <= 1e-12 &&
              std::abs(area_axial - 0.1 * std::sin(0.1)) <= 1e-12 &&
              std::abs(pe.k2 - 1.0) <= 1e-10 && std::abs(theta_chord) <= 1e-12 &&
              std::abs(pe.k1) <= 1e-12;
    std::ostringstream d;
    d << "cylinder dtheta=0.2 h=0.1: theta=" << format_double(theta_axial)
      << " A_e=" << format_double(area_axial) << " k2=" << format_double(pe.k2)
      << " k1=" << format_double(pe.k1);
    report(1, ok, d.str());
}

// criteria 2, 3, 7 share the three refinement sweeps
std::vector<std::pair<std::string, SweepResult>> run_sweeps() {
    std::vector<std::pair<std::string, SweepResult>> out;
    auto add = [&](const std::string& name, SurfaceChart chart, std::vector<int> levels) {
        ExperimentConfig cfg;
        cfg.chart = std::move(chart);
        cfg.strategy = NetStrategy::Revolution;
        cfg.levels = std::move(levels);
        cfg.dense_factor = 4;
        cfg.seed = 7;
        out.push_back({name, run_refinement(cfg, false)});
    };
    add("ellipsoid_rev(1.3,1.3,0.9)", SurfaceChart::ellipsoid_of_revolution(1.3, 0.9, 1.2),
        {24, 48, 96, 192});
    add("torus(2,0.5)", SurfaceChart::torus(2.0, 0.5), {48, 96, 192, 384});
    add("sphere(1)", SurfaceChart::sphere(1.0), {24, 48, 96, 192});
    return out;
}

void criterion_2(const std::vector<std::pair<std::string, SweepResult>>& sweeps) {
    bool ok = true;
    std::ostringstream d;
    double torus_min_slope = 1e300;
    for (const auto& [name, sweep] : sweeps) {
        d << name << ":";
        for (Variant v : kAllVariants) {
            for (int i = 1; i <= 2; ++i) {
                double slope;
                try {
                    slope = fit_rate(sweep.records, v, i).slope;
                } catch (const FitUnavailableError&) {
                    ok = false;
                    d << " k" << i << "(" << variant_name(v) << ")=unavailable";
                    continue;
                }
                if (slope < 0.8 || slope > 2.2) ok = false;
                if (name.rfind("torus", 0) == 0) torus_min_slope = std::min(torus_min_slope, slope);
                if (v == Variant::Sin) d << " k" << i << "=" << fmt_slope(slope);
            }
        }
        d << "  ";
    }
    if (!(torus_min_slope <= 1.3)) ok = false;
    d << "torus min slope " << fmt_slope(torus_min_slope) << " <= 1.3";
    report(2, ok, "log-log slopes in [0.8, 2.2], all variants: " + d.str());
}

void criterion_3(const std::vector<std::pair<std::string, SweepResult>>& sweeps) {
    int violations = 0;
    long checks_run = 0;
    for (const auto& [name, sweep] : sweeps) {
        for (const ConvergenceRecord& r : sweep.records) {
            violations += r.violations;
            checks_run += static_cast<long>(bound_check_names().size()) * r.vertices - r.skips;
        }
    }
    std::ostringstream d;
    d << "bound suite on all sweep levels: " << violations << " violations, "
      << checks_run << " checks evaluated";
    report(3, violations == 0 && checks_run > 0, d.str());
}

void criterion_4() {
    SplitMix64 rng(20240817);
    int n = 100000;
    double worst_norm = 0, worst_perp = 0, worst_area = 0;
    bool signs_ok = true;
    for (int i = 0; i < n; ++i) {
        VertexStar hinge = curvnet::testing::random_hinge(rng);
        EdgeCurvature ec = compute_edge_curvature(hinge, 1);
        double len = norm(hinge.edges[1].vec);
        double expect = 2.0 * std::abs(std::sin(0.5 * ec.theta)) * len;
        worst_norm = std::max(worst_norm, std::abs(norm(ec.kvec) - expect) / (1 + expect));
        worst_perp = std::max(worst_perp,
                              std::abs(dot(ec.kvec, hinge.edges[1].vec)) / ((1 + norm(ec.kvec)) * len));
        UnfoldedArea u = circumcentric_area_unfolded(hinge.edges[1].vec, hinge.edges[2].vec,
                                                     hinge.edges[0].vec);
        worst_area = std::max(worst_area, std::abs(u.area - ec.area) / (1 + std::abs(ec.area)));
        // Delaunay sign rule: sgn(*e) = +1 iff alpha + beta < pi
        if (std::abs(ec.alpha + ec.beta - kPi) > 1e-9) {
            int want = ec.alpha + ec.beta < kPi ? 1 : -1;
            if (u.sgn != want || ec.sgn != want) signs_ok = false;
        }
    }
    bool ok = worst_norm <= 1e-10 && worst_perp <= 1e-10 && worst_area <= 1e-10 && signs_ok;
    std::ostringstream d;
    d << n << " random hinges: max |k|-mismatch " << format_double(worst_norm)
      << ", max k.e " << format_double(worst_perp) << ", max cot-vs-unfolded "
      << format_double(worst_area) << ", sign rule " << (signs_ok ? "consistent" : "VIOLATED");
    report(4, ok, d.str());
}

void criterion_5() {
    SurfaceChart t = SurfaceChart::torus(2.0, 0.5);
    SurfaceBounds b = estimate_bounds(t, 48);
    SplitMix64 rng(555);
    int tested = 0;
    double worst = 0;
    bool ok = true;
    while (tested < 100) {
        Vec2 uv{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
        GeodesicIdentityCheck g = check_geodesic_identity(t, uv, b, 1 + tested % 2);
        if (g.status == CheckStatus::Skip) continue;
        ++tested;
        worst = std::max(worst, g.rel_err);
        if (g.status != CheckStatus::Pass) ok = false;
    }
    std::ostringstream d;
    d << "torus geodesic identity at 100 random points: worst relative error "
      << format_double(worst) << " <= 1e-3";
    report(5, ok && worst <= 1e-3, d.str());
}

void criterion_6() {
    bool ok = true;
    std::ostringstream d;
    for (UmbilicPattern pat :
         {UmbilicPattern::Lemon, UmbilicPattern::Star, UmbilicPattern::Monstar}) {
        ExperimentConfig cfg;
        cfg.chart = umbilic_model_chart(pat);
        cfg.strategy = NetStrategy::Umbilic;
        cfg.pattern = pat;
        cfg.levels = {4, 8, 16, 32};
        cfg.sectors = 3;
        cfg.outer_radius = 0.35;
        cfg.seed = 7;
        SweepResult sweep = umbilic_experiment(cfg, false);
        double prev_rho = 0.0;
        bool rho_monotone = true;
        for (const ConvergenceRecord& r : sweep.records) {
            if (!r.valid) ok = false;
            if (r.rho_max < prev_rho * (1 - 1e-9)) rho_monotone = false;
            prev_rho = std::max(prev_rho, r.rho_max);
        }
        double s1 = fit_rate(sweep.records, Variant::Sin, 1).slope;
        double s2 = fit_rate(sweep.records, Variant::Sin, 2).slope;
        if (s1 < 0.8 || s2 < 0.8 || !rho_monotone) ok = false;
        d << pattern_name(pat) << ": k1 " << fmt_slope(s1) << ", k2 " << fmt_slope(s2)
          << ", rho_max " << fmt_slope(sweep.records.back().rho_max)
          << (rho_monotone ? " (non-decreasing)  " : " (DECREASING)  ");
    }
    report(6, ok, "near-umbilic slopes >= 0.8 with rho blow-up: " + d.str());
}

void criterion_7(const std::vector<std::pair<std::string, SweepResult>>& sweeps) {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [name, sweep] : sweeps) {
        double prev = -1;
        for (const ConvergenceRecord& r : sweep.records) {
            if (!r.valid) continue;
            if (prev >= 0 && r.variant_spread_ratio > prev * 1.5 + 1e-12) ok = false;
            prev = r.variant_spread_ratio;
        }
        d << name << " final spread/eps^2 = " << format_double(prev) << "  ";
    }
    report(7, ok, "variant estimates differ by O(eps^2): " + d.str());
}

void criterion_8() {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "curvnet_acceptance_det";
    std::error_code ec;
    fs::remove_all(base, ec);
    auto run = [&](const fs::path& dir) {
        ExperimentConfig cfg;
        cfg.chart = SurfaceChart::torus(2.0, 0.5);
        cfg.strategy = NetStrategy::Revolution;
        cfg.levels = {16, 32, 64};
        cfg.seed = 7;
        cfg.out_dir = dir.string();
        SweepResult sweep = run_refinement(cfg);
        export_sweep(sweep, cfg);
    };
    run(base / "run1");
    run(base / "run2");
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    bool ok = true;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(base / "run1")) {
        ++files;
        std::string a = slurp(entry.path());
        std::string b = slurp(base / "run2" / entry.path().filename());
        if (a.empty() || a != b) ok = false;
    }
    std::ostringstream d;
    d << "two identical converge runs (seed 7): " << files << " output files byte-identical";
    report(8, ok && files > 0, d.str());
    fs::remove_all(base, ec);
}

}  // namespace

int main() {
    try {
        criterion_1();
        auto sweeps = run_sweeps();
        criterion_2(sweeps);
        criterion_3(sweeps);
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7(sweeps);
        criterion_8();
    } catch (const std::exception& ex) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", ex.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria passed"
                                        : "acceptance: FAILURES present");
    return g_failures == 0 ? 0 : 1;
}
