#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "curvnet/umbilic.hpp"
#include "curvnet/verify.hpp"

namespace curvnet {

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

enum class NetStrategy { Revolution, Traced, Umbilic };

inline const char* strategy_name(NetStrategy s) {
    switch (s) {
        case NetStrategy::Revolution: return "revolution";
        case NetStrategy::Traced: return "traced";
        case NetStrategy::Umbilic: return "umbilic";
    }
    return "?";
}

struct ExperimentConfig {
    SurfaceChart chart;
    NetStrategy strategy = NetStrategy::Revolution;
    std::vector<int> levels;  // meridian counts (revolution), grid sizes (traced), rings (umbilic)
    Variant variant = Variant::Sin;
    int dense_factor = 4;
    std::string out_dir = "out";
    uint64_t seed = 0;
    int bounds_density = 48;

    // umbilic strategy
    UmbilicPattern pattern = UmbilicPattern::Lemon;
    int sectors = 3;
    double outer_radius = 0.35;

    // traced strategy
    Vec2 traced_center{0.0, 0.0};
    double traced_span = 0.8;

    void validate() const {
        if (levels.size() < 2) throw ConfigError("need at least 2 refinement levels for rate fitting");
        if (dense_factor < 4) throw ConfigError("dense-sample factor must be >= 4");
        for (size_t i = 1; i < levels.size(); ++i)
            if (levels[i] <= levels[i - 1]) throw ConfigError("levels must strictly increase");
    }
};

inline ExperimentConfig experiment_from_config(const KeyValueConfig& cfg) {
    ExperimentConfig ec;
    ec.chart = surface_from_config(cfg);
    std::string strat = cfg.get_string("strategy", "revolution");
    if (strat == "revolution")
        ec.strategy = NetStrategy::Revolution;
    else if (strat == "traced")
        ec.strategy = NetStrategy::Traced;
    else if (strat == "umbilic")
        ec.strategy = NetStrategy::Umbilic;
    else
        throw ConfigError("unknown strategy: " + strat);
    ec.levels = cfg.get_int_list("levels");
    ec.variant = variant_from_string(cfg.get_string("variant", "sin"));
    ec.dense_factor = cfg.get_int("dense_factor", 4);
    ec.out_dir = cfg.get_string("out", "out");
    ec.seed = static_cast<uint64_t>(cfg.get_double("seed", 0));
    ec.bounds_density = cfg.get_int("bounds_density", 48);
    if (cfg.has("pattern")) ec.pattern = pattern_from_string(cfg.get_string("pattern"));
    ec.sectors = cfg.get_int("sectors", 3);
    ec.outer_radius = cfg.get_double("outer_radius", 0.35);
    ec.traced_center = {cfg.get_double("center_u", 0.0), cfg.get_double("center_v", 0.0)};
    ec.traced_span = cfg.get_double("patch_span", 0.8);
    ec.validate();
    return ec;
}

inline std::string resolve_out_dir(const std::string& dir) {
    const char* root = std::getenv("CURVNET_OUT_ROOT");
    if (root && root[0] != '\0' && !std::filesystem::path(dir).is_absolute())
        return (std::filesystem::path(root) / dir).string();
    return dir;
}

// ---------------------------------------------------------------------------
// Net construction per refinement level
// ---------------------------------------------------------------------------

inline CurvatureLineNet build_level_net(const ExperimentConfig& cfg, int density) {
    switch (cfg.strategy) {
        case NetStrategy::Revolution: {
            const Domain& d = cfg.chart.domain();
            double v_mid = 0.5 * (d.v0 + d.v1);
            auto u_speed = [&](double u) {
                Jet3 j = cfg.chart.jet(u, v_mid);
                return norm(j.xu);
            };
            double u_mid = 0.5 * (d.u0 + d.u1);
            auto v_speed = [&](double v) {
                Jet3 j = cfg.chart.jet(u_mid, v);
                return norm(j.xv);
            };
            double u_arc = adaptive_simpson(u_speed, d.u0, d.u1, 1e-10);
            double v_arc = adaptive_simpson(v_speed, d.v0, d.v1, 1e-10);
            int n_par = static_cast<int>(std::lround(density * v_arc / u_arc));
            n_par = std::max(d.v_periodic ? 3 : 4, n_par);
            return revolution_net(cfg.chart, density, n_par);
        }
        case NetStrategy::Traced: {
            SeedGrid grid;
            grid.center = cfg.traced_center;
            grid.n_rows = grid.n_cols = density;
            grid.row_spacing = grid.col_spacing = cfg.traced_span / (density - 1);
            TraceConfig tc;
            tc.step = std::min(1e-3, grid.row_spacing / 24.0);
            tc.sample_spacing = tc.step;
            return traced_net(cfg.chart, grid, tc);
        }
        case NetStrategy::Umbilic: {
            TraceConfig tc;
            return umbilic_net(cfg.chart, cfg.pattern, density, cfg.sectors, cfg.outer_radius, tc);
        }
    }
    throw ConfigError("unreachable strategy");
}

// ---------------------------------------------------------------------------
// Convergence records and rate fitting
// ---------------------------------------------------------------------------

struct ConvergenceRecord {
    int level = 0;
    int density = 0;
    double eps_max = 0.0;  // max l(e) over the vertices entering the sup error
    double rho_max = 0.0;
    // sup |k_i - kappa_i| for each variant (angle, sin, tan) and i = 1, 2
    std::array<std::array<double, 2>, 3> sup_err{};
    double variant_spread_ratio = 0.0;  // max pairwise estimate difference / eps^2
    int violations = 0;
    int skips = 0;
    int vertices = 0;
    bool coverage_ok = true;
    double coverage_worst = 0.0;
    bool valid = true;
    std::string failure;
    double wall_ms = 0.0;  // reported on stdout only, never serialized

    double sup_for(Variant v, int i) const {
        return sup_err[static_cast<size_t>(v)][static_cast<size_t>(i - 1)];
    }
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of log-space residuals
    int points = 0;
    std::string warnings;
};

// Least-squares slope of log(sup error) against log(eps). Levels flagged
// invalid or with bound violations are excluded; exact zeros are excluded with
// a warning.
inline RateFit fit_rate(const std::vector<ConvergenceRecord>& records, Variant variant, int i) {
    std::vector<double> xs, ys;
    RateFit fit;
    for (const ConvergenceRecord& r : records) {
        if (!r.valid || r.violations > 0) continue;
        double err = r.sup_for(variant, i);
        if (err == 0.0) {
            fit.warnings += "level " + std::to_string(r.level) + " has exactly zero error, excluded; ";
            continue;
        }
        xs.push_back(std::log(r.eps_max));
        ys.push_back(std::log(err));
    }
    if (xs.size() < 2) throw FitUnavailableError("fewer than 2 usable levels for rate fitting");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) throw FitUnavailableError("degenerate abscissae in rate fit");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (size_t k = 0; k < xs.size(); ++k)
        ss += sqr(ys[k] - (fit.intercept + fit.slope * xs[k]));
    fit.residual = std::sqrt(ss / n);
    fit.points = static_cast<int>(xs.size());
    return fit;
}

// ---------------------------------------------------------------------------
// Per-level evaluation
// ---------------------------------------------------------------------------

struct VertexRow {
    int vertex_id = -1;
    Vec2 uv;
    double eps = 0.0, rho = 1.0;
    double angle_defect = 0.0, area = 0.0, mean = 0.0;
    std::array<std::array<double, 2>, 3> k{};  // per variant, per i
    double kappa1 = 0.0, kappa2 = 0.0;
    int edge_for_k1 = -1, edge_for_k2 = -1;
    bool sampling_ok = false;
};

struct LevelData {
    CurvatureLineNet net;
    std::vector<VertexRow> rows;          // interior vertices only
    std::vector<BoundReport> reports;     // one per interior vertex
    std::unordered_map<int, size_t> row_of_vertex;
};

namespace detail {

// ambient hash grid for nearest-vertex queries
class VertexLocator {
  public:
    VertexLocator(const std::vector<Vec3>& pts, double cell) : pts_(pts), cell_(std::max(cell, 1e-12)) {
        for (size_t i = 0; i < pts.size(); ++i) grid_[key(pts[i])].push_back(static_cast<int>(i));
    }

    int nearest(const Vec3& p, double& best_d) const {
        best_d = 1e300;
        int best = -1;
        auto [cx, cy, cz] = cell_of(p);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = grid_.find(pack(cx + dx, cy + dy, cz + dz));
                    if (it == grid_.end()) continue;
                    for (int i : it->second) {
                        double d = distance(pts_[i], p);
                        if (d < best_d) {
                            best_d = d;
                            best = i;
                        }
                    }
                }
        if (best < 0) {  // sparse region: fall back to a full scan
            for (size_t i = 0; i < pts_.size(); ++i) {
                double d = distance(pts_[i], p);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(i);
                }
            }
        }
        return best;
    }

  private:
    std::tuple<long long, long long, long long> cell_of(const Vec3& p) const {
        return {static_cast<long long>(std::floor(p.x / cell_)),
                static_cast<long long>(std::floor(p.y / cell_)),
                static_cast<long long>(std::floor(p.z / cell_))};
    }
    long long key(const Vec3& p) const {
        auto [x, y, z] = cell_of(p);
        return pack(x, y, z);
    }
    static long long pack(long long x, long long y, long long z) {
        return (x * 73856093LL) ^ (y * 19349663LL) ^ (z * 83492791LL);
    }

    const std::vector<Vec3>& pts_;
    double cell_;
    std::unordered_map<long long, std::vector<int>> grid_;
};

}  // namespace detail

// Stars, curvature estimates (all three variants), and bound reports for the
// interior vertices of a net.
inline LevelData evaluate_net(CurvatureLineNet net, const SurfaceBounds& bounds) {
    LevelData data;
    data.net = std::move(net);
    for (const NetVertex& v : data.net.vertices) {
        if (v.boundary) continue;
        VertexStar star = build_star(data.net, v.id);
        StarMetrics metrics = star_metrics(star, bounds);
        std::vector<EdgeCurvature> ecs = compute_all_edge_curvatures(star);

        VertexRow row;
        row.vertex_id = v.id;
        row.uv = v.uv;
        row.eps = metrics.eps;
        row.rho = metrics.rho;
        row.angle_defect = metrics.angle_defect;
        row.kappa1 = v.point.kappa1;
        row.kappa2 = v.point.kappa2;
        row.sampling_ok = metrics.sampling_ok;
        for (Variant var : kAllVariants) {
            PrincipalEstimates pe = principal_estimates(star, ecs, var);
            row.k[static_cast<size_t>(var)] = {pe.k1, pe.k2};
            if (var == Variant::Sin) {
                row.edge_for_k1 = pe.edge_for_k1;
                row.edge_for_k2 = pe.edge_for_k2;
            }
        }
        VertexAreaMean am = vertex_area_and_mean(ecs, Variant::Sin);
        row.area = am.area;
        row.mean = am.mean;
        data.row_of_vertex[v.id] = data.rows.size();
        data.rows.push_back(row);
        data.reports.push_back(verify_vertex(star, metrics, bounds));
    }
    return data;
}

// ---------------------------------------------------------------------------
// Refinement sweep with the nearest-vertex (Voronoi) extension
// ---------------------------------------------------------------------------

struct SweepResult {
    std::vector<ConvergenceRecord> records;
    SurfaceBounds bounds;
    std::vector<LevelData> levels;  // retained for exports
};

namespace detail {

inline void sup_errors_by_extension(const ExperimentConfig& cfg, const SurfaceBounds& bounds,
                                    const LevelData& data, int density, ConvergenceRecord& rec,
                                    SplitMix64& rng) {
    const Domain& dom = data.net.chart.domain();
    double eps_max = 0.0;
    for (const VertexRow& r : data.rows) eps_max = std::max(eps_max, r.eps);

    std::vector<Vec3> pts;
    std::vector<size_t> row_idx;
    for (size_t i = 0; i < data.rows.size(); ++i) {
        pts.push_back(data.net.vertices[data.rows[i].vertex_id].position);
        row_idx.push_back(i);
    }
    detail::VertexLocator locator(pts, std::max(eps_max, 1e-9));
    std::vector<Vec3> boundary_pts;
    for (const NetVertex& v : data.net.vertices)
        if (v.boundary) boundary_pts.push_back(v.position);
    std::optional<detail::VertexLocator> boundary_locator;
    if (!boundary_pts.empty())
        boundary_locator.emplace(boundary_pts, std::max(eps_max, 1e-9));

    int nu = cfg.dense_factor * density;
    int nv = static_cast<int>(std::lround(nu * dom.v_extent() / dom.u_extent()));
    nv = std::max(nv, 4 * cfg.dense_factor);
    double du = dom.u_extent() / nu, dv = dom.v_extent() / nv;

    std::array<std::array<double, 2>, 3> sup{};
    double coverage_worst = 0.0;
    bool coverage_ok = true;
    for (int i = 0; i < nu; ++i) {
        for (int k = 0; k < nv; ++k) {
            double ju = rng.uniform(-0.3, 0.3), jv = rng.uniform(-0.3, 0.3);
            Vec2 uv{dom.u0 + (i + 0.5 + ju) * du, dom.v0 + (k + 0.5 + jv) * dv};
            SurfacePointData sp = eval_point(data.net.chart, uv, false);
            double chord;
            int hit = locator.nearest(sp.position, chord);
            if (hit < 0) continue;
            // samples in a boundary vertex's Voronoi cell are excluded, like
            // the boundary vertices themselves
            if (boundary_locator) {
                double bd;
                boundary_locator->nearest(sp.position, bd);
                if (bd < chord) continue;
            }
            const VertexRow& row = data.rows[row_idx[hit]];
            double intrinsic = chord * (1.0 + sqr(bounds.K * chord) / 24.0);
            coverage_worst = std::max(coverage_worst, intrinsic);
            if (intrinsic > eps_max * (1.0 + 1e-9)) coverage_ok = false;
            for (Variant var : kAllVariants) {
                size_t vi = static_cast<size_t>(var);
                sup[vi][0] = std::max(sup[vi][0], std::abs(row.k[vi][0] - sp.kappa1));
                sup[vi][1] = std::max(sup[vi][1], std::abs(row.k[vi][1] - sp.kappa2));
            }
        }
    }
    rec.sup_err = sup;
    rec.coverage_ok = coverage_ok;
    rec.coverage_worst = coverage_worst;
    rec.eps_max = eps_max;
}

}  // namespace detail

inline ConvergenceRecord evaluate_level(const ExperimentConfig& cfg, const SurfaceBounds& bounds,
                                        int level_index, int density, LevelData& out_data) {
    ConvergenceRecord rec;
    rec.level = level_index;
    rec.density = density;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CurvatureLineNet net = build_level_net(cfg, density);
        out_data = evaluate_net(std::move(net), bounds);
        double rho_max = 0.0;
        for (const VertexRow& r : out_data.rows) rho_max = std::max(rho_max, r.rho);
        rec.rho_max = rho_max;
        rec.vertices = static_cast<int>(out_data.rows.size());
        for (const BoundReport& rep : out_data.reports) {
            rec.violations += rep.count(CheckStatus::Fail);
            rec.skips += rep.count(CheckStatus::Skip);
        }
        // variant spread at equal vertices, normalized by eps^2
        double eps_max = 0.0;
        for (const VertexRow& r : out_data.rows) eps_max = std::max(eps_max, r.eps);
        double spread = 0.0;
        for (const VertexRow& r : out_data.rows)
            for (int i = 0; i < 2; ++i)
                for (size_t a = 0; a < 3; ++a)
                    for (size_t b = a + 1; b < 3; ++b)
                        spread = std::max(spread, std::abs(r.k[a][i] - r.k[b][i]));
        rec.variant_spread_ratio = spread / sqr(eps_max);

        SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + level_index + 1);
        detail::sup_errors_by_extension(cfg, bounds, out_data, density, rec, rng);
    } catch (const std::exception& ex) {
        rec.valid = false;
        rec.failure = ex.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

// Near-umbilic variant: errors and eps are taken over the vertices nearest the
// umbilic (the umbilic vertex and the first two rings); rho_max stays global
// to exhibit the blow-up.
inline ConvergenceRecord evaluate_umbilic_level(const ExperimentConfig& cfg,
                                                const SurfaceBounds& bounds, int level_index,
                                                int rings, LevelData& out_data) {
    ConvergenceRecord rec;
    rec.level = level_index;
    rec.density = rings;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CurvatureLineNet net =
            umbilic_net(cfg.chart, cfg.pattern, rings, cfg.sectors, cfg.outer_radius, TraceConfig{});
        out_data = evaluate_net(std::move(net), bounds);
        rec.vertices = static_cast<int>(out_data.rows.size());
        double rho_max = 0.0;
        for (const VertexRow& r : out_data.rows) rho_max = std::max(rho_max, r.rho);
        rec.rho_max = rho_max;
        for (const BoundReport& rep : out_data.reports) {
            rec.violations += rep.count(CheckStatus::Fail);
            rec.skips += rep.count(CheckStatus::Skip);
        }
        const double band_radius = 2.2 * cfg.outer_radius / rings;
        Vec3 umb = out_data.net.chart.position({0.0, 0.0});
        double eps_band = 0.0, spread = 0.0;
        std::array<std::array<double, 2>, 3> sup{};
        for (const VertexRow& r : out_data.rows) {
            const NetVertex& v = out_data.net.vertices[r.vertex_id];
            if (distance(v.position, umb) > band_radius) continue;
            eps_band = std::max(eps_band, r.eps);
            for (Variant var : kAllVariants) {
                size_t vi = static_cast<size_t>(var);
                sup[vi][0] = std::max(sup[vi][0], std::abs(r.k[vi][0] - r.kappa1));
                sup[vi][1] = std::max(sup[vi][1], std::abs(r.k[vi][1] - r.kappa2));
                for (int i = 0; i < 2; ++i)
                    for (size_t b = vi + 1; b < 3; ++b)
                        spread = std::max(spread, std::abs(r.k[vi][i] - r.k[b][i]));
            }
        }
        rec.eps_max = eps_band;
        rec.sup_err = sup;
        rec.variant_spread_ratio = spread / sqr(std::max(eps_band, 1e-300));
    } catch (const std::exception& ex) {
        rec.valid = false;
        rec.failure = ex.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

inline SweepResult run_refinement(const ExperimentConfig& cfg, bool keep_levels = true) {
    cfg.validate();
    SweepResult result;
    result.bounds = estimate_bounds(cfg.chart, cfg.bounds_density);
    double prev_eps = 1e300;
    for (size_t li = 0; li < cfg.levels.size(); ++li) {
        LevelData data;
        ConvergenceRecord rec =
            cfg.strategy == NetStrategy::Umbilic
                ? evaluate_umbilic_level(cfg, result.bounds, static_cast<int>(li), cfg.levels[li],
                                         data)
                : evaluate_level(cfg, result.bounds, static_cast<int>(li), cfg.levels[li], data);
        if (rec.valid) {
            if (!(rec.eps_max < prev_eps))
                throw NetConstructionError("eps did not strictly decrease between levels");
            prev_eps = rec.eps_max;
        }
        result.records.push_back(rec);
        if (keep_levels) result.levels.push_back(std::move(data));
    }
    return result;
}

inline SweepResult umbilic_experiment(const ExperimentConfig& cfg, bool keep_levels = true) {
    ExperimentConfig c = cfg;
    c.strategy = NetStrategy::Umbilic;
    return run_refinement(c, keep_levels);
}

// ---------------------------------------------------------------------------
// Exports. All text output is formatted through format_double so identical
// configurations yield byte-identical files.
// ---------------------------------------------------------------------------

inline void write_records_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
    os << "level,density,eps_max,rho_max,"
          "sup_k1_angle,sup_k2_angle,sup_k1_sin,sup_k2_sin,sup_k1_tan,sup_k2_tan,"
          "variant_spread_ratio,violations,skips,vertices,coverage_ok,valid\n";
    for (const ConvergenceRecord& r : records) {
        os << r.level << "," << r.density << "," << format_double(r.eps_max) << ","
           << format_double(r.rho_max);
        for (Variant v : kAllVariants)
            os << "," << format_double(r.sup_for(v, 1)) << "," << format_double(r.sup_for(v, 2));
        os << "," << format_double(r.variant_spread_ratio) << "," << r.violations << "," << r.skips
           << "," << r.vertices << "," << (r.coverage_ok ? 1 : 0) << "," << (r.valid ? 1 : 0)
           << "\n";
    }
}

inline void write_vertex_csv(const LevelData& data, Variant variant, std::ostream& os) {
    os << "vertex,u,v,eps,rho,K_p,A_p,H_p,k1,k2,kappa1,kappa2,err1,err2,"
          "edge_for_k1,edge_for_k2,variant\n";
    size_t vi = static_cast<size_t>(variant);
    for (const VertexRow& r : data.rows) {
        os << r.vertex_id << "," << format_double(r.uv.u) << "," << format_double(r.uv.v) << ","
           << format_double(r.eps) << "," << format_double(r.rho) << ","
           << format_double(r.angle_defect) << "," << format_double(r.area) << ","
           << format_double(r.mean) << "," << format_double(r.k[vi][0]) << ","
           << format_double(r.k[vi][1]) << "," << format_double(r.kappa1) << ","
           << format_double(r.kappa2) << "," << format_double(std::abs(r.k[vi][0] - r.kappa1))
           << "," << format_double(std::abs(r.k[vi][1] - r.kappa2)) << "," << r.edge_for_k1 << ","
           << r.edge_for_k2 << "," << variant_name(variant) << "\n";
    }
}

inline void write_verify_csv(const LevelData& data, std::ostream& os) {
    os << "vertex,check,status,lhs,rhs,eps,rho,K,Kprime,phi,delta,note\n";
    for (const BoundReport& rep : data.reports) {
        for (const CheckResult& c : rep.checks) {
            os << rep.vertex_id << "," << c.name << "," << check_status_name(c.status) << ","
               << format_double(c.lhs) << "," << format_double(c.rhs) << ","
               << format_double(rep.eps) << "," << format_double(rep.rho) << ","
               << format_double(rep.K) << "," << format_double(rep.Kprime) << ","
               << format_double(rep.phi) << "," << format_double(rep.delta) << "," << c.note
               << "\n";
        }
    }
}

inline void write_verify_summary(const LevelData& data, std::ostream& os) {
    std::map<std::string, std::array<int, 3>> counts;  // pass, fail, skip
    std::map<std::string, double> worst_ratio;
    for (const BoundReport& rep : data.reports) {
        for (const CheckResult& c : rep.checks) {
            auto& a = counts[c.name];
            if (c.status == CheckStatus::Pass) ++a[0];
            if (c.status == CheckStatus::Fail) ++a[1];
            if (c.status == CheckStatus::Skip) ++a[2];
        }
        for (const RatioRecord& r : rep.ratios) {
            auto it = worst_ratio.find(r.name);
            if (it == worst_ratio.end() || r.value > it->second) worst_ratio[r.name] = r.value;
        }
    }
    os << "check pass fail skip\n";
    for (auto& [name, a] : counts) os << name << " " << a[0] << " " << a[1] << " " << a[2] << "\n";
    os << "\nratio worst\n";
    for (auto& [name, v] : worst_ratio) os << name << " " << format_double(v) << "\n";
}

inline void write_plotdata(const std::vector<ConvergenceRecord>& records, Variant variant, int i,
                           std::ostream& os) {
    for (const ConvergenceRecord& r : records) {
        if (!r.valid) continue;
        os << format_double(r.eps_max) << " " << format_double(r.sup_for(variant, i)) << "\n";
    }
}

inline void export_sweep(const SweepResult& sweep, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::path dir = resolve_out_dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    auto open = [&](const fs::path& p) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot write " + p.string());
        return f;
    };
    {
        auto f = open(dir / "records.csv");
        write_records_csv(sweep.records, f);
    }
    for (size_t li = 0; li < sweep.levels.size(); ++li) {
        if (!sweep.records[li].valid) continue;
        std::string tag = "level" + std::to_string(li);
        {
            auto f = open(dir / (tag + "_curvature.csv"));
            write_vertex_csv(sweep.levels[li], cfg.variant, f);
        }
        {
            auto f = open(dir / (tag + "_verify.csv"));
            write_verify_csv(sweep.levels[li], f);
        }
        {
            auto f = open(dir / (tag + "_verify_summary.txt"));
            write_verify_summary(sweep.levels[li], f);
        }
    }
    for (int i = 1; i <= 2; ++i) {
        auto f = open(dir / ("plot_k" + std::to_string(i) + ".txt"));
        write_plotdata(sweep.records, cfg.variant, i, f);
    }
}

}  // namespace curvnet
