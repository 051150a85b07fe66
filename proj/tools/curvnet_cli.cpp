// Command-line driver: net generation, curvature evaluation, bound
// verification, convergence sweeps, umbilic experiments, and exports.

#include <CLI11.hpp>
#include <iostream>

#include "curvnet/harness.hpp"

namespace {

using namespace curvnet;

struct CommonArgs {
    std::string config_path;
    std::string variant;
    std::string levels;
    std::string out;
    std::string seed;
    int density = 0;
};

ExperimentConfig load_experiment(const CommonArgs& args) {
    KeyValueConfig cfg = KeyValueConfig::parse_file(args.config_path);
    if (!args.variant.empty()) cfg.set("variant", args.variant);
    if (!args.levels.empty()) cfg.set("levels", args.levels);
    if (!args.out.empty()) cfg.set("out", args.out);
    if (!args.seed.empty()) cfg.set("seed", args.seed);
    return experiment_from_config(cfg);
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_density = false) {
    cmd->add_option("--config", args.config_path, "experiment config file")->required();
    cmd->add_option("--variant", args.variant, "curvature variant: angle|sin|tan");
    cmd->add_option("--levels", args.levels, "refinement levels, space separated");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "seed for sample jitter");
    if (with_density) cmd->add_option("--density", args.density, "net density (default: first level)");
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    return f;
}

int cmd_generate(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args);
    int density = args.density > 0 ? args.density : cfg.levels.front();
    CurvatureLineNet net = build_level_net(cfg, density);
    auto violations = check_net_invariants(net);
    std::filesystem::path dir = resolve_out_dir(cfg.out_dir);
    {
        auto f = open_out(dir / "net.txt");
        write_net_text(net, f);
    }
    {
        auto f = open_out(dir / "net.obj");
        write_net_obj(net, f);
    }
    std::cout << "net: " << net.vertices.size() << " vertices, " << net.edges.size() << " edges, "
              << net.cells.size() << " cells\n";
    if (cfg.strategy == NetStrategy::Umbilic) {
        int separatrices = 0;
        for (const NetEdge& e : net.edges)
            if (e.separatrix && net.edges[e.id].v0 == 0) ++separatrices;
        std::cout << "umbilic vertex valence " << net.links[0].edges_ccw.size() << " ("
                  << separatrices << " separatrix rays)\n";
    }
    for (const auto& v : violations) std::cout << "invariant violation: " << v.what << "\n";
    std::cout << (violations.empty() ? "net invariants: ok" : "net invariants: FAILED") << "\n";
    return violations.empty() ? 0 : 1;
}

int cmd_curvature(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args);
    int density = args.density > 0 ? args.density : cfg.levels.front();
    SurfaceBounds bounds = estimate_bounds(cfg.chart, cfg.bounds_density);
    LevelData data = evaluate_net(build_level_net(cfg, density), bounds);
    std::filesystem::path dir = resolve_out_dir(cfg.out_dir);
    auto f = open_out(dir / "curvature.csv");
    write_vertex_csv(data, cfg.variant, f);
    std::cout << "evaluated " << data.rows.size() << " interior vertices (K = "
              << format_double(bounds.K) << ", K' = " << format_double(bounds.Kprime) << ")\n";
    return 0;
}

int cmd_verify(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args);
    int density = args.density > 0 ? args.density : cfg.levels.front();
    SurfaceBounds bounds = estimate_bounds(cfg.chart, cfg.bounds_density);
    LevelData data = evaluate_net(build_level_net(cfg, density), bounds);
    std::filesystem::path dir = resolve_out_dir(cfg.out_dir);
    {
        auto f = open_out(dir / "verify.csv");
        write_verify_csv(data, f);
    }
    {
        auto f = open_out(dir / "verify_summary.txt");
        write_verify_summary(data, f);
    }
    int fails = 0;
    for (const BoundReport& rep : data.reports) fails += rep.count(CheckStatus::Fail);
    write_verify_summary(data, std::cout);
    std::cout << (fails == 0 ? "verification: ok" : "verification: FAILED") << "\n";
    return fails == 0 ? 0 : 1;
}

int report_sweep(const ExperimentConfig& cfg, const SweepResult& sweep, double slope_lo,
                 double slope_hi) {
    for (const ConvergenceRecord& r : sweep.records) {
        std::cout << "level " << r.level << ": density " << r.density;
        if (!r.valid) {
            std::cout << " INVALID (" << r.failure << ")\n";
            continue;
        }
        std::cout << " eps " << format_double(r.eps_max) << " rho_max " << format_double(r.rho_max)
                  << " sup|k1-kappa1| " << format_double(r.sup_for(cfg.variant, 1))
                  << " sup|k2-kappa2| " << format_double(r.sup_for(cfg.variant, 2)) << " violations "
                  << r.violations << " (" << format_double(r.wall_ms) << " ms)\n";
    }
    bool ok = true;
    for (const ConvergenceRecord& r : sweep.records)
        if (!r.valid || r.violations > 0) ok = false;
    for (int i = 1; i <= 2; ++i) {
        try {
            RateFit fit = fit_rate(sweep.records, cfg.variant, i);
            std::cout << "k" << i << " slope " << format_double(fit.slope) << " (intercept "
                      << format_double(fit.intercept) << ", residual " << format_double(fit.residual)
                      << ", " << fit.points << " levels)";
            if (!fit.warnings.empty()) std::cout << " [" << fit.warnings << "]";
            std::cout << "\n";
            if (fit.slope < slope_lo || fit.slope > slope_hi) ok = false;
        } catch (const FitUnavailableError& ex) {
            std::cout << "k" << i << " fit unavailable: " << ex.what() << "\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

int cmd_converge(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args);
    SweepResult sweep = run_refinement(cfg);
    export_sweep(sweep, cfg);
    int rc = report_sweep(cfg, sweep, 0.8, 2.2);
    std::cout << (rc == 0 ? "converge: ok" : "converge: FAILED") << "\n";
    return rc;
}

int cmd_umbilic(const CommonArgs& args) {
    ExperimentConfig cfg = load_experiment(args);
    SweepResult sweep = umbilic_experiment(cfg);
    export_sweep(sweep, cfg);
    bool rho_monotone = true;
    double prev = 0.0;
    for (const ConvergenceRecord& r : sweep.records) {
        if (!r.valid) continue;
        if (r.rho_max < prev * (1.0 - 1e-9)) rho_monotone = false;
        prev = r.rho_max;
    }
    int rc = report_sweep(cfg, sweep, 0.8, 1e9);
    std::cout << "rho_max trajectory " << (rho_monotone ? "non-decreasing" : "DECREASING") << "\n";
    if (!rho_monotone) rc = 1;
    std::cout << (rc == 0 ? "umbilic: ok" : "umbilic: FAILED") << "\n";
    return rc;
}

int cmd_export(const CommonArgs& args, const std::string& what, const std::string& format,
               const std::string& path) {
    ExperimentConfig cfg = load_experiment(args);
    std::filesystem::path out = path.empty()
        ? std::filesystem::path(resolve_out_dir(cfg.out_dir)) / ("export." + format)
        : std::filesystem::path(path);
    if (what == "net") {
        int density = args.density > 0 ? args.density : cfg.levels.front();
        CurvatureLineNet net = build_level_net(cfg, density);
        auto f = open_out(out);
        if (format == "obj")
            write_net_obj(net, f);
        else if (format == "txt")
            write_net_text(net, f);
        else
            throw ConfigError("net export supports formats obj|txt");
        return 0;
    }
    if (what == "records" || what == "report") {
        SweepResult sweep = cfg.strategy == NetStrategy::Umbilic ? umbilic_experiment(cfg)
                                                                 : run_refinement(cfg);
        auto f = open_out(out);
        if (what == "records" && format == "csv") {
            write_records_csv(sweep.records, f);
        } else if (what == "records" && format == "plotdata") {
            write_plotdata(sweep.records, cfg.variant, 2, f);
        } else if (what == "report" && format == "csv") {
            for (size_t li = 0; li < sweep.levels.size(); ++li)
                if (sweep.records[li].valid) write_verify_csv(sweep.levels[li], f);
        } else {
            throw ConfigError("unsupported export combination: " + what + " as " + format);
        }
        return 0;
    }
    throw ConfigError("unknown export target: " + what + " (expected net|records|report)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete curvature-line nets: generation, curvature, verification, convergence"};
    app.require_subcommand(1);

    CommonArgs gen_args, curv_args, verify_args, conv_args, umb_args, exp_args;
    std::string export_what = "net", export_format = "obj", export_path;

    add_common(app.add_subcommand("generate", "generate a net and export it"), gen_args, true);
    add_common(app.add_subcommand("curvature", "per-vertex discrete curvature CSV"), curv_args, true);
    add_common(app.add_subcommand("verify", "run the bound suite on one net"), verify_args, true);
    add_common(app.add_subcommand("converge", "refinement sweep with rate fit"), conv_args);
    add_common(app.add_subcommand("umbilic", "near-umbilic refinement sweep"), umb_args);
    auto* exp = app.add_subcommand("export", "re-export nets, records, or reports");
    add_common(exp, exp_args, true);
    exp->add_option("--what", export_what, "net|records|report");
    exp->add_option("--format", export_format, "obj|txt|csv|plotdata");
    exp->add_option("--path", export_path, "output file path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("generate")) return cmd_generate(gen_args);
        if (app.got_subcommand("curvature")) return cmd_curvature(curv_args);
        if (app.got_subcommand("verify")) return cmd_verify(verify_args);
        if (app.got_subcommand("converge")) return cmd_converge(conv_args);
        if (app.got_subcommand("umbilic")) return cmd_umbilic(umb_args);
        if (app.got_subcommand("export"))
            return cmd_export(exp_args, export_what, export_format, export_path);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
