#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "poho/poho.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    long grid = -1;
    double tol = -1.0;
    long seed = -1;
    unsigned jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (key = value sections)");
    cmd->add_option("--out", o.out_path, "output path (stdout when omitted)");
    cmd->add_option("--grid", o.grid, "grid size N (power of two)");
    cmd->add_option("--tol", o.tol, "tolerance override for every identity");
    cmd->add_option("--seed", o.seed, "seed for randomized inputs");
    cmd->add_option("--jobs", o.jobs, "parallel case evaluation")->envname("POHO_JOBS");
}

poho::ConfigFile load_or_empty(const std::string& path) {
    return path.empty() ? poho::ConfigFile{} : poho::load_config(path);
}

int cmd_verify(const CommonOpts& o) {
    poho::SuiteConfig sc = poho::suite_config_from(load_or_empty(o.config_path));
    if (o.grid > 0) sc.grid = std::size_t(o.grid);
    if (o.tol >= 0.0) sc.global_tol = o.tol;
    if (o.seed >= 0) sc.seed = std::uint64_t(o.seed);
    if (o.jobs > 0) sc.jobs = o.jobs;
    if (!o.out_path.empty()) sc.out = o.out_path;

    const poho::SuiteResult result = poho::run_verify_suite(sc);
    const std::string json = poho::to_json(result.reports);
    if (sc.out.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        poho::write_text_file(sc.out, json);
        std::printf("%zu identity instances, %zu unexpected verdicts -> %s\n",
                    result.reports.size(), result.unexpected, sc.out.c_str());
    }
    return result.unexpected == 0 ? 0 : 1;
}

int cmd_flow(const CommonOpts& o) {
    poho::FlowConfig fc = poho::flow_config_from(load_or_empty(o.config_path));
    if (o.grid > 0) fc.grid = std::size_t(o.grid);
    if (o.tol >= 0.0) fc.tol = o.tol;
    if (o.seed >= 0) fc.seed = std::uint64_t(o.seed);
    if (!o.out_path.empty()) fc.out = o.out_path;

    const poho::GridMap1D start = poho::make_circle_map(fc.map, fc.grid);
    const poho::GridMap1D u0 =
        fc.amplitude != 0.0 ? poho::perturb_tangent(start, fc.amplitude, fc.seed) : start;
    const double tau = fc.tau > 0.0 ? fc.tau : poho::default_flow_tau(fc.grid);
    const poho::FlowState st = poho::half_harmonic_flow(u0, tau, fc.max_steps, fc.tol);

    const std::string trace_path = fc.trace_path.empty() ? "flow_trace.csv" : fc.trace_path;
    poho::write_text_file(trace_path, poho::flow_trace_csv(st));

    poho::Params base;
    base.emplace_back("map", fc.map);
    base.emplace_back("grid", std::to_string(fc.grid));
    base.emplace_back("seed", std::to_string(fc.seed));
    std::vector<poho::IdentityReport> reports = poho::certify(st, fc.certify_n_max, base);
    poho::sort_reports(reports);
    const std::string json = poho::to_json(reports);
    if (fc.out.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        poho::write_text_file(fc.out, json);
    }
    const std::string status = st.converged ? "converged" : "stopped (" + st.termination + ")";
    std::fprintf(stderr, "flow: %zu steps, energy %.17g, residual %.3e, %s; trace -> %s\n",
                 st.step, st.energy, st.el_residual, status.c_str(), trace_path.c_str());
    return 0;
}

int cmd_fourier(const CommonOpts& o, const std::string& map_id, std::size_t n_max,
                const std::string& spectrum_path) {
    const std::size_t grid = o.grid > 0 ? std::size_t(o.grid) : 1024;
    const poho::GridMap1D u = poho::make_circle_map(map_id, grid);
    const double tol = o.tol >= 0.0 ? o.tol : 1e-10;
    const poho::FourierData fd = poho::fourier_data(u, n_max);
    const auto rels = poho::fourier_relations(u, n_max, tol);
    const std::string csv = poho::fourier_csv(fd, rels);
    if (o.out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        poho::write_text_file(o.out_path, csv);
    }
    if (!spectrum_path.empty())
        poho::write_text_file(spectrum_path, poho::spectrum_csv(poho::analyze(u)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for half-harmonic map balance laws"};
    app.require_subcommand(1);

    CommonOpts verify_opts, flow_opts, fourier_opts;
    CLI::App* verify = app.add_subcommand("verify", "run identity verifiers over the map zoo");
    add_common(verify, verify_opts);

    CLI::App* flow = app.add_subcommand("flow", "run the projected gradient flow and certify");
    add_common(flow, flow_opts);

    CLI::App* fourier =
        app.add_subcommand("fourier", "dump Fourier coefficients and relation sums");
    std::string fourier_map = "blaschke:0.5";
    std::size_t fourier_nmax = 10;
    std::string spectrum_path;
    fourier->add_option("map", fourier_map, "map id, e.g. blaschke:0.5");
    fourier->add_option("n_max", fourier_nmax, "largest relation order");
    fourier->add_option("--spectrum", spectrum_path, "also dump the raw spectrum CSV here");
    add_common(fourier, fourier_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(verify_opts);
        if (flow->parsed()) return cmd_flow(flow_opts);
        if (fourier->parsed())
            return cmd_fourier(fourier_opts, fourier_map, fourier_nmax, spectrum_path);
    } catch (const poho::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
