// duality-lab: batch verification, simulation and tabulation.
//
//   duality-lab verify   [--config PATH] [--out PATH] [--jobs N] [--seed N] [--tolerance-scale F]
//   duality-lab simulate  --config PATH  [--out PATH] [--jobs N] [--seed N] [--tolerance-scale F]
//   duality-lab table     --family NAME --p P [--k K | --two-j J] --max-index N [--out PATH]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse or domain error.

#include "duality_lab/suite.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dl = duality_lab;
using dl::json;

namespace {

struct Common {
    std::string config;
    std::string out;
    int jobs = 1;
    std::uint64_t seed = 0;
    double tolerance_scale = 1.0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON config file");
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "seed for stochastic checks");
    cmd->add_option("--tolerance-scale", c.tolerance_scale, "multiplies every tolerance")
        ->check(CLI::PositiveNumber);
}

dl::RunOptions options(const Common& c, const CLI::App* cmd) {
    dl::RunOptions o;
    o.jobs = c.jobs;
    o.tolerance_scale = c.tolerance_scale;
    if (cmd->count("--seed") > 0) o.seed = c.seed;
    return o;
}

json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dl::domain_error("cannot open config '" + path + "'");
    return json::parse(in);  // json::parse_error maps to exit 2
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw dl::domain_error("cannot write '" + path + "'");
    out << text;
}

int cmd_verify(const Common& c, const CLI::App* cmd) {
    const json suite = c.config.empty() ? json(dl::default_suite()) : read_config(c.config);
    const auto reports = dl::run_checks(suite, options(c, cmd));
    emit(c.out, dl::reports_to_json(reports).dump(2) + "\n");
    return dl::all_passed(reports) ? 0 : 1;
}

// Config: process parameters, graph, x, y, t, n_samples, seed, optional
// family (default classical), trajectory_csv and trajectory_samples.
int cmd_simulate(const Common& c, const CLI::App* cmd) {
    if (c.config.empty()) throw dl::domain_error("simulate: --config is required");
    json cfg = read_config(c.config);
    const auto opt = options(c, cmd);
    if (opt.seed) cfg["seed"] = *opt.seed;

    const dl::SiteRep r = dl::detail::rep_from(cfg);
    const dl::Graph g = dl::detail::graph_from(cfg);
    const dl::Config x = dl::detail::config_from(cfg, "x"), y = dl::detail::config_from(cfg, "y");
    const auto family = dl::family_from_name(dl::detail::get_or<std::string>(cfg, "family", "classical"));
    const auto d = dl::make_duality(r, family, dl::detail::get_or<double>(cfg, "lambda", 0.0));
    const double t = dl::detail::get<double>(cfg, "t");
    const long n = dl::detail::get<long>(cfg, "n_samples");
    const auto seed = dl::detail::get<std::uint64_t>(cfg, "seed");

    const auto est = dl::mc_duality_gap(r, g, x, y, d, t, n, seed, opt.jobs);
    const double tol = dl::kZScoreTolerance * opt.tolerance_scale;
    json out{{"lhs_mean", dl::detail::cplx_json(est.lhs_mean)},
             {"rhs_mean", dl::detail::cplx_json(est.rhs_mean)},
             {"lhs_stderr", dl::detail::cplx_json(est.lhs_stderr)},
             {"rhs_stderr", dl::detail::cplx_json(est.rhs_stderr)},
             {"gap", dl::detail::cplx_json(est.gap())},
             {"z_score", est.z_score()},
             {"n_samples", est.n_samples},
             {"t", est.t},
             {"seed", seed},
             {"tolerance", tol},
             {"passed", est.z_score() <= tol}};
    emit(c.out, out.dump(2) + "\n");

    if (cfg.contains("trajectory_csv")) {
        // The recorded paths are the first left-hand trajectories of the estimate.
        const long m = std::min(n, dl::detail::get_or<long>(cfg, "trajectory_samples", 10));
        std::vector<dl::Trajectory> paths;
        for (long i = 0; i < m; ++i) {
            auto eng = dl::trajectory_engine(seed, static_cast<std::uint64_t>(i));
            paths.push_back(dl::simulate_path(r, g, x, t, eng, true));
        }
        std::ostringstream csv;
        dl::write_trajectory_csv(csv, paths);
        emit(dl::detail::get<std::string>(cfg, "trajectory_csv"), csv.str());
    }
    return est.z_score() <= tol ? 0 : 1;
}

struct TableArgs {
    std::string family;
    double p = 0.5;
    double k = 0.5;
    int two_j = 1;
    int max_index = 5;
};

int cmd_table(const TableArgs& a, const Common& c) {
    std::function<double(int, int)> f;
    if (a.family == "meixner") {
        f = [&](int x, int y) { return dl::to_double(dl::meixner<dl::quad>(x, y, a.p, a.k)); };
    } else if (a.family == "krawtchouk") {
        f = [&](int x, int y) { return dl::to_double(dl::krawtchouk<dl::quad>(x, y, a.p, a.two_j)); };
    } else if (a.family == "charlier") {
        f = [&](int x, int y) { return dl::to_double(dl::charlier<dl::quad>(x, y, a.p)); };
    } else {
        throw dl::domain_error("table: unknown family '" + a.family + "'");
    }
    if (a.max_index < 0) throw dl::domain_error("table: max-index must be nonnegative");
    std::ostringstream out;
    out << "x";
    for (int y = 0; y <= a.max_index; ++y) out << ",y=" << y;
    out << '\n';
    char buf[64];
    for (int x = 0; x <= a.max_index; ++x) {
        out << x;
        for (int y = 0; y <= a.max_index; ++y) {
            std::snprintf(buf, sizeof buf, "%.17g", f(x, y));
            out << ',' << buf;
        }
        out << '\n';
    }
    emit(c.out, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duality-lab: duality identities for SIP, SEP and IRW"};
    app.require_subcommand(1);

    Common verify_opts, sim_opts, table_opts;
    TableArgs targs;
    auto* verify = app.add_subcommand("verify", "run identity checks (default suite without --config)");
    add_common(verify, verify_opts);
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo duality estimate");
    add_common(simulate, sim_opts);
    auto* table = app.add_subcommand("table", "tabulate an orthogonal polynomial as CSV");
    add_common(table, table_opts);
    table->add_option("--family", targs.family, "meixner, krawtchouk or charlier")->required();
    table->add_option("--p", targs.p, "parameter p")->required();
    table->add_option("--k", targs.k, "SIP parameter k (meixner)");
    table->add_option("--two-j", targs.two_j, "SEP parameter 2j (krawtchouk)");
    table->add_option("--max-index", targs.max_index, "largest x and y")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(verify_opts, verify);
        if (*simulate) return cmd_simulate(sim_opts, simulate);
        if (*table) return cmd_table(targs, table_opts);
    } catch (const json::exception& e) {
        std::cerr << "duality-lab: config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "duality-lab: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "duality-lab: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
