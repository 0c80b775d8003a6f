#include "qwalk/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "qwalk/bound_states.hpp"
#include "qwalk/localisation.hpp"
#include "qwalk/open_system.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/text_format.hpp"
#include "qwalk/walk_core.hpp"

namespace qwalk {

namespace {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct OutputSpec {
    std::string out_path;  // empty: stdout
    bool json = false;
};

void write_output(const OutputSpec& spec, const Table& table,
                  const std::string& command, const ConfigEcho& echo) {
    const std::string text =
        spec.json ? table_to_json(table, command, echo) : table_to_csv(table);
    if (spec.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path " + spec.out_path);
    out << text;
}

void write_series_file(const std::string& dir, const std::string& name,
                       const std::string& value_column, const std::vector<double>& series) {
    std::filesystem::create_directories(dir);
    Table table;
    table.columns = {"t", value_column};
    table.rows.reserve(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) {
        table.rows.push_back({static_cast<double>(t), series[t]});
    }
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open series directory " + dir);
    out << table_to_csv(table);
}

std::vector<double> make_phi_grid(std::optional<std::string> phi, int phi_grid) {
    if (phi) return {parse_angle(*phi)};
    if (phi_grid < 1) throw std::invalid_argument("phi grid must be nonempty");
    std::vector<double> grid(phi_grid);
    for (int i = 0; i < phi_grid; ++i) grid[i] = two_pi * i / phi_grid;
    return grid;
}

// Shared sweep parameters; each subcommand registers the flags it uses.
struct SweepArgs {
    std::string theta = "0.25pi";
    std::optional<std::string> phi;
    int phi_grid = 256;
    int steps = 150;
    std::string gamma = "0";
    std::string eta = "0";
    int grid = 64;
    int jobs = 0;
    std::vector<int> t_max = {150, 300, 500};
    int ring = 201;
    std::string series_dir;
    OutputSpec output;
};

ConfigEcho base_echo(const SweepArgs& a) {
    return {{"theta", format_double(parse_angle(a.theta))}};
}

int cmd_evolve(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const double phi = a.phi ? parse_angle(*a.phi) : 0.0;
    const double gamma = parse_angle(a.gamma);
    const double eta = parse_angle(a.eta);
    if (a.steps < 0) throw std::invalid_argument("steps must be nonnegative");

    const WalkConfig config = make_config(theta, phi, a.steps);
    WalkerState state = make_origin_state(config.half_width, CoinState::from_angles(gamma, eta));
    state = evolve(std::move(state), config, a.steps);
    const auto dist = position_distribution(state);

    Table table;
    table.columns = {"n", "p"};
    for (int n = -a.steps; n <= a.steps; ++n) {
        table.rows.push_back({static_cast<double>(n), dist.at(n)});
    }
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("phi", format_double(phi));
    echo.emplace_back("steps", std::to_string(a.steps));
    echo.emplace_back("gamma", format_double(gamma));
    echo.emplace_back("eta", format_double(eta));
    write_output(a.output, table, "evolve", echo);
    return 0;
}

int cmd_bound_states(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const auto grid = make_phi_grid(a.phi, a.phi_grid);

    Table table;
    table.columns = {"phi", "parity", "energy", "lambda", "inv_loc_length"};
    for (double phi : grid) {
        for (const BoundState& b : solve_bound_states(theta, phi)) {
            table.rows.push_back({phi, static_cast<double>(b.parity), b.energy,
                                  b.lambda, inverse_localisation_length(b.lambda)});
        }
    }
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("phi_points", std::to_string(grid.size()));
    write_output(a.output, table, "bound-states", echo);
    return 0;
}

int cmd_localisation(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const auto grid = make_phi_grid(a.phi, a.phi_grid);
    if (a.steps < 2) throw std::invalid_argument("localisation needs steps >= 2");

    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(grid.size(), a.jobs, [&](std::size_t i) {
        const double phi = grid[i];
        const auto dist = averaged_distribution(theta, phi, a.steps, CoinState{1.0, 0.0});
        rows[i] = {phi, participation_ratio(dist),
                   analytic_participation_ratio(theta, phi),
                   mean_origin_probability(dist), analytic_mean_origin(theta, phi)};
    });

    Table table;
    table.columns = {"phi", "pr_numeric", "pr_analytic", "p0_numeric", "p0_analytic"};
    table.rows = std::move(rows);
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("steps", std::to_string(a.steps));
    echo.emplace_back("phi_points", std::to_string(grid.size()));
    write_output(a.output, table, "localisation", echo);
    return 0;
}

int cmd_blp(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const auto grid = make_phi_grid(a.phi, a.phi_grid);
    std::vector<int> checkpoints = a.t_max;
    std::sort(checkpoints.begin(), checkpoints.end());
    const int t_max = checkpoints.back();

    BlpOptions options;
    options.grid_gamma = a.grid;
    options.grid_eta = a.grid;
    options.checkpoints = checkpoints;
    options.jobs = 1;  // the phi sweep below is the parallel level

    std::vector<std::vector<double>> rows(grid.size());
    std::vector<std::vector<double>> series(grid.size());
    parallel_for(grid.size(), a.jobs, [&](std::size_t i) {
        const BlpResult res = blp_measure(theta, grid[i], t_max, options);
        std::vector<double> row{grid[i]};
        for (std::size_t c = 0; c < checkpoints.size(); ++c) {
            row.push_back(res.refined[c].measure);
        }
        row.push_back(res.best.back().gamma);
        row.push_back(res.best.back().eta);
        rows[i] = std::move(row);
        series[i] = res.best_distance_series;
    });

    Table table;
    table.columns = {"phi"};
    for (int t : checkpoints) table.columns.push_back("blp_t" + std::to_string(t));
    table.columns.push_back("best_gamma");
    table.columns.push_back("best_eta");
    table.rows = std::move(rows);

    if (!a.series_dir.empty()) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            write_series_file(a.series_dir, "blp_series_phi" + std::to_string(i) + ".csv",
                              "trace_distance", series[i]);
        }
    }
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("pair_grid", std::to_string(a.grid));
    echo.emplace_back("phi_points", std::to_string(grid.size()));
    write_output(a.output, table, "blp", echo);
    return 0;
}

int cmd_rhp(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const auto grid = make_phi_grid(a.phi, a.phi_grid);
    std::vector<int> checkpoints = a.t_max;
    std::sort(checkpoints.begin(), checkpoints.end());
    const int t_max = checkpoints.back();

    std::vector<std::vector<double>> rows(grid.size());
    std::vector<std::vector<double>> series(grid.size());
    parallel_for(grid.size(), a.jobs, [&](std::size_t i) {
        const RhpResult res = rhp_measure(theta, grid[i], t_max, checkpoints);
        std::vector<double> row{grid[i]};
        for (double m : res.measure) row.push_back(m);
        rows[i] = std::move(row);
        series[i] = res.concurrence_series;
    });

    Table table;
    table.columns = {"phi"};
    for (int t : checkpoints) table.columns.push_back("rhp_t" + std::to_string(t));
    table.rows = std::move(rows);

    if (!a.series_dir.empty()) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            write_series_file(a.series_dir, "rhp_series_phi" + std::to_string(i) + ".csv",
                              "concurrence", series[i]);
        }
    }
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("phi_points", std::to_string(grid.size()));
    write_output(a.output, table, "rhp", echo);
    return 0;
}

int cmd_spectrum(const SweepArgs& a) {
    const double theta = parse_angle(a.theta);
    const double phi = a.phi ? parse_angle(*a.phi) : 0.0;
    const auto spec = diagonalize_ring(theta, phi, a.ring);

    Table table;
    table.columns = {"index", "energy", "ipr", "bound"};
    for (std::size_t i = 0; i < spec.energies.size(); ++i) {
        table.rows.push_back({static_cast<double>(i), spec.energies[i], spec.ipr[i],
                              spec.bound_candidate[i] ? 1.0 : 0.0});
    }
    ConfigEcho echo = base_echo(a);
    echo.emplace_back("phi", format_double(phi));
    echo.emplace_back("ring", std::to_string(a.ring));
    write_output(a.output, table, "spectrum", echo);
    return 0;
}

void add_common_flags(CLI::App* sub, SweepArgs& args) {
    sub->add_option("--theta", args.theta, "coin angle (radians or e.g. 0.25pi)");
    sub->add_option("--out", args.output.out_path, "output path (default stdout)");
    sub->add_flag("--json", args.output.json, "emit a JSON envelope instead of CSV");
}

}  // namespace

std::string table_to_csv(const Table& table) {
    std::string text;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) text += ',';
        text += table.columns[c];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) text += ',';
            text += format_double(row[c]);
        }
        text += '\n';
    }
    return text;
}

std::string table_to_json(const Table& table, const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& config) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = nlohmann::json::object();
    for (const auto& [key, value] : config) j["config"][key] = value;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(2) + "\n";
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Discrete-time quantum walk on a line with a phase impurity "
                 "at the origin: exact evolution, transfer-matrix bound states, "
                 "localisation and non-Markovianity diagnostics."};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; flags override");
    std::string dump_config_path;
    app.add_option("--dump-config", dump_config_path,
                   "write the resolved configuration to this path");

    SweepArgs args;

    CLI::App* evolve = app.add_subcommand("evolve", "site distribution after t steps");
    add_common_flags(evolve, args);
    evolve->add_option("--phi", args.phi, "impurity phase");
    evolve->add_option("--steps", args.steps, "number of steps")->capture_default_str();
    evolve->add_option("--gamma", args.gamma, "initial coin polar angle");
    evolve->add_option("--eta", args.eta, "initial coin azimuthal phase");

    CLI::App* bound = app.add_subcommand("bound-states",
                                         "analytic bound states over a phi grid");
    add_common_flags(bound, args);
    bound->add_option("--phi", args.phi, "single impurity phase instead of a grid");
    bound->add_option("--phi-grid", args.phi_grid, "uniform phi points on [0, 2pi)")
        ->capture_default_str();

    CLI::App* loc = app.add_subcommand("localisation",
                                       "participation ratio and origin occupation");
    add_common_flags(loc, args);
    loc->add_option("--phi", args.phi, "single impurity phase instead of a grid");
    loc->add_option("--phi-grid", args.phi_grid, "uniform phi points on [0, 2pi)")
        ->capture_default_str();
    loc->add_option("--steps", args.steps, "number of steps")->capture_default_str();
    loc->add_option("--jobs", args.jobs, "worker threads (0: all cores, 1: serial)");

    CLI::App* blp = app.add_subcommand("blp", "trace-distance non-Markovianity sweep");
    add_common_flags(blp, args);
    blp->add_option("--phi", args.phi, "single impurity phase instead of a grid");
    blp->add_option("--phi-grid", args.phi_grid, "uniform phi points on [0, 2pi)")
        ->capture_default_str();
    blp->add_option("--t-max", args.t_max, "accumulation horizons")->capture_default_str();
    blp->add_option("--grid", args.grid, "initial-pair grid resolution per axis")
        ->capture_default_str();
    blp->add_option("--jobs", args.jobs, "worker threads (0: all cores, 1: serial)");
    blp->add_option("--series-dir", args.series_dir,
                    "write per-phi trace-distance series here");

    CLI::App* rhp = app.add_subcommand("rhp", "entanglement non-Markovianity sweep");
    add_common_flags(rhp, args);
    rhp->add_option("--phi", args.phi, "single impurity phase instead of a grid");
    rhp->add_option("--phi-grid", args.phi_grid, "uniform phi points on [0, 2pi)")
        ->capture_default_str();
    rhp->add_option("--t-max", args.t_max, "accumulation horizons")->capture_default_str();
    rhp->add_option("--jobs", args.jobs, "worker threads (0: all cores, 1: serial)");
    rhp->add_option("--series-dir", args.series_dir,
                    "write per-phi concurrence series here");

    CLI::App* spectrum = app.add_subcommand("spectrum", "ring diagonalization");
    add_common_flags(spectrum, args);
    spectrum->add_option("--phi", args.phi, "impurity phase");
    spectrum->add_option("--ring", args.ring, "ring size")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (!dump_config_path.empty()) {
            std::ofstream out(dump_config_path, std::ios::binary);
            out << app.config_to_str(true, false);
        }
        if (evolve->parsed()) return cmd_evolve(args);
        if (bound->parsed()) return cmd_bound_states(args);
        if (loc->parsed()) return cmd_localisation(args);
        if (blp->parsed()) return cmd_blp(args);
        if (rhp->parsed()) return cmd_rhp(args);
        if (spectrum->parsed()) return cmd_spectrum(args);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qwalk
