// Command-line front end: classify | enumerate | sweep | ids | simulate | export-dot.
// Exit codes: 0 success, 1 usage error, 2 data error.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "egn/dynamics.hpp"
#include "egn/equilibria.hpp"
#include "egn/game.hpp"
#include "egn/graph.hpp"
#include "egn/io.hpp"
#include "egn/sweep.hpp"

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

egn::Graph load_graph_arg(const std::string& graph_path, const std::string& instance_path) {
    if (!graph_path.empty()) return egn::read_edge_list_file(graph_path);
    return egn::load_instance(instance_path).graph();
}

egn::PureProfile parse_profile(const std::string& bits, int n) {
    const egn::PureProfile p = egn::PureProfile::from_bitstring(bits);
    if (p.n != n) {
        std::ostringstream msg;
        msg << "profile has " << p.n << " players but the graph has " << n;
        throw std::runtime_error(msg.str());
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pure-equilibrium tools for networked two-strategy games"};
    app.require_subcommand(1);

    std::string instance_path, graph_path, profile_bits, state_csv, output_path;
    bool as_json = false, prune = false, as_table = false;
    int jobs = 0;
    std::string filter_name = "all", mode_name = "exact", class_name;
    double delta = 1e-3;
    int coordinate = 0;
    egn::TrajectoryConfig cfg;
    int samples = 0;
    std::uint64_t seed = 1;

    auto* classify = app.add_subcommand(
        "classify", "Classify one pure profile (bitstring, player 1 leftmost)");
    classify->add_option("--instance", instance_path, "instance JSON file")->required();
    classify->add_option("--profile", profile_bits, "strategy bitstring, player 1 leftmost")
        ->required();
    classify->add_flag("--json", as_json, "emit the JSON report");

    auto* enumerate = app.add_subcommand(
        "enumerate", "Classify every pure profile, CSV output in ascending index order");
    enumerate->add_option("--instance", instance_path)->required();
    enumerate->add_option("--filter", filter_name, "sne | ne | all (default all)")
        ->check(CLI::IsMember({"sne", "ne", "all"}));
    enumerate->add_flag("--prune", prune,
                        "skip profiles failing the structural necessary conditions "
                        "(identical output, less work)");
    enumerate->add_option("--jobs", jobs, "worker threads, 0 = all (ignored for --filter all)")
        ->envname("EGN_JOBS");
    enumerate->add_option("-o,--output", output_path, "write CSV here instead of stdout");

    auto* sweep = app.add_subcommand(
        "sweep", "SNE/NE counts per ratio interval, over exact rational breakpoints");
    auto* sweep_graph = sweep->add_option("--graph", graph_path, "edge-list file");
    sweep->add_option("--instance", instance_path, "instance JSON (its graph is used)")
        ->excludes(sweep_graph);
    sweep->add_option("--class", class_name, "coordination | anti")
        ->required()
        ->check(CLI::IsMember({"coordination", "anti"}));
    sweep->add_option("--mode", mode_name, "exact | degree-ratios (default exact)")
        ->check(CLI::IsMember({"exact", "degree-ratios"}));
    sweep->add_flag("--table", as_table, "aligned text instead of CSV");
    sweep->add_option("--jobs", jobs)->envname("EGN_JOBS");
    sweep->add_option("-o,--output", output_path);

    auto* ids = app.add_subcommand("ids", "List all independent dominating sets");
    auto* ids_graph = ids->add_option("--graph", graph_path, "edge-list file");
    ids->add_option("--instance", instance_path, "instance JSON (its graph is used)")
        ->excludes(ids_graph);
    ids->add_option("-o,--output", output_path);

    auto* simulate = app.add_subcommand(
        "simulate", "Integrate the replicator dynamics, emit a trajectory CSV");
    simulate->add_option("--instance", instance_path)->required();
    auto* sim_profile = simulate->add_option(
        "--profile", profile_bits, "start at this profile perturbed inward by --delta");
    simulate->add_option("--state", state_csv, "comma-separated start state in [0,1]^N")
        ->excludes(sim_profile);
    simulate->add_option("--delta", delta, "perturbation size (default 1e-3)");
    simulate->add_option("--coordinate", coordinate,
                         "perturb only this vertex (1-based; default all)");
    simulate->add_option("--dt", cfg.dt, "step size (default 0.01)");
    simulate->add_option("--t-end", cfg.t_end, "horizon (default 200)");
    simulate->add_option("--tol", cfg.convergence_tol, "convergence tolerance (default 1e-6)");
    simulate->add_option("--stride", cfg.record_stride, "record every k-th step (default 100)");
    simulate->add_option("-o,--output", output_path);

    auto* export_dot = app.add_subcommand(
        "export-dot", "DOT rendering of a profile: cooperators yellow, defectors red");
    auto* dot_graph = export_dot->add_option("--graph", graph_path, "edge-list file");
    export_dot->add_option("--instance", instance_path, "instance JSON (its graph is used)")
        ->excludes(dot_graph);
    export_dot->add_option("--profile", profile_bits)->required();
    export_dot->add_option("-o,--output", output_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (classify->parsed()) {
            const egn::EgnInstance inst = egn::load_instance(instance_path);
            const egn::PureProfile p = parse_profile(profile_bits, inst.num_vertices());
            const egn::ProfileClassification c = egn::classify_pure(inst, p);
            std::cout << (as_json ? egn::classification_report_json(c)
                                  : egn::classification_report_text(c));
        } else if (enumerate->parsed()) {
            const egn::EgnInstance inst = egn::load_instance(instance_path);
            const std::map<std::string, egn::Filter> filters{
                {"all", egn::Filter::All},
                {"ne", egn::Filter::Nash},
                {"sne", egn::Filter::StrictNash}};
            const egn::Filter filter = filters.at(filter_name);
            OutputTarget target;
            target.open(output_path);
            target.out() << egn::enumeration_csv_header() << "\n";
            long long matched = 0;
            if (filter == egn::Filter::All || jobs == 1) {
                // Streaming keeps the full 2^N listing out of memory.
                egn::for_each_classified(inst, filter, prune,
                                         [&](const egn::ProfileClassification& c) {
                                             target.out()
                                                 << egn::enumeration_csv_row(c) << "\n";
                                             ++matched;
                                         });
            } else {
                for (const auto& c : egn::enumerate_classified(inst, filter, prune, jobs)) {
                    target.out() << egn::enumeration_csv_row(c) << "\n";
                    ++matched;
                }
            }
            std::cerr << matched << " profile(s) matched filter '" << filter_name << "'\n";
        } else if (sweep->parsed()) {
            if (graph_path.empty() && instance_path.empty())
                throw std::runtime_error("sweep needs --graph or --instance");
            const egn::Graph g = load_graph_arg(graph_path, instance_path);
            const egn::BreakpointMode mode = mode_name == "exact"
                                                 ? egn::BreakpointMode::ExactThresholds
                                                 : egn::BreakpointMode::DegreeRatios;
            const egn::SweepGameClass cls = class_name == "coordination"
                                                ? egn::SweepGameClass::Coordination
                                                : egn::SweepGameClass::AntiCoordination;
            const auto report =
                egn::sweep_sne_counts(g, cls, egn::breakpoints(g, mode), jobs);
            OutputTarget target;
            target.open(output_path);
            target.out() << (as_table ? egn::render_sweep_table(report)
                                      : egn::render_sweep_csv(report));
        } else if (ids->parsed()) {
            if (graph_path.empty() && instance_path.empty())
                throw std::runtime_error("ids needs --graph or --instance");
            const egn::Graph g = load_graph_arg(graph_path, instance_path);
            OutputTarget target;
            target.open(output_path);
            const auto sets = egn::enumerate_independent_dominating_sets(g);
            for (egn::VertexSet s : sets)
                target.out() << egn::format_vertex_set(s, g.num_vertices()) << "\n";
            std::cerr << sets.size() << " independent dominating set(s)\n";
        } else if (simulate->parsed()) {
            const egn::EgnInstance inst = egn::load_instance(instance_path);
            egn::StateVector x0;
            if (!profile_bits.empty()) {
                const egn::PureProfile p = parse_profile(profile_bits, inst.num_vertices());
                if (coordinate != 0) {
                    if (coordinate < 1 || coordinate > inst.num_vertices())
                        throw std::runtime_error("--coordinate out of range");
                    x0 = egn::perturb_coordinate(p, coordinate - 1, delta);
                } else {
                    x0 = egn::perturb_inward(p, delta);
                }
            } else if (!state_csv.empty()) {
                std::istringstream in(state_csv);
                std::string tok;
                while (std::getline(in, tok, ',')) x0.push_back(std::stod(tok));
            } else {
                throw std::runtime_error("simulate needs --profile or --state");
            }
            const egn::Trajectory t = egn::integrate(inst, x0, cfg);
            OutputTarget target;
            target.open(output_path);
            target.out() << egn::trajectory_csv(t);
            if (t.converged_to)
                std::cerr << "converged to " << t.converged_to->bitstring() << " at t="
                          << t.terminal_time << "\n";
            else
                std::cerr << "no convergence by t=" << t.terminal_time << "\n";
            if (!t.clamp_ok())
                std::cerr << "warning: step clamping reached " << t.max_step_clamp << "\n";
        } else if (export_dot->parsed()) {
            if (graph_path.empty() && instance_path.empty())
                throw std::runtime_error("export-dot needs --graph or --instance");
            const egn::Graph g = load_graph_arg(graph_path, instance_path);
            const egn::PureProfile p = parse_profile(profile_bits, g.num_vertices());
            OutputTarget target;
            target.open(output_path);
            target.out() << egn::export_dot(g, p);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
