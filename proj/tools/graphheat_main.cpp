#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphheat/diffusion.hpp"
#include "graphheat/graph.hpp"
#include "graphheat/image.hpp"
#include "graphheat/pipeline.hpp"
#include "graphheat/propsuite.hpp"
#include "graphheat/spectral.hpp"

namespace gh = graphheat;

namespace {

// Exit codes: 0 success, 1 runtime/per-image failure, 2 configuration error.
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct GraphSelection {
    int grid_rows = 0;
    int grid_cols = 0;
    std::string graph_file;
};

void add_graph_options(CLI::App* cmd, GraphSelection& sel) {
    auto* rows = cmd->add_option("--grid-rows", sel.grid_rows, "Lattice rows");
    auto* cols = cmd->add_option("--grid-cols", sel.grid_cols, "Lattice cols");
    auto* file = cmd->add_option("--graph", sel.graph_file,
                                 "Edge-list file (\"n m\" header, then \"i j\" lines)");
    rows->needs(cols);
    cols->needs(rows);
    file->excludes(rows);
}

gh::EigenBasis decompose_selection(const GraphSelection& sel, bool force_dense,
                                   std::optional<gh::SimpleGraph>& graph_out) {
    if (!sel.graph_file.empty()) {
        std::ifstream in(sel.graph_file);
        if (!in) throw gh::IoError("cannot open " + sel.graph_file);
        graph_out.emplace(gh::read_edge_list(in));
        return gh::eigendecompose_dense(gh::laplacian(*graph_out));
    }
    if (sel.grid_rows < 1 || sel.grid_cols < 1) {
        throw gh::ConfigError("select a graph with --grid-rows/--grid-cols or --graph");
    }
    if (force_dense) {
        graph_out.emplace(gh::grid_graph({sel.grid_rows, sel.grid_cols}));
        return gh::eigendecompose_dense(gh::laplacian(*graph_out));
    }
    return gh::eigendecompose_grid({sel.grid_rows, sel.grid_cols});
}

int cmd_pipeline(const gh::PipelineConfig& cfg) {
    const gh::PipelineResult result = gh::run_pipeline(cfg);
    for (const auto& [path, reason] : result.failures) {
        std::cerr << "error: " << path << ": " << reason << "\n";
    }
    if (!result.records.empty()) {
        gh::write_table(result.records, std::cout);
        std::cout << "basis setup: " << result.basis_setup_seconds << " s\n"
                  << "results written to " << cfg.output_dir << "\n";
    }
    return result.failures.empty() ? 0 : kExitFailure;
}

int cmd_proptest(std::uint64_t seed, const std::string& scale_name, int trials,
                 const std::string& json_path) {
    const gh::PropScale scale =
        scale_name == "medium" ? gh::PropScale::medium_32x32 : gh::PropScale::small_8x8;
    const gh::PropReport report = gh::run_property_suite(seed, scale, trials);
    for (const auto& r : report.results) {
        if (r.passed) {
            std::cout << "PASS " << r.name << " (" << r.trials << " trials)\n";
        } else {
            std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
        }
    }
    std::cout << (report.all_passed() ? "ALL PASS" : "FAILURES PRESENT") << "\n";

    if (!json_path.empty()) {
        nlohmann::json j;
        j["seed"] = seed;
        j["scale"] = scale_name;
        j["all_passed"] = report.all_passed();
        j["results"] = nlohmann::json::array();
        for (const auto& r : report.results) {
            j["results"].push_back({{"name", r.name},
                                    {"passed", r.passed},
                                    {"trials", r.trials},
                                    {"detail", r.detail}});
        }
        std::ofstream out(json_path);
        if (!out) throw gh::IoError("cannot write " + json_path);
        out << j.dump(2) << "\n";
    }
    return report.all_passed() ? 0 : kExitFailure;
}

int cmd_spectrum(const GraphSelection& sel, bool force_dense, const std::string& out_path) {
    std::optional<gh::SimpleGraph> graph;
    const gh::EigenBasis basis = decompose_selection(sel, force_dense, graph);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw gh::IoError("cannot write " + out_path);
        out = &file;
    }
    *out << "index,eigenvalue\n";
    char buf[64];
    for (int i = 0; i < basis.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g\n", i, basis.eigenvalue(i));
        *out << buf;
    }
    return 0;
}

int cmd_info(const GraphSelection& sel, bool force_dense, double epsilon, double gamma,
             double t_final) {
    std::optional<gh::SimpleGraph> graph;
    const gh::EigenBasis basis = decompose_selection(sel, force_dense, graph);

    std::int64_t edge_count;
    if (graph) {
        edge_count = graph->edge_count();
        const int isolated = graph->isolated_count();
        if (isolated > 0) {
            std::cerr << "warning: " << isolated
                      << " isolated vertex(es); their Laplacian rows are zero\n";
        }
        const Eigen::VectorXi deg = graph->degrees();
        std::cout << "vertices:      " << graph->vertex_count() << "\n"
                  << "edges:         " << edge_count << "\n"
                  << "degree range:  [" << deg.minCoeff() << ", " << deg.maxCoeff() << "]\n";
    } else {
        const std::int64_t r = sel.grid_rows, c = sel.grid_cols;
        edge_count = r * (c - 1) + c * (r - 1);
        std::cout << "grid:          " << r << "x" << c << " (4-neighbor)\n"
                  << "vertices:      " << r * c << "\n"
                  << "edges:         " << edge_count << "\n";
    }
    std::cout << "basis:         "
              << (basis.source() == gh::EigenBasis::Source::grid_analytic ? "grid-analytic"
                                                                          : "dense-solve")
              << "\n"
              << "lambda_min:    " << basis.eigenvalue(0) << "\n"
              << "lambda_max:    " << basis.lambda_max() << "\n"
              << "sum lambda:    " << basis.eigenvalues().sum() << "  (2|E| = " << 2 * edge_count
              << ")\n";
    const gh::RegularizationParams params =
        gh::select_m_eps(epsilon, gamma, t_final, basis.lambda_max());
    std::cout << "m_eps:         " << params.m_eps << (params.capped ? "  (capped at lambda_max)" : "")
              << "  [epsilon=" << epsilon << ", gamma=" << gamma << ", T=" << t_final << "]\n"
              << "modes kept:    " << gh::count_admissible(basis, params.m_eps) << " of "
              << basis.size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Initial-state reconstruction of heat diffusion on pixel-grid graphs"};
    app.require_subcommand(1);

    // pipeline
    gh::PipelineConfig cfg;
    auto* pipeline = app.add_subcommand(
        "pipeline", "Denoising benchmark: noise, blur, then naive and cut-off reconstruction");
    pipeline->add_option("inputs", cfg.inputs, "Input PGM images")->required()->check(CLI::ExistingFile);
    pipeline->add_option("--seed", cfg.seed, "RNG seed (required so runs are reproducible)")
        ->required();
    pipeline->add_option("--grid-rows", cfg.grid_rows, "Grid rows", true);
    pipeline->add_option("--grid-cols", cfg.grid_cols, "Grid cols", true);
    pipeline->add_option("--sigma-noise", cfg.sigma_noise, "AWGN standard deviation", true);
    pipeline->add_option("--epsilon", cfg.epsilon, "Noise level parameter in (0,1)", true);
    pipeline->add_option("--gamma", cfg.gamma, "Cut-off exponent in (0,1)", true);
    pipeline->add_option("--t-final", cfg.t_final, "Terminal diffusion time T", true);
    pipeline->add_option("--courant", cfg.courant, "Euler step factor (dt)", true);
    pipeline->add_option("--timing-reps", cfg.timing_reps, "Repetitions per timing measurement",
                         true);
    pipeline->add_option("--output-dir", cfg.output_dir, "Output directory", true);
    std::map<std::string, gh::Method> method_map{{"naive", gh::Method::naive},
                                                 {"cutoff", gh::Method::cutoff},
                                                 {"both", gh::Method::both}};
    pipeline->add_option("--method", cfg.method, "Reconstruction method")
        ->transform(CLI::CheckedTransformer(method_map, CLI::ignore_case))
        ->default_str("both");
    std::map<std::string, gh::ForwardSolver> fwd_map{{"euler", gh::ForwardSolver::euler},
                                                     {"spectral", gh::ForwardSolver::spectral}};
    pipeline->add_option("--forward", cfg.forward, "Forward solver for the blurring step")
        ->transform(CLI::CheckedTransformer(fwd_map, CLI::ignore_case))
        ->default_str("euler");

    // proptest
    std::uint64_t prop_seed = 1;
    std::string prop_scale = "small";
    int prop_trials = 1000;
    std::string prop_json;
    auto* proptest =
        app.add_subcommand("proptest", "Randomized checks of the reconstruction guarantees");
    proptest->add_option("--seed", prop_seed, "Master seed", true);
    proptest->add_option("--scale", prop_scale, "Grid scale", true)
        ->check(CLI::IsMember({"small", "medium"}));
    proptest->add_option("--trials", prop_trials, "Trials per property", true);
    proptest->add_option("--json", prop_json, "Write a JSON report to this path");

    // spectrum
    GraphSelection spec_sel;
    bool spec_dense = false;
    std::string spec_out;
    auto* spectrum = app.add_subcommand("spectrum", "Dump eigenvalues as CSV");
    add_graph_options(spectrum, spec_sel);
    spectrum->add_flag("--dense", spec_dense, "Force the dense solver on grids");
    spectrum->add_option("--output", spec_out, "Output file (default stdout)");

    // info
    GraphSelection info_sel;
    bool info_dense = false;
    double info_eps = 0.1, info_gamma = 0.5, info_t = 0.5;
    auto* info = app.add_subcommand("info", "Graph and spectrum statistics");
    add_graph_options(info, info_sel);
    info->add_flag("--dense", info_dense, "Force the dense solver on grids");
    info->add_option("--epsilon", info_eps, "Noise level for the m_eps report", true);
    info->add_option("--gamma", info_gamma, "Exponent for the m_eps report", true);
    info->add_option("--t-final", info_t, "Terminal time for the m_eps report", true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (pipeline->parsed()) return cmd_pipeline(cfg);
        if (proptest->parsed()) return cmd_proptest(prop_seed, prop_scale, prop_trials, prop_json);
        if (spectrum->parsed()) return cmd_spectrum(spec_sel, spec_dense, spec_out);
        if (info->parsed()) return cmd_info(info_sel, info_dense, info_eps, info_gamma, info_t);
    } catch (const gh::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gh::RangeError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gh::SizeError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
