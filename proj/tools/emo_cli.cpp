// emo: run experiments, query runtime bounds, cross-check against oracles,
// and print exact Pareto fronts.
#include "emo/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const std::string& spec_path, std::size_t workers, const std::string& out, bool timing)
{
    const auto spec = emo::load_experiment_spec(spec_path);
    emo::RunOptions options{workers, timing};
    std::optional<std::filesystem::path> dir;
    if (!out.empty()) {
        dir = out;
    }
    const auto result = emo::run_experiment(spec, options, dir);
    const auto& s = result.summary;
    std::cout << "scenario,mean,std,p_value,significant\n";
    for (const auto& sc : s.scenarios) {
        std::cout << sc.name << ',' << emo::format_real(sc.mean) << ',' << emo::format_real(sc.std) << ','
                  << (sc.test ? emo::format_real(sc.test->p_value) : std::string("-")) << ','
                  << (sc.significant ? "*" : "") << '\n';
        for (const auto& w : sc.warnings) {
            std::cerr << "warning: " << sc.name << ": " << w << '\n';
        }
    }
    std::cerr << "wrote " << dir.value_or(spec.output_dir).string() << "/{rows.csv,summary.json}\n";
    return 0;
}

int cmd_bounds(const std::string& grid_path, const emo::BoundInputs& inline_inputs, const std::string& variant)
{
    emo::BoundGrid grid;
    if (!grid_path.empty()) {
        grid = emo::parse_bound_grid(slurp(grid_path));
    } else {
        emo::BoundCell cell{"cell", inline_inputs};
        if (variant == "nsga2") {
            cell.inputs.variant = emo::Algorithm::nsga2;
        } else if (variant == "sms_emoa") {
            cell.inputs.variant = emo::Algorithm::sms_emoa;
        } else {
            throw CLI::ValidationError("--variant", "expected nsga2 or sms_emoa");
        }
        grid.cells.push_back(cell);
    }
    std::cout << emo::bound_table_to_csv(emo::bounds_query(grid));
    return 0;
}

int cmd_verify(std::uint64_t seed)
{
    bool ok = true;
    for (const auto& check : emo::run_verification(seed)) {
        std::cout << (check.passed() ? "PASS " : "FAIL ") << check.name << ": " << check.cases << " cases, "
                  << check.mismatches << " mismatches";
        if (!check.passed() && !check.first_mismatch.empty()) {
            std::cout << " (first: " << check.first_mismatch << ")";
        }
        std::cout << '\n';
        ok = ok && check.passed();
    }
    return ok ? 0 : 1;
}

int cmd_front(std::size_t n, std::size_t k, bool brute, const std::string& instance)
{
    emo::ParetoFront front;
    if (!instance.empty()) {
        front = emo::brute_force_pareto(emo::read_motsp_json(instance));
    } else {
        const emo::OjzjParams params{n, k};
        front = brute ? emo::brute_force_pareto(params) : emo::ojzj_pareto_front(params);
    }
    emo::write_front(std::cout, front);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-objective EAs with stochastic population update and archives"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out;
    std::size_t workers = 1;
    bool timing = false;
    auto* run = app.add_subcommand("run", "Run an experiment spec and write rows.csv / summary.json");
    run->add_option("--spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--workers", workers, "Concurrent cells")->check(CLI::PositiveNumber);
    run->add_option("--out", out, "Output directory (overrides the spec)");
    run->add_flag("--timing", timing, "Record wall-clock times (breaks byte-identical reruns)");

    std::string grid_path;
    std::string variant = "sms_emoa";
    emo::BoundInputs inputs;
    auto* bounds = app.add_subcommand("bounds", "Evaluate C, optimal M and the running-time bound");
    auto* grid_opt = bounds->add_option("--grid", grid_path, "Grid file (JSON)")->check(CLI::ExistingFile);
    auto* n_opt = bounds->add_option("--n", inputs.n);
    bounds->add_option("--k", inputs.k)->excludes(grid_opt);
    bounds->add_option("--mu", inputs.mu)->excludes(grid_opt);
    bounds->add_option("--ps", inputs.p_s)->excludes(grid_opt);
    bounds->add_option("--pc", inputs.p_c)->excludes(grid_opt);
    bounds->add_option("--variant", variant, "nsga2 | sms_emoa")->excludes(grid_opt);
    n_opt->excludes(grid_opt);

    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Cross-check ranking, hypervolume, fronts and statistics");
    verify->add_option("--seed", seed);

    std::size_t fn = 0;
    std::size_t fk = 0;
    bool brute = false;
    std::string instance;
    auto* front = app.add_subcommand("front", "Print an exact OJZJ front or a brute-force MOTSP front");
    auto* fn_opt = front->add_option("--n", fn);
    auto* fk_opt = front->add_option("--k", fk);
    front->add_flag("--brute-force", brute, "Enumerate all bitstrings instead of the closed form");
    auto* inst_opt = front->add_option("--instance", instance, "MOTSP instance (JSON)")->check(CLI::ExistingFile);
    fn_opt->excludes(inst_opt);
    fk_opt->excludes(inst_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(spec_path, workers, out, timing);
        }
        if (*bounds) {
            if (grid_path.empty() && (inputs.n == 0 || inputs.k == 0 || inputs.mu == 0 || inputs.p_s == 0)) {
                std::cerr << "bounds: give --grid or all of --n --k --mu --ps [--pc] [--variant]\n";
                return 2;
            }
            return cmd_bounds(grid_path, inputs, variant);
        }
        if (*verify) {
            return cmd_verify(seed);
        }
        if (*front) {
            if (instance.empty() && (fn == 0 || fk == 0)) {
                std::cerr << "front: give --n and --k, or --instance\n";
                return 2;
            }
            return cmd_front(fn, fk, brute, instance);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
