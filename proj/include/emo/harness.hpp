// Experiment harness: spec files, seeded parallel replication, CSV/JSON
// output, summaries with rank-sum tests, bound tables and oracle checks.
#ifndef EMO_HARNESS_HPP
#define EMO_HARNESS_HPP

#include "emo/analysis.hpp"
#include "emo/moea.hpp"
#include "emo/problems.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace emo {

/// Malformed or inconsistent experiment / grid file.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MotspSetup {
    MotspInstance instance;
    ParetoFront reference;
};

using ProblemSetup = std::variant<OjzjParams, MotspSetup>;

struct Scenario {
    std::string name;
    AlgorithmConfig config;
};

struct ExperimentSpec {
    ProblemSetup problem;
    std::vector<Scenario> scenarios;
    std::size_t replications = 1;
    std::uint64_t base_seed = 0;
    std::filesystem::path output_dir = "results";
    /// Scenario the others are tested against; defaults to the last one.
    std::optional<std::string> baseline;

    /// Checks replications, name uniqueness, the baseline, and every
    /// scenario's AlgorithmConfig (as ConfigError naming the scenario).
    void validate() const;
    std::string baseline_name() const;
};

/// Relative paths inside the document resolve against `base_dir`.
ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir = ".");
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// μ used by the OJZJ table presets.
std::size_t ojzj_population_rule(const OjzjParams& params, bool archived, Algorithm algorithm);

/// Stable per-cell seed: independent of scheduling and worker count.
std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& scenario, std::size_t replication);

struct ResultRow {
    std::string scenario;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    bool success = false;
    /// Evaluations to full coverage (OJZJ) or final IGD (MOTSP).
    double indicator = 0.0;
    double wallclock_ms = 0.0;
};

struct RunOptions {
    std::size_t workers = 1;
    /// Record wall-clock times; off by default so files stay reproducible.
    bool timing = false;
};

/// Runs every scenario × replication cell. Rows come back in spec order.
std::vector<ResultRow> run_cells(const ExperimentSpec& spec, const RunOptions& options = {});

/// A single cell, exposed for tests.
ResultRow run_cell(const ExperimentSpec& spec, std::size_t scenario, std::size_t replication, bool timing = false);

std::string rows_to_csv(std::span<const ResultRow> rows);

struct ScenarioSummary {
    std::string name;
    std::size_t replications = 0;
    std::size_t successes = 0;
    double mean = 0.0;
    double std = 0.0;
    /// Against the baseline; absent for the baseline itself.
    std::optional<RankSumResult> test;
    bool significant = false;
    std::vector<std::string> warnings;
};

struct Summary {
    std::string baseline;
    double alpha = 0.05;
    std::vector<ScenarioSummary> scenarios;

    const ScenarioSummary& at(const std::string& name) const;
};

/// Scenarios appear in order of first occurrence in `rows`. An empty
/// baseline selects the last scenario.
Summary summarize(std::span<const ResultRow> rows, const std::string& baseline = {});

std::string summary_to_json(const Summary& summary);

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    Summary summary;
};

/// Runs the spec and writes <out>/rows.csv and <out>/summary.json.
ExperimentOutput run_experiment(const ExperimentSpec& spec, const RunOptions& options = {},
                                const std::optional<std::filesystem::path>& out_dir = std::nullopt);

// --- bound tables -------------------------------------------------------------

struct BoundCell {
    std::string name;
    BoundInputs inputs;
};

struct BoundGrid {
    std::vector<BoundCell> cells;
    /// (numerator, denominator) cell names.
    std::vector<std::pair<std::string, std::string>> ratios;
};

struct BoundRow {
    std::string name;
    BoundInputs inputs;
    double C = 0.0;
    long M = 0;
    BoundValue bound{};
    std::vector<std::string> warnings;
};

struct BoundRatio {
    std::string numerator;
    std::string denominator;
    double log_ratio = 0.0;
    double ratio = 0.0;
};

struct BoundTable {
    std::vector<BoundRow> rows;
    std::vector<BoundRatio> ratios;
};

BoundGrid parse_bound_grid(const std::string& json_text);
BoundTable bounds_query(const BoundGrid& grid);
std::string bound_table_to_csv(const BoundTable& table);

// --- oracle cross-checks --------------------------------------------------------

struct VerifyCheck {
    std::string name;
    std::size_t cases = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;

    bool passed() const noexcept { return mismatches == 0 && cases > 0; }
};

/// Sorting vs. quadratic sort, 2-D hypervolume vs. rasterization, OJZJ
/// fronts vs. enumeration, and rank-sum p-values vs. full enumeration.
std::vector<VerifyCheck> run_verification(std::uint64_t seed = 1);

VerifyCheck verify_sorting(std::uint64_t seed, std::size_t trials = 1000);
VerifyCheck verify_hypervolume(std::uint64_t seed, std::size_t trials = 200);
VerifyCheck verify_ojzj_fronts(std::size_t max_n = 14);
VerifyCheck verify_rank_sum(std::uint64_t seed, std::size_t trials = 200);

} // namespace emo

#endif // EMO_HARNESS_HPP
