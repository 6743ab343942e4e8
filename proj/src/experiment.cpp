#include "emo/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

namespace emo {

namespace {

using nlohmann::json;

constexpr std::uint64_t ojzj_safety_budget = 1'000'000'000;
constexpr std::uint64_t motsp_default_budget = 1'000'000;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!obj.is_object()) {
        throw SpecError(where + ": expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw SpecError(where + ": unknown key '" + key + "'");
        }
    }
}

Algorithm parse_algorithm(const std::string& s)
{
    if (s == "nsga2") {
        return Algorithm::nsga2;
    }
    if (s == "sms_emoa") {
        return Algorithm::sms_emoa;
    }
    throw SpecError("unknown algorithm '" + s + "' (nsga2 | sms_emoa)");
}

UpdatePolicy parse_update(const std::string& s)
{
    if (s == "deterministic") {
        return UpdatePolicy::deterministic;
    }
    if (s == "spu") {
        return UpdatePolicy::spu;
    }
    throw SpecError("unknown update '" + s + "' (deterministic | spu)");
}

StopRule parse_stop(const std::string& s)
{
    if (s == "budget_only") {
        return StopRule::budget_only;
    }
    if (s == "full_front_coverage") {
        return StopRule::full_front_coverage;
    }
    throw SpecError("unknown stop rule '" + s + "' (budget_only | full_front_coverage)");
}

BitCrossover parse_crossover(const std::string& s)
{
    if (s == "one_point") {
        return BitCrossover::one_point;
    }
    if (s == "uniform") {
        return BitCrossover::uniform;
    }
    throw SpecError("unknown crossover '" + s + "' (one_point | uniform)");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

ParetoFront load_reference(const std::filesystem::path& path, std::size_t objectives)
{
    ParetoFront front;
    const std::vector<Direction> dirs(objectives, Direction::minimize);
    for (const auto& row : read_front_file(path)) {
        if (row.size() != objectives) {
            throw InstanceError(path.string() + ": front vector has " + std::to_string(row.size()) +
                                " values, instance has " + std::to_string(objectives) + " objectives");
        }
        front.points.emplace_back(row, dirs);
    }
    if (front.points.empty()) {
        throw InstanceError(path.string() + ": empty reference front");
    }
    return front;
}

ProblemSetup parse_problem(const json& p, const std::filesystem::path& base)
{
    if (!p.contains("type")) {
        throw SpecError("problem: 'type' is required");
    }
    const auto type = p.at("type").get<std::string>();
    if (type == "ojzj") {
        reject_unknown(p, {"type", "n", "k"}, "problem");
        OjzjParams params{p.at("n").get<std::size_t>(), p.at("k").get<std::size_t>()};
        try {
            params.validate();
        } catch (const ContractViolation& e) {
            throw SpecError(std::string("problem: ") + e.what());
        }
        return params;
    }
    if (type != "motsp") {
        throw SpecError("problem: unknown type '" + type + "' (ojzj | motsp)");
    }
    reject_unknown(p, {"type", "instance", "tsplib", "random", "reference_front"}, "problem");
    const int sources = static_cast<int>(p.contains("instance")) + static_cast<int>(p.contains("tsplib")) +
                        static_cast<int>(p.contains("random"));
    if (sources != 1) {
        throw SpecError("problem: exactly one of 'instance', 'tsplib', 'random' is required");
    }
    MotspSetup setup;
    if (p.contains("instance")) {
        setup.instance = read_motsp_json(resolve(base, p.at("instance").get<std::string>()));
    } else if (p.contains("tsplib")) {
        std::vector<std::filesystem::path> paths;
        for (const auto& f : p.at("tsplib")) {
            paths.push_back(resolve(base, f.get<std::string>()));
        }
        setup.instance = read_tsplib_instance(paths);
    } else {
        const auto& r = p.at("random");
        reject_unknown(r, {"cities", "objectives", "seed", "max_cost"}, "problem.random");
        setup.instance = random_motsp_instance(r.at("cities").get<std::size_t>(), r.value("objectives", 2ul),
                                               r.value("seed", std::uint64_t{1}), r.value("max_cost", 100));
    }
    if (p.contains("reference_front")) {
        setup.reference =
            load_reference(resolve(base, p.at("reference_front").get<std::string>()), setup.instance.objectives());
    } else if (setup.instance.cities <= EnumerationLimit{}.max_cities) {
        setup.reference = brute_force_pareto(setup.instance);
    } else {
        throw SpecError("problem: 'reference_front' is required for instances with more than " +
                        std::to_string(EnumerationLimit{}.max_cities) + " cities");
    }
    return setup;
}

Scenario parse_scenario(const json& s, const ProblemSetup& problem)
{
    reject_unknown(s,
                   {"name", "algorithm", "mu", "p_c", "p_s", "p_s_basis", "update", "archive", "budget", "stop", "crossover",
                    "mutation_rate", "reference_point"},
                   "scenario");
    Scenario out;
    out.name = s.at("name").get<std::string>();
    auto& c = out.config;
    const bool ojzj = std::holds_alternative<OjzjParams>(problem);
    c.algorithm = parse_algorithm(s.at("algorithm").get<std::string>());
    c.p_c = s.value("p_c", c.p_c);
    c.p_s = s.value("p_s", 0.0);
    const auto basis = s.value("p_s_basis", std::string("pool"));
    if (basis == "population") {
        c.survival_basis = SurvivalBasis::population;
    } else if (basis != "pool") {
        throw SpecError("unknown p_s_basis '" + basis + "' (pool | population)");
    }
    c.update = parse_update(s.value("update", std::string("deterministic")));
    c.archive_enabled = s.value("archive", false);
    if (s.contains("mu")) {
        c.mu = s.at("mu").get<std::size_t>();
    } else if (ojzj) {
        c.mu = ojzj_population_rule(std::get<OjzjParams>(problem), c.archive_enabled, c.algorithm);
    } else {
        throw SpecError("scenario '" + out.name + "': 'mu' is required");
    }
    c.stop = ojzj ? StopRule::full_front_coverage : StopRule::budget_only;
    c.budget = ojzj ? ojzj_safety_budget : motsp_default_budget;
    if (s.contains("stop")) {
        c.stop = parse_stop(s.at("stop").get<std::string>());
    }
    if (s.contains("budget")) {
        c.budget = s.at("budget").get<std::uint64_t>();
    }
    if (s.contains("crossover")) {
        c.bit_crossover = parse_crossover(s.at("crossover").get<std::string>());
    }
    if (s.contains("mutation_rate")) {
        c.mutation_rate = s.at("mutation_rate").get<double>();
    }
    if (s.contains("reference_point")) {
        const auto values = s.at("reference_point").get<std::vector<double>>();
        const Direction dir = ojzj ? Direction::maximize : Direction::minimize;
        c.reference_point = ObjectiveVector::uniform(values, dir);
    }
    return out;
}

std::unique_ptr<Problem> make_problem(const ProblemSetup& setup)
{
    if (const auto* p = std::get_if<OjzjParams>(&setup)) {
        return std::make_unique<OjzjProblem>(*p);
    }
    const auto& m = std::get<MotspSetup>(setup);
    return std::make_unique<MotspProblem>(m.instance, m.reference);
}

ResultRow run_one(const ExperimentSpec& spec, const Problem& problem, std::size_t scenario, std::size_t replication,
                  bool timing)
{
    const auto& sc = spec.scenarios.at(scenario);
    ResultRow row;
    row.scenario = sc.name;
    row.replication = replication;
    row.seed = cell_seed(spec.base_seed, sc.name, replication);
    AlgorithmConfig cfg = sc.config;
    cfg.seed = row.seed;

    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(cfg, problem);
    const auto stop = std::chrono::steady_clock::now();

    row.evaluations = result.evaluations_used;
    row.success = result.success;
    if (const auto* m = std::get_if<MotspSetup>(&spec.problem)) {
        const auto& kept = cfg.archive_enabled ? result.final_archive : result.final_population;
        const auto obtained = objectives_of(kept);
        row.indicator = igd(m->reference.points, obtained);
    } else {
        row.indicator = static_cast<double>(result.evaluations_used);
    }
    if (timing) {
        row.wallclock_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    return row;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

} // namespace

void ExperimentSpec::validate() const
{
    if (replications < 1) {
        throw SpecError("replications must be at least 1");
    }
    if (scenarios.empty()) {
        throw SpecError("at least one scenario is required");
    }
    std::set<std::string> names;
    for (const auto& s : scenarios) {
        if (s.name.empty()) {
            throw SpecError("scenario names must be non-empty");
        }
        if (!names.insert(s.name).second) {
            throw SpecError("duplicate scenario name '" + s.name + "'");
        }
        try {
            s.config.validate();
        } catch (const ConfigError& e) {
            throw ConfigError("scenario '" + s.name + "': " + e.what());
        }
        if (std::holds_alternative<MotspSetup>(problem) && s.config.stop == StopRule::full_front_coverage &&
            std::get<MotspSetup>(problem).reference.points.empty()) {
            throw SpecError("scenario '" + s.name + "': coverage stop needs a reference front");
        }
    }
    if (baseline && !names.count(*baseline)) {
        throw SpecError("baseline '" + *baseline + "' is not a scenario");
    }
}

std::string ExperimentSpec::baseline_name() const
{
    if (baseline) {
        return *baseline;
    }
    return scenarios.empty() ? std::string() : scenarios.back().name;
}

ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("experiment spec: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        reject_unknown(doc, {"problem", "scenarios", "replications", "base_seed", "output_dir", "baseline"},
                       "experiment spec");
        spec.problem = parse_problem(doc.at("problem"), base_dir);
        for (const auto& s : doc.at("scenarios")) {
            spec.scenarios.push_back(parse_scenario(s, spec.problem));
        }
        spec.replications = doc.value("replications", std::size_t{1});
        spec.base_seed = doc.value("base_seed", std::uint64_t{0});
        if (doc.contains("output_dir")) {
            spec.output_dir = resolve(base_dir, doc.at("output_dir").get<std::string>());
        }
        if (doc.contains("baseline")) {
            spec.baseline = doc.at("baseline").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("experiment spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InstanceError("cannot open experiment spec " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_spec(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
}

std::size_t ojzj_population_rule(const OjzjParams& params, bool archived, Algorithm algorithm)
{
    params.validate();
    if (algorithm == Algorithm::nsga2) {
        return archived ? 8 : 8 * (params.n - 2 * params.k + 3);
    }
    return archived ? 5 : 2 * (params.n - 2 * params.k + 4);
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& scenario, std::size_t replication)
{
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char c : scenario) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return base_seed ^ mix64(h ^ mix64(static_cast<std::uint64_t>(replication) + 1));
}

ResultRow run_cell(const ExperimentSpec& spec, std::size_t scenario, std::size_t replication, bool timing)
{
    const auto problem = make_problem(spec.problem);
    return run_one(spec, *problem, scenario, replication, timing);
}

std::vector<ResultRow> run_cells(const ExperimentSpec& spec, const RunOptions& options)
{
    spec.validate();
    const auto problem = make_problem(spec.problem);
    const std::size_t total = spec.scenarios.size() * spec.replications;
    std::vector<ResultRow> rows(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                rows[i] = run_one(spec, *problem, i / spec.replications, i % spec.replications, options.timing);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, total));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::string rows_to_csv(std::span<const ResultRow> rows)
{
    std::string out = "scenario,replication,seed,evaluations,success,indicator,wallclock_ms\n";
    for (const auto& r : rows) {
        out += csv_field(r.scenario);
        out += ',' + std::to_string(r.replication);
        out += ',' + std::to_string(r.seed);
        out += ',' + std::to_string(r.evaluations);
        out += r.success ? ",1" : ",0";
        out += ',' + format_real(r.indicator);
        out += ',' + format_real(r.wallclock_ms);
        out += '\n';
    }
    return out;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, const RunOptions& options,
                                const std::optional<std::filesystem::path>& out_dir)
{
    ExperimentOutput out;
    out.rows = run_cells(spec, options);
    out.summary = summarize(out.rows, spec.baseline_name());
    const auto dir = out_dir.value_or(spec.output_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "rows.csv", rows_to_csv(out.rows));
    write_file(dir / "summary.json", summary_to_json(out.summary));
    return out;
}

} // namespace emo
