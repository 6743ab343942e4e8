// Main loops of SMS-EMOA and NSGA-II.
#include "emo/moea.hpp"

#include <algorithm>
#include <numeric>

namespace emo {

const char* to_string(Algorithm a) noexcept
{
    return a == Algorithm::sms_emoa ? "sms_emoa" : "nsga2";
}

const char* to_string(UpdatePolicy u) noexcept
{
    return u == UpdatePolicy::spu ? "spu" : "deterministic";
}

const char* to_string(StopRule s) noexcept
{
    return s == StopRule::full_front_coverage ? "full_front_coverage" : "budget_only";
}

const char* to_string(SurvivalBasis b) noexcept
{
    return b == SurvivalBasis::population ? "population" : "pool";
}

void AlgorithmConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (mu == 0) {
        fail("population size must be positive");
    }
    if (!(p_c >= 0.0 && p_c <= 1.0)) {
        fail("crossover probability must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate > 0.0 && *mutation_rate <= 1.0)) {
        fail("mutation rate must lie in (0, 1]");
    }
    if (budget < mu) {
        fail("budget " + std::to_string(budget) + " cannot cover initialization of " + std::to_string(mu) +
             " solutions");
    }
    if (algorithm == Algorithm::nsga2 && mu % 2 != 0) {
        fail("NSGA-II pairs parents, so μ must be even (got " + std::to_string(mu) + ")");
    }
    if (update == UpdatePolicy::spu) {
        if (!(p_s > 0.0)) {
            fail("update=spu needs p_s > 0; use update=deterministic instead");
        }
        const double m = static_cast<double>(mu);
        const double rate = pool_survival();
        if (algorithm == Algorithm::sms_emoa) {
            if (rate < 1.0 / (m + 1.0) - 1e-12 || rate >= 1.0) {
                fail("SMS-EMOA SPU needs p_s in [1/(μ+1), 1)");
            }
            if (sms_spu_competitors(mu + 1, rate) < 1) {
                fail("SMS-EMOA SPU needs floor((μ+1)(1-p_s)) >= 1");
            }
        } else {
            if (rate < 1.0 / (2.0 * m) - 1e-12 || rate >= 0.5) {
                fail("NSGA-II SPU needs p_s in [1/(2μ), 1/2) of the pool");
            }
        }
    } else if (p_s != 0.0) {
        fail("p_s is only meaningful with update=spu");
    }
    if (reference_point && reference_point->size() != 2) {
        fail("reference point must be bi-objective");
    }
}

double AlgorithmConfig::pool_survival() const noexcept
{
    if (survival_basis == SurvivalBasis::pool) {
        return p_s;
    }
    const double m = static_cast<double>(mu);
    const double pool = algorithm == Algorithm::nsga2 ? 2.0 * m : m + 1.0;
    return p_s * m / pool;
}

namespace {

/// Tracks how many front points are attained by the population ∪ archive.
class CoverageTracker {
public:
    explicit CoverageTracker(const std::optional<ParetoFront>& front)
    {
        if (!front) {
            return;
        }
        enabled_ = true;
        for (std::size_t i = 0; i < front->points.size(); ++i) {
            index_.emplace_back(front->points[i], i);
        }
        std::sort(index_.begin(), index_.end(),
                  [](const auto& a, const auto& b) { return lexicographic_less(a.first, b.first); });
        population_.assign(front->points.size(), 0);
        archive_.assign(front->points.size(), 0);
    }

    bool enabled() const noexcept { return enabled_; }
    std::size_t covered() const noexcept { return covered_; }
    bool complete() const noexcept { return enabled_ && covered_ == population_.size(); }

    void add_population(const ObjectiveVector& v) { adjust(population_, v, +1); }
    void remove_population(const ObjectiveVector& v) { adjust(population_, v, -1); }
    void add_archive(const ObjectiveVector& v) { adjust(archive_, v, +1); }
    void remove_archive(const ObjectiveVector& v) { adjust(archive_, v, -1); }

    void reset_population(std::span<const Individual> pop)
    {
        if (!enabled_) {
            return;
        }
        for (std::size_t i = 0; i < population_.size(); ++i) {
            if (population_[i] > 0 && archive_[i] == 0) {
                --covered_;
            }
            population_[i] = 0;
        }
        for (const auto& ind : pop) {
            add_population(ind.objectives);
        }
    }

private:
    std::optional<std::size_t> locate(const ObjectiveVector& v) const
    {
        auto it = std::lower_bound(index_.begin(), index_.end(), v,
                                   [](const auto& entry, const ObjectiveVector& key) {
                                       return lexicographic_less(entry.first, key);
                                   });
        if (it != index_.end() && it->first == v) {
            return it->second;
        }
        return std::nullopt;
    }

    void adjust(std::vector<long>& counts, const ObjectiveVector& v, long delta)
    {
        if (!enabled_) {
            return;
        }
        auto slot = locate(v);
        if (!slot) {
            return;
        }
        const bool before = population_[*slot] + archive_[*slot] > 0;
        counts[*slot] += delta;
        const bool after = population_[*slot] + archive_[*slot] > 0;
        if (!before && after) {
            ++covered_;
        } else if (before && !after) {
            --covered_;
        }
    }

    bool enabled_ = false;
    std::vector<std::pair<ObjectiveVector, std::size_t>> index_;
    std::vector<long> population_;
    std::vector<long> archive_;
    std::size_t covered_ = 0;
};

void prepare(const AlgorithmConfig& cfg, const Problem& problem, Algorithm expected)
{
    if (cfg.algorithm != expected) {
        throw ConfigError(std::string("configuration targets ") + to_string(cfg.algorithm));
    }
    cfg.validate();
    if (cfg.stop == StopRule::full_front_coverage && !problem.known_front()) {
        throw ConfigError("stop=full_front_coverage needs a problem with a known front");
    }
}

struct RunState {
    std::vector<Individual> population;
    std::vector<ObjectiveVector> objectives;
    Archive archive;
    CoverageTracker tracker;
    RunResult result;

    RunState(const Problem& problem) : tracker(problem.known_front()) {}

    void record_coverage()
    {
        if (!tracker.enabled()) {
            return;
        }
        auto& traj = result.coverage_trajectory;
        if (traj.empty() || traj.back().covered != tracker.covered()) {
            traj.push_back({result.evaluations_used, tracker.covered()});
        }
    }

    void archive_insert(const Individual& ind)
    {
        if (archive.insert(ind)) {
            for (const auto& gone : archive.last_evicted()) {
                tracker.remove_archive(gone);
            }
            tracker.add_archive(ind.objectives);
        }
    }

    bool should_stop(const AlgorithmConfig& cfg) const
    {
        return (cfg.stop == StopRule::full_front_coverage && tracker.complete()) ||
               result.evaluations_used >= cfg.budget;
    }

    RunResult finish(const AlgorithmConfig& cfg)
    {
        result.success = cfg.stop == StopRule::full_front_coverage ? tracker.complete() : true;
        result.final_population = std::move(population);
        result.final_archive.assign(archive.members().begin(), archive.members().end());
        return std::move(result);
    }
};

void initialize(RunState& state, const AlgorithmConfig& cfg, const Problem& problem, RngStream& rng)
{
    state.population.reserve(cfg.mu + (cfg.algorithm == Algorithm::nsga2 ? cfg.mu : 1));
    for (std::size_t i = 0; i < cfg.mu; ++i) {
        Genome g = problem.random_genome(rng);
        ObjectiveVector f = problem.evaluate(g);
        state.population.push_back({std::move(g), f});
        state.objectives.push_back(f);
        state.tracker.add_population(f);
    }
    state.result.evaluations_used = cfg.mu;
    state.record_coverage();
}

} // namespace

RunResult run_sms_emoa(const AlgorithmConfig& cfg, const Problem& problem, RngStream& rng,
                       const GenerationObserver& observer)
{
    prepare(cfg, problem, Algorithm::sms_emoa);
    RunState state(problem);
    initialize(state, cfg, problem, rng);
    const VariationConfig variation = cfg.variation();
    const std::size_t mu = cfg.mu;

    std::vector<std::size_t> everyone(mu + 1);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});
    std::vector<Individual> combined_copy;

    while (!state.should_stop(cfg)) {
        const Individual& x = state.population[rng.below(mu)];
        Genome child;
        if (rng.unit() < cfg.p_c) {
            const Individual& y = state.population[rng.below(mu)];
            child = crossover_single(x.genome, y.genome, variation, rng);
        } else {
            child = x.genome;
        }
        child = mutate(child, variation, rng);
        ObjectiveVector f = problem.evaluate(child);
        ++state.result.evaluations_used;

        Individual offspring{std::move(child), f};
        if (cfg.archive_enabled) {
            state.archive_insert(offspring);
        }
        state.population.push_back(std::move(offspring));
        state.objectives.push_back(f);
        state.tracker.add_population(f);
        if (observer) {
            combined_copy = state.population;
        }

        std::size_t removed;
        if (cfg.update == UpdatePolicy::spu) {
            const auto competitors =
                rng.sample_without_replacement(mu + 1, sms_spu_competitors(mu + 1, cfg.pool_survival()));
            removed = sms_removal_index(state.objectives, competitors, cfg.reference_point, rng);
        } else {
            removed = sms_removal_index(state.objectives, everyone, cfg.reference_point, rng);
        }
        state.tracker.remove_population(state.objectives[removed]);
        // Order within P carries no meaning; swap-and-pop keeps removal O(1).
        std::swap(state.population[removed], state.population.back());
        std::swap(state.objectives[removed], state.objectives.back());
        state.population.pop_back();
        state.objectives.pop_back();
        ++state.result.generations;

        if (observer) {
            observer(GenerationEvent{state.result.generations, state.result.evaluations_used, combined_copy,
                                     state.population, cfg.archive_enabled ? &state.archive : nullptr});
        }
        state.record_coverage();
    }
    return state.finish(cfg);
}

RunResult run_nsga2(const AlgorithmConfig& cfg, const Problem& problem, RngStream& rng,
                    const GenerationObserver& observer)
{
    prepare(cfg, problem, Algorithm::nsga2);
    RunState state(problem);
    initialize(state, cfg, problem, rng);
    const VariationConfig variation = cfg.variation();
    const std::size_t mu = cfg.mu;

    std::vector<std::size_t> order(mu);
    std::vector<std::size_t> everyone(2 * mu);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});
    const std::size_t spu_kept = cfg.update == UpdatePolicy::spu ? nsga2_spu_kept(2 * mu, cfg.pool_survival()) : 0;

    while (!state.should_stop(cfg)) {
        // Fair selection: every member once, in random order, paired consecutively.
        std::iota(order.begin(), order.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t i = 0; i + 1 < mu; i += 2) {
            const Individual& x = state.population[order[i]];
            const Individual& y = state.population[order[i + 1]];
            std::pair<Genome, Genome> children;
            if (rng.unit() < cfg.p_c) {
                children = crossover_pair(x.genome, y.genome, variation, rng);
            } else {
                children = {x.genome, y.genome};
            }
            for (Genome* g : {&children.first, &children.second}) {
                Genome mutated = mutate(*g, variation, rng);
                ObjectiveVector f = problem.evaluate(mutated);
                state.population.push_back({std::move(mutated), f});
                state.objectives.push_back(f);
            }
        }
        state.result.evaluations_used += mu;
        if (cfg.archive_enabled) {
            for (std::size_t i = mu; i < 2 * mu; ++i) {
                state.archive_insert(state.population[i]);
            }
        }

        std::vector<std::size_t> survivors;
        if (cfg.update == UpdatePolicy::spu) {
            const auto competitors = rng.sample_without_replacement(2 * mu, mu + spu_kept);
            const auto chosen = nsga2_select(state.objectives, competitors, spu_kept, rng);
            std::vector<bool> keep(2 * mu, true);
            for (std::size_t i : competitors) {
                keep[i] = false;
            }
            for (std::size_t i : chosen) {
                keep[i] = true;
            }
            for (std::size_t i = 0; i < 2 * mu; ++i) {
                if (keep[i]) {
                    survivors.push_back(i);
                }
            }
        } else {
            survivors = nsga2_select(state.objectives, everyone, mu, rng);
        }

        std::vector<Individual> next;
        std::vector<ObjectiveVector> next_objectives;
        next.reserve(2 * mu);
        next_objectives.reserve(2 * mu);
        for (std::size_t i : survivors) {
            next.push_back(observer ? state.population[i] : std::move(state.population[i]));
            next_objectives.push_back(state.objectives[i]);
        }
        ++state.result.generations;
        if (observer) {
            observer(GenerationEvent{state.result.generations, state.result.evaluations_used, state.population, next,
                                     cfg.archive_enabled ? &state.archive : nullptr});
        }
        state.population = std::move(next);
        state.objectives = std::move(next_objectives);
        state.tracker.reset_population(state.population);
        state.record_coverage();
    }
    return state.finish(cfg);
}

RunResult run(const AlgorithmConfig& cfg, const Problem& problem, const GenerationObserver& observer)
{
    RngStream rng(cfg.seed);
    return cfg.algorithm == Algorithm::sms_emoa ? run_sms_emoa(cfg, problem, rng, observer)
                                                : run_nsga2(cfg, problem, rng, observer);
}

} // namespace emo
