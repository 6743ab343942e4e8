// SMS-EMOA and NSGA-II with deterministic or stochastic population update
// (SPU) and an optional unbounded archive.
#ifndef EMO_MOEA_HPP
#define EMO_MOEA_HPP

#include "emo/core.hpp"
#include "emo/problems.hpp"
#include "emo/ranking.hpp"
#include "emo/variation.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace emo {

enum class Algorithm { sms_emoa, nsga2 };
enum class UpdatePolicy { deterministic, spu };
enum class StopRule { budget_only, full_front_coverage };
/// What p_s is a proportion of: the combined pool Q (μ+1 or 2μ members) or
/// the population size μ.
enum class SurvivalBasis { pool, population };

const char* to_string(Algorithm a) noexcept;
const char* to_string(UpdatePolicy u) noexcept;
const char* to_string(StopRule s) noexcept;
const char* to_string(SurvivalBasis b) noexcept;

/// Rejected algorithm configuration; raised before any evaluation happens.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::nsga2;
    std::size_t mu = 8;
    double p_c = 0.5;
    /// SPU survival proportion; must be positive when update == spu.
    double p_s = 0.0;
    SurvivalBasis survival_basis = SurvivalBasis::pool;
    UpdatePolicy update = UpdatePolicy::deterministic;
    bool archive_enabled = false;
    std::uint64_t budget = 1'000'000;
    StopRule stop = StopRule::budget_only;
    std::uint64_t seed = 0;

    std::optional<double> mutation_rate;
    BitCrossover bit_crossover = BitCrossover::one_point;
    /// Absent: SMS-EMOA keeps the two boundary points of the last front.
    ReferencePoint reference_point;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;
    VariationConfig variation() const { return {p_c, mutation_rate, bit_crossover}; }
    /// p_s as a proportion of the combined pool, which the update rules use.
    double pool_survival() const noexcept;
};

/// floor(x) tolerant to representation error just below an integer.
std::size_t floor_count(double x) noexcept;

/// Number of SMS-EMOA SPU competitors: floor(|Q| (1 - p_s)).
std::size_t sms_spu_competitors(std::size_t q_size, double p_s) noexcept;
/// Number of NSGA-II SPU competitors kept: floor(|Q| (1/2 - p_s)).
std::size_t nsga2_spu_kept(std::size_t q_size, double p_s) noexcept;

/// Unbounded archive of mutually non-dominated individuals.
class Archive {
public:
    /// Rejects x if a member strictly dominates it; otherwise removes every
    /// member x weakly dominates (equal vectors included) and inserts x.
    bool insert(const Individual& x);

    std::span<const Individual> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    /// Objective vectors removed by the most recent successful insert.
    std::span<const ObjectiveVector> last_evicted() const noexcept { return evicted_; }

private:
    std::vector<Individual> members_;
    std::vector<ObjectiveVector> evicted_;
};

/// Index (into `q`) of the member an SMS-EMOA update removes: the minimum-Δ
/// member of the last non-dominated front among `competitors`.
std::size_t sms_removal_index(std::span<const ObjectiveVector> q, std::span<const std::size_t> competitors,
                              const ReferencePoint& ref, RngStream& rng);

/// Indices (into `q`) of `keep` members chosen from `competitors` by
/// non-dominated rank, then crowding distance on the critical front.
std::vector<std::size_t> nsga2_select(std::span<const ObjectiveVector> q, std::span<const std::size_t> competitors,
                                      std::size_t keep, RngStream& rng);

std::vector<Individual> sms_update_deterministic(std::vector<Individual> q, const ReferencePoint& ref,
                                                 RngStream& rng);
std::vector<Individual> sms_update_spu(std::vector<Individual> q, double p_s, const ReferencePoint& ref,
                                       RngStream& rng);
std::vector<Individual> nsga2_update_deterministic(const std::vector<Individual>& q, RngStream& rng);
std::vector<Individual> nsga2_update_spu(const std::vector<Individual>& q, double p_s, RngStream& rng);

struct CoveragePoint {
    std::uint64_t evaluations;
    std::size_t covered;

    friend bool operator==(const CoveragePoint&, const CoveragePoint&) = default;
};

struct RunResult {
    std::uint64_t evaluations_used = 0;
    std::uint64_t generations = 0;
    /// Appended whenever the number of covered front points changes; only
    /// populated when the problem exposes a front.
    std::vector<CoveragePoint> coverage_trajectory;
    std::vector<Individual> final_population;
    std::vector<Individual> final_archive;
    bool success = false;
};

/// Snapshot handed to an observer after each population update.
struct GenerationEvent {
    std::uint64_t generation;
    std::uint64_t evaluations;
    /// P ∪ offspring before the update.
    std::span<const Individual> combined;
    /// The population after the update.
    std::span<const Individual> population;
    const Archive* archive;
};

using GenerationObserver = std::function<void(const GenerationEvent&)>;

RunResult run_sms_emoa(const AlgorithmConfig& cfg, const Problem& problem, RngStream& rng,
                       const GenerationObserver& observer = {});
RunResult run_nsga2(const AlgorithmConfig& cfg, const Problem& problem, RngStream& rng,
                    const GenerationObserver& observer = {});

/// Dispatches on cfg.algorithm with RngStream(cfg.seed).
RunResult run(const AlgorithmConfig& cfg, const Problem& problem, const GenerationObserver& observer = {});

} // namespace emo

#endif // EMO_MOEA_HPP
