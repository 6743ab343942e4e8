// Benchmark problems: OneJumpZeroJump over bitstrings and the
// multi-objective symmetric TSP over permutations, plus exact fronts.
#ifndef EMO_PROBLEMS_HPP
#define EMO_PROBLEMS_HPP

#include "emo/core.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace emo {

struct OjzjParams {
    std::size_t n = 0;
    std::size_t k = 0;

    /// Throws ContractViolation unless 2 <= k < n/2.
    void validate() const;
    std::size_t front_size() const noexcept { return n - 2 * k + 3; }
};

/// Mutually non-dominated objective vectors. `inner` is populated for
/// OneJumpZeroJump fronts only (true for points with a in [2k..n]).
struct ParetoFront {
    std::vector<ObjectiveVector> points;
    std::vector<bool> inner;

    std::size_t size() const noexcept { return points.size(); }
};

ObjectiveVector ojzj_evaluate(const OjzjParams& params, const Bitstring& g);
ParetoFront ojzj_pareto_front(const OjzjParams& params);

/// Dense symmetric D x D cost matrix with a zero diagonal.
class CostMatrix {
public:
    CostMatrix() = default;
    /// `rows[i][j]`; validated for shape, symmetry, zero diagonal, and
    /// non-negative finite entries.
    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);
    /// TSPLIB EUC_2D: nearest integer of the Euclidean distance.
    static CostMatrix from_euclidean(const std::vector<std::array<double, 2>>& coords);

    std::size_t dimension() const noexcept { return d_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * d_ + j]; }

private:
    std::size_t d_ = 0;
    std::vector<double> data_;
};

struct MotspInstance {
    enum class Source { explicit_matrix, euclidean_coordinates };

    std::size_t cities = 0;
    std::vector<CostMatrix> matrices;
    std::vector<Source> sources;

    std::size_t objectives() const noexcept { return matrices.size(); }
    void validate() const;
};

ObjectiveVector motsp_evaluate(const MotspInstance& inst, const Permutation& tour);

/// Random symmetric instance with integer costs in [1, max_cost]; used for
/// desk-scale experiments where exhaustive fronts are available.
MotspInstance random_motsp_instance(std::size_t cities, std::size_t objectives, std::uint64_t seed,
                                    int max_cost = 100);

/// Raised for malformed or unsupported instance/front files.
class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads one single-objective TSPLIB file (EUC_2D coordinates or an
/// EXPLICIT FULL_MATRIX) into a cost matrix.
CostMatrix read_tsplib(const std::filesystem::path& path);
CostMatrix parse_tsplib(std::istream& in, const std::string& origin = "<stream>");
/// Combines one TSPLIB file per objective; all must share the city count.
MotspInstance read_tsplib_instance(const std::vector<std::filesystem::path>& paths);

/// Native JSON: {"D": int, "objectives": [{"type": "matrix"|"coords", "data": ...}, ...]}.
MotspInstance read_motsp_json(const std::filesystem::path& path);
MotspInstance parse_motsp_json(const std::string& text);
std::string motsp_to_json(const MotspInstance& inst);

/// Reference-front file: one vector per line, whitespace-separated reals.
std::vector<std::vector<double>> read_front_file(const std::filesystem::path& path);
std::vector<std::vector<double>> parse_front(std::istream& in);
void write_front(std::ostream& out, const ParetoFront& front);

/// A problem as seen by the algorithms.
class Problem {
public:
    virtual ~Problem() = default;

    virtual Genome random_genome(RngStream& rng) const = 0;
    virtual ObjectiveVector evaluate(const Genome& g) const = 0;
    /// Exact Pareto front when it is known in closed form.
    virtual std::optional<ParetoFront> known_front() const { return std::nullopt; }
    virtual std::string name() const = 0;
    /// Length of bitstring genomes or number of cities.
    virtual std::size_t genome_size() const = 0;
};

class OjzjProblem final : public Problem {
public:
    explicit OjzjProblem(OjzjParams params);

    Genome random_genome(RngStream& rng) const override;
    ObjectiveVector evaluate(const Genome& g) const override;
    std::optional<ParetoFront> known_front() const override { return front_; }
    std::string name() const override;
    std::size_t genome_size() const override { return params_.n; }

    const OjzjParams& params() const noexcept { return params_; }

private:
    OjzjParams params_;
    ParetoFront front_;
};

class MotspProblem final : public Problem {
public:
    explicit MotspProblem(MotspInstance inst, std::optional<ParetoFront> reference = std::nullopt);

    Genome random_genome(RngStream& rng) const override;
    ObjectiveVector evaluate(const Genome& g) const override;
    std::optional<ParetoFront> known_front() const override { return reference_; }
    std::string name() const override;
    std::size_t genome_size() const override { return inst_.cities; }

    const MotspInstance& instance() const noexcept { return inst_; }

private:
    MotspInstance inst_;
    std::optional<ParetoFront> reference_;
};

struct EnumerationLimit {
    std::size_t max_bits = 20;
    std::size_t max_cities = 9;
};

/// Exhaustive enumeration + pairwise dominance filtering. Permutations are
/// canonicalized (city 0 first, orientation fixed) before evaluation.
ParetoFront brute_force_pareto(const OjzjParams& params, EnumerationLimit limit = {});
ParetoFront brute_force_pareto(const MotspInstance& inst, EnumerationLimit limit = {});

/// Removes dominated and duplicate vectors (pairwise filter), result sorted
/// lexicographically.
std::vector<ObjectiveVector> non_dominated_subset(std::span<const ObjectiveVector> points);

} // namespace emo

#endif // EMO_PROBLEMS_HPP
