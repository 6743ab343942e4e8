#include "emo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emo {

void OjzjParams::validate() const
{
    if (k < 2 || 2 * k >= n) {
        throw ContractViolation("OneJumpZeroJump requires 2 <= k < n/2, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
}

ObjectiveVector ojzj_evaluate(const OjzjParams& params, const Bitstring& g)
{
    if (g.size() != params.n) {
        throw ContractViolation("bitstring length " + std::to_string(g.size()) + " differs from n=" +
                                std::to_string(params.n));
    }
    const auto n = static_cast<long>(params.n);
    const auto k = static_cast<long>(params.k);
    const auto ones = static_cast<long>(ones_count(g));
    const long zeros = n - ones;
    const long f1 = (ones <= n - k || ones == n) ? k + ones : n - ones;
    const long f2 = (zeros <= n - k || zeros == n) ? k + zeros : n - zeros;
    return ObjectiveVector::maximizing({static_cast<double>(f1), static_cast<double>(f2)});
}

ParetoFront ojzj_pareto_front(const OjzjParams& params)
{
    params.validate();
    const auto n = static_cast<long>(params.n);
    const auto k = static_cast<long>(params.k);
    ParetoFront front;
    auto add = [&](long a, bool inner) {
        front.points.push_back(
            ObjectiveVector::maximizing({static_cast<double>(a), static_cast<double>(n + 2 * k - a)}));
        front.inner.push_back(inner);
    };
    add(k, false);
    for (long a = 2 * k; a <= n; ++a) {
        add(a, true);
    }
    add(n + k, false);
    return front;
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    CostMatrix m;
    m.d_ = rows.size();
    m.data_.resize(m.d_ * m.d_);
    for (std::size_t i = 0; i < m.d_; ++i) {
        if (rows[i].size() != m.d_) {
            throw ContractViolation("cost matrix row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(m.d_));
        }
        for (std::size_t j = 0; j < m.d_; ++j) {
            double v = rows[i][j];
            if (!std::isfinite(v) || v < 0) {
                throw ContractViolation("cost matrix entries must be finite and non-negative");
            }
            m.data_[i * m.d_ + j] = v;
        }
    }
    for (std::size_t i = 0; i < m.d_; ++i) {
        if (m(i, i) != 0.0) {
            throw ContractViolation("cost matrix diagonal must be zero");
        }
        for (std::size_t j = i + 1; j < m.d_; ++j) {
            if (m(i, j) != m(j, i)) {
                throw ContractViolation("cost matrix is not symmetric at (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
            }
        }
    }
    return m;
}

CostMatrix CostMatrix::from_euclidean(const std::vector<std::array<double, 2>>& coords)
{
    CostMatrix m;
    m.d_ = coords.size();
    m.data_.assign(m.d_ * m.d_, 0.0);
    for (std::size_t i = 0; i < m.d_; ++i) {
        for (std::size_t j = i + 1; j < m.d_; ++j) {
            double dx = coords[i][0] - coords[j][0];
            double dy = coords[i][1] - coords[j][1];
            double d = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
            m.data_[i * m.d_ + j] = d;
            m.data_[j * m.d_ + i] = d;
        }
    }
    return m;
}

void MotspInstance::validate() const
{
    if (matrices.size() < 2) {
        throw ContractViolation("a multi-objective TSP instance needs at least two cost matrices");
    }
    if (matrices.size() > ObjectiveVector::max_objectives) {
        throw ContractViolation("too many cost matrices");
    }
    if (cities < 3) {
        throw ContractViolation("a TSP instance needs at least three cities");
    }
    for (const auto& m : matrices) {
        if (m.dimension() != cities) {
            throw ContractViolation("cost matrix dimension " + std::to_string(m.dimension()) +
                                    " differs from D=" + std::to_string(cities));
        }
    }
}

ObjectiveVector motsp_evaluate(const MotspInstance& inst, const Permutation& tour)
{
    if (tour.size() != inst.cities) {
        throw ContractViolation("tour visits " + std::to_string(tour.size()) + " cities, instance has " +
                                std::to_string(inst.cities));
    }
    std::array<double, ObjectiveVector::max_objectives> costs{};
    const std::size_t d = inst.cities;
    for (std::size_t j = 0; j < inst.matrices.size(); ++j) {
        const auto& c = inst.matrices[j];
        double total = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            total += c(tour[i], tour[(i + 1) % d]);
        }
        costs[j] = total;
    }
    return ObjectiveVector::uniform(std::span<const double>(costs.data(), inst.matrices.size()), Direction::minimize);
}

MotspInstance random_motsp_instance(std::size_t cities, std::size_t objectives, std::uint64_t seed, int max_cost)
{
    RngStream rng(seed, 0x7473705fULL);
    MotspInstance inst;
    inst.cities = cities;
    for (std::size_t o = 0; o < objectives; ++o) {
        std::vector<std::vector<double>> rows(cities, std::vector<double>(cities, 0.0));
        for (std::size_t i = 0; i < cities; ++i) {
            for (std::size_t j = i + 1; j < cities; ++j) {
                double w = 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(max_cost)));
                rows[i][j] = w;
                rows[j][i] = w;
            }
        }
        inst.matrices.push_back(CostMatrix::from_rows(rows));
        inst.sources.push_back(MotspInstance::Source::explicit_matrix);
    }
    inst.validate();
    return inst;
}

OjzjProblem::OjzjProblem(OjzjParams params) : params_(params)
{
    params_.validate();
    front_ = ojzj_pareto_front(params_);
}

Genome OjzjProblem::random_genome(RngStream& rng) const
{
    Bitstring b;
    b.bits.resize(params_.n);
    for (auto& bit : b.bits) {
        bit = static_cast<std::uint8_t>(rng.next() >> 63);
    }
    return b;
}

ObjectiveVector OjzjProblem::evaluate(const Genome& g) const
{
    const auto* b = std::get_if<Bitstring>(&g);
    if (!b) {
        throw ContractViolation("OneJumpZeroJump evaluates bitstring genomes only");
    }
    return ojzj_evaluate(params_, *b);
}

std::string OjzjProblem::name() const
{
    return "ojzj(n=" + std::to_string(params_.n) + ",k=" + std::to_string(params_.k) + ")";
}

MotspProblem::MotspProblem(MotspInstance inst, std::optional<ParetoFront> reference)
    : inst_(std::move(inst)), reference_(std::move(reference))
{
    inst_.validate();
}

Genome MotspProblem::random_genome(RngStream& rng) const
{
    std::vector<std::uint32_t> order(inst_.cities);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(order));
    return Permutation(std::move(order));
}

ObjectiveVector MotspProblem::evaluate(const Genome& g) const
{
    const auto* p = std::get_if<Permutation>(&g);
    if (!p) {
        throw ContractViolation("the TSP evaluates permutation genomes only");
    }
    return motsp_evaluate(inst_, *p);
}

std::string MotspProblem::name() const
{
    return "motsp(D=" + std::to_string(inst_.cities) + ",m=" + std::to_string(inst_.objectives()) + ")";
}

std::vector<ObjectiveVector> non_dominated_subset(std::span<const ObjectiveVector> points)
{
    std::vector<ObjectiveVector> kept;
    for (const auto& p : points) {
        bool rejected = false;
        for (auto it = kept.begin(); it != kept.end();) {
            auto rel = dominance(*it, p);
            if (rel == Dominance::a_dominates || rel == Dominance::equal) {
                rejected = true;
                break;
            }
            if (rel == Dominance::b_dominates) {
                it = kept.erase(it);
            } else {
                ++it;
            }
        }
        if (!rejected) {
            kept.push_back(p);
        }
    }
    std::sort(kept.begin(), kept.end(), lexicographic_less);
    return kept;
}

ParetoFront brute_force_pareto(const OjzjParams& params, EnumerationLimit limit)
{
    params.validate();
    if (params.n > limit.max_bits) {
        throw ContractViolation("exhaustive enumeration refused: n=" + std::to_string(params.n) + " exceeds " +
                                std::to_string(limit.max_bits) + " bits");
    }
    std::vector<ObjectiveVector> seen;
    Bitstring g = Bitstring::zeros(params.n);
    const std::uint64_t total = std::uint64_t{1} << params.n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < params.n; ++i) {
            g.bits[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
        }
        auto f = ojzj_evaluate(params, g);
        if (std::find(seen.begin(), seen.end(), f) == seen.end()) {
            seen.push_back(f);
        }
    }
    ParetoFront front;
    front.points = non_dominated_subset(seen);
    const double k = static_cast<double>(params.k);
    const double n = static_cast<double>(params.n);
    for (const auto& p : front.points) {
        front.inner.push_back(p[0] >= 2 * k && p[0] <= n);
    }
    return front;
}

ParetoFront brute_force_pareto(const MotspInstance& inst, EnumerationLimit limit)
{
    inst.validate();
    if (inst.cities > limit.max_cities) {
        throw ContractViolation("exhaustive enumeration refused: D=" + std::to_string(inst.cities) +
                                " exceeds " + std::to_string(limit.max_cities) + " cities");
    }
    // City 0 fixed first; tail permutations with tail.front() > tail.back()
    // are reversals of ones already visited.
    std::vector<std::uint32_t> tail(inst.cities - 1);
    std::iota(tail.begin(), tail.end(), 1u);
    std::vector<ObjectiveVector> candidates;
    std::vector<std::uint32_t> order(inst.cities);
    do {
        if (tail.front() > tail.back()) {
            continue;
        }
        order[0] = 0;
        std::copy(tail.begin(), tail.end(), order.begin() + 1);
        candidates.push_back(motsp_evaluate(inst, Permutation(order)));
    } while (std::next_permutation(tail.begin(), tail.end()));
    ParetoFront front;
    front.points = non_dominated_subset(candidates);
    return front;
}

} // namespace emo
