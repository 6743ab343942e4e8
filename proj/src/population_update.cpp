// Survivor selection for SMS-EMOA ((μ+1) mode) and NSGA-II ((μ+μ) mode),
// each in a deterministic and a stochastic (SPU) variant.
#include "emo/moea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emo {

std::size_t floor_count(double x) noexcept
{
    if (x <= 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(std::floor(x + 1e-9));
}

std::size_t sms_spu_competitors(std::size_t q_size, double p_s) noexcept
{
    return floor_count(static_cast<double>(q_size) * (1.0 - p_s));
}

std::size_t nsga2_spu_kept(std::size_t q_size, double p_s) noexcept
{
    return floor_count(static_cast<double>(q_size) * (0.5 - p_s));
}

std::size_t sms_removal_index(std::span<const ObjectiveVector> q, std::span<const std::size_t> competitors,
                              const ReferencePoint& ref, RngStream& rng)
{
    if (competitors.empty()) {
        throw ContractViolation("SMS-EMOA update needs at least one competitor");
    }
    std::vector<ObjectiveVector> sub;
    sub.reserve(competitors.size());
    for (std::size_t idx : competitors) {
        sub.push_back(q[idx]);
    }
    const auto partition = non_dominated_sort(sub);
    const auto& last = partition.last();
    std::vector<ObjectiveVector> last_front;
    last_front.reserve(last.size());
    for (std::size_t i : last) {
        last_front.push_back(sub[i]);
    }
    const auto contributions = hv_contributions_2d(last_front, ref);
    return competitors[last[worst_by_delta(contributions, rng)]];
}

std::vector<std::size_t> nsga2_select(std::span<const ObjectiveVector> q, std::span<const std::size_t> competitors,
                                      std::size_t keep, RngStream& rng)
{
    if (keep > competitors.size()) {
        throw ContractViolation("cannot keep more members than compete");
    }
    if (keep == 0) {
        return {};
    }
    std::vector<ObjectiveVector> sub;
    sub.reserve(competitors.size());
    for (std::size_t idx : competitors) {
        sub.push_back(q[idx]);
    }
    const auto partition = non_dominated_sort(sub);
    std::vector<std::size_t> chosen;
    chosen.reserve(keep);
    for (const auto& front : partition.fronts) {
        if (chosen.size() + front.size() < keep) {
            for (std::size_t i : front) {
                chosen.push_back(competitors[i]);
            }
            continue;
        }
        std::vector<ObjectiveVector> critical;
        critical.reserve(front.size());
        for (std::size_t i : front) {
            critical.push_back(sub[i]);
        }
        const auto distance = crowding_distance(critical);
        for (std::size_t pos : most_crowding_distant(distance, keep - chosen.size(), rng)) {
            chosen.push_back(competitors[front[pos]]);
        }
        break;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::vector<Individual> sms_update_deterministic(std::vector<Individual> q, const ReferencePoint& ref, RngStream& rng)
{
    const auto objs = objectives_of(q);
    std::vector<std::size_t> all(q.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const std::size_t removed = sms_removal_index(objs, all, ref, rng);
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(removed));
    return q;
}

std::vector<Individual> sms_update_spu(std::vector<Individual> q, double p_s, const ReferencePoint& ref, RngStream& rng)
{
    const std::size_t count = sms_spu_competitors(q.size(), p_s);
    if (count < 1) {
        throw ContractViolation("SPU selects no competitors: floor(|Q|(1-p_s)) < 1");
    }
    const auto objs = objectives_of(q);
    const auto competitors = rng.sample_without_replacement(q.size(), count);
    const std::size_t removed = sms_removal_index(objs, competitors, ref, rng);
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(removed));
    return q;
}

namespace {

std::vector<Individual> pick(const std::vector<Individual>& q, std::span<const std::size_t> indices)
{
    std::vector<Individual> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        out.push_back(q[i]);
    }
    return out;
}

void require_even(std::size_t n)
{
    if (n == 0 || n % 2 != 0) {
        throw ContractViolation("NSGA-II update expects |Q| = 2μ");
    }
}

} // namespace

std::vector<Individual> nsga2_update_deterministic(const std::vector<Individual>& q, RngStream& rng)
{
    require_even(q.size());
    const auto objs = objectives_of(q);
    std::vector<std::size_t> all(q.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return pick(q, nsga2_select(objs, all, q.size() / 2, rng));
}

std::vector<Individual> nsga2_update_spu(const std::vector<Individual>& q, double p_s, RngStream& rng)
{
    require_even(q.size());
    const std::size_t mu = q.size() / 2;
    const std::size_t kept = nsga2_spu_kept(q.size(), p_s);
    // floor(2μ(1-p_s)) - floor(2μ(1/2-p_s)) = μ exactly.
    const std::size_t competing = mu + kept;
    const auto objs = objectives_of(q);
    const auto competitors = rng.sample_without_replacement(q.size(), competing);
    const auto chosen = nsga2_select(objs, competitors, kept, rng);

    std::vector<bool> survives(q.size(), true);
    for (std::size_t i : competitors) {
        survives[i] = false;
    }
    for (std::size_t i : chosen) {
        survives[i] = true;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (survives[i]) {
            idx.push_back(i);
        }
    }
    return pick(q, idx);
}

} // namespace emo
