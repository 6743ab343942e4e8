#include "emo/harness.hpp"
#include "emo/oracle.hpp"
#include "emo/ranking.hpp"

#include <cmath>

namespace emo {

namespace {

void record(VerifyCheck& check, bool ok, const std::string& what)
{
    ++check.cases;
    if (!ok) {
        if (check.mismatches == 0) {
            check.first_mismatch = what;
        }
        ++check.mismatches;
    }
}

std::vector<ObjectiveVector> random_integer_points(RngStream& rng, std::size_t count, std::size_t m, int lo, int hi,
                                                   std::span<const Direction> dirs)
{
    std::vector<ObjectiveVector> out;
    std::vector<double> values(m);
    for (std::size_t i = 0; i < count; ++i) {
        for (auto& v : values) {
            v = lo + static_cast<double>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        }
        out.emplace_back(values, dirs.first(m));
    }
    return out;
}

} // namespace

VerifyCheck verify_sorting(std::uint64_t seed, std::size_t trials)
{
    VerifyCheck check{"non_dominated_sort vs sort_quadratic", 0, 0, {}};
    RngStream rng(seed, 11);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t m = 2 + rng.below(2);
        const std::size_t n = 1 + rng.below(64);
        std::vector<Direction> dirs(m);
        for (auto& d : dirs) {
            d = rng.bernoulli(0.5) ? Direction::maximize : Direction::minimize;
        }
        // Small value ranges force duplicates and long dominance chains.
        const int hi = 1 + static_cast<int>(rng.below(8));
        const auto points = random_integer_points(rng, n, m, 0, hi, dirs);
        const auto fast = non_dominated_sort(points);
        const auto slow = oracle::sort_quadratic(points);
        record(check, fast.fronts == slow.fronts, "trial " + std::to_string(t));
    }
    return check;
}

VerifyCheck verify_hypervolume(std::uint64_t seed, std::size_t trials)
{
    VerifyCheck check{"hv_2d / hv_contributions_2d vs hv_raster", 0, 0, {}};
    RngStream rng(seed, 12);
    for (std::size_t t = 0; t < trials; ++t) {
        const bool minimize = rng.bernoulli(0.5);
        const Direction d = minimize ? Direction::minimize : Direction::maximize;
        const Direction dirs[2] = {d, d};
        const std::size_t n = 1 + rng.below(12);
        const auto points = random_integer_points(rng, n, 2, 0, 30, dirs);
        const double r = minimize ? 30.0 : 0.0;
        const auto ref = ObjectiveVector::uniform(std::vector<double>{r, r}, d);

        const double total = oracle::hv_raster(points, ref);
        record(check, hv_2d(points, ref) == total, "hv trial " + std::to_string(t));

        const auto contrib = hv_contributions_2d(points, ref);
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::vector<ObjectiveVector> rest(points.begin(), points.end());
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            const double expected = total - oracle::hv_raster(rest, ref);
            record(check, contrib[i] == expected,
                   "contribution trial " + std::to_string(t) + " point " + std::to_string(i));
        }
    }
    return check;
}

VerifyCheck verify_ojzj_fronts(std::size_t max_n)
{
    VerifyCheck check{"ojzj_pareto_front vs brute_force_pareto", 0, 0, {}};
    for (std::size_t n = 5; n <= max_n; ++n) {
        for (std::size_t k = 2; 2 * k < n; ++k) {
            const OjzjParams params{n, k};
            auto exact = ojzj_pareto_front(params).points;
            const auto brute = brute_force_pareto(params).points;
            std::sort(exact.begin(), exact.end(), lexicographic_less);
            record(check, exact == brute, "n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return check;
}

VerifyCheck verify_rank_sum(std::uint64_t seed, std::size_t trials)
{
    VerifyCheck check{"rank_sum_exact_p vs exact_rank_sum_p", 0, 0, {}};
    RngStream rng(seed, 13);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t na = 1 + rng.below(6);
        const std::size_t nb = 1 + rng.below(6);
        // Distinct values: a random permutation of 0..na+nb-1, split.
        std::vector<double> pool(na + nb);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            pool[i] = static_cast<double>(i) + 0.25 * static_cast<double>(rng.below(3));
        }
        rng.shuffle(std::span<double>(pool));
        const std::span<const double> a(pool.data(), na);
        const std::span<const double> b(pool.data() + na, nb);
        const double p = rank_sum_exact_p(a, b);
        const double q = oracle::exact_rank_sum_p(a, b);
        record(check, std::abs(p - q) <= 1e-12, "trial " + std::to_string(t));
    }
    return check;
}

std::vector<VerifyCheck> run_verification(std::uint64_t seed)
{
    return {verify_sorting(seed), verify_hypervolume(seed), verify_ojzj_fronts(), verify_rank_sum(seed)};
}

} // namespace emo
