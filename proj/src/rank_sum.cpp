// Wilcoxon rank-sum (Mann-Whitney U) test.
#include "emo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emo {

namespace {

constexpr std::size_t exact_switch = 12;
constexpr std::size_t exact_capacity = 60; // C(60, 30) fits in 64 bits

struct Ranked {
    double rank_sum_a = 0.0;
    double tie_term = 0.0; // Σ (t^3 - t) over tie groups
    bool has_ties = false;
};

Ranked rank(std::span<const double> a, std::span<const double> b)
{
    struct Obs {
        double value;
        bool from_a;
    };
    std::vector<Obs> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) {
        pooled.push_back({v, true});
    }
    for (double v : b) {
        pooled.push_back({v, false});
    }
    std::sort(pooled.begin(), pooled.end(), [](const Obs& x, const Obs& y) { return x.value < y.value; });

    Ranked out;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) {
            ++j;
        }
        const double t = static_cast<double>(j - i);
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t q = i; q < j; ++q) {
            if (pooled[q].from_a) {
                out.rank_sum_a += midrank;
            }
        }
        if (j - i > 1) {
            out.has_ties = true;
            out.tie_term += t * t * t - t;
        }
        i = j;
    }
    return out;
}

double u_statistic(const Ranked& r, std::size_t n1)
{
    const double m = static_cast<double>(n1);
    return r.rank_sum_a - m * (m + 1.0) / 2.0;
}

void require_samples(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw ContractViolation("rank-sum test needs two non-empty samples");
    }
}

/// counts[u] = number of arrangements of n1 'a' and n2 'b' labels with U = u.
std::vector<std::uint64_t> u_distribution(std::size_t n1, std::size_t n2)
{
    // table[i][j][u] built incrementally over i; recurrence
    // N(i, j, u) = N(i-1, j, u-j) + N(i, j-1, u).
    const std::size_t umax = n1 * n2;
    std::vector<std::vector<std::vector<std::uint64_t>>> table(
        n1 + 1, std::vector<std::vector<std::uint64_t>>(n2 + 1));
    for (std::size_t i = 0; i <= n1; ++i) {
        for (std::size_t j = 0; j <= n2; ++j) {
            auto& cell = table[i][j];
            cell.assign(i * j + 1, 0);
            if (i == 0 || j == 0) {
                cell[0] = 1;
                continue;
            }
            const auto& drop_a = table[i - 1][j];
            const auto& drop_b = table[i][j - 1];
            for (std::size_t u = 0; u < cell.size(); ++u) {
                std::uint64_t c = 0;
                if (u >= j && u - j < drop_a.size()) {
                    c += drop_a[u - j];
                }
                if (u < drop_b.size()) {
                    c += drop_b[u];
                }
                cell[u] = c;
            }
        }
    }
    auto out = table[n1][n2];
    out.resize(umax + 1, 0);
    return out;
}

} // namespace

double rank_sum_exact_p(std::span<const double> a, std::span<const double> b)
{
    require_samples(a, b);
    if (a.size() + b.size() > exact_capacity) {
        throw ContractViolation("exact rank-sum distribution limited to " + std::to_string(exact_capacity) +
                                " observations");
    }
    const Ranked r = rank(a, b);
    if (r.has_ties) {
        throw ContractViolation("exact rank-sum p-value requires tie-free samples");
    }
    const auto u = static_cast<std::size_t>(std::llround(u_statistic(r, a.size())));
    const auto counts = u_distribution(a.size(), b.size());
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        if (v <= u) {
            lower += counts[v];
        }
        if (v >= u) {
            upper += counts[v];
        }
    }
    const double tail = static_cast<double>(std::min(lower, upper)) / total;
    return std::min(1.0, 2.0 * tail);
}

double rank_sum_normal_p(std::span<const double> a, std::span<const double> b)
{
    require_samples(a, b);
    const Ranked r = rank(a, b);
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;
    const double mean = n1 * n2 / 2.0;
    double variance = n1 * n2 / 12.0 * (n + 1.0);
    if (n > 1.0) {
        variance -= n1 * n2 / 12.0 * r.tie_term / (n * (n - 1.0));
    }
    if (variance <= 0.0) {
        return 1.0;
    }
    const double deviation = std::max(0.0, std::abs(u_statistic(r, a.size()) - mean) - 0.5);
    const double z = deviation / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b)
{
    require_samples(a, b);
    const Ranked r = rank(a, b);
    RankSumResult out;
    out.statistic = u_statistic(r, a.size());
    if (a.size() + b.size() <= exact_switch && !r.has_ties) {
        out.exact = true;
        out.p_value = rank_sum_exact_p(a, b);
    } else {
        out.p_value = rank_sum_normal_p(a, b);
    }
    return out;
}

} // namespace emo
