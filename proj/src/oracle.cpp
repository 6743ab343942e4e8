#include "emo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace emo::oracle {

namespace {

// a is no worse everywhere and better somewhere, per objective direction.
bool better(const ObjectiveVector& a, const ObjectiveVector& b)
{
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.direction(i) == Direction::maximize ? a[i] : -a[i];
        const double y = b.direction(i) == Direction::maximize ? b[i] : -b[i];
        if (x < y) {
            return false;
        }
        if (x > y) {
            strict = true;
        }
    }
    return strict;
}

long grid_steps(double from, double to, double cell)
{
    const double steps = (to - from) / cell;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9) {
        throw OracleRefusal("hv_raster: coordinate not on the cell grid");
    }
    return static_cast<long>(rounded);
}

} // namespace

double hv_raster(std::span<const ObjectiveVector> front, const ObjectiveVector& ref, double cell,
                 const OracleBudget& budget)
{
    if (ref.size() != 2) {
        throw OracleRefusal("hv_raster: bi-objective only");
    }
    if (!(cell > 0)) {
        throw OracleRefusal("hv_raster: cell must be positive");
    }
    if (front.size() > budget.max_points) {
        throw OracleRefusal("hv_raster: too many points");
    }
    // Work in steps away from the reference, positive meaning "better".
    std::vector<std::pair<long, long>> reach;
    long width = 0;
    long height = 0;
    for (const auto& p : front) {
        if (p.size() != 2 || p.direction_mask() != ref.direction_mask()) {
            throw OracleRefusal("hv_raster: point shape differs from reference");
        }
        long s[2];
        for (std::size_t i = 0; i < 2; ++i) {
            s[i] = grid_steps(ref[i], p[i], cell);
            if (ref.direction(i) == Direction::minimize) {
                s[i] = -s[i];
            }
        }
        if (s[0] <= 0 || s[1] <= 0) {
            continue;
        }
        reach.emplace_back(s[0], s[1]);
        width = std::max(width, s[0]);
        height = std::max(height, s[1]);
    }
    if (static_cast<double>(width) * static_cast<double>(height) > static_cast<double>(budget.max_grid)) {
        throw OracleRefusal("hv_raster: grid exceeds budget");
    }
    std::size_t cells = 0;
    for (long x = 0; x < width; ++x) {
        for (long y = 0; y < height; ++y) {
            for (const auto& [px, py] : reach) {
                if (x < px && y < py) {
                    ++cells;
                    break;
                }
            }
        }
    }
    return static_cast<double>(cells) * cell * cell;
}

FrontPartition sort_quadratic(std::span<const ObjectiveVector> points, const OracleBudget& budget)
{
    if (points.size() > budget.max_points) {
        throw OracleRefusal("sort_quadratic: too many points");
    }
    FrontPartition out;
    std::vector<bool> placed(points.size(), false);
    std::size_t remaining = points.size();
    while (remaining > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (placed[i]) {
                continue;
            }
            bool beaten = false;
            for (std::size_t j = 0; j < points.size() && !beaten; ++j) {
                beaten = !placed[j] && better(points[j], points[i]);
            }
            if (!beaten) {
                front.push_back(i);
            }
        }
        for (std::size_t i : front) {
            placed[i] = true;
        }
        remaining -= front.size();
        out.fronts.push_back(std::move(front));
    }
    return out;
}

double exact_rank_sum_p(std::span<const double> a, std::span<const double> b, const OracleBudget& budget)
{
    const std::size_t n = a.size() + b.size();
    if (a.empty() || b.empty()) {
        throw OracleRefusal("exact_rank_sum_p: empty sample");
    }
    if (n > budget.max_enumeration || n >= 32) {
        throw OracleRefusal("exact_rank_sum_p: too many observations");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    if (std::adjacent_find(pooled.begin(), pooled.end()) != pooled.end()) {
        throw OracleRefusal("exact_rank_sum_p: ties");
    }
    long observed = 0;
    for (double v : a) {
        observed += std::lower_bound(pooled.begin(), pooled.end(), v) - pooled.begin() + 1;
    }
    // Every subset of ranks of size |a| is equally likely under the null.
    std::size_t at_most = 0;
    std::size_t at_least = 0;
    std::size_t total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size()) {
            continue;
        }
        long w = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (mask & (1u << r)) {
                w += static_cast<long>(r) + 1;
            }
        }
        ++total;
        at_most += w <= observed;
        at_least += w >= observed;
    }
    const double tail = static_cast<double>(std::min(at_most, at_least)) / static_cast<double>(total);
    return std::min(1.0, 2.0 * tail);
}

} // namespace emo::oracle
