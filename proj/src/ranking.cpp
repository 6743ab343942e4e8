#include "emo/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace emo {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_shape(std::span<const ObjectiveVector> points)
{
    for (const auto& p : points) {
        if (!p.same_shape(points.front())) {
            throw ContractViolation("objective vectors differ in length or direction");
        }
    }
}

void require_biobjective(std::span<const ObjectiveVector> points)
{
    require_shape(points);
    if (!points.empty() && points.front().size() != 2) {
        throw ContractViolation("2-D hypervolume needs exactly two objectives");
    }
}

} // namespace

FrontPartition non_dominated_sort(std::span<const ObjectiveVector> points)
{
    if (points.empty()) {
        throw ContractViolation("non-dominated sorting of an empty set");
    }
    require_shape(points);

    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (lexicographic_less(points[a], points[b])) {
            return true;
        }
        return !lexicographic_less(points[b], points[a]) && a < b;
    });

    // Group g holds order[start[g] .. start[g+1]), all sharing one vector.
    std::vector<std::size_t> start;
    start.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || !(points[order[i - 1]] == points[order[i]])) {
            start.push_back(i);
        }
    }
    const std::size_t u = start.size();
    start.push_back(n);

    const std::size_t m = points.front().size();
    std::vector<double> oriented(u * m);
    for (std::size_t g = 0; g < u; ++g) {
        const auto& p = points[order[start[g]]];
        for (std::size_t i = 0; i < m; ++i) {
            oriented[g * m + i] = p.oriented(i);
        }
    }

    // beats[i * u + j]: group i dominates group j.
    std::vector<std::uint8_t> beats(u * u, 0);
    std::vector<std::size_t> dominator_count(u, 0);
    for (std::size_t i = 0; i < u; ++i) {
        const double* a = &oriented[i * m];
        for (std::size_t j = i + 1; j < u; ++j) {
            const double* b = &oriented[j * m];
            bool a_better = false;
            bool b_better = false;
            for (std::size_t k = 0; k < m && !(a_better && b_better); ++k) {
                a_better = a_better || a[k] > b[k];
                b_better = b_better || a[k] < b[k];
            }
            if (a_better && !b_better) {
                beats[i * u + j] = 1;
                ++dominator_count[j];
            } else if (b_better && !a_better) {
                beats[j * u + i] = 1;
                ++dominator_count[i];
            }
        }
    }

    FrontPartition result;
    std::vector<std::size_t> current;
    std::vector<std::size_t> next;
    for (std::size_t g = 0; g < u; ++g) {
        if (dominator_count[g] == 0) {
            current.push_back(g);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> front;
        next.clear();
        for (std::size_t g : current) {
            front.insert(front.end(), order.begin() + static_cast<std::ptrdiff_t>(start[g]),
                         order.begin() + static_cast<std::ptrdiff_t>(start[g + 1]));
            const std::uint8_t* row = &beats[g * u];
            for (std::size_t h = 0; h < u; ++h) {
                if (row[h] && --dominator_count[h] == 0) {
                    next.push_back(h);
                }
            }
        }
        std::sort(front.begin(), front.end());
        result.fronts.push_back(std::move(front));
        std::swap(current, next);
    }
    return result;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front)
{
    if (front.empty()) {
        throw ContractViolation("crowding distance of an empty front");
    }
    require_shape(front);
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < front.front().size(); ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][j] < front[b][j]; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        const double range = front[order.back()][j] - front[order.front()][j];
        if (range == 0.0) {
            continue;
        }
        for (std::size_t l = 1; l + 1 < n; ++l) {
            distance[order[l]] += (front[order[l + 1]][j] - front[order[l - 1]][j]) / range;
        }
    }
    return distance;
}

double hv_2d(std::span<const ObjectiveVector> front, const ObjectiveVector& ref)
{
    require_biobjective(front);
    if (ref.size() != 2 || (!front.empty() && !ref.same_shape(front.front()))) {
        throw ContractViolation("reference point shape differs from the front");
    }
    const double r1 = ref.oriented(0);
    const double r2 = ref.oriented(1);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(front.size());
    for (const auto& p : front) {
        double x = p.oriented(0);
        double y = p.oriented(1);
        if (x < r1 || y < r2) {
            throw ContractViolation("point " + to_string(p) + " does not weakly dominate the reference point " +
                                    to_string(ref));
        }
        pts.emplace_back(x, y);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second > b.second;
    });
    double area = 0.0;
    double covered_up_to = r2;
    for (const auto& [x, y] : pts) {
        if (y > covered_up_to) {
            area += (x - r1) * (y - covered_up_to);
            covered_up_to = y;
        }
    }
    return area;
}

std::vector<double> hv_contributions_2d(std::span<const ObjectiveVector> front, const ReferencePoint& ref)
{
    require_biobjective(front);
    const std::size_t n = front.size();
    std::vector<double> delta(n, 0.0);
    if (n == 0) {
        return delta;
    }

    if (ref) {
        const double total = hv_2d(front, *ref);
        std::vector<ObjectiveVector> rest;
        rest.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            rest.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    rest.push_back(front[j]);
                }
            }
            delta[i] = total - hv_2d(rest, *ref);
        }
        return delta;
    }

    // Envelope: distinct vectors not dominated inside the set, ascending in
    // the first oriented objective (hence descending in the second).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double a1 = front[a].oriented(0);
        double b1 = front[b].oriented(0);
        return a1 != b1 ? a1 < b1 : front[a].oriented(1) > front[b].oriented(1);
    });
    struct Level {
        double f1;
        double f2;
        std::size_t member;
        std::size_t copies;
    };
    std::vector<Level> envelope;
    envelope.reserve(n);
    for (std::size_t idx : order) {
        const double x = front[idx].oriented(0);
        const double y = front[idx].oriented(1);
        if (!envelope.empty() && envelope.back().f1 == x && envelope.back().f2 == y) {
            ++envelope.back().copies;
            continue;
        }
        if (!envelope.empty() && envelope.back().f1 == x) {
            continue; // same f1, smaller f2: dominated
        }
        // Anything kept so far has f1 <= x; it is dominated by idx if its f2 <= y.
        while (!envelope.empty() && envelope.back().f2 <= y) {
            envelope.pop_back();
        }
        envelope.push_back({x, y, idx, 1});
    }
    // Members dropped from the envelope keep their 0.
    const std::size_t u = envelope.size();
    for (std::size_t l = 0; l < u; ++l) {
        const auto& level = envelope[l];
        if (level.copies > 1) {
            continue;
        }
        double value;
        if (l == 0 || l + 1 == u) {
            value = inf;
        } else {
            value = (level.f1 - envelope[l - 1].f1) * (level.f2 - envelope[l + 1].f2);
        }
        delta[level.member] = value;
    }
    return delta;
}

std::size_t worst_by_delta(std::span<const double> contributions, RngStream& rng)
{
    if (contributions.empty()) {
        throw ContractViolation("worst_by_delta on an empty set");
    }
    const double lowest = *std::min_element(contributions.begin(), contributions.end());
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < contributions.size(); ++i) {
        if (contributions[i] == lowest) {
            ties.push_back(i);
        }
    }
    if (ties.size() == 1) {
        return ties.front();
    }
    return ties[rng.below(ties.size())];
}

std::vector<std::size_t> most_crowding_distant(std::span<const double> distances, std::size_t count, RngStream& rng)
{
    if (count > distances.size()) {
        throw ContractViolation("cannot keep more members than the front holds");
    }
    std::vector<std::size_t> order(distances.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (count == 0) {
        return {};
    }
    if (count == order.size()) {
        return order;
    }
    rng.shuffle(std::span<std::size_t>(order));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return distances[a] > distances[b]; });
    order.resize(count);
    return order;
}

} // namespace emo
