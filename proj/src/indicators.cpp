#include "emo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace emo {

double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> obtained)
{
    if (reference.empty() || obtained.empty()) {
        throw ContractViolation("IGD needs non-empty reference and obtained sets");
    }
    const auto& shape = reference.front();
    for (const auto& v : reference) {
        if (!v.same_shape(shape)) {
            throw ContractViolation("reference vectors differ in shape");
        }
    }
    for (const auto& v : obtained) {
        if (!v.same_shape(shape)) {
            throw ContractViolation("obtained vectors differ in shape from the reference");
        }
    }
    double total = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& o : obtained) {
            double sq = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double d = r[i] - o[i];
                sq += d * d;
            }
            best = std::min(best, sq);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

std::size_t coverage(const ParetoFront& front, std::span<const ObjectiveVector> solutions)
{
    std::size_t covered = 0;
    for (const auto& p : front.points) {
        if (std::find(solutions.begin(), solutions.end(), p) != solutions.end()) {
            ++covered;
        }
    }
    return covered;
}

std::size_t coverage(const ParetoFront& front, std::span<const Individual> solutions)
{
    return coverage(front, objectives_of(solutions));
}

IndicatorReport indicator_report(const ParetoFront& reference, std::span<const ObjectiveVector> obtained)
{
    IndicatorReport report;
    report.igd = igd(reference.points, obtained);
    report.covered = coverage(reference, obtained);
    report.total_reference = reference.size();
    return report;
}

} // namespace emo
