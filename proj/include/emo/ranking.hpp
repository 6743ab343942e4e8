// Selection machinery shared by the algorithms: non-dominated sorting,
// crowding distance, and bi-objective hypervolume contributions.
#ifndef EMO_RANKING_HPP
#define EMO_RANKING_HPP

#include "emo/core.hpp"

#include <optional>
#include <span>
#include <vector>

namespace emo {

/// Fronts R_1..R_v as index lists into the sorted input; each list ascending.
struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;

    std::size_t size() const noexcept { return fronts.size(); }
    const std::vector<std::size_t>& last() const { return fronts.back(); }
};

/// Absent means the bi-objective boundary-preserving mode.
using ReferencePoint = std::optional<ObjectiveVector>;

/// Equal vectors are grouped first, so the cost is O(N log N + U^2 m) for U
/// distinct vectors. Equal vectors always share a front.
FrontPartition non_dominated_sort(std::span<const ObjectiveVector> points);

/// Sum over objectives of the normalized neighbour gap; +inf for the first
/// and last member of every per-objective ascending order (ties keep input
/// order). A zero objective range contributes 0 to interior members.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Area of the union of boxes spanned between `ref` and each point. Every
/// point must weakly dominate `ref`.
double hv_2d(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);

/// Per-point hypervolume loss when the point is removed.
///
/// With a reference point this is HV(S) - HV(S \ {p}) evaluated directly.
/// Without one, the set is treated as a non-dominated front: the two extreme
/// vectors get +inf, duplicated vectors and vectors dominated inside the set
/// get 0, and an interior vector gets the product of its gaps to its two
/// neighbours along the front.
std::vector<double> hv_contributions_2d(std::span<const ObjectiveVector> front, const ReferencePoint& ref);

/// Position of a minimum contribution; ties broken uniformly at random.
std::size_t worst_by_delta(std::span<const double> contributions, RngStream& rng);

/// The `count` members with the largest crowding distance, ties broken
/// uniformly at random. Returned positions index into `distances`.
std::vector<std::size_t> most_crowding_distant(std::span<const double> distances, std::size_t count, RngStream& rng);

} // namespace emo

#endif // EMO_RANKING_HPP
