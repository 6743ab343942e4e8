// Brute-force reference implementations used to cross-check the ranking,
// indicator and statistics code. None of them calls into the code it checks.
#ifndef EMO_ORACLE_HPP
#define EMO_ORACLE_HPP

#include "emo/core.hpp"
#include "emo/ranking.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>

namespace emo::oracle {

/// Raised instead of running an oracle call that would exceed its budget.
class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleBudget {
    std::size_t max_points = 4096;
    std::size_t max_grid = 50'000'000;
    /// Largest |a|+|b| accepted by exact_rank_sum_p.
    std::size_t max_enumeration = 12;
};

/// Dominated area counted cell by cell on a grid of side `cell` anchored at
/// `ref`. Points and reference must lie on that grid.
double hv_raster(std::span<const ObjectiveVector> front, const ObjectiveVector& ref, double cell = 1.0,
                 const OracleBudget& budget = {});

/// Repeated extraction of the non-dominated subset with pairwise checks.
FrontPartition sort_quadratic(std::span<const ObjectiveVector> points, const OracleBudget& budget = {});

/// Two-sided p from enumerating every assignment of ranks to the first
/// sample. Refuses ties.
double exact_rank_sum_p(std::span<const double> a, std::span<const double> b, const OracleBudget& budget = {});

} // namespace emo::oracle

#endif // EMO_ORACLE_HPP
