// Quality indicators, the Wilcoxon rank-sum test, and the runtime-bound
// calculator for SMS-EMOA / NSGA-II with SPU on OneJumpZeroJump.
#ifndef EMO_ANALYSIS_HPP
#define EMO_ANALYSIS_HPP

#include "emo/core.hpp"
#include "emo/moea.hpp"
#include "emo/problems.hpp"

#include <span>
#include <string>
#include <vector>

namespace emo {

/// Mean over reference points of the Euclidean distance (raw objective
/// scale) to the nearest obtained point.
double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> obtained);

struct IndicatorReport {
    double igd = 0.0;
    std::size_t covered = 0;
    std::size_t total_reference = 0;
};

IndicatorReport indicator_report(const ParetoFront& reference, std::span<const ObjectiveVector> obtained);

/// Number of distinct front points whose vector is attained exactly.
std::size_t coverage(const ParetoFront& front, std::span<const Individual> solutions);
std::size_t coverage(const ParetoFront& front, std::span<const ObjectiveVector> solutions);

struct RankSumResult {
    /// Mann-Whitney U of the first sample (midranks for ties).
    double statistic = 0.0;
    double p_value = 1.0;
    bool exact = false;
};

/// Two-sided test. Exact null distribution when |a|+|b| <= 12 and there are
/// no ties; otherwise normal approximation with tie and continuity
/// corrections.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p from the Mann-Whitney counting recurrence; requires
/// tie-free samples. Usable well beyond the automatic 12-observation switch.
double rank_sum_exact_p(std::span<const double> a, std::span<const double> b);
double rank_sum_normal_p(std::span<const double> a, std::span<const double> b);

// --- runtime bounds ---------------------------------------------------------

struct BoundInputs {
    double n = 0;
    double k = 0;
    double mu = 0;
    double p_s = 0;
    double p_c = 0;
    Algorithm variant = Algorithm::sms_emoa;
};

/// Parameter ranges the corresponding theorem assumes; empty when all hold.
std::vector<std::string> range_warnings(const BoundInputs& in);

/// C = eμ/(p_s(1-p_c)) for SMS-EMOA, e/(p_s(1-p_c)) for NSGA-II.
double bound_C(const BoundInputs& in);

/// 0 when k <= e ln C, else ceil((k-1)/ln C - 1). Requires C > 1.
long optimal_M(double k, double C);

struct BoundValue {
    double log_value;
    /// μ n^k min{...} in linear scale; saturated at the largest finite double.
    double value;
};

/// μ n^k min{1, (e ln C / k)^{k-1}}: the shape of the upper bound with the
/// O(.) constants dropped. Comparable across configurations, not a
/// prediction of evaluation counts.
BoundValue bound_value(const BoundInputs& in);

/// Lower bound on the probability that M+1 consecutive jumps reach 1^n.
double trail_probability_lb(double n, double k, long M, double mu, double p_s, double p_c, Algorithm variant);

} // namespace emo

#endif // EMO_ANALYSIS_HPP
