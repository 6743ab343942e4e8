// Closed-form running-time bounds for SPU on OneJumpZeroJump.
#include "emo/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace emo {

namespace {

constexpr double e = std::numbers::e;

double saturating_exp(double log_value)
{
    constexpr double max_log = 709.782712893384; // ln(DBL_MAX)
    if (log_value >= max_log) {
        return std::numeric_limits<double>::max();
    }
    return std::exp(log_value);
}

} // namespace

std::vector<std::string> range_warnings(const BoundInputs& in)
{
    std::vector<std::string> warnings;
    if (!(in.k >= 2 && in.k < in.n / 2)) {
        warnings.push_back("k outside [2, n/2)");
    }
    if (!(in.p_c >= 0 && in.p_c < 1)) {
        warnings.push_back("p_c outside [0, 1)");
    }
    if (in.variant == Algorithm::sms_emoa) {
        if (!(in.p_s >= 1.0 / (in.mu + 1.0) && in.p_s < 1.0)) {
            warnings.push_back("p_s outside [1/(mu+1), 1)");
        }
    } else if (!(in.p_s >= 1.0 / (2.0 * in.mu) && in.p_s < 0.5)) {
        warnings.push_back("p_s outside [1/(2mu), 1/2)");
    }
    return warnings;
}

double bound_C(const BoundInputs& in)
{
    if (!(in.p_s > 0.0) || !(in.p_c < 1.0)) {
        throw ContractViolation("C is undefined for p_s <= 0 or p_c >= 1");
    }
    const double base = e / (in.p_s * (1.0 - in.p_c));
    if (in.variant == Algorithm::nsga2) {
        return base;
    }
    if (!(in.mu > 0.0)) {
        throw ContractViolation("C needs a positive population size");
    }
    return in.mu * base;
}

long optimal_M(double k, double C)
{
    if (!(C > 1.0)) {
        throw ContractViolation("optimal jump count needs C > 1");
    }
    const double log_c = std::log(C);
    if (k <= e * log_c) {
        return 0;
    }
    return static_cast<long>(std::ceil((k - 1.0) / log_c - 1.0));
}

BoundValue bound_value(const BoundInputs& in)
{
    const double c = bound_C(in);
    if (!(in.n > 0.0) || !(in.k > 0.0) || !(in.mu > 0.0)) {
        throw ContractViolation("bound needs positive n, k and mu");
    }
    const double shrink = (in.k - 1.0) * std::log(e * std::log(c) / in.k);
    const double log_value = std::log(in.mu) + in.k * std::log(in.n) + std::min(0.0, shrink);
    const double direct = in.mu * std::pow(in.n, in.k) * (shrink < 0.0 ? std::exp(shrink) : 1.0);
    return {log_value, std::isfinite(direct) ? direct : saturating_exp(log_value)};
}

double trail_probability_lb(double n, double k, long M, double mu, double p_s, double p_c, Algorithm variant)
{
    if (M < 0 || k < 1 || n < 1 || !(p_s > 0 && p_s <= 1) || !(p_c >= 0 && p_c < 1)) {
        throw ContractViolation("trail probability parameters out of range");
    }
    const double m = static_cast<double>(M);
    double log_p;
    if (variant == Algorithm::sms_emoa) {
        if (!(mu > 0)) {
            throw ContractViolation("trail probability needs a positive population size");
        }
        const double c = e * mu / (p_s * (1.0 - p_c));
        log_p = std::log1p(-p_c) + k * std::log(m + 1.0) - 1.0 - std::log(mu) - k * std::log(n) - m * std::log(c);
    } else {
        log_p = m * std::log(p_s) + (m + 1.0) * std::log1p(-p_c) + k * std::log(m + 1.0) - (m + 1.0) -
                k * std::log(n);
    }
    return std::exp(log_p);
}

} // namespace emo
