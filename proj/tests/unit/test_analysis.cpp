#include <doctest.h>

#include "emo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

using namespace emo;

namespace {

constexpr double e = std::numbers::e;

BoundInputs sms(double n, double k, double mu, double ps, double pc)
{
    return {n, k, mu, ps, pc, Algorithm::sms_emoa};
}

BoundInputs nsga(double n, double k, double mu, double ps, double pc)
{
    return {n, k, mu, ps, pc, Algorithm::nsga2};
}

std::vector<double> iota_sample(double from, std::size_t count)
{
    std::vector<double> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

} // namespace

TEST_CASE("igd")
{
    const std::vector ref{ObjectiveVector::minimizing({0, 0}), ObjectiveVector::minimizing({1, 1})};
    const std::vector got{ObjectiveVector::minimizing({0, 0})};
    CHECK(igd(ref, got) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    CHECK(igd(ref, ref) == 0);
    const std::vector one{ObjectiveVector::minimizing({3, 0})};
    const std::vector other{ObjectiveVector::minimizing({0, 4})};
    CHECK(igd(one, other) == 5);
    CHECK_THROWS_AS(igd(ref, std::vector<ObjectiveVector>{}), ContractViolation);
}

TEST_CASE("igd is zero exactly when every reference point is attained")
{
    RngStream rng(3);
    for (int t = 0; t < 500; ++t) {
        std::vector<ObjectiveVector> ref;
        std::vector<ObjectiveVector> got;
        for (int i = 0; i < 4; ++i) {
            ref.push_back(ObjectiveVector::minimizing({double(rng.below(4)), double(rng.below(4))}));
        }
        for (int i = 0; i < 6; ++i) {
            got.push_back(ObjectiveVector::minimizing({double(rng.below(4)), double(rng.below(4))}));
        }
        bool all = true;
        for (const auto& r : ref) {
            all = all && std::find(got.begin(), got.end(), r) != got.end();
        }
        CHECK((igd(ref, got) == 0) == all);
    }
}

TEST_CASE("coverage")
{
    const OjzjParams p{10, 3};
    const auto front = ojzj_pareto_front(p);
    CHECK(coverage(front, std::vector<ObjectiveVector>{}) == 0);
    const std::vector ends{ojzj_evaluate(p, Bitstring::ones(10)), ojzj_evaluate(p, Bitstring::zeros(10))};
    CHECK(coverage(front, ends) == 2);
    CHECK(coverage(front, front.points) == 7);
    auto doubled = front.points;
    doubled.insert(doubled.end(), front.points.begin(), front.points.end());
    CHECK(coverage(front, doubled) == 7);

    const auto report = indicator_report(front, ends);
    CHECK(report.covered == 2);
    CHECK(report.total_reference == 7);
    CHECK(report.igd > 0);
}

TEST_CASE("rank-sum examples")
{
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, 5, 6};
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK(r.exact);
    CHECK(r.statistic == 0);
    CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(wilcoxon_rank_sum(a, a).p_value == 1.0);
    CHECK(wilcoxon_rank_sum(b, a).p_value == doctest::Approx(0.1).epsilon(1e-12));

    const auto big = wilcoxon_rank_sum(iota_sample(1, 30), iota_sample(31, 30));
    CHECK(!big.exact);
    CHECK(big.p_value < 0.05);
    CHECK(wilcoxon_rank_sum(std::vector<double>{7, 7, 7}, std::vector<double>{7, 7}).p_value == 1.0);
    CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{}, a), ContractViolation);
}

TEST_CASE("exact p beyond the automatic switch")
{
    // P(U = 0) = 1 / C(20, 10) = 1 / 184756, doubled.
    CHECK(rank_sum_exact_p(iota_sample(1, 10), iota_sample(11, 10)) ==
          doctest::Approx(2.0 / 184756).epsilon(1e-12));
    CHECK_THROWS_AS(rank_sum_exact_p(std::vector<double>{1, 2}, std::vector<double>{2, 3}), ContractViolation);
    CHECK_THROWS_AS(rank_sum_exact_p(iota_sample(0, 31), iota_sample(100, 30)), ContractViolation);
}

TEST_CASE("normal approximation tracks the exact p")
{
    RngStream rng(77);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> a(10);
        std::vector<double> b(10);
        const double shift = static_cast<double>(rng.below(3));
        for (auto& x : a) {
            x = rng.unit();
        }
        for (auto& x : b) {
            x = rng.unit() + 0.3 * shift;
        }
        CHECK(std::abs(rank_sum_normal_p(a, b) - rank_sum_exact_p(a, b)) <= 0.02);
    }
}

TEST_CASE("bound constant")
{
    const double n = 50;
    CHECK(bound_C(sms(n, 3, 2 * n, 0.5, 0.5)) == doctest::Approx(8 * e * n).epsilon(1e-15));
    CHECK(bound_C(sms(n, 3, 5, 0.5, 0.5)) == doctest::Approx(20 * e).epsilon(1e-15));
    CHECK(bound_C(nsga(n, 3, 8, 0.25, 0)) == doctest::Approx(4 * e).epsilon(1e-15));
    CHECK_THROWS_AS(bound_C(sms(n, 3, 5, 0, 0.5)), ContractViolation);
    CHECK_THROWS_AS(bound_C(sms(n, 3, 5, 0.5, 1)), ContractViolation);
}

TEST_CASE("optimal jump count")
{
    CHECK(optimal_M(3, 20 * e) == 0);
    CHECK(optimal_M(40, 4 * e) == 16);
    const double c = 8 * e;
    CHECK(optimal_M(e * std::log(c), c) == 0);
    CHECK_THROWS_AS(optimal_M(5, 1.0), ContractViolation);
}

TEST_CASE("bound value")
{
    const auto low_k = bound_value(sms(10, 3, 5, 0.5, 0.5));
    CHECK(low_k.value == 5 * 1000.0);

    const auto archived = bound_value(sms(64, 8, 5, 0.5, 0.5));
    const auto plain = bound_value(sms(64, 8, 128, 0.5, 0.5));
    CHECK(archived.log_value < plain.log_value);

    for (double n : {20.0, 100.0, 1000.0}) {
        for (double k : {3.0, 8.0, 20.0}) {
            for (double mu : {8.0, 40.0}) {
                CHECK(bound_value(nsga(n, k, mu, 0.25, 0.5)).log_value <=
                      bound_value(sms(n, k, mu, 0.25, 0.5)).log_value);
            }
        }
    }

    const auto huge = bound_value(sms(1e6, 200, 10, 0.5, 0.5));
    CHECK(std::isfinite(huge.log_value));
    CHECK(huge.value == std::numeric_limits<double>::max());
}

TEST_CASE("range warnings")
{
    CHECK(range_warnings(sms(20, 3, 5, 0.5, 0.5)).empty());
    CHECK(range_warnings(sms(20, 12, 5, 0.5, 0.5)).size() == 1);
    CHECK(range_warnings(nsga(20, 3, 8, 0.5, 0.5)).size() == 1);
    CHECK(range_warnings(nsga(20, 3, 8, 0.25, 0.5)).empty());
}

TEST_CASE("trail probability")
{
    const double n = 10;
    const double k = 3;
    const double mu = 5;
    CHECK(trail_probability_lb(n, k, 0, mu, 0.5, 0, Algorithm::sms_emoa) ==
          doctest::Approx(1 / (e * mu * std::pow(n, k))).epsilon(1e-12));
    // nsga2 at M=2 by direct substitution.
    const double direct = std::pow(0.25, 2) * std::pow(0.5, 3) * std::pow(3.0, k) / (std::exp(3.0) * std::pow(n, k));
    CHECK(trail_probability_lb(n, k, 2, mu, 0.25, 0.5, Algorithm::nsga2) == doctest::Approx(direct).epsilon(1e-12));

    for (auto variant : {Algorithm::sms_emoa, Algorithm::nsga2}) {
        for (long m = 0; m <= 4; ++m) {
            double previous = 2.0;
            for (double nn : {8.0, 16.0, 32.0, 64.0}) {
                const double p = trail_probability_lb(nn, k, m, mu, 0.5, 0.5, variant);
                CHECK(p > 0);
                CHECK(p <= 1);
                CHECK(p < previous);
                previous = p;
            }
        }
    }
    CHECK_THROWS_AS(trail_probability_lb(n, k, -1, mu, 0.5, 0.5, Algorithm::sms_emoa), ContractViolation);
}
