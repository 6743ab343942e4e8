#include <doctest.h>

#include "emo/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace emo;

namespace {

// Written from the textbook description of Davis's operator: keep the segment,
// then walk the donor circularly from the segment end, skipping kept cities.
std::vector<std::uint32_t> davis_child(const std::vector<std::uint32_t>& keeper,
                                       const std::vector<std::uint32_t>& donor, std::size_t lo, std::size_t hi)
{
    const std::size_t d = keeper.size();
    std::vector<std::uint32_t> child(d, UINT32_MAX);
    std::set<std::uint32_t> kept;
    for (std::size_t i = lo; i < hi; ++i) {
        child[i] = keeper[i];
        kept.insert(keeper[i]);
    }
    std::size_t write = hi % d;
    for (std::size_t step = 0; step < d; ++step) {
        const auto city = donor[(hi + step) % d];
        if (kept.count(city)) {
            continue;
        }
        while (child[write] != UINT32_MAX) {
            write = (write + 1) % d;
        }
        child[write] = city;
    }
    return child;
}

std::vector<std::uint32_t> as_vector(const Permutation& p)
{
    return {p.order().begin(), p.order().end()};
}

} // namespace

TEST_CASE("one-point crossover")
{
    const auto x = Bitstring::parse("1111");
    const auto y = Bitstring::parse("0000");
    CHECK(one_point_crossover_single(x, y, 2) == Bitstring::parse("1100"));
    CHECK(one_point_crossover_single(x, y, 4) == x);
    const auto [a, b] = one_point_crossover_pair(x, y, 2);
    CHECK(a == Bitstring::parse("1100"));
    CHECK(b == Bitstring::parse("0011"));
    for (std::size_t cut = 1; cut <= 4; ++cut) {
        CHECK(one_point_crossover_single(x, x, cut) == x);
        CHECK(one_point_crossover_pair(y, y, cut) == std::pair{y, y});
    }
    CHECK_THROWS_AS(one_point_crossover_single(x, Bitstring::parse("000"), 2), ContractViolation);
    CHECK_THROWS_AS(one_point_crossover_pair(x, Bitstring::parse("00000"), 2), ContractViolation);
}

TEST_CASE("random cut stays in 1..n")
{
    RngStream rng(4);
    const auto x = Bitstring::ones(6);
    const auto y = Bitstring::zeros(6);
    std::set<std::size_t> cuts;
    for (int i = 0; i < 2000; ++i) {
        const auto child = one_point_crossover_single(x, y, rng);
        const auto ones = ones_count(child);
        CHECK(ones >= 1);
        cuts.insert(ones);
        CHECK(child == one_point_crossover_single(x, y, ones));
    }
    CHECK(cuts.size() == 6);
}

TEST_CASE("uniform crossover keeps bits positionally")
{
    RngStream rng(8);
    const auto x = Bitstring::parse("11110000");
    const auto y = Bitstring::parse("10101010");
    for (int i = 0; i < 100; ++i) {
        const auto [a, b] = uniform_crossover_pair(x, y, rng);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const bool straight = a.bits[j] == x.bits[j] && b.bits[j] == y.bits[j];
            const bool swapped = a.bits[j] == y.bits[j] && b.bits[j] == x.bits[j];
            CHECK((straight || swapped));
        }
    }
}

TEST_CASE("bitwise mutation")
{
    const auto forced = mutate_with(Bitstring::parse("0000"), [](std::size_t i) { return i == 2; });
    CHECK(forced == Bitstring::parse("0010"));

    RngStream rng(2);
    CHECK(bitwise_mutation(Bitstring::parse("1010"), 1.0, rng) == Bitstring::parse("0101"));
    CHECK(bitwise_mutation(Bitstring::parse("1010"), 0.0, rng) == Bitstring::parse("1010"));

    const std::size_t n = 100;
    const int trials = 20000;
    double flips = 0;
    for (int t = 0; t < trials; ++t) {
        flips += static_cast<double>(ones_count(bitwise_mutation(Bitstring::zeros(n), 1.0 / n, rng)));
    }
    CHECK(flips / trials >= 0.97);
    CHECK(flips / trials <= 1.03);
}

TEST_CASE("variation config")
{
    VariationConfig cfg;
    CHECK(cfg.rate_for(50) == doctest::Approx(0.02));
    cfg.crossover_probability = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg.crossover_probability = 0.5;
    cfg.mutation_rate = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
}

TEST_CASE("order crossover hand trace")
{
    const Permutation x({0, 1, 2, 3, 4, 5, 6, 7});
    const Permutation y({3, 7, 5, 1, 6, 0, 2, 4});
    const auto [a, b] = order_crossover(x, y, Segment{3, 6});
    CHECK(as_vector(a) == std::vector<std::uint32_t>{1, 6, 0, 3, 4, 5, 2, 7});
    CHECK(as_vector(b) == std::vector<std::uint32_t>{3, 4, 5, 1, 6, 0, 7, 2});
}

TEST_CASE("order crossover matches an independent implementation")
{
    RngStream rng(12);
    for (int t = 0; t < 500; ++t) {
        const std::size_t d = 3 + rng.below(10);
        std::vector<std::uint32_t> xo(d);
        std::iota(xo.begin(), xo.end(), 0u);
        auto yo = xo;
        rng.shuffle(std::span(xo));
        rng.shuffle(std::span(yo));
        std::size_t lo = rng.below(d);
        std::size_t hi = rng.below(d);
        if (lo > hi) {
            std::swap(lo, hi);
        }
        ++hi;
        const auto [a, b] = order_crossover(Permutation(xo), Permutation(yo), Segment{lo, hi});
        CHECK(as_vector(a) == davis_child(xo, yo, lo, hi));
        CHECK(as_vector(b) == davis_child(yo, xo, lo, hi));
    }
}

TEST_CASE("order crossover edge cases")
{
    const Permutation x({2, 0, 3, 1});
    const Permutation y({1, 3, 0, 2});
    CHECK(order_crossover(x, x, Segment{1, 3}) == std::pair{x, x});
    CHECK(order_crossover(x, y, Segment{0, 4}).first == x);
    CHECK_THROWS_AS(order_crossover(x, Permutation::identity(5), Segment{0, 2}), ContractViolation);
    RngStream rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto [a, b] = order_crossover(x, y, rng);
        CHECK(Permutation::is_valid(a.order()));
        CHECK(Permutation::is_valid(b.order()));
    }
}

TEST_CASE("inversion mutation")
{
    const Permutation x({4, 2, 0, 3, 1});
    CHECK(inversion_mutation(x, Segment{2, 3}) == x);
    CHECK(as_vector(inversion_mutation(x, Segment{0, 5})) == std::vector<std::uint32_t>{1, 3, 0, 2, 4});
    CHECK(as_vector(inversion_mutation(x, Segment{1, 4})) == std::vector<std::uint32_t>{4, 3, 0, 2, 1});
    RngStream rng(6);
    for (int i = 0; i < 200; ++i) {
        CHECK(Permutation::is_valid(inversion_mutation(x, rng).order()));
    }
}

TEST_CASE("genome-generic dispatch")
{
    RngStream rng(1);
    VariationConfig cfg;
    cfg.mutation_rate = 1.0;
    const Genome bits{Bitstring::parse("0011")};
    CHECK(std::get<Bitstring>(mutate(bits, cfg, rng)) == Bitstring::parse("1100"));
    const Genome tour{Permutation::identity(6)};
    CHECK(Permutation::is_valid(std::get<Permutation>(mutate(tour, cfg, rng)).order()));
    CHECK_THROWS_AS(crossover_single(bits, tour, cfg, rng), ContractViolation);
}
