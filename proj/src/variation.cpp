#include "emo/variation.hpp"

#include <algorithm>

namespace emo {

void VariationConfig::validate() const
{
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
        throw ContractViolation("crossover probability must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate > 0.0 && *mutation_rate <= 1.0)) {
        throw ContractViolation("mutation rate must lie in (0, 1]");
    }
}

namespace {

void require_same_length(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw ContractViolation("parents differ in length (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

std::size_t draw_cut(std::size_t n, RngStream& rng)
{
    return 1 + static_cast<std::size_t>(rng.below(n));
}

void require_same_kind(const Genome& x, const Genome& y)
{
    if (x.index() != y.index()) {
        throw ContractViolation("cannot recombine a bitstring with a permutation");
    }
}

Segment draw_segment(std::size_t d, RngStream& rng)
{
    auto a = static_cast<std::size_t>(rng.below(d));
    auto b = static_cast<std::size_t>(rng.below(d));
    if (a > b) {
        std::swap(a, b);
    }
    return {a, b + 1};
}

} // namespace

Bitstring one_point_crossover_single(const Bitstring& x, const Bitstring& y, std::size_t cut)
{
    require_same_length(x.size(), y.size());
    if (cut > x.size()) {
        throw ContractViolation("crossover cut beyond the string length");
    }
    Bitstring child = y;
    std::copy_n(x.bits.begin(), cut, child.bits.begin());
    return child;
}

Bitstring one_point_crossover_single(const Bitstring& x, const Bitstring& y, RngStream& rng)
{
    require_same_length(x.size(), y.size());
    return one_point_crossover_single(x, y, draw_cut(x.size(), rng));
}

std::pair<Bitstring, Bitstring> one_point_crossover_pair(const Bitstring& x, const Bitstring& y, std::size_t cut)
{
    return {one_point_crossover_single(x, y, cut), one_point_crossover_single(y, x, cut)};
}

std::pair<Bitstring, Bitstring> one_point_crossover_pair(const Bitstring& x, const Bitstring& y, RngStream& rng)
{
    require_same_length(x.size(), y.size());
    return one_point_crossover_pair(x, y, draw_cut(x.size(), rng));
}

std::pair<Bitstring, Bitstring> uniform_crossover_pair(const Bitstring& x, const Bitstring& y, RngStream& rng)
{
    require_same_length(x.size(), y.size());
    Bitstring a = x;
    Bitstring b = y;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        if (rng.next() >> 63) {
            std::swap(a.bits[i], b.bits[i]);
        }
    }
    return {std::move(a), std::move(b)};
}

Bitstring bitwise_mutation(const Bitstring& x, double rate, RngStream& rng)
{
    return mutate_with(x, [&](std::size_t) { return rng.bernoulli(rate); });
}

namespace {

Permutation ox_child(const Permutation& keep, const Permutation& donor, Segment s)
{
    const std::size_t d = keep.size();
    std::vector<std::uint32_t> child(d);
    std::vector<bool> used(d, false);
    for (std::size_t i = s.begin; i < s.end; ++i) {
        child[i] = keep[i];
        used[keep[i]] = true;
    }
    std::size_t write = s.end % d;
    for (std::size_t step = 0; step < d; ++step) {
        std::uint32_t city = donor[(s.end + step) % d];
        if (used[city]) {
            continue;
        }
        child[write] = city;
        used[city] = true;
        write = (write + 1) % d;
    }
    return Permutation(std::move(child));
}

} // namespace

std::pair<Permutation, Permutation> order_crossover(const Permutation& x, const Permutation& y, Segment segment)
{
    require_same_length(x.size(), y.size());
    if (segment.begin > segment.end || segment.end > x.size()) {
        throw ContractViolation("crossover segment out of range");
    }
    if (segment.begin == segment.end) {
        return {x, y};
    }
    return {ox_child(x, y, segment), ox_child(y, x, segment)};
}

std::pair<Permutation, Permutation> order_crossover(const Permutation& x, const Permutation& y, RngStream& rng)
{
    require_same_length(x.size(), y.size());
    return order_crossover(x, y, draw_segment(x.size(), rng));
}

Permutation inversion_mutation(const Permutation& x, Segment segment)
{
    if (segment.begin > segment.end || segment.end > x.size()) {
        throw ContractViolation("inversion segment out of range");
    }
    std::vector<std::uint32_t> order(x.order().begin(), x.order().end());
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(segment.begin),
                 order.begin() + static_cast<std::ptrdiff_t>(segment.end));
    return Permutation(std::move(order));
}

Permutation inversion_mutation(const Permutation& x, RngStream& rng)
{
    if (x.size() < 2) {
        throw ContractViolation("inversion needs at least two cities");
    }
    return inversion_mutation(x, draw_segment(x.size(), rng));
}

Genome mutate(const Genome& g, const VariationConfig& cfg, RngStream& rng)
{
    if (const auto* b = std::get_if<Bitstring>(&g)) {
        return bitwise_mutation(*b, cfg.rate_for(b->size()), rng);
    }
    return inversion_mutation(std::get<Permutation>(g), rng);
}

Genome crossover_single(const Genome& x, const Genome& y, const VariationConfig& cfg, RngStream& rng)
{
    require_same_kind(x, y);
    if (const auto* bx = std::get_if<Bitstring>(&x)) {
        const auto& by = std::get<Bitstring>(y);
        if (cfg.bit_crossover == BitCrossover::uniform) {
            return uniform_crossover_pair(*bx, by, rng).first;
        }
        return one_point_crossover_single(*bx, by, rng);
    }
    return order_crossover(std::get<Permutation>(x), std::get<Permutation>(y), rng).first;
}

std::pair<Genome, Genome> crossover_pair(const Genome& x, const Genome& y, const VariationConfig& cfg, RngStream& rng)
{
    require_same_kind(x, y);
    if (const auto* bx = std::get_if<Bitstring>(&x)) {
        const auto& by = std::get<Bitstring>(y);
        auto children = cfg.bit_crossover == BitCrossover::uniform ? uniform_crossover_pair(*bx, by, rng)
                                                                   : one_point_crossover_pair(*bx, by, rng);
        return {std::move(children.first), std::move(children.second)};
    }
    auto children = order_crossover(std::get<Permutation>(x), std::get<Permutation>(y), rng);
    return {std::move(children.first), std::move(children.second)};
}

} // namespace emo
