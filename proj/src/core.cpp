#include "emo/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace emo {

ObjectiveVector::ObjectiveVector(std::span<const double> values, std::span<const Direction> directions)
{
    if (values.size() != directions.size()) {
        throw ContractViolation("objective values and directions differ in length");
    }
    if (values.size() > max_objectives) {
        throw ContractViolation("at most " + std::to_string(max_objectives) + " objectives are supported, got " +
                                std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ContractViolation("objective value " + std::to_string(i) + " is not finite");
        }
        values_[i] = values[i];
        if (directions[i] == Direction::minimize) {
            minimize_mask_ = static_cast<std::uint8_t>(minimize_mask_ | (1u << i));
        }
    }
    size_ = static_cast<std::uint8_t>(values.size());
}

ObjectiveVector ObjectiveVector::uniform(std::span<const double> values, Direction direction)
{
    std::array<Direction, max_objectives> dirs{};
    dirs.fill(direction);
    if (values.size() > max_objectives) {
        throw ContractViolation("too many objectives");
    }
    return ObjectiveVector(values, std::span<const Direction>(dirs.data(), values.size()));
}

ObjectiveVector ObjectiveVector::maximizing(std::initializer_list<double> values)
{
    return uniform(std::span<const double>(values.begin(), values.size()), Direction::maximize);
}

ObjectiveVector ObjectiveVector::minimizing(std::initializer_list<double> values)
{
    return uniform(std::span<const double>(values.begin(), values.size()), Direction::minimize);
}

bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) noexcept
{
    if (!a.same_shape(b)) {
        return false;
    }
    for (std::size_t i = 0; i < a.size_; ++i) {
        if (a.values_[i] != b.values_[i]) {
            return false;
        }
    }
    return true;
}

bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) noexcept
{
    if (a.size_ != b.size_) {
        return a.size_ < b.size_;
    }
    if (a.minimize_mask_ != b.minimize_mask_) {
        return a.minimize_mask_ < b.minimize_mask_;
    }
    for (std::size_t i = 0; i < a.size_; ++i) {
        if (a.values_[i] != b.values_[i]) {
            return a.values_[i] < b.values_[i];
        }
    }
    return false;
}

std::string format_real(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_string(const ObjectiveVector& v)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            out << ", ";
        }
        out << format_real(v[i]);
    }
    out << ')';
    return out.str();
}

const char* to_string(Dominance d) noexcept
{
    switch (d) {
    case Dominance::a_dominates: return "a_dominates";
    case Dominance::b_dominates: return "b_dominates";
    case Dominance::a_weakly_dominates: return "a_weakly_dominates";
    case Dominance::b_weakly_dominates: return "b_weakly_dominates";
    case Dominance::equal: return "equal";
    case Dominance::incomparable: return "incomparable";
    }
    return "unknown";
}

namespace {

void require_comparable(const ObjectiveVector& a, const ObjectiveVector& b)
{
    if (a.size() != b.size()) {
        throw ContractViolation("dominance between vectors of length " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
    if (a.direction_mask() != b.direction_mask()) {
        throw ContractViolation("dominance between vectors with different objective directions");
    }
}

} // namespace

Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b)
{
    require_comparable(a, b);
    bool a_better = false;
    bool b_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double x = a.oriented(i);
        double y = b.oriented(i);
        if (x > y) {
            a_better = true;
        } else if (y > x) {
            b_better = true;
        }
        if (a_better && b_better) {
            return Dominance::incomparable;
        }
    }
    if (a_better) {
        return Dominance::a_dominates;
    }
    if (b_better) {
        return Dominance::b_dominates;
    }
    return Dominance::equal;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    require_comparable(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.oriented(i) < b.oriented(i)) {
            return false;
        }
    }
    return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    return dominance(a, b) == Dominance::a_dominates;
}

Bitstring Bitstring::parse(std::string_view text)
{
    Bitstring out;
    out.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ContractViolation(std::string("invalid bit character '") + c + "'");
        }
        out.bits.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

std::string to_string(const Bitstring& b)
{
    std::string s;
    s.reserve(b.size());
    for (auto bit : b.bits) {
        s.push_back(bit ? '1' : '0');
    }
    return s;
}

Permutation::Permutation(std::vector<std::uint32_t> order) : order_(std::move(order))
{
    if (!is_valid(order_)) {
        throw ContractViolation("genome is not a permutation of 0.." + std::to_string(order_.size()) + "-1");
    }
}

Permutation Permutation::identity(std::size_t d)
{
    std::vector<std::uint32_t> order(d);
    std::iota(order.begin(), order.end(), 0u);
    return Permutation(std::move(order));
}

bool Permutation::is_valid(std::span<const std::uint32_t> order)
{
    std::vector<bool> seen(order.size(), false);
    for (auto city : order) {
        if (city >= order.size() || seen[city]) {
            return false;
        }
        seen[city] = true;
    }
    return true;
}

std::size_t ones_count(const Bitstring& g) noexcept
{
    return static_cast<std::size_t>(std::count(g.bits.begin(), g.bits.end(), std::uint8_t{1}));
}

std::size_t ones_count(const Genome& g)
{
    if (const auto* b = std::get_if<Bitstring>(&g)) {
        return ones_count(*b);
    }
    throw ContractViolation("ones_count requires a bitstring genome");
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> individuals)
{
    std::vector<ObjectiveVector> out;
    out.reserve(individuals.size());
    for (const auto& ind : individuals) {
        out.push_back(ind.objectives);
    }
    return out;
}

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
{
    return (x << k) | (x >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id)
{
    // splitmix64 sequence started from a point that depends on both inputs.
    std::uint64_t sm = seed ^ mix64(stream_id ^ 0x6a09e667f3bcc909ULL);
    for (auto& word : state_) {
        sm += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = sm;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        word = z ^ (z >> 31);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;
    }
}

RngStream::result_type RngStream::next() noexcept
{
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t RngStream::below(std::uint64_t bound) noexcept
{
    // Lemire's multiply-shift with rejection; unbiased.
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<u128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::unit() noexcept
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> RngStream::sample_without_replacement(std::size_t n, std::size_t count)
{
    if (count > n) {
        throw ContractViolation("cannot sample " + std::to_string(count) + " of " + std::to_string(n) + " items");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + below(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

} // namespace emo
