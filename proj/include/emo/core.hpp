// Core domain types: genomes, objective vectors, dominance, and the seeded
// random stream every stochastic component draws from.
#ifndef EMO_CORE_HPP
#define EMO_CORE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace emo {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Direction : std::uint8_t { maximize, minimize };

/// Fixed-capacity vector of objective values with a per-objective direction.
///
/// Values are stored as given (raw scale). Comparisons go through
/// `oriented()`, which flips the sign of minimized objectives so that every
/// relation can be evaluated as maximization.
class ObjectiveVector {
public:
    static constexpr std::size_t max_objectives = 8;

    ObjectiveVector() = default;
    ObjectiveVector(std::span<const double> values, std::span<const Direction> directions);

    static ObjectiveVector maximizing(std::initializer_list<double> values);
    static ObjectiveVector minimizing(std::initializer_list<double> values);
    static ObjectiveVector uniform(std::span<const double> values, Direction direction);

    std::size_t size() const noexcept { return size_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    Direction direction(std::size_t i) const noexcept
    {
        return (minimize_mask_ >> i) & 1u ? Direction::minimize : Direction::maximize;
    }
    double oriented(std::size_t i) const noexcept
    {
        return (minimize_mask_ >> i) & 1u ? -values_[i] : values_[i];
    }
    std::span<const double> values() const noexcept { return {values_.data(), size_}; }
    std::uint8_t direction_mask() const noexcept { return minimize_mask_; }

    bool same_shape(const ObjectiveVector& other) const noexcept
    {
        return size_ == other.size_ && minimize_mask_ == other.minimize_mask_;
    }

    friend bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;
    /// Lexicographic order on (shape, values); used for grouping, not dominance.
    friend bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;

private:
    std::array<double, max_objectives> values_{};
    std::uint8_t size_ = 0;
    std::uint8_t minimize_mask_ = 0;
};

bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;

std::string to_string(const ObjectiveVector& v);

/// Shortest text that parses back to the same double.
std::string format_real(double x);

/// Outcome of comparing two objective vectors under Pareto dominance.
///
/// With exact comparisons, `a ⪰ b` and `a ≠ b` already implies `a ≻ b`, so the
/// weak variants are only reachable for callers that construct them
/// explicitly; `dominance()` never returns them.
enum class Dominance {
    a_dominates,
    b_dominates,
    a_weakly_dominates,
    b_weakly_dominates,
    equal,
    incomparable,
};

const char* to_string(Dominance d) noexcept;

Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b);

/// a ⪰ b: a is at least as good in every objective.
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);
/// a ≻ b: weak dominance plus a strict improvement somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct Bitstring {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    friend bool operator==(const Bitstring&, const Bitstring&) = default;

    static Bitstring ones(std::size_t n) { return {std::vector<std::uint8_t>(n, 1)}; }
    static Bitstring zeros(std::size_t n) { return {std::vector<std::uint8_t>(n, 0)}; }
    /// Parses a string of '0'/'1' characters.
    static Bitstring parse(std::string_view text);
};

std::string to_string(const Bitstring& b);

/// A tour over cities 0..D-1. The constructor rejects anything that is not a
/// permutation.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> order);

    static Permutation identity(std::size_t d);
    static bool is_valid(std::span<const std::uint32_t> order);

    std::size_t size() const noexcept { return order_.size(); }
    std::uint32_t operator[](std::size_t i) const noexcept { return order_[i]; }
    std::span<const std::uint32_t> order() const noexcept { return order_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> order_;
};

using Genome = std::variant<Bitstring, Permutation>;

std::size_t ones_count(const Bitstring& g) noexcept;
/// Throws ContractViolation for permutation genomes.
std::size_t ones_count(const Genome& g);

struct Individual {
    Genome genome;
    ObjectiveVector objectives;
};

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> individuals);

/// xoshiro256** seeded through splitmix64 from (seed, stream id).
///
/// All derived draws (bounded integers, unit reals, shuffles) are implemented
/// here rather than through <random> distributions, whose output is
/// implementation-defined, so a (seed, stream id) pair reproduces the same
/// sequence on every platform.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    /// Uniform on [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Uniform on [0, 1) with 53 bits of resolution.
    double unit() noexcept;
    bool bernoulli(double p) noexcept { return unit() < p; }

    template <class T>
    void shuffle(std::span<T> items) noexcept
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    /// `count` distinct indices from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_;
    std::uint64_t stream_;
};

/// splitmix64 finalizer; a stable 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace emo

#endif // EMO_CORE_HPP
