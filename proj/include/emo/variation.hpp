// Reproduction operators for bitstrings and permutations.
#ifndef EMO_VARIATION_HPP
#define EMO_VARIATION_HPP

#include "emo/core.hpp"

#include <optional>
#include <utility>

namespace emo {

enum class BitCrossover { one_point, uniform };

struct VariationConfig {
    double crossover_probability = 0.5;
    /// Per-bit flip probability; unset means 1/n.
    std::optional<double> mutation_rate;
    BitCrossover bit_crossover = BitCrossover::one_point;

    void validate() const;
    double rate_for(std::size_t n) const { return mutation_rate.value_or(1.0 / static_cast<double>(n)); }
};

/// First `cut` bits of x followed by the remaining bits of y; cut in [1, n].
Bitstring one_point_crossover_single(const Bitstring& x, const Bitstring& y, std::size_t cut);
/// Draws the cut uniformly from {1..n}; cut = n clones x.
Bitstring one_point_crossover_single(const Bitstring& x, const Bitstring& y, RngStream& rng);

std::pair<Bitstring, Bitstring> one_point_crossover_pair(const Bitstring& x, const Bitstring& y, std::size_t cut);
std::pair<Bitstring, Bitstring> one_point_crossover_pair(const Bitstring& x, const Bitstring& y, RngStream& rng);

/// Each position swapped between the children with probability 1/2.
std::pair<Bitstring, Bitstring> uniform_crossover_pair(const Bitstring& x, const Bitstring& y, RngStream& rng);

/// Flips bit i whenever `flip(i)` returns true.
template <class FlipDecision>
Bitstring mutate_with(const Bitstring& x, FlipDecision&& flip)
{
    Bitstring out = x;
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        if (flip(i)) {
            out.bits[i] ^= 1u;
        }
    }
    return out;
}

Bitstring bitwise_mutation(const Bitstring& x, double rate, RngStream& rng);

/// Half-open segment [begin, end) of a permutation.
struct Segment {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Davis order crossover: child i keeps parent i's segment and fills the
/// remaining slots, starting after the segment and wrapping around, with the
/// other parent's cities in that parent's order from the same position.
std::pair<Permutation, Permutation> order_crossover(const Permutation& x, const Permutation& y, Segment segment);
std::pair<Permutation, Permutation> order_crossover(const Permutation& x, const Permutation& y, RngStream& rng);

/// Reverses positions [segment.begin, segment.end).
Permutation inversion_mutation(const Permutation& x, Segment segment);
Permutation inversion_mutation(const Permutation& x, RngStream& rng);

/// Genome-generic variation used by the algorithm loops.
Genome mutate(const Genome& g, const VariationConfig& cfg, RngStream& rng);
Genome crossover_single(const Genome& x, const Genome& y, const VariationConfig& cfg, RngStream& rng);
std::pair<Genome, Genome> crossover_pair(const Genome& x, const Genome& y, const VariationConfig& cfg,
                                         RngStream& rng);

} // namespace emo

#endif // EMO_VARIATION_HPP
