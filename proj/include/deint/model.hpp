#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "deint/core.hpp"

namespace deint {

/// Parameters of one source: a symbol-transition matrix over its
/// sub-alphabet and one finite sojourn-time distribution per symbol.
struct EmitterParams {
    struct Sojourn {
        std::vector<std::int64_t> support;  // strictly positive, ascending
        std::vector<double> prob;           // same length, sums to 1
    };

    std::vector<int> symbols;  // sub-alphabet, ascending global indices
    std::vector<std::vector<double>> transition;  // [from][to] over local order
    std::vector<Sojourn> sojourn;                 // per local symbol

    int local_index(int symbol) const;
    double transition_prob(int from_symbol, int to_symbol) const;
    double sojourn_prob(int symbol, std::int64_t delay) const;
    /// P(sojourn > k | symbol).
    double survival(int symbol, std::int64_t k) const;
    std::int64_t max_delay(int symbol) const;
};

struct GenerativeModel {
    Alphabet alphabet;
    Partition partition;                  // ground truth
    std::vector<EmitterParams> emitters;  // one per group, same order
    std::vector<int> initial_symbols;     // per group, global symbol index
};

struct Violation {
    char assumption;  // 'P' transition, 'Q' sojourn, 'K' gcd, 'S' structure
    std::string detail;
};

/// Checks strict positivity of transitions, positivity/normalization of
/// sojourn distributions, gcd 1 of each group's pooled delay set, and that
/// the emitters' sub-alphabets are exactly the partition's groups.
std::vector<Violation> validate_model(const GenerativeModel& model);

/// Exact uniform draw over all set partitions of k symbols, by weighting
/// each restricted-growth prefix extension with its completion count.
Partition sample_uniform_partition(int symbol_count, std::mt19937_64& rng);

/// Draws a full model: uniform partition, strictly positive transition rows,
/// and per-symbol sojourn supports of size 1..K with values in 1..L
/// (defaults K = m+1, L = |alphabet|+1), resampled and finally patched so
/// each group's pooled delay set has gcd 1.
GenerativeModel sample_model(const Alphabet& alphabet, std::mt19937_64& rng,
                             std::optional<int> support_count_cap = std::nullopt,
                             std::optional<int> delay_value_cap = std::nullopt);

struct Scenario {
    GenerativeModel model;
    ObservedSequence sequence;
    std::vector<int> truth_labels;  // per event, emitting group index
    std::uint64_t seed = 0;
};

/// Runs each emitter independently (first event at time 0, then transition
/// row and sojourn draw per step), merges the streams by
/// (time, emitter, symbol), and truncates to exactly n events.
Scenario generate_scenario(const GenerativeModel& model, std::size_t n, std::uint64_t seed);

/// Samples a model and a scenario from one master seed.
Scenario random_scenario(int alphabet_size, std::size_t n, std::uint64_t seed);

}  // namespace deint
