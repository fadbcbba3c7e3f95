#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deint/core.hpp"
#include "deint/model.hpp"
#include "deint/search.hpp"

namespace deint {

/// Harmonic mean of homogeneity and completeness between two labelings of
/// the same items; invariant under relabeling on either side, in [0,1].
double v_measure(const std::vector<int>& truth, const std::vector<int>& predicted);

/// True iff the two partitions are identical up to group relabeling.
bool exact_match(const Partition& predicted, const Partition& truth);

struct ExperimentGrid {
    std::vector<int> alphabet_sizes;
    std::vector<std::size_t> sequence_lengths;
    int scenarios_per_cell = 100;
    double gamma = 0.0;
    std::uint64_t seed = 0;
};

struct ConsistencyCell {
    int alphabet_size = 0;
    std::size_t n = 0;
    double success_rate = 0.0;
    int scenarios = 0;
};

/// For every (alphabet size, length) cell: generate independent scenarios,
/// deinterleave each with exhaustive search, and report how often the
/// recovered partition equals the ground truth exactly.
std::vector<ConsistencyCell> consistency_experiment(const ExperimentGrid& grid);

enum class Method { exhaustive, teds };

std::string method_name(Method method);

struct BenchmarkRecord {
    int scenario_id = 0;
    Method method = Method::exhaustive;
    double v_measure = 0.0;
    double seconds = 0.0;
    std::uint64_t evaluations = 0;
};

/// Deinterleaves each scenario with the chosen method and scores the
/// result against the ground truth; symbol-weighted by default,
/// event-weighted when requested.
std::vector<BenchmarkRecord> benchmark_run(const std::vector<Scenario>& scenarios,
                                           Method method, const SearchConfig& config,
                                           bool event_weighted = false);

/// Stable per-cell seed derivation for reproducible experiment grids.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a, std::uint64_t salt_b,
                          std::uint64_t salt_c);

}  // namespace deint
