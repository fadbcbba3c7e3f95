#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "deint/core.hpp"
#include "deint/scoring.hpp"

namespace deint {

struct SearchConfig {
    double gamma = 0.0;
    int nb_iter = 50;         // local-search iterations per call
    double alpha = 0.6;       // tabu tenure coefficient
    int max_generations = 200;
    std::optional<double> time_budget_seconds;  // optional wall-clock cap
    std::uint64_t seed = 0;
    bool aspiration = true;   // tabu override on strict incumbent improvement
    int exhaustive_cap = 12;  // refuse exhaustive search above this size
};

/// Recently reversed moves: (symbol, destination-group signature) barred
/// until their expiry iteration.  Signatures are symbol bitmasks, so an
/// entry goes inert if no group with that exact content exists any more.
class TabuList {
  public:
    bool blocked(int symbol, std::uint64_t destination, int iteration) const;
    void record(int symbol, std::uint64_t destination, int expiry);

  private:
    std::map<std::pair<int, std::uint64_t>, int> entries_;
};

struct SearchReport {
    Partition best_partition;
    ScoreResult best_score;
    std::uint64_t evaluations = 0;  // distinct group evaluations performed
    int generations = 0;
    std::vector<double> trajectory;  // incumbent total per generation
};

/// Scores every partition of the alphabet and returns the global minimum;
/// ties go to the first (lexicographically smallest) assignment.
SearchReport exhaustive_search(const ObservedSequence& seq, double gamma,
                               int cap = 12);

/// Tabu-driven local search over one-move neighborhoods; runs exactly
/// config.nb_iter iterations and returns the best partition encountered.
Partition tabu_ap(const Partition& start, const ObservedSequence& seq,
                  const SearchConfig& config, std::mt19937_64& rng,
                  ScoreCache& cache);

/// Greedy crossover: alternately (first from parent_a) transmit the
/// surviving group with the lowest entropy per symbol, withdraw its
/// symbols from both parents, and repeat until the alphabet is covered.
Partition glpx(const Partition& parent_a, const Partition& parent_b,
               const ObservedSequence& seq, ScoreCache& cache);

/// Two-member memetic search alternating tabu_ap improvement and glpx
/// recombination; deterministic per seed when no time budget is set.
SearchReport teds(const ObservedSequence& seq, const SearchConfig& config);

}  // namespace deint
