#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "deint/core.hpp"
#include "deint/model.hpp"

namespace deint {

/// Occurrence, transition and delay counts of one sub-sequence.
struct CountTables {
    std::map<int, std::int64_t> n_i;                              // symbol -> count
    std::map<std::pair<int, int>, std::int64_t> n_ij;             // (from,to) -> count
    std::map<std::pair<int, std::int64_t>, std::int64_t> n_ik;    // (symbol,delay) -> count
    std::int64_t n_total = 0;
};

/// Maximum-likelihood plug-in estimates; absent keys mean 0.
struct Estimators {
    std::map<std::pair<int, int>, double> p_hat;
    std::map<std::pair<int, std::int64_t>, double> q_hat;

    double p(int from, int to) const;
    double q(int symbol, std::int64_t delay) const;
};

struct ScoreResult {
    double total = 0.0;  // +inf when incompatible
    double h_z = 0.0;
    double h_x = 0.0;
    std::vector<double> per_group;  // per-group h_z + h_x, +inf if incompatible
    double penalty = 0.0;
    bool compatible = true;
    double gamma = 0.0;
    int m = 0;
    std::size_t n = 0;
};

/// Memo of per-group evaluations keyed by the group's symbol bitmask, so
/// identical groups across candidate partitions are scored once.  Also holds
/// the most recently anchored (partition, score) pair for incremental moves.
class ScoreCache {
  public:
    struct GroupEval {
        CountTables counts;
        double h_z = 0.0;
        double h_x = 0.0;
        bool compatible = true;
    };

    explicit ScoreCache(const ObservedSequence& seq) : seq_(&seq) {}

    const ObservedSequence& sequence() const { return *seq_; }
    const GroupEval& group(std::uint64_t mask);

    void anchor(const Partition& part, const ScoreResult& result);
    bool has_anchor() const { return anchored_; }
    const Partition& current_partition() const;
    const ScoreResult& current_score() const;

    std::size_t entry_count() const { return entries_.size(); }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }

  private:
    const ObservedSequence* seq_;
    std::unordered_map<std::uint64_t, GroupEval> entries_;
    bool anchored_ = false;
    Partition part_;
    ScoreResult score_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

/// One local-search step: reassign `symbol` from its current group to
/// `to_group` (pass the current group count to open a fresh group).
struct Move {
    int symbol = 0;
    int from_group = 0;
    int to_group = 0;
};

/// Last event before the observation window and the window end.
struct BoundaryContext {
    int prev_symbol = 0;
    std::int64_t prev_time = -1;  // strictly negative
    std::int64_t horizon = 0;     // T
};

CountTables count_tables(const SubSequence& sub);
Estimators ml_estimators(const CountTables& counts);

/// Transition-entropy and sojourn-entropy terms of one group,
/// -sum N_ij log(N_ij / N_i) and -sum N_i(k) log(N_i(k) / N_i).
std::pair<double, double> group_entropy(const CountTables& counts);

/// Penalized score of a candidate partition: sum of group entropies plus
/// gamma * m * log(n), or +inf when some group holds simultaneous events.
ScoreResult partition_score(const ObservedSequence& seq, const Partition& part,
                            double gamma, ScoreCache* cache = nullptr);

Partition apply_move(const Partition& part, const Move& move);

/// Score of the cache's anchored partition with one symbol moved; equal to
/// scoring the moved partition from scratch but touches only the two
/// affected groups.  Does not re-anchor the cache.
ScoreResult rescore_move(ScoreCache& cache, const Move& move);

/// Log of the full window likelihood, including boundary and terminal
/// survival factors; -inf when any factor vanishes.
double exact_log_likelihood(const SubSequence& sub, const EmitterParams& params,
                            const BoundaryContext& boundary);

/// Log of the interior product of transition and delay probabilities
/// (no boundary terms); -inf when any factor vanishes.
double approx_log_likelihood(const SubSequence& sub, const EmitterParams& params);

}  // namespace deint
