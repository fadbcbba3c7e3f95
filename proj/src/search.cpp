#include "deint/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rand_util.hpp"

namespace deint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t full_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

bool TabuList::blocked(int symbol, std::uint64_t destination, int iteration) const {
    const auto it = entries_.find({symbol, destination});
    return it != entries_.end() && iteration <= it->second;
}

void TabuList::record(int symbol, std::uint64_t destination, int expiry) {
    auto& slot = entries_[{symbol, destination}];
    slot = std::max(slot, expiry);
}

SearchReport exhaustive_search(const ObservedSequence& seq, double gamma, int cap) {
    if (seq.alphabet_size > cap)
        throw std::invalid_argument(
            "alphabet too large for exhaustive enumeration; use the memetic search");

    ScoreCache cache(seq);
    SearchReport report;
    PartitionEnumerator candidates(seq.alphabet_size);
    bool first = true;
    while (auto part = candidates.next()) {
        const ScoreResult score = partition_score(seq, *part, gamma, &cache);
        ++report.generations;
        if (first || score.total < report.best_score.total) {
            report.best_partition = std::move(*part);
            report.best_score = score;
            first = false;
        }
    }
    report.evaluations = cache.misses();
    report.trajectory.push_back(report.best_score.total);
    return report;
}

Partition tabu_ap(const Partition& start, const ObservedSequence& seq,
                  const SearchConfig& config, std::mt19937_64& rng, ScoreCache& cache) {
    if (static_cast<int>(start.assignment.size()) != seq.alphabet_size)
        throw std::invalid_argument("start partition does not cover the alphabet");

    const int a = seq.alphabet_size;
    Partition current = canonical_partition(start.assignment);
    ScoreResult current_score = partition_score(seq, current, config.gamma, &cache);
    Partition best = current;
    ScoreResult best_score = current_score;

    TabuList tabu;
    const int tenure_base = static_cast<int>(std::floor(config.alpha * a));

    struct Candidate {
        Move move;
        ScoreResult score;
        std::uint64_t reverse_signature;  // source-group content after the move
    };

    for (int iter = 0; iter < config.nb_iter; ++iter) {
        std::vector<std::uint64_t> masks;
        masks.reserve(static_cast<std::size_t>(current.group_count));
        for (const auto& group : current.groups()) masks.push_back(group_mask(group));

        std::vector<Candidate> admissible;
        double admissible_total = kInf;
        std::vector<Candidate> anyhow;  // ignores tabu, breaks all-blocked stalls
        double anyhow_total = kInf;
        const auto keep_min = [](std::vector<Candidate>& pool, double& pool_total,
                                 const Candidate& cand) {
            if (pool.empty() || cand.score.total < pool_total) {
                pool.assign(1, cand);
                pool_total = cand.score.total;
            } else if (cand.score.total == pool_total) {
                pool.push_back(cand);
            }
        };

        for (int symbol = 0; symbol < a; ++symbol) {
            const int from = current.assignment[static_cast<std::size_t>(symbol)];
            const std::uint64_t source_after =
                masks[static_cast<std::size_t>(from)] & ~(std::uint64_t{1} << symbol);
            for (int target = 0; target <= current.group_count; ++target) {
                if (target == from) continue;
                // A lone symbol moved to a fresh group re-creates the same
                // partition; skip the identity.
                if (target == current.group_count && source_after == 0) continue;

                Candidate cand;
                cand.move = {symbol, from, target};
                cand.score = rescore_move(cache, cand.move);
                cand.reverse_signature = source_after;
                keep_min(anyhow, anyhow_total, cand);

                const std::uint64_t dest_signature =
                    target == current.group_count ? 0 : masks[static_cast<std::size_t>(target)];
                const bool barred = tabu.blocked(symbol, dest_signature, iter);
                const bool aspires =
                    config.aspiration && cand.score.total < best_score.total;
                if (!barred || aspires) keep_min(admissible, admissible_total, cand);
            }
        }

        auto& pool = admissible.empty() ? anyhow : admissible;
        if (pool.empty()) break;  // one-symbol alphabet: no neighbors at all
        const auto& chosen =
            pool.size() == 1
                ? pool.front()
                : pool[static_cast<std::size_t>(
                      rnd::uniform_int(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];

        current = apply_move(current, chosen.move);
        current_score = chosen.score;
        cache.anchor(current, current_score);

        const int tenure = static_cast<int>(rnd::uniform_int(rng, 1, 10)) + tenure_base;
        tabu.record(chosen.move.symbol, chosen.reverse_signature, iter + tenure);

        if (current_score.total < best_score.total) {
            best = current;
            best_score = current_score;
        }
    }
    return best;
}

Partition glpx(const Partition& parent_a, const Partition& parent_b,
               const ObservedSequence& seq, ScoreCache& cache) {
    if (parent_a.assignment.size() != parent_b.assignment.size())
        throw std::invalid_argument("crossover parents cover different alphabets");
    if (&cache.sequence() != &seq)
        throw std::invalid_argument("cache bound to a different sequence");
    const int a = static_cast<int>(parent_a.assignment.size());

    std::vector<int> labels(static_cast<std::size_t>(a), 0);
    std::uint64_t remaining = full_mask(a);
    const Partition* parents[2] = {&parent_a, &parent_b};
    int next_label = 0;
    for (int turn = 0; remaining != 0; ++turn) {
        const Partition& donor = *parents[turn % 2];

        std::uint64_t best_mask = 0;
        double best_score = kInf;
        for (const auto& group : donor.groups()) {
            const std::uint64_t mask = group_mask(group) & remaining;
            if (mask == 0) continue;
            const auto& eval = cache.group(mask);
            const double h = eval.compatible ? eval.h_z + eval.h_x : kInf;
            const double score = h / static_cast<double>(std::popcount(mask));
            if (best_mask == 0 || score < best_score ||
                (score == best_score && mask < best_mask)) {
                best_mask = mask;
                best_score = score;
            }
        }

        if (best_mask == 0)
            throw std::logic_error("crossover donor no longer covers the leftover symbols");
        for (int symbol = 0; symbol < a; ++symbol)
            if (best_mask >> symbol & 1) labels[static_cast<std::size_t>(symbol)] = next_label;
        ++next_label;
        remaining &= ~best_mask;
    }
    return canonical_partition(labels);
}

SearchReport teds(const ObservedSequence& seq, const SearchConfig& config) {
    std::mt19937_64 rng(config.seed);
    ScoreCache cache(seq);
    SearchReport report;

    const int a = seq.alphabet_size;
    if (a <= 1) {
        Partition only;
        if (a == 1) only = canonical_partition({0});
        report.best_score = partition_score(seq, only, config.gamma, &cache);
        report.best_partition = std::move(only);
        report.evaluations = cache.misses();
        report.trajectory.push_back(report.best_score.total);
        return report;
    }

    Partition pop_a = sample_uniform_partition(a, rng);
    Partition pop_b = sample_uniform_partition(a, rng);
    Partition best = sample_uniform_partition(a, rng);
    ScoreResult best_score = partition_score(seq, best, config.gamma, &cache);

    const auto started = std::chrono::steady_clock::now();
    const auto out_of_time = [&] {
        if (!config.time_budget_seconds) return false;
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
        return spent.count() >= *config.time_budget_seconds;
    };

    int generation = 0;
    for (; generation < config.max_generations && !out_of_time(); ++generation) {
        const Partition improved_a = tabu_ap(pop_a, seq, config, rng, cache);
        const Partition improved_b = tabu_ap(pop_b, seq, config, rng, cache);

        const ScoreResult score_a = partition_score(seq, improved_a, config.gamma, &cache);
        if (score_a.total < best_score.total) {
            best = improved_a;
            best_score = score_a;
        }
        const ScoreResult score_b = partition_score(seq, improved_b, config.gamma, &cache);
        if (score_b.total < best_score.total) {
            best = improved_b;
            best_score = score_b;
        }

        pop_a = glpx(improved_a, improved_b, seq, cache);
        pop_b = glpx(improved_b, improved_a, seq, cache);
        report.trajectory.push_back(best_score.total);
    }

    report.generations = generation;
    report.best_partition = std::move(best);
    report.best_score = best_score;
    report.evaluations = cache.misses();
    return report;
}

}  // namespace deint
