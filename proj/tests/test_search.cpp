#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "deint/core.hpp"
#include "deint/model.hpp"
#include "deint/scoring.hpp"
#include "deint/search.hpp"
#include "test_helpers.hpp"

using namespace deint;

namespace {

ObservedSequence make_sequence(std::vector<Event> events, int alphabet_size) {
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.time < b.time; });
    ObservedSequence seq;
    seq.events = std::move(events);
    seq.alphabet_size = alphabet_size;
    seq.horizon = seq.events.empty() ? 0 : seq.events.back().time;
    return seq;
}

/// Two deterministic alternating pairs on disjoint tick parities: symbols
/// 0/1 swap every two ticks on even times, symbols 2/3 swap on odd times
/// with one delay irregularity so their group carries positive entropy.
ObservedSequence crossover_fixture() {
    return make_sequence({{0, 0}, {1, 2}, {0, 4}, {1, 6}, {0, 8}, {1, 10},
                          {2, 1}, {3, 3}, {2, 7}, {3, 9}, {2, 11}},
                         4);
}

}  // namespace

TEST_CASE("tabu entries block until their expiry iteration") {
    TabuList tabu;
    CHECK_FALSE(tabu.blocked(1, 5, 0));

    tabu.record(1, 5, 7);
    CHECK(tabu.blocked(1, 5, 0));
    CHECK(tabu.blocked(1, 5, 7));
    CHECK_FALSE(tabu.blocked(1, 5, 8));
    CHECK_FALSE(tabu.blocked(2, 5, 3));  // other symbol
    CHECK_FALSE(tabu.blocked(1, 4, 3));  // other destination signature

    tabu.record(1, 5, 12);
    tabu.record(1, 5, 3);  // shorter tenure never truncates an entry
    CHECK(tabu.blocked(1, 5, 12));
    CHECK_FALSE(tabu.blocked(1, 5, 13));
}

TEST_CASE("exhaustive search scans the whole partition lattice") {
    const Scenario scenario = random_scenario(4, 300, 5);
    const SearchReport report = exhaustive_search(scenario.sequence, 0.0);

    CHECK(report.generations == 15);  // every partition of four symbols
    CHECK(report.trajectory.size() == 1);
    CHECK(report.trajectory[0] == report.best_score.total);
    CHECK(report.evaluations > 0);
    CHECK(report.best_score.compatible);

    // No partition beats the reported minimum.
    PartitionEnumerator all(4);
    while (auto part = all.next()) {
        const ScoreResult score = partition_score(scenario.sequence, *part, 0.0);
        CHECK(score.total >= report.best_score.total);
    }
}

TEST_CASE("exhaustive search on a single symbol") {
    const Scenario scenario = random_scenario(1, 50, 9);
    const SearchReport report = exhaustive_search(scenario.sequence, 0.0);
    CHECK(report.generations == 1);
    CHECK(report.best_partition.assignment == std::vector<int>{0});
}

TEST_CASE("exhaustive search separates symbols that share a tick") {
    const auto seq = make_sequence({{0, 0}, {1, 4}, {0, 4}, {1, 8}, {0, 9}}, 2);
    const SearchReport report = exhaustive_search(seq, 0.0);
    CHECK(report.best_partition.assignment == std::vector<int>{0, 1});
    CHECK(report.best_score.compatible);
}

TEST_CASE("exhaustive search refuses oversized alphabets") {
    ObservedSequence seq;
    seq.alphabet_size = 13;
    CHECK_THROWS_AS(exhaustive_search(seq, 0.0), std::invalid_argument);
    CHECK_NOTHROW(exhaustive_search(make_sequence({{0, 1}}, 1), 0.0, 1));
}

TEST_CASE("a heavy penalty drives the optimum toward one group") {
    const auto seq = crossover_fixture();
    const SearchReport coarse = exhaustive_search(seq, 1e6);
    CHECK(coarse.best_partition.group_count == 1);

    const SearchReport fine = exhaustive_search(seq, 0.0);
    CHECK(fine.best_partition.group_count > 1);
}

TEST_CASE("local search keeps an optimal start") {
    const Scenario scenario = random_scenario(4, 300, 5);
    const SearchReport truth = exhaustive_search(scenario.sequence, 0.0);

    SearchConfig config;
    std::mt19937_64 rng(1);
    ScoreCache cache(scenario.sequence);
    const Partition result =
        tabu_ap(truth.best_partition, scenario.sequence, config, rng, cache);
    const ScoreResult rescored = partition_score(scenario.sequence, result, 0.0);
    CHECK(rescored.total == doctest::Approx(truth.best_score.total).epsilon(1e-12));
}

TEST_CASE("local search output is canonical and deterministic per seed") {
    const Scenario scenario = random_scenario(5, 500, 77);
    SearchConfig config;

    std::mt19937_64 rng_a(42);
    ScoreCache cache_a(scenario.sequence);
    const Partition start = sample_uniform_partition(5, rng_a);
    const Partition out_a = tabu_ap(start, scenario.sequence, config, rng_a, cache_a);

    std::mt19937_64 rng_b(42);
    ScoreCache cache_b(scenario.sequence);
    sample_uniform_partition(5, rng_b);  // replay the identical stream
    const Partition out_b = tabu_ap(start, scenario.sequence, config, rng_b, cache_b);

    CHECK(out_a == out_b);
    CHECK(out_a.assignment.size() == 5);
    CHECK(out_a == canonical_partition(out_a.assignment));
}

TEST_CASE("local search rejects a start of the wrong width") {
    const Scenario scenario = random_scenario(4, 100, 2);
    SearchConfig config;
    std::mt19937_64 rng(3);
    ScoreCache cache(scenario.sequence);
    CHECK_THROWS_AS(
        tabu_ap(canonical_partition({0, 1}), scenario.sequence, config, rng, cache),
        std::invalid_argument);
}

TEST_CASE("local search reaches the optimum from most random starts") {
    const Scenario scenario = random_scenario(7, 2000, 1234);
    const SearchReport truth = exhaustive_search(scenario.sequence, 0.0);

    SearchConfig config;
    std::mt19937_64 rng(5150);
    ScoreCache cache(scenario.sequence);
    int attained = 0;
    const int starts = 50;
    for (int trial = 0; trial < starts; ++trial) {
        const Partition start = sample_uniform_partition(7, rng);
        const Partition result = tabu_ap(start, scenario.sequence, config, rng, cache);
        const ScoreResult rescored = partition_score(scenario.sequence, result, 0.0);
        CHECK(rescored.total >= truth.best_score.total - 1e-9);
        if (rescored.total <= truth.best_score.total + 1e-9) ++attained;
    }
    CHECK(attained >= 30);  // at least 60% of the restarts
}

TEST_CASE("crossover transmits the lowest-entropy groups alternately") {
    const auto seq = crossover_fixture();
    ScoreCache cache(seq);

    const Partition pairs = canonical_partition({0, 0, 1, 1});
    const Partition lopsided = canonical_partition({0, 1, 1, 1});

    // First donor offers the zero-entropy pair {0,1}; the second donor then
    // covers the remainder with {2,3}.
    const Partition child_ab = glpx(pairs, lopsided, seq, cache);
    CHECK(child_ab.assignment == std::vector<int>{0, 0, 1, 1});

    // Swapping the donors starts from {0} instead, and the alternation
    // yields a genuinely different child: order matters.
    const Partition child_ba = glpx(lopsided, pairs, seq, cache);
    CHECK(child_ba.assignment == std::vector<int>{0, 1, 2, 2});
}

TEST_CASE("crossover with identical parents reproduces the parent") {
    std::mt19937_64 rng(31337);
    const Scenario scenario = random_scenario(6, 400, 8);
    ScoreCache cache(scenario.sequence);
    for (int trial = 0; trial < 20; ++trial) {
        const Partition parent = sample_uniform_partition(6, rng);
        CHECK(glpx(parent, parent, scenario.sequence, cache) == parent);
    }
}

TEST_CASE("crossover children always cover the alphabet") {
    std::mt19937_64 rng(246);
    const Scenario scenario = random_scenario(6, 400, 12);
    ScoreCache cache(scenario.sequence);
    for (int trial = 0; trial < 30; ++trial) {
        const Partition pa = sample_uniform_partition(6, rng);
        const Partition pb = sample_uniform_partition(6, rng);
        const Partition child = glpx(pa, pb, scenario.sequence, cache);
        CHECK(child.assignment.size() == 6);
        CHECK(child == canonical_partition(child.assignment));
        CHECK(*std::max_element(child.assignment.begin(), child.assignment.end()) ==
              child.group_count - 1);
    }
}

TEST_CASE("crossover validates its inputs") {
    const Scenario scenario = random_scenario(3, 100, 4);
    ScoreCache cache(scenario.sequence);
    CHECK_THROWS_AS(glpx(canonical_partition({0, 1}), canonical_partition({0, 1, 2}),
                         scenario.sequence, cache),
                    std::invalid_argument);

    const Scenario other = random_scenario(3, 100, 6);
    CHECK_THROWS_AS(glpx(canonical_partition({0, 1, 2}), canonical_partition({0, 1, 2}),
                         other.sequence, cache),
                    std::invalid_argument);
}

TEST_CASE("memetic search on a single symbol returns at once") {
    const Scenario scenario = random_scenario(1, 60, 11);
    SearchConfig config;
    const SearchReport report = teds(scenario.sequence, config);
    CHECK(report.generations == 0);
    CHECK(report.best_partition.assignment == std::vector<int>{0});
    CHECK(report.trajectory.size() == 1);
}

TEST_CASE("memetic search is deterministic per seed without a time budget") {
    const Scenario scenario = random_scenario(5, 800, 99);
    SearchConfig config;
    config.max_generations = 6;
    config.seed = 321;

    const SearchReport first = teds(scenario.sequence, config);
    const SearchReport second = teds(scenario.sequence, config);
    CHECK(first.best_partition == second.best_partition);
    CHECK(first.best_score.total == second.best_score.total);
    CHECK(first.trajectory == second.trajectory);
    CHECK(first.evaluations == second.evaluations);
}

TEST_CASE("memetic search trajectory tracks the incumbent") {
    const Scenario scenario = random_scenario(6, 600, 14);
    SearchConfig config;
    config.max_generations = 8;
    config.seed = 7;

    const SearchReport report = teds(scenario.sequence, config);
    CHECK(report.generations == 8);
    REQUIRE(report.trajectory.size() == 8);
    for (std::size_t g = 1; g < report.trajectory.size(); ++g)
        CHECK(report.trajectory[g] <= report.trajectory[g - 1]);
    CHECK(report.trajectory.back() == report.best_score.total);
    CHECK(report.best_partition == canonical_partition(report.best_partition.assignment));
}

TEST_CASE("memetic search never beats the exhaustive optimum") {
    SearchConfig config;
    config.max_generations = 5;
    for (int trial = 0; trial < 10; ++trial) {
        const Scenario scenario = random_scenario(5, 400, 1000 + trial);
        config.seed = static_cast<std::uint64_t>(trial);
        const SearchReport memetic = teds(scenario.sequence, config);
        const SearchReport truth = exhaustive_search(scenario.sequence, 0.0);
        CHECK(memetic.best_score.total >= truth.best_score.total - 1e-9);
        CHECK(memetic.best_score.compatible);
    }
}

TEST_CASE("an exhausted time budget still yields a valid answer") {
    const Scenario scenario = random_scenario(5, 500, 23);
    SearchConfig config;
    config.time_budget_seconds = 0.0;

    const SearchReport report = teds(scenario.sequence, config);
    CHECK(report.generations == 0);
    CHECK(report.trajectory.empty());
    CHECK(report.best_partition.assignment.size() == 5);
    CHECK(report.best_partition == canonical_partition(report.best_partition.assignment));
    CHECK(report.best_score.n == 500);
}
