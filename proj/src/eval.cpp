#include "deint/eval.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace deint {
namespace {

double entropy(const std::map<int, std::int64_t>& counts, double total) {
    double h = 0.0;
    for (const auto& [label, cnt] : counts)
        h -= static_cast<double>(cnt) / total * std::log(static_cast<double>(cnt) / total);
    return h;
}

double conditional_entropy(const std::vector<int>& target, const std::vector<int>& given) {
    std::map<std::pair<int, int>, std::int64_t> joint;
    std::map<int, std::int64_t> marginal;
    for (std::size_t i = 0; i < target.size(); ++i) {
        ++joint[{given[i], target[i]}];
        ++marginal[given[i]];
    }
    const double total = static_cast<double>(target.size());
    double h = 0.0;
    for (const auto& [key, cnt] : joint) {
        const double p = static_cast<double>(cnt) / total;
        h -= p * std::log(static_cast<double>(cnt) /
                          static_cast<double>(marginal.at(key.first)));
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<int> event_labels(const ObservedSequence& seq, const Partition& part) {
    std::vector<int> labels;
    labels.reserve(seq.events.size());
    for (const auto& ev : seq.events)
        labels.push_back(part.assignment[static_cast<std::size_t>(ev.symbol)]);
    return labels;
}

}  // namespace

double v_measure(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.empty() || truth.size() != predicted.size())
        throw std::invalid_argument("labelings must be non-empty and of equal length");

    std::map<int, std::int64_t> truth_counts;
    std::map<int, std::int64_t> pred_counts;
    for (const int label : truth) ++truth_counts[label];
    for (const int label : predicted) ++pred_counts[label];
    const double total = static_cast<double>(truth.size());

    const double h_truth = entropy(truth_counts, total);
    const double h_pred = entropy(pred_counts, total);

    const double homogeneity =
        h_truth == 0.0 ? 1.0 : 1.0 - conditional_entropy(truth, predicted) / h_truth;
    const double completeness =
        h_pred == 0.0 ? 1.0 : 1.0 - conditional_entropy(predicted, truth) / h_pred;

    const double denom = homogeneity + completeness;
    return denom == 0.0 ? 0.0 : 2.0 * homogeneity * completeness / denom;
}

bool exact_match(const Partition& predicted, const Partition& truth) {
    if (predicted.assignment.size() != truth.assignment.size()) return false;
    return canonical_partition(predicted.assignment).assignment ==
           canonical_partition(truth.assignment).assignment;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a, std::uint64_t salt_b,
                          std::uint64_t salt_c) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ salt_a);
    s = splitmix64(s ^ salt_b);
    s = splitmix64(s ^ salt_c);
    return s;
}

std::vector<ConsistencyCell> consistency_experiment(const ExperimentGrid& grid) {
    if (grid.scenarios_per_cell < 1)
        throw std::invalid_argument("scenario count must be positive");
    std::vector<ConsistencyCell> cells;
    for (const int a : grid.alphabet_sizes) {
        for (const std::size_t n : grid.sequence_lengths) {
            int successes = 0;
            for (int i = 0; i < grid.scenarios_per_cell; ++i) {
                const auto seed = derive_seed(grid.seed, static_cast<std::uint64_t>(a), n,
                                              static_cast<std::uint64_t>(i));
                const Scenario scenario = random_scenario(a, n, seed);
                const SearchReport report = exhaustive_search(scenario.sequence, grid.gamma);
                if (exact_match(report.best_partition, scenario.model.partition)) ++successes;
            }
            cells.push_back({a, n,
                             static_cast<double>(successes) /
                                 static_cast<double>(grid.scenarios_per_cell),
                             grid.scenarios_per_cell});
        }
    }
    return cells;
}

std::string method_name(Method method) {
    return method == Method::exhaustive ? "exhaustive" : "teds";
}

std::vector<BenchmarkRecord> benchmark_run(const std::vector<Scenario>& scenarios,
                                           Method method, const SearchConfig& config,
                                           bool event_weighted) {
    std::vector<BenchmarkRecord> records;
    records.reserve(scenarios.size());
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& scenario = scenarios[i];
        const auto started = std::chrono::steady_clock::now();
        SearchReport report;
        if (method == Method::exhaustive) {
            report = exhaustive_search(scenario.sequence, config.gamma, config.exhaustive_cap);
        } else {
            SearchConfig local = config;
            local.seed = derive_seed(config.seed, i, 0, 0);
            report = teds(scenario.sequence, local);
        }
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;

        BenchmarkRecord rec;
        rec.scenario_id = static_cast<int>(i);
        rec.method = method;
        rec.seconds = spent.count();
        rec.evaluations = report.evaluations;
        if (event_weighted) {
            rec.v_measure = v_measure(scenario.truth_labels,
                                      event_labels(scenario.sequence, report.best_partition));
        } else {
            rec.v_measure = v_measure(scenario.model.partition.assignment,
                                      report.best_partition.assignment);
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace deint
