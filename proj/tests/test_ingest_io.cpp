#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "deint/core.hpp"
#include "deint/ingest.hpp"
#include "deint/io.hpp"
#include "deint/model.hpp"
#include "deint/scoring.hpp"
#include "deint/search.hpp"

using namespace deint;

namespace {

PulseTable pulses_from(const std::string& text) {
    std::istringstream in(text);
    return load_pulses(in);
}

template <typename Fn>
std::string message_of(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

PulseTable table_of_frequencies(const std::vector<double>& freqs) {
    PulseTable table;
    for (std::size_t i = 0; i < freqs.size(); ++i)
        table.pulses.push_back({static_cast<double>(i) * 0.1, freqs[i], {}});
    return table;
}

}  // namespace

TEST_CASE("pulse loading sorts by arrival and keeps passthrough columns") {
    const PulseTable table = pulses_from(
        "toa,frequency,pw,amp\n"
        "0.005,1000.02,12,0.5\n"
        "0.001,1000.01,10,0.7\n"
        "0.003,1200.5,11,0.9\n");
    REQUIRE(table.pulses.size() == 3);
    CHECK(table.extra_headers == std::vector<std::string>{"pw", "amp"});
    CHECK(table.pulses[0].toa == 0.001);
    CHECK(table.pulses[1].toa == 0.003);
    CHECK(table.pulses[2].toa == 0.005);
    CHECK(table.pulses[0].extra == std::vector<std::string>{"10", "0.7"});
    CHECK(table.pulses[2].frequency == 1000.02);
}

TEST_CASE("pulse loading accepts a minimal header and an empty body") {
    const PulseTable table = pulses_from("toa,frequency\n");
    CHECK(table.pulses.empty());
    CHECK(table.extra_headers.empty());
}

TEST_CASE("pulse loading handles carriage returns") {
    const PulseTable table = pulses_from("toa,frequency\r\n0.25,900.5\r\n");
    REQUIRE(table.pulses.size() == 1);
    CHECK(table.pulses[0].frequency == 900.5);
}

TEST_CASE("pulse loading reports the offending line") {
    const std::string bad_frequency =
        "toa,frequency\n"
        "0.001,1000.0\n"
        "0.002,not-a-number\n";
    const std::string msg =
        message_of([&] { pulses_from(bad_frequency); });
    CHECK(msg.find("line 3") != std::string::npos);

    CHECK_THROWS_AS(pulses_from("time,frequency\n1,2\n"), std::runtime_error);
    CHECK_THROWS_AS(pulses_from("toa,freq\n1,2\n"), std::runtime_error);
    CHECK_THROWS_AS(pulses_from("toa,frequency\n-0.5,900.0\n"), std::runtime_error);
    CHECK_THROWS_AS(pulses_from("toa,frequency,pw\n0.1,900.0\n"), std::runtime_error);
    CHECK_THROWS_AS(pulses_from("toa,frequency\n0.1,1e99999\n"), std::runtime_error);
}

TEST_CASE("frequency clustering separates distant bands") {
    const PulseTable table =
        table_of_frequencies({1000.00, 1200.01, 1000.02, 1200.0, 1000.04});
    const ClusterResult result = cluster_frequencies(table, {});
    CHECK(result.alphabet.labels.size() == 2);
    // Lower mean frequency takes symbol 0; assignments follow table order.
    CHECK(result.symbol_of_pulse == std::vector<int>{0, 1, 0, 1, 0});
    CHECK(result.alphabet.labels[0] != result.alphabet.labels[1]);
}

TEST_CASE("frequency clustering chains overlapping neighborhoods") {
    const ClusterResult chained = cluster_frequencies(
        table_of_frequencies({1000.00, 1000.04, 1000.08}), {});
    CHECK(chained.alphabet.labels.size() == 1);
    CHECK(chained.symbol_of_pulse == std::vector<int>{0, 0, 0});

    ClusteringConfig tight;
    tight.epsilon = 0.03;
    const ClusterResult split = cluster_frequencies(
        table_of_frequencies({1000.00, 1000.04, 1000.08}), tight);
    CHECK(split.alphabet.labels.size() == 3);
}

TEST_CASE("a single pulse forms a cluster labeled by its frequency") {
    const ClusterResult result = cluster_frequencies(table_of_frequencies({1200.5}), {});
    CHECK(result.alphabet.labels == std::vector<std::string>{"1200.5"});
    CHECK(result.symbol_of_pulse == std::vector<int>{0});
}

TEST_CASE("with no dense point every pulse is promoted") {
    ClusteringConfig strict;
    strict.min_points = 10;
    const ClusterResult result =
        cluster_frequencies(table_of_frequencies({1000.0, 1200.0, 1000.01}), strict);
    CHECK(result.alphabet.labels.size() == 2);
}

TEST_CASE("widening the radius never creates more clusters") {
    const PulseTable table =
        table_of_frequencies({1000.0, 1000.03, 1000.2, 1000.22, 1001.0, 1003.5});
    std::size_t previous = table.pulses.size() + 1;
    for (const double eps : {0.01, 0.05, 0.3, 1.0, 5.0}) {
        ClusteringConfig config;
        config.epsilon = eps;
        const auto result = cluster_frequencies(table, config);
        CHECK(result.alphabet.labels.size() <= previous);
        previous = result.alphabet.labels.size();
    }
    CHECK(previous == 1);
}

TEST_CASE("frequency clustering validates its inputs") {
    CHECK_THROWS_AS(cluster_frequencies(PulseTable{}, {}), std::invalid_argument);
    ClusteringConfig bad_eps;
    bad_eps.epsilon = 0.0;
    CHECK_THROWS_AS(cluster_frequencies(table_of_frequencies({1.0}), bad_eps),
                    std::invalid_argument);
    ClusteringConfig bad_density;
    bad_density.min_points = 0;
    CHECK_THROWS_AS(cluster_frequencies(table_of_frequencies({1.0}), bad_density),
                    std::invalid_argument);
}

TEST_CASE("time discretization rounds half to even and rebases") {
    PulseTable table;
    table.pulses = {{0.0, 1.0, {}}, {1e-3, 1.0, {}}, {2.5e-3, 1.0, {}}};
    const ObservedSequence ticks = discretize_times(table, {0, 0, 0}, 1, 1e-3);
    REQUIRE(ticks.events.size() == 3);
    CHECK(ticks.events[0].time == 0);
    CHECK(ticks.events[1].time == 1);
    CHECK(ticks.events[2].time == 2);
    CHECK(ticks.alphabet_size == 1);
    CHECK(ticks.horizon == 2);

    PulseTable offset;
    offset.pulses = {{5.0, 1.0, {}}, {6.0, 2.0, {}}};
    const ObservedSequence rebased = discretize_times(offset, {0, 1}, 2, 1e-3);
    CHECK(rebased.events[0].time == 0);
    CHECK(rebased.events[1].time == 1000);
}

TEST_CASE("time discretization keeps same-tick collisions") {
    PulseTable table;
    table.pulses = {{1.0001, 1.0, {}}, {1.00012, 2.0, {}}};
    const ObservedSequence seq = discretize_times(table, {0, 1}, 2, 1e-3);
    REQUIRE(seq.events.size() == 2);
    CHECK(seq.events[0].time == 0);
    CHECK(seq.events[1].time == 0);
    CHECK(seq.events[0].symbol != seq.events[1].symbol);
}

TEST_CASE("time discretization validates its inputs") {
    PulseTable table;
    table.pulses = {{0.1, 1.0, {}}};
    CHECK_THROWS_AS(discretize_times(table, {0}, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(discretize_times(table, {0, 1}, 2, 1e-3), std::invalid_argument);
}

TEST_CASE("sequence CSV round trip preserves labels, times and truth") {
    const Scenario scenario = random_scenario(3, 40, 1);  // all three symbols occur
    const Alphabet alphabet = Alphabet::with_default_labels(3);

    std::ostringstream out;
    write_sequence_csv(out, scenario.sequence, alphabet, &scenario.truth_labels);
    const std::string text = out.str();
    CHECK(text.rfind("time,symbol,emitter\n", 0) == 0);

    std::istringstream in(text);
    const LoadedSequence loaded = read_sequence_csv(in);
    REQUIRE(loaded.sequence.events.size() == scenario.sequence.events.size());
    CHECK(loaded.truth_labels == scenario.truth_labels);
    CHECK(loaded.sequence.alphabet_size == 3);
    for (std::size_t i = 0; i < loaded.sequence.events.size(); ++i) {
        const Event& original = scenario.sequence.events[i];
        const Event& copy = loaded.sequence.events[i];
        CHECK(copy.time == original.time);
        CHECK(loaded.alphabet.labels[static_cast<std::size_t>(copy.symbol)] ==
              alphabet.labels[static_cast<std::size_t>(original.symbol)]);
    }
}

TEST_CASE("sequence CSV without a truth column") {
    const Scenario scenario = random_scenario(2, 10, 4);
    const Alphabet alphabet = Alphabet::with_default_labels(2);
    std::ostringstream out;
    write_sequence_csv(out, scenario.sequence, alphabet);
    CHECK(out.str().rfind("time,symbol\n", 0) == 0);

    std::istringstream in(out.str());
    const LoadedSequence loaded = read_sequence_csv(in);
    CHECK(loaded.truth_labels.empty());
    CHECK(loaded.sequence.events.size() == 10);
}

TEST_CASE("sequence CSV writer validates the truth column length") {
    const Scenario scenario = random_scenario(2, 10, 4);
    const Alphabet alphabet = Alphabet::with_default_labels(2);
    const std::vector<int> short_truth(3, 0);
    std::ostringstream out;
    CHECK_THROWS_AS(write_sequence_csv(out, scenario.sequence, alphabet, &short_truth),
                    std::invalid_argument);
}

TEST_CASE("sequence CSV reader flags malformed input") {
    const auto read = [](const std::string& text) {
        std::istringstream in(text);
        return read_sequence_csv(in);
    };
    CHECK_THROWS_AS(read("when,symbol\n0,a\n"), std::runtime_error);
    CHECK_THROWS_AS(read("time,symbol,origin\n0,a,0\n"), std::runtime_error);
    const std::string msg = message_of([&] { read("time,symbol\n0,a\nx,b\n"); });
    CHECK(msg.find("line 3") != std::string::npos);

    const LoadedSequence tolerant = read("time,symbol\r\n0,a\r\n\n4,b\r\n");
    CHECK(tolerant.sequence.events.size() == 2);  // blank line skipped
    CHECK(tolerant.alphabet.labels == std::vector<std::string>{"a", "b"});
}

TEST_CASE("partition JSON round trip") {
    const Alphabet alphabet = Alphabet::with_default_labels(3);
    const Partition part = canonical_partition({0, 1, 0});
    const nlohmann::json doc = partition_to_json(part, alphabet);
    CHECK(doc.at("assignment") == nlohmann::json({0, 1, 0}));
    CHECK(doc.at("labels") == nlohmann::json({"a", "b", "c"}));

    Alphabet decoded_alphabet;
    const Partition decoded = partition_from_json(doc, &decoded_alphabet);
    CHECK(decoded == part);
    CHECK(decoded_alphabet.labels == alphabet.labels);
}

TEST_CASE("partition JSON applies canonical relabeling and defaults") {
    const Partition decoded = partition_from_json({{"assignment", {2, 0, 2}}});
    CHECK(decoded.assignment == std::vector<int>{0, 1, 0});

    Alphabet defaulted;
    partition_from_json({{"assignment", {0, 1}}}, &defaulted);
    CHECK(defaulted.labels == std::vector<std::string>{"a", "b"});

    CHECK_THROWS_AS(partition_from_json(nlohmann::json::object()), std::runtime_error);
    Alphabet sink;
    CHECK_THROWS_AS(
        partition_from_json({{"assignment", {0, 1}}, {"labels", {"x"}}}, &sink),
        std::runtime_error);
}

TEST_CASE("model JSON round trip is exact") {
    std::mt19937_64 rng(2024);
    const Alphabet alphabet = Alphabet::with_default_labels(4);
    const GenerativeModel model = sample_model(alphabet, rng);

    const GenerativeModel copy = model_from_json(model_to_json(model));
    CHECK(copy.alphabet.labels == model.alphabet.labels);
    CHECK(copy.partition == model.partition);
    CHECK(copy.initial_symbols == model.initial_symbols);
    REQUIRE(copy.emitters.size() == model.emitters.size());
    for (std::size_t e = 0; e < copy.emitters.size(); ++e) {
        CHECK(copy.emitters[e].symbols == model.emitters[e].symbols);
        CHECK(copy.emitters[e].transition == model.emitters[e].transition);
        REQUIRE(copy.emitters[e].sojourn.size() == model.emitters[e].sojourn.size());
        for (std::size_t i = 0; i < copy.emitters[e].sojourn.size(); ++i) {
            CHECK(copy.emitters[e].sojourn[i].support ==
                  model.emitters[e].sojourn[i].support);
            CHECK(copy.emitters[e].sojourn[i].prob == model.emitters[e].sojourn[i].prob);
        }
    }
    CHECK(validate_model(copy).empty());
}

TEST_CASE("score JSON tags infinities and keeps finite numbers numeric") {
    ObservedSequence clash;
    clash.events = {{0, 2}, {1, 2}};
    clash.alphabet_size = 2;
    clash.horizon = 2;
    const ScoreResult bad = partition_score(clash, canonical_partition({0, 0}), 1.0);
    const nlohmann::json tagged = score_to_json(bad);
    CHECK(tagged.at("total") == "+inf");
    CHECK(tagged.at("compatible") == false);
    bool saw_infinite_group = false;
    for (const auto& entry : tagged.at("per_group"))
        if (entry.is_string() && entry == "+inf") saw_infinite_group = true;
    CHECK(saw_infinite_group);

    const ScoreResult good = partition_score(clash, canonical_partition({0, 1}), 1.0);
    const nlohmann::json plain = score_to_json(good);
    CHECK(plain.at("total").is_number());
    CHECK(plain.at("total").get<double>() == doctest::Approx(good.total));
    CHECK(plain.at("gamma") == 1.0);
    CHECK(plain.at("m") == 2);
    CHECK(plain.at("n") == 2);
    CHECK(plain.contains("h_z"));
    CHECK(plain.contains("h_x"));
    CHECK(plain.contains("penalty"));
}

TEST_CASE("search report JSON carries the partition and trajectory") {
    const Scenario scenario = random_scenario(3, 120, 31);
    const SearchReport report = exhaustive_search(scenario.sequence, 0.0);
    const nlohmann::json doc = report_to_json(report, Alphabet::with_default_labels(3));
    CHECK(doc.at("best_partition").contains("assignment"));
    CHECK(doc.at("best_score").contains("total"));
    CHECK(doc.at("evaluations").get<std::uint64_t>() == report.evaluations);
    CHECK(doc.at("generations") == report.generations);
    REQUIRE(doc.at("trajectory").size() == report.trajectory.size());
    CHECK(doc.at("trajectory")[0].get<double>() ==
          doctest::Approx(report.trajectory[0]));
}

TEST_CASE("consistency CSV bytes are stable") {
    std::vector<ConsistencyCell> cells;
    cells.push_back({3, 500, 0.95, 200});
    cells.push_back({5, 1000, 1.0, 200});
    std::ostringstream out;
    write_consistency_csv(out, cells);
    CHECK(out.str() ==
          "alphabet_size,n,success_rate,scenarios\n"
          "3,500,0.95,200\n"
          "5,1000,1,200\n");
}

TEST_CASE("benchmark CSV lists one row per record") {
    std::vector<BenchmarkRecord> records;
    records.push_back({0, Method::teds, 1.0, 0.5, 42});
    records.push_back({1, Method::exhaustive, 0.75, 1.25, 7});
    std::ostringstream out;
    write_benchmark_csv(out, records);
    const std::string text = out.str();
    CHECK(text.rfind("scenario_id,method,v_measure,seconds,evaluations\n", 0) == 0);
    CHECK(text.find("0,teds,1,0.5,42\n") != std::string::npos);
    CHECK(text.find("1,exhaustive,0.75,1.25,7\n") != std::string::npos);
}
