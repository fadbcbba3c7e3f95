#include "deint/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deint/core.hpp"
#include "deint/eval.hpp"
#include "deint/fsm.hpp"
#include "deint/ingest.hpp"
#include "deint/io.hpp"
#include "deint/model.hpp"
#include "deint/scoring.hpp"
#include "deint/search.hpp"

namespace deint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        json doc;
        in >> doc;
        return doc;
    } catch (const json::parse_error& err) {
        throw IoError("bad JSON in " + path.string() + ": " + err.what());
    }
}

void ensure_out_dir(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed while writing " + path.string());
}

void emit_json(const json& doc, const std::optional<fs::path>& out_dir,
               const std::string& filename) {
    if (out_dir) {
        ensure_out_dir(*out_dir);
        write_file(*out_dir / filename, doc.dump(2) + "\n");
    } else {
        std::cout << doc.dump(2) << '\n';
    }
}

/// Flags that were not passed explicitly fall back to the config file.
class ConfigLayer {
  public:
    ConfigLayer(CLI::App* cmd, const std::string& config_path) : cmd_(cmd) {
        if (!config_path.empty()) doc_ = load_json_file(config_path);
    }

    template <typename T>
    void fill(const std::string& flag, T& value) const {
        if (cmd_->count("--" + flag) > 0) return;
        if (!doc_.contains(flag)) return;
        try {
            doc_.at(flag).get_to(value);
        } catch (const json::exception&) {
            throw UsageError("config value for '" + flag + "' has the wrong type");
        }
    }

  private:
    CLI::App* cmd_;
    json doc_ = json::object();
};

LoadedSequence load_sequence_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return read_sequence_csv(in);
    } catch (const std::runtime_error& err) {
        throw IoError(path.string() + ": " + err.what());
    }
}

PulseTable load_pulse_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return load_pulses(in);
    } catch (const std::runtime_error& err) {
        throw IoError(path.string() + ": " + err.what());
    }
}

/// Re-index a partition read from disk onto the sequence's alphabet.
Partition align_partition(const Partition& part, const Alphabet& part_alphabet,
                          const Alphabet& seq_alphabet) {
    std::map<std::string, int> group_of_label;
    for (std::size_t i = 0; i < part_alphabet.labels.size(); ++i)
        group_of_label[part_alphabet.labels[i]] = part.assignment[i];
    std::vector<int> assignment;
    assignment.reserve(seq_alphabet.labels.size());
    for (const auto& label : seq_alphabet.labels) {
        const auto it = group_of_label.find(label);
        if (it == group_of_label.end())
            throw IoError("partition does not cover symbol '" + label + "'");
        assignment.push_back(it->second);
    }
    return canonical_partition(assignment);
}

void check_alphabet_size(int alphabet) {
    if (alphabet < 1 || alphabet > kMaxAlphabet)
        throw UsageError("--alphabet must be in 1.." + std::to_string(kMaxAlphabet));
}

struct GenerateOpts {
    int alphabet = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string config;
};

void run_generate(CLI::App* cmd, GenerateOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("alphabet", opt.alphabet);
    cfg.fill("n", opt.n);
    cfg.fill("seed", opt.seed);
    cfg.fill("out", opt.out);
    check_alphabet_size(opt.alphabet);
    if (opt.n < 1) throw UsageError("--n must be at least 1");
    if (opt.out.empty()) throw UsageError("--out is required");

    const Scenario scenario = random_scenario(opt.alphabet, opt.n, opt.seed);
    const fs::path out(opt.out);
    ensure_out_dir(out);

    std::ostringstream csv;
    write_sequence_csv(csv, scenario.sequence, scenario.model.alphabet,
                       &scenario.truth_labels);
    write_file(out / "sequence.csv", csv.str());
    write_file(out / "model.json", model_to_json(scenario.model).dump(2) + "\n");
    write_file(out / "partition.json",
               partition_to_json(scenario.model.partition, scenario.model.alphabet).dump(2) +
                   "\n");
    const json run{{"command", "generate"},
                   {"alphabet", opt.alphabet},
                   {"n", opt.n},
                   {"seed", opt.seed}};
    write_file(out / "run_config.json", run.dump(2) + "\n");
}

struct IngestOpts {
    std::string pulses;
    double epsilon = 0.05;
    int min_points = 1;
    double lsb = 1e-6;
    std::string out;
    std::string config;
};

void run_ingest(CLI::App* cmd, IngestOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("pulses", opt.pulses);
    cfg.fill("epsilon", opt.epsilon);
    cfg.fill("min-points", opt.min_points);
    cfg.fill("lsb", opt.lsb);
    cfg.fill("out", opt.out);
    if (opt.pulses.empty()) throw UsageError("--pulses is required");
    if (opt.epsilon <= 0.0) throw UsageError("--epsilon must be positive");
    if (opt.min_points < 1) throw UsageError("--min-points must be at least 1");
    if (opt.lsb <= 0.0) throw UsageError("--lsb must be positive");
    if (opt.out.empty()) throw UsageError("--out is required");

    const PulseTable table = load_pulse_file(opt.pulses);
    if (table.pulses.empty()) throw IoError(opt.pulses + ": no pulses found");
    const ClusteringConfig ccfg{opt.epsilon, opt.min_points, opt.lsb};
    const ClusterResult clusters = cluster_frequencies(table, ccfg);
    const ObservedSequence seq = discretize_times(table, clusters.symbol_of_pulse,
                                                  clusters.alphabet.size(), opt.lsb);

    const fs::path out(opt.out);
    ensure_out_dir(out);
    std::ostringstream csv;
    write_sequence_csv(csv, seq, clusters.alphabet);
    write_file(out / "sequence.csv", csv.str());
    const json run{{"command", "ingest"},     {"pulses", opt.pulses},
                   {"epsilon", opt.epsilon},  {"min-points", opt.min_points},
                   {"lsb", opt.lsb},          {"symbols", clusters.alphabet.size()}};
    write_file(out / "run_config.json", run.dump(2) + "\n");
}

struct ScoreOpts {
    std::string input;
    std::string partition;
    double gamma = 0.0;
    std::string out;
    std::string config;
};

void run_score(CLI::App* cmd, ScoreOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("input", opt.input);
    cfg.fill("partition", opt.partition);
    cfg.fill("gamma", opt.gamma);
    cfg.fill("out", opt.out);
    if (opt.input.empty()) throw UsageError("--input is required");
    if (opt.partition.empty()) throw UsageError("--partition is required");
    if (opt.gamma < 0.0) throw UsageError("--gamma must be non-negative");

    const LoadedSequence loaded = load_sequence_file(opt.input);
    Alphabet part_alphabet;
    Partition part;
    try {
        part = partition_from_json(load_json_file(opt.partition), &part_alphabet);
    } catch (const std::runtime_error& err) {
        throw IoError(opt.partition + ": " + err.what());
    }
    const Partition aligned = align_partition(part, part_alphabet, loaded.alphabet);
    const ScoreResult score = partition_score(loaded.sequence, aligned, opt.gamma);

    json doc = score_to_json(score);
    doc["run_config"] = json{{"command", "score"},
                             {"input", opt.input},
                             {"partition", opt.partition},
                             {"gamma", opt.gamma}};
    emit_json(doc, opt.out.empty() ? std::nullopt : std::optional<fs::path>(opt.out),
              "score.json");
}

struct DeinterleaveOpts {
    std::string input;
    std::string pulses;
    double epsilon = 0.05;
    int min_points = 1;
    double lsb = 1e-6;
    std::string method = "teds";
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int nb_iter = 50;
    double alpha = 0.6;
    int max_generations = 200;
    double time_budget = 0.0;  // 0 = unset
    int cap = 12;
    bool no_aspiration = false;
    std::string out;
    std::string config;
};

void run_deinterleave(CLI::App* cmd, DeinterleaveOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("input", opt.input);
    cfg.fill("pulses", opt.pulses);
    cfg.fill("epsilon", opt.epsilon);
    cfg.fill("min-points", opt.min_points);
    cfg.fill("lsb", opt.lsb);
    cfg.fill("method", opt.method);
    cfg.fill("gamma", opt.gamma);
    cfg.fill("seed", opt.seed);
    cfg.fill("nb-iter", opt.nb_iter);
    cfg.fill("alpha", opt.alpha);
    cfg.fill("max-generations", opt.max_generations);
    cfg.fill("time-budget", opt.time_budget);
    cfg.fill("cap", opt.cap);
    cfg.fill("out", opt.out);
    if (opt.input.empty() == opt.pulses.empty())
        throw UsageError("pass exactly one of --input (sequence CSV) or --pulses (PDW CSV)");
    if (opt.method != "teds" && opt.method != "exhaustive")
        throw UsageError("--method must be 'teds' or 'exhaustive'");
    if (opt.gamma < 0.0) throw UsageError("--gamma must be non-negative");
    if (opt.nb_iter < 1) throw UsageError("--nb-iter must be at least 1");
    if (opt.alpha < 0.0) throw UsageError("--alpha must be non-negative");
    if (opt.max_generations < 1) throw UsageError("--max-generations must be at least 1");

    LoadedSequence loaded;
    if (!opt.input.empty()) {
        loaded = load_sequence_file(opt.input);
    } else {
        const PulseTable table = load_pulse_file(opt.pulses);
        if (table.pulses.empty()) throw IoError(opt.pulses + ": no pulses found");
        const ClusteringConfig ccfg{opt.epsilon, opt.min_points, opt.lsb};
        const ClusterResult clusters = cluster_frequencies(table, ccfg);
        loaded.sequence = discretize_times(table, clusters.symbol_of_pulse,
                                           clusters.alphabet.size(), opt.lsb);
        loaded.alphabet = clusters.alphabet;
    }
    if (loaded.sequence.alphabet_size > kMaxAlphabet)
        throw UsageError("alphabet exceeds the supported maximum of " +
                         std::to_string(kMaxAlphabet));
    if (opt.method == "exhaustive" && loaded.sequence.alphabet_size > opt.cap)
        throw UsageError("alphabet of " + std::to_string(loaded.sequence.alphabet_size) +
                         " symbols exceeds the exhaustive cap of " + std::to_string(opt.cap) +
                         "; rerun with --method teds");

    SearchConfig search;
    search.gamma = opt.gamma;
    search.nb_iter = opt.nb_iter;
    search.alpha = opt.alpha;
    search.max_generations = opt.max_generations;
    if (opt.time_budget > 0.0) search.time_budget_seconds = opt.time_budget;
    search.seed = opt.seed;
    search.aspiration = !opt.no_aspiration;
    search.exhaustive_cap = opt.cap;

    const SearchReport report = opt.method == "exhaustive"
                                    ? exhaustive_search(loaded.sequence, opt.gamma, opt.cap)
                                    : teds(loaded.sequence, search);

    json doc = report_to_json(report, loaded.alphabet);
    doc["run_config"] = json{{"command", "deinterleave"},
                             {"method", opt.method},
                             {"gamma", opt.gamma},
                             {"seed", opt.seed},
                             {"nb-iter", opt.nb_iter},
                             {"alpha", opt.alpha},
                             {"max-generations", opt.max_generations},
                             {"cap", opt.cap}};
    if (opt.out.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        const fs::path out(opt.out);
        ensure_out_dir(out);
        write_file(out / "report.json", doc.dump(2) + "\n");
        write_file(out / "partition.json",
                   partition_to_json(report.best_partition, loaded.alphabet).dump(2) + "\n");
    }
}

struct ExperimentOpts {
    std::string mode = "consistency";
    std::vector<int> alphabets;
    std::vector<std::size_t> lengths;
    int alphabet = 5;
    std::size_t n = 1000;
    int scenarios = 100;
    std::string method = "teds";
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int nb_iter = 50;
    double alpha = 0.6;
    int max_generations = 200;
    int cap = 12;
    bool event_weighted = false;
    std::string out;
    std::string config;
};

void run_experiment(CLI::App* cmd, ExperimentOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("mode", opt.mode);
    cfg.fill("alphabets", opt.alphabets);
    cfg.fill("lengths", opt.lengths);
    cfg.fill("alphabet", opt.alphabet);
    cfg.fill("n", opt.n);
    cfg.fill("scenarios", opt.scenarios);
    cfg.fill("method", opt.method);
    cfg.fill("gamma", opt.gamma);
    cfg.fill("seed", opt.seed);
    cfg.fill("nb-iter", opt.nb_iter);
    cfg.fill("alpha", opt.alpha);
    cfg.fill("max-generations", opt.max_generations);
    cfg.fill("cap", opt.cap);
    cfg.fill("event-weighted", opt.event_weighted);
    cfg.fill("out", opt.out);
    if (opt.scenarios < 1) throw UsageError("--scenarios must be at least 1");
    if (opt.gamma < 0.0) throw UsageError("--gamma must be non-negative");
    if (opt.out.empty()) throw UsageError("--out is required");
    const fs::path out(opt.out);

    if (opt.mode == "consistency") {
        if (opt.alphabets.empty() || opt.lengths.empty())
            throw UsageError("consistency mode needs --alphabets and --lengths");
        for (const int a : opt.alphabets) {
            check_alphabet_size(a);
            if (a > opt.cap)
                throw UsageError("alphabet " + std::to_string(a) +
                                 " exceeds the exhaustive cap of " + std::to_string(opt.cap) +
                                 "; consistency runs are exhaustive only");
        }
        for (const std::size_t n : opt.lengths)
            if (n < 1) throw UsageError("--lengths entries must be at least 1");

        ExperimentGrid grid;
        grid.alphabet_sizes = opt.alphabets;
        grid.sequence_lengths = opt.lengths;
        grid.scenarios_per_cell = opt.scenarios;
        grid.gamma = opt.gamma;
        grid.seed = opt.seed;
        const auto cells = consistency_experiment(grid);

        ensure_out_dir(out);
        std::ostringstream csv;
        write_consistency_csv(csv, cells);
        write_file(out / "consistency.csv", csv.str());
        const json run{{"command", "experiment"}, {"mode", "consistency"},
                       {"alphabets", opt.alphabets}, {"lengths", opt.lengths},
                       {"scenarios", opt.scenarios}, {"gamma", opt.gamma},
                       {"seed", opt.seed}};
        write_file(out / "run_config.json", run.dump(2) + "\n");
        return;
    }
    if (opt.mode != "benchmark")
        throw UsageError("--mode must be 'consistency' or 'benchmark'");

    check_alphabet_size(opt.alphabet);
    if (opt.n < 1) throw UsageError("--n must be at least 1");
    if (opt.method != "teds" && opt.method != "exhaustive")
        throw UsageError("--method must be 'teds' or 'exhaustive'");
    if (opt.method == "exhaustive" && opt.alphabet > opt.cap)
        throw UsageError("alphabet exceeds the exhaustive cap; use --method teds");

    std::vector<Scenario> scenarios;
    scenarios.reserve(static_cast<std::size_t>(opt.scenarios));
    for (int i = 0; i < opt.scenarios; ++i)
        scenarios.push_back(random_scenario(
            opt.alphabet, opt.n,
            derive_seed(opt.seed, static_cast<std::uint64_t>(opt.alphabet), opt.n,
                        static_cast<std::uint64_t>(i))));

    SearchConfig search;
    search.gamma = opt.gamma;
    search.nb_iter = opt.nb_iter;
    search.alpha = opt.alpha;
    search.max_generations = opt.max_generations;
    search.seed = opt.seed;
    search.exhaustive_cap = opt.cap;
    const auto records =
        benchmark_run(scenarios, opt.method == "teds" ? Method::teds : Method::exhaustive,
                      search, opt.event_weighted);

    ensure_out_dir(out);
    std::ostringstream csv;
    write_benchmark_csv(csv, records);
    write_file(out / "benchmark.csv", csv.str());
    const json run{{"command", "experiment"}, {"mode", "benchmark"},
                   {"alphabet", opt.alphabet}, {"n", opt.n},
                   {"scenarios", opt.scenarios}, {"method", opt.method},
                   {"gamma", opt.gamma},        {"seed", opt.seed},
                   {"event-weighted", opt.event_weighted}};
    write_file(out / "run_config.json", run.dump(2) + "\n");
}

struct FsmCheckOpts {
    std::string model;
    std::string out;
    std::string config;
};

void run_fsm_check(CLI::App* cmd, FsmCheckOpts& opt) {
    const ConfigLayer cfg(cmd, opt.config);
    cfg.fill("model", opt.model);
    cfg.fill("out", opt.out);
    if (opt.model.empty()) throw UsageError("--model is required");

    GenerativeModel model;
    try {
        model = model_from_json(load_json_file(opt.model));
    } catch (const json::exception& err) {
        throw IoError(opt.model + ": " + err.what());
    }

    json violations = json::array();
    for (const auto& v : validate_model(model))
        violations.push_back(json{{"assumption", std::string(1, v.assumption)},
                                  {"detail", v.detail}});
    json emitters = json::array();
    for (std::size_t e = 0; e < model.emitters.size(); ++e) {
        const FsmSource fsm = build_fsm(model.emitters[e]);
        const ErgodicityReport report = check_ergodicity(fsm);
        emitters.push_back(json{{"emitter", e},
                                {"states", fsm.states().size()},
                                {"irreducible", report.irreducible},
                                {"aperiodic", report.aperiodic}});
    }
    const json doc{{"violations", violations}, {"emitters", emitters}};
    emit_json(doc, opt.out.empty() ? std::nullopt : std::optional<fs::path>(opt.out),
              "fsm_check.json");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"deinterleave independent symbol sources from a merged event stream"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* gen_cmd = app.add_subcommand("generate", "sample a model and emit a scenario");
    gen_cmd->add_option("--alphabet", gen.alphabet, "alphabet size");
    gen_cmd->add_option("--n", gen.n, "number of events");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--out", gen.out, "output directory");
    gen_cmd->add_option("--config", gen.config, "JSON config file (flags win)");
    gen_cmd->callback([&] { run_generate(gen_cmd, gen); });

    IngestOpts ing;
    auto* ing_cmd = app.add_subcommand("ingest", "turn a PDW CSV into a symbol sequence");
    ing_cmd->add_option("--pulses", ing.pulses, "PDW CSV file (toa,frequency[,...])");
    ing_cmd->add_option("--epsilon", ing.epsilon, "frequency cluster radius (MHz)");
    ing_cmd->add_option("--min-points", ing.min_points, "density threshold");
    ing_cmd->add_option("--lsb", ing.lsb, "time quantum (seconds)");
    ing_cmd->add_option("--out", ing.out, "output directory");
    ing_cmd->add_option("--config", ing.config, "JSON config file (flags win)");
    ing_cmd->callback([&] { run_ingest(ing_cmd, ing); });

    ScoreOpts sco;
    auto* sco_cmd = app.add_subcommand("score", "score one partition of a sequence");
    sco_cmd->add_option("--input", sco.input, "sequence CSV file");
    sco_cmd->add_option("--partition", sco.partition, "partition JSON file");
    sco_cmd->add_option("--gamma", sco.gamma, "penalty constant");
    sco_cmd->add_option("--out", sco.out, "output directory (default: stdout)");
    sco_cmd->add_option("--config", sco.config, "JSON config file (flags win)");
    sco_cmd->callback([&] { run_score(sco_cmd, sco); });

    DeinterleaveOpts dei;
    auto* dei_cmd = app.add_subcommand("deinterleave", "recover the emitter partition");
    dei_cmd->add_option("--input", dei.input, "sequence CSV file");
    dei_cmd->add_option("--pulses", dei.pulses, "PDW CSV file (ingest first)");
    dei_cmd->add_option("--epsilon", dei.epsilon, "frequency cluster radius (MHz)");
    dei_cmd->add_option("--min-points", dei.min_points, "density threshold");
    dei_cmd->add_option("--lsb", dei.lsb, "time quantum (seconds)");
    dei_cmd->add_option("--method", dei.method, "'teds' or 'exhaustive'");
    dei_cmd->add_option("--gamma", dei.gamma, "penalty constant");
    dei_cmd->add_option("--seed", dei.seed, "RNG seed");
    dei_cmd->add_option("--nb-iter", dei.nb_iter, "local-search iterations");
    dei_cmd->add_option("--alpha", dei.alpha, "tabu tenure coefficient");
    dei_cmd->add_option("--max-generations", dei.max_generations, "memetic generations");
    dei_cmd->add_option("--time-budget", dei.time_budget, "wall-clock cap in seconds");
    dei_cmd->add_option("--cap", dei.cap, "exhaustive alphabet cap");
    dei_cmd->add_flag("--no-aspiration", dei.no_aspiration, "disable the tabu override");
    dei_cmd->add_option("--out", dei.out, "output directory (default: stdout)");
    dei_cmd->add_option("--config", dei.config, "JSON config file (flags win)");
    dei_cmd->callback([&] { run_deinterleave(dei_cmd, dei); });

    ExperimentOpts exp;
    auto* exp_cmd = app.add_subcommand("experiment", "run a consistency or benchmark grid");
    exp_cmd->add_option("--mode", exp.mode, "'consistency' or 'benchmark'");
    exp_cmd->add_option("--alphabets", exp.alphabets, "alphabet sizes (consistency)")
        ->delimiter(',');
    exp_cmd->add_option("--lengths", exp.lengths, "sequence lengths (consistency)")
        ->delimiter(',');
    exp_cmd->add_option("--alphabet", exp.alphabet, "alphabet size (benchmark)");
    exp_cmd->add_option("--n", exp.n, "sequence length (benchmark)");
    exp_cmd->add_option("--scenarios", exp.scenarios, "scenarios per cell");
    exp_cmd->add_option("--method", exp.method, "'teds' or 'exhaustive' (benchmark)");
    exp_cmd->add_option("--gamma", exp.gamma, "penalty constant");
    exp_cmd->add_option("--seed", exp.seed, "RNG seed");
    exp_cmd->add_option("--nb-iter", exp.nb_iter, "local-search iterations");
    exp_cmd->add_option("--alpha", exp.alpha, "tabu tenure coefficient");
    exp_cmd->add_option("--max-generations", exp.max_generations, "memetic generations");
    exp_cmd->add_option("--cap", exp.cap, "exhaustive alphabet cap");
    exp_cmd->add_flag("--event-weighted", exp.event_weighted,
                      "weight V-measure by events instead of symbols");
    exp_cmd->add_option("--out", exp.out, "output directory");
    exp_cmd->add_option("--config", exp.config, "JSON config file (flags win)");
    exp_cmd->callback([&] { run_experiment(exp_cmd, exp); });

    FsmCheckOpts fsm;
    auto* fsm_cmd = app.add_subcommand("fsm-check", "validate a model and its state machines");
    fsm_cmd->add_option("--model", fsm.model, "model JSON file");
    fsm_cmd->add_option("--out", fsm.out, "output directory (default: stdout)");
    fsm_cmd->add_option("--config", fsm.config, "JSON config file (flags win)");
    fsm_cmd->callback([&] { run_fsm_check(fsm_cmd, fsm); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return 1;
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace deint
