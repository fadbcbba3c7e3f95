#include "deint/io.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace deint {
namespace {

using nlohmann::json;

json finite_or_tag(double value) {
    if (std::isinf(value)) return json(value > 0 ? "+inf" : "-inf");
    return json(value);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

void write_sequence_csv(std::ostream& out, const ObservedSequence& seq,
                        const Alphabet& alphabet, const std::vector<int>* truth_labels) {
    if (truth_labels && truth_labels->size() != seq.events.size())
        throw std::invalid_argument("truth labels do not cover the sequence");
    out << (truth_labels ? "time,symbol,emitter\n" : "time,symbol\n");
    for (std::size_t i = 0; i < seq.events.size(); ++i) {
        const auto& ev = seq.events[i];
        out << ev.time << ',' << alphabet.labels.at(static_cast<std::size_t>(ev.symbol));
        if (truth_labels) out << ',' << (*truth_labels)[i];
        out << '\n';
    }
}

LoadedSequence read_sequence_csv(std::istream& in) {
    LoadedSequence loaded;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("line 1: missing header row 'time,symbol[,emitter]'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_row(line);
    const bool with_truth = header.size() == 3 && header[2] == "emitter";
    if (!(header.size() == 2 || with_truth) || header[0] != "time" || header[1] != "symbol")
        throw std::runtime_error("line 1: header must be 'time,symbol[,emitter]'");

    std::map<std::string, int> index_of;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_row(line);
        if (fields.size() != header.size())
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields");
        Event ev;
        try {
            ev.time = std::stoll(fields[0]);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad time '" +
                                     fields[0] + "'");
        }
        const auto [it, inserted] =
            index_of.emplace(fields[1], static_cast<int>(loaded.alphabet.labels.size()));
        if (inserted) loaded.alphabet.labels.push_back(fields[1]);
        ev.symbol = it->second;
        loaded.sequence.events.push_back(ev);
        if (with_truth) {
            try {
                loaded.truth_labels.push_back(std::stoi(fields[2]));
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": bad emitter '" + fields[2] + "'");
            }
        }
    }
    loaded.sequence.alphabet_size = loaded.alphabet.size();
    loaded.sequence.horizon =
        loaded.sequence.events.empty() ? 0 : loaded.sequence.events.back().time;
    return loaded;
}

json partition_to_json(const Partition& part, const Alphabet& alphabet) {
    return json{{"assignment", part.assignment}, {"labels", alphabet.labels}};
}

Partition partition_from_json(const json& doc, Alphabet* alphabet) {
    if (!doc.contains("assignment"))
        throw std::runtime_error("partition document lacks 'assignment'");
    const auto assignment = doc.at("assignment").get<std::vector<int>>();
    if (alphabet) {
        alphabet->labels.clear();
        if (doc.contains("labels")) doc.at("labels").get_to(alphabet->labels);
        if (alphabet->labels.empty())
            *alphabet = Alphabet::with_default_labels(static_cast<int>(assignment.size()));
        if (alphabet->labels.size() != assignment.size())
            throw std::runtime_error("partition labels do not match its assignment");
    }
    return canonical_partition(assignment);
}

json model_to_json(const GenerativeModel& model) {
    json emitters = json::array();
    for (const auto& em : model.emitters) {
        json sojourn = json::array();
        for (const auto& soj : em.sojourn)
            sojourn.push_back(json{{"support", soj.support}, {"prob", soj.prob}});
        emitters.push_back(json{
            {"symbols", em.symbols}, {"transition", em.transition}, {"sojourn", sojourn}});
    }
    return json{{"alphabet", model.alphabet.labels},
                {"partition", partition_to_json(model.partition, model.alphabet)},
                {"initial_symbols", model.initial_symbols},
                {"emitters", emitters}};
}

GenerativeModel model_from_json(const json& doc) {
    GenerativeModel model;
    doc.at("alphabet").get_to(model.alphabet.labels);
    model.partition = partition_from_json(doc.at("partition"));
    doc.at("initial_symbols").get_to(model.initial_symbols);
    for (const auto& em_doc : doc.at("emitters")) {
        EmitterParams em;
        em_doc.at("symbols").get_to(em.symbols);
        em_doc.at("transition").get_to(em.transition);
        for (const auto& soj_doc : em_doc.at("sojourn")) {
            EmitterParams::Sojourn soj;
            soj_doc.at("support").get_to(soj.support);
            soj_doc.at("prob").get_to(soj.prob);
            em.sojourn.push_back(std::move(soj));
        }
        model.emitters.push_back(std::move(em));
    }
    return model;
}

json score_to_json(const ScoreResult& score) {
    json per_group = json::array();
    for (const double h : score.per_group) per_group.push_back(finite_or_tag(h));
    return json{{"total", finite_or_tag(score.total)},
                {"h_z", score.h_z},
                {"h_x", score.h_x},
                {"per_group", per_group},
                {"penalty", score.penalty},
                {"compatible", score.compatible},
                {"gamma", score.gamma},
                {"m", score.m},
                {"n", score.n}};
}

json report_to_json(const SearchReport& report, const Alphabet& alphabet) {
    json trajectory = json::array();
    for (const double total : report.trajectory) trajectory.push_back(finite_or_tag(total));
    return json{{"best_partition", partition_to_json(report.best_partition, alphabet)},
                {"best_score", score_to_json(report.best_score)},
                {"evaluations", report.evaluations},
                {"generations", report.generations},
                {"trajectory", trajectory}};
}

void write_consistency_csv(std::ostream& out, const std::vector<ConsistencyCell>& cells) {
    out << "alphabet_size,n,success_rate,scenarios\n";
    for (const auto& cell : cells)
        out << cell.alphabet_size << ',' << cell.n << ',' << cell.success_rate << ','
            << cell.scenarios << '\n';
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
    out << "scenario_id,method,v_measure,seconds,evaluations\n";
    for (const auto& rec : records)
        out << rec.scenario_id << ',' << method_name(rec.method) << ',' << rec.v_measure
            << ',' << rec.seconds << ',' << rec.evaluations << '\n';
}

}  // namespace deint
