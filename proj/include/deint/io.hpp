#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "deint/core.hpp"
#include "deint/eval.hpp"
#include "deint/model.hpp"
#include "deint/scoring.hpp"
#include "deint/search.hpp"

namespace deint {

/// `time,symbol[,emitter]` rows; symbols written as alphabet labels.
void write_sequence_csv(std::ostream& out, const ObservedSequence& seq,
                        const Alphabet& alphabet,
                        const std::vector<int>* truth_labels = nullptr);

struct LoadedSequence {
    ObservedSequence sequence;
    Alphabet alphabet;  // labels in order of first appearance
    std::vector<int> truth_labels;  // empty when the column is absent
};

LoadedSequence read_sequence_csv(std::istream& in);

nlohmann::json partition_to_json(const Partition& part, const Alphabet& alphabet);
Partition partition_from_json(const nlohmann::json& doc, Alphabet* alphabet = nullptr);

nlohmann::json model_to_json(const GenerativeModel& model);
GenerativeModel model_from_json(const nlohmann::json& doc);

/// Infinite totals are encoded as the string "+inf" (JSON has no infinity).
nlohmann::json score_to_json(const ScoreResult& score);

nlohmann::json report_to_json(const SearchReport& report, const Alphabet& alphabet);

void write_consistency_csv(std::ostream& out, const std::vector<ConsistencyCell>& cells);
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);

}  // namespace deint
