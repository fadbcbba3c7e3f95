#include "deint/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace deint {
namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what +
                                 " value '" + text + "'");
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size() || !std::isfinite(value))
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what +
                                 " value '" + text + "'");
    return value;
}

std::string format_frequency(double mean) {
    std::ostringstream out;
    out.precision(10);
    out << mean;
    return out.str();
}

}  // namespace

PulseTable load_pulses(std::istream& in) {
    PulseTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("line 1: missing header row 'toa,frequency[,...]'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_row(line);
    if (header.size() < 2 || header[0] != "toa" || header[1] != "frequency")
        throw std::runtime_error("line 1: header must start with 'toa,frequency'");
    table.extra_headers.assign(header.begin() + 2, header.end());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != header.size())
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        PulseRecord rec;
        rec.toa = parse_double(fields[0], line_no, "toa");
        rec.frequency = parse_double(fields[1], line_no, "frequency");
        if (rec.toa < 0.0)
            throw std::runtime_error("line " + std::to_string(line_no) + ": negative toa");
        rec.extra.assign(fields.begin() + 2, fields.end());
        table.pulses.push_back(std::move(rec));
    }
    std::stable_sort(table.pulses.begin(), table.pulses.end(),
                     [](const PulseRecord& a, const PulseRecord& b) { return a.toa < b.toa; });
    return table;
}

ClusterResult cluster_frequencies(const PulseTable& table, const ClusteringConfig& config) {
    if (table.pulses.empty()) throw std::invalid_argument("no pulses to cluster");
    if (config.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (config.min_points < 1) throw std::invalid_argument("min_points must be at least 1");

    const std::size_t n = table.pulses.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.pulses[a].frequency < table.pulses[b].frequency;
    });
    std::vector<double> freq(n);
    for (std::size_t r = 0; r < n; ++r) freq[r] = table.pulses[order[r]].frequency;

    // Core test by sliding window: neighbors within epsilon on the sorted axis.
    std::vector<char> core(n, 0);
    std::size_t any_core = 0;
    for (std::size_t r = 0, lo = 0, hi = 0; r < n; ++r) {
        while (freq[r] - freq[lo] > config.epsilon) ++lo;
        if (hi < r + 1) hi = r + 1;
        while (hi < n && freq[hi] - freq[r] <= config.epsilon) ++hi;
        if (hi - lo >= static_cast<std::size_t>(config.min_points)) {
            core[r] = 1;
            ++any_core;
        }
    }
    // Degenerate density threshold: with no cores at all there would be no
    // clusters to attach to, so every point is promoted.
    if (any_core == 0) std::fill(core.begin(), core.end(), 1);

    // Chain cores whose gap fits within epsilon.
    std::vector<int> cluster_of_rank(n, -1);
    int clusters = 0;
    double prev_core_freq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        if (!core[r]) continue;
        if (cluster_of_rank[r] == -1) {
            if (clusters == 0 || freq[r] - prev_core_freq > config.epsilon) ++clusters;
            cluster_of_rank[r] = clusters - 1;
        }
        prev_core_freq = freq[r];
    }
    // Everything else joins its nearest core's cluster (lower frequency on ties).
    std::vector<std::size_t> core_ranks;
    for (std::size_t r = 0; r < n; ++r)
        if (core[r]) core_ranks.push_back(r);
    for (std::size_t r = 0; r < n; ++r) {
        if (core[r]) continue;
        const auto it = std::lower_bound(core_ranks.begin(), core_ranks.end(), r);
        std::size_t best = it == core_ranks.end() ? *(it - 1) : *it;
        if (it != core_ranks.begin()) {
            const std::size_t left = *(it - 1);
            if (it == core_ranks.end() || freq[r] - freq[left] <= freq[best] - freq[r])
                best = left;
        }
        cluster_of_rank[r] = cluster_of_rank[best];
    }

    // Label clusters by mean frequency, in ascending order.
    std::vector<double> sums(static_cast<std::size_t>(clusters), 0.0);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(clusters), 0);
    for (std::size_t r = 0; r < n; ++r) {
        sums[static_cast<std::size_t>(cluster_of_rank[r])] += freq[r];
        ++sizes[static_cast<std::size_t>(cluster_of_rank[r])];
    }
    ClusterResult result;
    for (int c = 0; c < clusters; ++c)
        result.alphabet.labels.push_back(format_frequency(
            sums[static_cast<std::size_t>(c)] / static_cast<double>(sizes[static_cast<std::size_t>(c)])));
    result.symbol_of_pulse.assign(n, -1);
    for (std::size_t r = 0; r < n; ++r)
        result.symbol_of_pulse[order[r]] = cluster_of_rank[r];
    return result;
}

ObservedSequence discretize_times(const PulseTable& table, const std::vector<int>& symbols,
                                  int alphabet_size, double lsb) {
    if (lsb <= 0.0) throw std::invalid_argument("lsb must be positive");
    if (symbols.size() != table.pulses.size())
        throw std::invalid_argument("symbol assignment does not cover the pulses");

    ObservedSequence seq;
    seq.alphabet_size = alphabet_size;
    seq.events.reserve(table.pulses.size());
    for (std::size_t i = 0; i < table.pulses.size(); ++i) {
        const auto tick = static_cast<std::int64_t>(std::nearbyint(table.pulses[i].toa / lsb));
        seq.events.push_back({symbols[i], tick});
    }
    if (seq.events.empty()) return seq;

    std::stable_sort(seq.events.begin(), seq.events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    const std::int64_t base = seq.events.front().time;
    for (auto& ev : seq.events) ev.time -= base;
    seq.horizon = seq.events.back().time;
    return seq;
}

}  // namespace deint
