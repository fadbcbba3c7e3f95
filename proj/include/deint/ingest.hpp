#pragma once

#include <istream>
#include <string>
#include <vector>

#include "deint/core.hpp"

namespace deint {

/// One received pulse: arrival time in seconds, carrier frequency in MHz,
/// plus any passthrough columns.
struct PulseRecord {
    double toa = 0.0;
    double frequency = 0.0;
    std::vector<std::string> extra;
};

struct PulseTable {
    std::vector<PulseRecord> pulses;         // sorted by toa
    std::vector<std::string> extra_headers;  // columns after toa,frequency
};

struct ClusteringConfig {
    double epsilon = 0.05;  // frequency radius, MHz
    int min_points = 1;     // density threshold
    double lsb = 1e-6;      // time quantum, seconds
};

/// Parses `toa,frequency[,...]` CSV; malformed rows fail with their line
/// number.  Records come back sorted by arrival time.
PulseTable load_pulses(std::istream& in);

struct ClusterResult {
    std::vector<int> symbol_of_pulse;  // aligned with PulseTable order
    Alphabet alphabet;                 // labeled by cluster mean frequency
};

/// One-dimensional density clustering on frequency: points with at least
/// min_points neighbors within epsilon are cores, cores within epsilon of
/// each other chain into one cluster, and every remaining point joins the
/// cluster of its nearest core.
ClusterResult cluster_frequencies(const PulseTable& table, const ClusteringConfig& config);

/// Quantizes arrival times to integer multiples of lsb (round half to
/// even), rebases the earliest tick to 0, and keeps collisions as
/// simultaneous events.
ObservedSequence discretize_times(const PulseTable& table, const std::vector<int>& symbols,
                                  int alphabet_size, double lsb);

}  // namespace deint
