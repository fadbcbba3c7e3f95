#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace deint {

using BigInt = boost::multiprecision::cpp_int;

/// A finite symbol alphabet. Symbols are referenced everywhere by index
/// 0..size-1; labels are only for display and file I/O.
struct Alphabet {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }

    /// "a".."z" for small alphabets, "s<index>" beyond.
    static Alphabet with_default_labels(int size);

    /// Index of a label, or -1 if absent.
    int index_of(const std::string& label) const;
};

struct Event {
    int symbol = 0;
    std::int64_t time = 0;  // discrete ticks, multiples of the receiver LSB

    bool operator==(const Event&) const = default;
};

/// An interleaved event stream observed in the window [0, horizon].
/// Events are sorted by time; ties across symbols are allowed.
struct ObservedSequence {
    std::vector<Event> events;
    std::int64_t horizon = 0;
    int alphabet_size = 0;

    std::size_t size() const { return events.size(); }
};

/// A set partition of the alphabet in canonical restricted-growth form:
/// assignment[0] == 0 and assignment[i] <= 1 + max(assignment[0..i-1]).
/// Group indices 0..group_count-1 are all used.
struct Partition {
    std::vector<int> assignment;
    int group_count = 0;

    bool operator==(const Partition&) const = default;

    int symbol_count() const { return static_cast<int>(assignment.size()); }

    /// Symbols of each group, ascending within a group.
    std::vector<std::vector<int>> groups() const;

    /// Size of the group containing `symbol`.
    int group_size(int group) const;
};

/// Relabels an arbitrary per-symbol grouping into restricted-growth form.
/// Two labelings inducing the same set partition map to the same output.
Partition canonical_partition(const std::vector<int>& raw_assignment);

/// Streams every set partition of {0..k-1} exactly once, in lexicographic
/// restricted-growth-string order. k == 0 yields a single empty partition.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int symbol_count);

    std::optional<Partition> next();

private:
    int k_;
    bool first_ = true;
    bool done_ = false;
    std::vector<int> rgs_;
};

/// Exact B_k via the Bell triangle.
BigInt bell_number(int k);

/// One group's event stream, extracted from an interleaved sequence.
/// `simultaneous` is set when two events share a tick; such a stream is
/// impossible for a single source and is rejected at scoring time.
struct SubSequence {
    std::vector<Event> events;
    std::vector<int> symbols;  // the sub-alphabet, ascending
    std::int64_t horizon = 0;
    bool simultaneous = false;
};

/// Keeps events whose symbol is in `group` (ascending symbol set), in order.
SubSequence extract_subsequence(const ObservedSequence& seq, const std::vector<int>& group);

/// Bitmask over symbol indices; the alphabet is capped at 64 symbols.
std::uint64_t group_mask(const std::vector<int>& symbols);
std::vector<int> mask_symbols(std::uint64_t mask);

inline constexpr int kMaxAlphabet = 64;

}  // namespace deint
