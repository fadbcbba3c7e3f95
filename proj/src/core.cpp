#include "deint/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace deint {

Alphabet Alphabet::with_default_labels(int size) {
    if (size < 0) throw std::invalid_argument("alphabet size must be >= 0");
    Alphabet a;
    a.labels.reserve(size);
    for (int i = 0; i < size; ++i) {
        if (size <= 26) {
            a.labels.push_back(std::string(1, static_cast<char>('a' + i)));
        } else {
            a.labels.push_back("s" + std::to_string(i));
        }
    }
    return a;
}

int Alphabet::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i) {
        if (labels[i] == label) return i;
    }
    return -1;
}

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> out(group_count);
    for (int s = 0; s < symbol_count(); ++s) out[assignment[s]].push_back(s);
    return out;
}

int Partition::group_size(int group) const {
    int n = 0;
    for (int g : assignment) n += (g == group);
    return n;
}

Partition canonical_partition(const std::vector<int>& raw_assignment) {
    Partition p;
    p.assignment.resize(raw_assignment.size());
    std::vector<std::pair<int, int>> seen;  // (raw label, canonical id)
    for (std::size_t i = 0; i < raw_assignment.size(); ++i) {
        int raw = raw_assignment[i];
        int id = -1;
        for (const auto& [label, mapped] : seen) {
            if (label == raw) {
                id = mapped;
                break;
            }
        }
        if (id < 0) {
            id = static_cast<int>(seen.size());
            seen.emplace_back(raw, id);
        }
        p.assignment[i] = id;
    }
    p.group_count = static_cast<int>(seen.size());
    return p;
}

PartitionEnumerator::PartitionEnumerator(int symbol_count) : k_(symbol_count) {
    if (k_ < 0) throw std::invalid_argument("symbol count must be >= 0");
    rgs_.assign(static_cast<std::size_t>(k_), 0);
}

std::optional<Partition> PartitionEnumerator::next() {
    if (done_) return std::nullopt;
    if (first_) {
        first_ = false;
        if (k_ == 0) {
            done_ = true;
            return Partition{};  // the empty partition
        }
        return canonical_partition(rgs_);
    }
    // Successor in lexicographic RGS order: bump the rightmost position that
    // can grow (a[j] <= max of its prefix), zero everything to its right.
    for (int j = k_ - 1; j >= 1; --j) {
        int prefix_max = 0;
        for (int i = 0; i < j; ++i) prefix_max = std::max(prefix_max, rgs_[i]);
        if (rgs_[j] <= prefix_max) {
            ++rgs_[j];
            std::fill(rgs_.begin() + j + 1, rgs_.end(), 0);
            return canonical_partition(rgs_);
        }
    }
    done_ = true;
    return std::nullopt;
}

BigInt bell_number(int k) {
    if (k < 0) throw std::invalid_argument("bell_number: k must be >= 0");
    // Bell triangle: row 0 is [1]; each row starts with the previous row's
    // last entry and accumulates left-neighbor + upper-neighbor.
    std::vector<BigInt> row{1};
    for (int i = 1; i <= k; ++i) {
        std::vector<BigInt> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (const BigInt& v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

SubSequence extract_subsequence(const ObservedSequence& seq, const std::vector<int>& group) {
    SubSequence sub;
    sub.symbols = group;
    std::sort(sub.symbols.begin(), sub.symbols.end());
    sub.horizon = seq.horizon;
    std::uint64_t mask = group_mask(sub.symbols);
    for (const Event& e : seq.events) {
        if (e.symbol >= 0 && e.symbol < kMaxAlphabet && (mask >> e.symbol) & 1u) {
            if (!sub.events.empty() && sub.events.back().time == e.time) sub.simultaneous = true;
            sub.events.push_back(e);
        }
    }
    return sub;
}

std::uint64_t group_mask(const std::vector<int>& symbols) {
    std::uint64_t mask = 0;
    for (int s : symbols) {
        if (s < 0 || s >= kMaxAlphabet)
            throw std::invalid_argument("symbol index out of the supported 0..63 range");
        mask |= std::uint64_t{1} << s;
    }
    return mask;
}

std::vector<int> mask_symbols(std::uint64_t mask) {
    std::vector<int> out;
    for (int s = 0; s < kMaxAlphabet; ++s) {
        if ((mask >> s) & 1u) out.push_back(s);
    }
    return out;
}

}  // namespace deint
