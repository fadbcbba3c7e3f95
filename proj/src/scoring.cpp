#include "deint/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace deint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScoreCache::GroupEval evaluate_group(const ObservedSequence& seq, std::uint64_t mask) {
    ScoreCache::GroupEval eval;
    const auto sub = extract_subsequence(seq, mask_symbols(mask));
    if (sub.simultaneous) {
        eval.compatible = false;
        return eval;
    }
    eval.counts = count_tables(sub);
    std::tie(eval.h_z, eval.h_x) = group_entropy(eval.counts);
    return eval;
}

ScoreResult score_groups(const ObservedSequence& seq, const Partition& part,
                         double gamma, ScoreCache* cache) {
    if (static_cast<int>(part.assignment.size()) != seq.alphabet_size)
        throw std::invalid_argument("partition does not cover the sequence alphabet");

    ScoreResult res;
    res.gamma = gamma;
    res.n = seq.events.size();
    res.m = part.group_count;
    res.penalty = gamma * part.group_count * std::log(static_cast<double>(std::max<std::size_t>(res.n, 1)));

    double h_z = 0.0;
    double h_x = 0.0;
    bool compatible = true;
    for (const auto& group : part.groups()) {
        const std::uint64_t mask = group_mask(group);
        const ScoreCache::GroupEval local =
            cache ? cache->group(mask) : evaluate_group(seq, mask);
        if (!local.compatible) {
            compatible = false;
            res.per_group.push_back(kInf);
            continue;
        }
        h_z += local.h_z;
        h_x += local.h_x;
        res.per_group.push_back(local.h_z + local.h_x);
    }
    res.h_z = h_z;
    res.h_x = h_x;
    res.compatible = compatible;
    res.total = compatible ? h_z + h_x + res.penalty : kInf;
    return res;
}

}  // namespace

double Estimators::p(int from, int to) const {
    const auto it = p_hat.find({from, to});
    return it == p_hat.end() ? 0.0 : it->second;
}

double Estimators::q(int symbol, std::int64_t delay) const {
    const auto it = q_hat.find({symbol, delay});
    return it == q_hat.end() ? 0.0 : it->second;
}

const ScoreCache::GroupEval& ScoreCache::group(std::uint64_t mask) {
    const auto it = entries_.find(mask);
    if (it != entries_.end()) {
        ++hits_;
        return it->second;
    }
    ++misses_;
    return entries_.emplace(mask, evaluate_group(*seq_, mask)).first->second;
}

void ScoreCache::anchor(const Partition& part, const ScoreResult& result) {
    part_ = part;
    score_ = result;
    anchored_ = true;
}

const Partition& ScoreCache::current_partition() const {
    if (!anchored_) throw std::logic_error("score cache has no anchored partition");
    return part_;
}

const ScoreResult& ScoreCache::current_score() const {
    if (!anchored_) throw std::logic_error("score cache has no anchored partition");
    return score_;
}

CountTables count_tables(const SubSequence& sub) {
    CountTables tables;
    const auto& ev = sub.events;
    for (std::size_t l = 0; l < ev.size(); ++l) {
        ++tables.n_i[ev[l].symbol];
        ++tables.n_total;
        if (l == 0) continue;
        const std::int64_t delay = ev[l].time - ev[l - 1].time;
        if (delay <= 0) throw std::invalid_argument("sub-sequence times must strictly increase");
        ++tables.n_ij[{ev[l - 1].symbol, ev[l].symbol}];
        ++tables.n_ik[{ev[l - 1].symbol, delay}];
    }
    return tables;
}

Estimators ml_estimators(const CountTables& counts) {
    Estimators est;
    for (const auto& [key, cnt] : counts.n_ij) {
        const auto denom = counts.n_i.at(key.first);
        est.p_hat[key] = static_cast<double>(cnt) / static_cast<double>(denom);
    }
    for (const auto& [key, cnt] : counts.n_ik) {
        const auto denom = counts.n_i.at(key.first);
        est.q_hat[key] = static_cast<double>(cnt) / static_cast<double>(denom);
    }
    return est;
}

std::pair<double, double> group_entropy(const CountTables& counts) {
    double h_z = 0.0;
    double h_x = 0.0;
    for (const auto& [key, cnt] : counts.n_ij) {
        const auto denom = counts.n_i.at(key.first);
        h_z -= static_cast<double>(cnt) *
               std::log(static_cast<double>(cnt) / static_cast<double>(denom));
    }
    for (const auto& [key, cnt] : counts.n_ik) {
        const auto denom = counts.n_i.at(key.first);
        h_x -= static_cast<double>(cnt) *
               std::log(static_cast<double>(cnt) / static_cast<double>(denom));
    }
    // Guard against -0.0 from exact single-outcome tables.
    if (h_z == 0.0) h_z = 0.0;
    if (h_x == 0.0) h_x = 0.0;
    return {h_z, h_x};
}

ScoreResult partition_score(const ObservedSequence& seq, const Partition& part,
                            double gamma, ScoreCache* cache) {
    if (cache && &cache->sequence() != &seq)
        throw std::invalid_argument("cache bound to a different sequence");
    ScoreResult res = score_groups(seq, part, gamma, cache);
    if (cache) cache->anchor(part, res);
    return res;
}

Partition apply_move(const Partition& part, const Move& move) {
    if (move.symbol < 0 || move.symbol >= static_cast<int>(part.assignment.size()))
        throw std::invalid_argument("moved symbol outside partition");
    if (part.assignment[static_cast<std::size_t>(move.symbol)] != move.from_group)
        throw std::invalid_argument("move source group does not match partition");
    if (move.to_group == move.from_group)
        throw std::invalid_argument("move keeps the symbol in its own group");
    if (move.to_group < 0 || move.to_group > part.group_count)
        throw std::invalid_argument("move target group out of range");

    std::vector<int> labels = part.assignment;
    labels[static_cast<std::size_t>(move.symbol)] = move.to_group;
    return canonical_partition(labels);
}

ScoreResult rescore_move(ScoreCache& cache, const Move& move) {
    const Partition moved = apply_move(cache.current_partition(), move);
    return score_groups(cache.sequence(), moved, cache.current_score().gamma, &cache);
}

double exact_log_likelihood(const SubSequence& sub, const EmitterParams& params,
                            const BoundaryContext& boundary) {
    if (boundary.prev_time >= 0)
        throw std::invalid_argument("boundary event must precede the window");

    const auto log_or_ninf = [](double v) { return v > 0.0 ? std::log(v) : -kInf; };
    const double start_survival =
        params.survival(boundary.prev_symbol, -boundary.prev_time - 1);

    const auto& ev = sub.events;
    if (ev.empty()) {
        const double tail = params.survival(boundary.prev_symbol, boundary.horizon - boundary.prev_time);
        const double log_l = log_or_ninf(tail) - log_or_ninf(start_survival);
        return std::isnan(log_l) ? -kInf : log_l;
    }

    double log_l = log_or_ninf(params.transition_prob(boundary.prev_symbol, ev[0].symbol)) +
                   log_or_ninf(params.sojourn_prob(boundary.prev_symbol, ev[0].time - boundary.prev_time)) -
                   log_or_ninf(start_survival);
    for (std::size_t l = 1; l < ev.size(); ++l) {
        log_l += log_or_ninf(params.transition_prob(ev[l - 1].symbol, ev[l].symbol));
        log_l += log_or_ninf(params.sojourn_prob(ev[l - 1].symbol, ev[l].time - ev[l - 1].time));
    }
    log_l += log_or_ninf(params.survival(ev.back().symbol, boundary.horizon - ev.back().time));
    return std::isnan(log_l) ? -kInf : log_l;
}

double approx_log_likelihood(const SubSequence& sub, const EmitterParams& params) {
    const auto& ev = sub.events;
    if (ev.size() <= 1) return 0.0;

    const auto log_or_ninf = [](double v) { return v > 0.0 ? std::log(v) : -kInf; };
    double log_l = 0.0;
    for (std::size_t l = 1; l < ev.size(); ++l) {
        log_l += log_or_ninf(params.transition_prob(ev[l - 1].symbol, ev[l].symbol));
        log_l += log_or_ninf(params.sojourn_prob(ev[l - 1].symbol, ev[l].time - ev[l - 1].time));
    }
    return log_l;
}

}  // namespace deint
