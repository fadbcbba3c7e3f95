#include "deint/fsm.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace deint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FsmSource::FsmSource(EmitterParams params) : params_(std::move(params)) {
    hazard_.reserve(params_.symbols.size());
    for (std::size_t li = 0; li < params_.symbols.size(); ++li) {
        const auto& soj = params_.sojourn[li];
        if (soj.support.empty()) throw std::invalid_argument("empty sojourn support");
        const int symbol = params_.symbols[li];
        const std::int64_t k_max = soj.support.back();
        std::vector<double> h(static_cast<std::size_t>(k_max));
        for (std::int64_t t = 1; t <= k_max; ++t) {
            const double tail = params_.survival(symbol, t - 1);
            h[static_cast<std::size_t>(t - 1)] =
                tail > 0.0 ? params_.sojourn_prob(symbol, t) / tail : 1.0;
        }
        hazard_.push_back(std::move(h));
    }
}

std::vector<FsmState> FsmSource::states() const {
    std::vector<FsmState> out;
    for (const int symbol : params_.symbols)
        for (std::int64_t d = 0; d < max_age(symbol); ++d) out.push_back({symbol, d});
    return out;
}

std::int64_t FsmSource::max_age(int symbol) const {
    return static_cast<std::int64_t>(
        hazard_[static_cast<std::size_t>(params_.local_index(symbol))].size());
}

double FsmSource::hazard(int symbol, std::int64_t t) const {
    const auto& h = hazard_[static_cast<std::size_t>(params_.local_index(symbol))];
    if (t < 1 || t > static_cast<std::int64_t>(h.size()))
        throw std::out_of_range("hazard argument outside 1..max sojourn");
    return h[static_cast<std::size_t>(t - 1)];
}

double FsmSource::stay_prob(const FsmState& state) const {
    if (state.elapsed + 1 > max_age(state.symbol)) return 0.0;
    return 1.0 - hazard(state.symbol, state.elapsed + 1);
}

double FsmSource::emit_prob(const FsmState& state, int next_symbol) const {
    if (state.elapsed + 1 > max_age(state.symbol)) return 0.0;
    return params_.transition_prob(state.symbol, next_symbol) *
           hazard(state.symbol, state.elapsed + 1);
}

FsmSource build_fsm(const EmitterParams& params) { return FsmSource(params); }

StatePath events_to_state_path(const SubSequence& sub, const BoundaryContext& boundary) {
    if (boundary.prev_time >= 0)
        throw std::invalid_argument("boundary event must precede the window");
    for (const auto& ev : sub.events)
        if (ev.time < 0 || ev.time > boundary.horizon)
            throw std::invalid_argument("event outside the observation window");

    StatePath path;
    path.boundary = {boundary.prev_symbol, -boundary.prev_time - 1};
    path.states.reserve(static_cast<std::size_t>(boundary.horizon) + 1);

    std::size_t next_event = 0;
    int symbol = boundary.prev_symbol;
    std::int64_t emitted_at = boundary.prev_time;
    for (std::int64_t t = 0; t <= boundary.horizon; ++t) {
        if (next_event < sub.events.size() && sub.events[next_event].time == t) {
            symbol = sub.events[next_event].symbol;
            emitted_at = t;
            ++next_event;
        }
        path.states.push_back({symbol, t - emitted_at});
    }
    return path;
}

double fsm_path_log_likelihood(const FsmSource& fsm, const StatePath& path) {
    const auto step = [&fsm](const FsmState& from, const FsmState& to) {
        double p = 0.0;
        if (to.symbol == from.symbol && to.elapsed == from.elapsed + 1)
            p = fsm.stay_prob(from);
        else if (to.elapsed == 0)
            p = fsm.emit_prob(from, to.symbol);
        return p > 0.0 ? std::log(p) : -kInf;
    };

    if (path.states.empty()) return 0.0;
    double log_l = step(path.boundary, path.states.front());
    for (std::size_t t = 0; t + 1 < path.states.size(); ++t)
        log_l += step(path.states[t], path.states[t + 1]);
    return log_l;
}

ErgodicityReport check_ergodicity(const FsmSource& fsm) {
    const auto states = fsm.states();
    const std::size_t count = states.size();
    ErgodicityReport report;
    if (count == 0) return report;

    // states() orders by symbol then age, so id = symbol offset + elapsed.
    std::vector<std::size_t> offset;
    offset.reserve(fsm.params().symbols.size());
    std::size_t running = 0;
    for (const int symbol : fsm.params().symbols) {
        offset.push_back(running);
        running += static_cast<std::size_t>(fsm.max_age(symbol));
    }
    std::vector<std::vector<std::size_t>> fwd(count), rev(count);
    const auto state_id = [&](const FsmState& s) -> std::size_t {
        return offset[static_cast<std::size_t>(fsm.params().local_index(s.symbol))] +
               static_cast<std::size_t>(s.elapsed);
    };
    for (std::size_t u = 0; u < count; ++u) {
        if (fsm.stay_prob(states[u]) > 0.0) {
            const auto v = state_id({states[u].symbol, states[u].elapsed + 1});
            fwd[u].push_back(v);
            rev[v].push_back(u);
        }
        for (const int next : fsm.params().symbols) {
            if (fsm.emit_prob(states[u], next) > 0.0) {
                const auto v = state_id({next, 0});
                fwd[u].push_back(v);
                rev[v].push_back(u);
            }
        }
    }

    const auto reach = [count](const std::vector<std::vector<std::size_t>>& adj) {
        std::vector<char> seen(count, 0);
        std::queue<std::size_t> frontier;
        frontier.push(0);
        seen[0] = 1;
        std::size_t visited = 1;
        while (!frontier.empty()) {
            const auto u = frontier.front();
            frontier.pop();
            for (const auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++visited;
                    frontier.push(v);
                }
        }
        return visited;
    };
    report.irreducible = reach(fwd) == count && reach(rev) == count;

    // BFS layering from state 0: the gcd of depth[u]+1-depth[v] over all
    // edges (u,v) in the reachable part equals the chain period.
    std::vector<std::int64_t> depth(count, -1);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    depth[0] = 0;
    while (!frontier.empty()) {
        const auto u = frontier.front();
        frontier.pop();
        for (const auto v : fwd[u])
            if (depth[v] < 0) {
                depth[v] = depth[u] + 1;
                frontier.push(v);
            }
    }
    std::int64_t period = 0;
    for (std::size_t u = 0; u < count; ++u) {
        if (depth[u] < 0) continue;
        for (const auto v : fwd[u])
            if (depth[v] >= 0) period = std::gcd(period, depth[u] + 1 - depth[v]);
    }
    report.aperiodic = period == 1;
    return report;
}

}  // namespace deint
