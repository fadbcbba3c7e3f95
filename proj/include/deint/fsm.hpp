#pragma once

#include <cstdint>
#include <vector>

#include "deint/model.hpp"
#include "deint/scoring.hpp"

namespace deint {

/// One source state: the last emitted symbol and the whole time units
/// elapsed since that emission.
struct FsmState {
    int symbol = 0;
    std::int64_t elapsed = 0;

    friend bool operator==(const FsmState&, const FsmState&) = default;
};

/// Unit-clock automaton equivalent of one emitter.  Each tick either waits
/// (action *) or emits the next symbol; the emission risk at age d is the
/// sojourn hazard h_i(d+1) = q_i(d+1) / P(sojourn > d).
class FsmSource {
  public:
    explicit FsmSource(EmitterParams params);

    const EmitterParams& params() const { return params_; }

    /// All reachable states: ages 0 .. max(K^i)-1 per symbol.
    std::vector<FsmState> states() const;

    std::int64_t max_age(int symbol) const;
    double hazard(int symbol, std::int64_t t) const;

    /// P(* | (symbol, elapsed)) — survive one more tick.
    double stay_prob(const FsmState& state) const;
    /// P(next | (symbol, elapsed)) — emit `next` on the coming tick.
    double emit_prob(const FsmState& state, int next_symbol) const;

  private:
    EmitterParams params_;
    std::vector<std::vector<double>> hazard_;  // [local symbol][t-1], t = 1..max
};

FsmSource build_fsm(const EmitterParams& params);

/// States s_0..s_T plus the pre-window state s_{-1}.
struct StatePath {
    std::vector<FsmState> states;
    FsmState boundary;
};

/// Expands events into the tick-by-tick state path: elapsed increments
/// between events and resets to 0 at each emission.
StatePath events_to_state_path(const SubSequence& sub, const BoundaryContext& boundary);

/// Sum of log transition probabilities along the path, from the boundary
/// state through the final tick; -inf for any impossible step.
double fsm_path_log_likelihood(const FsmSource& fsm, const StatePath& path);

struct ErgodicityReport {
    bool irreducible = false;
    bool aperiodic = false;
};

/// Graph check over positive-probability transitions: strong connectivity
/// and cycle-length gcd 1.
ErgodicityReport check_ergodicity(const FsmSource& fsm);

}  // namespace deint
