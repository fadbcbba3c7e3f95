#include "deint/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "rand_util.hpp"

namespace deint {
namespace {

using rnd::uniform01;
using rnd::uniform_int;

constexpr double kProbTol = 1e-9;
constexpr int kGcdRetryCap = 100;

// Uniform point on the probability simplex (normalized exponentials);
// every coordinate is strictly positive.
std::vector<double> simplex_row(std::mt19937_64& rng, std::size_t dim) {
    std::vector<double> row(dim);
    double total = 0.0;
    for (auto& v : row) {
        v = -std::log(1.0 - uniform01(rng));
        if (v <= 0.0) v = std::numeric_limits<double>::min();
        total += v;
    }
    for (auto& v : row) v /= total;
    return row;
}

// s distinct values from {1..limit}, ascending (partial Fisher-Yates).
std::vector<std::int64_t> distinct_values(std::mt19937_64& rng, int s, std::int64_t limit) {
    std::vector<std::int64_t> pool(static_cast<std::size_t>(limit));
    std::iota(pool.begin(), pool.end(), std::int64_t{1});
    for (int i = 0; i < s; ++i) {
        const auto j = uniform_int(rng, i, limit - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<std::int64_t> picked(pool.begin(), pool.begin() + s);
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::int64_t pooled_gcd(const EmitterParams& emitter) {
    std::int64_t g = 0;
    for (const auto& soj : emitter.sojourn)
        for (const auto k : soj.support) g = std::gcd(g, k);
    return g;
}

// Uniform BigInt in [0, n) by rejection on fixed-width random bits.
BigInt uniform_below(const BigInt& n, std::mt19937_64& rng) {
    if (n <= 1) return 0;
    const unsigned bits = boost::multiprecision::msb(n - 1) + 1;
    const unsigned words = (bits + 63) / 64;
    for (;;) {
        BigInt draw = 0;
        for (unsigned w = 0; w < words; ++w) {
            draw <<= 64;
            draw |= static_cast<std::uint64_t>(rng());
        }
        draw >>= words * 64 - bits;
        if (draw < n) return draw;
    }
}

}  // namespace

int EmitterParams::local_index(int symbol) const {
    const auto it = std::lower_bound(symbols.begin(), symbols.end(), symbol);
    if (it == symbols.end() || *it != symbol)
        throw std::invalid_argument("symbol not in emitter sub-alphabet");
    return static_cast<int>(it - symbols.begin());
}

double EmitterParams::transition_prob(int from_symbol, int to_symbol) const {
    return transition[static_cast<std::size_t>(local_index(from_symbol))]
                     [static_cast<std::size_t>(local_index(to_symbol))];
}

double EmitterParams::sojourn_prob(int symbol, std::int64_t delay) const {
    const auto& soj = sojourn[static_cast<std::size_t>(local_index(symbol))];
    const auto it = std::lower_bound(soj.support.begin(), soj.support.end(), delay);
    if (it == soj.support.end() || *it != delay) return 0.0;
    return soj.prob[static_cast<std::size_t>(it - soj.support.begin())];
}

double EmitterParams::survival(int symbol, std::int64_t k) const {
    const auto& soj = sojourn[static_cast<std::size_t>(local_index(symbol))];
    double tail = 0.0;
    for (std::size_t s = 0; s < soj.support.size(); ++s)
        if (soj.support[s] > k) tail += soj.prob[s];
    return tail;
}

std::int64_t EmitterParams::max_delay(int symbol) const {
    const auto& soj = sojourn[static_cast<std::size_t>(local_index(symbol))];
    return soj.support.empty() ? 0 : soj.support.back();
}

std::vector<Violation> validate_model(const GenerativeModel& model) {
    std::vector<Violation> out;
    const auto groups = model.partition.groups();
    if (model.emitters.size() != groups.size()) {
        out.push_back({'S', "emitter count does not match partition group count"});
        return out;
    }
    if (model.initial_symbols.size() != model.emitters.size())
        out.push_back({'S', "initial symbol count does not match emitter count"});

    for (std::size_t e = 0; e < model.emitters.size(); ++e) {
        const auto& em = model.emitters[e];
        const std::string tag = "emitter " + std::to_string(e);
        if (em.symbols != groups[e]) {
            out.push_back({'S', tag + ": sub-alphabet differs from partition group"});
            continue;
        }
        const std::size_t sz = em.symbols.size();
        if (em.transition.size() != sz || em.sojourn.size() != sz) {
            out.push_back({'S', tag + ": parameter tables sized inconsistently"});
            continue;
        }
        for (std::size_t i = 0; i < sz; ++i) {
            const auto& row = em.transition[i];
            if (row.size() != sz) {
                out.push_back({'S', tag + ": transition row size mismatch"});
                continue;
            }
            double row_sum = 0.0;
            for (const double p : row) {
                if (p <= 0.0) out.push_back({'P', tag + ": non-positive transition probability"});
                row_sum += p;
            }
            if (std::abs(row_sum - 1.0) > kProbTol)
                out.push_back({'P', tag + ": transition row does not sum to 1"});

            const auto& soj = em.sojourn[i];
            if (soj.support.size() != soj.prob.size() || soj.support.empty()) {
                out.push_back({'Q', tag + ": malformed sojourn table"});
                continue;
            }
            double q_sum = 0.0;
            for (std::size_t s = 0; s < soj.support.size(); ++s) {
                if (soj.support[s] < 1) out.push_back({'Q', tag + ": sojourn value below 1"});
                if (s > 0 && soj.support[s] <= soj.support[s - 1])
                    out.push_back({'Q', tag + ": sojourn support not ascending"});
                if (soj.prob[s] <= 0.0) out.push_back({'Q', tag + ": non-positive sojourn probability"});
                q_sum += soj.prob[s];
            }
            if (std::abs(q_sum - 1.0) > kProbTol)
                out.push_back({'Q', tag + ": sojourn probabilities do not sum to 1"});
        }
        if (pooled_gcd(em) != 1)
            out.push_back({'K', tag + ": pooled sojourn values have gcd " + std::to_string(pooled_gcd(em))});
        if (!out.empty() && out.back().assumption == 'S') continue;
        if (e < model.initial_symbols.size()) {
            const int init = model.initial_symbols[e];
            if (!std::binary_search(em.symbols.begin(), em.symbols.end(), init))
                out.push_back({'S', tag + ": initial symbol outside sub-alphabet"});
        }
    }
    return out;
}

Partition sample_uniform_partition(int symbol_count, std::mt19937_64& rng) {
    if (symbol_count < 0) throw std::invalid_argument("negative symbol count");
    Partition part;
    if (symbol_count == 0) return part;

    // completions[i][j]: ways to finish a restricted-growth string with
    // i positions left and j block labels already in use.
    std::vector<std::vector<BigInt>> completions(static_cast<std::size_t>(symbol_count));
    for (auto& row : completions) row.assign(static_cast<std::size_t>(symbol_count) + 2, BigInt(0));
    for (std::size_t j = 0; j <= static_cast<std::size_t>(symbol_count) + 1; ++j)
        completions[0][j] = 1;
    for (std::size_t i = 1; i < completions.size(); ++i)
        for (std::size_t j = 0; j + 1 <= static_cast<std::size_t>(symbol_count); ++j)
            completions[i][j] = BigInt(j) * completions[i - 1][j] + completions[i - 1][j + 1];

    std::vector<int> rgs(static_cast<std::size_t>(symbol_count), 0);
    int blocks = 1;
    for (int pos = 1; pos < symbol_count; ++pos) {
        const std::size_t remaining = static_cast<std::size_t>(symbol_count - pos);
        const BigInt& keep = completions[remaining - 1][static_cast<std::size_t>(blocks)];
        const BigInt total = BigInt(blocks) * keep + completions[remaining - 1][static_cast<std::size_t>(blocks) + 1];
        const BigInt draw = uniform_below(total, rng);
        if (draw < BigInt(blocks) * keep) {
            rgs[static_cast<std::size_t>(pos)] = static_cast<int>(draw / keep);
        } else {
            rgs[static_cast<std::size_t>(pos)] = blocks;
            ++blocks;
        }
    }
    part.assignment = std::move(rgs);
    part.group_count = blocks;
    return part;
}

GenerativeModel sample_model(const Alphabet& alphabet, std::mt19937_64& rng,
                             std::optional<int> support_count_cap,
                             std::optional<int> delay_value_cap) {
    const int a = alphabet.size();
    if (a < 1) throw std::invalid_argument("alphabet must not be empty");

    GenerativeModel model;
    model.alphabet = alphabet;
    model.partition = sample_uniform_partition(a, rng);
    const auto groups = model.partition.groups();
    const int m = model.partition.group_count;

    const int k_cap = support_count_cap.value_or(m + 1);
    const std::int64_t l_cap = delay_value_cap.value_or(a + 1);

    for (const auto& group : groups) {
        EmitterParams em;
        em.symbols = group;
        const std::size_t sz = group.size();
        em.transition.reserve(sz);
        for (std::size_t i = 0; i < sz; ++i) em.transition.push_back(simplex_row(rng, sz));

        const auto draw_sojourns = [&] {
            em.sojourn.clear();
            em.sojourn.reserve(sz);
            for (std::size_t i = 0; i < sz; ++i) {
                const int s = static_cast<int>(uniform_int(rng, 1, k_cap));
                EmitterParams::Sojourn soj;
                soj.support = distinct_values(rng, s, l_cap);
                soj.prob = simplex_row(rng, static_cast<std::size_t>(s));
                em.sojourn.push_back(std::move(soj));
            }
        };
        draw_sojourns();
        for (int attempt = 0; attempt < kGcdRetryCap && pooled_gcd(em) != 1; ++attempt)
            draw_sojourns();
        if (pooled_gcd(em) != 1) {
            // Patch the first symbol: grant delay 1 a fresh simplex share.
            auto& soj = em.sojourn.front();
            soj.support.insert(soj.support.begin(), 1);
            soj.prob = simplex_row(rng, soj.support.size());
        }

        model.initial_symbols.push_back(group[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<std::int64_t>(sz) - 1))]);
        model.emitters.push_back(std::move(em));
    }
    return model;
}

Scenario generate_scenario(const GenerativeModel& model, std::size_t n, std::uint64_t seed) {
    Scenario scenario;
    scenario.model = model;
    scenario.seed = seed;
    scenario.sequence.alphabet_size = model.alphabet.size();

    const std::size_t m = model.emitters.size();
    std::vector<std::mt19937_64> streams;
    streams.reserve(m);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m)};
    std::vector<std::uint32_t> words(2 * m + 2);
    seq.generate(words.begin(), words.end());
    for (std::size_t e = 0; e < m; ++e)
        streams.emplace_back((static_cast<std::uint64_t>(words[2 * e]) << 32) | words[2 * e + 1]);

    struct Pending {
        std::int64_t time;
        std::size_t emitter;
        int symbol;
    };
    const auto later = [](const Pending& lhs, const Pending& rhs) {
        return std::tie(lhs.time, lhs.emitter, lhs.symbol) > std::tie(rhs.time, rhs.emitter, rhs.symbol);
    };
    std::priority_queue<Pending, std::vector<Pending>, decltype(later)> frontier(later);
    for (std::size_t e = 0; e < m; ++e)
        frontier.push({0, e, model.initial_symbols[e]});

    scenario.sequence.events.reserve(n);
    scenario.truth_labels.reserve(n);
    while (scenario.sequence.events.size() < n && !frontier.empty()) {
        const Pending cur = frontier.top();
        frontier.pop();
        scenario.sequence.events.push_back({cur.symbol, cur.time});
        scenario.truth_labels.push_back(static_cast<int>(cur.emitter));

        const auto& em = model.emitters[cur.emitter];
        auto& rng = streams[cur.emitter];
        const auto li = static_cast<std::size_t>(em.local_index(cur.symbol));

        // Delay out of the current symbol, then the next symbol.
        const auto& soj = em.sojourn[li];
        double u = uniform01(rng);
        std::size_t pick = 0;
        for (; pick + 1 < soj.prob.size(); ++pick) {
            if (u < soj.prob[pick]) break;
            u -= soj.prob[pick];
        }
        const std::int64_t delay = soj.support[pick];

        const auto& row = em.transition[li];
        u = uniform01(rng);
        std::size_t nxt = 0;
        for (; nxt + 1 < row.size(); ++nxt) {
            if (u < row[nxt]) break;
            u -= row[nxt];
        }
        frontier.push({cur.time + delay, cur.emitter, em.symbols[nxt]});
    }

    scenario.sequence.horizon =
        scenario.sequence.events.empty() ? 0 : scenario.sequence.events.back().time;
    return scenario;
}

Scenario random_scenario(int alphabet_size, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto model = sample_model(Alphabet::with_default_labels(alphabet_size), rng);
    return generate_scenario(model, n, rng());
}

}  // namespace deint
