#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lvadv/errors.hpp"
#include "lvadv/lv.hpp"
#include "lvadv/rational.hpp"
#include "lvadv/rng.hpp"

namespace lvadv {

enum class StrategyKind { random_error, substitution, exhaustive_best };

inline const char* to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::random_error: return "random_error";
        case StrategyKind::substitution: return "substitution";
        case StrategyKind::exhaustive_best: return "exhaustive_best";
    }
    return "?";
}

inline StrategyKind strategy_from_string(std::string_view s) {
    if (s == "random_error") return StrategyKind::random_error;
    if (s == "substitution") return StrategyKind::substitution;
    if (s == "exhaustive_best") return StrategyKind::exhaustive_best;
    throw std::invalid_argument("unknown strategy: " + std::string(s));
}

/// Channel adversary limits: read fraction, write fraction, and whether the
/// write set is pinned to the read set (the construction's own model).
struct AdversarySpec {
    Rational rho_r{0, 1};
    Rational rho_w{0, 1};
    bool same_set = true;
    StrategyKind strategy = StrategyKind::random_error;
    std::uint64_t seed = 0;
};

inline std::size_t read_budget(const AdversarySpec& s, std::size_t n) {
    return static_cast<std::size_t>((s.rho_r.num * static_cast<std::int64_t>(n)) / s.rho_r.den);
}
inline std::size_t write_budget(const AdversarySpec& s, std::size_t n) {
    return static_cast<std::size_t>((s.rho_w.num * static_cast<std::int64_t>(n)) / s.rho_w.den);
}

/// Adaptive attack interface. The channel reveals one component per
/// next_read call, so every later choice may depend on all symbols seen so
/// far. Strategies receive public parameters and observations only.
class AttackPolicy {
public:
    virtual ~AttackPolicy() = default;

    /// Index of the next component to read; must be fresh and < N.
    virtual std::size_t next_read(const LvParams& p, const std::vector<std::size_t>& read_set,
                                  const std::vector<std::vector<Fe>>& observed) = 0;

    /// Write set when it is allowed to differ from the read set.
    virtual std::vector<std::size_t> choose_write_set(const LvParams& p,
                                                      const std::vector<std::size_t>& read_set,
                                                      const std::vector<std::vector<Fe>>& observed,
                                                      std::size_t budget) {
        (void)p;
        (void)observed;
        std::vector<std::size_t> w(read_set.begin(), read_set.begin() + std::min(budget, read_set.size()));
        for (std::size_t i = 0; i < p.block_len && w.size() < budget; ++i)
            if (std::find(w.begin(), w.end(), i) == w.end()) w.push_back(i);
        return w;
    }

    /// Additive error vectors, aligned with write_set; each of width u.
    virtual std::vector<std::vector<Fe>> make_error(const LvParams& p,
                                                    const std::vector<std::size_t>& read_set,
                                                    const std::vector<std::vector<Fe>>& observed,
                                                    const std::vector<std::size_t>& write_set) = 0;
};

/// Uniform noise on uniformly chosen positions; ignores what it reads.
class RandomErrorPolicy : public AttackPolicy {
public:
    explicit RandomErrorPolicy(std::mt19937_64 rng) : rng_(std::move(rng)) {}

    std::size_t next_read(const LvParams& p, const std::vector<std::size_t>& read_set,
                          const std::vector<std::vector<Fe>>&) override {
        return pick_fresh(p.block_len, read_set);
    }

    std::vector<std::vector<Fe>> make_error(const LvParams& p, const std::vector<std::size_t>&,
                                            const std::vector<std::vector<Fe>>&,
                                            const std::vector<std::size_t>& write_set) override {
        std::vector<std::vector<Fe>> err(write_set.size(), std::vector<Fe>(p.u, 0));
        for (auto& e : err)
            for (auto& s : e) s = p.field.uniform(rng_);
        return err;
    }

private:
    std::size_t pick_fresh(std::size_t n, const std::vector<std::size_t>& taken) {
        for (;;) {
            std::size_t i = static_cast<std::size_t>(uniform_below(rng_, n));
            if (std::find(taken.begin(), taken.end(), i) == taken.end()) return i;
        }
    }
    std::mt19937_64 rng_;
};

/// Re-encodes a fresh message with fresh keys and overwrites the controlled
/// components so they match the alternative codeword exactly. Requires the
/// write set to equal the read set (the error must cancel what was seen).
class SubstitutionPolicy : public AttackPolicy {
public:
    explicit SubstitutionPolicy(std::mt19937_64 rng) : rng_(std::move(rng)) {}

    std::size_t next_read(const LvParams& p, const std::vector<std::size_t>& read_set,
                          const std::vector<std::vector<Fe>>&) override {
        for (;;) {
            std::size_t i = static_cast<std::size_t>(uniform_below(rng_, p.block_len));
            if (std::find(read_set.begin(), read_set.end(), i) == read_set.end()) return i;
        }
    }

    std::vector<std::vector<Fe>> make_error(const LvParams& p, const std::vector<std::size_t>& read_set,
                                            const std::vector<std::vector<Fe>>& observed,
                                            const std::vector<std::size_t>& write_set) override {
        Message alt(p.msg_len, 0);
        for (auto& m : alt) m = p.field.uniform(rng_);
        LvCodeword alt_cw = lv_encode(p, alt, rng_);
        std::vector<std::vector<Fe>> err(write_set.size(), std::vector<Fe>(p.u, 0));
        for (std::size_t k = 0; k < write_set.size(); ++k) {
            auto seen = std::find(read_set.begin(), read_set.end(), write_set[k]);
            if (seen == read_set.end())
                throw std::logic_error("substitution: write position was not read");
            const std::vector<Fe>& have = observed[static_cast<std::size_t>(seen - read_set.begin())];
            for (std::size_t s = 0; s < p.u; ++s)
                err[k][s] = p.field.sub(alt_cw[write_set[k]][s], have[s]);
        }
        return err;
    }

private:
    std::mt19937_64 rng_;
};

inline std::unique_ptr<AttackPolicy> make_policy(StrategyKind kind, std::mt19937_64 rng) {
    switch (kind) {
        case StrategyKind::random_error: return std::make_unique<RandomErrorPolicy>(std::move(rng));
        case StrategyKind::substitution: return std::make_unique<SubstitutionPolicy>(std::move(rng));
        case StrategyKind::exhaustive_best:
            throw std::invalid_argument("exhaustive_best runs through exhaustive_best(), not a policy");
    }
    throw std::invalid_argument("unknown strategy");
}

/// Everything one channel use produced, for conformance checks and reports.
struct ChannelTranscript {
    LvCodeword sent;
    std::vector<std::size_t> read_set;
    std::vector<std::vector<Fe>> observed;
    std::vector<std::size_t> write_set;
    std::vector<std::pair<std::size_t, std::vector<Fe>>> error; // position -> additive vector
    LvCodeword received;
    DecodeOutcome outcome;
};

/// Runs one adaptive read-then-write channel use and decodes the result.
/// With same_set the write set is the read set; either way the error support
/// stays inside the write set and its weight inside the write budget.
inline ChannelTranscript apply_adversary(const AdversarySpec& spec, const LvParams& p,
                                         const LvCodeword& sent, AttackPolicy& policy) {
    const std::size_t n = p.block_len;
    const std::size_t br = read_budget(spec, n), bw = write_budget(spec, n);
    if (br > n || bw > n) throw InfeasibleParamsError("adversary: budget exceeds component count");
    if (spec.same_set && bw > br)
        throw InfeasibleParamsError("adversary: same-set write budget cannot exceed read budget");

    ChannelTranscript tr;
    tr.sent = sent;
    for (std::size_t step = 0; step < br; ++step) {
        std::size_t idx = policy.next_read(p, tr.read_set, tr.observed);
        if (idx >= n || std::find(tr.read_set.begin(), tr.read_set.end(), idx) != tr.read_set.end())
            throw std::logic_error("adversary: invalid read choice");
        tr.read_set.push_back(idx);
        tr.observed.push_back(sent[idx]);
    }

    if (spec.same_set) {
        tr.write_set.assign(tr.read_set.begin(), tr.read_set.begin() + std::min(bw, tr.read_set.size()));
    } else {
        tr.write_set = policy.choose_write_set(p, tr.read_set, tr.observed, bw);
        if (tr.write_set.size() > bw) throw std::logic_error("adversary: write set over budget");
    }

    auto errs = policy.make_error(p, tr.read_set, tr.observed, tr.write_set);
    if (errs.size() != tr.write_set.size()) throw std::logic_error("adversary: error/write-set mismatch");

    tr.received = sent;
    for (std::size_t k = 0; k < tr.write_set.size(); ++k) {
        if (errs[k].size() != p.u) throw std::logic_error("adversary: error width mismatch");
        bool nonzero = false;
        for (std::size_t s = 0; s < p.u; ++s) {
            if (errs[k][s] != 0) nonzero = true;
            tr.received[tr.write_set[k]][s] = p.field.add(tr.received[tr.write_set[k]][s], errs[k][s]);
        }
        if (nonzero) tr.error.emplace_back(tr.write_set[k], errs[k]);
    }
    tr.outcome = lv_decode(p, tr.received);
    return tr;
}

struct StrategyStats {
    std::string strategy;
    std::uint64_t trials = 0;
    std::uint64_t bottom = 0;
    std::uint64_t wrong = 0;
};

struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t bottom_count = 0;
    std::uint64_t wrong_message_count = 0;
    double delta_empirical = 0.0;
    double delta_bound = 0.0;
    bool out_of_model = false;
    std::uint64_t seed = 0;
    std::vector<StrategyStats> by_strategy;
    std::string note;
};

/// Monte-Carlo failure estimate: independent trials, each with a fresh
/// message, fresh encoding randomness and fresh adversary randomness, all
/// derived from the master seed by trial counter. The estimator averages over
/// encoding randomness rather than conditioning on each observed-value class;
/// the exhaustive oracle below performs the exact maximization instead.
inline SimReport simulate(const AdversarySpec& spec, const LvParams& p, std::uint64_t trials,
                          std::uint64_t seed) {
    SimReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.delta_bound = delta_bound(p);
    rep.out_of_model = !spec.same_set || write_budget(spec, p.block_len) > adversary_budget(p) ||
                       read_budget(spec, p.block_len) > adversary_budget(p);
    rep.note = "monte_carlo estimator; averages over encoding randomness instead of "
               "conditioning on observed-value classes";
    StrategyStats st;
    st.strategy = to_string(spec.strategy);
    st.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto msg_rng = make_stream(seed, 3 * t);
        auto enc_rng = make_stream(seed, 3 * t + 1);
        auto adv_rng = make_stream(spec.seed ^ seed, 3 * t + 2);
        Message msg(p.msg_len, 0);
        for (auto& m : msg) m = p.field.uniform(msg_rng);
        LvCodeword sent = lv_encode(p, msg, enc_rng);
        auto policy = make_policy(spec.strategy, std::move(adv_rng));
        ChannelTranscript tr = apply_adversary(spec, p, sent, *policy);
        if (!tr.outcome) ++st.bottom;
        else if (*tr.outcome != msg) ++st.wrong;
    }
    rep.bottom_count = st.bottom;
    rep.wrong_message_count = st.wrong;
    rep.delta_empirical = trials == 0 ? 0.0 : static_cast<double>(st.bottom) / static_cast<double>(trials);
    rep.by_strategy.push_back(std::move(st));
    return rep;
}

struct ExhaustiveBestResult {
    double delta = 0.0;
    std::vector<std::size_t> write_set; // witness
    std::vector<std::vector<Fe>> error; // witness, aligned with write_set
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

/// Exact worst-case oracle: enumerates every write set of budget size and
/// every error vector on it, measures the failure frequency over fresh
/// encodings of msg, and returns the maximum with a witness. The search space
/// C(N, b) * q^(b*u) must stay under cap; this is a desk-scale tool.
inline ExhaustiveBestResult exhaustive_best(const AdversarySpec& spec, const LvParams& p,
                                            const Message& msg, std::uint64_t cap,
                                            std::uint64_t encodings_per_error, std::uint64_t seed) {
    const std::size_t n = p.block_len;
    const std::size_t budget = write_budget(spec, n);
    const std::uint64_t q = p.field.modulus();

    const std::uint64_t vectors = detail::checked_pow(q, budget * p.u, cap);
    const std::uint64_t sets = detail::binomial(n, budget);
    if (vectors > cap || sets > cap || vectors > cap / std::max<std::uint64_t>(sets, 1))
        throw CapExceededError("exhaustive_best: search space exceeds cap");

    ExhaustiveBestResult best;
    if (budget == 0) {
        best.delta = 0.0; // no write capability: the decoder sees the clean word
        return best;
    }

    std::vector<std::size_t> set(budget);
    for (std::size_t i = 0; i < budget; ++i) set[i] = i;
    std::uint64_t stream = 0;
    for (;;) {
        std::vector<Fe> flat(budget * p.u, 0);
        for (std::uint64_t it = 0; it < vectors; ++it) {
            std::uint64_t failures = 0;
            for (std::uint64_t enc = 0; enc < encodings_per_error; ++enc) {
                auto rng = make_stream(seed, stream++);
                LvCodeword c = lv_encode(p, msg, rng);
                for (std::size_t k = 0; k < budget; ++k)
                    for (std::size_t s = 0; s < p.u; ++s)
                        c[set[k]][s] = p.field.add(c[set[k]][s], flat[k * p.u + s]);
                DecodeOutcome out = lv_decode(p, c);
                if (!out || *out != msg) ++failures;
            }
            const double rate = static_cast<double>(failures) / static_cast<double>(encodings_per_error);
            if (rate > best.delta) {
                best.delta = rate;
                best.write_set = set;
                best.error.assign(budget, std::vector<Fe>(p.u));
                for (std::size_t k = 0; k < budget; ++k)
                    for (std::size_t s = 0; s < p.u; ++s) best.error[k][s] = flat[k * p.u + s];
            }
            for (std::size_t j = 0; j < flat.size(); ++j) { // odometer over error symbols
                if (++flat[j] < q) break;
                flat[j] = 0;
            }
        }
        // next combination in lexicographic order
        std::size_t i = budget;
        while (i > 0 && set[i - 1] == n - budget + (i - 1)) --i;
        if (i == 0) break;
        ++set[i - 1];
        for (std::size_t j = i; j < budget; ++j) set[j] = set[j - 1] + 1;
    }
    return best;
}

/// One-round reliable transmission over N node-disjoint paths: component i of
/// the codeword travels on path i, and the adversary reads and rewrites
/// exactly the corrupted paths.
inline DecodeOutcome rmt_transmit(const LvParams& p, const Message& msg,
                                  const std::vector<std::size_t>& corrupt_paths,
                                  StrategyKind strategy, std::uint64_t seed) {
    for (std::size_t i : corrupt_paths)
        if (i >= p.block_len) throw std::invalid_argument("rmt: path index out of range");
    std::vector<std::size_t> dedup(corrupt_paths);
    std::sort(dedup.begin(), dedup.end());
    if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
        throw std::invalid_argument("rmt: duplicate corrupt path");

    auto enc_rng = make_stream(seed, 0);
    LvCodeword sent = lv_encode(p, msg, enc_rng);
    if (corrupt_paths.empty()) return lv_decode(p, sent);

    auto policy = make_policy(strategy, make_stream(seed, 1));
    std::vector<std::vector<Fe>> observed;
    for (std::size_t i : corrupt_paths) observed.push_back(sent[i]);
    auto errs = policy->make_error(p, corrupt_paths, observed, corrupt_paths);

    LvCodeword received = sent;
    for (std::size_t k = 0; k < corrupt_paths.size(); ++k)
        for (std::size_t s = 0; s < p.u; ++s)
            received[corrupt_paths[k]][s] = p.field.add(received[corrupt_paths[k]][s], errs[k][s]);
    return lv_decode(p, received);
}

/// Symbols on the wire per message symbol: (N*u) / (N*u*R) = 1/R exactly.
inline Rational transmission_rate(const LvParams& p) {
    return Rational{static_cast<std::int64_t>(p.block_len) * static_cast<std::int64_t>(p.u),
                    static_cast<std::int64_t>(p.msg_len)};
}

} // namespace lvadv
