#include "ocssg/oracle.hpp"

#include "ocssg/chain.hpp"
#include "ocssg/ssg.hpp"

#include <random>
#include <stdexcept>

namespace ocssg {

namespace {

struct Controlled {
    std::vector<StateIndex> states;
    std::size_t space = 1;
};

Controlled controlled_by(const Arena& game, Owner o, std::size_t limit)
{
    Controlled c;
    for (StateIndex s = 0; s < game.size(); ++s) {
        if (game.owner[s] != o)
            continue;
        c.states.push_back(s);
        if (c.space > limit / game.edges[s].size())
            throw OracleTooLarge("enumerate_solve: more than " + std::to_string(limit) + " profiles");
        c.space *= game.edges[s].size();
    }
    return c;
}

void decode(const Arena& game, const Controlled& c, std::size_t code, std::vector<int>& choice)
{
    for (StateIndex s : c.states) {
        const std::size_t k = game.edges[s].size();
        choice[s] = static_cast<int>(code % k);
        code /= k;
    }
}

void take_min(std::vector<Rational>& acc, const std::vector<Rational>& v)
{
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (v[i] < acc[i])
            acc[i] = v[i];
}

void take_max(std::vector<Rational>& acc, const std::vector<Rational>& v)
{
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (v[i] > acc[i])
            acc[i] = v[i];
}

PureMemorylessStrategy strategy_of(const Arena& game, const Controlled& c, std::size_t code, Player p)
{
    PureMemorylessStrategy s{p, std::vector<int>(game.size(), -1)};
    decode(game, c, code, s.choice);
    return s;
}

// slots: number of objectives evaluated per profile.
template <class Eval>
std::vector<SolveResult> enumerate_core(const Arena& game, std::size_t slots, std::size_t limit, Eval eval)
{
    const auto maxc = controlled_by(game, Owner::Max, limit);
    const auto minc = controlled_by(game, Owner::Min, limit);
    if (maxc.space > limit / minc.space)
        throw OracleTooLarge("enumerate_solve: more than " + std::to_string(limit) + " profiles");
    const std::size_t n = game.size();

    std::vector<std::vector<std::vector<Rational>>> lower(maxc.space);   // [sigma][slot]
    std::vector<std::vector<std::vector<Rational>>> upper(minc.space);   // [pi][slot]
    std::vector<int> choice(n, -1);
    for (std::size_t a = 0; a < maxc.space; ++a) {
        decode(game, maxc, a, choice);
        for (std::size_t b = 0; b < minc.space; ++b) {
            decode(game, minc, b, choice);
            std::vector<std::vector<Rational>> v = eval(induce_chain(game, choice));
            if (b == 0)
                lower[a] = v;
            else
                for (std::size_t k = 0; k < slots; ++k)
                    take_min(lower[a][k], v[k]);
            if (a == 0)
                upper[b] = std::move(v);
            else
                for (std::size_t k = 0; k < slots; ++k)
                    take_max(upper[b][k], v[k]);
        }
    }
    std::vector<SolveResult> out(slots);
    for (std::size_t k = 0; k < slots; ++k) {
        std::vector<Rational> val = lower[0][k];
        for (std::size_t a = 1; a < maxc.space; ++a)
            take_max(val, lower[a][k]);
        for (std::size_t a = 0; a < maxc.space; ++a)
            if (lower[a][k] == val) {
                out[k].witness_max = strategy_of(game, maxc, a, Player::Max);
                break;
            }
        for (std::size_t b = 0; b < minc.space; ++b)
            if (upper[b][k] == val) {
                out[k].witness_min = strategy_of(game, minc, b, Player::Min);
                break;
            }
        out[k].value_one_set = value_one_mask(val);
        out[k].values = std::move(val);
    }
    return out;
}

}  // namespace

SolveResult enumerate_solve(const Arena& game, const Objective& objective, std::size_t limit)
{
    if (objective.kind == ObjectiveKind::Reach) {
        auto problems = validate(objective, game.size());
        if (!problems.empty())
            throw std::invalid_argument("enumerate_solve: " + problems.front());
        return enumerate_core(game, 1, limit, [&](const Arena& chain) {
            return std::vector<std::vector<Rational>>{reach_probabilities(chain, objective.target)};
        })[0];
    }
    if (!is_limit(objective.kind))
        throw std::invalid_argument("enumerate_solve: unsupported objective " + tag_name(objective.kind));
    const ObjectiveKind tag = objective.kind;
    return enumerate_core(game, 1, limit, [&](const Arena& chain) {
        return std::vector<std::vector<Rational>>{chain_tail_value(chain, tag)};
    })[0];
}

SolveResult enumerate_solve(const Ssg& game, const Objective& objective, std::size_t limit)
{
    return enumerate_solve(to_arena(game), objective, limit);
}

std::map<ObjectiveKind, SolveResult> enumerate_limit_values(const Arena& game, std::size_t limit)
{
    auto results = enumerate_core(game, std::size(kLimitTags), limit, [&](const Arena& chain) {
        auto all = chain_tail_values(chain);
        std::vector<std::vector<Rational>> v;
        for (ObjectiveKind tag : kLimitTags)
            v.push_back(std::move(all[tag]));
        return v;
    });
    std::map<ObjectiveKind, SolveResult> out;
    for (std::size_t k = 0; k < std::size(kLimitTags); ++k)
        out[kLimitTags[k]] = std::move(results[k]);
    return out;
}

std::vector<Rational> bounded_counter_value(const Arena& game, const Objective& objective, int cap)
{
    const bool term = objective.kind == ObjectiveKind::Term;
    if (!term && objective.kind != ObjectiveKind::AllGeqZero)
        throw std::invalid_argument("bounded_counter_value: Term or All(>=0) only");
    const int start = term ? objective.j : 1;
    if (start < 1 || start > cap)
        throw std::invalid_argument("bounded_counter_value: initial counter outside [1, cap]");
    const std::size_t n = game.size();
    const StateIndex dead = static_cast<StateIndex>(n * cap);
    const StateIndex capped = dead + 1;
    Arena u;
    u.owner.resize(n * cap + 2);
    u.edges.resize(n * cap + 2);
    u.names.resize(n * cap + 2);
    auto at = [&](StateIndex s, int c) { return static_cast<StateIndex>((c - 1) * n + s); };
    for (int c = 1; c <= cap; ++c)
        for (StateIndex s = 0; s < n; ++s) {
            const StateIndex v = at(s, c);
            // All(>=0) is the complement of reaching 0 with the roles swapped.
            Owner o = game.owner[s];
            if (!term && o != Owner::Random)
                o = o == Owner::Max ? Owner::Min : Owner::Max;
            u.owner[v] = o;
            u.names[v] = game.names[s] + "@" + std::to_string(c);
            for (const auto& e : game.edges[s]) {
                const int next = c + e.weight;
                StateIndex t = next <= 0 ? dead : next > cap ? capped : at(e.target, next);
                u.edges[v].push_back(Edge{t, e.probability, e.weight});
            }
        }
    for (StateIndex v : {dead, capped}) {
        u.owner[v] = Owner::Random;
        u.names[v] = v == dead ? "terminated" : "capped";
        u.edges[v] = {Edge{v, Rational(1), 0}};
    }
    StateMask goal(u.size(), false);
    goal[dead] = true;
    auto r = solve_reachability_game(u, goal);
    std::vector<Rational> out(n);
    for (StateIndex s = 0; s < n; ++s)
        out[s] = term ? r.values[at(s, start)] : Rational(1 - r.values[at(s, start)]);
    return out;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial)));
}

namespace {

// Integer thresholds over the common denominator of a random state's edges.
struct Sampler {
    std::uint64_t range = 1;
    std::vector<std::uint64_t> cumulative;
};

struct Runner {
    const Arena& game;
    std::vector<Sampler> samplers;
    const PureMemorylessStrategy* memoryless[2] = {nullptr, nullptr};
    const FiniteMemoryStrategy* finite[2] = {nullptr, nullptr};

    Runner(const Arena& g, const std::vector<AnyStrategy>& strategies) : game(g), samplers(g.size())
    {
        for (const auto& s : strategies) {
            if (const auto* m = std::get_if<PureMemorylessStrategy>(&s))
                memoryless[m->player == Player::Max ? 0 : 1] = m;
            else {
                const auto& f = std::get<FiniteMemoryStrategy>(s);
                finite[f.player == Player::Max ? 0 : 1] = &f;
            }
        }
        for (StateIndex v = 0; v < g.size(); ++v) {
            if (g.owner[v] == Owner::Random) {
                Integer l = 1;
                for (const auto& e : g.edges[v])
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.probability.get_den().get_mpz_t());
                if (!l.fits_ulong_p())
                    throw std::invalid_argument("simulate: probability denominators too large");
                Sampler sm;
                sm.range = l.get_ui();
                std::uint64_t acc = 0;
                for (const auto& e : g.edges[v]) {
                    Integer part = e.probability.get_num() * (l / e.probability.get_den());
                    acc += part.get_ui();
                    sm.cumulative.push_back(acc);
                }
                samplers[v] = std::move(sm);
                continue;
            }
            const int p = g.owner[v] == Owner::Max ? 0 : 1;
            if (!memoryless[p] && !finite[p])
                throw std::invalid_argument("simulate: no strategy resolves state " + g.names[v]);
            if (memoryless[p] && (memoryless[p]->choice.size() != g.size() || memoryless[p]->choice[v] < 0 ||
                                  static_cast<std::size_t>(memoryless[p]->choice[v]) >= g.edges[v].size()))
                throw std::invalid_argument("simulate: strategy leaves state " + g.names[v] + " unresolved");
        }
    }

    static std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t range)
    {
        // Rejection keeps the draw unbiased: accept only x >= 2^64 mod range.
        const std::uint64_t floor = (0 - range) % range;
        for (;;) {
            std::uint64_t x = eng();
            if (x >= floor)
                return x % range;
        }
    }

    // observer(step_index_after_move, sum, state) returns false to stop.
    template <class Observer>
    TrialStats run(std::uint64_t seed, StateIndex start, std::size_t steps, Observer&& observe) const
    {
        std::mt19937_64 eng(seed);
        TrialStats t;
        StateIndex v = start;
        long sum = 0;
        std::size_t mem[2] = {finite[0] ? finite[0]->initial : 0, finite[1] ? finite[1]->initial : 0};
        for (std::size_t step = 0; step < steps; ++step) {
            std::size_t k = 0;
            if (game.owner[v] == Owner::Random) {
                const auto& sm = samplers[v];
                const std::uint64_t x = uniform_below(eng, sm.range);
                while (x >= sm.cumulative[k])
                    ++k;
            } else {
                const int p = game.owner[v] == Owner::Max ? 0 : 1;
                k = static_cast<std::size_t>(memoryless[p] ? memoryless[p]->choice[v] : finite[p]->choice[mem[p]][v]);
            }
            for (int p = 0; p < 2; ++p)
                if (finite[p])
                    mem[p] = finite[p]->update[mem[p]][v][k];
            const Edge& e = game.edges[v][k];
            sum += e.weight;
            v = e.target;
            t.min_prefix = std::min(t.min_prefix, sum);
            t.max_prefix = std::max(t.max_prefix, sum);
            t.steps_run = step + 1;
            if (!observe(step + 1, sum, v))
                break;
        }
        t.final_sum = sum;
        return t;
    }
};

}  // namespace

RunStatistics simulate(const Arena& game, const std::vector<AnyStrategy>& strategies, const SimulationConfig& config)
{
    Runner runner(game, strategies);
    RunStatistics out;
    out.seed = config.seed;
    out.trials = config.trials;
    out.steps = config.steps;
    double mean_sum = 0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        std::optional<std::size_t> hit;
        auto t = runner.run(trial_seed(config.seed, trial), config.start, config.steps,
                            [&](std::size_t step, long sum, StateIndex) {
                                if (config.j && !hit && sum <= -*config.j) {
                                    hit = step;
                                    return !config.stop_at_termination;
                                }
                                return true;
                            });
        t.hit_time = hit;
        if (hit)
            ++out.terminated;
        if (t.steps_run > 0)
            mean_sum += static_cast<double>(t.final_sum) / static_cast<double>(t.steps_run);
        out.min_prefix = trial == 0 ? t.min_prefix : std::min(out.min_prefix, t.min_prefix);
        out.max_prefix = trial == 0 ? t.max_prefix : std::max(out.max_prefix, t.max_prefix);
        out.per_trial.push_back(t);
    }
    if (config.trials > 0) {
        out.termination_frequency = static_cast<double>(out.terminated) / static_cast<double>(config.trials);
        out.mean_payoff_average = mean_sum / static_cast<double>(config.trials);
    }
    return out;
}

double estimate_objective(const Arena& game, const std::vector<AnyStrategy>& strategies, const Objective& objective,
                          long bound, const SimulationConfig& config)
{
    if (bound <= 0)
        throw std::invalid_argument("estimate_objective: bound must be positive");
    Runner runner(game, strategies);
    const ObjectiveKind kind = objective.kind;
    ObjectiveKind base = kind;
    bool negate = false;
    if (kind == ObjectiveKind::LimInfGtMinusInf || kind == ObjectiveKind::LimInfLtPlusInf ||
        kind == ObjectiveKind::MeanLeq) {
        base = complement(kind);
        negate = true;
    } else if (kind == ObjectiveKind::AllGeqZero) {
        base = ObjectiveKind::Term;
        negate = true;
    }
    const long floor = kind == ObjectiveKind::AllGeqZero ? -1 : -static_cast<long>(objective.j);
    if (kind == ObjectiveKind::Reach && objective.target.size() != game.size())
        throw std::invalid_argument("estimate_objective: Reach target does not match the game");
    if (kind == ObjectiveKind::Term && objective.j < 1)
        throw std::invalid_argument("estimate_objective: Term requires j >= 1");

    std::size_t hits = 0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        bool event = false;
        bool above = false;
        if (base == ObjectiveKind::Reach && objective.target[config.start]) {
            ++hits;
            continue;
        }
        auto t = runner.run(trial_seed(config.seed, trial), config.start, config.steps,
                            [&](std::size_t, long sum, StateIndex v) {
                                switch (base) {
                                case ObjectiveKind::LimInfEqMinusInf:
                                    event = sum < -bound;
                                    return !event;
                                case ObjectiveKind::LimInfEqPlusInf:
                                    if (sum > bound) {
                                        above = true;
                                    } else if (above) {
                                        above = false;
                                        return false;  // dropped back after exceeding
                                    }
                                    return true;
                                case ObjectiveKind::Term:
                                    event = sum <= floor;
                                    return !event;
                                case ObjectiveKind::Reach:
                                    event = objective.target[v];
                                    return !event;
                                default:
                                    return true;
                                }
                            });
        if (base == ObjectiveKind::LimInfEqPlusInf)
            event = above;
        if (base == ObjectiveKind::MeanGt)
            event = t.final_sum > 0;
        if (event != negate)
            ++hits;
    }
    return config.trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(config.trials);
}

}  // namespace ocssg
