#include "ocssg/ssg.hpp"

#include "ocssg/mdp.hpp"

#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

namespace ocssg {

std::size_t strategy_space(const Arena& game, Player p)
{
    const Owner o = owner_of(p);
    std::size_t total = 1;
    for (std::size_t s = 0; s < game.size(); ++s) {
        if (game.owner[s] != o)
            continue;
        std::size_t k = game.edges[s].size();
        if (total > std::numeric_limits<std::size_t>::max() / k)
            return std::numeric_limits<std::size_t>::max();
        total *= k;
    }
    return total;
}

SolveResult best_response(const Arena& game, const PureMemorylessStrategy& fixed, ObjectiveKind tag)
{
    Arena g = fix_strategy(game, fixed);
    const Player other = opponent(fixed.player);
    SolveResult r = quantitative_limit(g, tag, other == Player::Max ? Direction::Max : Direction::Min);
    auto reply = r.witness_max ? *r.witness_max : *r.witness_min;
    reply.player = other;
    // Only the responder's own states carry choices.
    for (std::size_t s = 0; s < game.size(); ++s)
        if (game.owner[s] != owner_of(other))
            reply.choice[s] = -1;
    r.witness_max.reset();
    r.witness_min.reset();
    if (other == Player::Max) {
        r.witness_max = reply;
        r.witness_min = fixed;
    } else {
        r.witness_min = reply;
        r.witness_max = fixed;
    }
    return r;
}

bool mutual_best_responses(const Arena& game, ObjectiveKind tag, const std::vector<Rational>& values,
                           const PureMemorylessStrategy& max_strategy, const PureMemorylessStrategy& min_strategy)
{
    return best_response(game, min_strategy, tag).values == values &&
           best_response(game, max_strategy, tag).values == values;
}

namespace {

PureMemorylessStrategy first_strategy(const Arena& game, Player p)
{
    PureMemorylessStrategy s{p, std::vector<int>(game.size(), -1)};
    for (std::size_t v = 0; v < game.size(); ++v)
        if (game.owner[v] == owner_of(p))
            s.choice[v] = 0;
    return s;
}

// Mixed-radix successor over the player's choices; false after the last one.
bool next_strategy(const Arena& game, PureMemorylessStrategy& s)
{
    const Owner o = owner_of(s.player);
    for (std::size_t v = 0; v < game.size(); ++v) {
        if (game.owner[v] != o)
            continue;
        if (static_cast<std::size_t>(s.choice[v]) + 1 < game.edges[v].size()) {
            ++s.choice[v];
            return true;
        }
        s.choice[v] = 0;
    }
    return false;
}

bool pointwise_leq(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

struct Improvement {
    bool certified = false;
    int rounds = 0;
    std::vector<Rational> values;
    PureMemorylessStrategy max_witness;
    PureMemorylessStrategy min_witness;
};

// Min improves against Max's exact best response. For tail objectives a Min
// state's value is the value of its chosen successor, so switching to a
// strictly smaller successor never raises any value.
Improvement improve(const Arena& game, ObjectiveKind tag)
{
    Improvement out;
    PureMemorylessStrategy pi = first_strategy(game, Player::Min);
    std::set<std::vector<int>> seen;
    for (;;) {
        SolveResult br;
        for (;;) {
            if (!seen.insert(pi.choice).second)
                return out;
            ++out.rounds;
            br = best_response(game, pi, tag);
            const auto& v = br.values;
            bool changed = false;
            for (std::size_t s = 0; s < game.size(); ++s) {
                if (game.owner[s] != Owner::Min)
                    continue;
                const auto& es = game.edges[s];
                Rational best = v[es[pi.choice[s]].target];
                for (const auto& e : es)
                    if (v[e.target] < best)
                        best = v[e.target];
                if (best < v[es[pi.choice[s]].target]) {
                    for (std::size_t k = 0; k < es.size(); ++k)
                        if (v[es[k].target] == best) {
                            pi.choice[s] = static_cast<int>(k);
                            break;
                        }
                    changed = true;
                }
            }
            if (!changed)
                break;
        }
        const auto& v = br.values;
        const PureMemorylessStrategy sigma = *br.witness_max;
        SolveResult reply = best_response(game, sigma, tag);
        if (reply.values == v) {
            out.certified = true;
            out.values = v;
            out.max_witness = sigma;
            out.min_witness = pi;
            return out;
        }
        // Local optimum that is not an equilibrium: try to escape through
        // Min's reply to sigma, whole or only where it is strictly better.
        const PureMemorylessStrategy whole = *reply.witness_min;
        PureMemorylessStrategy mixed = pi;
        for (std::size_t s = 0; s < game.size(); ++s)
            if (game.owner[s] == Owner::Min && reply.values[s] < v[s])
                mixed.choice[s] = whole.choice[s];
        bool escaped = false;
        for (const PureMemorylessStrategy* cand : {&whole, static_cast<const PureMemorylessStrategy*>(&mixed)}) {
            if (seen.count(cand->choice))
                continue;
            auto w = best_response(game, *cand, tag).values;
            if (pointwise_leq(w, v) && w != v) {
                pi = *cand;
                escaped = true;
                break;
            }
        }
        if (!escaped)
            return out;
    }
}

struct Enumeration {
    std::vector<Rational> values;
    PureMemorylessStrategy max_witness;
    PureMemorylessStrategy min_witness;
};

Enumeration enumerate(const Arena& game, ObjectiveKind tag, std::size_t limit)
{
    if (strategy_space(game, Player::Min) > limit)
        throw std::length_error("solve_limit_ssg: strategy space too large for enumeration");
    std::vector<std::pair<PureMemorylessStrategy, SolveResult>> table;
    PureMemorylessStrategy pi = first_strategy(game, Player::Min);
    std::vector<Rational> val;
    do {
        auto r = best_response(game, pi, tag);
        if (val.empty()) {
            val = r.values;
        } else {
            for (std::size_t s = 0; s < val.size(); ++s)
                if (r.values[s] < val[s])
                    val[s] = r.values[s];
        }
        table.emplace_back(pi, std::move(r));
    } while (next_strategy(game, pi));

    Enumeration out;
    out.values = val;
    const SolveResult* best = nullptr;
    for (const auto& [p, r] : table)
        if (r.values == val) {
            out.min_witness = p;
            best = &r;
            break;
        }
    if (!best)
        throw std::logic_error("solve_limit_ssg: no memoryless Min strategy attains the value");
    if (best_response(game, *best->witness_max, tag).values == val) {
        out.max_witness = *best->witness_max;
        return out;
    }
    if (strategy_space(game, Player::Max) > limit)
        throw std::length_error("solve_limit_ssg: Max strategy space too large to search for a witness");
    PureMemorylessStrategy sigma = first_strategy(game, Player::Max);
    do {
        if (best_response(game, sigma, tag).values == val) {
            out.max_witness = sigma;
            return out;
        }
    } while (next_strategy(game, sigma));
    throw std::logic_error("solve_limit_ssg: no memoryless Max strategy attains the value");
}

}  // namespace

SsgSolve solve_limit_ssg(const Arena& game, ObjectiveKind tag, const SsgOptions& options)
{
    if (!is_limit(tag))
        throw std::invalid_argument("solve_limit_ssg: not a limit objective");
    SsgSolve out;
    Improvement imp = improve(game, tag);
    out.improvement_rounds = imp.rounds;
    out.certified = imp.certified;
    const std::size_t space = strategy_space(game, Player::Min);
    std::optional<Enumeration> en;
    if (space <= options.enumeration_limit || (!imp.certified && space <= options.fallback_limit))
        en = enumerate(game, tag, options.fallback_limit);
    if (imp.certified) {
        if (en && en->values != imp.values)
            throw std::logic_error("solve_limit_ssg: improvement and enumeration disagree");
        out.method = SolveMethod::Improvement;
        out.cross_checked = en.has_value();
        out.result.values = std::move(imp.values);
        out.max_witness = imp.max_witness;
        out.min_witness = imp.min_witness;
    } else {
        if (!en)
            throw std::length_error("solve_limit_ssg: improvement uncertified and enumeration too large");
        out.method = SolveMethod::Enumeration;
        out.result.values = std::move(en->values);
        out.max_witness = en->max_witness;
        out.min_witness = en->min_witness;
    }
    out.result.witness_max = out.max_witness;
    out.result.witness_min = out.min_witness;
    out.result.value_one_set = value_one_mask(out.result.values);
    return out;
}

SsgSolve solve_limit_ssg(const Ssg& game, ObjectiveKind tag, const SsgOptions& options)
{
    return solve_limit_ssg(to_arena(game), tag, options);
}

bool decide_threshold(const Arena& game, ObjectiveKind tag, StateIndex s, const Rational& p, Relation relation)
{
    if (p < 0 || p > 1)
        throw std::invalid_argument("decide_threshold: threshold outside [0,1]");
    const Rational v = solve_limit_ssg(game, tag).result.values.at(s);
    return relation == Relation::Greater ? v > p : v >= p;
}

ReachGameSolve solve_reachability_game(const Arena& game, const StateMask& target)
{
    ReachGameSolve out;
    PureMemorylessStrategy sigma = first_strategy(game, Player::Max);
    std::set<std::vector<int>> seen;
    std::vector<Rational> v;
    for (;;) {
        if (!seen.insert(sigma.choice).second)
            throw std::logic_error("solve_reachability_game: strategy improvement revisited a strategy");
        v = solve_reachability(fix_strategy(game, sigma), target, Direction::Min).values;
        bool changed = false;
        for (std::size_t s = 0; s < game.size(); ++s) {
            if (game.owner[s] != Owner::Max || target[s])
                continue;
            const auto& es = game.edges[s];
            Rational best = v[es[sigma.choice[s]].target];
            for (const auto& e : es)
                if (v[e.target] > best)
                    best = v[e.target];
            if (best > v[es[sigma.choice[s]].target]) {
                for (std::size_t k = 0; k < es.size(); ++k)
                    if (v[es[k].target] == best) {
                        sigma.choice[s] = static_cast<int>(k);
                        break;
                    }
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    // Value-preserving choices are optimal for the avoiding player.
    PureMemorylessStrategy pi = first_strategy(game, Player::Min);
    for (std::size_t s = 0; s < game.size(); ++s) {
        if (game.owner[s] != Owner::Min)
            continue;
        const auto& es = game.edges[s];
        for (std::size_t k = 0; k < es.size(); ++k)
            if (v[es[k].target] < v[es[pi.choice[s]].target])
                pi.choice[s] = static_cast<int>(k);
    }
    out.values = std::move(v);
    out.max_witness = std::move(sigma);
    out.min_witness = std::move(pi);
    return out;
}

}  // namespace ocssg
