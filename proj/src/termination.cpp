#include "ocssg/termination.hpp"

#include "ocssg/mdp.hpp"
#include "ocssg/ssg.hpp"

#include <stdexcept>

namespace ocssg {

StateIndex LevelGame::index(StateIndex u, int level) const
{
    return static_cast<StateIndex>(u * levels() + (level + j));
}

std::pair<StateIndex, int> LevelGame::base_of(StateIndex v) const
{
    return {static_cast<StateIndex>(v / levels()), static_cast<int>(v % levels()) - j};
}

LevelGame build_level_game_window(const Arena& game, const StateMask& safe, int j, int top)
{
    if (j < 1 || top < 1)
        throw std::invalid_argument("level game: window must contain levels -j..1");
    LevelGame lg;
    lg.j = j;
    lg.top = top;
    lg.base_size = game.size();
    const std::size_t total = game.size() * static_cast<std::size_t>(lg.levels());
    lg.arena.owner.resize(total);
    lg.arena.edges.resize(total);
    lg.arena.names.resize(total);
    lg.target.assign(total, false);
    for (StateIndex u = 0; u < game.size(); ++u) {
        for (int i = -j; i <= top; ++i) {
            const StateIndex v = lg.index(u, i);
            lg.arena.owner[v] = game.owner[u];
            lg.arena.names[v] = game.names[u] + "@" + std::to_string(i);
            lg.target[v] = i == -j || safe[u];
            if (i == -j || i == top) {
                lg.arena.edges[v] = {Edge{v, Rational(1), 0}};
                continue;
            }
            for (const auto& e : game.edges[u])
                lg.arena.edges[v].push_back(Edge{lg.index(e.target, i + e.weight), e.probability, e.weight});
        }
    }
    return lg;
}

LevelGame build_level_game(const Arena& game, const StateMask& safe, int j)
{
    const int n = static_cast<int>(game.size());
    if (j < 1 || j >= n)
        throw std::invalid_argument("build_level_game: need 0 < j < |V|; larger j uses the long-run branch");
    return build_level_game_window(game, safe, j, n - j);
}

StateMask liminf_minus_inf_safe(const Arena& game)
{
    return solve_limit_ssg(game, ObjectiveKind::LimInfEqMinusInf).result.value_one_set;
}

TermDecision decide_term_one(const Arena& game, StateIndex s, int j)
{
    if (j < 1)
        throw std::invalid_argument("decide_term_one: j must be positive");
    TermDecision d;
    d.safe = liminf_minus_inf_safe(game);
    if (j >= static_cast<int>(game.size())) {
        d.branch = TermBranch::LongRun;
        d.value_one = d.safe[s];
        return d;
    }
    auto lg = build_level_game(game, d.safe, j);
    d.level_winning = almost_sure_reach(lg.arena, lg.target);
    d.value_one = d.level_winning[lg.index(s, 0)];
    return d;
}

TermDecision decide_term_one(const OcSsg& game, StateIndex s, int j) { return decide_term_one(to_arena(game), s, j); }

bool decide_term_one_widened(const Arena& game, StateIndex s, int j)
{
    auto lg = build_level_game_window(game, liminf_minus_inf_safe(game), j, static_cast<int>(game.size()));
    return almost_sure_reach(lg.arena, lg.target)[lg.index(s, 0)];
}

bool decide_term_zero(const Arena& game, StateIndex s, int j)
{
    if (j < 1)
        throw std::invalid_argument("decide_term_zero: j must be positive");
    // Random states act for Max; Min must keep the counter at or above 1.
    Arena g = game;
    for (auto& o : g.owner)
        if (o == Owner::Random)
            o = Owner::Max;
    auto credits = energy_min_credit(g, Player::Min);
    return credits.credit[s] && *credits.credit[s] <= j - 1;
}

bool decide_term_zero(const OcSsg& game, StateIndex s, int j) { return decide_term_zero(to_arena(game), s, j); }

TermStrategies synthesize_term_strategies(const Arena& game, StateIndex s, int j)
{
    if (j < 1)
        throw std::invalid_argument("synthesize_term_strategies: j must be positive");
    const std::size_t n = game.size();
    auto sol = solve_limit_ssg(game, ObjectiveKind::LimInfEqMinusInf);
    const StateMask& safe = sol.result.value_one_set;
    TermStrategies out;

    if (j >= static_cast<int>(n)) {
        out.value_one = safe[s];
        if (out.value_one) {
            out.max = sol.max_witness;
        } else {
            FiniteMemoryStrategy fm;
            fm.player = Player::Min;
            fm.memory_size = 1;
            fm.choice = {sol.min_witness.choice};
            fm.update.assign(1, std::vector<std::vector<std::size_t>>(n));
            for (std::size_t u = 0; u < n; ++u)
                fm.update[0][u].assign(game.edges[u].size(), 0);
            out.min = std::move(fm);
        }
        return out;
    }

    auto lg = build_level_game(game, safe, j);
    auto as = almost_sure_reach_game(lg.arena, lg.target);
    const StateIndex start = lg.index(s, 0);
    out.value_one = as.winning[start];

    if (out.value_one) {
        // Explore what the attractor strategy can reach before R, then let each
        // unsafe state keep the choice it makes at its highest reachable level.
        StateMask seen(lg.arena.size(), false);
        std::vector<StateIndex> work{start};
        seen[start] = true;
        std::vector<int> highest(n, -j - 1);
        while (!work.empty()) {
            StateIndex v = work.back();
            work.pop_back();
            if (lg.target[v])
                continue;
            auto [u, i] = lg.base_of(v);
            if (i > highest[u])
                highest[u] = i;
            const auto& es = lg.arena.edges[v];
            if (lg.arena.owner[v] == Owner::Max) {
                StateIndex t = es[as.max_choice[v]].target;
                if (!seen[t]) {
                    seen[t] = true;
                    work.push_back(t);
                }
                continue;
            }
            for (const auto& e : es)
                if (!seen[e.target]) {
                    seen[e.target] = true;
                    work.push_back(e.target);
                }
        }
        PureMemorylessStrategy sigma{Player::Max, std::vector<int>(n, -1)};
        for (StateIndex u = 0; u < n; ++u) {
            if (game.owner[u] != Owner::Max)
                continue;
            if (safe[u])
                sigma.choice[u] = sol.max_witness.choice[u];
            else if (highest[u] > -j && highest[u] < lg.top)
                sigma.choice[u] = as.max_choice[lg.index(u, highest[u])];
            else
                sigma.choice[u] = 0;
        }
        out.max = std::move(sigma);
        return out;
    }

    // Memory m < |V|-1 stands for interior level m-j+1; memory |V|-1 means the
    // counter reached |V| and Min keeps its long-run strategy from then on.
    const std::size_t top_memory = n - 1;
    const int top = lg.top;
    FiniteMemoryStrategy fm;
    fm.player = Player::Min;
    fm.memory_size = n;
    fm.initial = static_cast<std::size_t>(j - 1);
    fm.update.assign(n, std::vector<std::vector<std::size_t>>(n));
    fm.choice.assign(n, std::vector<int>(n, -1));
    for (std::size_t m = 0; m < n; ++m) {
        const int level = static_cast<int>(m) - j + 1;
        for (StateIndex u = 0; u < n; ++u) {
            auto& up = fm.update[m][u];
            for (const auto& e : game.edges[u]) {
                if (m == top_memory) {
                    up.push_back(top_memory);
                    continue;
                }
                const int next = level + e.weight;
                if (next >= top)
                    up.push_back(top_memory);
                else if (next <= -j)
                    up.push_back(0);
                else
                    up.push_back(static_cast<std::size_t>(next + j - 1));
            }
            if (game.owner[u] != Owner::Min)
                continue;
            fm.choice[m][u] = m == top_memory ? sol.min_witness.choice[u] : as.min_choice[lg.index(u, level)];
        }
    }
    out.min = std::move(fm);
    return out;
}

Arena memory_product(const Arena& game, const FiniteMemoryStrategy& strategy)
{
    const std::size_t n = game.size();
    const Owner fixed = owner_of(strategy.player);
    Arena p;
    for (std::size_t m = 0; m < strategy.memory_size; ++m) {
        for (StateIndex u = 0; u < n; ++u) {
            p.names.push_back(game.names[u] + "#" + std::to_string(m));
            std::vector<Edge> es;
            for (std::size_t k = 0; k < game.edges[u].size(); ++k) {
                if (game.owner[u] == fixed && static_cast<int>(k) != strategy.choice[m][u])
                    continue;
                const Edge& e = game.edges[u][k];
                auto next = strategy.update[m][u][k];
                es.push_back(Edge{static_cast<StateIndex>(next * n + e.target),
                                  game.owner[u] == fixed ? Rational(1) : e.probability, e.weight});
            }
            if (es.empty())
                throw std::invalid_argument("memory_product: strategy leaves a state unresolved");
            p.owner.push_back(game.owner[u] == fixed ? Owner::Random : game.owner[u]);
            p.edges.push_back(std::move(es));
        }
    }
    return p;
}

bool term_value_one_against(const Arena& game, const FiniteMemoryStrategy& strategy, StateIndex s, int j)
{
    Arena p = memory_product(game, strategy);
    return decide_term_one(p, static_cast<StateIndex>(strategy.initial * game.size() + s), j).value_one;
}

bool term_value_one_against(const Arena& game, const PureMemorylessStrategy& strategy, StateIndex s, int j)
{
    return decide_term_one(fix_strategy(game, strategy), s, j).value_one;
}

}  // namespace ocssg
