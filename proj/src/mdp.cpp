#include "ocssg/mdp.hpp"

#include "ocssg/chain.hpp"
#include "ocssg/graph.hpp"
#include "ocssg/linear.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ocssg {

Player controller_of(const Arena& mdp)
{
    bool has_max = false, has_min = false;
    for (auto o : mdp.owner) {
        has_max |= o == Owner::Max;
        has_min |= o == Owner::Min;
    }
    if (has_max && has_min)
        throw std::invalid_argument("expected a one-player model, both Max and Min own states");
    return has_min ? Player::Min : Player::Max;
}

Arena as_maximizer(const Arena& mdp)
{
    controller_of(mdp);
    Arena out = mdp;
    for (auto& o : out.owner)
        if (o == Owner::Min)
            o = Owner::Max;
    return out;
}

SubArena restrict(const Arena& arena, const std::vector<StateIndex>& members,
                  const std::vector<std::vector<int>>& allowed)
{
    SubArena sub;
    sub.to_global = members;
    std::vector<int> local(arena.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        local[members[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < members.size(); ++i) {
        StateIndex g = members[i];
        sub.arena.owner.push_back(arena.owner[g]);
        sub.arena.names.push_back(arena.names[g]);
        std::vector<Edge> es;
        for (int k : allowed[i]) {
            Edge e = arena.edges[g][k];
            if (local[e.target] < 0)
                throw std::invalid_argument("restrict: edge leaves the member set");
            e.target = static_cast<StateIndex>(local[e.target]);
            es.push_back(e);
        }
        sub.arena.edges.push_back(std::move(es));
        sub.edge_index.push_back(allowed[i]);
    }
    return sub;
}

SubArena restrict(const Arena& arena, const Mec& mec) { return restrict(arena, mec.members, mec.allowed); }

namespace {

std::vector<int> first_choices(const Arena& a)
{
    std::vector<int> c(a.size(), -1);
    for (std::size_t s = 0; s < a.size(); ++s)
        if (a.controlled(s))
            c[s] = 0;
    return c;
}

void guard_revisit(std::set<std::vector<int>>& seen, const std::vector<int>& choice, const char* who)
{
    if (!seen.insert(choice).second)
        throw std::logic_error(std::string(who) + ": policy iteration revisited a policy");
}

PureMemorylessStrategy as_strategy(const Arena& original, std::vector<int> choice)
{
    Player p = controller_of(original);
    for (std::size_t s = 0; s < original.size(); ++s)
        if (!original.controlled(s))
            choice[s] = -1;
    return PureMemorylessStrategy{p, std::move(choice)};
}

// Maximal reachability with the least-fixpoint policy evaluation; a local
// optimum is a Bellman fixpoint dominated by the optimum, hence optimal.
std::pair<std::vector<Rational>, std::vector<int>> max_reach(const Arena& a, const StateMask& target)
{
    std::vector<int> choice = first_choices(a);
    std::set<std::vector<int>> seen;
    for (;;) {
        guard_revisit(seen, choice, "max reachability");
        auto v = reach_probabilities(induce_chain(a, choice), target);
        bool changed = false;
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (!a.controlled(s) || target[s])
                continue;
            Rational best = v[a.edges[s][choice[s]].target];
            int arg = -1;
            for (std::size_t k = 0; k < a.edges[s].size(); ++k)
                if (v[a.edges[s][k].target] > best) {
                    best = v[a.edges[s][k].target];
                    arg = static_cast<int>(k);
                }
            if (arg >= 0) {
                for (std::size_t k = 0; k < a.edges[s].size(); ++k)
                    if (v[a.edges[s][k].target] == best) {
                        choice[s] = static_cast<int>(k);
                        break;
                    }
                changed = true;
            }
        }
        if (!changed)
            return {std::move(v), std::move(choice)};
    }
}

// States where the controller can avoid target surely.
StateMask sure_avoid(const Arena& a, const StateMask& target)
{
    StateMask x(a.size());
    for (std::size_t s = 0; s < a.size(); ++s)
        x[s] = !target[s];
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (!x[s])
                continue;
            bool keep;
            if (a.controlled(s))
                keep = std::any_of(a.edges[s].begin(), a.edges[s].end(), [&](const Edge& e) { return x[e.target]; });
            else
                keep = std::all_of(a.edges[s].begin(), a.edges[s].end(), [&](const Edge& e) { return x[e.target]; });
            if (!keep) {
                x[s] = false;
                changed = true;
            }
        }
    }
    return x;
}

std::pair<std::vector<Rational>, std::vector<int>> min_reach(const Arena& a, const StateMask& target)
{
    StateMask zero = sure_avoid(a, target);
    std::vector<int> choice = first_choices(a);
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (!a.controlled(s) || !zero[s])
            continue;
        for (std::size_t k = 0; k < a.edges[s].size(); ++k)
            if (zero[a.edges[s][k].target]) {
                choice[s] = static_cast<int>(k);
                break;
            }
    }
    std::set<std::vector<int>> seen;
    for (;;) {
        guard_revisit(seen, choice, "min reachability");
        auto v = reach_probabilities(induce_chain(a, choice), target);
        bool changed = false;
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (!a.controlled(s) || target[s] || zero[s])
                continue;
            Rational best = v[a.edges[s][choice[s]].target];
            int arg = -1;
            for (std::size_t k = 0; k < a.edges[s].size(); ++k)
                if (v[a.edges[s][k].target] < best) {
                    best = v[a.edges[s][k].target];
                    arg = static_cast<int>(k);
                }
            if (arg >= 0) {
                for (std::size_t k = 0; k < a.edges[s].size(); ++k)
                    if (v[a.edges[s][k].target] == best) {
                        choice[s] = static_cast<int>(k);
                        break;
                    }
                changed = true;
            }
        }
        if (!changed)
            return {std::move(v), std::move(choice)};
    }
}

struct GainBias {
    std::vector<Rational> gain;
    std::vector<Rational> bias;
};

GainBias evaluate_gain(const Arena& chain)
{
    const std::size_t n = chain.size();
    GainBias out{std::vector<Rational>(n), std::vector<Rational>(n)};
    std::vector<Rational> step(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& e : chain.edges[s])
            step[s] += e.probability * e.weight;

    auto dec = bscc_decompose(chain);
    std::vector<bool> recurrent(n, false);
    for (const auto& b : dec.bsccs) {
        auto an = analyze_bscc(chain, b);
        const std::size_t k = b.size();
        std::vector<int> pos(n, -1);
        for (std::size_t i = 0; i < k; ++i)
            pos[b[i]] = static_cast<int>(i);
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
        std::vector<Rational> rhs(k, Rational(0));
        m[0] = an.stationary;
        for (std::size_t i = 1; i < k; ++i) {
            m[i][i] += 1;
            for (const auto& e : chain.edges[b[i]])
                m[i][pos[e.target]] -= e.probability;
            rhs[i] = step[b[i]] - an.mean_payoff;
        }
        auto h = solve_linear_system(m, rhs).x;
        for (std::size_t i = 0; i < k; ++i) {
            out.gain[b[i]] = an.mean_payoff;
            out.bias[b[i]] = h[i];
            recurrent[b[i]] = true;
        }
    }
    const auto& t = dec.transient;
    if (t.empty())
        return out;
    const std::size_t k = t.size();
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < k; ++i)
        pos[t[i]] = static_cast<int>(i);
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> rg(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        m[i][i] += 1;
        for (const auto& e : chain.edges[t[i]]) {
            if (recurrent[e.target])
                rg[i] += e.probability * out.gain[e.target];
            else
                m[i][pos[e.target]] -= e.probability;
        }
    }
    auto g = solve_linear_system(m, rg).x;
    for (std::size_t i = 0; i < k; ++i)
        out.gain[t[i]] = g[i];
    std::vector<Rational> rh(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        rh[i] = step[t[i]] - g[i];
        for (const auto& e : chain.edges[t[i]])
            if (recurrent[e.target])
                rh[i] += e.probability * out.bias[e.target];
    }
    auto h = solve_linear_system(m, rh).x;
    for (std::size_t i = 0; i < k; ++i)
        out.bias[t[i]] = h[i];
    return out;
}

// Multichain gain/bias policy iteration, maximizing.
MeanPayoff max_gain(const Arena& a)
{
    std::vector<int> choice = first_choices(a);
    std::set<std::vector<int>> seen;
    for (;;) {
        guard_revisit(seen, choice, "mean payoff");
        auto ev = evaluate_gain(induce_chain(a, choice));
        bool changed = false;
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (!a.controlled(s))
                continue;
            const auto& es = a.edges[s];
            const Edge& cur = es[choice[s]];
            Rational best_g = ev.gain[cur.target];
            for (const auto& e : es)
                if (ev.gain[e.target] > best_g)
                    best_g = ev.gain[e.target];
            if (best_g > ev.gain[cur.target]) {
                for (std::size_t k = 0; k < es.size(); ++k)
                    if (ev.gain[es[k].target] == best_g) {
                        choice[s] = static_cast<int>(k);
                        break;
                    }
                changed = true;
                continue;
            }
            Rational cur_v = cur.weight + ev.bias[cur.target];
            Rational best_v = cur_v;
            for (const auto& e : es)
                if (ev.gain[e.target] == best_g && e.weight + ev.bias[e.target] > best_v)
                    best_v = e.weight + ev.bias[e.target];
            if (best_v > cur_v) {
                for (std::size_t k = 0; k < es.size(); ++k)
                    if (ev.gain[es[k].target] == best_g && es[k].weight + ev.bias[es[k].target] == best_v) {
                        choice[s] = static_cast<int>(k);
                        break;
                    }
                changed = true;
            }
        }
        if (!changed)
            return MeanPayoff{std::move(ev.gain), std::move(ev.bias), PureMemorylessStrategy{Player::Max, choice}};
    }
}

Arena negated(const Arena& a)
{
    Arena out = a;
    for (auto& es : out.edges)
        for (auto& e : es)
            e.weight = -e.weight;
    return out;
}

}  // namespace

SolveResult solve_reachability(const Arena& mdp, const StateMask& target, Direction direction)
{
    Arena a = as_maximizer(mdp);
    auto [v, choice] = direction == Direction::Max ? max_reach(a, target) : min_reach(a, target);
    SolveResult r;
    r.value_one_set = value_one_mask(v);
    r.values = std::move(v);
    auto strat = as_strategy(mdp, std::move(choice));
    if (strat.player == Player::Max)
        r.witness_max = std::move(strat);
    else
        r.witness_min = std::move(strat);
    return r;
}

AlmostSureResult almost_sure_reach_game(const Arena& game, const StateMask& target)
{
    const std::size_t n = game.size();
    AlmostSureResult out;
    out.winning.assign(n, true);
    out.max_choice.assign(n, -1);
    out.min_choice.assign(n, -1);
    StateMask& w = out.winning;
    for (;;) {
        // Positive attractor of target inside w, layer by layer.
        StateMask p(n, false);
        std::vector<int> attract(n, -1);
        for (std::size_t s = 0; s < n; ++s)
            p[s] = w[s] && target[s];
        bool grew = true;
        while (grew) {
            grew = false;
            StateMask layer = p;
            for (std::size_t s = 0; s < n; ++s) {
                if (!w[s] || p[s])
                    continue;
                const auto& es = game.edges[s];
                if (game.owner[s] == Owner::Min) {
                    if (std::all_of(es.begin(), es.end(), [&](const Edge& e) { return p[e.target]; }))
                        layer[s] = true;
                } else {
                    for (std::size_t k = 0; k < es.size(); ++k)
                        if (p[es[k].target]) {
                            layer[s] = true;
                            attract[s] = static_cast<int>(k);
                            break;
                        }
                }
                grew |= layer[s];
            }
            p = std::move(layer);
        }
        StateMask removed(n, false);
        bool any = false;
        for (std::size_t s = 0; s < n; ++s)
            if (w[s] && !p[s]) {
                removed[s] = true;
                any = true;
                if (game.owner[s] == Owner::Min) {
                    const auto& es = game.edges[s];
                    for (std::size_t k = 0; k < es.size(); ++k)
                        if (!p[es[k].target]) {
                            out.min_choice[s] = static_cast<int>(k);
                            break;
                        }
                }
            }
        if (!any) {
            for (std::size_t s = 0; s < n; ++s)
                if (game.owner[s] == Owner::Max && w[s] && !target[s])
                    out.max_choice[s] = attract[s];
            break;
        }
        auto lost = [&](StateIndex t) { return removed[t] || !w[t]; };
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t s = 0; s < n; ++s) {
                if (!w[s] || removed[s] || target[s])
                    continue;
                const auto& es = game.edges[s];
                bool spoilt = false;
                if (game.owner[s] == Owner::Max) {
                    spoilt = std::all_of(es.begin(), es.end(), [&](const Edge& e) { return lost(e.target); });
                } else {
                    for (std::size_t k = 0; k < es.size(); ++k)
                        if (lost(es[k].target)) {
                            spoilt = true;
                            if (game.owner[s] == Owner::Min)
                                out.min_choice[s] = static_cast<int>(k);
                            break;
                        }
                }
                if (spoilt) {
                    removed[s] = true;
                    changed = true;
                }
            }
        }
        for (std::size_t s = 0; s < n; ++s)
            if (removed[s])
                w[s] = false;
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (game.owner[s] == Owner::Max && out.max_choice[s] < 0)
            out.max_choice[s] = 0;
        if (game.owner[s] == Owner::Min && out.min_choice[s] < 0)
            out.min_choice[s] = 0;
    }
    return out;
}

StateMask almost_sure_reach(const Arena& game, const StateMask& target)
{
    return almost_sure_reach_game(game, target).winning;
}

MeanPayoff expected_mean_payoff(const Arena& mdp, Direction direction)
{
    Arena a = as_maximizer(mdp);
    if (direction == Direction::Max) {
        auto r = max_gain(a);
        r.strategy = as_strategy(mdp, std::move(r.strategy.choice));
        return r;
    }
    auto r = max_gain(negated(a));
    for (auto& g : r.gain)
        g = -g;
    for (auto& h : r.bias)
        h = -h;
    r.strategy = as_strategy(mdp, std::move(r.strategy.choice));
    return r;
}

std::vector<Mec> mec_decompose(const Arena& mdp)
{
    const std::size_t n = mdp.size();
    StateMask alive(n, true);
    std::vector<std::vector<int>> allowed(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < mdp.edges[s].size(); ++k)
            allowed[s].push_back(static_cast<int>(k));
    SccResult scc;
    for (;;) {
        Adjacency succ(n);
        for (std::size_t s = 0; s < n; ++s)
            if (alive[s])
                for (int k : allowed[s])
                    succ[s].push_back(mdp.edges[s][k].target);
        scc = strongly_connected(succ, alive);
        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!alive[s])
                continue;
            const int c = scc.component[s];
            auto inside = [&](int k) {
                StateIndex t = mdp.edges[s][k].target;
                return alive[t] && scc.component[t] == c;
            };
            if (!mdp.controlled(s)) {
                if (!std::all_of(allowed[s].begin(), allowed[s].end(), inside)) {
                    alive[s] = false;
                    changed = true;
                }
                continue;
            }
            std::vector<int> keep;
            for (int k : allowed[s])
                if (inside(k))
                    keep.push_back(k);
            if (keep.size() != allowed[s].size()) {
                changed = true;
                allowed[s] = std::move(keep);
                if (allowed[s].empty())
                    alive[s] = false;
            }
        }
        if (!changed)
            break;
    }
    std::vector<Mec> out;
    std::vector<int> slot(scc.count, -1);
    for (StateIndex s = 0; s < n; ++s) {
        if (!alive[s])
            continue;
        int c = scc.component[s];
        if (slot[c] < 0) {
            slot[c] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[c]].members.push_back(s);
        out[slot[c]].allowed.push_back(allowed[s]);
    }
    return out;
}

MpAnswer procedure_mp(const Arena& mdp, StateIndex s)
{
    if (s >= mdp.size())
        throw std::invalid_argument("procedure_mp: state out of range");
    const Arena base = as_maximizer(mdp);
    const std::size_t n = base.size();
    const StateIndex z = static_cast<StateIndex>(n);

    Arena cur = base;
    cur.owner.push_back(Owner::Random);
    cur.names.push_back("z");
    cur.edges.push_back({Edge{z, Rational(1), 0}});
    std::vector<std::vector<int>> orig(n + 1);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t k = 0; k < base.edges[v].size(); ++k)
            orig[v].push_back(static_cast<int>(k));
    orig[z] = {0};

    StateMask cut(n + 1, false);
    std::vector<int> sigma = first_choices(base);
    MpAnswer ans;
    for (;;) {
        ++ans.rounds;
        auto mp = max_gain(cur);
        if (mp.gain[s] <= 0)
            return ans;
        Arena chain = induce_chain(cur, mp.strategy.choice);
        auto dec = bscc_decompose(chain);
        StateMask from_s = forward_reach(chain, singleton(n + 1, s));
        const std::vector<StateIndex>* pick = nullptr;
        for (int pass = 0; pass < 2 && !pick; ++pass)
            for (const auto& b : dec.bsccs) {
                if (pass == 0 && !from_s[b.front()])
                    continue;
                if (analyze_bscc(chain, b).mean_payoff > 0) {
                    pick = &b;
                    break;
                }
            }
        if (!pick)
            throw std::logic_error("procedure_mp: positive gain without a positive recurrent class");
        StateMask c(n + 1, false);
        for (StateIndex v : *pick)
            c[v] = true;
        // z stands for states cut earlier, which sigma already wins from;
        // without it mass lost to z in earlier rounds would keep s from ever being cut.
        StateMask goal = c;
        goal[z] = true;
        auto [reach, rc] = max_reach(cur, goal);
        StateMask k(n + 1, false);
        for (std::size_t v = 0; v < n; ++v)
            k[v] = !cut[v] && reach[v] == 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!k[v] || !cur.controlled(v))
                continue;
            int local = c[v] ? mp.strategy.choice[v] : rc[v];
            sigma[v] = orig[v][local];
        }
        for (std::size_t v = 0; v < n; ++v)
            if (k[v])
                cut[v] = true;
        if (cut[s]) {
            ans.yes = true;
            ans.strategy = as_strategy(mdp, std::vector<int>(sigma.begin(), sigma.begin() + n));
            return ans;
        }
        // Cut states become unreachable; stochastic edges into them go to z.
        for (std::size_t v = 0; v <= n; ++v) {
            if (cut[v]) {
                cur.owner[v] = Owner::Random;
                cur.edges[v] = {Edge{z, Rational(1), 0}};
                orig[v] = {0};
                continue;
            }
            std::vector<Edge> es;
            std::vector<int> idx;
            for (std::size_t e = 0; e < cur.edges[v].size(); ++e) {
                Edge ed = cur.edges[v][e];
                if (k[ed.target]) {
                    if (cur.controlled(v))
                        continue;
                    ed.target = z;
                }
                es.push_back(ed);
                idx.push_back(orig[v][e]);
            }
            if (es.empty())
                throw std::logic_error("procedure_mp: controlled state lost every edge");
            cur.edges[v] = std::move(es);
            orig[v] = std::move(idx);
        }
    }
}

StateMask CreditMap::finite() const
{
    StateMask m(credit.size());
    for (std::size_t s = 0; s < credit.size(); ++s)
        m[s] = credit[s].has_value();
    return m;
}

StateMask CreditMap::zero() const
{
    StateMask m(credit.size());
    for (std::size_t s = 0; s < credit.size(); ++s)
        m[s] = credit[s] == 0;
    return m;
}

namespace {

constexpr int kInfinite = -1;

int need_after(int credit_target, int weight, int cutoff)
{
    if (credit_target == kInfinite)
        return kInfinite;
    int need = std::max(0, credit_target - weight);
    return need > cutoff ? kInfinite : need;
}

bool worse(int a, int b)  // a needs more credit than b
{
    if (a == kInfinite)
        return b != kInfinite;
    return b != kInfinite && a > b;
}

}  // namespace

CreditMap energy_min_credit(const Arena& game, Player keeper)
{
    const std::size_t n = game.size();
    const int cutoff = static_cast<int>(n);
    const Owner k = owner_of(keeper);
    std::vector<int> c(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (c[s] == kInfinite)
                continue;
            const bool keeps = game.owner[s] == k;
            int best = 0;
            bool first = true;
            for (const auto& e : game.edges[s]) {
                int need = need_after(c[e.target], e.weight, cutoff);
                if (first || (keeps ? worse(best, need) : worse(need, best)))
                    best = need;
                first = false;
            }
            if (best != c[s]) {
                c[s] = best;
                changed = true;
            }
        }
    }
    CreditMap out;
    out.cutoff = cutoff;
    for (int v : c)
        out.credit.push_back(v == kInfinite ? std::nullopt : std::optional<int>(v));
    return out;
}

std::vector<int> energy_keeper_choice(const Arena& game, Player keeper, const CreditMap& credits)
{
    const Owner k = owner_of(keeper);
    std::vector<int> choice(game.size(), -1);
    for (std::size_t s = 0; s < game.size(); ++s) {
        if (game.owner[s] != k)
            continue;
        int best = 0, arg = -1;
        for (std::size_t e = 0; e < game.edges[s].size(); ++e) {
            const Edge& ed = game.edges[s][e];
            int need = need_after(credits.credit[ed.target] ? *credits.credit[ed.target] : kInfinite, ed.weight,
                                  credits.cutoff);
            if (arg < 0 || worse(best, need)) {
                best = need;
                arg = static_cast<int>(e);
            }
        }
        choice[s] = arg;
    }
    return choice;
}

namespace {

struct Region {
    StateMask states;
    std::vector<int> choice;  // on controlled states of the region
    StateMask credit_zero;
};

QualitativeLimit qualitative_max(const Arena& a, ObjectiveKind tag);

void adopt(Region& r, const SubArena& sub, const std::vector<int>& local_choice)
{
    for (std::size_t i = 0; i < sub.to_global.size(); ++i) {
        StateIndex g = sub.to_global[i];
        r.states[g] = true;
        if (sub.arena.controlled(i))
            r.choice[g] = sub.edge_index[i][local_choice[i]];
    }
}

// Union of the end-component regions in which the maximizer can win with
// probability 1, together with a strategy that keeps it there and wins.
Region good_region(const Arena& a, ObjectiveKind tag)
{
    const std::size_t n = a.size();
    Region r{StateMask(n, false), std::vector<int>(n, -1), StateMask(n, false)};
    switch (tag) {
    case ObjectiveKind::MeanGt:
    case ObjectiveKind::LimInfEqPlusInf:
    case ObjectiveKind::MeanLeq:
    case ObjectiveKind::LimInfLtPlusInf: {
        const bool up = tag == ObjectiveKind::MeanGt || tag == ObjectiveKind::LimInfEqPlusInf;
        for (const auto& mec : mec_decompose(a)) {
            auto sub = restrict(a, mec);
            auto mp = up ? max_gain(sub.arena) : max_gain(negated(sub.arena));
            const Rational& g = mp.gain[0];
            if (up ? g > 0 : g >= 0)
                adopt(r, sub, mp.strategy.choice);
        }
        return r;
    }
    case ObjectiveKind::LimInfEqMinusInf: {
        for (const auto& mec : mec_decompose(a)) {
            auto sub = restrict(a, mec);
            Arena neg = negated(sub.arena);
            auto mp = max_gain(neg);
            const Rational& g = mp.gain[0];  // minus the minimal gain
            if (g > 0) {
                adopt(r, sub, mp.strategy.choice);
                continue;
            }
            if (g < 0)
                continue;
            // Minimal gain 0: h below is the optimal bias for the minimal gain,
            // h(u) = min over controlled edges of w + h(t). Recurrent classes of
            // gain 0 use only edges attaining the minimum, and such a class has
            // unbounded prefix sums iff it contains a random edge with
            // w + h(t) - h(u) != 0.
            std::vector<Rational> h(mp.bias.size());
            for (std::size_t i = 0; i < h.size(); ++i)
                h[i] = -mp.bias[i];
            const Arena& sa = sub.arena;
            std::vector<StateIndex> all(sa.size());
            std::vector<std::vector<int>> optimal(sa.size());
            StateMask noisy(sa.size(), false);
            for (std::size_t u = 0; u < sa.size(); ++u) {
                all[u] = static_cast<StateIndex>(u);
                for (std::size_t k = 0; k < sa.edges[u].size(); ++k) {
                    const Edge& e = sa.edges[u][k];
                    Rational slack = e.weight + h[e.target] - h[u];
                    if (!sa.controlled(u)) {
                        optimal[u].push_back(static_cast<int>(k));
                        if (slack != 0)
                            noisy[u] = true;
                    } else if (slack == 0) {
                        optimal[u].push_back(static_cast<int>(k));
                    }
                }
            }
            auto tight = restrict(sa, all, optimal);
            for (const auto& inner : mec_decompose(tight.arena)) {
                int pick = -1;
                for (StateIndex m : inner.members)
                    if (noisy[tight.to_global[m]]) {
                        pick = static_cast<int>(m);
                        break;
                    }
                if (pick < 0)
                    continue;
                auto e = restrict(tight.arena, inner);
                StateMask goal(e.arena.size(), false);
                for (std::size_t i = 0; i < e.to_global.size(); ++i)
                    goal[i] = e.to_global[i] == static_cast<StateIndex>(pick);
                auto as = almost_sure_reach_game(e.arena, goal);
                // Compose local -> tight -> mec -> global edge indices.
                for (std::size_t i = 0; i < e.to_global.size(); ++i) {
                    StateIndex t_local = e.to_global[i];
                    StateIndex g = sub.to_global[tight.to_global[t_local]];
                    r.states[g] = true;
                    if (!e.arena.controlled(i))
                        continue;
                    int c = as.max_choice[i];
                    int in_tight = e.edge_index[i][c];
                    int in_sub = tight.edge_index[t_local][in_tight];
                    r.choice[g] = sub.edge_index[tight.to_global[t_local]][in_sub];
                }
            }
        }
        return r;
    }
    case ObjectiveKind::LimInfGtMinusInf: {
        auto up = qualitative_max(a, ObjectiveKind::MeanGt);
        auto credits = energy_min_credit(a, Player::Max);
        auto keep = energy_keeper_choice(a, Player::Max, credits);
        r.credit_zero = credits.zero();
        for (std::size_t s = 0; s < n; ++s) {
            if (up.winning[s]) {
                r.states[s] = true;
                r.choice[s] = up.witness.choice[s];
            } else if (credits.credit[s]) {
                r.states[s] = true;
                r.choice[s] = keep[s];
            }
        }
        return r;
    }
    default:
        throw std::invalid_argument("qualitative_limit: unsupported objective " + tag_name(tag));
    }
}

QualitativeLimit qualitative_max(const Arena& a, ObjectiveKind tag)
{
    Region r = good_region(a, tag);
    auto as = almost_sure_reach_game(a, r.states);
    QualitativeLimit q;
    q.winning = as.winning;
    q.region = r.states;
    q.credit_zero = r.credit_zero;
    q.witness.player = Player::Max;
    q.witness.choice.assign(a.size(), -1);
    for (std::size_t s = 0; s < a.size(); ++s)
        if (a.controlled(s))
            q.witness.choice[s] = r.states[s] ? r.choice[s] : as.max_choice[s];
    return q;
}

bool has_controlled(const Arena& a)
{
    for (std::size_t s = 0; s < a.size(); ++s)
        if (a.controlled(s))
            return true;
    return false;
}

}  // namespace

QualitativeLimit qualitative_limit(const Arena& mdp, ObjectiveKind tag, Direction direction)
{
    if (!is_limit(tag))
        throw std::invalid_argument("qualitative_limit: unsupported objective " + tag_name(tag));
    Arena a = as_maximizer(mdp);
    const Player ctrl = controller_of(mdp);
    if (direction == Direction::Max) {
        auto q = qualitative_max(a, tag);
        q.witness = as_strategy(mdp, std::move(q.witness.choice));
        q.witness.player = ctrl;
        return q;
    }
    auto co = qualitative_max(a, complement(tag));
    StateMask lose = backward_reach(a, co.winning);
    QualitativeLimit q;
    q.winning.assign(a.size(), false);
    for (std::size_t s = 0; s < a.size(); ++s)
        q.winning[s] = !lose[s];
    q.region = co.region;
    q.credit_zero.assign(a.size(), false);
    q.witness = as_strategy(mdp, std::move(co.witness.choice));
    return q;
}

SolveResult quantitative_limit(const Arena& mdp, ObjectiveKind tag, Direction direction)
{
    if (!is_limit(tag))
        throw std::invalid_argument("quantitative_limit: unsupported objective " + tag_name(tag));
    SolveResult out;
    const Player ctrl = controller_of(mdp);
    if (!has_controlled(mdp)) {
        out.values = chain_tail_value(mdp, tag);
        out.value_one_set = value_one_mask(out.values);
        PureMemorylessStrategy empty{ctrl, std::vector<int>(mdp.size(), -1)};
        if (ctrl == Player::Max)
            out.witness_max = empty;
        else
            out.witness_min = empty;
        return out;
    }
    Arena a = as_maximizer(mdp);
    const ObjectiveKind goal = direction == Direction::Max ? tag : complement(tag);
    Region r = good_region(a, goal);
    auto [v, choice] = max_reach(a, r.states);
    for (std::size_t s = 0; s < a.size(); ++s)
        if (r.states[s] && a.controlled(s))
            choice[s] = r.choice[s];
    if (direction == Direction::Min)
        for (auto& x : v)
            x = 1 - x;
    out.value_one_set = value_one_mask(v);
    out.values = std::move(v);
    auto strat = as_strategy(mdp, std::move(choice));
    if (ctrl == Player::Max)
        out.witness_max = std::move(strat);
    else
        out.witness_min = std::move(strat);
    return out;
}

}  // namespace ocssg
