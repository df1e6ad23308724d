#include "ocssg/reduce.hpp"

#include "ocssg/mdp.hpp"

#include <algorithm>

namespace ocssg {

static void check_ids(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime)
{
    const std::size_t n = game.states.size();
    if (s >= n || t >= n || t_prime >= n)
        throw ReductionError("reduction: state out of range");
    if (t == t_prime)
        throw ReductionError("reduction: t and t' must differ");
}

Ssg route_sinks(const Ssg& game, StateIndex t, StateIndex t_prime)
{
    Ssg out = game;
    for (StateIndex v = 0; v < out.states.size(); ++v) {
        if (v == t || v == t_prime)
            continue;
        auto& st = out.states[v];
        const bool absorbing = std::all_of(st.transitions.begin(), st.transitions.end(),
                                           [&](const Transition& tr) { return tr.target == v; });
        if (!absorbing)
            continue;
        Transition tr;
        tr.target = t_prime;
        if (st.owner == Owner::Random)
            tr.probability = Rational(1);
        if (game.reward_location == RewardLocation::OnTransitions)
            tr.reward = 0;
        st.transitions = {tr};
    }
    return out;
}

bool reaches_terminal_surely(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime)
{
    Arena a = to_arena(game);
    for (auto& o : a.owner)
        if (o == Owner::Min)
            o = Owner::Max;
    StateMask goal(a.size(), false);
    goal[t] = goal[t_prime] = true;
    return solve_reachability(a, goal, Direction::Min).values[s] == 1;
}

Ssg condon_to_limit(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime)
{
    check_ids(game, s, t, t_prime);
    Ssg routed = route_sinks(game, t, t_prime);
    if (!reaches_terminal_surely(routed, s, t, t_prime))
        throw ReductionError("reduction: normalization violated, {t, t'} is not reached with probability 1");
    Ssg out{RewardLocation::OnStates, routed.states};
    for (StateIndex v = 0; v < out.states.size(); ++v) {
        auto& st = out.states[v];
        st.reward = 0;
        for (auto& tr : st.transitions)
            tr.reward.reset();
        if (v == t || v == t_prime) {
            st.owner = Owner::Max;
            st.reward = v == t ? -1 : 1;
            Transition back;
            back.target = s;
            st.transitions = {back};
        }
    }
    return out;
}

TermQuery condon_to_termination(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime)
{
    Ssg limit = condon_to_limit(game, s, t, t_prime);
    TermQuery q;
    q.s = s;
    q.j = static_cast<int>(limit.states.size());
    q.game.states = limit.states;
    for (auto& st : q.game.states) {
        for (auto& tr : st.transitions)
            tr.delta = st.reward.value_or(0);
        st.reward.reset();
    }
    return q;
}

}  // namespace ocssg
