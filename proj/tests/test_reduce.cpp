#include "fixtures.hpp"
#include "grid.hpp"

#include "ocssg/reduce.hpp"
#include "ocssg/ssg.hpp"
#include "ocssg/termination.hpp"

#include <doctest.h>

using namespace ocssg;
using namespace ocssg::testing;

namespace {

const Rational half(1, 2);

Rational limit_value(const Ssg& g, ObjectiveKind tag, StateIndex s)
{
    return solve_limit_ssg(to_arena(g), tag).result.values[s];
}

Rational reach_value(const Ssg& g, StateIndex s, StateIndex target)
{
    Arena a = to_arena(g);
    StateMask t(a.size(), false);
    t[target] = true;
    return solve_reachability_game(a, t).values[s];
}

}  // namespace

TEST_CASE("limit game shape")
{
    auto g = condon_to_limit(condon_fair_coin(), 0, 1, 2);
    CHECK(validate(g).empty());
    CHECK(g.reward_location == RewardLocation::OnStates);
    CHECK(*g.states[0].reward == 0);
    for (StateIndex v : {1u, 2u}) {
        CHECK(g.states[v].owner == Owner::Max);
        REQUIRE(g.states[v].transitions.size() == 1);
        CHECK(g.states[v].transitions[0].target == 0);
    }
    CHECK(*g.states[1].reward == -1);
    CHECK(*g.states[2].reward == 1);
}

TEST_CASE("fair coin, sure and biased coins")
{
    auto fair = condon_to_limit(condon_fair_coin(), 0, 1, 2);
    CHECK(limit_value(fair, ObjectiveKind::LimInfEqMinusInf, 0) == 1);
    CHECK(limit_value(fair, ObjectiveKind::LimInfEqPlusInf, 0) == 0);

    auto sure = condon_to_limit(condon_biased(1), 0, 1, 2);
    CHECK(limit_value(sure, ObjectiveKind::LimInfEqMinusInf, 0) == 1);
    CHECK(limit_value(sure, ObjectiveKind::LimInfEqPlusInf, 0) == 0);

    auto third = condon_to_limit(condon_biased(Rational(1, 3)), 0, 1, 2);
    CHECK(limit_value(third, ObjectiveKind::LimInfEqMinusInf, 0) == 0);
    CHECK(limit_value(third, ObjectiveKind::LimInfEqPlusInf, 0) == 1);
}

TEST_CASE("termination queries")
{
    auto fair = condon_to_termination(condon_fair_coin(), 0, 1, 2);
    CHECK(fair.j == 3);
    CHECK(validate(fair.game).empty());
    CHECK(decide_term_one(fair.game, fair.s, fair.j).value_one);

    auto third = condon_to_termination(condon_biased(Rational(1, 3)), 0, 1, 2);
    CHECK_FALSE(decide_term_one(third.game, third.s, third.j).value_one);

    auto away = condon_to_termination(condon_fair_coin(), 0, 2, 1);
    // roles of t and t' swapped, still a fair coin
    CHECK(decide_term_one(away.game, away.s, away.j).value_one);

    // s moves to t' surely
    auto up = condon_to_termination(condon_biased(1), 0, 2, 1);
    CHECK_FALSE(decide_term_one(up.game, up.s, up.j).value_one);
}

TEST_CASE("sinks and normalization")
{
    // s Random -> t or an absorbing sink d
    auto g = ssg_from("ssg rewards=states\nstate s owner=rand reward=0\nstate t owner=max reward=0\n"
                      "state tp owner=max reward=0\nstate d owner=min reward=0\n"
                      "trans s -> t p=1/2\ntrans s -> d p=1/2\ntrans t -> t\ntrans tp -> tp\ntrans d -> d\n");
    auto routed = route_sinks(g, 1, 2);
    REQUIRE(routed.states[3].transitions.size() == 1);
    CHECK(routed.states[3].transitions[0].target == 2);
    CHECK(reaches_terminal_surely(routed, 0, 1, 2));
    CHECK(limit_value(condon_to_limit(g, 0, 1, 2), ObjectiveKind::LimInfEqMinusInf, 0) == 1);

    // s Min can cycle through a forever
    auto cyc = ssg_from("ssg rewards=states\nstate s owner=min reward=0\nstate a owner=max reward=0\n"
                        "state t owner=max reward=0\nstate tp owner=max reward=0\n"
                        "trans s -> a\ntrans s -> t\ntrans a -> s\ntrans t -> t\ntrans tp -> tp\n");
    CHECK_THROWS_AS(condon_to_limit(cyc, 0, 2, 3), ReductionError);
    CHECK_THROWS_AS(condon_to_limit(cyc, 0, 2, 2), ReductionError);
}

TEST_CASE("reduction contract on random instances")
{
    std::mt19937_64 rng(29);
    int used = 0;
    while (used < 60) {
        Ssg g = random_reachability(rng, 3 + used % 3);
        const StateIndex n = static_cast<StateIndex>(g.states.size()), t = n - 2, tp = n - 1;
        Ssg lim;
        try {
            lim = condon_to_limit(g, 0, t, tp);
        } catch (const ReductionError&) {
            continue;
        }
        ++used;
        Ssg routed = route_sinks(g, t, tp);
        const Rational rt = reach_value(routed, 0, t), rtp = reach_value(routed, 0, tp);
        CHECK(limit_value(lim, ObjectiveKind::LimInfEqMinusInf, 0) == (rt >= half ? 1 : 0));
        CHECK(limit_value(lim, ObjectiveKind::LimInfEqPlusInf, 0) == (rtp > half ? 1 : 0));
        auto q = condon_to_termination(g, 0, t, tp);
        CHECK(decide_term_one(q.game, q.s, q.j).value_one == (rt >= half));
    }
}
