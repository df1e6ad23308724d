#include "fixtures.hpp"
#include "grid.hpp"

#include "ocssg/chain.hpp"
#include "ocssg/graph.hpp"
#include "ocssg/mdp.hpp"
#include "ocssg/oracle.hpp"
#include "ocssg/termination.hpp"

#include <doctest.h>

#include <set>

using namespace ocssg;
using namespace ocssg::testing;

namespace {

const Rational half(1, 2);

Arena arena_of(std::vector<Owner> owner, std::vector<std::vector<Edge>> edges)
{
    Arena a;
    a.owner = std::move(owner);
    a.edges = std::move(edges);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.names.push_back("m" + std::to_string(i));
    return a;
}

StateMask mask(std::initializer_list<bool> bits) { return StateMask(bits); }

std::vector<int> profile_of(const PureMemorylessStrategy& s) { return s.choice; }

}  // namespace

TEST_CASE("reachability")
{
    // m=0 Max, t=1, c=2 coin, dead=3
    auto g = arena_of({Owner::Max, Owner::Random, Owner::Random, Owner::Random},
                      {{{1, 1, 0}}, {{1, 1, 0}}, {{1, half, 0}, {3, half, 0}}, {{3, 1, 0}}});
    auto r = solve_reachability(g, mask({false, true, false, false}), Direction::Max);
    CHECK(r.values[0] == 1);
    CHECK(r.witness_max->choice[0] == 0);

    g.edges[0] = {{2, 1, 0}, {1, 1, 0}};
    r = solve_reachability(g, mask({false, true, false, false}), Direction::Max);
    CHECK(r.values[0] == 1);
    CHECK(r.witness_max->choice[0] == 1);

    g.owner[0] = Owner::Min;
    g.edges[0] = {{1, 1, 0}, {2, 1, 0}};
    r = solve_reachability(g, mask({false, true, false, false}), Direction::Min);
    CHECK(r.values[0] == half);
    CHECK(r.witness_min->choice[0] == 1);
}

TEST_CASE("reachability against enumeration")
{
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
        const Owner who = k % 2 ? Owner::Max : Owner::Min;
        Arena g = random_mdp(rng, 3 + k % 3, who);
        StateMask t(g.size(), false);
        t[k % g.size()] = true;
        const Direction d = who == Owner::Max ? Direction::Max : Direction::Min;
        auto r = solve_reachability(g, t, d);
        auto o = enumerate_solve(g, {ObjectiveKind::Reach, 0, t});
        CHECK(r.values == o.values);
        // the witness attains the values
        const auto& w = who == Owner::Max ? *r.witness_max : *r.witness_min;
        auto c = induce_chain(g, profile_of(w));
        CHECK(reach_probabilities(c, t) == r.values);
    }
}

TEST_CASE("almost sure reachability")
{
    auto g = arena_of({Owner::Random, Owner::Random}, {{{0, half, 0}, {1, half, 0}}, {{1, 1, 0}}});
    CHECK(almost_sure_reach(g, mask({false, true})) == mask({true, true}));

    auto h = arena_of({Owner::Min, Owner::Max, Owner::Max}, {{{1, 1, 0}, {2, 1, 0}}, {{1, 1, 0}}, {{2, 1, 0}}});
    CHECK(almost_sure_reach(h, mask({false, true, false})) == mask({false, true, false}));

    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        Arena g2 = random_game(rng, 3 + k % 3);
        StateMask t(g2.size(), false);
        t[0] = true;
        auto w = almost_sure_reach(g2, t);
        auto o = enumerate_solve(g2, {ObjectiveKind::Reach, 0, t});
        for (std::size_t s = 0; s < g2.size(); ++s)
            CHECK(w[s] == (o.values[s] == 1));
    }
}

TEST_CASE("level game of the appendix example misses (v, 0)")
{
    Arena g = to_arena(appendix_game());
    auto safe = liminf_minus_inf_safe(g);
    auto lg = build_level_game(g, safe, 1);
    auto w = almost_sure_reach(lg.arena, lg.target);
    CHECK_FALSE(w[lg.index(appendix_v(), 0)]);
}

TEST_CASE("expected mean payoff")
{
    auto loop = arena_of({Owner::Max}, {{{0, 1, 1}}});
    CHECK(expected_mean_payoff(loop, Direction::Max).gain[0] == 1);

    auto pick = arena_of({Owner::Max}, {{{0, 1, -1}, {0, 1, 1}}});
    auto mp = expected_mean_payoff(pick, Direction::Max);
    CHECK(mp.gain[0] == 1);
    CHECK(mp.strategy.choice[0] == 1);
    mp = expected_mean_payoff(pick, Direction::Min);
    CHECK(mp.gain[0] == -1);
    CHECK(mp.strategy.choice[0] == 0);

    // m -> r collects +1, r -> m collects -1, or m stays with 0
    auto cyc = arena_of({Owner::Max, Owner::Random}, {{{1, 1, 1}, {0, 1, 0}}, {{0, 1, -1}}});
    mp = expected_mean_payoff(cyc, Direction::Max);
    CHECK(mp.gain == std::vector<Rational>{0, 0});
    for (int c : {0, 1}) {
        auto chain = induce_chain(cyc, {c, -1});
        auto d = bscc_decompose(chain);
        CHECK(analyze_bscc(chain, d.bsccs[0]).mean_payoff == 0);
    }
}

TEST_CASE("gain against policy enumeration")
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 200; ++k) {
        Arena g = random_mdp(rng, 3 + k % 3, Owner::Max);
        for (Direction d : {Direction::Max, Direction::Min}) {
            auto mp = expected_mean_payoff(g, d);
            // brute force over profiles of expected gain: sum over BSCCs of reach * mu
            std::vector<int> choice(g.size(), -1), radix(g.size(), 1);
            for (std::size_t s = 0; s < g.size(); ++s)
                if (g.controlled(s)) {
                    choice[s] = 0;
                    radix[s] = static_cast<int>(g.edges[s].size());
                }
            std::vector<Rational> best;
            while (true) {
                auto c = induce_chain(g, choice);
                auto dec = bscc_decompose(c);
                std::vector<Rational> gain(g.size(), 0);
                for (const auto& b : dec.bsccs) {
                    auto a = analyze_bscc(c, b);
                    StateMask in(g.size(), false);
                    for (auto u : b)
                        in[u] = true;
                    auto p = reach_probabilities(c, in);
                    for (std::size_t s = 0; s < g.size(); ++s)
                        gain[s] += p[s] * a.mean_payoff;
                }
                if (best.empty())
                    best = gain;
                for (std::size_t s = 0; s < g.size(); ++s)
                    best[s] = d == Direction::Max ? std::max(best[s], gain[s]) : std::min(best[s], gain[s]);
                std::size_t s = 0;
                for (; s < g.size(); ++s) {
                    if (!g.controlled(s))
                        continue;
                    if (++choice[s] < radix[s])
                        break;
                    choice[s] = 0;
                }
                if (s == g.size())
                    break;
            }
            CHECK(mp.gain == best);
        }
    }
}

TEST_CASE("end components")
{
    auto strong = arena_of({Owner::Random, Owner::Random}, {{{1, 1, 0}}, {{0, half, 0}, {1, half, 0}}});
    auto m = mec_decompose(strong);
    REQUIRE(m.size() == 1);
    CHECK(m[0].members == std::vector<StateIndex>{0, 1});

    auto two = arena_of({Owner::Random, Owner::Random}, {{{0, 1, 0}}, {{1, 1, 0}}});
    m = mec_decompose(two);
    CHECK(m.size() == 2);

    // appendix example with Min as the only player (Max states have one edge each)
    Arena app = to_arena(appendix_game());
    for (auto& o : app.owner)
        if (o == Owner::Max)
            o = Owner::Min;
    m = mec_decompose(app);
    std::set<std::vector<StateIndex>> got;
    for (const auto& x : m)
        got.insert(x.members);
    CHECK(got == std::set<std::vector<StateIndex>>{{2}, {4}});
}

TEST_CASE("end components cover every policy bottom component")
{
    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        Arena g = random_mdp(rng, 3 + k % 3, Owner::Max);
        auto mecs = mec_decompose(g);
        std::vector<int> in_mec(g.size(), -1);
        for (std::size_t i = 0; i < mecs.size(); ++i)
            for (auto u : mecs[i].members) {
                CHECK(in_mec[u] == -1);
                in_mec[u] = static_cast<int>(i);
            }
        StateMask covered(g.size(), false);
        std::vector<int> choice(g.size(), -1);
        for (std::size_t s = 0; s < g.size(); ++s)
            if (g.controlled(s))
                choice[s] = 0;
        while (true) {
            auto c = induce_chain(g, choice);
            for (const auto& b : bscc_decompose(c).bsccs) {
                for (auto u : b) {
                    CHECK(in_mec[u] == in_mec[b[0]]);
                    CHECK(in_mec[u] >= 0);
                    covered[u] = true;
                }
            }
            std::size_t s = 0;
            for (; s < g.size(); ++s) {
                if (!g.controlled(s))
                    continue;
                if (++choice[s] < static_cast<int>(g.edges[s].size()))
                    break;
                choice[s] = 0;
            }
            if (s == g.size())
                break;
        }
        for (std::size_t s = 0; s < g.size(); ++s)
            CHECK(covered[s] == (in_mec[s] >= 0));
    }
}

TEST_CASE("procedure MP")
{
    auto pick = arena_of({Owner::Max}, {{{0, 1, -1}, {0, 1, 1}}});
    auto a = procedure_mp(pick, 0);
    CHECK(a.yes);
    REQUIRE(a.strategy);
    CHECK(a.strategy->choice[0] == 1);

    auto neg = arena_of({Owner::Max, Owner::Random}, {{{0, 1, 0}, {1, 1, -1}}, {{0, 1, 0}}});
    a = procedure_mp(neg, 0);
    CHECK_FALSE(a.yes);
    CHECK(a.rounds == 1);

    // root coin between a +1 loop and a -1 loop, with Max only at the loops
    auto coin = arena_of({Owner::Random, Owner::Max, Owner::Max, Owner::Max},
                         {{{1, half, 0}, {2, half, 0}}, {{1, 1, 1}}, {{3, 1, -1}}, {{2, 1, 0}, {3, 1, -1}}});
    CHECK_FALSE(procedure_mp(coin, 0).yes);
    CHECK(procedure_mp(coin, 1).yes);
    CHECK(enumerate_solve(coin, {ObjectiveKind::MeanGt, 0, {}}).values[0] == half);
}

TEST_CASE("procedure MP agrees with the end-component route")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 400; ++k) {
        Arena g = random_mdp(rng, 2 + k % 4, Owner::Max);
        auto q = qualitative_limit(g, ObjectiveKind::MeanGt, Direction::Max);
        for (StateIndex s = 0; s < g.size(); ++s) {
            auto a = procedure_mp(g, s);
            CHECK_MESSAGE(a.yes == q.winning[s], print_model(to_ssg(g)), " at ", s);
            if (a.yes) {
                auto c = induce_chain(g, a.strategy->choice);
                CHECK(chain_tail_value(c, ObjectiveKind::MeanGt)[s] == 1);
            }
        }
    }
}

TEST_CASE("energy credits")
{
    auto keep = arena_of({Owner::Max}, {{{0, 1, 0}}});
    CHECK(energy_min_credit(keep, Player::Max).credit[0] == 0);

    auto lose = arena_of({Owner::Min}, {{{0, 1, -1}}});
    CHECK_FALSE(energy_min_credit(lose, Player::Max).credit[0].has_value());

    auto path = arena_of({Owner::Max, Owner::Max}, {{{1, 1, -1}}, {{1, 1, 1}}});
    auto c = energy_min_credit(path, Player::Max);
    CHECK(c.credit[0] == 1);
    CHECK(c.credit[1] == 0);
    CHECK(c.cutoff == 2);
}

TEST_CASE("energy credit bounds and monotonicity")
{
    std::mt19937_64 rng(43);
    for (int k = 0; k < 300; ++k) {
        Arena g = random_game(rng, 3 + k % 3);
        for (Player keeper : {Player::Max, Player::Min}) {
            auto c = energy_min_credit(g, keeper);
            for (const auto& x : c.credit)
                if (x)
                    CHECK(*x <= static_cast<int>(g.size()));
            // one more edge at some controlled state
            for (StateIndex s = 0; s < g.size(); ++s) {
                if (!g.controlled(s))
                    continue;
                Arena h = g;
                h.edges[s].push_back({static_cast<StateIndex>((s + 1) % g.size()), 1, -1});
                auto d = energy_min_credit(h, keeper);
                const bool for_keeper = g.owner[s] == owner_of(keeper);
                for (std::size_t u = 0; u < g.size(); ++u) {
                    const long before = c.credit[u] ? *c.credit[u] : 1000, after = d.credit[u] ? *d.credit[u] : 1000;
                    CHECK((for_keeper ? after <= before : after >= before));
                }
                break;
            }
        }
    }
}

TEST_CASE("qualitative limit examples")
{
    auto down = arena_of({Owner::Max}, {{{0, 1, -1}}});
    CHECK(qualitative_limit(down, ObjectiveKind::LimInfEqMinusInf, Direction::Max).winning == mask({true}));

    auto cyc = arena_of({Owner::Max, Owner::Max}, {{{1, 1, 1}}, {{0, 1, -1}}});
    auto q = qualitative_limit(cyc, ObjectiveKind::LimInfGtMinusInf, Direction::Max);
    CHECK(q.winning == mask({true, true}));
    auto credit = energy_min_credit(cyc, Player::Max);
    CHECK(credit.credit[0] == 0);
    CHECK(credit.credit[1] == 1);

    Arena walk = fair_walk();
    CHECK(qualitative_limit(walk, ObjectiveKind::LimInfEqMinusInf, Direction::Max).winning == mask({true}));
    CHECK(qualitative_limit(walk, ObjectiveKind::LimInfEqPlusInf, Direction::Max).winning == mask({false}));
}

TEST_CASE("quantitative limit examples")
{
    auto all = arena_of({Owner::Max}, {{{0, 1, -1}, {0, 1, 0}}});
    CHECK(quantitative_limit(all, ObjectiveKind::LimInfEqMinusInf, Direction::Max).values == std::vector<Rational>{1});

    auto coin = arena_of({Owner::Random, Owner::Max, Owner::Max}, {{{1, half, 0}, {2, half, 0}}, {{1, 1, -1}}, {{2, 1, 1}}});
    CHECK(quantitative_limit(coin, ObjectiveKind::LimInfEqMinusInf, Direction::Max).values[0] == half);

    // s picks between a 2/3 chance of the fair walk and a safe +1 loop
    const Rational two_thirds(2, 3), third(1, 3);
    auto g = arena_of({Owner::Max, Owner::Random, Owner::Random, Owner::Random},
                      {{{1, 1, 0}, {3, 1, 0}}, {{2, two_thirds, 0}, {3, third, 0}}, {{2, half, -1}, {2, half, 1}}, {{3, 1, 1}}});
    auto r = quantitative_limit(g, ObjectiveKind::LimInfEqMinusInf, Direction::Max);
    CHECK(r.values[0] == two_thirds);
    CHECK(enumerate_solve(g, {ObjectiveKind::LimInfEqMinusInf, 0, {}}).values[0] == two_thirds);
}

TEST_CASE("limit values of random MDPs")
{
    std::mt19937_64 rng(47);
    for (int k = 0; k < 400; ++k) {
        const Owner who = k % 2 ? Owner::Max : Owner::Min;
        Arena g = random_mdp(rng, 2 + k % 4, who);
        auto oracle = enumerate_limit_values(g);
        const Direction d = who == Owner::Max ? Direction::Max : Direction::Min;
        for (auto tag : kLimitTags) {
            auto r = quantitative_limit(g, tag, d);
            CHECK(r.values == oracle[tag].values);
            auto co = quantitative_limit(g, complement(tag), d == Direction::Max ? Direction::Min : Direction::Max);
            for (std::size_t s = 0; s < g.size(); ++s)
                CHECK(co.values[s] == 1 - r.values[s]);
            const auto& w = r.witness_max ? r.witness_max : r.witness_min;
            REQUIRE(w);
            CHECK(chain_tail_value(induce_chain(g, w->choice), tag) == r.values);
            auto q = qualitative_limit(g, tag, d);
            CHECK(q.winning == r.value_one_set);
        }
        CHECK(oracle[ObjectiveKind::MeanGt].values == oracle[ObjectiveKind::LimInfEqPlusInf].values);
    }
}
