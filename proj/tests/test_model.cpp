#include "fixtures.hpp"
#include "grid.hpp"

#include "ocssg/oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ocssg;
using namespace ocssg::testing;

namespace {

std::string parse_error_of(std::string_view text)
{
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::vector<std::string>& v, const std::string& needle)
{
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::size_t transition_count(const std::vector<State>& states)
{
    std::size_t k = 0;
    for (const auto& s : states)
        k += s.transitions.size();
    return k;
}

}  // namespace

TEST_CASE("minimal model")
{
    auto g = ssg_from("ssg rewards=states\nstate a owner=max reward=0\ntrans a -> a\n");
    REQUIRE(g.states.size() == 1);
    CHECK(g.states[0].owner == Owner::Max);
    CHECK(g.states[0].transitions.size() == 1);
    CHECK(g.states[0].transitions[0].target == 0);
    CHECK(validate(g).empty());
}

TEST_CASE("comments and blank lines")
{
    auto g = ssg_from("# header next\n\nssg rewards=transitions\nstate a owner=rand  # trailing\n"
                      "trans a -> a p=2/4 reward=-1\ntrans a -> a p=1/2 reward=1\n");
    REQUIRE(g.states[0].transitions.size() == 2);
    CHECK(*g.states[0].transitions[0].probability == Rational(1, 2));
}

TEST_CASE("probability sum")
{
    auto msg = parse_error_of("ssg rewards=states\nstate a owner=rand reward=0\nstate b owner=max reward=0\n"
                              "trans a -> b p=1/2\ntrans a -> a p=1/3\ntrans b -> b\n");
    CHECK(msg.find("probabilities sum 5/6 ≠ 1") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("line precise syntax errors")
{
    CHECK(parse_error_of("ssg rewards=states\nstate a owner=robot reward=0\n").find("line 2:9") != std::string::npos);
    CHECK(parse_error_of("ssg rewards=states\nstate a owner=max reward=2\ntrans a -> a\n").find("line 2") !=
          std::string::npos);
    CHECK(parse_error_of("state a owner=max\n").find("expected header") != std::string::npos);
    CHECK(parse_error_of("ssg rewards=states\nstate a owner=max reward=0\ntrans a -> b\n").find("dangling target") !=
          std::string::npos);
    CHECK(parse_error_of("ssg rewards=states\nstate a owner=max reward=0\nstate a owner=min reward=0\ntrans a -> a\n")
              .find("duplicate id") != std::string::npos);
    CHECK(parse_error_of("ocssg\nstate a owner=max\ntrans a -> a\n").find("missing delta") != std::string::npos);
    CHECK(parse_error_of("ssg rewards=states\nstate a owner=max\ntrans a -> a\n").find("missing state reward") !=
          std::string::npos);
}

TEST_CASE("appendix example parses")
{
    auto g = appendix_game();
    CHECK(g.states.size() == 5);
    CHECK(transition_count(g.states) == 7);
    CHECK(g.states[appendix_v()].id == "v");
    CHECK(g.states[appendix_v()].owner == Owner::Min);
}

TEST_CASE("validate reports violations")
{
    Ssg g;
    g.states.push_back({"a", Owner::Max, 0, {}, 0});
    CHECK(contains(validate(g), "a: no successor"));

    Ssg h;
    h.states.push_back({"a", Owner::Random, 0, {}, 0});
    h.states[0].transitions.push_back({0, Rational(0), {}, {}, 0});
    h.states[0].transitions.push_back({0, Rational(1), {}, {}, 0});
    CHECK(contains(validate(h), "positivity violated"));

    CHECK(validate(condon_fair_coin()).empty());
    CHECK(validate(appendix_game()).empty());
}

TEST_CASE("objective validation")
{
    CHECK_FALSE(validate(Objective{ObjectiveKind::Term, 0, {}}, 3).empty());
    CHECK(validate(Objective{ObjectiveKind::Term, 1, {}}, 3).empty());
    CHECK_FALSE(validate(Objective{ObjectiveKind::Reach, 0, StateMask(3, false)}, 3).empty());
    CHECK(validate(Objective{ObjectiveKind::Reach, 0, StateMask{false, true, false}}, 3).empty());
    for (auto tag : kLimitTags) {
        CHECK(parse_tag(tag_name(tag)) == tag);
        CHECK(complement(complement(tag)) == tag);
    }
}

TEST_CASE("round trip through the printer")
{
    auto oc = appendix_game();
    CHECK(std::get<OcSsg>(parse_model(print_model(oc))) == oc);

    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        Ssg g = to_ssg(random_game(rng, 4));
        auto text = print_model(g);
        auto back = std::get<Ssg>(parse_model(text));
        CHECK(back == g);
        CHECK(print_model(back) == text);
    }
    CHECK(print_model(ssg_from("ssg rewards=states\nstate a owner=rand reward=0\ntrans a -> a p=4/4\n")).find("p=1/1") !=
          std::string::npos);
}

TEST_CASE("counter deltas become transition rewards")
{
    auto walk = oc_from("ocssg\nstate w owner=rand\ntrans w -> w p=1/2 delta=-1\ntrans w -> w p=1/2 delta=1\n");
    auto g = oc_to_reward_ssg(walk);
    CHECK(g.reward_location == RewardLocation::OnTransitions);
    REQUIRE(g.states[0].transitions.size() == 2);
    CHECK(*g.states[0].transitions[0].reward == -1);
    CHECK(*g.states[0].transitions[1].reward == 1);

    auto app = appendix_game();
    auto r = oc_to_reward_ssg(app);
    CHECK(r.states.size() == app.states.size());
    CHECK(transition_count(r.states) == transition_count(app.states));
    for (std::size_t s = 0; s < app.states.size(); ++s)
        for (std::size_t k = 0; k < app.states[s].transitions.size(); ++k) {
            CHECK(r.states[s].transitions[k].reward == app.states[s].transitions[k].delta);
            CHECK(r.states[s].transitions[k].target == app.states[s].transitions[k].target);
        }
    CHECK(validate(r).empty());
}

TEST_CASE("transition rewards moved onto auxiliary states")
{
    auto loop = ssg_from("ssg rewards=transitions\nstate a owner=max\ntrans a -> a reward=-1\n");
    auto st = transition_to_state_rewards(loop);
    REQUIRE(st.states.size() == 2);
    CHECK(st.reward_location == RewardLocation::OnStates);
    CHECK(*st.states[0].reward == 0);
    CHECK(*st.states[1].reward == -1);
    CHECK(st.states[1].owner == Owner::Random);
    Objective o{ObjectiveKind::LimInfEqMinusInf, 0, {}};
    CHECK(enumerate_solve(loop, o).values[0] == 1);
    CHECK(enumerate_solve(st, o).values[0] == 1);

    auto app = oc_to_reward_ssg(appendix_game());
    auto expanded = transition_to_state_rewards(app);
    CHECK(expanded.states.size() == app.states.size() + transition_count(app.states));
    CHECK(validate(expanded).empty());

    // Term{1} on both encodings, each truncated at the same counter height.
    Objective term{ObjectiveKind::Term, 1, {}};
    for (int cap : {4, 8}) {
        auto a = bounded_counter_value(to_arena(app), term, cap);
        auto b = bounded_counter_value(to_arena(expanded), term, cap);
        CHECK(a[appendix_v()] == b[appendix_v()]);
    }
}

TEST_CASE("encodings agree on limit values")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 40; ++k) {
        Arena a = random_game(rng, 3);
        // Spread each state's reward onto individual transitions.
        Ssg g = to_ssg(a);
        Ssg t;
        t.reward_location = RewardLocation::OnTransitions;
        t.states = g.states;
        for (std::size_t s = 0; s < t.states.size(); ++s) {
            for (std::size_t e = 0; e < t.states[s].transitions.size(); ++e)
                t.states[s].transitions[e].reward = a.edges[s][e].weight;
            t.states[s].reward.reset();
        }
        REQUIRE(validate(t).empty());
        auto x = transition_to_state_rewards(t);
        auto base = enumerate_limit_values(to_arena(t));
        auto expanded = enumerate_limit_values(to_arena(x));
        for (auto tag : kLimitTags)
            for (std::size_t s = 0; s < a.size(); ++s)
                CHECK(base[tag].values[s] == expanded[tag].values[s]);
    }
}
