#include "fixtures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ocssg::testing {

std::string read_data(const std::string& name)
{
    std::ifstream in(std::string(OCSSG_TEST_DATA) + "/" + name);
    if (!in)
        throw std::runtime_error("missing test data " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Ssg ssg_from(std::string_view text) { return std::get<Ssg>(parse_model(text)); }
OcSsg oc_from(std::string_view text) { return std::get<OcSsg>(parse_model(text)); }

OcSsg appendix_game() { return oc_from(read_data("appendix_min_memory.ocssg")); }
StateIndex appendix_v() { return 0; }

Ssg condon_fair_coin() { return condon_biased(Rational(1, 2)); }

Ssg condon_biased(const Rational& to_t)
{
    Ssg g;
    g.reward_location = RewardLocation::OnStates;
    g.states.push_back({"s", Owner::Random, 0, {}, 0});
    g.states.push_back({"t", Owner::Max, 0, {}, 0});
    g.states.push_back({"tp", Owner::Max, 0, {}, 0});
    if (to_t == 1) {
        g.states[0].transitions.push_back({1, Rational(1), {}, {}, 0});
    } else {
        g.states[0].transitions.push_back({1, to_t, {}, {}, 0});
        g.states[0].transitions.push_back({2, Rational(1) - to_t, {}, {}, 0});
    }
    g.states[1].transitions.push_back({1, {}, {}, {}, 0});
    g.states[2].transitions.push_back({2, {}, {}, {}, 0});
    return g;
}

Arena fair_walk() { return biased_walk(Rational(1, 2)); }

Arena biased_walk(const Rational& down)
{
    Arena a;
    a.owner = {Owner::Random};
    a.names = {"w"};
    a.edges = {{{0, down, -1}, {0, Rational(1) - down, 1}}};
    return a;
}

Arena drift_chain(int sign)
{
    // a collects sign, b nothing; each state stays or moves with probability 1/2.
    Arena a;
    a.owner = {Owner::Random, Owner::Random};
    a.names = {"a", "b"};
    const Rational h(1, 2);
    a.edges = {{{0, h, sign}, {1, h, sign}}, {{0, h, 0}, {1, h, 0}}};
    return a;
}

double fair_walk_hit_within(long a, long n)
{
    // Reflection principle: P(min S_k <= -a, k <= n) = P(S_n >= a) + P(S_n > a).
    auto pmf = [n](long up) {
        return std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(up) + 1) - std::lgamma(double(n - up) + 1) -
                        double(n) * std::log(2.0));
    };
    double tail_ge = 0, tail_gt = 0;
    for (long up = 0; up <= n; ++up) {
        const long s = 2 * up - n;
        if (s >= a)
            tail_ge += pmf(up);
        if (s > a)
            tail_gt += pmf(up);
    }
    return tail_ge + tail_gt;
}

}  // namespace ocssg::testing
