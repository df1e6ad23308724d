#pragma once

#include "ocssg/model.hpp"

#include <stdexcept>

namespace ocssg {

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every absorbing state other than t and t' (all of its transitions are
// self-loops) is rerouted to t'.
Ssg route_sinks(const Ssg& game, StateIndex t, StateIndex t_prime);

// Minimum over both players jointly of the probability to reach {t, t'} from s is 1.
bool reaches_terminal_surely(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime);

// Reachability instance (rewards ignored) to a game with rewards on states:
// t and t' become Max states with a single edge back to s, r(t) = -1,
// r(t') = +1, all other rewards 0. Throws ReductionError when s can avoid
// {t, t'} after routing the sinks.
Ssg condon_to_limit(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime);

struct TermQuery {
    OcSsg game;
    StateIndex s = 0;
    int j = 0;
};

// The limit game with each transition's delta set to its source's reward, queried at j = |V|.
TermQuery condon_to_termination(const Ssg& game, StateIndex s, StateIndex t, StateIndex t_prime);

}  // namespace ocssg
