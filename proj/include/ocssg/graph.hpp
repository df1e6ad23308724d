#pragma once

#include "ocssg/model.hpp"

#include <vector>

namespace ocssg {

using Adjacency = std::vector<std::vector<StateIndex>>;

struct SccResult {
    std::vector<int> component;  // -1 on states outside the alive mask
    int count = 0;
};

// Tarjan on the subgraph induced by alive; edges to dead states are ignored.
SccResult strongly_connected(const Adjacency& succ, const StateMask& alive);

Adjacency successors(const Arena& arena);

// States with a path into target (target included).
StateMask backward_reach(const Arena& arena, const StateMask& target);
StateMask forward_reach(const Arena& arena, const StateMask& from);

StateMask singleton(std::size_t n, StateIndex s);
std::size_t count(const StateMask& m);

}  // namespace ocssg
