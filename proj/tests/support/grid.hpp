#pragma once

#include "ocssg/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ocssg::testing {

// Exhaustive small games, one representative per state relabelling.
// Controlled states pick one or two distinct successors; Random states move
// to one successor or split between two with p in {1/4, 1/2, 3/4}.
// Rewards sit on states, so every outgoing edge carries the state's reward.
std::vector<Arena> state_reward_grid(std::size_t states);

// Same shape with a delta per edge: up to two distinct (target, delta) edges.
std::vector<Arena> delta_grid(std::size_t states);

// Random games with 1-3 edges per state, rewards on states.
Arena random_game(std::mt19937_64& rng, std::size_t states);

// Only one player has choices, the other owner never appears.
Arena random_mdp(std::mt19937_64& rng, std::size_t states, Owner player);

// Reachability instance over states s = 0, ..., t = n-2, t' = n-1, with t and t'
// absorbing. Rewards are all zero.
Ssg random_reachability(std::mt19937_64& rng, std::size_t states);

// Games of the grid that have no Min (or Max) choices.
bool has_choices(const Arena& game, Owner owner);

}  // namespace ocssg::testing
