#pragma once

#include "ocssg/model.hpp"

#include <optional>
#include <utility>

namespace ocssg {

// All functions here read edge weights as counter deltas (see to_arena(OcSsg)).

struct LevelGame {
    Arena arena;
    int j = 0;
    int top = 0;  // levels run over [-j, top]
    std::size_t base_size = 0;
    StateMask target;  // R: bottom level, plus every level of a safe base state

    int levels() const { return top + j + 1; }
    StateIndex index(StateIndex u, int level) const;
    std::pair<StateIndex, int> base_of(StateIndex v) const;
};

// Safe states are those with Val^{LimInf=-inf} = 1. Requires 0 < j < |V|.
LevelGame build_level_game(const Arena& game, const StateMask& safe, int j);
// Same construction with an explicit top level.
LevelGame build_level_game_window(const Arena& game, const StateMask& safe, int j, int top);

StateMask liminf_minus_inf_safe(const Arena& game);

enum class TermBranch { LevelGame, LongRun };

struct TermDecision {
    bool value_one = false;
    TermBranch branch = TermBranch::LevelGame;
    StateMask safe;
    StateMask level_winning;  // over the level game, empty on the long-run branch
};

TermDecision decide_term_one(const Arena& game, StateIndex s, int j);
TermDecision decide_term_one(const OcSsg& game, StateIndex s, int j);
// Level-game answer with the window widened to [-j, |V|], for any j >= 1.
bool decide_term_one_widened(const Arena& game, StateIndex s, int j);

bool decide_term_zero(const Arena& game, StateIndex s, int j);
bool decide_term_zero(const OcSsg& game, StateIndex s, int j);

struct TermStrategies {
    bool value_one = false;
    std::optional<PureMemorylessStrategy> max;
    std::optional<FiniteMemoryStrategy> min;
};

TermStrategies synthesize_term_strategies(const Arena& game, StateIndex s, int j);

// Game states times memory, with Min's moves resolved by the strategy.
// Product state (u, m) has index m * |V| + u.
Arena memory_product(const Arena& game, const FiniteMemoryStrategy& strategy);

// Does Max still terminate with probability 1 against the fixed Min strategy?
bool term_value_one_against(const Arena& game, const FiniteMemoryStrategy& strategy, StateIndex s, int j);
bool term_value_one_against(const Arena& game, const PureMemorylessStrategy& strategy, StateIndex s, int j);

}  // namespace ocssg
