#pragma once

#include "ocssg/model.hpp"

#include <cstddef>

namespace ocssg {

enum class SolveMethod { Improvement, Enumeration };
enum class Relation { Greater, GreaterEqual };

struct SsgSolve {
    SolveResult result;
    PureMemorylessStrategy max_witness;
    PureMemorylessStrategy min_witness;
    SolveMethod method = SolveMethod::Improvement;
    bool certified = false;      // improvement ended in mutual best responses
    bool cross_checked = false;  // enumeration also ran and agreed
    int improvement_rounds = 0;
};

struct SsgOptions {
    // Enumeration always runs when Min's strategy space is at most this large.
    std::size_t enumeration_limit = std::size_t(1) << 12;
    // Uncertified improvement falls back to enumeration up to this size.
    std::size_t fallback_limit = std::size_t(1) << 20;
};

std::size_t strategy_space(const Arena& game, Player p);

// Fixes one player and solves the other player's optimal response exactly.
// Throws std::invalid_argument on an incomplete strategy.
SolveResult best_response(const Arena& game, const PureMemorylessStrategy& fixed, ObjectiveKind tag);

SsgSolve solve_limit_ssg(const Arena& game, ObjectiveKind tag, const SsgOptions& options = {});
SsgSolve solve_limit_ssg(const Ssg& game, ObjectiveKind tag, const SsgOptions& options = {});

bool decide_threshold(const Arena& game, ObjectiveKind tag, StateIndex s, const Rational& p, Relation relation);

// Both witnesses reproduce values as best responses.
bool mutual_best_responses(const Arena& game, ObjectiveKind tag, const std::vector<Rational>& values,
                           const PureMemorylessStrategy& max_strategy, const PureMemorylessStrategy& min_strategy);

// Max reaches target, Min avoids it.
struct ReachGameSolve {
    std::vector<Rational> values;
    PureMemorylessStrategy max_witness;
    PureMemorylessStrategy min_witness;
};

ReachGameSolve solve_reachability_game(const Arena& game, const StateMask& target);

}  // namespace ocssg
