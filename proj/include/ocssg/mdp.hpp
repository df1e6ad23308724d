#pragma once

#include "ocssg/model.hpp"

#include <optional>
#include <vector>

namespace ocssg {

// An MDP is an Arena in which at most one of Max/Min owns states; those states
// are the controller's. Direction says whether the controller maximizes or
// minimizes the probability (or the gain).

Player controller_of(const Arena& mdp);
// All controlled states relabelled Max; throws when both players are present.
Arena as_maximizer(const Arena& mdp);

struct Mec {
    std::vector<StateIndex> members;
    std::vector<std::vector<int>> allowed;  // aligned with members: edge indices staying inside
};

// Restriction of an arena to a set of states and per-state edge subsets.
struct SubArena {
    Arena arena;
    std::vector<StateIndex> to_global;
    std::vector<std::vector<int>> edge_index;  // local edge -> global edge index
};

SubArena restrict(const Arena& arena, const std::vector<StateIndex>& members,
                  const std::vector<std::vector<int>>& allowed);
SubArena restrict(const Arena& arena, const Mec& mec);

SolveResult solve_reachability(const Arena& mdp, const StateMask& target, Direction direction);

struct AlmostSureResult {
    StateMask winning;
    std::vector<int> max_choice;  // attractor choice on Max states of winning
    std::vector<int> min_choice;  // spoiling choice on Min states outside winning
};

// Max's almost-sure reachability set; Min and Random both play against Max.
AlmostSureResult almost_sure_reach_game(const Arena& game, const StateMask& target);
StateMask almost_sure_reach(const Arena& game, const StateMask& target);

struct MeanPayoff {
    std::vector<Rational> gain;
    std::vector<Rational> bias;  // sums to 0 against the stationary law of each recurrent class
    PureMemorylessStrategy strategy;
};

MeanPayoff expected_mean_payoff(const Arena& mdp, Direction direction);

std::vector<Mec> mec_decompose(const Arena& mdp);

struct MpAnswer {
    bool yes = false;
    std::optional<PureMemorylessStrategy> strategy;
    int rounds = 0;
};

MpAnswer procedure_mp(const Arena& mdp, StateIndex s);

struct CreditMap {
    std::vector<std::optional<int>> credit;  // nullopt is infinity
    int cutoff = 0;

    StateMask finite() const;
    StateMask zero() const;
};

// Minimal initial credit for keeper to keep every prefix sum >= 0. Random
// states belong to the adversary.
CreditMap energy_min_credit(const Arena& game, Player keeper);
// Keeper's choice: smallest index minimising the credit needed after the step.
std::vector<int> energy_keeper_choice(const Arena& game, Player keeper, const CreditMap& credits);

struct QualitativeLimit {
    StateMask winning;
    PureMemorylessStrategy witness;
    StateMask region;     // union of the end-component regions used (maximizing form)
    StateMask credit_zero;  // W_+ for LimInf>-inf in maximizing form, empty otherwise
};

QualitativeLimit qualitative_limit(const Arena& mdp, ObjectiveKind tag, Direction direction);
SolveResult quantitative_limit(const Arena& mdp, ObjectiveKind tag, Direction direction);

}  // namespace ocssg
