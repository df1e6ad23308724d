#pragma once

#include "ocssg/model.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ocssg {

// A chain is an Arena whose states are all Random.

struct BsccAnalysis {
    std::vector<StateIndex> members;
    std::vector<Rational> stationary;             // aligned with members
    Rational mean_payoff;                         // per-step drift
    std::optional<std::vector<long>> potential;   // aligned with members, anchor members[0] has 0
    std::map<ObjectiveKind, bool> classification;  // the six limit tags
    Integer determinant;                          // of the stationary system
};

struct BsccDecomposition {
    std::vector<std::vector<StateIndex>> bsccs;  // each sorted, ordered by smallest member
    std::vector<StateIndex> transient;
};

struct ReachSolution {
    std::vector<Rational> values;
    Integer determinant;  // 1 when no system had to be solved
};

void require_chain(const Arena& chain);

BsccDecomposition bscc_decompose(const Arena& chain);

// Throws std::invalid_argument when bscc is not a bottom SCC.
BsccAnalysis analyze_bscc(const Arena& chain, const std::vector<StateIndex>& bscc);

ReachSolution reach_probabilities_detailed(const Arena& chain, const StateMask& target);
std::vector<Rational> reach_probabilities(const Arena& chain, const StateMask& target);

StateMask winning_bsccs(const Arena& chain, const std::vector<BsccAnalysis>& analyses, ObjectiveKind tag);
std::vector<Rational> chain_tail_value(const Arena& chain, ObjectiveKind tag);
// All six limit tags with one decomposition.
std::map<ObjectiveKind, std::vector<Rational>> chain_tail_values(const Arena& chain);

}  // namespace ocssg
