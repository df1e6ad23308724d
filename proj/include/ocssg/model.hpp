#pragma once

#include "ocssg/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ocssg {

using StateIndex = std::uint32_t;
using StateMask = std::vector<bool>;

enum class Owner { Max, Min, Random };
enum class Player { Max, Min };
enum class Direction { Max, Min };
enum class RewardLocation { OnStates, OnTransitions };

struct Transition {
    StateIndex target = 0;
    std::optional<Rational> probability;
    std::optional<int> reward;
    std::optional<int> delta;
    int line = 0;

    bool operator==(const Transition& o) const
    {
        return target == o.target && probability == o.probability && reward == o.reward &&
               delta == o.delta;
    }
};

struct State {
    std::string id;
    Owner owner = Owner::Random;
    std::optional<int> reward;
    std::vector<Transition> transitions;
    int line = 0;

    bool operator==(const State& o) const
    {
        return id == o.id && owner == o.owner && reward == o.reward && transitions == o.transitions;
    }
};

struct Ssg {
    RewardLocation reward_location = RewardLocation::OnStates;
    std::vector<State> states;

    bool operator==(const Ssg& o) const
    {
        return reward_location == o.reward_location && states == o.states;
    }
};

// Transitions carry counter deltas; rewards are unused.
struct OcSsg {
    std::vector<State> states;

    bool operator==(const OcSsg& o) const { return states == o.states; }
};

using Model = std::variant<Ssg, OcSsg>;

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what),
          line(line_), column(column_)
    {}
};

// Parses and validates. Semantic problems are reported through ParseError
// with the line of the offending declaration.
Model parse_model(std::istream& in);
Model parse_model(std::string_view text);
std::string print_model(const Model& model);

std::vector<std::string> validate(const Ssg& game);
std::vector<std::string> validate(const OcSsg& game);

Ssg oc_to_reward_ssg(const OcSsg& game);
Ssg transition_to_state_rewards(const Ssg& game);

std::optional<StateIndex> find_state(const std::vector<State>& states, std::string_view id);

// Solver-side view. Every edge has a weight; state rewards are moved onto the
// outgoing edges of their state, so the reward collected after n steps is
// r(v_0)+...+r(v_{n-1}). Controlled edges carry probability 1.
struct Edge {
    StateIndex target;
    Rational probability;
    int weight;
};

struct Arena {
    std::vector<Owner> owner;
    std::vector<std::vector<Edge>> edges;
    std::vector<std::string> names;

    std::size_t size() const { return owner.size(); }
    bool controlled(StateIndex s) const { return owner[s] != Owner::Random; }
};

Arena to_arena(const Ssg& game);
Arena to_arena(const OcSsg& game);
Ssg to_ssg(const Arena& arena);
OcSsg to_ocssg(const Arena& arena);

struct PureMemorylessStrategy {
    Player player = Player::Max;
    // Transition index per state, -1 on states not owned by player.
    std::vector<int> choice;

    bool operator==(const PureMemorylessStrategy&) const = default;
};

// Memory is updated on every step from (memory, source state, transition index);
// transition indices distinguish parallel edges with different rewards.
struct FiniteMemoryStrategy {
    Player player = Player::Min;
    std::size_t memory_size = 1;
    std::size_t initial = 0;
    std::vector<std::vector<std::vector<std::size_t>>> update;  // [memory][state][transition]
    std::vector<std::vector<int>> choice;                        // [memory][state]
};

Owner owner_of(Player p);
Player opponent(Player p);

// Owned states of player keep only their chosen edge (probability 1, turned Random).
Arena fix_strategy(const Arena& arena, const PureMemorylessStrategy& strategy);
// Combined choice vector (-1 on Random states); the result is a Markov chain.
Arena induce_chain(const Arena& arena, const std::vector<int>& choice);

enum class ObjectiveKind {
    Term,
    LimInfEqMinusInf,
    LimInfEqPlusInf,
    LimInfGtMinusInf,
    LimInfLtPlusInf,
    MeanGt,
    MeanLeq,
    Reach,
    AllGeqZero,
};

struct Objective {
    ObjectiveKind kind = ObjectiveKind::LimInfEqMinusInf;
    int j = 0;
    StateMask target;
};

constexpr ObjectiveKind kLimitTags[] = {
    ObjectiveKind::LimInfEqMinusInf, ObjectiveKind::LimInfEqPlusInf, ObjectiveKind::LimInfGtMinusInf,
    ObjectiveKind::LimInfLtPlusInf,  ObjectiveKind::MeanGt,          ObjectiveKind::MeanLeq,
};

bool is_limit(ObjectiveKind kind);
ObjectiveKind complement(ObjectiveKind kind);
std::string tag_name(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_tag(std::string_view name);
std::vector<std::string> validate(const Objective& objective, std::size_t state_count);

struct SolveResult {
    std::vector<Rational> values;
    std::optional<PureMemorylessStrategy> witness_max;
    std::optional<PureMemorylessStrategy> witness_min;
    StateMask value_one_set;
};

StateMask value_one_mask(const std::vector<Rational>& values);

}  // namespace ocssg
