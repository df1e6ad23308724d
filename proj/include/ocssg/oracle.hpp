#pragma once

#include "ocssg/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ocssg {

struct OracleTooLarge : std::length_error {
    using std::length_error::length_error;
};

constexpr std::size_t kOracleLimit = std::size_t(1) << 20;

// Every pure memoryless profile, sup over Max of inf over Min, state by state.
// Limit tags and Reach only. Witnesses are set when one strategy attains the
// value at every state simultaneously.
SolveResult enumerate_solve(const Arena& game, const Objective& objective, std::size_t limit = kOracleLimit);
SolveResult enumerate_solve(const Ssg& game, const Objective& objective, std::size_t limit = kOracleLimit);
// The six limit tags from one pass over the profiles.
std::map<ObjectiveKind, SolveResult> enumerate_limit_values(const Arena& game, std::size_t limit = kOracleLimit);

// Term{j} and All(>=0) on the counter unfolding truncated at cap: a run whose
// counter exceeds cap stops there, counting as not terminated. Exact game
// values of that finite game. For All(>=0) the counter starts at 1 and j is
// ignored.
std::vector<Rational> bounded_counter_value(const Arena& game, const Objective& objective, int cap);

// ---- simulation ----

using AnyStrategy = std::variant<PureMemorylessStrategy, FiniteMemoryStrategy>;

struct SimulationConfig {
    StateIndex start = 0;
    std::size_t steps = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<int> j;  // record the first time the sum reaches -j
    bool stop_at_termination = false;
};

struct TrialStats {
    long min_prefix = 0;
    long max_prefix = 0;
    long final_sum = 0;
    std::size_t steps_run = 0;
    std::optional<std::size_t> hit_time;
};

struct RunStatistics {
    std::string rng = "mt19937_64";
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t steps = 0;
    std::size_t terminated = 0;
    double termination_frequency = 0;
    double mean_payoff_average = 0;  // average over trials of final_sum / steps_run
    long min_prefix = 0;
    long max_prefix = 0;
    std::vector<TrialStats> per_trial;
};

std::uint64_t splitmix64(std::uint64_t x);
// Seed of the generator used for one trial.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// Throws std::invalid_argument when a controlled state is not resolved.
RunStatistics simulate(const Arena& game, const std::vector<AnyStrategy>& strategies, const SimulationConfig& config);

// Finite-horizon proxies: LimInf=-inf: the sum drops below -B; LimInf=+inf:
// the sum exceeds +B and stays above it to the horizon; Mean>: final average
// > 0; Term{j}: the sum reaches -j; Reach: target visited; complements negate.
double estimate_objective(const Arena& game, const std::vector<AnyStrategy>& strategies, const Objective& objective,
                          long bound, const SimulationConfig& config);

}  // namespace ocssg
