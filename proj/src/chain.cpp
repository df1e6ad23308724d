#include "ocssg/chain.hpp"

#include "ocssg/graph.hpp"
#include "ocssg/linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocssg {

void require_chain(const Arena& chain)
{
    for (std::size_t s = 0; s < chain.size(); ++s)
        if (chain.owner[s] != Owner::Random)
            throw std::invalid_argument("expected a Markov chain, state " + chain.names[s] + " is controlled");
}

BsccDecomposition bscc_decompose(const Arena& chain)
{
    require_chain(chain);
    const std::size_t n = chain.size();
    auto scc = strongly_connected(successors(chain), StateMask(n, true));
    std::vector<bool> bottom(scc.count, true);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& e : chain.edges[s])
            if (scc.component[e.target] != scc.component[s])
                bottom[scc.component[s]] = false;
    BsccDecomposition out;
    std::vector<int> slot(scc.count, -1);
    for (StateIndex s = 0; s < n; ++s) {
        int c = scc.component[s];
        if (!bottom[c]) {
            out.transient.push_back(s);
            continue;
        }
        if (slot[c] < 0) {
            slot[c] = static_cast<int>(out.bsccs.size());
            out.bsccs.emplace_back();
        }
        out.bsccs[slot[c]].push_back(s);
    }
    return out;
}

BsccAnalysis analyze_bscc(const Arena& chain, const std::vector<StateIndex>& bscc)
{
    require_chain(chain);
    const std::size_t n = chain.size();
    const std::size_t k = bscc.size();
    if (k == 0)
        throw std::invalid_argument("analyze_bscc: empty set");
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < k; ++i)
        pos[bscc[i]] = static_cast<int>(i);
    for (StateIndex s : bscc)
        for (const auto& e : chain.edges[s])
            if (pos[e.target] < 0)
                throw std::invalid_argument("analyze_bscc: set is not bottom");
    StateMask alive(n, false);
    for (StateIndex s : bscc)
        alive[s] = true;
    if (strongly_connected(successors(chain), alive).count != 1)
        throw std::invalid_argument("analyze_bscc: set is not strongly connected");

    BsccAnalysis a;
    a.members = bscc;

    // pi (P - I) = 0 on all but the last column, sum pi = 1.
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> rhs(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& e : chain.edges[bscc[i]]) {
            std::size_t col = static_cast<std::size_t>(pos[e.target]);
            if (col + 1 < k)
                m[col][i] += e.probability;
        }
        if (i + 1 < k)
            m[i][i] -= 1;
    }
    for (std::size_t i = 0; i < k; ++i)
        m[k - 1][i] = 1;
    rhs[k - 1] = 1;
    auto sol = solve_linear_system(m, rhs);
    a.stationary = std::move(sol.x);
    a.determinant = sol.determinant;

    a.mean_payoff = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Rational step = 0;
        for (const auto& e : chain.edges[bscc[i]])
            step += e.probability * e.weight;
        a.mean_payoff += a.stationary[i] * step;
    }

    std::vector<long> h(k, 0);
    std::vector<bool> set(k, false);
    set[0] = true;
    std::vector<std::size_t> work{0};
    bool consistent = true;
    while (!work.empty() && consistent) {
        std::size_t i = work.back();
        work.pop_back();
        for (const auto& e : chain.edges[bscc[i]]) {
            std::size_t t = static_cast<std::size_t>(pos[e.target]);
            long want = h[i] + e.weight;
            if (!set[t]) {
                set[t] = true;
                h[t] = want;
                work.push_back(t);
            } else if (h[t] != want) {
                consistent = false;
                break;
            }
        }
    }
    if (consistent)
        a.potential = std::move(h);

    const int sign = sgn(a.mean_payoff);
    const bool bounded = a.potential.has_value();
    a.classification[ObjectiveKind::LimInfEqPlusInf] = sign > 0;
    a.classification[ObjectiveKind::MeanGt] = sign > 0;
    a.classification[ObjectiveKind::MeanLeq] = sign <= 0;
    a.classification[ObjectiveKind::LimInfLtPlusInf] = sign <= 0;
    a.classification[ObjectiveKind::LimInfEqMinusInf] = sign < 0 || (sign == 0 && !bounded);
    a.classification[ObjectiveKind::LimInfGtMinusInf] = sign > 0 || (sign == 0 && bounded);
    return a;
}

ReachSolution reach_probabilities_detailed(const Arena& chain, const StateMask& target)
{
    require_chain(chain);
    const std::size_t n = chain.size();
    StateMask can = backward_reach(chain, target);
    std::vector<int> idx(n, -1);
    std::vector<StateIndex> open;
    for (StateIndex s = 0; s < n; ++s)
        if (can[s] && !target[s]) {
            idx[s] = static_cast<int>(open.size());
            open.push_back(s);
        }
    ReachSolution out;
    out.values.assign(n, Rational(0));
    out.determinant = 1;
    for (StateIndex s = 0; s < n; ++s)
        if (target[s])
            out.values[s] = 1;
    if (open.empty())
        return out;
    const std::size_t k = open.size();
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> rhs(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        m[i][i] = 1;
        for (const auto& e : chain.edges[open[i]]) {
            if (target[e.target])
                rhs[i] += e.probability;
            else if (idx[e.target] >= 0)
                m[i][idx[e.target]] -= e.probability;
        }
    }
    auto sol = solve_linear_system(m, rhs);
    for (std::size_t i = 0; i < k; ++i)
        out.values[open[i]] = sol.x[i];
    out.determinant = sol.determinant;
    return out;
}

std::vector<Rational> reach_probabilities(const Arena& chain, const StateMask& target)
{
    return reach_probabilities_detailed(chain, target).values;
}

StateMask winning_bsccs(const Arena& chain, const std::vector<BsccAnalysis>& analyses, ObjectiveKind tag)
{
    StateMask w(chain.size(), false);
    for (const auto& a : analyses)
        if (a.classification.at(tag))
            for (StateIndex s : a.members)
                w[s] = true;
    return w;
}

static std::vector<BsccAnalysis> analyze_all(const Arena& chain)
{
    std::vector<BsccAnalysis> out;
    for (const auto& b : bscc_decompose(chain).bsccs)
        out.push_back(analyze_bscc(chain, b));
    return out;
}

std::vector<Rational> chain_tail_value(const Arena& chain, ObjectiveKind tag)
{
    if (!is_limit(tag))
        throw std::invalid_argument("chain_tail_value: not a limit objective");
    return reach_probabilities(chain, winning_bsccs(chain, analyze_all(chain), tag));
}

std::map<ObjectiveKind, std::vector<Rational>> chain_tail_values(const Arena& chain)
{
    auto analyses = analyze_all(chain);
    std::map<StateMask, std::vector<Rational>> cache;
    std::map<ObjectiveKind, std::vector<Rational>> out;
    for (ObjectiveKind tag : kLimitTags) {
        StateMask w = winning_bsccs(chain, analyses, tag);
        auto it = cache.find(w);
        if (it == cache.end())
            it = cache.emplace(w, reach_probabilities(chain, w)).first;
        out[tag] = it->second;
    }
    return out;
}

}  // namespace ocssg
