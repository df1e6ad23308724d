#include "ocssg/graph.hpp"

#include <algorithm>

namespace ocssg {

SccResult strongly_connected(const Adjacency& succ, const StateMask& alive)
{
    const std::size_t n = succ.size();
    SccResult r;
    r.component.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<StateIndex> stack;
    int counter = 0;

    struct Frame {
        StateIndex v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (StateIndex root = 0; root < n; ++root) {
        if (!alive[root] || index[root] >= 0)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const StateIndex v = f.v;
            if (f.next < succ[v].size()) {
                StateIndex w = succ[v][f.next++];
                if (!alive[w])
                    continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                StateIndex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    r.component[w] = r.count;
                } while (w != v);
                ++r.count;
            }
            call.pop_back();
            if (!call.empty()) {
                StateIndex u = call.back().v;
                low[u] = std::min(low[u], low[v]);
            }
        }
    }
    return r;
}

Adjacency successors(const Arena& arena)
{
    Adjacency succ(arena.size());
    for (std::size_t s = 0; s < arena.size(); ++s)
        for (const auto& e : arena.edges[s])
            succ[s].push_back(e.target);
    return succ;
}

StateMask backward_reach(const Arena& arena, const StateMask& target)
{
    const std::size_t n = arena.size();
    Adjacency pred(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& e : arena.edges[s])
            pred[e.target].push_back(static_cast<StateIndex>(s));
    StateMask seen = target;
    std::vector<StateIndex> work;
    for (StateIndex s = 0; s < n; ++s)
        if (seen[s])
            work.push_back(s);
    while (!work.empty()) {
        StateIndex t = work.back();
        work.pop_back();
        for (StateIndex p : pred[t])
            if (!seen[p]) {
                seen[p] = true;
                work.push_back(p);
            }
    }
    return seen;
}

StateMask forward_reach(const Arena& arena, const StateMask& from)
{
    StateMask seen = from;
    std::vector<StateIndex> work;
    for (StateIndex s = 0; s < arena.size(); ++s)
        if (seen[s])
            work.push_back(s);
    while (!work.empty()) {
        StateIndex s = work.back();
        work.pop_back();
        for (const auto& e : arena.edges[s])
            if (!seen[e.target]) {
                seen[e.target] = true;
                work.push_back(e.target);
            }
    }
    return seen;
}

StateMask singleton(std::size_t n, StateIndex s)
{
    StateMask m(n, false);
    m[s] = true;
    return m;
}

std::size_t count(const StateMask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

}  // namespace ocssg
