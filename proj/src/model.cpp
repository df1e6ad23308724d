#include "ocssg/model.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ocssg {

namespace {

struct Violation {
    int line;
    std::string message;
};

std::string owner_name(Owner o)
{
    switch (o) {
    case Owner::Max: return "max";
    case Owner::Min: return "min";
    case Owner::Random: return "rand";
    }
    return "?";
}

bool unit_value(int v) { return v >= -1 && v <= 1; }

// Shared structural checks. mode: 0 ssg on states, 1 ssg on transitions, 2 ocssg.
std::vector<Violation> check(const std::vector<State>& states, int mode)
{
    std::vector<Violation> out;
    std::set<std::string> seen;
    for (const auto& st : states) {
        if (!seen.insert(st.id).second)
            out.push_back({st.line, "duplicate id '" + st.id + "'"});
        if (mode == 0 && !st.reward)
            out.push_back({st.line, st.id + ": missing state reward"});
        if (mode != 0 && st.reward)
            out.push_back({st.line, st.id + ": reward not allowed on states here"});
        if (st.reward && !unit_value(*st.reward))
            out.push_back({st.line, st.id + ": reward outside {-1,0,1}"});
        if (st.transitions.empty()) {
            out.push_back({st.line, st.id + ": no successor"});
            continue;
        }
        Rational sum = 0;
        bool positive = true;
        for (const auto& tr : st.transitions) {
            if (tr.target >= states.size())
                out.push_back({tr.line, st.id + ": dangling target"});
            if (st.owner == Owner::Random) {
                if (!tr.probability) {
                    out.push_back({tr.line, st.id + ": missing probability on random state"});
                } else {
                    if (*tr.probability <= 0)
                        positive = false;
                    sum += *tr.probability;
                }
            } else if (tr.probability) {
                out.push_back({tr.line, st.id + ": probability on controlled state"});
            }
            if (mode == 1 && !tr.reward)
                out.push_back({tr.line, st.id + ": missing transition reward"});
            if (mode != 1 && tr.reward)
                out.push_back({tr.line, st.id + ": reward not allowed on transitions here"});
            if (mode == 2 && !tr.delta)
                out.push_back({tr.line, st.id + ": missing delta"});
            if (mode != 2 && tr.delta)
                out.push_back({tr.line, st.id + ": delta not allowed in ssg"});
            if (tr.reward && !unit_value(*tr.reward))
                out.push_back({tr.line, st.id + ": reward outside {-1,0,1}"});
            if (tr.delta && !unit_value(*tr.delta))
                out.push_back({tr.line, st.id + ": delta outside {-1,0,1}"});
        }
        if (st.owner == Owner::Random) {
            if (!positive)
                out.push_back({st.line, st.id + ": positivity violated"});
            else if (sum != 1)
                out.push_back({st.line, st.id + ": probabilities sum " + format_rational(sum) + " ≠ 1"});
        }
    }
    return out;
}

std::vector<std::string> messages(const std::vector<Violation>& v)
{
    std::vector<std::string> out;
    for (const auto& x : v)
        out.push_back(x.message);
    return out;
}

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

int parse_unit(const Token& tok, std::string_view value, int line, const char* what)
{
    if (value == "-1")
        return -1;
    if (value == "0" || value == "+0" || value == "-0")
        return 0;
    if (value == "1" || value == "+1")
        return 1;
    throw ParseError(line, tok.column, std::string("expected ") + what + " in {-1,0,1}, got '" + std::string(value) + "'");
}

struct PendingTransition {
    std::string src;
    std::string dst;
    int dst_column;
    Transition tr;
};

}  // namespace

Model parse_model(std::istream& in)
{
    std::string line;
    int line_no = 0;
    int mode = -1;
    std::vector<State> states;
    std::unordered_map<std::string, StateIndex> index;
    std::vector<PendingTransition> pending;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        const std::string& head = toks[0].text;
        if (mode < 0) {
            if (head == "ocssg") {
                if (toks.size() != 1)
                    throw ParseError(line_no, toks[1].column, "unexpected token after 'ocssg'");
                mode = 2;
            } else if (head == "ssg") {
                mode = 0;
                if (toks.size() > 2)
                    throw ParseError(line_no, toks[2].column, "unexpected token after header");
                if (toks.size() == 2) {
                    if (toks[1].text == "rewards=states")
                        mode = 0;
                    else if (toks[1].text == "rewards=transitions")
                        mode = 1;
                    else
                        throw ParseError(line_no, toks[1].column, "expected 'rewards=states' or 'rewards=transitions'");
                }
            } else {
                throw ParseError(line_no, toks[0].column, "expected header 'ssg' or 'ocssg'");
            }
            continue;
        }
        if (head == "state") {
            if (toks.size() < 3)
                throw ParseError(line_no, static_cast<int>(line.size()) + 1, "expected '<id> owner=...'");
            State st;
            st.id = toks[1].text;
            st.line = line_no;
            bool has_owner = false;
            for (std::size_t k = 2; k < toks.size(); ++k) {
                const auto& t = toks[k];
                auto eq = t.text.find('=');
                std::string key = t.text.substr(0, eq);
                std::string value = eq == std::string::npos ? "" : t.text.substr(eq + 1);
                if (key == "owner" && eq != std::string::npos) {
                    if (value == "max")
                        st.owner = Owner::Max;
                    else if (value == "min")
                        st.owner = Owner::Min;
                    else if (value == "rand")
                        st.owner = Owner::Random;
                    else
                        throw ParseError(line_no, t.column, "expected owner max|min|rand");
                    has_owner = true;
                } else if (key == "reward" && eq != std::string::npos) {
                    st.reward = parse_unit(t, value, line_no, "reward");
                } else {
                    throw ParseError(line_no, t.column, "unexpected token '" + t.text + "'");
                }
            }
            if (!has_owner)
                throw ParseError(line_no, toks[1].column, "missing owner= for state '" + st.id + "'");
            if (index.count(st.id))
                throw ParseError(line_no, toks[1].column, "duplicate id '" + st.id + "'");
            index[st.id] = static_cast<StateIndex>(states.size());
            states.push_back(std::move(st));
        } else if (head == "trans") {
            if (toks.size() < 4 || toks[2].text != "->")
                throw ParseError(line_no, toks.size() > 2 ? toks[2].column : static_cast<int>(line.size()) + 1,
                                 "expected '<src> -> <dst>'");
            PendingTransition p;
            p.src = toks[1].text;
            p.dst = toks[3].text;
            p.dst_column = toks[3].column;
            p.tr.line = line_no;
            for (std::size_t k = 4; k < toks.size(); ++k) {
                const auto& t = toks[k];
                auto eq = t.text.find('=');
                std::string key = t.text.substr(0, eq);
                std::string value = eq == std::string::npos ? "" : t.text.substr(eq + 1);
                if (eq == std::string::npos)
                    throw ParseError(line_no, t.column, "unexpected token '" + t.text + "'");
                if (key == "p") {
                    try {
                        p.tr.probability = parse_rational(value);
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(line_no, t.column, e.what());
                    }
                } else if (key == "reward") {
                    p.tr.reward = parse_unit(t, value, line_no, "reward");
                } else if (key == "delta") {
                    p.tr.delta = parse_unit(t, value, line_no, "delta");
                } else {
                    throw ParseError(line_no, t.column, "unexpected key '" + key + "'");
                }
            }
            if (!index.count(p.src))
                throw ParseError(line_no, toks[1].column, "unknown source state '" + p.src + "'");
            pending.push_back(std::move(p));
        } else {
            throw ParseError(line_no, toks[0].column, "expected 'state' or 'trans'");
        }
    }
    if (mode < 0)
        throw ParseError(line_no + 1, 1, "missing header");

    for (auto& p : pending) {
        auto it = index.find(p.dst);
        if (it == index.end())
            throw ParseError(p.tr.line, p.dst_column, "dangling target '" + p.dst + "'");
        p.tr.target = it->second;
        states[index[p.src]].transitions.push_back(p.tr);
    }
    auto violations = check(states, mode);
    if (!violations.empty())
        throw ParseError(violations.front().line, 1, violations.front().message);
    if (mode == 2)
        return OcSsg{std::move(states)};
    return Ssg{mode == 0 ? RewardLocation::OnStates : RewardLocation::OnTransitions, std::move(states)};
}

Model parse_model(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_model(in);
}

std::string print_model(const Model& model)
{
    std::ostringstream out;
    const std::vector<State>* states = nullptr;
    if (const auto* g = std::get_if<Ssg>(&model)) {
        out << "ssg rewards=" << (g->reward_location == RewardLocation::OnStates ? "states" : "transitions") << "\n";
        states = &g->states;
    } else {
        out << "ocssg\n";
        states = &std::get<OcSsg>(model).states;
    }
    for (const auto& st : *states) {
        out << "state " << st.id << " owner=" << owner_name(st.owner);
        if (st.reward)
            out << " reward=" << *st.reward;
        out << "\n";
    }
    for (const auto& st : *states) {
        for (const auto& tr : st.transitions) {
            out << "trans " << st.id << " -> " << (*states)[tr.target].id;
            if (tr.probability)
                out << " p=" << format_rational(*tr.probability);
            if (tr.reward)
                out << " reward=" << *tr.reward;
            if (tr.delta)
                out << " delta=" << *tr.delta;
            out << "\n";
        }
    }
    return out.str();
}

std::vector<std::string> validate(const Ssg& game)
{
    return messages(check(game.states, game.reward_location == RewardLocation::OnStates ? 0 : 1));
}

std::vector<std::string> validate(const OcSsg& game) { return messages(check(game.states, 2)); }

std::optional<StateIndex> find_state(const std::vector<State>& states, std::string_view id)
{
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].id == id)
            return static_cast<StateIndex>(i);
    return std::nullopt;
}

Ssg oc_to_reward_ssg(const OcSsg& game)
{
    Ssg out{RewardLocation::OnTransitions, game.states};
    for (auto& st : out.states) {
        st.reward.reset();
        for (auto& tr : st.transitions) {
            tr.reward = tr.delta;
            tr.delta.reset();
        }
    }
    return out;
}

Ssg transition_to_state_rewards(const Ssg& game)
{
    if (game.reward_location != RewardLocation::OnTransitions)
        throw std::invalid_argument("transition_to_state_rewards: rewards are already on states");
    std::set<std::string> used;
    for (const auto& st : game.states)
        used.insert(st.id);
    Ssg out{RewardLocation::OnStates, {}};
    out.states = game.states;
    std::vector<State> aux;
    for (std::size_t s = 0; s < game.states.size(); ++s) {
        auto& st = out.states[s];
        st.reward = 0;
        for (std::size_t k = 0; k < st.transitions.size(); ++k) {
            auto& tr = st.transitions[k];
            std::string name = st.id + "~" + std::to_string(k);
            while (!used.insert(name).second)
                name += "'";
            State a;
            a.id = name;
            a.owner = Owner::Random;
            a.reward = tr.reward.value_or(0);
            a.transitions.push_back(Transition{tr.target, Rational(1), std::nullopt, std::nullopt, 0});
            tr.target = static_cast<StateIndex>(game.states.size() + aux.size());
            tr.reward.reset();
            aux.push_back(std::move(a));
        }
    }
    for (auto& a : aux)
        out.states.push_back(std::move(a));
    return out;
}

namespace {

Arena arena_from(const std::vector<State>& states, int mode)
{
    Arena a;
    for (const auto& st : states) {
        a.owner.push_back(st.owner);
        a.names.push_back(st.id);
        std::vector<Edge> es;
        for (const auto& tr : st.transitions) {
            int w = 0;
            if (mode == 0)
                w = st.reward.value_or(0);
            else if (mode == 1)
                w = tr.reward.value_or(0);
            else
                w = tr.delta.value_or(0);
            es.push_back(Edge{tr.target, st.owner == Owner::Random ? tr.probability.value_or(Rational(0)) : Rational(1), w});
        }
        a.edges.push_back(std::move(es));
    }
    return a;
}

std::vector<State> states_from(const Arena& a, bool as_delta)
{
    std::vector<State> out(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
        out[s].id = a.names.size() == a.size() ? a.names[s] : "s" + std::to_string(s);
        out[s].owner = a.owner[s];
        for (const auto& e : a.edges[s]) {
            Transition tr;
            tr.target = e.target;
            if (a.owner[s] == Owner::Random)
                tr.probability = e.probability;
            if (as_delta)
                tr.delta = e.weight;
            else
                tr.reward = e.weight;
            out[s].transitions.push_back(tr);
        }
    }
    return out;
}

}  // namespace

Arena to_arena(const Ssg& game)
{
    return arena_from(game.states, game.reward_location == RewardLocation::OnStates ? 0 : 1);
}

Arena to_arena(const OcSsg& game) { return arena_from(game.states, 2); }

Ssg to_ssg(const Arena& arena) { return Ssg{RewardLocation::OnTransitions, states_from(arena, false)}; }

OcSsg to_ocssg(const Arena& arena) { return OcSsg{states_from(arena, true)}; }

Owner owner_of(Player p) { return p == Player::Max ? Owner::Max : Owner::Min; }

Player opponent(Player p) { return p == Player::Max ? Player::Min : Player::Max; }

Arena fix_strategy(const Arena& arena, const PureMemorylessStrategy& strategy)
{
    Arena out = arena;
    const Owner o = owner_of(strategy.player);
    for (std::size_t s = 0; s < arena.size(); ++s) {
        if (arena.owner[s] != o)
            continue;
        if (s >= strategy.choice.size() || strategy.choice[s] < 0 ||
            static_cast<std::size_t>(strategy.choice[s]) >= arena.edges[s].size())
            throw std::invalid_argument("strategy does not resolve state " + arena.names[s]);
        Edge e = arena.edges[s][strategy.choice[s]];
        e.probability = 1;
        out.owner[s] = Owner::Random;
        out.edges[s] = {e};
    }
    return out;
}

Arena induce_chain(const Arena& arena, const std::vector<int>& choice)
{
    Arena out = arena;
    for (std::size_t s = 0; s < arena.size(); ++s) {
        if (!arena.controlled(s))
            continue;
        if (choice[s] < 0 || static_cast<std::size_t>(choice[s]) >= arena.edges[s].size())
            throw std::invalid_argument("profile does not resolve state " + arena.names[s]);
        Edge e = arena.edges[s][choice[s]];
        e.probability = 1;
        out.owner[s] = Owner::Random;
        out.edges[s] = {e};
    }
    return out;
}

bool is_limit(ObjectiveKind kind)
{
    return std::find(std::begin(kLimitTags), std::end(kLimitTags), kind) != std::end(kLimitTags);
}

ObjectiveKind complement(ObjectiveKind kind)
{
    switch (kind) {
    case ObjectiveKind::LimInfEqMinusInf: return ObjectiveKind::LimInfGtMinusInf;
    case ObjectiveKind::LimInfGtMinusInf: return ObjectiveKind::LimInfEqMinusInf;
    case ObjectiveKind::LimInfEqPlusInf: return ObjectiveKind::LimInfLtPlusInf;
    case ObjectiveKind::LimInfLtPlusInf: return ObjectiveKind::LimInfEqPlusInf;
    case ObjectiveKind::MeanGt: return ObjectiveKind::MeanLeq;
    case ObjectiveKind::MeanLeq: return ObjectiveKind::MeanGt;
    default: throw std::invalid_argument("complement: not a limit objective");
    }
}

static const std::map<ObjectiveKind, std::string>& tag_names()
{
    static const std::map<ObjectiveKind, std::string> names = {
        {ObjectiveKind::Term, "term"},
        {ObjectiveKind::LimInfEqMinusInf, "liminf-minus-inf"},
        {ObjectiveKind::LimInfEqPlusInf, "liminf-plus-inf"},
        {ObjectiveKind::LimInfGtMinusInf, "liminf-gt-minus-inf"},
        {ObjectiveKind::LimInfLtPlusInf, "liminf-lt-plus-inf"},
        {ObjectiveKind::MeanGt, "mean-gt"},
        {ObjectiveKind::MeanLeq, "mean-leq"},
        {ObjectiveKind::Reach, "reach"},
        {ObjectiveKind::AllGeqZero, "all-geq-zero"},
    };
    return names;
}

std::string tag_name(ObjectiveKind kind) { return tag_names().at(kind); }

std::optional<ObjectiveKind> parse_tag(std::string_view name)
{
    for (const auto& [k, v] : tag_names())
        if (v == name)
            return k;
    return std::nullopt;
}

std::vector<std::string> validate(const Objective& objective, std::size_t state_count)
{
    std::vector<std::string> out;
    if (objective.kind == ObjectiveKind::Term && objective.j < 1)
        out.push_back("Term requires j >= 1");
    if (objective.kind == ObjectiveKind::Reach) {
        if (objective.target.size() != state_count)
            out.push_back("Reach target is not a subset of the states");
        else if (std::none_of(objective.target.begin(), objective.target.end(), [](bool b) { return b; }))
            out.push_back("Reach target is empty");
    }
    return out;
}

StateMask value_one_mask(const std::vector<Rational>& values)
{
    StateMask m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        m[i] = values[i] == 1;
    return m;
}

}  // namespace ocssg
