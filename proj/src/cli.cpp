#include "ocssg/cli.hpp"

#include "ocssg/mdp.hpp"
#include "ocssg/oracle.hpp"
#include "ocssg/reduce.hpp"
#include "ocssg/ssg.hpp"
#include "ocssg/termination.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ocssg {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Model load(const std::string& path, std::istream& in)
{
    try {
        if (path == "-")
            return parse_model(in);
        std::ifstream f(path);
        if (!f)
            throw InputError("cannot open '" + path + "'");
        return parse_model(f);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Arena arena_of(const Model& m)
{
    if (const auto* g = std::get_if<Ssg>(&m))
        return to_arena(*g);
    return to_arena(std::get<OcSsg>(m));
}

const std::vector<State>& states_of(const Model& m)
{
    if (const auto* g = std::get_if<Ssg>(&m))
        return g->states;
    return std::get<OcSsg>(m).states;
}

StateIndex lookup(const Model& m, const std::string& id)
{
    auto s = find_state(states_of(m), id);
    if (!s)
        throw InputError("unknown state '" + id + "'");
    return *s;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

void print_strategy(std::ostream& out, const std::string& prefix, const Arena& a, const PureMemorylessStrategy& s)
{
    for (std::size_t v = 0; v < a.size(); ++v)
        if (s.choice.size() == a.size() && s.choice[v] >= 0 && a.owner[v] == owner_of(s.player))
            out << prefix << a.names[v] << " = " << s.choice[v] << "\n";
}

void print_values(std::ostream& out, const Arena& a, const std::vector<Rational>& values,
                  const std::optional<StateIndex>& only)
{
    for (StateIndex v = 0; v < a.size(); ++v)
        if (!only || *only == v)
            out << a.names[v] << " = " << format_rational(values[v]) << "\n";
}

std::string names_of(const Arena& a, const StateMask& m)
{
    std::string s;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (m[v])
            s += (s.empty() ? "" : ",") + a.names[v];
    return s;
}

Objective objective_from(const std::string& tag, const std::string& targets, const Model& m, int j)
{
    auto kind = parse_tag(tag);
    if (!kind)
        throw InputError("unknown objective '" + tag + "'");
    Objective o;
    o.kind = *kind;
    o.j = j;
    if (o.kind == ObjectiveKind::Reach) {
        o.target.assign(states_of(m).size(), false);
        for (const auto& id : split(targets, ','))
            o.target[lookup(m, id)] = true;
    }
    auto problems = validate(o, states_of(m).size());
    if (!problems.empty())
        throw InputError(problems.front());
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact solver for one-counter simple stochastic games", "ocssg"};
    app.require_subcommand(1);

    std::string model_path, objective_tag, state_id, relation = "ge", targets, threshold;
    bool exit_status = false;
    int j = 0;

    auto* solve = app.add_subcommand("solve", "exact values and witnesses for a limit or reachability objective");
    solve->add_option("model", model_path, "model file, '-' for stdin")->required();
    solve->add_option("--objective", objective_tag, "objective tag")->required();
    solve->add_option("--state", state_id, "report only this state");
    solve->add_option("--threshold", threshold, "compare the value at --state with p");
    solve->add_option("--relation", relation, "gt or ge")->check(CLI::IsMember({"gt", "ge"}));
    solve->add_option("--target", targets, "comma separated target states for reach");
    solve->add_flag("--exit-status", exit_status, "exit 1 when the decision is false");

    std::string qual = "one";
    auto* term = app.add_subcommand("term", "qualitative termination");
    term->add_option("model", model_path, "model file, '-' for stdin")->required();
    term->add_option("--state", state_id, "initial state")->required();
    term->add_option("--j", j, "initial counter value")->required()->check(CLI::PositiveNumber);
    term->add_option("--qual", qual, "one or zero")->check(CLI::IsMember({"one", "zero"}));
    term->add_flag("--exit-status", exit_status, "exit 1 when the decision is false");

    std::string kind, s_id, t_id, tp_id;
    auto* reduce = app.add_subcommand("reduce", "hardness reductions from reachability games");
    reduce->add_option("model", model_path, "model file, '-' for stdin")->required();
    reduce->add_option("--kind", kind, "condon-limit or condon-term")
        ->required()
        ->check(CLI::IsMember({"condon-limit", "condon-term"}));
    reduce->add_option("--s", s_id, "initial state")->required();
    reduce->add_option("--t", t_id, "target t")->required();
    reduce->add_option("--t-prime", tp_id, "target t'")->required();

    std::size_t steps = 10000, trials = 1000;
    std::optional<std::uint64_t> seed;
    std::string choose;
    auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    sim->add_option("model", model_path, "model file, '-' for stdin")->required();
    sim->add_option("--state", state_id, "initial state")->required();
    sim->add_option("--steps", steps, "horizon per trial");
    sim->add_option("--trials", trials, "number of trials");
    sim->add_option("--seed", seed, "64-bit seed (required)");
    sim->add_option("--j", j, "record hitting -j");
    sim->add_option("--choose", choose, "choices for controlled states, id=index,...");

    std::size_t limit = kOracleLimit;
    auto* oracle = app.add_subcommand("oracle", "brute-force enumeration of memoryless profiles");
    oracle->add_option("model", model_path, "model file, '-' for stdin")->required();
    oracle->add_option("--objective", objective_tag, "objective tag")->required();
    oracle->add_option("--target", targets, "comma separated target states for reach");
    oracle->add_option("--limit", limit, "maximal number of profiles");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Model model = load(model_path, in);
        const Arena game = arena_of(model);

        if (solve->parsed()) {
            Objective o = objective_from(objective_tag, targets, model, 1);
            std::optional<StateIndex> only;
            if (!state_id.empty())
                only = lookup(model, state_id);
            out << "objective = " << tag_name(o.kind) << "\n";
            std::vector<Rational> values;
            if (o.kind == ObjectiveKind::Reach) {
                auto r = solve_reachability_game(game, o.target);
                print_values(out, game, r.values, only);
                print_strategy(out, "witness.max.", game, r.max_witness);
                print_strategy(out, "witness.min.", game, r.min_witness);
                values = r.values;
            } else if (is_limit(o.kind)) {
                auto r = solve_limit_ssg(game, o.kind);
                out << "method = " << (r.method == SolveMethod::Improvement ? "improvement" : "enumeration") << "\n";
                out << "certified = " << (r.certified ? "true" : "false") << "\n";
                out << "cross_checked = " << (r.cross_checked ? "true" : "false") << "\n";
                print_values(out, game, r.result.values, only);
                print_strategy(out, "witness.max.", game, r.max_witness);
                print_strategy(out, "witness.min.", game, r.min_witness);
                values = r.result.values;
            } else {
                throw InputError("solve handles limit and reach objectives; use 'term' for termination");
            }
            if (!threshold.empty()) {
                if (!only)
                    throw InputError("--threshold needs --state");
                Rational p;
                try {
                    p = parse_rational(threshold);
                } catch (const std::invalid_argument& e) {
                    throw InputError(e.what());
                }
                if (p < 0 || p > 1)
                    throw InputError("threshold outside [0,1]");
                const bool yes = relation == "gt" ? values[*only] > p : values[*only] >= p;
                out << "decision = " << (yes ? "true" : "false") << "\n";
                return exit_status && !yes ? 1 : 0;
            }
            return 0;
        }

        if (term->parsed()) {
            const StateIndex s = lookup(model, state_id);
            out << "state = " << game.names[s] << "\n";
            out << "j = " << j << "\n";
            if (qual == "zero") {
                const bool zero = decide_term_zero(game, s, j);
                out << "value0 = " << (zero ? "true" : "false") << "\n";
                return exit_status && !zero ? 1 : 0;
            }
            auto d = decide_term_one(game, s, j);
            out << "value1 = " << (d.value_one ? "true" : "false") << "\n";
            out << "branch = " << (d.branch == TermBranch::LevelGame ? "level-game" : "long-run") << "\n";
            out << "safe = " << names_of(game, d.safe) << "\n";
            auto st = synthesize_term_strategies(game, s, j);
            if (st.max)
                print_strategy(out, "max.", game, *st.max);
            if (st.min) {
                out << "min.memory = " << st.min->memory_size << "\n";
                out << "min.initial = " << st.min->initial << "\n";
                for (std::size_t m = 0; m < st.min->memory_size; ++m)
                    for (std::size_t v = 0; v < game.size(); ++v)
                        if (game.owner[v] == Owner::Min)
                            out << "min." << m << "." << game.names[v] << " = " << st.min->choice[m][v] << "\n";
            }
            return exit_status && !d.value_one ? 1 : 0;
        }

        if (reduce->parsed()) {
            const auto* g = std::get_if<Ssg>(&model);
            if (!g)
                throw InputError("reduce expects an ssg reachability instance");
            const StateIndex s = lookup(model, s_id), t = lookup(model, t_id), tp = lookup(model, tp_id);
            try {
                if (kind == "condon-limit") {
                    out << print_model(condon_to_limit(*g, s, t, tp));
                } else {
                    auto q = condon_to_termination(*g, s, t, tp);
                    out << print_model(q.game);
                    out << "# query state=" << q.game.states[q.s].id << " j=" << q.j << "\n";
                }
            } catch (const ReductionError& e) {
                throw InputError(e.what());
            }
            return 0;
        }

        if (sim->parsed()) {
            if (!seed)
                throw InputError("simulate requires --seed");
            const StateIndex s = lookup(model, state_id);
            PureMemorylessStrategy smax{Player::Max, std::vector<int>(game.size(), -1)};
            PureMemorylessStrategy smin{Player::Min, std::vector<int>(game.size(), -1)};
            for (const auto& item : split(choose, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw InputError("--choose expects id=index");
                const StateIndex v = lookup(model, item.substr(0, eq));
                int k = 0;
                try {
                    k = std::stoi(item.substr(eq + 1));
                } catch (const std::exception&) {
                    throw InputError("--choose: bad index in '" + item + "'");
                }
                if (k < 0 || static_cast<std::size_t>(k) >= game.edges[v].size() || !game.controlled(v))
                    throw InputError("--choose: invalid choice '" + item + "'");
                (game.owner[v] == Owner::Max ? smax : smin).choice[v] = k;
            }
            SimulationConfig cfg;
            cfg.start = s;
            cfg.steps = steps;
            cfg.trials = trials;
            cfg.seed = *seed;
            if (j > 0)
                cfg.j = j;
            RunStatistics st;
            try {
                st = simulate(game, {smax, smin}, cfg);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            std::ostringstream freq, mean;
            freq.precision(6);
            mean.precision(6);
            freq << std::fixed << st.termination_frequency;
            mean << std::fixed << st.mean_payoff_average;
            out << "rng = " << st.rng << "\n";
            out << "seed = " << st.seed << "\n";
            out << "trials = " << st.trials << "\n";
            out << "steps = " << st.steps << "\n";
            if (cfg.j) {
                out << "terminated = " << st.terminated << "\n";
                out << "termination_frequency = " << freq.str() << "\n";
            }
            out << "mean_payoff = " << mean.str() << "\n";
            out << "min_prefix = " << st.min_prefix << "\n";
            out << "max_prefix = " << st.max_prefix << "\n";
            return 0;
        }

        if (oracle->parsed()) {
            Objective o = objective_from(objective_tag, targets, model, 1);
            SolveResult r;
            try {
                r = enumerate_solve(game, o, limit);
            } catch (const OracleTooLarge& e) {
                throw InputError(e.what());
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            out << "objective = " << tag_name(o.kind) << "\n";
            print_values(out, game, r.values, std::nullopt);
            return 0;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ocssg
