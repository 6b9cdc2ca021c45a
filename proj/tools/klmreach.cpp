// klmreach: reachability in vector addition systems with states.

#include "klm/klm.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace klm;

enum exit_code { ok = 0, no = 1, unknown = 2, bad_input = 3 };

struct common_args {
    std::string file;
    std::string source;
    std::string target;
    std::string mode = "auto";
    std::size_t node_budget = 0;
    std::int64_t counter_cap = 64;
    std::string forest_path;
};

vass load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_vass(ss.str());
}

decide_options options_of(const common_args& a) {
    decide_options opt;
    if (a.mode == "witness")
        opt.mode = decide_mode::witness;
    else if (a.mode == "complete")
        opt.mode = decide_mode::complete;
    else
        opt.mode = decide_mode::automatic;
    if (a.node_budget) opt.decomposition.forest_nodes = a.node_budget;
    return opt;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << text;
}

int cmd_decide(const common_args& a, bool witness_only) {
    auto g = load(a.file);
    auto cin = parse_config(a.source, false), cout = parse_config(a.target, false);
    auto d = decide(g, cin, cout, options_of(a));
    if (!a.forest_path.empty() && !d.forests.empty()) write_file(a.forest_path, render_forest(d.forests.back()));
    if (!witness_only) std::cout << to_string(d.answer) << "\n";
    if (d.answer == verdict::reachable) {
        std::cout << render_word(d.word) << "\n# validated\n";
        return ok;
    }
    if (!d.note.empty()) std::cout << "# " << d.note << "\n";
    if (d.answer == verdict::unreachable) return witness_only ? unknown : no;
    return unknown;
}

int cmd_decompose(const common_args& a) {
    auto g = load(a.file);
    auto cin = parse_config(a.source, true);
    auto cout = parse_config(a.target, true);
    decomposition_options opt;
    if (a.node_budget) opt.forest_nodes = a.node_budget;
    auto f = full_decomposition(single_triple(cin, g, cout), opt);
    auto text = render_forest(f);
    if (!a.forest_path.empty()) write_file(a.forest_path, text);
    std::cout << text;
    return f.exhausted ? ok : unknown;
}

int cmd_bounds(const common_args& a) {
    auto g = load(a.file);
    auto cin = parse_config(a.source, false), cout = parse_config(a.target, false);
    auto s = single_triple(cin, g, cout);
    std::cout << "dim " << g.dim << "\n";
    std::cout << "size " << size(g).get_str() << "\n";
    std::cout << "rank " << render_rank(rank(g)) << "\n";
    std::cout << "ordinal " << ordinal::from_coefficients(rank(g)).str() << "\n";
    std::cout << "instance " << instance_size(g, cin, cout).get_str() << "\n";
    auto n0 = g_fn()(size(s));
    std::cout << "descent " << descent_bound(g.dim, n0, h_fn()).str() << "\n";
    std::cout << "witness " << witness_bound(g, cin, cout).str() << "\n";
    return ok;
}

int cmd_oracle(const common_args& a) {
    auto g = load(a.file);
    auto cin = parse_config(a.source, false), cout = parse_config(a.target, false);
    auto r = a.node_budget ? bfs_reach(g, cin, cout, a.counter_cap, a.node_budget)
                           : bfs_reach(g, cin, cout, a.counter_cap);
    if (r.found) {
        std::cout << "reachable\n" << render_word(word_of(g, *r.found)) << "\n";
        return ok;
    }
    if (r.closed) {
        std::cout << "unreachable\n";
        return no;
    }
    std::cout << "inconclusive\n# counter cap " << a.counter_cap << " reached\n";
    return unknown;
}

int cmd_generate(std::uint64_t seed, std::size_t dim) {
    rng r(seed);
    random_vass_params p;
    p.dim = dim;
    p.max_states = 4;
    p.max_transitions = 6;
    auto g = random_vass(r, p);
    auto cin = random_config(r, dim, 3), cout = random_config(r, dim, 3);
    std::cout << "# source " << render(cin) << "\n# target " << render(cout) << "\n" << render_vass(g);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability for vector addition systems with states"};
    app.require_subcommand(1);
    common_args a;
    std::uint64_t seed = 0;
    std::size_t dim = 2;

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("file", a.file, "VASS file")->required()->check(CLI::ExistingFile);
        sub->add_option("--source", a.source, "source configuration, e.g. 0,0,2")->required();
        sub->add_option("--target", a.target, "target configuration")->required();
        sub->add_option("--node-budget", a.node_budget, "node budget of the search");
    };

    auto* decide_cmd = app.add_subcommand("decide", "decide reachability of target from source");
    auto* witness_cmd = app.add_subcommand("witness", "print a validated run from source to target");
    for (auto* sub : {decide_cmd, witness_cmd}) {
        add_instance(sub);
        sub->add_option("--mode", a.mode, "witness, complete, or auto")
            ->check(CLI::IsMember({"witness", "complete", "auto"}));
        sub->add_option("--emit-forest", a.forest_path, "write the decomposition forest here");
    }
    auto* decompose_cmd = app.add_subcommand("decompose", "print the decomposition forest");
    add_instance(decompose_cmd);
    decompose_cmd->add_option("--emit-forest", a.forest_path, "also write the forest here");
    auto* bounds_cmd = app.add_subcommand("bounds", "report size, rank and length bounds");
    add_instance(bounds_cmd);
    auto* oracle_cmd = app.add_subcommand("oracle", "bounded breadth-first search");
    add_instance(oracle_cmd);
    oracle_cmd->add_option("--counter-cap", a.counter_cap, "largest counter value explored");
    auto* generate_cmd = app.add_subcommand("generate", "print a random instance");
    generate_cmd->add_option("--seed", seed, "random seed")->required();
    generate_cmd->add_option("--dim", dim, "dimension")->check(CLI::Range(1, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : bad_input;
    }

    try {
        if (*decide_cmd) return cmd_decide(a, false);
        if (*witness_cmd) return cmd_decide(a, true);
        if (*decompose_cmd) return cmd_decompose(a);
        if (*bounds_cmd) return cmd_bounds(a);
        if (*oracle_cmd) return cmd_oracle(a);
        if (*generate_cmd) return cmd_generate(seed, dim);
    } catch (const klm::budget_exceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}
