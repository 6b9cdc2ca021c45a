#pragma once

#include "decomp.hpp"
#include "ordinal.hpp"
#include "witness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace klm {

enum class verdict { reachable, unreachable, inconclusive };

inline std::string to_string(verdict v) {
    switch (v) {
        case verdict::reachable: return "reachable";
        case verdict::unreachable: return "unreachable";
        case verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

enum class decide_mode { witness, complete, automatic };

struct decide_options {
    decomposition_options decomposition;
    witness_options witness;
    decide_mode mode = decide_mode::automatic;
    unsigned witness_rounds = 4;  // witness-mode passes, doubling the unfolding bound each time
};

struct decision {
    verdict answer = verdict::inconclusive;
    std::vector<action> word;  // validated witness when reachable
    path run_path;             // the same witness as a path of the input VASS
    std::vector<decomposition_forest> forests;  // one per search pass
    std::string note;
};

namespace detail {

// Maps a word back to a path of g from (in, cin) to (out, cout), if any.
inline std::optional<path> path_for_word(const vass& g, const omega_config& cin, const std::vector<action>& word,
                                         const omega_config& cout) {
    // states reachable after each prefix; configurations are determined by the word
    std::vector<std::set<std::size_t>> layer{{g.in}};
    omega_config c = cin;
    for (const auto& a : word) {
        auto next = try_step(c, a);
        if (!next) return std::nullopt;
        c = *next;
        std::set<std::size_t> succ;
        for (const auto& t : g.transitions)
            if (layer.back().count(t.src) && t.delta == a) succ.insert(t.tgt);
        if (succ.empty()) return std::nullopt;
        layer.push_back(std::move(succ));
    }
    if (!(c == cout) || !layer.back().count(g.out)) return std::nullopt;
    path p(word.size());
    std::size_t at = g.out;
    for (std::size_t n = word.size(); n-- > 0;) {
        for (std::size_t k = 0; k < g.transitions.size(); ++k) {
            const auto& t = g.transitions[k];
            if (t.tgt == at && t.delta == word[n] && layer[n].count(t.src)) {
                p[n] = k;
                at = t.src;
                break;
            }
        }
    }
    return p;
}

} // namespace detail

// Reachability of (out, cout) from (in, cin) through the decomposition
// forest. Reachable answers always carry a witness re-checked on g itself.
inline decision decide(const vass& g, const omega_config& cin, const omega_config& cout, const decide_options& opt = {}) {
    if (!is_finite(cin) || !is_finite(cout)) throw std::invalid_argument("decide: configurations must be finite");
    check_dim(cin.size(), g.dim);
    check_dim(cout.size(), g.dim);
    decision res;
    const auto root = single_triple(cin, g, cout);
    bool found = false;
    auto on_normal = [&](const forest_node& n) {
        try {
            auto w = extract_witness(n.seq, opt.witness);
            if (!w) return false;
            auto p = detail::path_for_word(g, cin, w->word, cout);
            if (!p) return false;
            res.word = w->word;
            res.run_path = *p;
            found = true;
            return true;
        } catch (const budget_exceeded&) {
            return false;
        }
    };

    if (opt.mode != decide_mode::complete) {
        decomposition_options dopt = opt.decomposition;
        dopt.mode = search_mode::witness;
        for (unsigned round = 0; round < opt.witness_rounds && !found; ++round) {
            dopt.witness_bound = integer(1) << round;
            res.forests.push_back(explore(root, dopt, on_normal));
            if (found) break;
            // a complete forest with an exact bound everywhere settles nothing more by growing the bound
        }
        if (found) {
            res.answer = verdict::reachable;
            return res;
        }
        if (opt.mode == decide_mode::witness) {
            res.note = "no witness found in witness mode";
            return res;
        }
    }
    decomposition_options dopt = opt.decomposition;
    dopt.mode = search_mode::complete;
    res.forests.push_back(explore(root, dopt, on_normal));
    const auto& f = res.forests.back();
    if (found) {
        res.answer = verdict::reachable;
    } else if (f.exhausted && f.normal_leaves().empty()) {
        res.answer = verdict::unreachable;
    } else {
        res.answer = verdict::inconclusive;
        res.note = f.normal_leaves().empty() ? "search budget exhausted" : "witness extraction failed";
    }
    return res;
}

// Instance size 2(d+1)^(d+1)(|G| + |cin| + |cout|) used by the length bound.
inline integer instance_size(const vass& g, const omega_config& cin, const omega_config& cout) {
    return 2 * ipow(integer(g.dim + 1), g.dim + 1) * (size(g) + norm(cin) + norm(cout));
}

inline bound_value witness_bound(const vass& g, const omega_config& cin, const omega_config& cout,
                                 std::size_t budget = 1000000) {
    return witness_length_bound(g.dim, instance_size(g, cin, cout), budget);
}

} // namespace klm
