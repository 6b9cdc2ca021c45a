#pragma once

#include "coverability.hpp"
#include "io.hpp"
#include "klm_sequence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace klm {

enum class search_mode { complete, witness };

struct decomposition_options {
    dioph_options dioph;
    std::size_t km_budget = 100000;      // Karp-Miller nodes per query
    std::size_t unfold_states = 20000;   // materialized states per unfolding
    std::size_t max_branches = 20000;    // children produced by one split
    std::size_t forest_nodes = 20000;
    search_mode mode = search_mode::complete;
    integer witness_bound = 1;           // unfolding bound in witness mode when no exact one is known
};

namespace detail {

// A piece of a sequence: triples joined by inner connectors.
struct fragment {
    std::vector<klm_triple> triples;
    std::vector<action> connectors;
};

inline void append(fragment& f, const fragment& g, const std::optional<action>& join) {
    if (join) f.connectors.push_back(*join);
    f.triples.insert(f.triples.end(), g.triples.begin(), g.triples.end());
    f.connectors.insert(f.connectors.end(), g.connectors.begin(), g.connectors.end());
}

// Replaces triple j of each sequence by each fragment in options[j].
inline std::vector<klm_sequence> product(const klm_sequence& s, const std::vector<std::vector<fragment>>& options,
                                         std::size_t max_branches) {
    std::size_t total = 1;
    for (const auto& o : options) {
        if (o.empty()) return {};
        total *= o.size();
        if (total > max_branches) throw budget_exceeded("too many branches in a split");
    }
    std::vector<klm_sequence> out;
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
        fragment f;
        for (std::size_t j = 0; j < options.size(); ++j)
            append(f, options[j][idx[j]], j ? std::optional<action>(s.connectors[j - 1]) : std::nullopt);
        klm_sequence r;
        r.dim = s.dim;
        r.triples = std::move(f.triples);
        r.connectors = std::move(f.connectors);
        out.push_back(std::move(r));
        std::size_t j = options.size();
        while (j > 0) {
            --j;
            if (++idx[j] < options[j].size()) break;
            idx[j] = 0;
            if (j == 0) return out;
        }
        if (options.empty()) return out;
    }
}

inline std::vector<klm_sequence> sorted_unique(std::vector<klm_sequence> v) {
    std::map<std::string, klm_sequence> m;
    for (auto& s : v) m.emplace(canonical_key(s), std::move(s));
    std::vector<klm_sequence> out;
    for (auto& [k, s] : m) out.push_back(std::move(s));
    return out;
}

inline vass with_endpoints(const vass& g, std::size_t in, std::size_t out) {
    vass r = g;
    r.in = in;
    r.out = out;
    return r;
}

} // namespace detail

// SCC split ------------------------------------------------------------------

// Chains of SCCs from the input's to the output's, one triple per SCC.
inline std::vector<detail::fragment> scc_chains(const klm_triple& tr, std::size_t max_branches) {
    const vass& g = tr.g;
    if (is_strongly_connected(g)) return {{{tr}, {}}};
    auto info = scc_decompose(g);
    auto coreach = graph_reachable(g, g.out, true);
    const std::size_t target = info.component_of[g.out];
    std::vector<detail::fragment> out;
    std::function<void(std::size_t, detail::fragment)> go = [&](std::size_t entry, detail::fragment acc) {
        if (out.size() > max_branches) throw budget_exceeded("too many SCC chains");
        std::size_t c = info.component_of[entry];
        std::set<std::size_t> members(info.components[c].begin(), info.components[c].end());
        const omega_config x = acc.triples.empty() ? tr.x : omega_everywhere(g.dim);
        if (c == target) {
            detail::fragment f = acc;
            f.triples.push_back({x, restrict(g, members, entry, g.out), tr.y});
            out.push_back(std::move(f));
            return;
        }
        for (const auto& t : g.transitions) {
            if (info.component_of[t.src] != c || info.component_of[t.tgt] == c || !coreach[t.tgt]) continue;
            detail::fragment f = acc;
            f.triples.push_back({x, restrict(g, members, entry, t.src), omega_everywhere(g.dim)});
            f.connectors.push_back(t.delta);
            go(t.tgt, std::move(f));
        }
    };
    if (coreach[g.in]) go(g.in, {});
    return out;
}

inline std::vector<klm_sequence> scc_split(const klm_sequence& s, std::size_t max_branches = 20000) {
    s.validate();
    std::vector<std::vector<detail::fragment>> options;
    for (const auto& t : s.triples) options.push_back(scc_chains(t, max_branches));
    return detail::product(s, options, max_branches);
}

// Saturation ---------------------------------------------------------------

inline bool is_satisfiable(const klm_sequence& s, const dioph_options& opt = {}) {
    return nat_satisfiable(characteristic_system(s), opt).has_value();
}

// Omega entries of the boundary configurations whose variable is bounded.
struct bounded_position {
    std::size_t triple;
    bool output;  // y rather than x
    std::size_t component;
    std::size_t var;
};

inline std::vector<bounded_position> bounded_omega_positions(const klm_sequence& s, const support_result& sup) {
    char_layout L(s);
    std::vector<bounded_position> out;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        for (std::size_t i = 0; i < s.dim; ++i)
            if (s.triples[j].x[i].is_omega() && !sup.positive[L.m(j, i)]) out.push_back({j, false, i, L.m(j, i)});
        for (std::size_t i = 0; i < s.dim; ++i)
            if (s.triples[j].y[i].is_omega() && !sup.positive[L.n(j, i)]) out.push_back({j, true, i, L.n(j, i)});
    }
    return out;
}

// Replaces every bounded omega entry by each feasible value. Unsatisfiable
// sequences vanish.
inline std::vector<klm_sequence> saturate(const klm_sequence& s, const decomposition_options& opt = {}) {
    auto sys = characteristic_system(s);
    if (!nat_satisfiable(sys, opt.dioph)) return {};
    // pinning a bounded variable does not change the homogeneous support
    auto sup = positivity_support(homogeneous(sys));
    auto pos = bounded_omega_positions(s, sup);
    if (pos.empty()) return {s};
    // positions fixed by the equations alone need no search
    auto fixed = determined_values(sys);
    klm_sequence base = s;
    std::vector<std::pair<std::size_t, integer>> pins;
    std::vector<bounded_position> open;
    for (const auto& p : pos) {
        if (fixed && (*fixed)[p.var]) {
            const rational& v = *(*fixed)[p.var];
            if (v.get_den() != 1 || v < 0) return {};
            auto& tr = base.triples[p.triple];
            (p.output ? tr.y : tr.x)[p.component] = nat_omega(integer(v.get_num()));
            pins.push_back({p.var, integer(v.get_num())});
        } else {
            open.push_back(p);
        }
    }
    pos = std::move(open);
    if (pos.empty()) return {base};
    std::vector<integer> maxima;
    for (const auto& p : pos) {
        auto m = coordinate_max(sys, p.var, opt.dioph);
        if (!m) throw std::logic_error("saturate: bounded variable without a maximum");
        maxima.push_back(*m);
    }
    std::vector<klm_sequence> out;
    const std::size_t fixed_pins = pins.size();
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == pos.size()) {
            klm_sequence r = base;
            for (std::size_t p = 0; p < pos.size(); ++p) {
                auto& tr = r.triples[pos[p].triple];
                (pos[p].output ? tr.y : tr.x)[pos[p].component] = nat_omega(pins[fixed_pins + p].second);
            }
            out.push_back(std::move(r));
            if (out.size() > opt.max_branches) throw budget_exceeded("too many saturated sequences");
            return;
        }
        for (integer v = 0; v <= maxima[k]; ++v) {
            pins.push_back({pos[k].var, v});
            if (nat_satisfiable_pinned(sys, pins, opt.dioph)) go(k + 1);
            pins.pop_back();
        }
    };
    go(0);
    return out;
}

// SCC split, saturation, and removal of unsatisfiable sequences.
inline std::vector<klm_sequence> clean(const klm_sequence& s, const decomposition_options& opt = {}) {
    std::vector<klm_sequence> out;
    for (const auto& part : scc_split(s, opt.max_branches))
        for (auto& r : saturate(part, opt)) out.push_back(std::move(r));
    return detail::sorted_unique(std::move(out));
}

inline bool is_clean(const klm_sequence& s, const dioph_options& opt = {}) {
    for (const auto& t : s.triples)
        if (!is_strongly_connected(t.g)) return false;
    auto sys = characteristic_system(s);
    if (!nat_satisfiable(sys, opt)) return false;
    return bounded_omega_positions(s, positivity_support(homogeneous(sys))).empty();
}

// Rigidity ------------------------------------------------------------------

struct rigidity_violation {
    std::size_t triple = 0;
    int condition = 0;  // 1: boundary values disagree, 2: input side negative, 3: output side negative
    std::size_t component = 0;
    std::size_t state = 0;
};

inline std::optional<rigidity_violation> check_rigidity(const klm_triple& tr) {
    const auto& g = tr.g;
    auto fixed = fixed_components(g);
    for (std::size_t i = 0; i < g.dim; ++i) {
        if (!fixed[i]) continue;
        const auto& f = *fixed[i];
        if (tr.x[i].is_finite() && tr.y[i].is_finite() &&
            tr.y[i].value() - f[g.out] != tr.x[i].value() - f[g.in])
            return rigidity_violation{0, 1, i, g.out};
        for (std::size_t q = 0; q < g.num_states(); ++q) {
            if (tr.x[i].is_finite() && tr.x[i].value() - f[g.in] + f[q] < 0) return rigidity_violation{0, 2, i, q};
            if (tr.y[i].is_finite() && tr.y[i].value() - f[g.out] + f[q] < 0) return rigidity_violation{0, 3, i, q};
        }
    }
    return std::nullopt;
}

inline std::optional<rigidity_violation> check_rigidity(const klm_sequence& s) {
    for (std::size_t j = 0; j < s.triples.size(); ++j)
        if (auto v = check_rigidity(s.triples[j])) {
            v->triple = j;
            return v;
        }
    return std::nullopt;
}

// A triple with the same language but fewer transitions.
inline klm_triple fix_rigidity(const klm_triple& tr, const rigidity_violation& v) {
    const auto& g = tr.g;
    if (v.condition == 1 || v.state == g.in || v.state == g.out) {
        // empty language: only the endpoints, no transitions
        std::set<std::size_t> keep{g.in, g.out};
        return {tr.x, restrict(g, keep, g.in, g.out, [](std::size_t) { return false; }), tr.y};
    }
    std::set<std::size_t> keep;
    for (std::size_t q = 0; q < g.num_states(); ++q)
        if (q != v.state) keep.insert(q);
    return {tr.x, restrict(g, keep, g.in, g.out), tr.y};
}

// Boundedness ---------------------------------------------------------------

// Per triple, which transitions have an unbounded Parikh variable.
inline std::vector<std::vector<bool>> unbounded_transitions(const klm_sequence& s, const support_result& sup) {
    char_layout L(s);
    std::vector<std::vector<bool>> out;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        std::vector<bool> u;
        for (std::size_t t = 0; t < s.triples[j].g.transitions.size(); ++t) u.push_back(sup.positive[L.phi(j, t)]);
        out.push_back(std::move(u));
    }
    return out;
}

inline bool is_unbounded(const klm_sequence& s) {
    auto sup = positivity_support(homogeneous_system(s));
    for (const auto& u : unbounded_transitions(s, sup))
        for (bool b : u)
            if (!b) return false;
    return true;
}

// Replaces every triple with bounded transitions by the sequences of
// sub-triples obtained by removing those transitions and using them as
// connectors, in every order compatible with their maxima. nullopt when all
// transitions are unbounded.
inline std::optional<std::vector<klm_sequence>> split_bounded(const klm_sequence& s,
                                                              const decomposition_options& opt = {}) {
    auto sys = characteristic_system(s);
    auto sup = positivity_support(homogeneous(sys));
    auto unb = unbounded_transitions(s, sup);
    char_layout L(s);
    bool any = false;
    std::vector<std::vector<detail::fragment>> options;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        const auto& tr = s.triples[j];
        const auto& g = tr.g;
        std::vector<std::size_t> bounded;
        for (std::size_t t = 0; t < g.transitions.size(); ++t)
            if (!unb[j][t]) bounded.push_back(t);
        if (bounded.empty()) {
            options.push_back({{{tr}, {}}});
            continue;
        }
        any = true;
        std::vector<integer> maxima;
        for (std::size_t t : bounded) {
            auto m = coordinate_max(sys, L.phi(j, t), opt.dioph);
            if (!m) throw std::logic_error("split_bounded: bounded transition without a maximum");
            maxima.push_back(*m);
        }
        std::set<std::size_t> all;
        for (std::size_t q = 0; q < g.num_states(); ++q) all.insert(q);
        std::set<std::size_t> bset(bounded.begin(), bounded.end());
        vass rest = restrict(g, all, g.in, g.out, [&](std::size_t k) { return !bset.count(k); });
        std::vector<std::vector<bool>> reach;
        for (std::size_t q = 0; q < g.num_states(); ++q) reach.push_back(graph_reachable(rest, q));

        std::vector<detail::fragment> frags;
        std::vector<integer> used(bounded.size(), 0);
        std::vector<std::size_t> order;
        // counts so far must extend to a model; exact counts for a complete fragment
        auto feasible = [&](bool exact) {
            std::vector<integer> lower(sys.num_vars, 0);
            std::vector<std::optional<integer>> upper(sys.num_vars);
            for (std::size_t b = 0; b < bounded.size(); ++b) {
                lower[L.phi(j, bounded[b])] = used[b];
                if (exact) upper[L.phi(j, bounded[b])] = used[b];
            }
            return detail::nat_solve(sys, lower, upper, opt.dioph).has_value();
        };
        // Counter values along the fragment where they are still determined:
        // a segment leaves component i exact when none of its transitions moves i.
        auto through = [&](omega_config c, std::size_t from, std::size_t to) {
            vass seg = detail::with_endpoints(rest, from, to);
            for (const auto& t : seg.transitions)
                for (std::size_t i = 0; i < s.dim; ++i)
                    if (t.delta[i] != 0) c[i] = nat_omega::omega();
            return c;
        };
        std::set<std::string> dead;
        std::function<bool(std::size_t, const omega_config&)> go = [&](std::size_t cur, const omega_config& c) {
            if (!order.empty() && !feasible(false)) return false;
            std::string key = std::to_string(cur) + render(c);
            for (const auto& u : used) key += "," + u.get_str();
            if (dead.count(key)) return false;
            bool produced = false;
            if (reach[cur][g.out] && feasible(true)) {
                auto last = through(c, cur, g.out);
                bool fits = true;
                for (std::size_t i = 0; i < s.dim; ++i)
                    if (last[i].is_finite() && tr.y[i].is_finite() && last[i] != tr.y[i]) fits = false;
                if (fits) {
                    detail::fragment f;
                    std::size_t from = g.in;
                    for (std::size_t k = 0; k < order.size(); ++k) {
                        const auto& t = g.transitions[bounded[order[k]]];
                        f.triples.push_back({k == 0 ? tr.x : omega_everywhere(s.dim),
                                             detail::with_endpoints(rest, from, t.src), omega_everywhere(s.dim)});
                        f.connectors.push_back(t.delta);
                        from = t.tgt;
                    }
                    f.triples.push_back(
                        {order.empty() ? tr.x : omega_everywhere(s.dim), detail::with_endpoints(rest, from, g.out), tr.y});
                    frags.push_back(std::move(f));
                    produced = true;
                    if (frags.size() > opt.max_branches)
                        throw budget_exceeded("too many interleavings of bounded transitions");
                }
            }
            for (std::size_t b = 0; b < bounded.size(); ++b) {
                const auto& t = g.transitions[bounded[b]];
                if (used[b] >= maxima[b] || !reach[cur][t.src]) continue;
                auto before = through(c, cur, t.src);
                auto after = try_step(before, t.delta);
                if (!after) continue;
                ++used[b];
                order.push_back(b);
                if (go(t.tgt, *after)) produced = true;
                order.pop_back();
                --used[b];
            }
            if (!produced) dead.insert(key);
            return produced;
        };
        go(g.in, tr.x);
        options.push_back(std::move(frags));
    }
    if (!any) return std::nullopt;
    return detail::product(s, options, opt.max_branches);
}

// Pumpability -----------------------------------------------------------------

enum class direction { forward, backward };

struct pump_defect {
    std::size_t triple = 0;
    std::size_t component = 0;
    direction dir = direction::forward;
};

// All defects of the first triple that has one: non-fixed components whose
// forward (then backward) acceleration stays finite.
inline std::vector<pump_defect> pump_defects(const klm_sequence& s, std::size_t km_budget = 100000) {
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        const auto& tr = s.triples[j];
        auto fixed = fixed_components(tr.g);
        std::vector<pump_defect> found;
        auto f = facc(tr.g, tr.x, km_budget);
        for (std::size_t i = 0; i < s.dim; ++i)
            if (!fixed[i] && f[i].is_finite()) found.push_back({j, i, direction::forward});
        auto b = bacc(tr.g, tr.y, km_budget);
        for (std::size_t i = 0; i < s.dim; ++i)
            if (!fixed[i] && b[i].is_finite()) found.push_back({j, i, direction::backward});
        if (!found.empty()) return found;
    }
    return {};
}

inline std::optional<pump_defect> check_pumpable(const klm_sequence& s, std::size_t km_budget = 100000) {
    auto d = pump_defects(s, km_budget);
    if (d.empty()) return std::nullopt;
    return d.front();
}

// Unfolding -------------------------------------------------------------------

inline std::string level_name(const nat_omega& l) {
    return l.str();
}

// Forward (i,B,r)-unfoldings of a triple, one per output level r that the
// output state actually reaches. Only states reachable from the input and
// co-reachable to the chosen output are kept.
inline std::vector<klm_triple> forward_unfoldings(const klm_triple& tr, std::size_t i, const integer& bound,
                                                  std::size_t state_budget = 20000) {
    const vass& g = tr.g;
    struct ustate {
        std::size_t q;
        nat_omega level;
        bool operator<(const ustate& o) const {
            if (q != o.q) return q < o.q;
            return level < o.level;
        }
    };
    std::map<ustate, std::size_t> id;
    std::vector<ustate> states;
    struct uedge {
        std::size_t src, tgt, t;
    };
    std::vector<uedge> edges;
    auto intern = [&](const ustate& u) {
        auto [it, fresh] = id.emplace(u, states.size());
        if (fresh) {
            states.push_back(u);
            if (states.size() > state_budget) throw budget_exceeded("unfolding exceeded its state budget");
        }
        return std::pair{it->second, fresh};
    };
    nat_omega start = tr.x[i];
    if (start.is_finite() && start.value() >= bound) start = nat_omega::omega();
    std::vector<std::size_t> todo{intern({g.in, start}).first};
    while (!todo.empty()) {
        std::size_t cur = todo.back();
        todo.pop_back();
        ustate u = states[cur];
        for (std::size_t k = 0; k < g.transitions.size(); ++k) {
            const auto& t = g.transitions[k];
            if (t.src != u.q) continue;
            nat_omega next;
            if (u.level.is_omega()) {
                if (t.tgt == g.in) continue;
                next = nat_omega::omega();
            } else {
                integer v = u.level.value() + t.delta[i];
                if (v < 0) continue;
                next = v >= bound ? nat_omega::omega() : nat_omega(v);
            }
            auto [nid, fresh] = intern({t.tgt, next});
            edges.push_back({cur, nid, k});
            if (fresh) todo.push_back(nid);
        }
    }
    auto name = [&](std::size_t s) { return g.states[states[s].q] + "@" + level_name(states[s].level); };
    std::vector<klm_triple> out;
    // outputs in level order
    std::vector<std::size_t> outputs;
    for (const auto& [u, sid] : id)
        if (u.q == g.out) outputs.push_back(sid);
    for (std::size_t o : outputs) {
        std::vector<bool> co(states.size(), false);
        co[o] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : edges)
                if (co[e.tgt] && !co[e.src]) co[e.src] = co[e.tgt] = changed = true;
        }
        std::vector<std::string> names;
        for (std::size_t s = 0; s < states.size(); ++s)
            if (co[s]) names.push_back(name(s));
        std::vector<transition_spec> ts;
        for (const auto& e : edges) {
            if (!co[e.src] || !co[e.tgt]) continue;
            const auto& t = g.transitions[e.t];
            ts.push_back({t.name + "@" + level_name(states[e.src].level), name(e.src), name(e.tgt), t.delta});
        }
        out.push_back({tr.x, make_vass(g.dim, names, name(0), name(o), ts), tr.y});
    }
    return out;
}

inline klm_triple reverse(const klm_triple& tr) {
    return {tr.y, reverse(tr.g), tr.x};
}

inline std::vector<klm_triple> backward_unfoldings(const klm_triple& tr, std::size_t i, const integer& bound,
                                                   std::size_t state_budget = 20000) {
    std::vector<klm_triple> out;
    for (const auto& u : forward_unfoldings(reverse(tr), i, bound, state_budget)) out.push_back(reverse(u));
    return out;
}

// (|x| + 2|G|)^(1 + d^d), with the input configuration for forward defects
// and the output configuration for backward ones.
inline integer generic_unfolding_bound(const klm_triple& tr, direction dir) {
    const auto& c = dir == direction::forward ? tr.x : tr.y;
    unsigned long d = tr.g.dim;
    unsigned long dd = 1;
    for (unsigned long k = 0; k < d; ++k) dd *= d;
    return ipow(norm(c) + 2 * size(tr.g), 1 + dd);
}

// One more than the largest value of component i at a configuration from
// which the input state can still be reached; nullopt if unbounded.
inline std::optional<integer> exact_unfolding_bound(const klm_triple& tr, std::size_t i, direction dir,
                                                    std::size_t km_budget = 100000) {
    klm_triple t = dir == direction::forward ? tr : reverse(tr);
    auto m = returning_max(t.g, t.x, i, km_budget);
    if (!m) return std::nullopt;
    return *m + 1;
}

// Normal form ------------------------------------------------------------------

struct normality_report {
    bool clean = false;
    bool rigid = false;
    bool unbounded = false;
    bool pumpable = false;
    [[nodiscard]] bool normal() const { return clean && rigid && unbounded && pumpable; }
};

inline normality_report check_normal(const klm_sequence& s, const decomposition_options& opt = {}) {
    normality_report r;
    r.clean = is_clean(s, opt.dioph);
    r.rigid = !check_rigidity(s).has_value();
    r.unbounded = is_unbounded(s);
    r.pumpable = !check_pumpable(s, opt.km_budget).has_value();
    return r;
}

inline bool is_normal(const klm_sequence& s, const decomposition_options& opt = {}) {
    return check_normal(s, opt).normal();
}

inline klm_sequence replace_triple(const klm_sequence& s, std::size_t j, const klm_triple& t) {
    klm_sequence r = s;
    r.triples[j] = t;
    return r;
}

// One decomposition step on a clean sequence that is not normal. Tries
// rigidity repair, then the bounded split, then unfolding a pumping defect.
// Every result is clean and has a strictly smaller rank.
inline std::vector<klm_sequence> dec(const klm_sequence& s, const decomposition_options& opt = {}) {
    const auto before = rank(s);
    std::vector<klm_sequence> raw;
    bool done = false;
    if (auto v = check_rigidity(s)) {
        const auto& tr = s.triples[v->triple];
        if (tr.g.transitions.empty()) return {};
        raw.push_back(replace_triple(s, v->triple, fix_rigidity(tr, *v)));
        done = true;
    }
    if (!done) {
        if (auto parts = split_bounded(s, opt)) {
            raw = std::move(*parts);
            done = true;
        }
    }
    if (!done) {
        auto defects = pump_defects(s, opt.km_budget);
        if (defects.empty()) return {};
        const std::size_t j = defects.front().triple;
        const auto& tr = s.triples[j];
        std::vector<std::pair<pump_defect, integer>> plan;
        for (const auto& d : defects) {
            auto b = exact_unfolding_bound(tr, d.component, d.dir, opt.km_budget);
            if (b) {
                plan = {{d, *b}};
                break;
            }
        }
        if (plan.empty()) {
            if (opt.mode == search_mode::witness)
                plan = {{defects.front(), opt.witness_bound}};
            else
                for (const auto& d : defects) plan.push_back({d, generic_unfolding_bound(tr, d.dir)});
        }
        for (const auto& [d, b] : plan) {
            auto us = d.dir == direction::forward ? forward_unfoldings(tr, d.component, b, opt.unfold_states)
                                                  : backward_unfoldings(tr, d.component, b, opt.unfold_states);
            for (const auto& u : us) raw.push_back(replace_triple(s, j, u));
        }
    }
    std::vector<klm_sequence> out;
    for (const auto& r : raw)
        for (auto& c : clean(r, opt)) {
            if (compare_rank(rank(c), before) >= 0) throw std::logic_error("decomposition step did not lower the rank");
            out.push_back(std::move(c));
        }
    return detail::sorted_unique(std::move(out));
}

// Decomposition forest ---------------------------------------------------------

// unsat: the node decomposes into nothing
enum class node_status { normal, decomposed, unsat, inconclusive };

inline std::string to_string(node_status s) {
    switch (s) {
        case node_status::normal: return "normal";
        case node_status::decomposed: return "decomposed";
        case node_status::unsat: return "unsat";
        case node_status::inconclusive: return "inconclusive";
    }
    return "?";
}

struct forest_node {
    std::size_t id = 0;
    std::optional<std::size_t> parent;
    klm_sequence seq;
    klm_rank rank;
    node_status status = node_status::decomposed;
    std::string note;
};

struct decomposition_forest {
    std::vector<forest_node> nodes;   // in depth-first visiting order
    bool exhausted = true;            // every branch fully decomposed
    bool stopped_early = false;

    [[nodiscard]] std::vector<const forest_node*> normal_leaves() const {
        std::vector<const forest_node*> out;
        for (const auto& n : nodes)
            if (n.status == node_status::normal) out.push_back(&n);
        return out;
    }

    // rank sequence from a root down to the given node
    [[nodiscard]] std::vector<klm_rank> branch_ranks(std::size_t id) const {
        std::vector<klm_rank> out;
        std::optional<std::size_t> cur = id;
        while (cur) {
            out.push_back(nodes[*cur].rank);
            cur = nodes[*cur].parent;
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

// Depth-first construction of the forest below clean(root). on_normal is
// called for every normal leaf; returning true stops the search.
inline decomposition_forest explore(const klm_sequence& root, const decomposition_options& opt,
                                    const std::function<bool(const forest_node&)>& on_normal = {}) {
    decomposition_forest f;
    struct pending {
        klm_sequence seq;
        std::optional<std::size_t> parent;
    };
    std::vector<pending> stack;
    try {
        auto roots = clean(root, opt);
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.push_back({std::move(*it), std::nullopt});
    } catch (const budget_exceeded&) {
        f.exhausted = false;
        return f;
    }
    while (!stack.empty()) {
        pending p = std::move(stack.back());
        stack.pop_back();
        forest_node n;
        n.id = f.nodes.size();
        n.parent = p.parent;
        n.rank = rank(p.seq);
        n.seq = std::move(p.seq);
        if (f.nodes.size() >= opt.forest_nodes) {
            f.exhausted = false;
            break;
        }
        std::vector<klm_sequence> children;
        try {
            if (is_normal(n.seq, opt)) {
                n.status = node_status::normal;
            } else {
                children = dec(n.seq, opt);
                n.status = children.empty() ? node_status::unsat : node_status::decomposed;
            }
        } catch (const budget_exceeded& e) {
            n.status = node_status::inconclusive;
            n.note = e.what();
            f.exhausted = false;
        }
        f.nodes.push_back(n);
        if (n.status == node_status::normal && on_normal && on_normal(f.nodes.back())) {
            f.stopped_early = true;
            break;
        }
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back({std::move(*it), n.id});
    }
    return f;
}

inline decomposition_forest full_decomposition(const klm_sequence& root, const decomposition_options& opt = {}) {
    return explore(root, opt);
}

// Text form: one line per node, then each distinct VASS once.
inline std::string render_forest(const decomposition_forest& f) {
    std::vector<std::string> bodies;
    std::map<std::string, std::size_t> index;
    auto name_of = [&](const vass& g) {
        std::string b = render_vass(g);
        auto [it, fresh] = index.emplace(b, bodies.size());
        if (fresh) bodies.push_back(b);
        return "G#" + std::to_string(it->second);
    };
    std::string out;
    for (const auto& n : f.nodes) {
        out += "node " + std::to_string(n.id) + " parent=" + (n.parent ? std::to_string(*n.parent) : "-") +
               " rank=" + render_rank(n.rank) + " status=" + to_string(n.status) + " seq=" +
               render_sequence(n.seq, name_of) + "\n";
    }
    out += "# complete=" + std::string(f.exhausted && !f.stopped_early ? "yes" : "no") + "\n";
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        out += "vass G#" + std::to_string(k) + "\n" + bodies[k];
        out += "end\n";
    }
    return out;
}

} // namespace klm
