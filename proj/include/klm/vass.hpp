#pragma once

#include "config.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace klm {

struct transition {
    std::string name;
    std::size_t src = 0;
    std::size_t tgt = 0;
    action delta;
};

// Transition description by state names, used when building a VASS.
struct transition_spec {
    std::string name;
    std::string src;
    std::string tgt;
    action delta;
};

// A d-dimensional VASS with a distinguished input and output state.
// States are kept sorted by name and transitions by name, so every
// iteration over them is deterministic.
struct vass {
    std::size_t dim = 0;
    std::vector<std::string> states;
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<transition> transitions;

    [[nodiscard]] std::size_t num_states() const { return states.size(); }

    [[nodiscard]] std::optional<std::size_t> find_state(const std::string& name) const {
        auto it = std::lower_bound(states.begin(), states.end(), name);
        if (it == states.end() || *it != name) return std::nullopt;
        return static_cast<std::size_t>(it - states.begin());
    }

    [[nodiscard]] std::size_t state_index(const std::string& name) const {
        auto s = find_state(name);
        if (!s) throw invalid_vass("unknown state '" + name + "'");
        return *s;
    }

    [[nodiscard]] std::optional<std::size_t> find_transition(const std::string& name) const {
        for (std::size_t k = 0; k < transitions.size(); ++k)
            if (transitions[k].name == name) return k;
        return std::nullopt;
    }

    friend bool operator==(const vass& a, const vass& b) {
        if (a.dim != b.dim || a.states != b.states || a.in != b.in || a.out != b.out) return false;
        if (a.transitions.size() != b.transitions.size()) return false;
        for (std::size_t k = 0; k < a.transitions.size(); ++k) {
            const auto& s = a.transitions[k];
            const auto& t = b.transitions[k];
            if (s.name != t.name || s.src != t.src || s.tgt != t.tgt || s.delta != t.delta) return false;
        }
        return true;
    }
};

inline vass make_vass(std::size_t dim, std::vector<std::string> states, const std::string& in,
                      const std::string& out, const std::vector<transition_spec>& ts) {
    vass g;
    g.dim = dim;
    std::sort(states.begin(), states.end());
    if (std::adjacent_find(states.begin(), states.end()) != states.end())
        throw invalid_vass("duplicate state name");
    if (states.empty()) throw invalid_vass("VASS without states");
    g.states = std::move(states);
    g.in = g.state_index(in);
    g.out = g.state_index(out);
    std::set<std::string> names;
    for (const auto& t : ts) {
        if (!names.insert(t.name).second) throw invalid_vass("duplicate transition name '" + t.name + "'");
        if (t.delta.size() != dim)
            throw invalid_vass("transition '" + t.name + "' has wrong dimension");
        g.transitions.push_back({t.name, g.state_index(t.src), g.state_index(t.tgt), t.delta});
    }
    std::sort(g.transitions.begin(), g.transitions.end(),
              [](const transition& a, const transition& b) { return a.name < b.name; });
    return g;
}

inline std::vector<transition_spec> specs_of(const vass& g) {
    std::vector<transition_spec> ts;
    for (const auto& t : g.transitions) ts.push_back({t.name, g.states[t.src], g.states[t.tgt], t.delta});
    return ts;
}

// |G| = |Q| + |T| + sum of the norms of all actions.
inline integer size(const vass& g) {
    integer s = integer(g.states.size()) + integer(g.transitions.size());
    for (const auto& t : g.transitions) s += norm(t.delta);
    return s;
}

// Same states, transitions flipped and negated, input and output swapped.
inline vass reverse(const vass& g) {
    vass r = g;
    std::swap(r.in, r.out);
    for (auto& t : r.transitions) {
        std::swap(t.src, t.tgt);
        t.delta = negate(t.delta);
    }
    return r;
}

// Sub-VASS on a subset of the states with new endpoints. Only transitions
// with both ends kept and accepted by keep_transition survive.
template <typename Pred>
vass restrict(const vass& g, const std::set<std::size_t>& keep, std::size_t new_in, std::size_t new_out,
              Pred keep_transition) {
    std::vector<std::string> names;
    for (std::size_t q : keep) names.push_back(g.states[q]);
    std::vector<transition_spec> ts;
    for (std::size_t k = 0; k < g.transitions.size(); ++k) {
        const auto& t = g.transitions[k];
        if (keep.count(t.src) && keep.count(t.tgt) && keep_transition(k))
            ts.push_back({t.name, g.states[t.src], g.states[t.tgt], t.delta});
    }
    return make_vass(g.dim, names, g.states.at(new_in), g.states.at(new_out), ts);
}

inline vass restrict(const vass& g, const std::set<std::size_t>& keep, std::size_t new_in, std::size_t new_out) {
    return restrict(g, keep, new_in, new_out, [](std::size_t) { return true; });
}

// Strongly connected components ---------------------------------------

struct scc_info {
    std::vector<std::vector<std::size_t>> components;  // ordered by smallest member
    std::vector<std::size_t> component_of;
};

inline scc_info scc_decompose(const vass& g) {
    const std::size_t n = g.num_states();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& t : g.transitions) adj[t.src].push_back(t.tgt);

    // iterative Tarjan
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    long counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < adj[v].size()) {
                std::size_t w = adj[v][pos++];
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
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    std::sort(comps.begin(), comps.end());
    scc_info info;
    info.component_of.assign(n, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t q : comps[c]) info.component_of[q] = c;
    info.components = std::move(comps);
    return info;
}

inline bool is_strongly_connected(const vass& g) {
    return scc_decompose(g).components.size() == 1;
}

// States reachable from `from` in the underlying graph, optionally backwards.
inline std::vector<bool> graph_reachable(const vass& g, std::size_t from, bool backwards = false) {
    std::vector<bool> seen(g.num_states(), false);
    std::vector<std::size_t> todo{from};
    seen[from] = true;
    while (!todo.empty()) {
        std::size_t q = todo.back();
        todo.pop_back();
        for (const auto& t : g.transitions) {
            std::size_t a = backwards ? t.tgt : t.src;
            std::size_t b = backwards ? t.src : t.tgt;
            if (a == q && !seen[b]) {
                seen[b] = true;
                todo.push_back(b);
            }
        }
    }
    return seen;
}

// Paths -----------------------------------------------------------------

using path = std::vector<std::size_t>;  // transition indices

inline void check_path(const vass& g, const path& p) {
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] >= g.transitions.size()) throw malformed_path("transition index out of range");
        if (k > 0 && g.transitions[p[k - 1]].tgt != g.transitions[p[k]].src)
            throw malformed_path("transitions " + g.transitions[p[k - 1]].name + " and " +
                                 g.transitions[p[k]].name + " do not chain");
    }
}

inline std::vector<integer> parikh(const vass& g, const path& p) {
    check_path(g, p);
    std::vector<integer> v(g.transitions.size(), 0);
    for (std::size_t k : p) v[k] += 1;
    return v;
}

inline action displacement(const vass& g, const std::vector<integer>& phi) {
    check_dim(phi.size(), g.transitions.size());
    action d(g.dim, 0);
    for (std::size_t k = 0; k < phi.size(); ++k)
        for (std::size_t i = 0; i < g.dim; ++i) d[i] += phi[k] * g.transitions[k].delta[i];
    return d;
}

inline action displacement(const vass& g, const path& p) {
    return displacement(g, parikh(g, p));
}

inline std::vector<action> word_of(const vass& g, const path& p) {
    std::vector<action> w;
    for (std::size_t k : p) w.push_back(g.transitions[k].delta);
    return w;
}

struct state_config {
    std::size_t state;
    omega_config config;
    friend bool operator<(const state_config& a, const state_config& b) {
        if (a.state != b.state) return a.state < b.state;
        return a.config < b.config;
    }
    friend bool operator==(const state_config& a, const state_config& b) {
        return a.state == b.state && a.config == b.config;
    }
};

// All state-configurations reachable from `start` by reading exactly `word`.
inline std::vector<state_config> run(const vass& g, const state_config& start, const std::vector<action>& word) {
    check_dim(start.config.size(), g.dim);
    std::set<std::size_t> current{start.state};
    omega_config c = start.config;
    for (const auto& a : word) {
        check_dim(a.size(), g.dim);
        auto next = try_step(c, a);
        if (!next) return {};
        std::set<std::size_t> succ;
        for (const auto& t : g.transitions)
            if (current.count(t.src) && t.delta == a) succ.insert(t.tgt);
        if (succ.empty()) return {};
        current = std::move(succ);
        c = std::move(*next);
    }
    std::vector<state_config> out;
    for (std::size_t q : current) out.push_back({q, c});
    return out;
}

inline bool reaches(const vass& g, const state_config& from, const std::vector<action>& word, const state_config& to) {
    for (const auto& sc : run(g, from, word))
        if (sc == to) return true;
    return false;
}

// Fixed components -------------------------------------------------------

// For each component i, the potential f_i with f_i(tgt) = f_i(src) + delta(i)
// on every transition, if one exists. Each weakly connected part is anchored
// at 0 on its smallest state, the input state's part at the input state.
inline std::vector<std::optional<std::vector<integer>>> fixed_components(const vass& g) {
    const std::size_t n = g.num_states();
    std::vector<std::optional<std::vector<integer>>> out(g.dim);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(n);  // (transition, other end)
    for (std::size_t k = 0; k < g.transitions.size(); ++k) {
        inc[g.transitions[k].src].push_back({k, g.transitions[k].tgt});
        inc[g.transitions[k].tgt].push_back({k, g.transitions[k].src});
    }
    std::vector<std::size_t> roots{g.in};
    for (std::size_t q = 0; q < n; ++q) roots.push_back(q);
    for (std::size_t i = 0; i < g.dim; ++i) {
        std::vector<integer> f(n, 0);
        std::vector<bool> set(n, false);
        bool ok = true;
        for (std::size_t r : roots) {
            if (set[r] || !ok) continue;
            set[r] = true;
            std::vector<std::size_t> todo{r};
            while (!todo.empty() && ok) {
                std::size_t q = todo.back();
                todo.pop_back();
                for (auto [k, other] : inc[q]) {
                    const auto& t = g.transitions[k];
                    integer want = (t.src == q) ? integer(f[q] + t.delta[i]) : integer(f[q] - t.delta[i]);
                    if (!set[other]) {
                        set[other] = true;
                        f[other] = want;
                        todo.push_back(other);
                    } else if (f[other] != want) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (ok) out[i] = std::move(f);
    }
    return out;
}

} // namespace klm
