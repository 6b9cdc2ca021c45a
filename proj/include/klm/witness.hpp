#pragma once

#include "coverability.hpp"
#include "decomp.hpp"
#include "klm_sequence.hpp"

#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace klm {

struct witness_options {
    dioph_options dioph;
    std::size_t pump_nodes = 200000;     // search nodes per pumping cycle
    std::size_t max_length = 2000000;    // longest word assembled
    unsigned max_doublings = 12;
};

// A model of E_xi positive on every Parikh variable, when the sequence is
// unbounded: some model plus homogeneous models covering the support.
struct positive_models {
    std::vector<integer> h;   // model of E_xi
    std::vector<integer> h0;  // model of the homogeneous system
};

inline std::optional<positive_models> all_positive_models(const klm_sequence& s, const dioph_options& opt = {}) {
    auto sys = characteristic_system(s);
    auto base = nat_satisfiable(sys, opt);
    if (!base) return std::nullopt;
    auto sup = positivity_support(homogeneous(sys));
    std::vector<integer> h0(sys.num_vars, 0);
    std::set<std::vector<integer>> used;
    for (std::size_t v = 0; v < sys.num_vars; ++v)
        if (sup.positive[v] && used.insert(sup.certificate[v]).second)
            for (std::size_t k = 0; k < sys.num_vars; ++k) h0[k] += sup.certificate[v][k];
    positive_models pm;
    pm.h0 = h0;
    pm.h = *base;
    for (std::size_t k = 0; k < sys.num_vars; ++k) pm.h[k] += h0[k];
    return pm;
}

// Path using each transition exactly counts[t] times, from `from` to `to`.
inline std::optional<path> euler_path(const vass& g, const std::vector<integer>& counts, std::size_t from,
                                      std::size_t to, std::size_t max_length = 2000000) {
    check_dim(counts.size(), g.transitions.size());
    integer total = 0;
    std::vector<integer> balance(g.num_states(), 0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 0) return std::nullopt;
        total += counts[k];
        balance[g.transitions[k].src] += counts[k];
        balance[g.transitions[k].tgt] -= counts[k];
    }
    if (total > integer(max_length)) throw budget_exceeded("Euler path longer than the length cap");
    balance[from] -= 1;
    balance[to] += 1;
    for (const auto& b : balance)
        if (b != 0) return std::nullopt;
    std::vector<unsigned long> left(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) left[k] = counts[k].get_ui();
    std::vector<std::vector<std::size_t>> out_edges(g.num_states());
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (left[k] > 0) out_edges[g.transitions[k].src].push_back(k);
    std::vector<std::size_t> ptr(g.num_states(), 0);
    // Hierholzer
    std::vector<std::pair<std::size_t, std::optional<std::size_t>>> stack{{from, std::nullopt}};
    path circuit;
    while (!stack.empty()) {
        std::size_t v = stack.back().first;
        auto& p = ptr[v];
        while (p < out_edges[v].size() && left[out_edges[v][p]] == 0) ++p;
        if (p < out_edges[v].size()) {
            std::size_t k = out_edges[v][p];
            --left[k];
            stack.push_back({g.transitions[k].tgt, k});
        } else {
            if (stack.back().second) circuit.push_back(*stack.back().second);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (integer(circuit.size()) != total) return std::nullopt;  // support not connected
    return circuit;
}

// Shortest-first search for a cycle on the input state that starts from an
// instance of x, ends above x and strictly above it on component i.
inline std::optional<path> pumping_cycle(const vass& g, const omega_config& x, std::size_t i, std::size_t budget) {
    struct entry {
        std::size_t q;
        omega_config c;
        std::optional<std::size_t> parent;
        std::size_t via;
    };
    std::vector<entry> nodes{{g.in, x, std::nullopt, 0}};
    std::vector<std::vector<std::size_t>> at(g.num_states());
    at[g.in].push_back(0);
    for (std::size_t h = 0; h < nodes.size(); ++h) {
        for (std::size_t k = 0; k < g.transitions.size(); ++k) {
            const auto& t = g.transitions[k];
            if (t.src != nodes[h].q) continue;
            auto c = try_step(nodes[h].c, t.delta);
            if (!c) continue;
            if (t.tgt == g.in && leq(x, *c) && x[i] < (*c)[i]) {
                path p{k};
                for (std::optional<std::size_t> n = h; nodes[*n].parent; n = nodes[*n].parent) p.push_back(nodes[*n].via);
                std::reverse(p.begin(), p.end());
                return p;
            }
            bool dominated = false;
            for (std::size_t o : at[t.tgt])
                if (leq(*c, nodes[o].c)) {
                    dominated = true;
                    break;
                }
            if (dominated) continue;
            if (nodes.size() >= budget) throw budget_exceeded("pumping cycle search exceeded its budget");
            nodes.push_back({t.tgt, *c, h, k});
            at[t.tgt].push_back(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

// A cycle on the input state increasing every listed component and not
// decreasing any finite one; concatenates one cycle per component.
inline std::optional<path> find_pump(const vass& g, const omega_config& x, const std::vector<std::size_t>& comps,
                                     std::size_t budget = 200000) {
    path u;
    for (std::size_t i : comps) {
        auto c = pumping_cycle(g, x, i, budget);
        if (!c) return std::nullopt;
        u.insert(u.end(), c->begin(), c->end());
    }
    return u;
}

// The same, on the output side: a cycle on the output state ending in an
// instance of y that, read backwards, increases the listed components.
inline std::optional<path> find_backward_pump(const vass& g, const omega_config& y,
                                              const std::vector<std::size_t>& comps, std::size_t budget = 200000) {
    auto p = find_pump(reverse(g), y, comps, budget);
    if (p) std::reverse(p->begin(), p->end());
    return p;
}

// Checks that the given per-triple paths, joined by the connectors, form a
// run of the sequence. Omega entries of the first input configuration take
// their least admissible value. Returns the starting configuration.
inline std::optional<std::vector<integer>> check_decomposition(const klm_sequence& s, const std::vector<path>& paths) {
    const std::size_t d = s.dim;
    // displacement from the start at each checkpoint
    std::vector<integer> cur(d, 0), low(d, 0);
    struct checkpoint {
        const omega_config* c;
        std::vector<integer> offset;
    };
    std::vector<checkpoint> cps;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        const auto& g = s.triples[j].g;
        if (j > 0)
            for (std::size_t i = 0; i < d; ++i) {
                cur[i] += s.connectors[j - 1][i];
                low[i] = std::min(low[i], cur[i]);
            }
        cps.push_back({&s.triples[j].x, cur});
        try {
            check_path(g, paths[j]);
        } catch (const malformed_path&) {
            return std::nullopt;
        }
        std::size_t at = g.in;
        if (!paths[j].empty() && g.transitions[paths[j].front()].src != g.in) return std::nullopt;
        for (std::size_t k : paths[j]) {
            for (std::size_t i = 0; i < d; ++i) {
                cur[i] += g.transitions[k].delta[i];
                low[i] = std::min(low[i], cur[i]);
            }
            at = g.transitions[k].tgt;
        }
        if (at != g.out) return std::nullopt;
        cps.push_back({&s.triples[j].y, cur});
    }
    std::vector<integer> start(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        std::optional<integer> pinned;
        for (const auto& cp : cps)
            if ((*cp.c)[i].is_finite()) {
                integer v = (*cp.c)[i].value() - cp.offset[i];
                if (pinned && *pinned != v) return std::nullopt;
                pinned = v;
            }
        start[i] = pinned ? *pinned : integer(-low[i]);
        if (start[i] + low[i] < 0) return std::nullopt;
    }
    return start;
}

struct witness {
    std::vector<action> word;
    std::vector<path> paths;
    std::vector<integer> start;
};

// Builds a word of the action language of a normal sequence: per triple
// u^s w^s sigma v^s where u, v pump the boundary values, sigma follows a
// positive model and w carries the homogeneous model. The exponents grow
// by doubling until the word checks out.
inline std::optional<witness> extract_witness(const klm_sequence& s, const witness_options& opt = {}) {
    auto pm = all_positive_models(s, opt.dioph);
    if (!pm) return std::nullopt;
    char_layout L(s);
    const std::size_t k = s.triples.size();
    struct parts {
        path u, v, sigma;
        std::vector<integer> h0_phi, psi_u, psi_v;
    };
    std::vector<parts> ps(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& tr = s.triples[j];
        const auto& g = tr.g;
        auto fixed = fixed_components(g);
        std::vector<std::size_t> fwd, bwd;
        for (std::size_t i = 0; i < s.dim; ++i) {
            if (fixed[i]) continue;
            if (tr.x[i].is_finite()) fwd.push_back(i);
            if (tr.y[i].is_finite()) bwd.push_back(i);
        }
        auto u = find_pump(g, tr.x, fwd, opt.pump_nodes);
        auto v = find_backward_pump(g, tr.y, bwd, opt.pump_nodes);
        if (!u || !v) return std::nullopt;
        ps[j].u = *u;
        ps[j].v = *v;
        ps[j].psi_u = parikh(g, *u);
        ps[j].psi_v = parikh(g, *v);
        std::vector<integer> h_phi;
        for (std::size_t t = 0; t < g.transitions.size(); ++t) {
            h_phi.push_back(pm->h[L.phi(j, t)]);
            ps[j].h0_phi.push_back(pm->h0[L.phi(j, t)]);
        }
        auto sigma = euler_path(g, h_phi, g.in, g.out, opt.max_length);
        if (!sigma) return std::nullopt;
        ps[j].sigma = *sigma;
    }
    for (unsigned er = 0; er <= opt.max_doublings; ++er) {
        integer r = integer(1) << er;
        std::vector<path> w(k);
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            const auto& g = s.triples[j].g;
            std::vector<integer> counts(g.transitions.size());
            for (std::size_t t = 0; t < counts.size(); ++t) {
                counts[t] = r * ps[j].h0_phi[t] - ps[j].psi_u[t] - ps[j].psi_v[t];
                if (counts[t] < 1) ok = false;
            }
            if (!ok) break;
            auto c = euler_path(g, counts, g.in, g.in, opt.max_length);
            if (!c) {
                ok = false;
                break;
            }
            w[j] = *c;
        }
        if (!ok) continue;
        for (unsigned es = 0; es <= opt.max_doublings; ++es) {
            std::size_t sexp = std::size_t(1) << es;
            std::size_t len = 0;
            for (std::size_t j = 0; j < k; ++j)
                len += sexp * (ps[j].u.size() + w[j].size() + ps[j].v.size()) + ps[j].sigma.size();
            if (len > opt.max_length) break;
            std::vector<path> paths(k);
            for (std::size_t j = 0; j < k; ++j) {
                auto& p = paths[j];
                for (std::size_t n = 0; n < sexp; ++n) p.insert(p.end(), ps[j].u.begin(), ps[j].u.end());
                for (std::size_t n = 0; n < sexp; ++n) p.insert(p.end(), w[j].begin(), w[j].end());
                p.insert(p.end(), ps[j].sigma.begin(), ps[j].sigma.end());
                for (std::size_t n = 0; n < sexp; ++n) p.insert(p.end(), ps[j].v.begin(), ps[j].v.end());
            }
            if (auto start = check_decomposition(s, paths)) {
                witness wt;
                wt.paths = paths;
                wt.start = *start;
                for (std::size_t j = 0; j < k; ++j) {
                    if (j) wt.word.push_back(s.connectors[j - 1]);
                    auto wj = word_of(s.triples[j].g, paths[j]);
                    wt.word.insert(wt.word.end(), wj.begin(), wj.end());
                }
                return wt;
            }
        }
    }
    throw budget_exceeded("witness exponents exceeded their cap");
}

} // namespace klm
