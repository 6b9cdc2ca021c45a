#pragma once

#include "dioph.hpp"
#include "linalg.hpp"
#include "vass.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace klm {

// (x G y): runs of G from input to output, starting from an instance of x
// and ending in an instance of y.
struct klm_triple {
    omega_config x;
    vass g;
    omega_config y;
};

// (x_0 G_0 y_0) a_1 (x_1 G_1 y_1) ... a_k (x_k G_k y_k)
struct klm_sequence {
    std::size_t dim = 0;
    std::vector<klm_triple> triples;
    std::vector<action> connectors;  // connectors[j] sits before triples[j + 1]

    [[nodiscard]] std::size_t length() const { return triples.empty() ? 0 : triples.size() - 1; }

    void validate() const {
        if (triples.empty()) throw invalid_vass("KLM sequence without triples");
        if (connectors.size() + 1 != triples.size()) throw invalid_vass("connector count mismatch");
        for (const auto& t : triples) {
            check_dim(t.x.size(), dim);
            check_dim(t.y.size(), dim);
            check_dim(t.g.dim, dim);
        }
        for (const auto& a : connectors) check_dim(a.size(), dim);
    }
};

inline klm_sequence single_triple(const omega_config& x, const vass& g, const omega_config& y) {
    klm_sequence s;
    s.dim = g.dim;
    s.triples.push_back({x, g, y});
    s.validate();
    return s;
}

// |xi| = 2 (d+1)^(d+1) (k + sum |a_j| + sum (|x_j| + |G_j| + |y_j|))
inline integer size(const klm_sequence& s) {
    integer body = integer(s.length());
    for (const auto& a : s.connectors) body += norm(a);
    for (const auto& t : s.triples) body += norm(t.x) + size(t.g) + norm(t.y);
    integer d1 = integer(s.dim + 1);
    return 2 * ipow(d1, s.dim + 1) * body;
}

// Dimension of the space spanned by the displacements of cycles through t,
// for each transition t. Transitions between different SCCs get 0.
inline std::vector<std::size_t> vs_dimensions(const vass& g) {
    std::vector<std::size_t> dims(g.transitions.size(), 0);
    auto info = scc_decompose(g);
    for (std::size_t c = 0; c < info.components.size(); ++c) {
        const auto& comp = info.components[c];
        std::vector<std::size_t> local;  // transitions inside the component
        for (std::size_t k = 0; k < g.transitions.size(); ++k)
            if (info.component_of[g.transitions[k].src] == c && info.component_of[g.transitions[k].tgt] == c)
                local.push_back(k);
        if (local.empty()) continue;
        std::map<std::size_t, std::size_t> row_of;
        for (std::size_t r = 0; r < comp.size(); ++r) row_of[comp[r]] = r;
        rat_matrix kirchhoff(comp.size(), std::vector<rational>(local.size(), 0));
        for (std::size_t col = 0; col < local.size(); ++col) {
            const auto& t = g.transitions[local[col]];
            kirchhoff[row_of[t.tgt]][col] += 1;
            kirchhoff[row_of[t.src]][col] -= 1;
        }
        auto basis = kernel_basis(kirchhoff, local.size());
        // VS(t) is spanned by the displacements of kernel vectors; as the
        // component is strongly connected the space is shared by all its transitions
        std::vector<std::vector<integer>> disp;
        for (const auto& b : basis) {
            action d(g.dim, 0);
            for (std::size_t col = 0; col < local.size(); ++col)
                for (std::size_t i = 0; i < g.dim; ++i) d[i] += b[col] * g.transitions[local[col]].delta[i];
            disp.push_back(d);
        }
        std::size_t dimension = span_dimension(disp, g.dim);
        for (std::size_t k : local) dims[k] = dimension;
    }
    return dims;
}

// rank[i] counts transitions whose VS has dimension i, for i = 0..d.
using klm_rank = std::vector<integer>;

inline klm_rank rank(const vass& g) {
    klm_rank r(g.dim + 1, 0);
    for (std::size_t v : vs_dimensions(g)) r[v] += 1;
    return r;
}

inline klm_rank rank(const klm_sequence& s) {
    klm_rank r(s.dim + 1, 0);
    for (const auto& t : s.triples) {
        auto tr = rank(t.g);
        for (std::size_t i = 0; i <= s.dim; ++i) r[i] += tr[i];
    }
    return r;
}

// Lexicographic comparison from the top dimension down.
inline int compare_rank(const klm_rank& a, const klm_rank& b) {
    check_dim(a.size(), b.size());
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

inline std::string render_rank(const klm_rank& r) {
    std::string s = "(";
    for (std::size_t i = r.size(); i-- > 0;) {
        s += r[i].get_str();
        if (i) s += ",";
    }
    return s + ")";
}

// Characteristic system ---------------------------------------------------

// Variable layout: for each triple j, the block m_j (d entries), then
// phi_j (one per transition of G_j), then n_j (d entries).
struct char_layout {
    std::size_t dim = 0;
    std::vector<std::size_t> m_base, phi_base, n_base;
    std::size_t num_vars = 0;

    explicit char_layout(const klm_sequence& s) : dim(s.dim) {
        std::size_t off = 0;
        for (const auto& t : s.triples) {
            m_base.push_back(off);
            off += dim;
            phi_base.push_back(off);
            off += t.g.transitions.size();
            n_base.push_back(off);
            off += dim;
        }
        num_vars = off;
    }
    [[nodiscard]] std::size_t m(std::size_t j, std::size_t i) const { return m_base[j] + i; }
    [[nodiscard]] std::size_t phi(std::size_t j, std::size_t k) const { return phi_base[j] + k; }
    [[nodiscard]] std::size_t n(std::size_t j, std::size_t i) const { return n_base[j] + i; }
};

// E_xi; with homogeneous = true all constant terms are dropped (E0_xi).
inline lin_system characteristic_system(const klm_sequence& s, bool homogeneous_part = false) {
    s.validate();
    char_layout L(s);
    lin_system sys(L.num_vars);
    const std::size_t d = s.dim;
    auto k = [&](const integer& v) { return homogeneous_part ? integer(0) : v; };
    for (std::size_t i = 0; i < L.num_vars; ++i) sys.labels.push_back("");
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        const auto& tr = s.triples[j];
        const auto& g = tr.g;
        std::string js = std::to_string(j);
        for (std::size_t i = 0; i < d; ++i) {
            sys.labels[L.m(j, i)] = "m" + js + "(" + std::to_string(i + 1) + ")";
            sys.labels[L.n(j, i)] = "n" + js + "(" + std::to_string(i + 1) + ")";
        }
        for (std::size_t t = 0; t < g.transitions.size(); ++t)
            sys.labels[L.phi(j, t)] = "phi" + js + "(" + g.transitions[t].name + ")";

        for (std::size_t i = 0; i < d; ++i)
            if (tr.x[i].is_finite()) sys.add_row({{L.m(j, i), 1}}, k(tr.x[i].value()));
        // Kirchhoff: 1_out - 1_in = sum phi(t) (1_tgt - 1_src)
        for (std::size_t q = 0; q < g.num_states(); ++q) {
            std::vector<std::pair<std::size_t, integer>> terms;
            for (std::size_t t = 0; t < g.transitions.size(); ++t) {
                integer coef = 0;
                if (g.transitions[t].tgt == q) coef += 1;
                if (g.transitions[t].src == q) coef -= 1;
                if (coef != 0) terms.push_back({L.phi(j, t), coef});
            }
            integer rhs = integer(q == g.out ? 1 : 0) - integer(q == g.in ? 1 : 0);
            if (terms.empty() && rhs == 0) continue;
            sys.add_row(terms, k(rhs));
        }
        // n = m + delta(phi)
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<std::pair<std::size_t, integer>> terms{{L.n(j, i), 1}, {L.m(j, i), -1}};
            for (std::size_t t = 0; t < g.transitions.size(); ++t)
                if (g.transitions[t].delta[i] != 0) terms.push_back({L.phi(j, t), -g.transitions[t].delta[i]});
            sys.add_row(terms, 0);
        }
        for (std::size_t i = 0; i < d; ++i)
            if (tr.y[i].is_finite()) sys.add_row({{L.n(j, i), 1}}, k(tr.y[i].value()));
        if (j > 0)
            for (std::size_t i = 0; i < d; ++i)
                sys.add_row({{L.m(j, i), 1}, {L.n(j - 1, i), -1}}, k(s.connectors[j - 1][i]));
    }
    return sys;
}

inline lin_system homogeneous_system(const klm_sequence& s) {
    return characteristic_system(s, true);
}

// A model of the characteristic system split into its blocks.
struct char_model {
    struct block {
        std::vector<integer> m, phi, n;
    };
    std::vector<block> blocks;
};

inline char_model split_model(const klm_sequence& s, const std::vector<integer>& x) {
    char_layout L(s);
    char_model cm;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        char_model::block b;
        for (std::size_t i = 0; i < s.dim; ++i) {
            b.m.push_back(x[L.m(j, i)]);
            b.n.push_back(x[L.n(j, i)]);
        }
        for (std::size_t t = 0; t < s.triples[j].g.transitions.size(); ++t) b.phi.push_back(x[L.phi(j, t)]);
        cm.blocks.push_back(std::move(b));
    }
    return cm;
}

inline std::vector<integer> flatten_model(const klm_sequence& s, const char_model& cm) {
    char_layout L(s);
    std::vector<integer> x(L.num_vars, 0);
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        for (std::size_t i = 0; i < s.dim; ++i) {
            x[L.m(j, i)] = cm.blocks[j].m[i];
            x[L.n(j, i)] = cm.blocks[j].n[i];
        }
        for (std::size_t t = 0; t < cm.blocks[j].phi.size(); ++t) x[L.phi(j, t)] = cm.blocks[j].phi[t];
    }
    return x;
}

// Membership -----------------------------------------------------------------

// An accepting decomposition of a word: the start configuration, the paths
// taken in each triple and the configurations around them.
struct membership_witness {
    std::vector<integer> start;
    std::vector<path> paths;
    std::vector<std::vector<integer>> m, n;
};

// Decides whether a word belongs to the action language of the sequence.
// Omega entries of the first input configuration are free; each is set to
// the least value compatible with nonnegativity and all finite checkpoints.
inline std::optional<membership_witness> membership(const klm_sequence& s, const std::vector<action>& word) {
    s.validate();
    const std::size_t d = s.dim;
    const std::size_t len = word.size();
    for (const auto& a : word) check_dim(a.size(), d);
    // prefix[p] = displacement of word[0..p)
    std::vector<std::vector<integer>> prefix(len + 1, std::vector<integer>(d, 0));
    for (std::size_t p = 0; p < len; ++p)
        for (std::size_t i = 0; i < d; ++i) prefix[p + 1][i] = prefix[p][i] + word[p][i];

    const auto& x0 = s.triples[0].x;
    std::vector<bool> free_coord(d);
    for (std::size_t i = 0; i < d; ++i) free_coord[i] = x0[i].is_omega();
    // value at position p of fixed coordinate i
    auto fixed_value = [&](std::size_t p, std::size_t i) { return integer(x0[i].value() + prefix[p][i]); };
    for (std::size_t i = 0; i < d; ++i)
        if (!free_coord[i])
            for (std::size_t p = 0; p <= len; ++p)
                if (fixed_value(p, i) < 0) return std::nullopt;

    using pins = std::vector<std::optional<integer>>;  // start value of free coordinates
    // check a checkpoint `c` at position p, updating pins; false if violated
    auto checkpoint = [&](const omega_config& c, std::size_t p, pins& pn) {
        for (std::size_t i = 0; i < d; ++i) {
            if (c[i].is_omega()) continue;
            if (!free_coord[i]) {
                if (fixed_value(p, i) != c[i].value()) return false;
            } else {
                integer v = c[i].value() - prefix[p][i];
                if (v < 0) return false;
                if (pn[i] && *pn[i] != v) return false;
                pn[i] = v;
            }
        }
        return true;
    };

    struct node {
        std::size_t p, j, q;
        pins pn;
        bool operator<(const node& o) const { return std::tie(p, j, q, pn) < std::tie(o.p, o.j, o.q, o.pn); }
    };
    struct back {
        std::optional<node> parent;
        std::optional<std::size_t> via;  // transition of G_j; nullopt for a connector
    };
    std::map<node, back> seen;
    std::vector<node> todo;
    {
        pins pn(d);
        if (!checkpoint(x0, 0, pn)) return std::nullopt;
        node start{0, 0, s.triples[0].g.in, pn};
        seen[start] = {};
        todo.push_back(start);
    }
    const std::size_t last = s.triples.size() - 1;
    std::optional<node> accept;
    std::vector<integer> start_values;
    for (std::size_t h = 0; h < todo.size() && !accept; ++h) {
        node cur = todo[h];
        const auto& g = s.triples[cur.j].g;
        if (cur.p == len && cur.j == last && cur.q == g.out) {
            pins pn = cur.pn;
            if (checkpoint(s.triples[last].y, len, pn)) {
                // least start values satisfying nonnegativity and pins
                std::vector<integer> sv(d, 0);
                bool ok = true;
                for (std::size_t i = 0; i < d && ok; ++i) {
                    if (!free_coord[i]) {
                        sv[i] = x0[i].value();
                        continue;
                    }
                    integer need = 0;
                    for (std::size_t p = 0; p <= len; ++p) need = std::max(need, integer(-prefix[p][i]));
                    if (pn[i]) {
                        if (*pn[i] < need) ok = false;
                        sv[i] = *pn[i];
                    } else {
                        sv[i] = need;
                    }
                }
                if (ok) {
                    accept = cur;
                    start_values = sv;
                    break;
                }
            }
        }
        if (cur.p == len) continue;
        for (std::size_t t = 0; t < g.transitions.size(); ++t) {
            const auto& tr = g.transitions[t];
            if (tr.src != cur.q || tr.delta != word[cur.p]) continue;
            node nx{cur.p + 1, cur.j, tr.tgt, cur.pn};
            if (seen.emplace(nx, back{cur, t}).second) todo.push_back(nx);
        }
        if (cur.q == g.out && cur.j < last && s.connectors[cur.j] == word[cur.p]) {
            pins pn = cur.pn;
            if (!checkpoint(s.triples[cur.j].y, cur.p, pn)) continue;
            if (!checkpoint(s.triples[cur.j + 1].x, cur.p + 1, pn)) continue;
            node nx{cur.p + 1, cur.j + 1, s.triples[cur.j + 1].g.in, pn};
            if (seen.emplace(nx, back{cur, std::nullopt}).second) todo.push_back(nx);
        }
    }
    if (!accept) return std::nullopt;

    membership_witness w;
    w.start = start_values;
    w.paths.assign(s.triples.size(), {});
    std::vector<std::size_t> split(s.triples.size(), 0);  // position where triple j starts
    node cur = *accept;
    for (;;) {
        const auto& b = seen.at(cur);
        if (!b.parent) break;
        if (b.via) {
            w.paths[cur.j].push_back(*b.via);
        } else {
            split[cur.j] = cur.p;
        }
        cur = *b.parent;
    }
    for (auto& p : w.paths) std::reverse(p.begin(), p.end());
    std::vector<std::size_t> ends(s.triples.size());
    for (std::size_t j = 0; j < s.triples.size(); ++j)
        ends[j] = (j + 1 < s.triples.size()) ? split[j + 1] - 1 : len;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        std::vector<integer> m(d), n(d);
        for (std::size_t i = 0; i < d; ++i) {
            m[i] = start_values[i] + prefix[split[j]][i];
            n[i] = start_values[i] + prefix[ends[j]][i];
        }
        w.m.push_back(m);
        w.n.push_back(n);
    }
    return w;
}

// The characteristic model induced by an accepting decomposition.
inline std::vector<integer> induced_model(const klm_sequence& s, const membership_witness& w) {
    char_model cm;
    for (std::size_t j = 0; j < s.triples.size(); ++j) {
        char_model::block b;
        b.m = w.m[j];
        b.n = w.n[j];
        b.phi = parikh(s.triples[j].g, w.paths[j]);
        cm.blocks.push_back(std::move(b));
    }
    return flatten_model(s, cm);
}

} // namespace klm
