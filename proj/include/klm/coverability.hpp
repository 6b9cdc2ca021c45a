#pragma once

#include "vass.hpp"

#include <optional>
#include <set>
#include <vector>

namespace klm {

// (x accelerate x')(i) = omega if x(i) < x'(i), else x(i). Requires x <= x'.
inline omega_config accelerate(const omega_config& x, const omega_config& xp) {
    check_dim(x.size(), xp.size());
    if (!leq(x, xp)) throw std::invalid_argument("accelerate: first argument not dominated by the second");
    omega_config r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = (x[i] < xp[i]) ? nat_omega::omega() : x[i];
    return r;
}

struct km_node {
    std::size_t state;
    omega_config config;
    std::optional<std::size_t> parent;
    std::optional<std::size_t> via;  // transition index from the parent
};

struct km_tree {
    std::vector<km_node> nodes;

    // labels of all nodes at state q
    [[nodiscard]] std::vector<omega_config> labels_at(std::size_t q) const {
        std::vector<omega_config> out;
        for (const auto& n : nodes)
            if (n.state == q) out.push_back(n.config);
        return out;
    }
};

// Karp-Miller tree from (q, x), with acceleration against ancestors and
// pruning of nodes covered by an earlier node at the same state.
inline km_tree karp_miller(const vass& g, std::size_t q, const omega_config& x, std::size_t node_budget = 200000) {
    check_dim(x.size(), g.dim);
    km_tree tree;
    tree.nodes.push_back({q, x, std::nullopt, std::nullopt});
    std::vector<std::size_t> todo{0};
    std::vector<std::vector<std::size_t>> at_state(g.num_states());
    std::vector<bool> expand;
    expand.push_back(true);
    at_state[q].push_back(0);
    std::size_t head = 0;
    while (head < todo.size()) {
        std::size_t cur = todo[head++];
        for (std::size_t k = 0; k < g.transitions.size(); ++k) {
            const auto& t = g.transitions[k];
            if (t.src != tree.nodes[cur].state) continue;
            auto next = try_step(tree.nodes[cur].config, t.delta);
            if (!next) continue;
            omega_config c = *next;
            for (std::optional<std::size_t> a = cur; a; a = tree.nodes[*a].parent) {
                const auto& an = tree.nodes[*a];
                if (an.state == t.tgt && leq(an.config, c) && !(an.config == c)) c = accelerate(an.config, c);
            }
            bool covered = false;
            for (std::size_t o : at_state[t.tgt])
                if (leq(c, tree.nodes[o].config)) {
                    covered = true;
                    break;
                }
            if (covered) continue;
            if (tree.nodes.size() >= node_budget) throw budget_exceeded("Karp-Miller tree exceeded its node budget");
            tree.nodes.push_back({t.tgt, c, cur, k});
            at_state[t.tgt].push_back(tree.nodes.size() - 1);
            todo.push_back(tree.nodes.size() - 1);
        }
    }
    return tree;
}

// Forward acceleration: entry i becomes omega iff some configuration
// reachable at the input state from an instance of x dominates x and is
// strictly larger on i.
inline omega_config facc(const vass& g, const omega_config& x, std::size_t node_budget = 200000) {
    auto tree = karp_miller(g, g.in, x, node_budget);
    omega_config r = x;
    for (const auto& e : tree.labels_at(g.in)) {
        if (!leq(x, e)) continue;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < e[i]) r[i] = nat_omega::omega();
    }
    return r;
}

// Backward acceleration: forward acceleration on the reversed VASS from y.
inline omega_config bacc(const vass& g, const omega_config& y, std::size_t node_budget = 200000) {
    return facc(reverse(g), y, node_budget);
}

// Minimal elements, per state, of the configurations from which the target
// state is reachable with any counter values (backward coverability of
// target(0)).
inline std::vector<std::vector<std::vector<integer>>> can_reach_basis(const vass& g, std::size_t target,
                                                                      std::size_t budget = 200000) {
    std::vector<std::vector<std::vector<integer>>> basis(g.num_states());
    basis[target].push_back(std::vector<integer>(g.dim, 0));
    std::vector<std::pair<std::size_t, std::vector<integer>>> todo{{target, basis[target][0]}};
    std::size_t count = 1;
    auto below = [](const std::vector<integer>& a, const std::vector<integer>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    while (!todo.empty()) {
        auto [q, b] = todo.back();
        todo.pop_back();
        // skip if removed in the meantime
        bool alive = false;
        for (const auto& e : basis[q])
            if (e == b) alive = true;
        if (!alive) continue;
        for (const auto& t : g.transitions) {
            if (t.tgt != q) continue;
            std::vector<integer> pre(g.dim);
            for (std::size_t i = 0; i < g.dim; ++i) pre[i] = std::max(integer(0), integer(b[i] - t.delta[i]));
            auto& bs = basis[t.src];
            bool dominated = false;
            for (const auto& e : bs)
                if (below(e, pre)) {
                    dominated = true;
                    break;
                }
            if (dominated) continue;
            std::vector<std::vector<integer>> keep;
            for (auto& e : bs)
                if (!below(pre, e)) keep.push_back(std::move(e));
            keep.push_back(pre);
            bs = std::move(keep);
            if (++count > budget) throw budget_exceeded("backward coverability exceeded its budget");
            todo.push_back({t.src, pre});
        }
    }
    return basis;
}

// Supremum of component i over configurations reachable at some state from
// an instance of x at the input state, restricted to those from which the
// input state can be reached again. nullopt means unbounded.
inline std::optional<integer> returning_max(const vass& g, const omega_config& x, std::size_t i,
                                            std::size_t node_budget = 200000) {
    auto tree = karp_miller(g, g.in, x, node_budget);
    auto basis = can_reach_basis(g, g.in, node_budget);
    integer best = 0;
    for (const auto& n : tree.nodes) {
        bool returns = false;
        for (const auto& b : basis[n.state]) {
            bool ok = true;
            for (std::size_t k = 0; k < g.dim && ok; ++k)
                if (n.config[k].is_finite() && n.config[k].value() < b[k]) ok = false;
            if (ok) {
                returns = true;
                break;
            }
        }
        if (!returns) continue;
        if (n.config[i].is_omega()) return std::nullopt;
        best = std::max(best, n.config[i].value());
    }
    return best;
}

} // namespace klm
