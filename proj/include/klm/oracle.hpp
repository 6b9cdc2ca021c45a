#pragma once

#include "vass.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace klm {

struct oracle_result {
    std::optional<path> found;  // shortest path, if one was found
    bool closed = false;        // no explored configuration ever exceeded the cap
    std::size_t explored = 0;

    // true when the answer is certain: a path, or an exhaustive closed search
    [[nodiscard]] bool conclusive() const { return found.has_value() || closed; }
};

// Breadth-first search over configurations whose counters stay within cap.
// Configurations that provably cannot reach the target are dropped: states
// with no path to the output, and values on the wrong side of the target in
// a coordinate that no transition increases (or none decreases).
inline oracle_result bfs_reach(const vass& g, const omega_config& cin, const omega_config& cout, std::int64_t cap,
                               std::size_t max_nodes = 5000000) {
    if (!is_finite(cin) || !is_finite(cout)) throw std::invalid_argument("bfs_reach: configurations must be finite");
    check_dim(cin.size(), g.dim);
    check_dim(cout.size(), g.dim);
    using key = std::pair<std::size_t, std::vector<std::int64_t>>;
    auto conv = [](const omega_config& c) {
        std::vector<std::int64_t> v;
        for (const auto& x : c) v.push_back(x.value().get_si());
        return v;
    };
    std::vector<std::vector<std::int64_t>> delta;
    for (const auto& t : g.transitions) {
        std::vector<std::int64_t> d;
        for (const auto& z : t.delta) d.push_back(z.get_si());
        delta.push_back(std::move(d));
    }
    oracle_result res;
    res.closed = true;
    key start{g.in, conv(cin)}, goal{g.out, conv(cout)};
    auto coreach = graph_reachable(g, g.out, true);
    std::vector<bool> never_up(g.dim, true), never_down(g.dim, true);
    for (const auto& d : delta)
        for (std::size_t i = 0; i < g.dim; ++i) {
            if (d[i] > 0) never_up[i] = false;
            if (d[i] < 0) never_down[i] = false;
        }
    auto hopeless = [&](const key& k) {
        if (!coreach[k.first]) return true;
        for (std::size_t i = 0; i < g.dim; ++i) {
            if (never_up[i] && k.second[i] < goal.second[i]) return true;
            if (never_down[i] && k.second[i] > goal.second[i]) return true;
        }
        return false;
    };
    if (hopeless(start)) return res;
    for (auto v : start.second)
        if (v > cap) {
            res.closed = false;
            return res;
        }
    std::map<key, std::pair<std::size_t, std::size_t>> parent;  // node -> (parent index, transition)
    std::vector<key> order{start};
    parent[start] = {0, SIZE_MAX};
    for (std::size_t h = 0; h < order.size(); ++h) {
        const key cur = order[h];
        if (cur == goal) {
            path p;
            for (std::size_t n = h; parent[order[n]].second != SIZE_MAX; n = parent[order[n]].first)
                p.push_back(parent[order[n]].second);
            std::reverse(p.begin(), p.end());
            res.found = p;
            res.explored = order.size();
            return res;
        }
        for (std::size_t k = 0; k < g.transitions.size(); ++k) {
            if (g.transitions[k].src != cur.first) continue;
            key nx{g.transitions[k].tgt, cur.second};
            bool ok = true, over = false;
            for (std::size_t i = 0; i < g.dim; ++i) {
                nx.second[i] += delta[k][i];
                if (nx.second[i] < 0) ok = false;
                if (nx.second[i] > cap) over = true;
            }
            if (!ok || hopeless(nx)) continue;
            if (over) {
                res.closed = false;
                continue;
            }
            if (parent.count(nx)) continue;
            if (order.size() >= max_nodes) {
                res.closed = false;
                res.explored = order.size();
                return res;
            }
            parent[nx] = {h, k};
            order.push_back(nx);
        }
    }
    res.explored = order.size();
    return res;
}

} // namespace klm
