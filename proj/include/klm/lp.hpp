#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace klm {

// minimize cost.x  subject to  a x = b,  lower <= x <= upper.
// An empty cost vector asks for feasibility only.
struct lp_problem {
    std::vector<std::vector<rational>> a;
    std::vector<rational> b;
    std::vector<rational> cost;
    std::vector<rational> lower;                   // defaults to 0
    std::vector<std::optional<rational>> upper;    // defaults to none
    std::size_t num_vars = 0;
};

enum class lp_status { optimal, infeasible, unbounded };

struct lp_result {
    lp_status status = lp_status::infeasible;
    std::vector<rational> x;
    rational value;
};

namespace detail {

class tableau {
public:
    // rows: constraint rows followed by the objective row; last column is the rhs
    std::vector<std::vector<rational>> t;
    std::vector<std::size_t> basis;
    std::size_t cols = 0;  // structural columns usable for entering

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = t[r];
        rational inv = 1 / pr[c];
        const std::size_t w = pr.size();
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < w; ++k) {
            if (pr[k] == 0) continue;
            pr[k] *= inv;
            nz.push_back(k);
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][c] == 0) continue;
            rational f = t[i][c];
            for (std::size_t k : nz) t[i][k] -= f * pr[k];
        }
        basis[r] = c;
    }

    // Bland's rule on the objective row (last row). Returns false if unbounded.
    bool optimize(std::size_t usable) {
        const std::size_t m = basis.size();
        auto& obj = t[m];
        const std::size_t rhs = t[0].size() - 1;
        for (;;) {
            std::size_t enter = usable;
            for (std::size_t j = 0; j < usable; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == usable) return true;
            std::size_t leave = m;
            rational best;
            for (std::size_t r = 0; r < m; ++r) {
                if (t[r][enter] <= 0) continue;
                rational ratio = t[r][rhs] / t[r][enter];
                if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }
};

} // namespace detail

inline lp_result solve_lp(const lp_problem& p) {
    const std::size_t n = p.num_vars;
    const std::size_t m0 = p.a.size();
    std::vector<rational> lower = p.lower;
    lower.resize(n, 0);
    std::vector<std::optional<rational>> upper = p.upper;
    upper.resize(n);

    lp_result res;
    // shifted rows: a y = b - a l
    std::vector<std::vector<rational>> rows;
    std::vector<rational> rhs;
    for (std::size_t r = 0; r < m0; ++r) {
        rational v = p.b[r];
        for (std::size_t j = 0; j < n; ++j)
            if (p.a[r][j] != 0 && lower[j] != 0) v -= p.a[r][j] * lower[j];
        rows.push_back(p.a[r]);
        rows.back().resize(n, 0);
        rhs.push_back(v);
    }
    std::vector<std::size_t> bounded;
    for (std::size_t j = 0; j < n; ++j) {
        if (!upper[j]) continue;
        rational span = *upper[j] - lower[j];
        if (span < 0) return res;
        bounded.push_back(j);
        std::vector<rational> row(n, 0);
        row[j] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(span);
    }
    const std::size_t ns = bounded.size();
    const std::size_t big_n = n + ns;  // structural + slack
    const std::size_t m = rows.size();

    detail::tableau tab;
    tab.t.assign(m + 1, std::vector<rational>(big_n + m + 1, 0));
    tab.basis.resize(m);
    const std::size_t rc = big_n + m;
    for (std::size_t r = 0; r < m; ++r) {
        bool neg = rhs[r] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = neg ? rational(-rows[r][j]) : rows[r][j];
        if (r >= m0) tab.t[r][n + (r - m0)] = neg ? -1 : 1;
        tab.t[r][big_n + r] = 1;
        tab.t[r][rc] = neg ? rational(-rhs[r]) : rhs[r];
        tab.basis[r] = big_n + r;
    }
    // phase one: minimize the sum of artificials
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= rc; ++k)
            if (k < big_n || k == rc)
                if (tab.t[r][k] != 0) tab.t[m][k] -= tab.t[r][k];
    tab.optimize(big_n);
    if (tab.t[m][rc] != 0) return res;  // infeasible

    // drive artificials out of the basis, dropping redundant rows
    for (std::size_t r = 0; r < tab.basis.size();) {
        if (tab.basis[r] < big_n) {
            ++r;
            continue;
        }
        std::size_t c = big_n;
        for (std::size_t j = 0; j < big_n; ++j)
            if (tab.t[r][j] != 0) {
                c = j;
                break;
            }
        if (c < big_n) {
            tab.pivot(r, c);
            ++r;
        } else {
            tab.t.erase(tab.t.begin() + static_cast<long>(r));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(r));
        }
    }
    const std::size_t mm = tab.basis.size();

    auto extract = [&]() {
        std::vector<rational> y(big_n, 0);
        for (std::size_t r = 0; r < mm; ++r)
            if (tab.basis[r] < big_n) y[tab.basis[r]] = tab.t[r][rc];
        res.x.assign(n, 0);
        for (std::size_t j = 0; j < n; ++j) res.x[j] = lower[j] + y[j];
    };

    if (p.cost.empty()) {
        res.status = lp_status::optimal;
        extract();
        res.value = 0;
        return res;
    }
    // phase two objective row: reduced costs
    auto& obj = tab.t[mm];
    std::fill(obj.begin(), obj.end(), rational(0));
    for (std::size_t j = 0; j < n; ++j) obj[j] = p.cost[j];
    for (std::size_t r = 0; r < mm; ++r) {
        std::size_t bj = tab.basis[r];
        if (bj >= n || p.cost[bj] == 0) continue;
        rational c = p.cost[bj];
        for (std::size_t k = 0; k <= rc; ++k)
            if (tab.t[r][k] != 0) obj[k] -= c * tab.t[r][k];
    }
    if (!tab.optimize(big_n)) {
        res.status = lp_status::unbounded;
        return res;
    }
    res.status = lp_status::optimal;
    extract();
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (p.cost[j] != 0) res.value += p.cost[j] * res.x[j];
    return res;
}

// Best-first branch and bound over the integers: the open node with the
// smallest relaxation value is expanded next, branching on the first
// fractional variable. Returns nullopt when no integer point exists; throws
// budget_exceeded when the node allowance runs out. The feasible region must
// be bounded for termination to be guaranteed.
inline std::optional<std::vector<integer>> solve_ilp(const lp_problem& p, std::size_t node_budget) {
    struct node {
        std::vector<rational> lower;
        std::vector<std::optional<rational>> upper;
        std::vector<rational> x;
        rational value;
        std::size_t seq = 0;
    };
    auto worse = [](const node& a, const node& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.seq < b.seq;  // among equals, newest first
    };
    std::vector<node> open;
    std::size_t visited = 0, seq = 0;
    lp_problem q = p;
    auto relax = [&](node nd) {
        if (++visited > node_budget) throw budget_exceeded("integer search exceeded its node budget");
        q.lower = nd.lower;
        q.upper = nd.upper;
        auto r = solve_lp(q);
        if (r.status == lp_status::infeasible) return;
        if (r.status == lp_status::unbounded) {
            // fall back to feasibility; the caller guarantees a bounded region
            lp_problem f = q;
            f.cost.clear();
            r = solve_lp(f);
        }
        nd.x = std::move(r.x);
        nd.value = 0;
        for (std::size_t j = 0; j < p.num_vars && j < p.cost.size(); ++j) nd.value += p.cost[j] * nd.x[j];
        nd.seq = seq++;
        open.push_back(std::move(nd));
        std::push_heap(open.begin(), open.end(), worse);
    };
    {
        node root{p.lower, p.upper, {}, 0, 0};
        root.lower.resize(p.num_vars, 0);
        root.upper.resize(p.num_vars);
        relax(std::move(root));
    }
    while (!open.empty()) {
        std::pop_heap(open.begin(), open.end(), worse);
        node nd = std::move(open.back());
        open.pop_back();
        std::size_t frac = p.num_vars;
        for (std::size_t j = 0; j < p.num_vars; ++j)
            if (nd.x[j].get_den() != 1) {
                frac = j;
                break;
            }
        if (frac == p.num_vars) {
            std::vector<integer> x(p.num_vars);
            for (std::size_t j = 0; j < p.num_vars; ++j) x[j] = nd.x[j].get_num();
            return x;
        }
        node up{nd.lower, nd.upper, {}, 0, 0}, down{std::move(nd.lower), std::move(nd.upper), {}, 0, 0};
        up.lower[frac] = ceil_of(nd.x[frac]);
        down.upper[frac] = rational(floor_of(nd.x[frac]));
        relax(std::move(down));
        relax(std::move(up));
    }
    return std::nullopt;
}

} // namespace klm
