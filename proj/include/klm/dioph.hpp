#pragma once

#include "linalg.hpp"
#include "lp.hpp"
#include "numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klm {

// A x = c over the naturals.
struct lin_system {
    std::size_t num_vars = 0;
    std::vector<std::vector<integer>> a;
    std::vector<integer> c;
    std::vector<std::string> labels;

    explicit lin_system(std::size_t n = 0) : num_vars(n) {}

    void add_row(const std::vector<std::pair<std::size_t, integer>>& terms, const integer& rhs) {
        std::vector<integer> row(num_vars, 0);
        for (const auto& [j, v] : terms) row.at(j) += v;
        a.push_back(std::move(row));
        c.push_back(rhs);
    }

    [[nodiscard]] std::size_t num_rows() const { return a.size(); }
};

struct dioph_options {
    std::size_t node_budget = 20000;  // branch-and-bound nodes per query
};

struct unsat_input : error {
    using error::error;
};

inline lin_system homogeneous(const lin_system& s) {
    lin_system h = s;
    for (auto& v : h.c) v = 0;
    return h;
}

inline bool satisfies(const lin_system& s, const std::vector<integer>& x) {
    if (x.size() != s.num_vars) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (std::size_t r = 0; r < s.num_rows(); ++r) {
        integer sum = 0;
        for (std::size_t j = 0; j < s.num_vars; ++j)
            if (s.a[r][j] != 0) sum += s.a[r][j] * x[j];
        if (sum != s.c[r]) return false;
    }
    return true;
}

// 2 + max_i sum_j |a_ij|
inline integer pottier_base(const lin_system& s) {
    integer best = 0;
    for (const auto& row : s.a) {
        integer sum = 0;
        for (const auto& v : row) sum += iabs(v);
        best = std::max(best, sum);
    }
    return best + 2;
}

// Bound on the norm of minimal homogeneous solutions.
inline integer pottier_homogeneous_bound(const lin_system& s) {
    return ipow(pottier_base(s), s.num_rows());
}

// Bound on the norm of minimal particular solutions.
inline integer pottier_particular_bound(const lin_system& s) {
    integer cn = 0;
    for (const auto& v : s.c) cn += iabs(v);
    return cn * ipow(pottier_base(s), s.num_rows());
}

// Variables whose value is the same in every rational solution; nullopt
// when there is no rational solution at all.
inline std::optional<std::vector<std::optional<rational>>> determined_values(const lin_system& s) {
    const std::size_t n = s.num_vars;
    rat_matrix m;
    for (std::size_t r = 0; r < s.num_rows(); ++r) {
        std::vector<rational> row;
        for (const auto& v : s.a[r]) row.emplace_back(v);
        row.emplace_back(s.c[r]);
        m.push_back(std::move(row));
    }
    auto pivots = rref(m, n + 1);
    std::vector<std::optional<rational>> out(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == n) return std::nullopt;
        bool alone = true;
        for (std::size_t k = pivots[r] + 1; k < n && alone; ++k)
            if (m[r][k] != 0) alone = false;
        if (alone) out[pivots[r]] = m[r][n];
    }
    return out;
}

namespace detail {

inline lp_problem to_lp(const lin_system& s) {
    lp_problem p;
    p.num_vars = s.num_vars;
    for (std::size_t r = 0; r < s.num_rows(); ++r) {
        std::vector<rational> row(s.num_vars);
        for (std::size_t j = 0; j < s.num_vars; ++j) row[j] = s.a[r][j];
        p.a.push_back(std::move(row));
        p.b.emplace_back(s.c[r]);
    }
    return p;
}

// Some solution with lower <= x <= upper, preferring small ones. Each bound
// counts as an extra row x_j -/+ slack = bound when sizing the ceiling, so
// the ceiling on the sum of the entries keeps the search complete.
inline std::optional<std::vector<integer>> nat_solve(const lin_system& s, const std::vector<integer>& lower,
                                                     const std::vector<std::optional<integer>>& upper,
                                                     const dioph_options& opt) {
    const std::size_t n = s.num_vars;
    integer cn = 0, rows = s.num_rows();
    for (const auto& v : s.c) cn += iabs(v);
    integer base = pottier_base(s);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < lower.size() && lower[j] > 0) {
            cn += lower[j];
            rows += 1;
            base = std::max(base, integer(4));
        }
        if (j < upper.size() && upper[j]) {
            if (*upper[j] < 0) return std::nullopt;
            cn += *upper[j];
            rows += 1;
            base = std::max(base, integer(4));
        }
    }
    integer ceiling = cn * ipow(base, rows.get_ui());

    {
        std::vector<std::vector<integer>> a = s.a;
        std::vector<integer> c = s.c;
        for (std::size_t j = 0; j < n; ++j)
            if (j < lower.size() && j < upper.size() && upper[j] && *upper[j] == lower[j]) {
                for (std::size_t r = 0; r < a.size(); ++r) {
                    c[r] -= a[r][j] * lower[j];
                    a[r][j] = 0;
                }
            }
        if (!int_solvable(std::move(a), c, n)) return std::nullopt;
    }

    lp_problem p = to_lp(s);
    p.num_vars = n + 1;
    for (auto& row : p.a) row.emplace_back(0);
    std::vector<rational> total(n + 1, 1);
    p.a.push_back(total);
    p.b.emplace_back(ceiling);
    p.cost.assign(n + 1, 1);
    p.cost[n] = 0;
    p.lower.assign(n + 1, 0);
    p.upper.assign(n + 1, std::nullopt);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < lower.size()) p.lower[j] = lower[j];
        if (j < upper.size() && upper[j]) p.upper[j] = rational(*upper[j]);
    }
    auto r = solve_ilp(p, opt.node_budget);
    if (!r) return std::nullopt;
    r->pop_back();
    return r;
}

} // namespace detail

inline std::optional<std::vector<integer>> nat_satisfiable(const lin_system& s, const dioph_options& opt = {}) {
    return detail::nat_solve(s, {}, {}, opt);
}

// Satisfiable with some variables pinned to given values.
inline std::optional<std::vector<integer>> nat_satisfiable_pinned(const lin_system& s,
                                                                  const std::vector<std::pair<std::size_t, integer>>& pins,
                                                                  const dioph_options& opt = {}) {
    std::vector<integer> lower(s.num_vars, 0);
    std::vector<std::optional<integer>> upper(s.num_vars);
    for (const auto& [j, v] : pins) {
        lower[j] = v;
        upper[j] = v;
    }
    return detail::nat_solve(s, lower, upper, opt);
}

struct support_result {
    std::vector<bool> positive;
    // for each positive variable, a homogeneous solution that is positive on it
    std::vector<std::vector<integer>> certificate;
};

// Variables that some solution of the homogeneous system A x = 0 makes positive.
// The support is a cone, so one LP suffices: maximize sum t_j with
// 0 <= t_j <= 1 and t_j <= x_j. At the optimum t is the indicator of the
// support and x is positive on all of it.
inline support_result positivity_support(const lin_system& s) {
    const std::size_t n = s.num_vars;
    support_result res;
    res.positive.assign(n, false);
    res.certificate.assign(n, {});
    if (n == 0) return res;
    lp_problem p;
    p.num_vars = 3 * n;  // x, t, slack
    for (const auto& row : s.a) {
        std::vector<rational> r(3 * n, 0);
        for (std::size_t j = 0; j < n; ++j) r[j] = row[j];
        p.a.push_back(std::move(r));
        p.b.emplace_back(0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<rational> r(3 * n, 0);
        r[n + j] = 1;
        r[j] = -1;
        r[2 * n + j] = 1;
        p.a.push_back(std::move(r));
        p.b.emplace_back(0);
    }
    p.cost.assign(3 * n, 0);
    p.lower.assign(3 * n, 0);
    p.upper.assign(3 * n, std::nullopt);
    for (std::size_t j = 0; j < n; ++j) {
        p.cost[n + j] = -1;
        p.upper[n + j] = rational(1);
    }
    auto r = solve_lp(p);
    std::vector<rational> x(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
        if (r.x[n + j] > 0) any = true;
    if (!any) return res;
    auto v = primitive(x);
    for (std::size_t j = 0; j < n; ++j)
        if (r.x[n + j] > 0) {
            res.positive[j] = true;
            res.certificate[j] = v;
        }
    return res;
}

// Maximum of x_j over all solutions; nullopt when unbounded.
inline std::optional<integer> coordinate_max(const lin_system& s, std::size_t j, const dioph_options& opt = {}) {
    auto some = nat_satisfiable(s, opt);
    if (!some) throw unsat_input("coordinate_max on an unsatisfiable system");
    lp_problem p = detail::to_lp(s);
    p.cost.assign(s.num_vars, 0);
    p.cost[j] = -1;
    auto r = solve_lp(p);
    if (r.status == lp_status::unbounded) return std::nullopt;
    integer lo = (*some)[j];
    integer hi = floor_of(-r.value);
    // invariant: lo is attained, nothing above hi is
    while (lo < hi) {
        integer mid = (lo + hi + 1) / 2;
        std::vector<integer> lower(s.num_vars, 0);
        lower[j] = mid;
        auto x = detail::nat_solve(s, lower, {}, opt);
        if (x)
            lo = (*x)[j];
        else
            hi = mid - 1;
    }
    return lo;
}

struct pottier_decomposition {
    std::vector<integer> particular;
    std::vector<std::vector<integer>> homogeneous_parts;
};

namespace detail {

// A nonzero homogeneous solution z <= bound with sum(z) <= max_sum, if any.
inline std::optional<std::vector<integer>> homogeneous_below(const lin_system& h, const std::vector<integer>& bound,
                                                             const integer& max_sum, const dioph_options& opt) {
    const std::size_t n = h.num_vars;
    lin_system aug(n + 2);
    for (std::size_t r = 0; r < h.num_rows(); ++r) {
        std::vector<std::pair<std::size_t, integer>> terms;
        for (std::size_t j = 0; j < n; ++j)
            if (h.a[r][j] != 0) terms.push_back({j, h.a[r][j]});
        aug.add_row(terms, 0);
    }
    // sum(z) - s1 = 1 and sum(z) + s2 = max_sum
    std::vector<std::pair<std::size_t, integer>> ge, le;
    for (std::size_t j = 0; j < n; ++j) {
        ge.push_back({j, 1});
        le.push_back({j, 1});
    }
    ge.push_back({n, -1});
    le.push_back({n + 1, 1});
    aug.add_row(ge, 1);
    aug.add_row(le, max_sum);
    std::vector<std::optional<integer>> upper(n + 2);
    for (std::size_t j = 0; j < n; ++j) upper[j] = bound[j];
    auto z = nat_solve(aug, {}, upper, opt);
    if (!z) return std::nullopt;
    z->resize(n);
    return z;
}

} // namespace detail

// x = particular + sum of minimal homogeneous solutions.
inline pottier_decomposition pottier_decompose(const lin_system& s, const std::vector<integer>& x,
                                               const dioph_options& opt = {}) {
    if (!satisfies(s, x)) throw std::invalid_argument("pottier_decompose: x is not a solution");
    lin_system h = homogeneous(s);
    pottier_decomposition d;
    std::vector<integer> rest = x;
    for (;;) {
        integer total = 0;
        for (const auto& v : rest) total += v;
        auto z = detail::homogeneous_below(h, rest, total, opt);
        if (!z) break;
        // shrink to a pointwise-minimal one
        for (;;) {
            integer zs = 0;
            for (const auto& v : *z) zs += v;
            auto smaller = detail::homogeneous_below(h, *z, zs - 1, opt);
            if (!smaller) break;
            z = std::move(smaller);
        }
        for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= (*z)[j];
        d.homogeneous_parts.push_back(std::move(*z));
    }
    d.particular = std::move(rest);
    return d;
}

} // namespace klm
