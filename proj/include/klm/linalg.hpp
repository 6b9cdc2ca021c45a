#pragma once

#include "numeric.hpp"

#include <optional>
#include <vector>

namespace klm {

using rat_matrix = std::vector<std::vector<rational>>;

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(rat_matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            rational f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(rat_matrix m, std::size_t cols) {
    return rref(m, cols).size();
}

// Rank of a family of integer vectors of length `len`.
inline std::size_t span_dimension(const std::vector<std::vector<integer>>& vs, std::size_t len) {
    rat_matrix m;
    for (const auto& v : vs) {
        std::vector<rational> row(len);
        for (std::size_t i = 0; i < len; ++i) row[i] = v[i];
        m.push_back(std::move(row));
    }
    return rank(std::move(m), len);
}

// Basis of the rational kernel {x : m x = 0}, each vector primitive integer.
inline std::vector<std::vector<integer>> kernel_basis(rat_matrix m, std::size_t cols) {
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<integer>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(primitive(v));
    }
    return basis;
}

inline rat_matrix to_rational(const std::vector<std::vector<integer>>& a) {
    rat_matrix m;
    for (const auto& row : a) {
        std::vector<rational> r;
        for (const auto& x : row) r.emplace_back(x);
        m.push_back(std::move(r));
    }
    return m;
}

// Whether A x = c has a solution over the integers (signs unrestricted).
// Column operations bring A to echelon form; the rows are then solved in order.
inline bool int_solvable(std::vector<std::vector<integer>> a, const std::vector<integer>& c, std::size_t cols) {
    const std::size_t m = a.size();
    std::vector<std::optional<std::size_t>> pivot_of_row(m);
    std::size_t pc = 0;
    for (std::size_t r = 0; r < m && pc < cols; ++r) {
        for (std::size_t j = pc + 1; j < cols; ++j) {
            while (a[r][j] != 0) {
                integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][pc].get_mpz_t(), a[r][j].get_mpz_t());
                for (std::size_t i = 0; i < m; ++i) a[i][pc] -= q * a[i][j];
                for (std::size_t i = 0; i < m; ++i) std::swap(a[i][pc], a[i][j]);
            }
        }
        if (a[r][pc] != 0) pivot_of_row[r] = pc++;
    }
    std::vector<integer> y(cols, 0);
    for (std::size_t r = 0; r < m; ++r) {
        integer need = c[r];
        for (std::size_t k = 0; k < pc; ++k)
            if (a[r][k] != 0 && (!pivot_of_row[r] || k != *pivot_of_row[r])) need -= a[r][k] * y[k];
        if (pivot_of_row[r]) {
            std::size_t k = *pivot_of_row[r];
            if (!mpz_divisible_p(need.get_mpz_t(), a[r][k].get_mpz_t())) return false;
            y[k] = need / a[r][k];
        } else if (need != 0) {
            return false;
        }
    }
    return true;
}

} // namespace klm
