#pragma once

#include "numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klm {

// Ordinals below omega^omega in Cantor normal form, plus omega^omega itself.
class ordinal {
public:
    struct term {
        std::size_t exponent;
        integer coefficient;
        friend bool operator==(const term&, const term&) = default;
    };

    ordinal() = default;

    static ordinal omega_omega() {
        ordinal o;
        o.top_ = true;
        return o;
    }

    static ordinal natural(const integer& n) {
        ordinal o;
        if (n > 0) o.terms_.push_back({0, n});
        return o;
    }

    // omega^e * c
    static ordinal power(std::size_t e, const integer& c = 1) {
        ordinal o;
        if (c > 0) o.terms_.push_back({e, c});
        return o;
    }

    // sum over i of omega^i * coeffs[i]
    static ordinal from_coefficients(const std::vector<integer>& coeffs) {
        ordinal o;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] > 0) o.terms_.push_back({i, coeffs[i]});
        return o;
    }

    [[nodiscard]] bool is_top() const { return top_; }
    [[nodiscard]] bool is_zero() const { return !top_ && terms_.empty(); }
    [[nodiscard]] bool is_successor() const { return !top_ && !terms_.empty() && terms_.back().exponent == 0; }
    [[nodiscard]] bool is_limit() const { return top_ || (!terms_.empty() && terms_.back().exponent > 0); }
    [[nodiscard]] const std::vector<term>& terms() const { return terms_; }

    [[nodiscard]] ordinal predecessor() const {
        if (!is_successor()) throw std::logic_error("predecessor of a non-successor ordinal");
        ordinal o = *this;
        if (--o.terms_.back().coefficient == 0) o.terms_.pop_back();
        return o;
    }

    // max(top exponent, max coefficient)
    [[nodiscard]] integer size() const {
        if (top_) throw std::logic_error("size of omega^omega is not defined");
        if (terms_.empty()) return 0;
        integer n = integer(terms_.front().exponent);
        for (const auto& t : terms_) n = std::max(n, t.coefficient);
        return n;
    }

    // lambda(x) for a limit lambda
    [[nodiscard]] ordinal fundamental(const integer& x) const {
        if (!is_limit()) throw std::logic_error("fundamental sequence of a non-limit ordinal");
        if (top_) return power(x.get_ui() + 1);
        ordinal o = *this;
        term last = o.terms_.back();
        o.terms_.pop_back();
        if (last.coefficient > 1) o.terms_.push_back({last.exponent, last.coefficient - 1});
        o.add_term(last.exponent - 1, x + 1);
        return o;
    }

    friend std::strong_ordering operator<=>(const ordinal& a, const ordinal& b) {
        if (a.top_ || b.top_) return a.top_ == b.top_ ? std::strong_ordering::equal
                                                      : (a.top_ ? std::strong_ordering::greater : std::strong_ordering::less);
        for (std::size_t k = 0;; ++k) {
            bool ea = k >= a.terms_.size(), eb = k >= b.terms_.size();
            if (ea || eb) {
                if (ea && eb) return std::strong_ordering::equal;
                return ea ? std::strong_ordering::less : std::strong_ordering::greater;
            }
            const auto& s = a.terms_[k];
            const auto& t = b.terms_[k];
            if (s.exponent != t.exponent)
                return s.exponent < t.exponent ? std::strong_ordering::less : std::strong_ordering::greater;
            if (s.coefficient != t.coefficient)
                return s.coefficient < t.coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    friend bool operator==(const ordinal& a, const ordinal& b) { return (a <=> b) == 0; }

    [[nodiscard]] std::string str() const {
        if (top_) return "w^w";
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            std::string base = t.exponent == 0 ? "" : (t.exponent == 1 ? "w" : "w^" + std::to_string(t.exponent));
            if (base.empty())
                s += t.coefficient.get_str();
            else
                s += base + (t.coefficient == 1 ? "" : "*" + t.coefficient.get_str());
        }
        return s;
    }

private:
    bool top_ = false;
    std::vector<term> terms_;  // strictly decreasing exponents

    void add_term(std::size_t e, const integer& c) {
        if (c == 0) return;
        if (!terms_.empty() && terms_.back().exponent == e)
            terms_.back().coefficient += c;
        else
            terms_.push_back({e, c});
    }
};

using nat_fn = std::function<integer(const integer&)>;

// Raised to report an evaluation that ran out of budget; carries the
// unevaluated expression.
struct evaluation_exceeded : budget_exceeded {
    std::string expression;
    explicit evaluation_exceeded(const std::string& expr)
        : budget_exceeded("evaluation of " + expr + " exceeds the budget"), expression(expr) {}
};

// Hardy function h^alpha(x).
inline integer hardy(const nat_fn& h, ordinal alpha, integer x, std::size_t budget = 1000000) {
    const std::string expr = "h^(" + alpha.str() + ")(" + x.get_str() + ")";
    for (std::size_t steps = 0;; ++steps) {
        if (steps > budget) throw evaluation_exceeded(expr);
        if (alpha.is_zero()) return x;
        if (alpha.is_successor()) {
            x = h(x);
            alpha = alpha.predecessor();
        } else {
            alpha = alpha.fundamental(x);
        }
    }
}

// Cichon function h_alpha(x).
inline integer cichon(const nat_fn& h, ordinal alpha, integer x, std::size_t budget = 1000000) {
    const std::string expr = "h_(" + alpha.str() + ")(" + x.get_str() + ")";
    integer count = 0;
    for (std::size_t steps = 0;; ++steps) {
        if (steps > budget) throw evaluation_exceeded(expr);
        if (alpha.is_zero()) return count;
        if (alpha.is_successor()) {
            x = h(x);
            count += 1;
            alpha = alpha.predecessor();
        } else {
            alpha = alpha.fundamental(x);
        }
    }
}

// Functions used by the bounds; each refuses to build numbers above max_bits.
inline nat_fn successor_fn() {
    return [](const integer& x) { return integer(x + 1); };
}

inline integer checked_pow(const integer& base, const integer& exp, std::size_t max_bits) {
    if (base <= 1) return exp == 0 ? integer(1) : base;
    if (!exp.fits_ulong_p() || bit_length(base) * exp.get_ui() > max_bits)
        throw budget_exceeded("number too large: " + base.get_str() + "^" + exp.get_str());
    return ipow(base, exp.get_ui());
}

// g(x) = x^x
inline nat_fn g_fn(std::size_t max_bits = 1u << 24) {
    return [max_bits](const integer& x) { return checked_pow(x, x, max_bits); };
}

// h(x) = x^(x^(1+x))
inline nat_fn h_fn(std::size_t max_bits = 1u << 24) {
    return [max_bits](const integer& x) { return checked_pow(x, checked_pow(x, x + 1, max_bits), max_bits); };
}

// l(x) = x^(3x)
inline nat_fn l_fn(std::size_t max_bits = 1u << 24) {
    return [max_bits](const integer& x) { return checked_pow(x, 3 * x, max_bits); };
}

// A number or, when it could not be evaluated, its expression.
struct bound_value {
    std::optional<integer> value;
    std::string expression;
    [[nodiscard]] std::string str() const { return value ? value->get_str() : "> budget: " + expression; }
};

// Longest (n0, h)-controlled descending sequence below omega^(d+1): h_{omega^(d+1)}(n0).
inline bound_value descent_bound(std::size_t d, const integer& n0, const nat_fn& h, std::size_t budget = 1000000) {
    bound_value b;
    b.expression = "h_(w^" + std::to_string(d + 1) + ")(" + short_str(n0) + ")";
    try {
        b.value = cichon(h, ordinal::power(d + 1), n0, budget);
    } catch (const budget_exceeded&) {
    }
    return b;
}

// l(h^{omega^(d+1)}(g(n))) for the instance size n.
inline bound_value witness_length_bound(std::size_t d, const integer& n, std::size_t budget = 1000000) {
    bound_value b;
    b.expression = "l(h^(w^" + std::to_string(d + 1) + ")(g(" + short_str(n) + ")))";
    try {
        integer gn = g_fn()(n);
        b.value = l_fn()(hardy(h_fn(), ordinal::power(d + 1), gn, budget));
    } catch (const budget_exceeded&) {
    }
    return b;
}

// Strict descent and size control: N(alpha_j) <= h^j(n0) for every j.
// The iterates of h are only computed while they are still below the
// largest size that remains to be checked.
inline bool check_controlled(const std::vector<ordinal>& seq, const integer& n0, const nat_fn& h) {
    for (std::size_t j = 1; j < seq.size(); ++j)
        if (!(seq[j] < seq[j - 1])) return false;
    std::vector<integer> sizes;
    for (const auto& a : seq) sizes.push_back(a.size());
    integer cur = n0;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        integer rest = 0;
        for (std::size_t k = j; k < sizes.size(); ++k) rest = std::max(rest, sizes[k]);
        if (cur >= rest) return true;  // h is inflationary, later iterates only grow
        if (sizes[j] > cur) return false;
        cur = h(cur);
    }
    return true;
}

} // namespace klm
