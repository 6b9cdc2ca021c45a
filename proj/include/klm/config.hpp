#pragma once

#include "numeric.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace klm {

// A natural number or omega. Omega is a distinct state, never a sentinel value.
class nat_omega {
public:
    nat_omega() = default;
    nat_omega(const integer& v) : value_(v) {
        if (v < 0) throw std::invalid_argument("nat_omega: negative value");
    }
    nat_omega(long v) : nat_omega(integer(v)) {}

    static nat_omega omega() {
        nat_omega n;
        n.omega_ = true;
        return n;
    }

    [[nodiscard]] bool is_omega() const { return omega_; }
    [[nodiscard]] bool is_finite() const { return !omega_; }
    [[nodiscard]] const integer& value() const {
        if (omega_) throw std::logic_error("nat_omega: value of omega");
        return value_;
    }

    friend bool operator==(const nat_omega& a, const nat_omega& b) {
        if (a.omega_ || b.omega_) return a.omega_ == b.omega_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const nat_omega& a, const nat_omega& b) {
        if (a.omega_ && b.omega_) return std::strong_ordering::equal;
        if (a.omega_) return std::strong_ordering::greater;
        if (b.omega_) return std::strong_ordering::less;
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    [[nodiscard]] std::string str() const { return omega_ ? "w" : value_.get_str(); }

private:
    bool omega_ = false;
    integer value_ = 0;
};

using action = std::vector<integer>;
using omega_config = std::vector<nat_omega>;

inline omega_config finite_config(const std::vector<long>& v) {
    omega_config c;
    for (long x : v) c.emplace_back(x);
    return c;
}

inline omega_config omega_everywhere(std::size_t d) {
    return omega_config(d, nat_omega::omega());
}

inline bool is_finite(const omega_config& c) {
    for (const auto& x : c)
        if (x.is_omega()) return false;
    return true;
}

inline void check_dim(std::size_t a, std::size_t b) {
    if (a != b)
        throw dimension_mismatch("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

// One step of the omega-extended semantics: omega + z = omega.
inline omega_config step(const omega_config& c, const action& a) {
    check_dim(c.size(), a.size());
    omega_config out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_omega()) {
            out[i] = nat_omega::omega();
            continue;
        }
        integer v = c[i].value() + a[i];
        if (v < 0) throw negativity_error(i);
        out[i] = nat_omega(v);
    }
    return out;
}

inline std::optional<omega_config> try_step(const omega_config& c, const action& a) {
    try {
        return step(c, a);
    } catch (const negativity_error&) {
        return std::nullopt;
    }
}

// x is an instance of y: equal wherever y is finite.
inline bool instance_of(const omega_config& x, const omega_config& y) {
    check_dim(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i].is_finite() && !(x[i] == y[i])) return false;
    return true;
}

inline bool leq(const omega_config& x, const omega_config& y) {
    check_dim(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

// Sum of the absolute values of the entries.
inline integer norm(const action& a) {
    integer m = 0;
    for (const auto& x : a) m += iabs(x);
    return m;
}

// Sum of the finite entries.
inline integer norm(const omega_config& c) {
    integer m = 0;
    for (const auto& x : c)
        if (x.is_finite()) m += x.value();
    return m;
}

inline action add(const action& a, const action& b) {
    check_dim(a.size(), b.size());
    action r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline action negate(const action& a) {
    action r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline std::string render(const omega_config& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += c[i].str();
    }
    return s + ")";
}

inline std::string render(const action& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

} // namespace klm
