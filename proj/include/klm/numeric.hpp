#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace klm {

using integer = mpz_class;
using rational = mpq_class;

inline std::string to_string(const integer& v) {
    return v.get_str();
}

// Decimal form, or only its digit count when longer than max_digits.
inline std::string short_str(const integer& v, std::size_t max_digits = 40) {
    std::string s = v.get_str();
    if (s.size() <= max_digits) return s;
    return "<" + std::to_string(s.size()) + "-digit number>";
}

inline std::string to_string(const rational& v) {
    return v.get_str();
}

inline integer ipow(const integer& base, unsigned long exp) {
    integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline integer iabs(const integer& v) {
    return v < 0 ? integer(-v) : v;
}

inline integer floor_of(const rational& q) {
    integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline integer ceil_of(const rational& q) {
    integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline integer lcm(const integer& a, const integer& b) {
    integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline integer gcd(const integer& a, const integer& b) {
    integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::size_t bit_length(const integer& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Scales a rational vector to the primitive integer vector on the same ray.
inline std::vector<integer> primitive(const std::vector<rational>& v) {
    integer den = 1;
    for (const auto& q : v) den = lcm(den, q.get_den());
    std::vector<integer> out(v.size());
    integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_num() * (den / v[i].get_den());
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

// Errors ---------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : error {
    std::size_t line;
    parse_error(std::size_t line, const std::string& msg)
        : error("line " + std::to_string(line) + ": " + msg), line(line) {}
};

struct invalid_vass : error {
    using error::error;
};

struct dimension_mismatch : error {
    using error::error;
};

struct negativity_error : error {
    std::size_t component;
    explicit negativity_error(std::size_t i)
        : error("component " + std::to_string(i) + " would become negative"), component(i) {}
};

struct malformed_path : error {
    using error::error;
};

// Raised whenever a search or evaluation runs out of its configured allowance.
// Callers must treat it as "unknown", never as a negative answer.
struct budget_exceeded : error {
    using error::error;
};

} // namespace klm
