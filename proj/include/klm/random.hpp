#pragma once

#include "dioph.hpp"
#include "vass.hpp"

#include <random>
#include <string>
#include <vector>

namespace klm {

struct random_vass_params {
    std::size_t dim = 2;
    std::size_t min_states = 1;
    std::size_t max_states = 3;
    std::size_t min_transitions = 1;
    std::size_t max_transitions = 5;
    long min_entry = -2;
    long max_entry = 2;
};

// Small deterministic generator; does not depend on library distributions
// so a seed gives the same instance everywhere.
class rng {
public:
    explicit rng(std::uint64_t seed) : e_(seed) {}
    long between(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(e_() % span);
    }
    std::uint64_t next() { return e_(); }

private:
    std::mt19937_64 e_;
};

inline vass random_vass(rng& r, const random_vass_params& p = {}) {
    std::size_t n = static_cast<std::size_t>(r.between(long(p.min_states), long(p.max_states)));
    std::size_t m = static_cast<std::size_t>(r.between(long(p.min_transitions), long(p.max_transitions)));
    std::vector<std::string> states;
    for (std::size_t q = 0; q < n; ++q) states.push_back("s" + std::to_string(q));
    std::vector<transition_spec> ts;
    for (std::size_t k = 0; k < m; ++k) {
        action a;
        for (std::size_t i = 0; i < p.dim; ++i) a.push_back(r.between(p.min_entry, p.max_entry));
        ts.push_back({"t" + std::to_string(k), states[r.between(0, long(n) - 1)], states[r.between(0, long(n) - 1)], a});
    }
    std::string out = states[r.between(0, long(n) - 1)];
    return make_vass(p.dim, states, states[0], out, ts);
}

inline omega_config random_config(rng& r, std::size_t dim, long max_entry) {
    omega_config c;
    for (std::size_t i = 0; i < dim; ++i) c.emplace_back(r.between(0, max_entry));
    return c;
}

inline lin_system random_system(rng& r, std::size_t max_vars, std::size_t max_rows, long coef, long constant) {
    std::size_t n = static_cast<std::size_t>(r.between(1, long(max_vars)));
    std::size_t m = static_cast<std::size_t>(r.between(1, long(max_rows)));
    lin_system s(n);
    for (std::size_t row = 0; row < m; ++row) {
        std::vector<std::pair<std::size_t, integer>> terms;
        for (std::size_t j = 0; j < n; ++j) terms.push_back({j, r.between(-coef, coef)});
        s.add_row(terms, r.between(-constant, constant));
    }
    return s;
}

} // namespace klm
