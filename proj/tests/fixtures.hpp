#pragma once

#include "klm/klm.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace klm;

inline action act(std::initializer_list<long> v) {
    action a;
    for (long x : v) a.emplace_back(x);
    return a;
}

// The four-state running example.
inline vass g_ex() {
    return make_vass(3, {"q_in", "p", "q_out", "q"}, "q_in", "q_out",
                     {{"a1", "q_in", "q_in", act({0, 2, 0})},
                      {"a2", "q_in", "p", act({2, 2, -1})},
                      {"a3", "q_in", "q_out", act({1, 0, 0})},
                      {"a4", "q_in", "q_out", act({1, 0, -2})},
                      {"a5", "p", "q_in", act({1, 0, -2})},
                      {"a6", "q_out", "q_out", act({1, -1, 0})},
                      {"a7", "q_out", "q", act({1, -1, -2})},
                      {"a8", "q", "q", act({-2, -1, 0})},
                      {"a9", "q", "q_out", act({0, 0, 0})}});
}

inline action a(int k) {
    static const std::vector<action> acts = {act({0, 2, 0}),  act({2, 2, -1}), act({1, 0, 0}),
                                             act({1, 0, -2}), act({1, 0, -2}), act({1, -1, 0}),
                                             act({1, -1, -2}), act({-2, -1, 0}), act({0, 0, 0})};
    return acts.at(static_cast<std::size_t>(k - 1));
}

inline omega_config cfg(std::initializer_list<long> v) {
    omega_config c;
    for (long x : v) c.push_back(x < 0 ? nat_omega::omega() : nat_omega(x));
    return c;
}

constexpr long w = -1;  // omega in cfg literals

inline klm_sequence xi_ex() {
    return single_triple(cfg({0, 0, 2}), g_ex(), cfg({1, 1, 0}));
}

inline void repeat(std::vector<action>& out, int k, long times) {
    for (long n = 0; n < times; ++n) out.push_back(a(k));
}

// Words of the two families of the example language.
inline std::vector<action> family_word(int family, long n) {
    std::vector<action> out;
    repeat(out, 1, 2 + 3 * n);
    repeat(out, 3, 1);
    repeat(out, 6, family == 0 ? 1 + 4 * n : 4 * n);
    repeat(out, 7, 1);
    repeat(out, 8, 1 + 2 * n);
    repeat(out, 9, 1);
    if (family == 1) repeat(out, 6, 1);
    return out;
}

inline std::vector<std::string> transition_names(const vass& g) {
    std::vector<std::string> out;
    for (const auto& t : g.transitions) out.push_back(t.name);
    return out;
}

inline std::vector<std::vector<omega_config>> intermediate_configs(const klm_sequence& s) {
    std::vector<std::vector<omega_config>> out;
    for (std::size_t j = 0; j + 1 < s.triples.size(); ++j) out.push_back({s.triples[j].y, s.triples[j + 1].x});
    return out;
}

} // namespace fixtures
