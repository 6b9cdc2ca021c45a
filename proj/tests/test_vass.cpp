#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace klm;
using fixtures::act;
using fixtures::cfg;

namespace {

std::vector<std::string> names_of(const vass& g, const std::vector<std::size_t>& states) {
    std::vector<std::string> out;
    for (auto q : states) out.push_back(g.states[q]);
    std::sort(out.begin(), out.end());
    return out;
}

path path_by_names(const vass& g, std::initializer_list<const char*> names) {
    path p;
    for (const char* n : names)
        for (std::size_t k = 0; k < g.transitions.size(); ++k)
            if (g.transitions[k].name == n) p.push_back(k);
    return p;
}

}  // namespace

TEST(Vass, SizeOfRunningExample) {
    EXPECT_EQ(size(fixtures::g_ex()), 36);
    EXPECT_EQ(size(make_vass(2, {"s"}, "s", "s", {})), 1);
    auto loop = make_vass(3, {"q"}, "q", "q", {{"a8", "q", "q", act({-2, -1, 0})}});
    EXPECT_EQ(size(loop), 5);
}

TEST(Vass, StronglyConnectedComponents) {
    auto g = fixtures::g_ex();
    auto info = scc_decompose(g);
    ASSERT_EQ(info.components.size(), 2u);
    std::vector<std::vector<std::string>> got;
    for (const auto& c : info.components) got.push_back(names_of(g, c));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got[0], (std::vector<std::string>{"p", "q_in"}));
    EXPECT_EQ(got[1], (std::vector<std::string>{"q", "q_out"}));

    auto line = make_vass(1, {"a", "b", "c"}, "a", "c", {{"t", "a", "b", act({0})}, {"u", "b", "c", act({0})}});
    EXPECT_EQ(scc_decompose(line).components.size(), 3u);
    EXPECT_TRUE(is_strongly_connected(make_vass(1, {"a"}, "a", "a", {})));
}

TEST(Vass, RunOfExampleWord) {
    auto g = fixtures::g_ex();
    std::vector<action> word;
    for (int k : {1, 1, 3, 6, 7, 8, 9}) word.push_back(fixtures::a(k));
    state_config from{g.state_index("q_in"), cfg({0, 0, 2})};
    state_config to{g.state_index("q_out"), cfg({1, 1, 0})};
    EXPECT_TRUE(reaches(g, from, word, to));
    auto r = run(g, from, {});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].config, from.config);
    EXPECT_TRUE(run(g, from, {fixtures::a(8)}).empty());
}

TEST(Vass, ParikhAndDisplacement) {
    auto g = fixtures::g_ex();
    auto p = path_by_names(g, {"a1", "a1", "a3", "a6", "a7", "a8", "a9"});
    std::vector<integer> expect = {2, 0, 1, 0, 0, 1, 1, 1, 1};
    EXPECT_EQ(parikh(g, p), expect);
    EXPECT_EQ(displacement(g, p), act({1, 1, -2}));
    EXPECT_EQ(displacement(g, path{}), act({0, 0, 0}));
    EXPECT_EQ(displacement(g, path_by_names(g, {"a8"})), act({-2, -1, 0}));
    EXPECT_THROW(parikh(g, path_by_names(g, {"a1", "a8"})), malformed_path);
}

TEST(Vass, FixedComponents) {
    auto loop = make_vass(3, {"q"}, "q", "q", {{"a8", "q", "q", act({-2, -1, 0})}});
    auto f = fixed_components(loop);
    EXPECT_FALSE(f[0]);
    EXPECT_FALSE(f[1]);
    EXPECT_TRUE(f[2]);

    auto empty = make_vass(2, {"q"}, "q", "q", {});
    for (const auto& c : fixed_components(empty)) EXPECT_TRUE(c);

    auto line = make_vass(1, {"a", "b"}, "a", "b", {{"t", "a", "b", act({3})}});
    auto g = fixed_components(line);
    ASSERT_TRUE(g[0]);
    EXPECT_EQ((*g[0])[line.state_index("b")] - (*g[0])[line.state_index("a")], 3);
}

TEST(Vass, ReverseIsInvolution) {
    auto g = fixtures::g_ex();
    EXPECT_EQ(reverse(reverse(g)), g);
    auto r = reverse(g);
    EXPECT_EQ(r.in, g.out);
    EXPECT_EQ(r.transitions[0].delta, act({0, -2, 0}));
}

TEST(Vass, InvalidDefinitions) {
    EXPECT_THROW(make_vass(1, {}, "a", "a", {}), invalid_vass);
    EXPECT_THROW(make_vass(1, {"a"}, "a", "b", {}), invalid_vass);
    EXPECT_THROW(make_vass(1, {"a"}, "a", "a", {{"t", "a", "z", act({1})}}), invalid_vass);
    EXPECT_THROW(make_vass(1, {"a"}, "a", "a", {{"t", "a", "a", act({1, 2})}}), std::exception);
    EXPECT_THROW(make_vass(1, {"a", "a"}, "a", "a", {}), invalid_vass);
}

TEST(Vass, RunIsMonotone) {
    auto g = fixtures::g_ex();
    std::vector<action> word = {fixtures::a(1), fixtures::a(3), fixtures::a(6)};
    state_config low{g.in, cfg({0, 0, 2})}, high{g.in, cfg({2, 1, 3})};
    auto a = run(g, low, word), b = run(g, high, word);
    ASSERT_EQ(a.size(), 1u);
    ASSERT_EQ(b.size(), 1u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(b[0].config[i].value() - a[0].config[i].value(),
                  high.config[i].value() - low.config[i].value());
}
