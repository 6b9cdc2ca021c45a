#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace klm;
using fixtures::act;
using fixtures::cfg;
using fixtures::w;

namespace {

vass loop6() {
    return make_vass(3, {"q_out"}, "q_out", "q_out", {{"a6", "q_out", "q_out", act({1, -1, 0})}});
}

bool covers(const km_tree& t, std::size_t q, const omega_config& c) {
    for (const auto& e : t.labels_at(q))
        if (leq(c, e)) return true;
    return false;
}

}  // namespace

TEST(Coverability, Accelerate) {
    EXPECT_EQ(accelerate(cfg({1, 1, 0}), cfg({2, 2, 0})), cfg({w, w, 0}));
    EXPECT_EQ(accelerate(cfg({1, 1, 0}), cfg({1, 1, 0})), cfg({1, 1, 0}));
    EXPECT_EQ(accelerate(cfg({0, w, 2}), cfg({3, w, 2})), cfg({w, w, 2}));
    EXPECT_THROW(accelerate(cfg({2, 0}), cfg({1, 0})), std::invalid_argument);
}

TEST(Coverability, KarpMillerPumpsLoop) {
    auto g = loop6();
    auto t = karp_miller(g, g.in, cfg({1, w, 2}));
    EXPECT_TRUE(covers(t, g.in, cfg({w, w, 2})));
    auto e = make_vass(2, {"s"}, "s", "s", {});
    auto te = karp_miller(e, e.in, cfg({3, 1}));
    ASSERT_EQ(te.nodes.size(), 1u);
    EXPECT_EQ(te.nodes[0].config, cfg({3, 1}));
}

TEST(Coverability, KarpMillerOnExample) {
    auto g = fixtures::g_ex();
    auto t = karp_miller(g, g.in, cfg({0, 0, 2}));
    EXPECT_TRUE(covers(t, g.in, cfg({0, w, 2})));
    EXPECT_FALSE(covers(t, g.in, cfg({0, 0, 3})));
}

TEST(Coverability, ForwardAndBackwardAcceleration) {
    auto g = loop6();
    EXPECT_EQ(bacc(g, cfg({1, 1, 0})), cfg({1, 1, 0}));
    EXPECT_EQ(facc(g, cfg({1, w, 2})), cfg({w, w, 2}));
    auto e = make_vass(2, {"s"}, "s", "s", {});
    EXPECT_EQ(facc(e, cfg({4, 0})), cfg({4, 0}));
}

TEST(Coverability, FixedComponentsStayAndAccelerationIsIdempotent) {
    rng r(7);
    random_vass_params p;
    p.dim = 2;
    for (int n = 0; n < 40; ++n) {
        auto g = random_vass(r, p);
        auto x = random_config(r, 2, 3);
        auto f = facc(g, x);
        EXPECT_TRUE(instance_of(x, f));
        EXPECT_EQ(facc(g, f), f);
        auto fixed = fixed_components(g);
        for (std::size_t i = 0; i < 2; ++i)
            if (fixed[i]) EXPECT_EQ(f[i], x[i]);
    }
}

TEST(Coverability, BudgetIsReported) {
    auto g = make_vass(2, {"s", "t"}, "s", "s",
                       {{"u", "s", "t", act({1, 0})}, {"v", "t", "s", act({-1, 1})}, {"x", "t", "t", act({0, -1})}});
    EXPECT_THROW(karp_miller(g, g.in, cfg({5, 5}), 2), budget_exceeded);
}
