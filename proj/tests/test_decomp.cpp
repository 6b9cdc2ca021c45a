#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace klm;
using fixtures::act;
using fixtures::cfg;
using fixtures::w;

namespace {

// d=1: q_in -(-1)-> q -(+1)-> q_in, q_in <-(0)-> q_out
vass dip() {
    return make_vass(1, {"q_in", "q", "q_out"}, "q_in", "q_out",
                     {{"t1", "q_in", "q", act({-1})},
                      {"t2", "q", "q_in", act({1})},
                      {"t3", "q_in", "q_out", act({0})},
                      {"t4", "q_out", "q_in", act({0})}});
}

bool has_pair(const std::vector<std::vector<omega_config>>& pairs, const omega_config& a, const omega_config& b) {
    for (const auto& p : pairs)
        if (p.size() == 2 && p[0] == a && p[1] == b) return true;
    return false;
}

}  // namespace

TEST(Decomp, SccSplitOfExample) {
    auto parts = scc_split(fixtures::xi_ex());
    ASSERT_EQ(parts.size(), 2u);
    std::set<action> conns;
    for (const auto& s : parts) {
        ASSERT_EQ(s.triples.size(), 2u);
        conns.insert(s.connectors[0]);
        EXPECT_EQ(s.triples[0].x, cfg({0, 0, 2}));
        EXPECT_EQ(s.triples[1].y, cfg({1, 1, 0}));
        EXPECT_EQ(s.triples[0].y, cfg({w, w, w}));
        for (const auto& t : s.triples) EXPECT_TRUE(is_strongly_connected(t.g));
        EXPECT_LE(compare_rank(rank(s), rank(fixtures::xi_ex())), 0);
        EXPECT_LE(size(s), size(fixtures::xi_ex()));
    }
    EXPECT_EQ(conns, (std::set<action>{fixtures::a(3), fixtures::a(4)}));
}

TEST(Decomp, SccSplitWithoutChain) {
    auto g = make_vass(1, {"a", "b"}, "a", "b", {{"t", "b", "a", act({0})}});
    EXPECT_TRUE(scc_split(single_triple(cfg({0}), g, cfg({0}))).empty());
    auto sc = single_triple(cfg({0}), dip(), cfg({0}));
    auto same = scc_split(sc);
    ASSERT_EQ(same.size(), 1u);
    EXPECT_EQ(canonical_key(same[0]), canonical_key(sc));
}

TEST(Decomp, CleanOfExample) {
    auto roots = clean(fixtures::xi_ex());
    ASSERT_EQ(roots.size(), 2u);
    std::vector<std::vector<omega_config>> pairs;
    for (const auto& s : roots) {
        EXPECT_EQ(s.triples.front().x, cfg({0, 0, 2}));
        EXPECT_EQ(s.triples.back().y, cfg({1, 1, 0}));
        EXPECT_TRUE(is_clean(s));
        auto p = fixtures::intermediate_configs(s);
        ASSERT_EQ(p.size(), 1u);
        pairs.push_back(p[0]);
    }
    EXPECT_TRUE(has_pair(pairs, cfg({0, w, 2}), cfg({1, w, 2})));
    EXPECT_TRUE(has_pair(pairs, cfg({0, w, 2}), cfg({1, w, 0})));
}

TEST(Decomp, CleanOfUnsatisfiableAndOfCleanInput) {
    auto g = make_vass(1, {"s"}, "s", "s", {{"t", "s", "s", act({2})}});
    EXPECT_TRUE(clean(single_triple(cfg({0}), g, cfg({1}))).empty());
    for (const auto& s : clean(fixtures::xi_ex())) {
        auto again = clean(s);
        ASSERT_EQ(again.size(), 1u);
        EXPECT_EQ(canonical_key(again[0]), canonical_key(s));
    }
}

TEST(Decomp, RigidityViolations) {
    klm_triple tr{cfg({0}), dip(), cfg({0})};
    auto v = check_rigidity(tr);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->condition, 2);
    EXPECT_EQ(v->component, 0u);
    EXPECT_EQ(tr.g.states[v->state], "q");
    auto fixed = fix_rigidity(tr, *v);
    EXPECT_FALSE(fixed.g.find_state("q"));
    EXPECT_EQ(fixed.g.transitions.size(), 2u);
    EXPECT_LT(compare_rank(rank(fixed.g), rank(tr.g)), 0);

    auto one = make_vass(1, {"s"}, "s", "s", {});
    auto v1 = check_rigidity(klm_triple{cfg({0}), one, cfg({1})});
    ASSERT_TRUE(v1);
    EXPECT_EQ(v1->condition, 1);

    for (const auto& s : clean(fixtures::xi_ex()))
        if (s.connectors[0] == fixtures::a(3)) EXPECT_FALSE(check_rigidity(s));
}

TEST(Decomp, BoundedSplit) {
    auto roots = clean(fixtures::xi_ex());
    for (const auto& s : roots) {
        auto parts = split_bounded(s);
        ASSERT_TRUE(parts);  // both roots have bounded transitions
        for (const auto& p : *parts) EXPECT_LT(compare_rank(rank(p), rank(s)), 0);
    }
    auto loop = make_vass(1, {"s"}, "s", "s", {{"t", "s", "s", act({0})}});
    EXPECT_FALSE(split_bounded(single_triple(cfg({w}), loop, cfg({w}))));
}

TEST(Decomp, DecOfRoots) {
    auto roots = clean(fixtures::xi_ex());
    ASSERT_EQ(roots.size(), 2u);
    for (const auto& s : roots) {
        auto children = dec(s);
        if (s.connectors[0] == fixtures::a(4))
            EXPECT_TRUE(children.empty());
        else
            EXPECT_FALSE(children.empty());
        for (const auto& c : children) EXPECT_LT(compare_rank(rank(c), rank(s)), 0);
    }
}

TEST(Decomp, UnfoldingWithoutMovesOnComponent) {
    auto g = make_vass(2, {"a", "b"}, "a", "b", {{"t", "a", "b", act({0, 1})}, {"u", "b", "a", act({0, -1})}});
    klm_triple tr{cfg({1, w}), g, cfg({1, w})};
    auto us = forward_unfoldings(tr, 0, 5);
    ASSERT_EQ(us.size(), 1u);
    EXPECT_EQ(us[0].g.num_states(), 2u);
    EXPECT_EQ(us[0].g.transitions.size(), 2u);
}

TEST(Decomp, UnfoldingNeverReturnsToInputFromOmega) {
    auto g = make_vass(1, {"a", "b"}, "a", "b",
                       {{"up", "a", "b", act({2})}, {"back", "b", "a", act({0})}, {"loop", "b", "b", act({1})}});
    klm_triple tr{cfg({0}), g, cfg({w})};
    for (const auto& u : forward_unfoldings(tr, 0, 3)) {
        for (const auto& t : u.g.transitions) {
            const auto& src = u.g.states[t.src];
            const auto& tgt = u.g.states[t.tgt];
            if (src.ends_with("@w")) EXPECT_NE(tgt.substr(0, 2), "a@");
        }
        EXPECT_LT(compare_rank(rank(u.g), rank(g)), 0);
    }
}

TEST(Decomp, PumpDefectsOfTransitionlessTriples) {
    klm_sequence s;
    s.dim = 2;
    auto g = make_vass(2, {"s"}, "s", "s", {});
    s.triples = {{cfg({1, 1}), g, cfg({1, 1})}, {cfg({2, 1}), g, cfg({2, 1})}};
    s.connectors = {act({1, 0})};
    EXPECT_FALSE(check_pumpable(s));
    EXPECT_TRUE(is_normal(s));
}

TEST(Decomp, ForestOfExample) {
    auto f = full_decomposition(fixtures::xi_ex());
    EXPECT_TRUE(f.exhausted);
    auto leaves = f.normal_leaves();
    EXPECT_EQ(leaves.size(), 2u);
    std::size_t roots = 0, unsat = 0;
    for (const auto& n : f.nodes) {
        if (!n.parent) ++roots;
        if (n.status == node_status::unsat) ++unsat;
        if (n.parent) EXPECT_LT(compare_rank(n.rank, f.nodes[*n.parent].rank), 0);
    }
    EXPECT_EQ(roots, 2u);
    EXPECT_GE(unsat, 1u);
    for (const auto* n : leaves) EXPECT_TRUE(is_normal(n->seq));
}

TEST(Decomp, ForestCoversLanguage) {
    auto f = full_decomposition(fixtures::xi_ex());
    auto leaves = f.normal_leaves();
    for (int fam = 0; fam < 2; ++fam)
        for (long n = 0; n < 3; ++n) {
            auto word = fixtures::family_word(fam, n);
            bool hit = false;
            for (const auto* l : leaves)
                if (membership(l->seq, word)) hit = true;
            EXPECT_TRUE(hit) << "family " << fam << " n=" << n;
        }
}

TEST(Decomp, ForestRenderingIsDeterministic) {
    auto a = render_forest(full_decomposition(fixtures::xi_ex()));
    auto b = render_forest(full_decomposition(fixtures::xi_ex()));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("# complete=yes"), std::string::npos);
    EXPECT_NE(a.find("status=normal"), std::string::npos);
    EXPECT_NE(a.find("rank=(4,3,0,0)"), std::string::npos);
}

TEST(Decomp, UnsatisfiableRootGivesEmptyForest) {
    auto g = make_vass(1, {"s"}, "s", "s", {{"t", "s", "s", act({2})}});
    auto f = full_decomposition(single_triple(cfg({0}), g, cfg({1})));
    EXPECT_TRUE(f.nodes.empty());
    EXPECT_TRUE(f.exhausted);
}

TEST(Decide, ExampleInstances) {
    auto g = fixtures::g_ex();
    auto yes = decide(g, cfg({0, 0, 2}), cfg({1, 1, 0}));
    ASSERT_EQ(yes.answer, verdict::reachable);
    EXPECT_TRUE(reaches(g, {g.in, cfg({0, 0, 2})}, yes.word, {g.out, cfg({1, 1, 0})}));

    decide_options complete;
    complete.mode = decide_mode::complete;
    EXPECT_EQ(decide(g, cfg({0, 0, 2}), cfg({0, 0, 3}), complete).answer, verdict::unreachable);

    decide_options wit;
    wit.mode = decide_mode::witness;
    EXPECT_NE(decide(g, cfg({0, 0, 2}), cfg({0, 0, 3}), wit).answer, verdict::unreachable);
}

TEST(Decide, EmptyWordWhenEndpointsCoincide) {
    auto g = make_vass(2, {"s"}, "s", "s", {{"t", "s", "s", act({1, -1})}});
    auto d = decide(g, cfg({2, 3}), cfg({2, 3}));
    ASSERT_EQ(d.answer, verdict::reachable);
    EXPECT_TRUE(d.word.empty());
}
