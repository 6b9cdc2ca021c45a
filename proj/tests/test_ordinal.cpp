#include "klm/klm.hpp"

#include <gtest/gtest.h>

using namespace klm;

namespace {

ordinal w_times(std::size_t e, long c) { return ordinal::power(e, c); }

ordinal cnf(std::initializer_list<long> coeffs_low_first) {
    std::vector<integer> v;
    for (long c : coeffs_low_first) v.emplace_back(c);
    return ordinal::from_coefficients(v);
}

// all ordinals below omega^3 of size at most 3
std::vector<ordinal> small_ordinals() {
    std::vector<ordinal> out;
    for (long c2 = 0; c2 <= 3; ++c2)
        for (long c1 = 0; c1 <= 3; ++c1)
            for (long c0 = 0; c0 <= 3; ++c0) out.push_back(cnf({c0, c1, c2}));
    return out;
}

}  // namespace

TEST(Ordinal, CompareAndSize) {
    EXPECT_GT(cnf({0, 1, 0, 2}), cnf({5, 0, 0, 2}));
    EXPECT_EQ(cnf({2, 0, 3, 4}).size(), 4);
    EXPECT_EQ(ordinal().size(), 0);
    EXPECT_LT(cnf({9, 9}), ordinal::omega_omega());
    EXPECT_EQ(cnf({0, 1, 0, 2}).str(), "w^3*2 + w");
}

TEST(Ordinal, FundamentalSequences) {
    EXPECT_EQ(w_times(1, 1).fundamental(3), ordinal::natural(4));
    EXPECT_EQ(cnf({0, 1, 0, 2}).fundamental(5), cnf({6, 0, 0, 2}));
    EXPECT_EQ(ordinal::omega_omega().fundamental(2), w_times(3, 1));
    EXPECT_EQ(w_times(2, 1).fundamental(2), w_times(1, 3));
    EXPECT_THROW(ordinal::natural(3).fundamental(1), std::logic_error);
}

TEST(Ordinal, FundamentalSequencesIncreaseBelowLimit) {
    for (const auto& a : small_ordinals()) {
        if (!a.is_limit()) continue;
        for (long x = 0; x < 5; ++x) {
            EXPECT_LT(a.fundamental(x), a.fundamental(x + 1));
            EXPECT_LT(a.fundamental(x), a);
        }
    }
}

TEST(Ordinal, OrderIsTotalAndConsistentWithSize) {
    auto all = small_ordinals();
    for (const auto& a : all)
        for (const auto& b : all) {
            int n = (a < b) + (b < a) + (a == b);
            EXPECT_EQ(n, 1);
        }
    // 4^3 distinct ordinals of size at most 3 below omega^3
    std::sort(all.begin(), all.end());
    EXPECT_EQ(std::unique(all.begin(), all.end()) - all.begin(), 64);
}

TEST(Hardy, ClosedFormsForSuccessor) {
    auto H = successor_fn();
    for (long x = 0; x <= 10; ++x) {
        EXPECT_EQ(hardy(H, w_times(1, 1), x), 2 * x + 1);
        EXPECT_EQ(hardy(H, w_times(1, 2), x), 4 * x + 3);
        integer expect = (integer(1) << (x + 1)) * (x + 1) - 1;
        EXPECT_EQ(hardy(H, w_times(2, 1), x), expect);
    }
    EXPECT_EQ(hardy(H, w_times(2, 1), 3), 63);
}

TEST(Hardy, CichonBridge) {
    auto H = successor_fn();
    EXPECT_EQ(cichon(H, w_times(1, 1), 3), 4);
    EXPECT_EQ(hardy(H, ordinal::natural(cichon(H, w_times(1, 1), 3)), 3), 7);
    // the identities on the part of the grid that evaluates quickly
    for (const auto& a : small_ordinals()) {
        if (a > w_times(2, 1)) continue;
        for (long x = 0; x <= 3; ++x) {
            integer up = hardy(H, a, x);
            integer down = cichon(H, a, x);
            EXPECT_GE(up, down + x);
            EXPECT_EQ(hardy(H, ordinal::natural(down), x), up);
        }
    }
}

TEST(Hardy, BudgetIsReported) {
    EXPECT_THROW(hardy(successor_fn(), w_times(2, 3), 6, 1000), evaluation_exceeded);
    auto b = descent_bound(3, 100, h_fn());
    EXPECT_FALSE(b.value);
    EXPECT_NE(b.str().find("> budget"), std::string::npos);
    auto small = descent_bound(0, 3, successor_fn());
    ASSERT_TRUE(small.value);
    EXPECT_EQ(*small.value, 4);
}

TEST(Hardy, ControlledSequences) {
    EXPECT_TRUE(check_controlled({}, 1, successor_fn()));
    EXPECT_FALSE(check_controlled({ordinal::natural(2), ordinal::natural(2)}, 5, successor_fn()));
    EXPECT_TRUE(check_controlled({cnf({2, 0, 3, 4}), cnf({9, 9, 2, 4})}, 4, h_fn()));
    // the second size 9 exceeds H(4) = 5
    EXPECT_FALSE(check_controlled({cnf({2, 0, 3, 4}), cnf({9, 9, 2, 4})}, 4, successor_fn()));
}
