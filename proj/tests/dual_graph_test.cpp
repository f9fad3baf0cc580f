#include <gtest/gtest.h>

#include "strata/strata.hpp"
#include "support/oracles.hpp"

namespace strata {
namespace {

// two genus-0 vertices joined by two parallel edges, marks 1 and 2 apart
DualGraph banana() { return DualGraph({0, 0}, {Edge(0, 1), Edge(0, 1)}, {0, 1}); }

TEST(DualGraph, RejectsBrokenInvariants) {
    EXPECT_THROW(DualGraph({}, {}, {}), std::invalid_argument);
    EXPECT_THROW(DualGraph({-1}, {}, {0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(DualGraph({0, 0}, {Edge(0, 2)}, {0, 1}), std::invalid_argument);
    EXPECT_THROW(DualGraph({1}, {}, {1}), std::invalid_argument);
    EXPECT_THROW(DualGraph({1, 1}, {}, {0, 1}), std::invalid_argument);  // disconnected
    EXPECT_NO_THROW(DualGraph({0}, {Edge(0, 0)}, {0}));
}

TEST(DualGraph, EdgesAreNormalized) {
    DualGraph g({1, 0}, {Edge(1, 0)}, {1, 1});
    EXPECT_EQ(g.edge(0).a, 0u);
    EXPECT_EQ(g.edge(0).b, 1u);
    EXPECT_THROW(g.edge(1), std::out_of_range);
    EXPECT_THROW(g.leg(0), std::out_of_range);
    EXPECT_THROW(g.leg(3), std::out_of_range);
    EXPECT_EQ(g.leg(2), 1u);
}

TEST(TotalGenus, Examples) {
    EXPECT_EQ(total_genus(DualGraph({2}, {}, {0, 0})), 2);
    EXPECT_EQ(total_genus(banana()), 1);
    EXPECT_EQ(total_genus(DualGraph({0}, {Edge(0, 0)}, {0, 0})), 1);
}

TEST(Stability, Examples) {
    EXPECT_FALSE(is_stable(DualGraph({0}, {}, {0, 0})));
    // pinwheel: center 0 with three spokes to exterior vertices of genera 1, 1, 0, each with one mark
    DualGraph pinwheel({0, 1, 1, 0}, {Edge(0, 1), Edge(0, 2), Edge(0, 3)}, {1, 2, 3});
    EXPECT_FALSE(is_stable(pinwheel));
    // 1{1,2} - 0 with a loop
    EXPECT_TRUE(is_stable(DualGraph({1, 0}, {Edge(0, 1), Edge(1, 1)}, {0, 0})));
}

TEST(Stability, LoopCountsTwice) {
    EXPECT_TRUE(is_stable(DualGraph({0}, {Edge(0, 0)}, {0})));
    EXPECT_FALSE(is_stable(DualGraph({0}, {Edge(0, 0)}, {})));
    EXPECT_FALSE(is_stable(DualGraph({1}, {}, {})));
    EXPECT_TRUE(is_stable(DualGraph({2}, {}, {})));
}

TEST(Smooth, LoopRaisesGenus) {
    DualGraph g = smooth(DualGraph({0}, {Edge(0, 0)}, {0, 0}), 0);
    EXPECT_EQ(g, DualGraph({1}, {}, {0, 0}));
}

TEST(Smooth, MergesEndpoints) {
    DualGraph g = smooth(DualGraph({1, 1}, {Edge(0, 1)}, {0, 0}), 0);
    EXPECT_EQ(g, DualGraph({2}, {}, {0, 0}));
}

TEST(Smooth, ParallelCopyBecomesLoop) {
    DualGraph g = smooth(banana(), 0);
    EXPECT_EQ(g, DualGraph({0}, {Edge(0, 0)}, {0, 0}));
    EXPECT_TRUE(oracle::brute_isomorphic(g, oracle::cook(oracle::brute_contract(oracle::raw(banana()), 0))));
    EXPECT_THROW(smooth(banana(), 2), std::invalid_argument);
}

TEST(SmoothSet, EmptyAndFull) {
    DualGraph g({1, 0}, {Edge(0, 1), Edge(1, 1)}, {0, 0, 1});
    const std::vector<EdgeId> none;
    EXPECT_EQ(smooth_set(g, none), g);
    const std::vector<EdgeId> all{0, 1};
    EXPECT_EQ(smooth_set(g, all), DualGraph({2}, {}, {0, 0, 0}));
    const std::vector<EdgeId> bad{5};
    EXPECT_THROW(smooth_set(g, bad), std::invalid_argument);
}

TEST(SmoothSet, TwoThreeDivisorPair) {
    // 1{3} - 0{1,2} - loop; smoothing the middle edge gives 1{1,2,3} with a loop
    DualGraph g({1, 0}, {Edge(0, 1), Edge(1, 1)}, {1, 1, 0});
    const std::vector<EdgeId> middle{0};
    DualGraph s = smooth_set(g, middle);
    EXPECT_EQ(s, DualGraph({1}, {Edge(0, 0)}, {0, 0, 0}));
}

TEST(Delta, OneEdgeGraphIsItsOwnDelta) {
    DualGraph g({1, 1}, {Edge(0, 1)}, {0, 1});
    EXPECT_EQ(delta(g, 0), g);
    EXPECT_THROW(delta(g, 1), std::invalid_argument);
}

TEST(Delta, TwoThreeStratumGivesDisplayedDivisors) {
    DualGraph g({1, 0}, {Edge(0, 1), Edge(1, 1)}, {1, 1, 0});
    // keep the separating edge: 1{3} - 1{1,2}
    EXPECT_TRUE(is_isomorphic(delta(g, 0), DualGraph({1, 1}, {Edge(0, 1)}, {0, 0, 1})));
    // keep the loop: 1{1,2,3} with a loop
    EXPECT_TRUE(is_isomorphic(delta(g, 1), DualGraph({1}, {Edge(0, 0)}, {0, 0, 0})));
}

TEST(Describe, Compact) {
    EXPECT_EQ(describe(DualGraph({1, 0}, {Edge(0, 1), Edge(1, 1)}, {0, 0})), "[1{1,2} 0{}] 0-1 1-1");
}

TEST(Signature, Existence) {
    EXPECT_FALSE((GnSignature{0, 0}).exists());
    EXPECT_FALSE((GnSignature{0, 2}).exists());
    EXPECT_FALSE((GnSignature{1, 0}).exists());
    EXPECT_TRUE((GnSignature{0, 3}).exists());
    EXPECT_TRUE((GnSignature{1, 1}).exists());
    EXPECT_TRUE((GnSignature{2, 0}).exists());
    EXPECT_EQ((GnSignature{2, 2}).dimension(), 5);
    EXPECT_THROW(require_exists({0, 1}), std::invalid_argument);
}

}  // namespace
}  // namespace strata
