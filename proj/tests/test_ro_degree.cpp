#include "ess/ro_degree.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ess;

TEST(RODegree, Addition)
{
    EXPECT_EQ(RODegree(2, -2) + RODegree(0, -1), RODegree(2, -3));
    EXPECT_EQ(RODegree::rho() + RODegree::rho(), RODegree(2, 2));
    RODegree d{5, -7};
    EXPECT_EQ(RODegree::zero() + d, d);
}

TEST(RODegree, UnderlyingDegree)
{
    for (std::int64_t m = -5; m <= 5; ++m)
        EXPECT_EQ(underlying_degree(m * RODegree::rho()), 2 * m);
    EXPECT_EQ(underlying_degree(RODegree::sigma()), 1);
    EXPECT_EQ(underlying_degree(RODegree(-2, 2)), 0);
    EXPECT_EQ(fixed_degree(RODegree(3, -1)), 3);
}

TEST(RODegree, GroupAxiomsOnRandomTriples)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(-50, 50);
    for (int i = 0; i < 500; ++i) {
        RODegree x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)}, z{coord(rng), coord(rng)};
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x + (-x), RODegree::zero());
        EXPECT_EQ(underlying_degree(x + y), underlying_degree(x) + underlying_degree(y));
    }
}

TEST(DegreeWindow, Containment)
{
    DegreeWindow w(-2, 2, -3, 1, 4);
    EXPECT_TRUE(w.contains(RODegree(0, 0)));
    EXPECT_FALSE(w.contains(RODegree(3, 0)));
    EXPECT_TRUE(w.contains(4, RODegree(2, -3)));
    EXPECT_FALSE(w.contains(5, RODegree(0, 0)));
    int count = 0;
    w.for_each([&](const RODegree&) { ++count; });
    EXPECT_EQ(count, 25);
    EXPECT_THROW(DegreeWindow(1, 0, 0, 0, 0), std::invalid_argument);
}
