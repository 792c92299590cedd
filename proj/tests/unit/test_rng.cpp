#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "proofread/rng.hpp"

using proofread::CounterRng;
using proofread::Philox4x32;

// Known-answer vectors from the Random123 distribution.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
              (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                   {0xffffffff, 0xffffffff}),
              (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                   {0xa4093822, 0x299f31d0}),
              (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, StreamsArePureFunctionsOfKey) {
    CounterRng a(7, 3, 2);
    CounterRng b(7, 3, 2);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());

    std::set<std::uint32_t> firsts;
    for (std::uint64_t ligand = 0; ligand < 50; ++ligand) {
        for (std::uint32_t trial = 0; trial < 4; ++trial) {
            firsts.insert(CounterRng(7, ligand, trial)());
        }
    }
    firsts.insert(CounterRng(8, 0, 0)());
    firsts.insert(CounterRng(7, std::uint64_t{1} << 40, 0)());
    EXPECT_EQ(firsts.size(), 202u);
}

TEST(CounterRng, UniformOpenStaysInside) {
    CounterRng rng(1, 2, 3);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform_open();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}
