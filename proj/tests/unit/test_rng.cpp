#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "obswitch/rng.hpp"
#include "oracles.hpp"

namespace obswitch {
namespace {

// Known-answer vectors from the Random123 distribution (kat_vectors, philox4x32 10 rounds).
TEST(Philox, MatchesReferenceVectors) {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}),
              (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                   K{0xffffffffu, 0xffffffffu}),
              (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                   K{0xa4093822u, 0x299f31d0u}),
              (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(OpenUnit, NeverHitsEndpoints) {
    EXPECT_GT(to_open_unit(0), 0.0);
    EXPECT_LT(to_open_unit(~0ull), 1.0);
}

TEST(NormalStream, ReproducibleAndKeyed) {
    NormalStream a(7, 3, Series::Signal), b(7, 3, Series::Signal);
    NormalStream other_path(7, 4, Series::Signal), other_series(7, 3, Series::Observation);
    NormalStream other_seed(8, 3, Series::Signal);
    std::set<double> firsts;
    for (int i = 0; i < 100; ++i) {
        const double x = a.next();
        EXPECT_EQ(x, b.next());
        if (i == 0) {
            firsts.insert(x);
            firsts.insert(other_path.next());
            firsts.insert(other_series.next());
            firsts.insert(other_seed.next());
        }
    }
    EXPECT_EQ(firsts.size(), 4u);
}

TEST(NormalStream, StandardNormalMoments) {
    NormalStream stream(12345, 0, Series::Signal);
    std::vector<double> xs(400000);
    for (auto& x : xs) x = stream.next();
    const auto m = oracle::moments(xs);
    EXPECT_NEAR(m.mean, 0.0, 4.0 * m.mean_se);
    EXPECT_NEAR(m.variance, 1.0, 4.0 * m.variance_se);
    std::size_t tail = 0;
    for (double x : xs) tail += std::abs(x) > 1.959963984540054;
    const double p = static_cast<double>(tail) / static_cast<double>(xs.size());
    EXPECT_NEAR(p, 0.05, 4.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(xs.size())));
}

}  // namespace
}  // namespace obswitch
