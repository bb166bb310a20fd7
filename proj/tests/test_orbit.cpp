#include <gtest/gtest.h>

#include <set>

#include "orbitduality/orbit.hpp"

using namespace orbitduality;

namespace {

// Corner cells of the Young diagram with odd row and odd column index (1-based).
int corner_cells(const Partition& d) {
    std::set<std::pair<int, int>> cells;
    for (size_t r = 0; r < d.size(); ++r)
        for (int c = 0; c < d[r]; ++c) cells.insert({int(r), c});
    int n = 0;
    for (auto [r, c] : cells)
        if (!cells.count({r + 1, c}) && !cells.count({r, c + 1}) && (r + 1) % 2 && (c + 1) % 2) ++n;
    return n;
}

std::vector<int> eta_oracle(const Partition& d, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) {
        int s = 0, j = 0;
        while (s < 2 * i) s += d[size_t(j++)];
        out.push_back(j);
    }
    return out;
}

long dim_oracle(const Partition& d, OrbitType t) {
    long n = t == OrbitType::C ? total(d) / 2 : (total(d) - 1) / 2;
    long sq = 0, odd_parts = 0;
    for (int h = 1; h <= d[0]; ++h) {
        long s = 0;
        for (int x : d) s += x >= h;
        sq += s * s;
    }
    for (int x : d) odd_parts += x % 2;
    long half = t == OrbitType::C ? (sq + odd_parts) : (sq - odd_parts);
    return 2 * n * n + n - half / 2;
}

} // namespace

TEST(Blocks, Examples) {
    auto bd = block_decompose({7, 6, 6, 4, 4, 2, 2, 1, 1});
    ASSERT_EQ(bd.size(), 2u);
    EXPECT_EQ(bd[0].kind, BlockKind::B2);
    EXPECT_EQ(bd[0].parts, (Partition{7, 6, 6, 4, 4, 2, 2, 1}));
    EXPECT_EQ(bd[1].kind, BlockKind::B3);
    EXPECT_EQ(bd[1].parts, (Partition{1}));

    bd = block_decompose({3, 1, 1});
    ASSERT_EQ(bd.size(), 2u);
    EXPECT_EQ(bd[0].kind, BlockKind::B2);
    EXPECT_EQ(bd[0].parts, (Partition{3, 1}));

    bd = block_decompose({2, 2, 1});
    ASSERT_EQ(bd.size(), 2u);
    EXPECT_EQ(bd[0].kind, BlockKind::B1star);
    EXPECT_EQ(bd[1].kind, BlockKind::B3);
}

TEST(Blocks, UniqueAndConcatenating) {
    for (int N = 1; N <= 17; N += 2)
        for (auto& d : enumerate_partitions(OrbitType::B, N, false)) {
            ASSERT_EQ(detail::count_decompositions(d), 1) << to_string(d);
            Partition cat;
            for (auto& b : block_decompose(d)) cat.insert(cat.end(), b.parts.begin(), b.parts.end());
            ASSERT_EQ(cat, d);
        }
}

TEST(Invariants, Examples) {
    auto a = orbit_invariants({7, 6, 6, 4, 4, 2, 2, 1, 1}, OrbitType::B);
    EXPECT_EQ(a.c, 1);
    EXPECT_EQ(a.beta, 8);
    EXPECT_EQ(a.degree_partition, (Partition{6, 6, 6, 4, 4, 2, 2, 2, 1}));
    EXPECT_EQ(a.canonical_quotient_order, 2u);

    auto b = orbit_invariants({3, 1, 1}, OrbitType::B);
    EXPECT_EQ(b.c, 1);
    EXPECT_EQ(b.beta, 2);
    EXPECT_EQ(b.degree_partition, (Partition{2, 2, 1}));

    auto z = orbit_invariants({1, 1, 1, 1, 1}, OrbitType::B);
    EXPECT_EQ(z.c, 0);
    EXPECT_EQ(z.beta, 0);
    EXPECT_EQ(z.canonical_quotient_order, 1u);
}

TEST(Invariants, DegreeIsDualPlusOne) {
    for (int N = 1; N <= 17; N += 2)
        for (auto& d : enumerate_partitions(OrbitType::B, N, true)) {
            auto want = springer_dual(d, Direction::B_to_C);
            want.push_back(1);
            ASSERT_EQ(orbit_invariants(d, OrbitType::B).degree_partition, want) << to_string(d);
        }
}

TEST(Invariants, CornerOracle) {
    for (int N = 1; N <= 17; N += 2)
        for (auto& d : enumerate_partitions(OrbitType::B, N, true)) {
            auto inv = orbit_invariants(d, OrbitType::B);
            ASSERT_EQ(inv.c, corner_cells(d) - 1) << to_string(d);
            ASSERT_EQ(inv.corner_q, inv.c);
        }
}

TEST(Invariants, TypeCUsesTheDual) {
    for (int n = 1; n <= 6; ++n)
        for (auto& d : enumerate_partitions(OrbitType::C, 2 * n, true)) {
            auto ic = orbit_invariants(d, OrbitType::C);
            auto ib = orbit_invariants(springer_dual(d, Direction::C_to_B), OrbitType::B);
            ASSERT_EQ(ic.c, ib.c);
            ASSERT_EQ(ic.beta, ib.beta);
        }
}

TEST(KL, Examples) {
    EXPECT_EQ(kl_label({2, 2}, OrbitType::C), (KLLabel{{}, {1, 1}}));
    EXPECT_EQ(kl_label({3, 1, 1}, OrbitType::B), (KLLabel{{}, {1, 1}}));
    EXPECT_EQ(kl_label({1, 1, 1, 1}, OrbitType::C), (KLLabel{{1, 1}, {}}));
}

TEST(Eta, Examples) {
    EXPECT_EQ(eta_sequence({2, 2}, OrbitType::C), (std::vector<int>{1, 2}));
    EXPECT_EQ(eta_sequence({4}, OrbitType::C), (std::vector<int>{1, 1}));
    EXPECT_EQ(eta_sequence({3, 1, 1}, OrbitType::B), (std::vector<int>{1, 2}));
}

TEST(Eta, ForwardForDualPairs) {
    for (int n = 1; n <= 8; ++n)
        for (auto& c : enumerate_partitions(OrbitType::C, 2 * n, true)) {
            auto b = springer_dual(c, Direction::C_to_B);
            ASSERT_EQ(eta_sequence(c, OrbitType::C), eta_oracle(c, n));
            ASSERT_EQ(eta_sequence(b, OrbitType::B), eta_sequence(c, OrbitType::C)) << to_string(c);
            ASSERT_EQ(kl_label(b, OrbitType::B), kl_label(c, OrbitType::C)) << to_string(c);
            auto kl = kl_label(c, OrbitType::C);
            ASSERT_EQ(total(kl.alpha) + total(kl.beta), n);
        }
}

// The converse fails for non-special B partitions; the counts are frozen from an exhaustive scan.
TEST(Eta, ConverseCounts) {
    const int want[] = {0, 1, 1, 3, 5, 9};
    for (int n = 1; n <= 6; ++n) {
        int literal = 0, refined = 0;
        for (auto& b : enumerate_partitions(OrbitType::B, 2 * n + 1, false))
            for (auto& c : enumerate_partitions(OrbitType::C, 2 * n, false)) {
                if (eta_oracle(b, n) != eta_oracle(c, n)) continue;
                bool dual = is_special(b, OrbitType::B) && is_special(c, OrbitType::C) && springer_dual(c, Direction::C_to_B) == b;
                if (!dual) {
                    ++literal;
                    if (is_special(b, OrbitType::B)) ++refined;
                }
            }
        EXPECT_EQ(literal, want[n - 1]) << n;
        EXPECT_EQ(refined, 0) << n;
    }
    EXPECT_EQ(eta_sequence({2, 2, 1}, OrbitType::B), eta_sequence({2, 2}, OrbitType::C));
    EXPECT_FALSE(is_special({2, 2, 1}, OrbitType::B));
}

TEST(Dimensions, Examples) {
    auto r = dimension_report({2, 2}, OrbitType::C, {2, 2});
    EXPECT_EQ(r.orbit_dim, 6);
    EXPECT_EQ(r.hitchin_base_dim, 13);
    EXPECT_EQ(r.moduli_dim, 26);
    ASSERT_TRUE(r.half_check.has_value());
    EXPECT_TRUE(*r.half_check);
    EXPECT_EQ(dimension_report({3, 1, 1}, OrbitType::B, {2, 2}).orbit_dim, 6);
    for (int g : {2, 3, 5}) {
        auto z = dimension_report({1, 1, 1, 1, 1, 1}, OrbitType::C, {3, g});
        EXPECT_EQ(z.orbit_dim, 0);
        EXPECT_EQ(z.moduli_dim, (2L * g - 2) * (2 * 9 + 3));
    }
}

TEST(Dimensions, OracleAndIdentities) {
    for (int n = 1; n <= 8; ++n)
        for (OrbitType t : {OrbitType::C, OrbitType::B})
            for (auto& d : enumerate_partitions(t, ambient(n, t), false)) {
                ASSERT_EQ(orbit_dimension(d, t), dim_oracle(d, t)) << to_string(d);
                if (!is_special(d, t)) continue;
                for (int g : {2, 3}) {
                    auto r = dimension_report(d, t, {n, g}, true);
                    ASSERT_TRUE(r.half_check.value_or(false)) << to_string(d) << " g=" << g;
                    if (t == OrbitType::C) {
                        ASSERT_TRUE(r.eta_sum_identity.value_or(false)) << to_string(d);
                    }
                }
            }
}

TEST(Dimensions, RequireSpecial) {
    try {
        dimension_report({2, 1, 1}, OrbitType::C, {2, 2}, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, ErrorKind::NotSpecial);
    }
}

TEST(Ramification, Examples) {
    auto a = ramification_coefficients({2, 2});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].i, 2);
    EXPECT_EQ(a[0].partial_sum, 4);
    EXPECT_TRUE(a[0].parity_ok);

    auto b = ramification_coefficients({2, 1, 1});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].i, 1);
    EXPECT_EQ(b[0].partial_sum, 3);
    EXPECT_FALSE(b[0].parity_ok);
    EXPECT_EQ(b[1].partial_sum, 4);
    EXPECT_TRUE(b[1].parity_ok);

    auto c = ramification_coefficients({1, 1, 1, 1});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].i, 1);
    EXPECT_EQ(c[0].partial_sum, 4);

    // [4]: index 1 has an odd partial sum but nothing sits there
    for (auto& e : ramification_coefficients({4})) EXPECT_NE(e.i, 1);
}

TEST(Ramification, SpecialIffAllEven) {
    for (int n = 1; n <= 8; ++n)
        for (auto& d : enumerate_partitions(OrbitType::C, 2 * n, false)) {
            bool even = true;
            for (auto& e : ramification_coefficients(d)) even = even && e.parity_ok;
            ASSERT_EQ(even, is_special(d, OrbitType::C)) << to_string(d);
        }
}
