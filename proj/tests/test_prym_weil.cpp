#include <gtest/gtest.h>

#include <random>
#include <set>

#include "orbitduality/prym_weil.hpp"

using namespace orbitduality;

namespace {

using Mask = std::uint32_t;

Mask mask_of(const gf2::Vec& v) {
    Mask m = 0;
    for (int i = 0; i < v.n; ++i)
        if (v.get(i)) m |= Mask(1) << i;
    return m;
}

gf2::Vec vec_of(Mask m, int n) {
    gf2::Vec v(n);
    for (int i = 0; i < n; ++i)
        if (m >> i & 1) v.set(i);
    return v;
}

// e(P_i, P_j) = 1 for i != j, summed over the supports.
bool pairing(Mask a, Mask b, int n) {
    int s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (a >> i & 1) && (b >> j & 1)) ++s;
    return s % 2;
}

std::set<Mask> elements(const gf2::Basis& b) {
    std::set<Mask> out;
    for (Mask m = 0; m < (Mask(1) << b.n); ++m)
        if (b.contains(vec_of(m, b.n))) out.insert(m);
    return out;
}

std::set<Mask> brute_annihilator(int n, const std::vector<gf2::Vec>& V) {
    std::set<Mask> out;
    for (Mask x = 0; x < (Mask(1) << n); ++x) {
        bool ok = true;
        for (auto& v : V) ok = ok && !pairing(x, mask_of(v), n);
        if (ok) out.insert(x);
    }
    return out;
}

std::set<Mask> brute_lift(int n, const std::vector<gf2::Vec>& V) {
    std::set<Mask> out{0};
    std::vector<Mask> gens{(Mask(1) << n) - 1};
    for (auto& v : V) gens.push_back(mask_of(v));
    for (Mask g : gens) {
        std::set<Mask> next = out;
        for (Mask x : out) next.insert(x ^ g);
        out = next;
    }
    return out;
}

} // namespace

TEST(WeilSpace, Examples) {
    auto w2 = weil_space(2);
    EXPECT_EQ(w2.gens(), 3);
    EXPECT_EQ(w2.kernel_dim(), 2);
    auto ann = annihilator(w2, {w2.generator(0)});
    EXPECT_TRUE(gf2::same_span(ann, lift(w2, {w2.generator(0)})));

    auto w1 = weil_space(1);
    EXPECT_EQ(w1.gens(), 1);
    EXPECT_EQ(w1.kernel_dim(), 0);

    for (int N = 1; N <= 8; ++N) {
        auto w = weil_space(N);
        for (int i = 0; i < w.gens(); ++i) ASSERT_FALSE(w.pair(w.generator(i), w.relation()));
        ASSERT_EQ(induced_rank(w), w.kernel_dim());
    }
    EXPECT_THROW(weil_space(0), Error);
}

TEST(WeilSpace, PairingMatchesDefinition) {
    for (int N = 1; N <= 3; ++N) {
        auto w = weil_space(N);
        int n = w.gens();
        for (Mask a = 0; a < (Mask(1) << n); ++a)
            for (Mask b = 0; b < (Mask(1) << n); ++b) ASSERT_EQ(w.pair(vec_of(a, n), vec_of(b, n)), pairing(a, b, n));
    }
}

TEST(Components, Examples) {
    for (int N = 1; N <= 8; ++N) {
        auto w = weil_space(N);
        std::vector<gf2::Vec> all;
        for (int i = 0; i < w.gens(); ++i) all.push_back(w.generator(i));
        EXPECT_EQ(component_count(w, all).count(), 2u) << N;
        EXPECT_EQ(component_count(w, {}).count(), 1u);
        for (int drop = 0; drop < w.gens(); ++drop) {
            auto sub = all;
            sub.erase(sub.begin() + drop);
            ASSERT_EQ(component_count(w, sub).count(), 1u) << N;
        }
    }
}

TEST(Duality, Examples) {
    auto w = weil_space(3);
    std::vector<gf2::Vec> ker;
    for (int i = 0; i + 1 < w.gens(); ++i) ker.push_back(w.generator(i));
    EXPECT_TRUE(dual_check(w, {}, ker));
    EXPECT_TRUE(dual_check(w, ker, {}));
    auto w2 = weil_space(2);
    EXPECT_TRUE(dual_check(w2, {w2.generator(0)}, {w2.generator(0)}));
    EXPECT_FALSE(dual_check(w2, {}, {w2.generator(0)}));
}

TEST(Duality, BruteForceAnnihilators) {
    std::mt19937_64 rng(3);
    for (int N = 1; N <= 4; ++N) {
        auto w = weil_space(N);
        int n = w.gens();
        for (int it = 0; it < 40; ++it) {
            std::vector<gf2::Vec> V;
            int k = int(rng() % size_t(n + 1));
            for (int i = 0; i < k; ++i) V.push_back(vec_of(Mask(rng()) & ((Mask(1) << n) - 1), n));
            auto ann = annihilator(w, V);
            ASSERT_EQ(elements(ann), brute_annihilator(n, V));
            ASSERT_TRUE(elements(ann).count((Mask(1) << n) - 1));  // the relation is in the radical
            ASSERT_EQ(elements(lift(w, V)), brute_lift(n, V));
            ASSERT_EQ(kernel_dim_of(lift(w, V)) + kernel_dim_of(ann), w.kernel_dim());
            ASSERT_TRUE(gf2::same_span(annihilator(w, ann.rows), lift(w, V)));
        }
    }
}

TEST(Hitchin, Examples) {
    auto a = hitchin_instance(2, 2, {2, 2}, {{1}, 2, OrbitType::C});
    EXPECT_EQ(2 * a.space.N, 10);
    EXPECT_EQ(a.dim_VC, 1);
    EXPECT_EQ(a.dim_VB, 7);
    EXPECT_TRUE(a.dual);
    EXPECT_EQ(a.components.count(), 2u);
    EXPECT_FALSE(a.naive_dual);

    auto b = hitchin_instance(2, 2, {2, 2}, {{2}, 0, OrbitType::C});
    EXPECT_EQ(b.dim_VC, 0);
    EXPECT_EQ(b.dim_VB, 8);
    EXPECT_TRUE(b.dual);

    try {
        hitchin_instance(2, 2, {4}, {{1, 1}, 0, OrbitType::C});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, ErrorKind::ParityGuard);
    }
}

TEST(Hitchin, Rejections) {
    auto kind = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind;
        }
        return ErrorKind::Usage;
    };
    EXPECT_EQ(kind([] { hitchin_instance(2, 2, {4}, {{1}, 2, OrbitType::C}); }), ErrorKind::NotRichardson);
    EXPECT_EQ(kind([] { hitchin_instance(3, 2, {2, 2}, {{1}, 2, OrbitType::C}); }), ErrorKind::InvalidLevi);
    EXPECT_EQ(kind([] { hitchin_instance(2, 2, {3, 1, 1}, {{1}, 3, OrbitType::B}); }), ErrorKind::InvalidLevi);
    EXPECT_THROW(hitchin_instance(2, 1, {2, 2}, {{1}, 2, OrbitType::C}), Error);
}

TEST(Hitchin, AllRichardsonPairs) {
    int evaluated = 0, guarded = 0;
    for (int g : {2, 3})
        for (int n = 1; n <= 4; ++n)
            for (auto& [L, pd] : enumerate_polarizations(n, OrbitType::C)) {
                try {
                    auto h = hitchin_instance(n, g, pd.orbit, L);
                    ++evaluated;
                    ASSERT_TRUE(h.dual) << to_string(L) << " g=" << g;
                    ASSERT_EQ(h.components.count(), 2u);
                    ASSERT_TRUE(h.degree_ok);
                    ASSERT_EQ(h.naive_dual, h.c == 0) << to_string(L);
                    ASSERT_EQ(h.space.kernel_dim(), 2 * n * (2 * g - 2) + h.beta - 2);
                    ASSERT_TRUE(gf2::subspace_of(lift(h.space, h.naive), lift(h.space, h.VB)));
                    if (h.space.gens() <= 13) {
                        auto ann = brute_annihilator(h.space.gens(), h.VC);
                        ASSERT_EQ(brute_lift(h.space.gens(), h.VB), ann) << to_string(L);
                    }
                } catch (const Error& e) {
                    ASSERT_EQ(e.kind, ErrorKind::ParityGuard);
                    ASSERT_EQ(orbit_invariants(pd.orbit, OrbitType::C).beta % 2, 1);
                    ++guarded;
                }
            }
    EXPECT_EQ(evaluated, 36);
    EXPECT_EQ(guarded, 16);
}
