#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "orbitduality/series.hpp"

using namespace orbitduality;
namespace S = orbitduality::series;

namespace {

constexpr u32 P = 101;
constexpr int N = 12;

// Plain truncated polynomials over F_p as the reference.
using Vecp = std::vector<u32>;

Vecp vmul(const Vecp& a, const Vecp& b) {
    Vecp c(N, 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; i + j < N; ++j) c[size_t(i + j)] = u32((c[size_t(i + j)] + u64(a[size_t(i)]) * b[size_t(j)]) % P);
    return c;
}

Vecp vadd(const Vecp& a, const Vecp& b) {
    Vecp c(N);
    for (int i = 0; i < N; ++i) c[size_t(i)] = (a[size_t(i)] + b[size_t(i)]) % P;
    return c;
}

Vecp digits(const Series& s) {
    Vecp v(N, 0);
    for (int k = 0; k < N; ++k) v[size_t(k)] = s.coeff(k);
    return v;
}

Vecp random_vec(std::mt19937_64& rng, bool unit) {
    Vecp v(N);
    for (auto& x : v) x = u32(rng() % P);
    if (unit && v[0] == 0) v[0] = 1;
    return v;
}

Series S_(const Vecp& v) { return S::from_coeffs(P, v, N); }

Series leibniz(const SeriesMatrix& a) {
    size_t n = a.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Series acc = S::zero(P);
    do {
        int inversions = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        Series term = S::constant(P, inversions % 2 ? P - 1 : 1);
        for (size_t i = 0; i < n; ++i) term = term * a[i][perm[i]];
        acc = acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

SeriesMatrix random_matrix(std::mt19937_64& rng, size_t n) {
    SeriesMatrix m = S::zero_matrix(P, n, n);
    for (auto& row : m)
        for (auto& x : row) {
            std::vector<u32> c(4);
            for (auto& v : c) v = u32(rng() % P);
            x = S::from_coeffs(P, c);  // exact polynomials
        }
    return m;
}

} // namespace

TEST(Series, Basics) {
    auto s = S::from_coeffs(P, {0, 0, 3, 4}, 10);
    EXPECT_EQ(s.val, 2);
    EXPECT_EQ(s.abs_prec(), 10);
    EXPECT_EQ(s.coeff(3), 4u);
    EXPECT_EQ(s.coeff(1), 0u);
    EXPECT_THROW(s.coeff(10), Error);
    EXPECT_FALSE(S::zero(P, 5).order().has_value());
    EXPECT_EQ(S::monomial(P, 7, 3).order(), 3);
    EXPECT_TRUE(S::constant(P, 5).exact());
    EXPECT_EQ((S::constant(P, 100) + S::constant(P, 1)).is_zero(), true);
}

TEST(Series, PrecisionLoss) {
    auto a = S::from_coeffs(P, {1, 2}, 4);
    try {
        a.coeff(4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, ErrorKind::PrecisionLoss);
    }
    auto b = S::from_coeffs(P, {0, 1}, 3);
    EXPECT_EQ((a * b).abs_prec(), 3);  // the 1 * O(t^3) term dominates
    EXPECT_EQ((a + b).abs_prec(), 3);
    EXPECT_THROW(S::inverse(S::zero(P, 3)), Error);
}

TEST(Series, ArithmeticMatchesReference) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto a = random_vec(rng, false), b = random_vec(rng, true);
        ASSERT_EQ(digits(S_(a) * S_(b)), vmul(a, b));
        ASSERT_EQ(digits(S_(a) + S_(b)), vadd(a, b));
        auto q = S_(a) / S_(b);
        ASSERT_EQ(vmul(digits(q), b), a);
        auto one = digits(S::inverse(S_(b)) * S_(b));
        ASSERT_EQ(one[0], 1u);
        ASSERT_TRUE(std::all_of(one.begin() + 1, one.end(), [](u32 x) { return x == 0; }));
    }
}

TEST(Series, LaurentInverse) {
    auto t2 = S::from_coeffs(P, {0, 0, 1, 1}, 8);
    auto inv = S::inverse(t2);
    EXPECT_EQ(inv.val, -2);
    auto one = inv * t2;
    EXPECT_EQ(one.val, 0);
    EXPECT_EQ(one.coeff(0), 1u);
    EXPECT_EQ(one.coeff(1), 0u);
}

TEST(Matrix, DeterminantMatchesLeibniz) {
    std::mt19937_64 rng(5);
    for (size_t n = 1; n <= 4; ++n)
        for (int it = 0; it < 10; ++it) {
            auto m = random_matrix(rng, n);
            auto d = S::det(m), want = leibniz(m);
            ASSERT_TRUE((d - want).is_zero()) << d.str() << " vs " << want.str();
        }
    // t-divisible pivots
    auto m = S::zero_matrix(P, 2, 2);
    m[0][0] = S::monomial(P, 1, 1);
    m[0][1] = S::constant(P, 1);
    m[1][0] = S::constant(P, 1);
    m[1][1] = S::monomial(P, 1, 2);
    EXPECT_TRUE((S::det(m) - (S::monomial(P, 1, 3) - S::constant(P, 1))).is_zero());
}

TEST(Matrix, AdjugateIdentity) {
    std::mt19937_64 rng(6);
    for (size_t n = 1; n <= 4; ++n) {
        auto m = random_matrix(rng, n);
        auto prod = S::mat_mul(m, S::adjugate(m));
        auto d = S::det(m);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) ASSERT_TRUE((prod[i][j] - (i == j ? d : S::zero(P))).is_zero());
    }
}

TEST(Matrix, Solve) {
    std::mt19937_64 rng(8);
    for (size_t n = 1; n <= 4; ++n) {
        auto m = random_matrix(rng, n);
        std::vector<Series> b(n);
        for (auto& x : b) x = S::from_coeffs(P, {u32(rng() % P), u32(rng() % P)});
        auto x = S::solve(m, b);
        for (size_t i = 0; i < n; ++i) {
            Series acc = S::zero(P);
            for (size_t j = 0; j < n; ++j) acc = acc + m[i][j] * x[j];
            auto r = acc - b[i];
            ASSERT_TRUE(r.is_zero() || r.val >= 40) << r.str();
        }
    }
    auto sing = S::zero_matrix(P, 2, 2);
    EXPECT_THROW(S::solve(sing, {S::constant(P, 1), S::constant(P, 1)}), Error);
}

TEST(Poly, CompanionAndCharpoly) {
    std::mt19937_64 rng(9);
    for (int e = 1; e <= 5; ++e) {
        SeriesPoly f(size_t(e) + 1);
        for (int k = 0; k < e; ++k) f[size_t(k)] = S::from_coeffs(P, {u32(rng() % P), u32(rng() % P)});
        f[size_t(e)] = S::constant(P, 1);
        auto R = S::companion(f);
        auto cp = S::charpoly(R);
        ASSERT_EQ(S::degree(cp), e);
        for (int k = 0; k <= e; ++k) ASSERT_TRUE((cp[size_t(k)] - f[size_t(k)]).is_zero()) << e << " " << k;
        auto zero = S::poly_eval(f, R);  // Cayley-Hamilton
        for (auto& row : zero)
            for (auto& x : row) ASSERT_TRUE(x.is_zero());
        // power_mod agrees with the companion action on e_0
        for (int k = 0; k < 2 * e; ++k) {
            auto pm = S::power_mod(f, k);
            auto v = S::zero_matrix(P, size_t(e), 1);
            v[0][0] = S::constant(P, 1);
            for (int s = 0; s < k; ++s) v = S::mat_mul(R, v);
            for (int i = 0; i < e; ++i) ASSERT_TRUE((pm[size_t(i)] - v[size_t(i)][0]).is_zero());
        }
    }
}

TEST(Poly, SigmaPartner) {
    // f = lambda^3 + 2 lambda^2 + 3 lambda + 4 -> -f(-lambda) = lambda^3 - 2 lambda^2 + 3 lambda - 4
    SeriesPoly f{S::constant(P, 4), S::constant(P, 3), S::constant(P, 2), S::constant(P, 1)};
    auto g = S::sigma_partner(f);
    EXPECT_EQ(g[0].coeff(0), P - 4);
    EXPECT_EQ(g[1].coeff(0), 3u);
    EXPECT_EQ(g[2].coeff(0), P - 2);
    EXPECT_EQ(g[3].coeff(0), 1u);
    auto gg = S::sigma_partner(g);
    for (size_t k = 0; k < f.size(); ++k) EXPECT_TRUE((gg[k] - f[k]).is_zero());
}
