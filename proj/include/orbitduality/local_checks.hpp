#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "formal_local.hpp"

namespace orbitduality {

// Randomized instances for the formal-local property checks.
struct LocalCase {
    Partition d;
    OrbitType type;
};

inline const std::vector<LocalCase>& local_case_pool() {
    static const std::vector<LocalCase> pool = {
        {{2, 2}, OrbitType::C},       {{3, 1, 1}, OrbitType::B}, {{4, 2}, OrbitType::C},
        {{2, 2, 2}, OrbitType::C},    {{3, 3, 1}, OrbitType::B}, {{4, 4}, OrbitType::C},
        {{5, 2, 2, 1, 1}, OrbitType::B}, {{3, 3, 2, 2}, OrbitType::C}, {{6, 2}, OrbitType::C},
    };
    return pool;
}

inline LocalCharData local_instance(u32 prime, std::uint64_t seed) {
    const auto& pool = local_case_pool();
    const auto& c = pool[seed % pool.size()];
    return sample_generic_char(c.d, c.type, prime, 0, seed * 7919 + 17);
}

struct LocalCheck {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        ok = false;
        if (detail.empty()) detail = why;
    }
};

inline std::string describe(const LocalCharData& chi) {
    return to_string(chi.target) + type_char(chi.type) + " p=" + std::to_string(chi.p);
}

// Every pair of factors: order of the resultant is exactly the smaller degree.
inline LocalCheck resultant_check(const LocalCharData& chi) {
    LocalCheck r;
    for (size_t i = 0; i < chi.factors.size(); ++i)
        for (size_t j = 0; j < chi.factors.size(); ++j) {
            if (i == j) continue;
            int want = std::min(chi.degrees[i], chi.degrees[j]);
            auto o = resultant_order(chi.factors[i], chi.factors[j]);
            if (!o || *o != want)
                r.fail("ord res(" + std::to_string(i) + "," + std::to_string(j) + ") = " + (o ? std::to_string(*o) : "?") +
                       ", want " + std::to_string(want));
        }
    return r;
}

// Sampled factors are Eisenstein; multiplying the constant term by t must break it.
inline LocalCheck eisenstein_check(const LocalCharData& chi) {
    LocalCheck r;
    for (size_t i = 0; i < chi.factors.size(); ++i) {
        if (int(i) == chi.lambda_factor) continue;
        if (!is_eisenstein(chi.factors[i])) r.fail("factor " + std::to_string(i) + " not Eisenstein");
        auto bad = chi.factors[i];
        bad[0] = bad[0] * series::monomial(chi.p, 1, 1);
        if (is_eisenstein(bad)) r.fail("t-multiplied factor " + std::to_string(i) + " still Eisenstein");
    }
    return r;
}

struct CoefficientCheck : LocalCheck {
    bool all_equal = true;  // equality at every even index
};

inline CoefficientCheck coefficient_check(const LocalCharData& chi) {
    CoefficientCheck r;
    auto rep = assumption_check(chi);
    for (auto& c : rep.coefficients) {
        if (!c.ok) r.fail("ord a_" + std::to_string(c.i) + " below " + std::to_string(c.bound));
        if (c.i % 2 == 0 && !c.equal) r.all_equal = false;
    }
    if (!rep.partial_ok) r.fail("partial sums exceed 1");
    return r;
}

namespace detail {

inline std::vector<size_t> block_of_rows(const LocalCharData& chi) {
    std::vector<size_t> blk;
    for (size_t q = 0; q < chi.degrees.size(); ++q)
        for (int r = 0; r < chi.degrees[q]; ++r) blk.push_back(q);
    return blk;
}

// Integral series with random coefficients; lowest order `from`.
inline Series random_integral(std::mt19937_64& rng, u32 p, int N, int from) {
    std::vector<u32> c(size_t(N), 0);
    for (int k = from; k < N; ++k) c[size_t(k)] = u32(rng() % p);
    return series::from_coeffs(p, c, N);
}

} // namespace detail

// Companion blocks on the diagonal, random entries above them; min_order 1 keeps the coupling in t*O.
inline SeriesMatrix random_theta(const LocalCharData& chi, std::mt19937_64& rng, int min_order) {
    auto Th = companion_block_matrix(chi.factors);
    auto blk = detail::block_of_rows(chi);
    for (size_t i = 0; i < Th.size(); ++i)
        for (size_t j = 0; j < Th.size(); ++j)
            if (blk[i] < blk[j]) Th[i][j] = detail::random_integral(rng, chi.p, chi.N, min_order);
    return Th;
}

// Coupling B = A X - X D + t R for random integral X, R: order-0 entries, yet F always splits.
inline SeriesMatrix coboundary_theta(const LocalCharData& chi, std::mt19937_64& rng) {
    auto Th = random_theta(chi, rng, 1);
    size_t n = Th.size(), k = size_t(chi.degrees[0]);
    auto A = series::block(Th, 0, k, 0, k), D = series::block(Th, k, n, k, n);
    auto X = series::zero_matrix(chi.p, k, n - k);
    for (auto& row : X)
        for (auto& x : row) x = detail::random_integral(rng, chi.p, chi.N, 0);
    auto C = series::mat_add(series::mat_mul(A, X), series::mat_scale(series::mat_mul(X, D), series::constant(chi.p, chi.p - 1)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = k; j < n; ++j) Th[i][j] = Th[i][j] + C[i][j - k];
    return Th;
}

// Unipotent changes of basis that keep the flag span(e_1..e_k) fixed, and their exact inverses.
inline std::pair<SeriesMatrix, SeriesMatrix> random_flag_change(u32 p, int N, size_t n, size_t k, std::mt19937_64& rng) {
    auto I = series::identity(p, n);
    auto upper = series::zero_matrix(p, n, n), lower = series::zero_matrix(p, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i < j) upper[i][j] = detail::random_integral(rng, p, N, 0);
            bool same = (i < k) == (j < k);
            if (i > j && same) lower[i][j] = detail::random_integral(rng, p, N, 0);
        }
    auto inv_unipotent = [&](const SeriesMatrix& Nil) {
        auto acc = I, term = I;
        auto neg = series::mat_scale(Nil, series::constant(p, p - 1));
        for (size_t m = 1; m < n; ++m) {
            term = series::mat_mul(term, neg);
            acc = series::mat_add(acc, term);
        }
        return acc;
    };
    auto U = series::mat_add(I, upper), L = series::mat_add(I, lower);
    auto P = series::mat_mul(L, U);
    auto Pinv = series::mat_mul(inv_unipotent(upper), inv_unipotent(lower));
    return {P, Pinv};
}

// Criterion against the explicit section search on a random coupling, on a t*O coupling
// (which must split), and after a flag-preserving change of basis.
inline LocalCheck splitting_check(const LocalCharData& chi, std::uint64_t seed) {
    LocalCheck r;
    std::mt19937_64 rng(seed ^ 0x5bd1e995ull);
    size_t k = size_t(chi.degrees[0]);
    try {
        auto Th = seed % 2 ? random_theta(chi, rng, 0) : coboundary_theta(chi, rng);
        bool a = splitting_criterion(Th, k), b = splitting_brute_force(Th, k);
        if (a != b) r.fail("criterion " + std::to_string(a) + " vs section search " + std::to_string(b));

        auto W = random_theta(chi, rng, 1);
        if (!splitting_criterion(W, k) || !splitting_brute_force(W, k)) r.fail("t-coupled instance does not split");

        auto [P, Pinv] = random_flag_change(chi.p, chi.N, Th.size(), k, rng);
        auto Th2 = series::mat_mul(series::mat_mul(P, Th), Pinv);
        for (size_t i = k; i < Th2.size(); ++i)
            for (size_t j = 0; j < k; ++j) {
                if (!Th2[i][j].is_zero()) r.fail("basis change does not preserve the flag");
                Th2[i][j] = series::zero(chi.p);  // truncated zero -> exact zero
            }
        bool c = splitting_criterion(Th2, k);
        if (c != a) r.fail("criterion changes under a flag-preserving basis change");
    } catch (const Error& e) {
        r.fail(e.what());
    }
    return r;
}

// Restriction forms of even self-dual factors are 1-degenerate and orders add over orthogonal sums.
inline LocalCheck degeneracy_check(const LocalCharData& chi) {
    LocalCheck r;
    std::vector<SeriesMatrix> grams;
    for (size_t i = 0; i < chi.factors.size(); ++i)
        if (chi.degrees[i] % 2 == 0 && chi.partner[i] == int(i)) grams.push_back(restriction_gram(chi.factors[i]));
    int sum = 0;
    size_t n = 0;
    for (auto& G : grams) {
        int o = degeneracy_order(G);
        if (o != 1) r.fail("restriction form has degeneracy " + std::to_string(o));
        sum += o;
        n += G.size();
    }
    auto S = series::zero_matrix(chi.p, n, n);
    size_t off = 0;
    for (auto& G : grams) {
        for (size_t i = 0; i < G.size(); ++i)
            for (size_t j = 0; j < G.size(); ++j) S[off + i][off + j] = G[i][j];
        off += G.size();
    }
    if (n && degeneracy_order(S) != sum) r.fail("degeneracy of the orthogonal sum is not additive");
    return r;
}

} // namespace orbitduality
