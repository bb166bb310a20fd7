#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orbit.hpp"
#include "series.hpp"

namespace orbitduality {

struct LocalCharData {
    u32 p = 101;
    int N = 0;
    OrbitType type = OrbitType::C;
    Partition target;              // d (type B: d_B)
    std::vector<SeriesPoly> factors;
    std::vector<int> degrees;
    std::vector<int> partner;      // f_partner(lambda) = +-f_i(-lambda); partner == i for self-dual factors
    std::vector<u32> residues;     // (f_i(0)/t)(0)
    int lambda_factor = -1;        // index of the bare lambda factor (type B)
    int delta = 0;
    int attempts = 0;

    int dim() const {
        int s = 0;
        for (int e : degrees) s += e;
        return s;
    }
};

inline int default_truncation(const Partition& d) {
    int m = 0;
    for (int x : d) m = std::max(m, x);
    return 2 * m + 2;
}

namespace detail {

// Order of coefficient-wise Eisenstein: f(0) of order exactly 1, the rest of order >= 1.
inline bool eisenstein(const SeriesPoly& f) {
    int e = series::degree(f);
    if (e < 1) return false;
    const Series& c0 = f[0];
    if (c0.is_zero() || c0.val != 1) return false;
    for (int k = 1; k < e; ++k) {
        const Series& a = f[size_t(k)];
        if (a.is_zero()) {
            if (a.abs_prec() < 1) return false;
        } else if (a.val < 1) {
            return false;
        }
    }
    return true;
}

} // namespace detail

inline bool is_eisenstein(const SeriesPoly& f) { return detail::eisenstein(f); }

// Product of all factors, monic of degree dim; a_i is the coefficient of lambda^(dim - i).
inline SeriesPoly expand(const LocalCharData& chi) {
    SeriesPoly acc{series::constant(chi.p, 1)};
    for (auto& f : chi.factors) acc = series::poly_mul(acc, f);
    return acc;
}

inline Series char_coefficient(const SeriesPoly& prod, int i) {
    int D = series::degree(prod);
    return prod[size_t(D - i)];
}

// ord_t bound on a_i: number of leading parts needed to reach i.
inline int coefficient_bound(const Partition& d, int i) {
    int s = 0;
    for (size_t j = 0; j < d.size(); ++j) {
        s += d[j];
        if (s >= i) return int(j) + 1;
    }
    return int(d.size()) + 1;
}

struct ResultantEntry {
    int i = 0, j = 0;  // e_i >= e_j
    std::optional<int> order;
    int expected = 0;
    bool ok = false;
};

struct CoefficientEntry {
    int i = 0;
    std::optional<int> order;  // nullopt: vanishes to known precision
    int known_to = 0;
    int bound = 0;
    bool ok = false;
    bool equal = false;
};

struct AssumptionReport {
    std::vector<bool> eisenstein;
    std::vector<ResultantEntry> resultants;
    std::vector<int> partial_sums;  // sum_{j<=i}(d_j - e_j)
    bool partial_ok = true;
    bool degrees_ok = true;
    std::vector<CoefficientEntry> coefficients;
    std::vector<std::string> failures;

    bool eisenstein_ok() const { return std::all_of(eisenstein.begin(), eisenstein.end(), [](bool b) { return b; }); }
    bool resultants_ok() const {
        return std::all_of(resultants.begin(), resultants.end(), [](auto& r) { return r.ok; });
    }
    bool coefficients_ok() const {
        return std::all_of(coefficients.begin(), coefficients.end(), [](auto& c) { return c.ok; });
    }
    bool ok() const { return failures.empty(); }
};

inline std::optional<int> resultant_order(const SeriesPoly& fi, const SeriesPoly& fj) {
    auto R = series::companion(fj);
    Series d = series::det(series::poly_eval(fi, R));
    return d.order();
}

inline AssumptionReport assumption_check(const LocalCharData& chi) {
    AssumptionReport r;
    size_t k = chi.factors.size();
    for (size_t i = 0; i < k; ++i) {
        bool e = int(i) == chi.lambda_factor || detail::eisenstein(chi.factors[i]);
        r.eisenstein.push_back(e);
        if (!e) r.failures.push_back("factor " + std::to_string(i) + " is not Eisenstein");
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (i == j || chi.degrees[i] < chi.degrees[j]) continue;
            if (chi.degrees[i] == chi.degrees[j] && i > j) continue;  // symmetric up to sign
            ResultantEntry e;
            e.i = int(i);
            e.j = int(j);
            e.expected = chi.degrees[j];
            try {
                e.order = resultant_order(chi.factors[i], chi.factors[j]);
            } catch (const Error&) {
                e.order.reset();
            }
            e.ok = e.order && *e.order == e.expected;
            if (!e.ok)
                r.failures.push_back("resultant(" + std::to_string(i) + "," + std::to_string(j) + ") order " +
                                     (e.order ? std::to_string(*e.order) : "unknown") + " != " +
                                     std::to_string(e.expected));
            r.resultants.push_back(e);
        }
    Partition d = canonical(chi.target);
    Partition deg = canonical(chi.degrees);
    r.degrees_ok = total(d) == total(deg) && total(d) == chi.dim();
    if (!r.degrees_ok) r.failures.push_back("degree sum does not match the ambient dimension");
    int s = 0;
    for (size_t i = 0; i < std::max(d.size(), deg.size()); ++i) {
        s += (i < d.size() ? d[i] : 0) - (i < deg.size() ? deg[i] : 0);
        r.partial_sums.push_back(s);
        if (s > 1) r.partial_ok = false;
    }
    if (!r.partial_ok) r.failures.push_back("partial sums of d - deg exceed 1");

    auto prod = expand(chi);
    int D = series::degree(prod);
    for (int i = 1; i <= D; ++i) {
        CoefficientEntry c;
        c.i = i;
        Series a = char_coefficient(prod, i);
        c.bound = coefficient_bound(d, i);
        c.order = a.order();
        c.known_to = a.abs_prec();
        if (c.order) {
            c.ok = *c.order >= c.bound;
            c.equal = *c.order == c.bound;
        } else {
            c.ok = c.known_to >= c.bound;
        }
        if (!c.ok) r.failures.push_back("ord a_" + std::to_string(i) + " below bound " + std::to_string(c.bound));
        r.coefficients.push_back(c);
    }
    return r;
}

namespace detail {

inline std::vector<u32> random_tail(std::mt19937_64& rng, u32 p, int len) {
    std::uniform_int_distribution<u32> dist(0, p - 1);
    std::vector<u32> v(size_t(std::max(len, 0)));
    for (auto& x : v) x = dist(rng);
    return v;
}

// t * (lead + r_1 t + r_2 t^2 + ...) known modulo t^N.
inline Series t_multiple(std::mt19937_64& rng, u32 p, int N, u32 lead) {
    auto c = random_tail(rng, p, N - 1);
    c.insert(c.begin(), 0);
    if (c.size() > 1) c[1] = lead;
    return series::from_coeffs(p, c, N);
}

// Degrees of the factors and their sigma pairing, in a fixed order.
struct FactorPlan {
    std::vector<int> degrees;
    std::vector<int> partner;
    int lambda_factor = -1;
};

inline FactorPlan plan_factors(const Partition& d, OrbitType t) {
    FactorPlan plan;
    Partition src = t == OrbitType::C ? canonical(d) : orbit_invariants(d, OrbitType::B).degree_partition;
    if (t == OrbitType::B) src.pop_back();  // the lambda factor is added separately
    std::map<int, int> odd_count;
    for (int e : src)
        if (e % 2) ++odd_count[e];
    for (auto& [e, m] : odd_count)
        if (m % 2) throw Error(ErrorKind::ParityMismatch, "odd degree " + std::to_string(e) + " has odd multiplicity");
    std::map<int, int> pending;
    for (int e : src) {
        int idx = int(plan.degrees.size());
        plan.degrees.push_back(e);
        plan.partner.push_back(idx);
        if (e % 2) {
            auto it = pending.find(e);
            if (it != pending.end() && it->second >= 0) {
                plan.partner[idx] = it->second;
                plan.partner[it->second] = idx;
                it->second = -1;
            } else {
                pending[e] = idx;
            }
        }
    }
    if (t == OrbitType::B) {
        plan.lambda_factor = int(plan.degrees.size());
        plan.degrees.push_back(1);
        plan.partner.push_back(plan.lambda_factor);
    }
    return plan;
}

} // namespace detail

inline int factor_count(const Partition& d, OrbitType t) { return int(detail::plan_factors(d, t).degrees.size()); }

inline LocalCharData sample_generic_char(const Partition& d0, OrbitType t, u32 prime, int N, std::uint64_t seed,
                                         int max_attempts = 100, bool enforce_prime_bound = true) {
    Partition d = canonical(d0);
    if (!is_special(d, t)) throw Error(ErrorKind::NotSpecial, to_string(d) + " is not special");
    Field F(prime);
    if (N <= 0) N = default_truncation(d);
    int maxpart = d.empty() ? 0 : d[0];
    if (N < 2 * maxpart) throw Error(ErrorKind::Usage, "truncation N must be at least twice the largest part");
    auto plan = detail::plan_factors(d, t);
    u64 k = plan.degrees.size();
    if (enforce_prime_bound && u64(prime) <= 4 * k * k) throw Error(ErrorKind::Usage, "prime must exceed 4k^2 for k factors");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u32> nonzero(1, prime - 1), any(0, prime - 1);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        LocalCharData chi;
        chi.p = prime;
        chi.N = N;
        chi.type = t;
        chi.target = d;
        chi.degrees = plan.degrees;
        chi.partner = plan.partner;
        chi.lambda_factor = plan.lambda_factor;
        chi.factors.assign(k, {});
        chi.residues.assign(k, 0);
        chi.attempts = attempt;
        for (size_t i = 0; i < k; ++i) {
            int e = plan.degrees[i];
            if (int(i) == plan.lambda_factor) {
                chi.factors[i] = {series::zero(prime), series::constant(prime, 1)};
                continue;
            }
            size_t j = size_t(plan.partner[i]);
            if (j < i) {
                chi.factors[i] = series::sigma_partner(chi.factors[j]);
                chi.residues[i] = F.neg(chi.residues[j]);
                continue;
            }
            SeriesPoly f(size_t(e) + 1, series::zero(prime));
            f[size_t(e)] = series::constant(prime, 1);
            u32 c = nonzero(rng);
            f[0] = detail::t_multiple(rng, prime, N, c);
            for (int m = 1; m < e; ++m) {
                if (j == i && e % 2 == 0 && m % 2) continue;  // self-dual: polynomial in lambda^2
                f[size_t(m)] = detail::t_multiple(rng, prime, N, any(rng));
            }
            chi.factors[i] = f;
            chi.residues[i] = c;
        }
        std::set<u32> seen;
        bool distinct = true;
        for (size_t i = 0; i < k; ++i) {
            if (int(i) == plan.lambda_factor) continue;
            distinct = distinct && seen.insert(chi.residues[i]).second;
        }
        if (!distinct) continue;
        if (!assumption_check(chi).ok()) continue;
        auto prod = expand(chi);
        int n2 = t == OrbitType::C ? total(d) : total(d) - 1;
        auto a = char_coefficient(prod, n2);
        chi.delta = a.order() ? *a.order() / 2 : -1;
        return chi;
    }
    throw Error(ErrorKind::RetriesExhausted,
                "no generic draw for " + to_string(d) + " after " + std::to_string(max_attempts) + " attempts");
}

// Block upper triangular matrix with the companion matrices of the factors on the diagonal.
inline SeriesMatrix companion_block_matrix(const std::vector<SeriesPoly>& fs) {
    u32 p = fs[0][0].p;
    size_t n = 0;
    for (auto& f : fs) n += size_t(series::degree(f));
    auto M = series::zero_matrix(p, n, n);
    size_t off = 0;
    for (auto& f : fs) {
        auto R = series::companion(f);
        for (size_t i = 0; i < R.size(); ++i)
            for (size_t j = 0; j < R.size(); ++j) M[off + i][off + j] = R[i][j];
        off += R.size();
    }
    return M;
}

// F = span of the first F_size basis vectors is a theta-direct summand iff M chi_F(D)^{-1} is integral.
inline bool splitting_criterion(const SeriesMatrix& theta, size_t F_size) {
    size_t n = theta.size();
    if (F_size == 0 || F_size >= n) return true;
    for (size_t i = F_size; i < n; ++i)
        for (size_t j = 0; j < F_size; ++j)
            if (!theta[i][j].is_zero()) throw Error(ErrorKind::Usage, "theta is not block upper triangular");
    auto A = series::block(theta, 0, F_size, 0, F_size);
    auto D = series::block(theta, F_size, n, F_size, n);
    auto chi = series::charpoly(A);
    auto full = series::poly_eval(chi, theta);
    auto M = series::block(full, 0, F_size, F_size, n);
    auto X = series::poly_eval(chi, D);
    Series dx = series::det(X);
    if (dx.is_zero()) throw Error(ErrorKind::SingularQuotient, "chi_F of the quotient is singular to known precision");
    int need = dx.val;
    auto Y = series::mat_mul(M, series::adjugate(X));
    for (auto& row : Y)
        for (auto& y : row) {
            if (y.is_zero()) {
                if (y.abs_prec() < need) throw Error(ErrorKind::PrecisionLoss, "entry of M adj(X) undetermined at order " + std::to_string(need));
            } else if (y.val < need) {
                return false;
            }
        }
    return true;
}

// The theta-compatible section is (Y v, v) with A Y - Y D = -B; F splits iff Y is integral.
inline std::optional<SeriesMatrix> compatible_section(const SeriesMatrix& theta, size_t F_size) {
    size_t n = theta.size(), k = F_size, m = n - F_size;
    u32 p = theta[0][0].p;
    auto A = series::block(theta, 0, k, 0, k);
    auto B = series::block(theta, 0, k, k, n);
    auto D = series::block(theta, k, n, k, n);
    size_t unknowns = k * m;
    auto S = series::zero_matrix(p, unknowns, unknowns);
    std::vector<Series> rhs(unknowns, series::zero(p));
    auto var = [&](size_t r, size_t c) { return r * m + c; };
    for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < m; ++c) {
            size_t eq = var(r, c);
            for (size_t l = 0; l < k; ++l) S[eq][var(l, c)] = S[eq][var(l, c)] + A[r][l];
            for (size_t l = 0; l < m; ++l) S[eq][var(r, l)] = S[eq][var(r, l)] - D[l][c];
            rhs[eq] = -B[r][c];
        }
    auto y = series::solve(S, rhs);
    SeriesMatrix Y = series::zero_matrix(p, k, m);
    for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < m; ++c) {
            const Series& v = y[var(r, c)];
            if (v.is_zero()) {
                if (v.abs_prec() < 0) throw Error(ErrorKind::PrecisionLoss, "section entry undetermined");
            } else if (v.val < 0) {
                return std::nullopt;
            }
            Y[r][c] = v;
        }
    return Y;
}

inline bool splitting_brute_force(const SeriesMatrix& theta, size_t F_size) {
    if (F_size == 0 || F_size >= theta.size()) return true;
    return compatible_section(theta, F_size).has_value();
}

inline int degeneracy_order(const SeriesMatrix& gram) {
    size_t n = gram.size();
    for (size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw Error(ErrorKind::Usage, "gram matrix is not square");
        for (size_t j = 0; j < i; ++j)
            if (!(gram[i][j] - gram[j][i]).is_zero()) throw Error(ErrorKind::Usage, "gram matrix is not symmetric");
    }
    if (n == 0) return 0;
    Series d = series::det(gram);
    if (d.is_zero()) throw Error(ErrorKind::FullyDegenerate, "determinant vanishes to order " + std::to_string(d.abs_prec()));
    return d.val;
}

// Trace-type form on O[lambda]/(f) for an even self-dual factor f:
// <lambda^a, lambda^b> = (-1)^b [lambda^(e-1)] (lambda^(a+b+1) mod f).
inline SeriesMatrix restriction_gram(const SeriesPoly& f) {
    int e = series::degree(f);
    u32 p = f[0].p;
    auto G = series::zero_matrix(p, size_t(e), size_t(e));
    for (int a = 0; a < e; ++a)
        for (int b = 0; b < e; ++b) {
            Series x = series::power_mod(f, a + b + 1)[size_t(e - 1)];
            G[size_t(a)][size_t(b)] = b % 2 ? -x : x;
        }
    return G;
}

} // namespace orbitduality
