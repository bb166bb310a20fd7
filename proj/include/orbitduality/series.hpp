#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modp.hpp"

namespace orbitduality {

// Element of F_p((t)) known to finite absolute precision.
//   nonzero: t^val * (u[0] + u[1] t + ...), u[0] != 0, known modulo t^(val + rel);
//            coefficients past u.size() and below rel are zero.
//   zero:    u empty, value is 0 modulo t^val (val == kExact means exactly zero).
struct Series {
    static constexpr int kExact = 1 << 28;

    u32 p = 0;
    int val = kExact;
    int rel = kExact;
    std::vector<u32> u;

    bool is_zero() const { return u.empty(); }
    int abs_prec() const {
        if (is_zero()) return val;
        return rel >= kExact ? kExact : val + rel;
    }
    bool exact() const { return abs_prec() >= kExact; }

    // t-order when it is determined by the known digits.
    std::optional<int> order() const {
        if (is_zero()) return std::nullopt;
        return val;
    }
    // Coefficient of t^k; throws when k is at or past the precision.
    u32 coeff(int k) const {
        if (k >= abs_prec()) throw Error(ErrorKind::PrecisionLoss, "coefficient t^" + std::to_string(k) + " beyond precision");
        if (is_zero() || k < val) return 0;
        size_t i = size_t(k - val);
        return i < u.size() ? u[i] : 0;
    }

    std::string str() const {
        std::ostringstream os;
        if (is_zero()) {
            os << "0";
        } else {
            bool first = true;
            for (size_t i = 0; i < u.size(); ++i) {
                if (!u[i]) continue;
                os << (first ? "" : " + ") << u[i];
                int e = val + int(i);
                if (e == 1) os << "t";
                else if (e != 0) os << "t^" << e;
                first = false;
            }
        }
        if (!exact()) os << " + O(t^" << abs_prec() << ")";
        return os.str();
    }
};

namespace series {

inline Series zero(u32 p, int abs = Series::kExact) {
    Series s;
    s.p = p;
    s.val = abs;
    return s;
}

// Build from coefficients c_0.. with absolute precision abs (kExact for polynomials).
inline Series from_coeffs(u32 p, const std::vector<u32>& c, int abs = Series::kExact, int shift = 0) {
    size_t k = 0;
    while (k < c.size() && c[k] % p == 0) ++k;
    int limit = abs;
    if (k == c.size() || int(k) + shift >= limit) return zero(p, limit);
    Series s;
    s.p = p;
    s.val = int(k) + shift;
    size_t end = c.size();
    if (limit < Series::kExact) end = std::min(end, size_t(limit - shift));
    for (size_t i = k; i < end; ++i) s.u.push_back(c[i] % p);
    while (!s.u.empty() && s.u.back() == 0) s.u.pop_back();
    s.rel = limit >= Series::kExact ? Series::kExact : limit - s.val;
    return s;
}

inline Series constant(u32 p, u32 c) { return from_coeffs(p, {c}); }

inline Series monomial(u32 p, u32 c, int e) {
    Series s = constant(p, c);
    if (!s.is_zero()) s.val = e;
    return s;
}

inline Series truncate(Series s, int abs) {
    if (abs >= s.abs_prec()) return s;
    if (s.is_zero()) return zero(s.p, abs);
    if (abs <= s.val) return zero(s.p, abs);
    s.rel = abs - s.val;
    if (s.u.size() > size_t(s.rel)) s.u.resize(s.rel);
    while (!s.u.empty() && s.u.back() == 0) s.u.pop_back();
    return s;
}

inline Series add(const Series& a, const Series& b) {
    Field F;
    F.p = a.p;
    int abs = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_zero() && b.is_zero()) return zero(a.p, abs);
    int lo = INT_MAX, hi = INT_MIN;
    for (const Series* s : {&a, &b}) {
        if (s->is_zero()) continue;
        lo = std::min(lo, s->val);
        hi = std::max(hi, s->val + int(s->u.size()));
    }
    if (abs < Series::kExact) hi = std::min(hi, abs);
    if (lo >= hi) return zero(a.p, abs);
    std::vector<u32> c(size_t(hi - lo), 0);
    for (const Series* s : {&a, &b}) {
        if (s->is_zero()) continue;
        for (size_t i = 0; i < s->u.size(); ++i) {
            int e = s->val + int(i);
            if (e >= hi) break;
            c[e - lo] = F.add(c[e - lo], s->u[i]);
        }
    }
    return from_coeffs(a.p, c, abs, lo);
}

inline Series neg(Series a) {
    for (auto& x : a.u) x = x ? a.p - x : 0;
    return a;
}

inline Series sub(const Series& a, const Series& b) { return add(a, neg(b)); }

inline Series mul(const Series& a, const Series& b) {
    if (a.is_zero() || b.is_zero()) {
        // 0 mod t^A times x is 0 mod t^(A + ord x); an exact zero stays exact
        auto low = [](const Series& s) { return long(s.val); };
        long abs = (a.is_zero() && a.exact()) || (b.is_zero() && b.exact()) ? long(Series::kExact)
                                                                             : low(a) + low(b);
        return zero(a.p, int(std::min<long>(abs, Series::kExact)));
    }
    int rel = std::min(a.rel, b.rel);
    size_t len = a.u.size() + b.u.size() - 1;
    if (rel < Series::kExact) len = std::min(len, size_t(rel));
    std::vector<u32> c(len, 0);
    for (size_t k = 0; k < len; ++k) {
        u64 acc = 0;
        size_t lo = k + 1 > b.u.size() ? k + 1 - b.u.size() : 0, hi = std::min(k + 1, a.u.size());
        for (size_t i = lo; i < hi; ++i) {
            acc += u64(a.u[i]) * b.u[k - i];
            if (acc >> 63) acc %= a.p;
        }
        c[k] = u32(acc % a.p);
    }
    Series s;
    s.p = a.p;
    s.val = a.val + b.val;
    s.rel = rel;
    s.u = c;
    while (!s.u.empty() && s.u.back() == 0) s.u.pop_back();
    return s;
}

inline Series scale(const Series& a, u32 c) { return mul(a, constant(a.p, c)); }

// Relative precision kept when inverting an exact non-monomial.
inline constexpr int kInverseDigits = 64;

inline Series inverse(const Series& a) {
    if (a.is_zero()) throw Error(ErrorKind::SingularQuotient, "division by a series that vanishes to known precision");
    Field F;
    F.p = a.p;
    int len = a.rel >= Series::kExact ? kInverseDigits : a.rel;
    bool exact_unit = a.rel >= Series::kExact && a.u.size() == 1;
    if (exact_unit) len = 1;
    std::vector<u32> inv(size_t(len), 0);
    u32 i0 = F.inv(a.u[0]);
    inv[0] = i0;
    for (int k = 1; k < len; ++k) {
        u32 acc = 0;
        for (int j = 1; j <= k && j < int(a.u.size()); ++j) acc = F.add(acc, F.mul(a.u[j], inv[k - j]));
        inv[k] = F.mul(F.neg(acc), i0);
    }
    Series s;
    s.p = a.p;
    s.val = -a.val;
    s.rel = exact_unit ? Series::kExact : len;
    s.u = inv;
    while (!s.u.empty() && s.u.back() == 0) s.u.pop_back();
    return s;
}

inline Series div(const Series& a, const Series& b) { return mul(a, inverse(b)); }

} // namespace series

inline Series operator+(const Series& a, const Series& b) { return series::add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return series::sub(a, b); }
inline Series operator-(const Series& a) { return series::neg(a); }
inline Series operator*(const Series& a, const Series& b) { return series::mul(a, b); }
inline Series operator/(const Series& a, const Series& b) { return series::div(a, b); }

// Polynomial in lambda with series coefficients, low degree first.
using SeriesPoly = std::vector<Series>;
using SeriesMatrix = std::vector<std::vector<Series>>;

namespace series {

inline SeriesMatrix zero_matrix(u32 p, size_t r, size_t c) {
    return SeriesMatrix(r, std::vector<Series>(c, zero(p)));
}

inline SeriesMatrix identity(u32 p, size_t n) {
    auto m = zero_matrix(p, n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = constant(p, 1);
    return m;
}

inline SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    u32 p = a[0][0].p;
    size_t n = a.size(), k = b.size(), m = b[0].size();
    auto c = zero_matrix(p, n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Series acc = zero(p);
            for (size_t l = 0; l < k; ++l)
                if (!(a[i][l].is_zero() && a[i][l].exact()) && !(b[l][j].is_zero() && b[l][j].exact()))
                    acc = acc + a[i][l] * b[l][j];
            c[i][j] = acc;
        }
    return c;
}

inline SeriesMatrix mat_add(const SeriesMatrix& a, const SeriesMatrix& b) {
    auto c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}

inline SeriesMatrix mat_scale(const SeriesMatrix& a, const Series& s) {
    auto c = a;
    for (auto& row : c)
        for (auto& x : row) x = x * s;
    return c;
}

inline SeriesMatrix block(const SeriesMatrix& a, size_t r0, size_t r1, size_t c0, size_t c1) {
    SeriesMatrix out;
    for (size_t i = r0; i < r1; ++i) out.emplace_back(a[i].begin() + c0, a[i].begin() + c1);
    return out;
}

inline int min_abs(const SeriesMatrix& a) {
    int m = Series::kExact;
    for (auto& row : a)
        for (auto& x : row) m = std::min(m, x.abs_prec());
    return m;
}

// Key used to pick pivots: t-order for nonzero entries, precision for unknown zeros.
inline int pivot_key(const Series& s) { return s.is_zero() ? Series::kExact + 1 : s.val; }

// Determinant by elimination with a minimal-order pivot, staying inside F_p[[t]].
inline Series det(SeriesMatrix a) {
    size_t n = a.size();
    u32 p = n ? a[0][0].p : 0;
    Series d = constant(p, 1);
    for (size_t k = 0; k < n; ++k) {
        size_t bi = k, bj = k;
        int best = pivot_key(a[k][k]);
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j)
                if (pivot_key(a[i][j]) < best) {
                    best = pivot_key(a[i][j]);
                    bi = i;
                    bj = j;
                }
        if (a[bi][bj].is_zero()) {
            // Remaining block vanishes to its precision; so does its determinant.
            long rest = 0;
            int lo = Series::kExact;
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < n; ++j) lo = std::min(lo, a[i][j].abs_prec());
            rest = lo >= Series::kExact ? Series::kExact : std::min<long>(long(lo) * long(n - k), Series::kExact);
            return d * zero(p, int(rest));
        }
        if (bi != k) {
            std::swap(a[bi], a[k]);
            d = -d;
        }
        if (bj != k) {
            for (auto& row : a) std::swap(row[bj], row[k]);
            d = -d;
        }
        Series piv = a[k][k];
        d = d * piv;
        Series ipiv = inverse(piv);
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero() && a[i][k].exact()) continue;
            Series f = a[i][k] * ipiv;
            for (size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
        }
    }
    return d;
}

inline SeriesMatrix minor_matrix(const SeriesMatrix& a, size_t r, size_t c) {
    SeriesMatrix m;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i == r) continue;
        std::vector<Series> row;
        for (size_t j = 0; j < a.size(); ++j)
            if (j != c) row.push_back(a[i][j]);
        m.push_back(row);
    }
    return m;
}

inline SeriesMatrix adjugate(const SeriesMatrix& a) {
    size_t n = a.size();
    u32 p = a[0][0].p;
    auto adj = zero_matrix(p, n, n);
    if (n == 1) {
        adj[0][0] = constant(p, 1);
        return adj;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Series m = det(minor_matrix(a, i, j));
            adj[j][i] = (i + j) % 2 ? -m : m;
        }
    return adj;
}

// Solves a x = b over F_p((t)) by Gauss-Jordan with minimal-order pivots.
inline std::vector<Series> solve(SeriesMatrix a, std::vector<Series> b) {
    size_t n = a.size();
    std::vector<size_t> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = i;
    for (size_t k = 0; k < n; ++k) {
        size_t bi = k, bj = k;
        int best = Series::kExact + 2;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j)
                if (pivot_key(a[i][j]) < best) {
                    best = pivot_key(a[i][j]);
                    bi = i;
                    bj = j;
                }
        if (a[bi][bj].is_zero()) throw Error(ErrorKind::SingularQuotient, "linear system is singular to known precision");
        std::swap(a[bi], a[k]);
        std::swap(b[bi], b[k]);
        for (auto& row : a) std::swap(row[bj], row[k]);
        std::swap(col[bj], col[k]);
        Series ipiv = inverse(a[k][k]);
        for (size_t j = k; j < n; ++j) a[k][j] = a[k][j] * ipiv;
        b[k] = b[k] * ipiv;
        for (size_t i = 0; i < n; ++i) {
            if (i == k || (a[i][k].is_zero() && a[i][k].exact())) continue;
            Series f = a[i][k];
            for (size_t j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
            b[i] = b[i] - f * b[k];
        }
    }
    std::vector<Series> x(n);
    for (size_t k = 0; k < n; ++k) x[col[k]] = b[k];
    return x;
}

// ---- polynomials in lambda ----

inline int degree(const SeriesPoly& f) { return int(f.size()) - 1; }

inline SeriesPoly poly_mul(const SeriesPoly& a, const SeriesPoly& b) {
    u32 p = a[0].p;
    SeriesPoly c(a.size() + b.size() - 1, zero(p));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return c;
}

// g(lambda) = -f(-lambda) for odd degree, f(-lambda) for even degree (keeps g monic).
inline SeriesPoly sigma_partner(const SeriesPoly& f) {
    SeriesPoly g = f;
    int e = degree(f);
    for (int k = 0; k <= e; ++k)
        if ((e - k) % 2 != 0) g[k] = -g[k];
    return g;
}

// Companion matrix: ones on the subdiagonal, last column -a_0..-a_{e-1}.
inline SeriesMatrix companion(const SeriesPoly& f) {
    u32 p = f[0].p;
    size_t e = size_t(degree(f));
    auto R = zero_matrix(p, e, e);
    for (size_t i = 1; i < e; ++i) R[i][i - 1] = constant(p, 1);
    for (size_t i = 0; i < e; ++i) R[i][e - 1] = -f[i];
    return R;
}

inline SeriesMatrix poly_eval(const SeriesPoly& f, const SeriesMatrix& A) {
    u32 p = f[0].p;
    size_t n = A.size();
    auto acc = zero_matrix(p, n, n);
    for (int k = degree(f); k >= 0; --k) {
        acc = mat_mul(acc, A);
        for (size_t i = 0; i < n; ++i) acc[i][i] = acc[i][i] + f[size_t(k)];
    }
    return acc;
}

// Characteristic polynomial det(x I - A) by interpolation at x = 0..n.
inline SeriesPoly charpoly(const SeriesMatrix& A) {
    size_t n = A.size();
    u32 p = A[0][0].p;
    Field F(p);
    if (p <= n) throw Error(ErrorKind::Usage, "prime too small for interpolation");
    std::vector<Series> vals;
    for (size_t x = 0; x <= n; ++x) {
        auto M = A;
        for (auto& row : M)
            for (auto& e : row) e = -e;
        for (size_t i = 0; i < n; ++i) M[i][i] = M[i][i] + constant(p, u32(x));
        vals.push_back(det(M));
    }
    // Lagrange basis polynomials over F_p.
    SeriesPoly out(n + 1, zero(p));
    for (size_t i = 0; i <= n; ++i) {
        std::vector<u32> basis{1};
        u32 denom = 1;
        for (size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<u32> nb(basis.size() + 1, 0);
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] = F.add(nb[k + 1], basis[k]);
                nb[k] = F.sub(nb[k], F.mul(basis[k], u32(j)));
            }
            basis = nb;
            denom = F.mul(denom, F.sub(u32(i), u32(j)));
        }
        u32 idn = F.inv(denom);
        for (size_t k = 0; k <= n; ++k) out[k] = out[k] + scale(vals[i], F.mul(basis[k], idn));
    }
    return out;
}

// lambda^k reduced modulo the monic f, as a coefficient vector of length deg f.
inline std::vector<Series> power_mod(const SeriesPoly& f, int k) {
    u32 p = f[0].p;
    int e = degree(f);
    std::vector<Series> r(size_t(e), zero(p));
    if (e == 0) return r;
    r[0] = constant(p, 1);
    for (int s = 0; s < k; ++s) {
        Series top = r[size_t(e - 1)];
        for (int i = e - 1; i > 0; --i) r[size_t(i)] = r[size_t(i - 1)];
        r[0] = zero(p);
        for (int i = 0; i < e; ++i) r[size_t(i)] = r[size_t(i)] - top * f[size_t(i)];
    }
    return r;
}

} // namespace series

} // namespace orbitduality
