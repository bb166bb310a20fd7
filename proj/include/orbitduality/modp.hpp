#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace orbitduality {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline bool is_prime(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Arithmetic in F_p for an odd prime p < 2^31.
struct Field {
    u32 p = 101;

    Field() = default;
    explicit Field(u32 prime) : p(prime) {
        if (prime < 3 || prime >= (1u << 31) || !is_prime(prime))
            throw Error(ErrorKind::Usage, "modulus must be an odd prime below 2^31, got " + std::to_string(prime));
    }

    u32 norm(long long x) const {
        long long r = x % (long long)p;
        return u32(r < 0 ? r + p : r);
    }
    u32 add(u32 a, u32 b) const { return u32((u64(a) + b) % p); }
    u32 sub(u32 a, u32 b) const { return u32((u64(a) + p - b) % p); }
    u32 neg(u32 a) const { return a ? p - a : 0; }
    u32 mul(u32 a, u32 b) const { return u32(u64(a) * b % p); }
    u32 pow(u32 a, u64 e) const {
        u64 r = 1, b = a;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return u32(r);
    }
    u32 inv(u32 a) const {
        if (a == 0) throw Error(ErrorKind::SingularQuotient, "inverse of zero in F_p");
        return pow(a, p - 2);
    }
    bool is_square(u32 a) const { return a == 0 || pow(a, (p - 1) / 2) == 1; }

    // Tonelli-Shanks; nullopt for non-residues.
    std::optional<u32> sqrt(u32 a) const {
        if (a == 0) return 0u;
        if (!is_square(a)) return std::nullopt;
        u32 q = p - 1, s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        u32 z = 2;
        while (is_square(z)) ++z;
        u32 m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
        while (t != 1) {
            u32 i = 0, tt = t;
            while (tt != 1) {
                tt = mul(tt, tt);
                ++i;
            }
            u32 b = c;
            for (u32 k = 0; k + i + 1 < m; ++k) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return std::min(r, p - r);
    }
    u32 non_residue() const {
        u32 z = 2;
        while (is_square(z)) ++z;
        return z;
    }
};

// Dense matrices over F_p, row major.
using FpMat = std::vector<std::vector<u32>>;

inline FpMat fp_zero(size_t r, size_t c) { return FpMat(r, std::vector<u32>(c, 0)); }

inline FpMat fp_mul(const Field& F, const FpMat& a, const FpMat& b) {
    size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    FpMat c = fp_zero(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            u32 x = a[i][l];
            if (!x) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] = F.add(c[i][j], F.mul(x, b[l][j]));
        }
    return c;
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> fp_rref(const Field& F, FpMat& a) {
    std::vector<int> piv;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t s = r;
        while (s < rows && a[s][c] == 0) ++s;
        if (s == rows) continue;
        std::swap(a[s], a[r]);
        u32 iv = F.inv(a[r][c]);
        for (auto& x : a[r]) x = F.mul(x, iv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            u32 f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
        }
        piv.push_back(int(c));
        ++r;
    }
    a.resize(r);
    return piv;
}

inline int fp_rank(const Field& F, FpMat a) { return int(fp_rref(F, a).size()); }

// Basis of {x : a x = 0}, one vector per free column.
inline FpMat fp_kernel(const Field& F, FpMat a, size_t cols) {
    auto piv = fp_rref(F, a);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    FpMat out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<u32> x(cols, 0);
        x[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = F.neg(a[k][f]);
        out.push_back(x);
    }
    return out;
}

// Row space helpers: subspaces are given by spanning rows of length n.
inline FpMat fp_row_basis(const Field& F, FpMat a) {
    fp_rref(F, a);
    return a;
}

inline FpMat fp_stack(const FpMat& a, const FpMat& b) {
    FpMat c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

inline int fp_dim(const Field& F, const FpMat& a) { return a.empty() ? 0 : fp_rank(F, a); }

inline int fp_intersection_dim(const Field& F, const FpMat& a, const FpMat& b) {
    return fp_dim(F, a) + fp_dim(F, b) - fp_dim(F, fp_stack(a, b));
}

} // namespace orbitduality
