#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace orbitduality::gf2 {

struct Vec {
    int n = 0;
    std::vector<std::uint64_t> w;

    Vec() = default;
    explicit Vec(int size) : n(size), w((size + 63) / 64, 0) {}

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v = true) {
        if (v) w[i >> 6] |= std::uint64_t(1) << (i & 63);
        else w[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(int i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    Vec& operator^=(const Vec& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
        return *this;
    }
    friend Vec operator^(Vec a, const Vec& b) { return a ^= b; }
    bool zero() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int lowest() const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k]) return int(k * 64 + std::countr_zero(w[k]));
        return -1;
    }
    int weight() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    bool operator==(const Vec& o) const { return n == o.n && w == o.w; }
    bool operator<(const Vec& o) const { return w < o.w; }
    std::string str() const {
        std::string s;
        for (int i = 0; i < n; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }
};

inline Vec unit(int n, int i) {
    Vec v(n);
    v.set(i);
    return v;
}

inline Vec ones(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v.set(i);
    return v;
}

inline bool dot(const Vec& a, const Vec& b) {
    int c = 0;
    for (size_t k = 0; k < a.w.size(); ++k) c += std::popcount(a.w[k] & b.w[k]);
    return c & 1;
}

// Reduced echelon basis, keyed by pivot = lowest set bit.
struct Basis {
    int n = 0;
    std::vector<Vec> rows;
    std::vector<int> piv;

    explicit Basis(int size = 0) : n(size) {}

    Vec reduce(Vec v) const {
        for (size_t k = 0; k < rows.size(); ++k)
            if (v.get(piv[k])) v ^= rows[k];
        return v;
    }
    bool insert(Vec v) {
        v = reduce(v);
        int p = v.lowest();
        if (p < 0) return false;
        for (auto& r : rows)
            if (r.get(p)) r ^= v;
        rows.push_back(v);
        piv.push_back(p);
        return true;
    }
    bool contains(const Vec& v) const { return reduce(v).zero(); }
    int dim() const { return int(rows.size()); }
};

inline Basis span(int n, const std::vector<Vec>& gens) {
    Basis b(n);
    for (auto& g : gens) b.insert(g);
    return b;
}

inline int rank(int n, const std::vector<Vec>& gens) { return span(n, gens).dim(); }

inline bool same_span(const Basis& a, const Basis& b) {
    if (a.dim() != b.dim()) return false;
    for (auto& r : a.rows)
        if (!b.contains(r)) return false;
    return true;
}

inline bool subspace_of(const Basis& a, const Basis& b) {
    for (auto& r : a.rows)
        if (!b.contains(r)) return false;
    return true;
}

// Solutions x of <x, c> = 0 for every constraint c.
inline Basis orthogonal(int n, const std::vector<Vec>& constraints) {
    Basis cb = span(n, constraints);
    // Back-substitute free coordinates against the echelon rows.
    std::vector<bool> is_piv(n, false);
    for (int p : cb.piv) is_piv[p] = true;
    Basis out(n);
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        Vec x(n);
        x.set(f);
        for (size_t k = 0; k < cb.rows.size(); ++k)
            if (cb.rows[k].get(f)) x.set(cb.piv[k]);
        out.insert(x);
    }
    return out;
}

inline Basis intersect(int n, const Basis& a, const Basis& b) {
    // x in a and b  <=>  x orthogonal to both complements.
    std::vector<Vec> ca = orthogonal(n, a.rows).rows, cb = orthogonal(n, b.rows).rows;
    ca.insert(ca.end(), cb.begin(), cb.end());
    return orthogonal(n, ca);
}

} // namespace orbitduality::gf2
