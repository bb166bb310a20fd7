#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "formal_local.hpp"
#include "modp.hpp"
#include "orbit.hpp"

namespace orbitduality {

struct ResidueBlock {
    BlockKind kind = BlockKind::B2;
    Partition parts;           // the block of d_B
    std::vector<int> coords;   // indices into Q, degree descending, Q_0 last
};

struct ResidueModel {
    u32 p = 101;
    Partition d;
    int beta = 0, c = 0;
    std::vector<int> degree;   // per Q coordinate; 1 marks Q_0
    std::vector<u32> phi;      // Phi is diagonal
    std::vector<u32> weight;   // pairing <x, y> = sum weight_i x_i y_i
    std::vector<ResidueBlock> blocks;
    std::uint64_t seed = 0;
    int attempts = 0;

    int dim() const { return int(degree.size()); }
};

inline ResidueModel build_residue_model(const Partition& d0, u32 prime, std::uint64_t seed, int max_attempts = 100) {
    Partition d = canonical(d0);
    Field F(prime);
    auto inv = orbit_invariants(d, OrbitType::B);
    auto bd = block_decompose(d);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<u32> nonzero(1, prime - 1);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        auto chi = sample_generic_char(d, OrbitType::B, prime, 0, rng(), 100, false);
        ResidueModel m;
        m.p = prime;
        m.d = d;
        m.beta = inv.beta;
        m.c = inv.c;
        m.seed = seed;
        m.attempts = attempt;
        u32 phi0 = 1;
        std::vector<bool> used(chi.factors.size(), false);
        for (size_t i = 0; i < chi.factors.size(); ++i)
            if (int(i) != chi.lambda_factor) phi0 = F.mul(phi0, chi.residues[i]);
        for (auto& b : bd) {
            if (b.kind == BlockKind::B1 || b.kind == BlockKind::B1star) continue;
            ResidueBlock rb;
            rb.kind = b.kind;
            rb.parts = b.parts;
            Partition degs = canonical(block_dual(b));
            for (int e : degs) {
                if (e == 0 || e % 2) continue;
                size_t f = 0;
                while (f < chi.factors.size() &&
                       (used[f] || chi.degrees[f] != e || chi.partner[f] != int(f) || int(f) == chi.lambda_factor))
                    ++f;
                if (f == chi.factors.size()) throw Error(ErrorKind::DecompositionFailure, "no factor of degree " + std::to_string(e));
                used[f] = true;
                rb.coords.push_back(m.dim());
                m.degree.push_back(e);
                m.phi.push_back(chi.residues[f]);
                m.weight.push_back(nonzero(rng));
            }
            if (b.kind == BlockKind::B3) {
                rb.coords.push_back(m.dim());
                m.degree.push_back(1);
                m.phi.push_back(phi0);
                m.weight.push_back(nonzero(rng));
            }
            m.blocks.push_back(rb);
        }
        // Phi_0 is the product of all residues, so it can only be kept apart from the others generically
        std::set<u32> seen;
        bool distinct = true;
        for (int i = 0; i < m.dim(); ++i)
            if (m.degree[i] != 1) distinct = distinct && seen.insert(m.phi[i]).second;
        if (!distinct) continue;
        return m;
    }
    throw Error(ErrorKind::RetriesExhausted, "no residue model with distinct eigenvalues for " + to_string(d));
}

// ---- subspaces of a block ----

struct IsotropicSolution {
    FpMat basis;               // reduced echelon rows over the coordinates of Q
    std::vector<int> signs;    // structural solutions: sign of each w-component, first fixed to +1
    bool operator<(const IsotropicSolution& o) const { return basis < o.basis; }
    bool operator==(const IsotropicSolution& o) const { return basis == o.basis; }
};

struct BlockResult {
    std::vector<IsotropicSolution> solutions;  // per-block subspaces, sorted
    long long candidates = 0;
};

namespace detail {

// Small dense matrices for the scan; D <= 10.
constexpr int kMaxCols = 10;
constexpr int kMaxRows = 20;
constexpr int kWork = 2 * kMaxCols;

struct Small {
    int r = 0, c = 0;
    std::array<std::array<u32, kMaxCols>, kMaxRows> a{};
};

using WorkRows = u32[kMaxRows][kWork];

inline u32 inv_mod(u32 x, u32 p, const std::vector<u32>& table) {
    if (!table.empty()) return table[x];
    u64 iv = 1, b = x, e = p - 2;
    while (e) {
        if (e & 1) iv = iv * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return u32(iv);
}

// Forward elimination in place, pivoting only inside the first pivot_cols columns; returns the rank.
inline int reduce(WorkRows& a, int r, int c, int pivot_cols, u32 p, const std::vector<u32>& inv) {
    int rank = 0;
    for (int col = 0; col < pivot_cols && rank < r; ++col) {
        int s = rank;
        while (s < r && a[s][col] == 0) ++s;
        if (s == r) continue;
        if (s != rank) std::swap_ranges(a[s], a[s] + c, a[rank]);
        u64 iv = inv_mod(a[rank][col], p, inv);
        for (int i = rank + 1; i < r; ++i) {
            if (!a[i][col]) continue;
            u64 g = p - u64(a[i][col]) * iv % p;
            for (int j = col; j < c; ++j) a[i][j] = u32((a[i][j] + g * a[rank][j]) % p);
        }
        ++rank;
    }
    return rank;
}

struct LevelCols {
    std::vector<int> above;    // degree > l - 1
    std::vector<int> high;     // degree >= l + 1
    std::vector<int> outside;  // degree < l
    std::vector<int> equal;    // degree == l
};

// Data of one block that the rank test needs, in block-local coordinates.
struct BlockShape {
    u32 p = 0;
    int D = 0;
    std::vector<int> degree;
    std::vector<u32> phi;
    std::vector<u32> inv;                // inverse table for small p
    std::vector<int> levels;             // l values to test
    std::vector<LevelCols> cols;
    std::vector<int> target_rank;        // sum over block parts of max(x - l, 0)
    std::vector<int> base_rank;          // rank of the residue nilpotent power
    mutable std::vector<int> order;      // test order, last rejecting level first
};

inline BlockShape block_shape(const ResidueModel& m, const ResidueBlock& b) {
    BlockShape s;
    s.p = m.p;
    s.D = int(b.coords.size());
    for (int c : b.coords) {
        s.degree.push_back(m.degree[c]);
        s.phi.push_back(m.phi[c]);
    }
    if (m.p < (1u << 16)) {
        Field F(m.p);
        s.inv.assign(m.p, 0);
        for (u32 x = 1; x < m.p; ++x) s.inv[x] = F.inv(x);
    }
    int top = 0;
    for (int x : b.parts) top = std::max(top, x);
    for (int l = 1; l <= top + 1; ++l) {
        int want = 0, base = 0;
        for (int x : b.parts) want += std::max(x - l, 0);
        for (int e : s.degree) base += std::max(e - l, 0);
        LevelCols lc;
        for (int j = 0; j < s.D; ++j) {
            int e = s.degree[size_t(j)];
            if (e > l - 1) lc.above.push_back(j);
            if (e >= l + 1) lc.high.push_back(j);
            if (e < l) lc.outside.push_back(j);
            if (e == l) lc.equal.push_back(j);
        }
        s.levels.push_back(l);
        s.cols.push_back(std::move(lc));
        s.target_rank.push_back(want);
        s.base_rank.push_back(base);
    }
    for (size_t i = 0; i < s.levels.size(); ++i) s.order.push_back(int(i));
    return s;
}

// Rank of Theta_W^l through the residue identity; W given by h independent rows.
inline int residue_rank(const BlockShape& s, const Small& W, int li) {
    const u32 p = s.p;
    const int h = W.r;
    const LevelCols& L = s.cols[size_t(li)];
    const int na = int(L.above.size()), nh = int(L.high.size());
    const int no = int(L.outside.size()), ne = int(L.equal.size());
    WorkRows w, px, st;

    // dim(W cap F^{<=l-1})
    int low = h;
    if (na) {
        for (int i = 0; i < h; ++i)
            for (int k = 0; k < na; ++k) w[i][k] = W.a[size_t(i)][size_t(L.above[size_t(k)])];
        low = h - reduce(w, h, na, na, p, s.inv);
    }

    // X = {proj_{=l} w : w in W, proj_{>=l+1} w = 0}; combinations from the left kernel of W on the high coords
    for (int i = 0; i < h; ++i) {
        for (int k = 0; k < nh; ++k) w[i][k] = W.a[size_t(i)][size_t(L.high[size_t(k)])];
        for (int j = 0; j < h; ++j) w[i][nh + j] = i == j;
    }
    int rk = reduce(w, h, nh + h, nh, p, s.inv);
    int kr = h - rk;

    // Quotient by U = F_{>=l+1} + Phi X: keep coords with degree < l, and degree == l modulo Phi X.
    for (int k = 0; k < kr; ++k)
        for (int e = 0; e < ne; ++e) {
            int col = L.equal[size_t(e)];
            u64 acc = 0;
            for (int i = 0; i < h; ++i) acc += u64(w[rk + k][nh + i]) * W.a[size_t(i)][size_t(col)] % p;
            px[k][e] = u32(acc % p * s.phi[size_t(col)] % p);
        }
    for (int i = 0; i < h; ++i) {
        for (int k = 0; k < no; ++k) st[i][k] = W.a[size_t(i)][size_t(L.outside[size_t(k)])];
        for (int e = 0; e < ne; ++e) st[i][no + e] = W.a[size_t(i)][size_t(L.equal[size_t(e)])];
    }
    for (int k = 0; k < kr; ++k) {
        for (int j = 0; j < no; ++j) st[h + k][j] = 0;
        for (int e = 0; e < ne; ++e) st[h + k][no + e] = px[k][e];
    }
    int dimPX = ne ? reduce(px, kr, ne, ne, p, s.inv) : 0;
    int cols = no + ne;
    int rankQ = (cols ? reduce(st, h + kr, cols, cols, p, s.inv) : 0) - dimPX;
    int inU = h - rankQ;
    return s.base_rank[size_t(li)] + h - low - inU;
}

inline bool rank_condition(const BlockShape& s, const Small& W) {
    for (size_t k = 0; k < s.order.size(); ++k) {
        int li = s.order[k];
        if (residue_rank(s, W, li) != s.target_rank[li]) {
            if (k) std::rotate(s.order.begin(), s.order.begin() + long(k), s.order.begin() + long(k) + 1);
            return false;
        }
    }
    return true;
}

inline Small to_small(const FpMat& rows, int D) {
    Small m;
    m.r = int(rows.size());
    m.c = D;
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < D; ++j) m.a[i][j] = rows[i][size_t(j)];
    return m;
}

inline u32 form(const Field& F, const std::vector<u32>& w, const std::vector<u32>& x, const std::vector<u32>& y) {
    u32 s = 0;
    for (size_t i = 0; i < w.size(); ++i) s = F.add(s, F.mul(w[i], F.mul(x[i], y[i])));
    return s;
}

// Hyperbolic pairs (e_k, f_k) for the diagonal form; nullopt if the form does not split.
inline std::optional<std::pair<FpMat, FpMat>> hyperbolic_basis(const Field& F, const std::vector<u32>& w) {
    size_t D = w.size();
    auto q = [&](const std::vector<u32>& x) { return form(F, w, x, x); };
    FpMat basis;  // pairwise orthogonal, anisotropic
    for (size_t i = 0; i < D; ++i) {
        std::vector<u32> v(D, 0);
        v[i] = 1;
        basis.push_back(v);
    }
    FpMat E, Fv;
    while (basis.size() >= 2) {
        size_t k = std::min<size_t>(basis.size(), 3);
        std::vector<u32> a(k);
        for (size_t i = 0; i < k; ++i) a[i] = q(basis[i]);
        // a0 x^2 + a1 y^2 (+ a2) = 0
        std::optional<std::vector<u32>> coef;
        if (k == 2) {
            auto r = F.sqrt(F.mul(F.neg(a[1]), F.inv(a[0])));
            if (r) coef = std::vector<u32>{*r, 1};
        } else {
            for (u32 x = 0; x < F.p && !coef; ++x) {
                u32 rhs = F.sub(F.neg(a[2]), F.mul(a[0], F.mul(x, x)));
                auto r = F.sqrt(F.mul(rhs, F.inv(a[1])));
                if (r) coef = std::vector<u32>{x, *r, 1};
            }
        }
        if (!coef) return std::nullopt;
        std::vector<u32> e(D, 0);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < D; ++j) e[j] = F.add(e[j], F.mul((*coef)[i], basis[i][j]));
        std::vector<u32> f;
        for (size_t i = 0; i < k && f.empty(); ++i) {
            u32 s = form(F, w, e, basis[i]);
            if (!s) continue;
            f = basis[i];
            u32 is = F.inv(s);
            for (auto& x : f) x = F.mul(x, is);
        }
        u32 half = F.mul(q(f), F.inv(2));
        for (size_t j = 0; j < D; ++j) f[j] = F.sub(f[j], F.mul(half, e[j]));
        E.push_back(e);
        Fv.push_back(f);
        FpMat rest(basis.begin() + long(k), basis.end());
        if (k == 3) {
            // the line of span(basis[0..2]) orthogonal to e and f
            FpMat eqs(2, std::vector<u32>(3));
            for (size_t i = 0; i < 3; ++i) {
                eqs[0][i] = form(F, w, basis[i], e);
                eqs[1][i] = form(F, w, basis[i], f);
            }
            auto K = fp_kernel(F, eqs, 3);
            std::vector<u32> v(D, 0);
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < D; ++j) v[j] = F.add(v[j], F.mul(K[0][i], basis[i][j]));
            rest.insert(rest.begin(), v);
        }
        basis = rest;
    }
    return std::make_pair(E, Fv);
}

inline FpMat canonical_rows(const Field& F, FpMat rows) {
    fp_rref(F, rows);
    return rows;
}

} // namespace detail

// Residue-rank identity for one block; returns the implied ranks of Theta_W^l for l = 1..max+1.
inline std::vector<int> block_residue_ranks(const ResidueModel& m, const ResidueBlock& b, const FpMat& W) {
    auto s = detail::block_shape(m, b);
    auto sw = detail::to_small(W, s.D);
    std::vector<int> out;
    for (size_t i = 0; i < s.levels.size(); ++i) out.push_back(detail::residue_rank(s, sw, int(i)));
    return out;
}

inline std::vector<int> block_target_ranks(const ResidueModel& m, const ResidueBlock& b) {
    return detail::block_shape(m, b).target_rank;
}

inline bool block_isotropic(const ResidueModel& m, const ResidueBlock& b, const FpMat& W) {
    Field F(m.p);
    std::vector<u32> w;
    for (int c : b.coords) w.push_back(m.weight[c]);
    for (auto& x : W)
        for (auto& y : W)
            if (detail::form(F, w, x, y)) return false;
    return true;
}

inline long long brute_force_cost(const ResidueModel& m, const ResidueBlock& b) {
    long long h = static_cast<long long>(b.coords.size()) / 2, cost = 1LL << h;
    for (long long k = 0; k < h * (h - 1) / 2; ++k) cost *= m.p;
    return cost;
}

inline constexpr long long kBruteForceLimit = 60'000'000;

// Scan of all maximal isotropic subspaces of the block by Lagrangian charts.
inline BlockResult brute_force_block(const ResidueModel& m, const ResidueBlock& b) {
    Field F(m.p);
    int D = int(b.coords.size()), h = D / 2;
    if (D > detail::kMaxCols) throw Error(ErrorKind::Usage, "block too large for brute force");
    if (brute_force_cost(m, b) > kBruteForceLimit)
        throw Error(ErrorKind::Usage, "brute force over this block needs " + std::to_string(brute_force_cost(m, b)) + " candidates");
    auto shape = detail::block_shape(m, b);
    BlockResult res;
    std::set<FpMat> found;
    auto consider = [&](const detail::Small& W) {
        ++res.candidates;
        if (!detail::rank_condition(shape, W)) return;
        FpMat rows(size_t(W.r), std::vector<u32>(size_t(D)));
        for (int i = 0; i < W.r; ++i)
            for (int j = 0; j < D; ++j) rows[size_t(i)][size_t(j)] = W.a[size_t(i)][size_t(j)];
        found.insert(detail::canonical_rows(F, rows));
    };
    if (h == 0) {
        detail::Small W;
        W.c = D;
        consider(W);
    } else {
        std::vector<u32> w;
        for (int c : b.coords) w.push_back(m.weight[c]);
        auto hb = detail::hyperbolic_basis(F, w);
        if (hb) {
            auto& [E, Fv] = *hb;
            int pairs = h * (h - 1) / 2;
            std::vector<u32> A(size_t(pairs), 0);
            std::vector<int> pair_of(size_t(h * h), -1);
            for (int i = 0, idx = 0; i < h; ++i)
                for (int k = i + 1; k < h; ++k) pair_of[size_t(i * h + k)] = idx++;
            // A subspace is a graph over chart S' iff the principal minor of A on S xor S' is invertible;
            // keep it only in the first chart it is a graph over.
            auto graph_over = [&](int T) {
                std::vector<int> idx;
                for (int k = 0; k < h; ++k)
                    if (T >> k & 1) idx.push_back(k);
                int t = int(idx.size());
                detail::WorkRows a;
                for (int x = 0; x < t; ++x)
                    for (int y = 0; y < t; ++y) {
                        int i = idx[size_t(x)], k = idx[size_t(y)];
                        u32 v = 0;
                        if (i < k) v = A[size_t(pair_of[size_t(i * h + k)])];
                        else if (i > k) v = F.neg(A[size_t(pair_of[size_t(k * h + i)])]);
                        a[x][y] = v;
                    }
                return detail::reduce(a, t, t, t, m.p, shape.inv) == t;
            };
            for (int S = 0; S < (1 << h); ++S) {
                std::vector<int> earlier;
                for (int S2 = 0; S2 < S; ++S2)
                    if (__builtin_popcount(unsigned(S ^ S2)) % 2 == 0) earlier.push_back(S ^ S2);
                // chart: E'_k = f_k for k in S, e_k otherwise; F' the other one
                std::fill(A.begin(), A.end(), 0);
                detail::Small base;
                base.r = h;
                base.c = D;
                for (int k = 0; k < h; ++k) {
                    const auto& ek = (S >> k & 1) ? Fv[size_t(k)] : E[size_t(k)];
                    for (int j = 0; j < D; ++j) base.a[size_t(k)][size_t(j)] = ek[size_t(j)];
                }
                auto advance = [&] {
                    int pos = 0;
                    while (pos < pairs && ++A[size_t(pos)] == m.p) A[size_t(pos++)] = 0;
                    return pos < pairs;
                };
                do {
                    if (std::any_of(earlier.begin(), earlier.end(), graph_over)) continue;
                    detail::Small W = base;
                    int idx = 0;
                    for (int i = 0; i < h; ++i)
                        for (int k = i + 1; k < h; ++k, ++idx) {
                            u32 a = A[size_t(idx)];
                            if (!a) continue;
                            // column k gets +a F'_i, column i gets -a F'_k
                            const auto& fi = (S >> i & 1) ? E[size_t(i)] : Fv[size_t(i)];
                            const auto& fk = (S >> k & 1) ? E[size_t(k)] : Fv[size_t(k)];
                            for (int j = 0; j < D; ++j) {
                                W.a[size_t(k)][size_t(j)] = F.add(W.a[size_t(k)][size_t(j)], F.mul(a, fi[size_t(j)]));
                                W.a[size_t(i)][size_t(j)] = F.sub(W.a[size_t(i)][size_t(j)], F.mul(a, fk[size_t(j)]));
                            }
                        }
                    consider(W);
                } while (advance());
            }
        }
    }
    for (auto& rows : found) res.solutions.push_back({rows, {}});
    return res;
}

struct StructuralBlockData {
    std::vector<std::vector<u32>> y;  // kernel vector per degree group, already scaled by lambda_j
    std::vector<int> chain;           // d_j per group
    std::vector<std::vector<int>> groups;
};

// Chains Phi^{-1} w .. Phi^{-d} w linked by Phi^{-d-1} w_j + w_{j+1}; squares of the w-components
// are fixed up to one scalar by the isotropy equations.
inline StructuralBlockData structural_data(const ResidueModel& m, const ResidueBlock& b) {
    Field F(m.p);
    StructuralBlockData sd;
    for (size_t k = 0; k < b.coords.size(); ++k) {
        int e = m.degree[b.coords[k]];
        if (k == 0 || m.degree[b.coords[k - 1]] != e) sd.groups.emplace_back();
        sd.groups.back().push_back(b.coords[k]);
    }
    size_t q = sd.groups.size();
    auto ipow = [&](u32 phi, int s) { return F.pow(F.inv(phi), u64(s)); };
    auto S = [&](size_t j, const std::vector<u32>& y, int s) {
        u32 acc = 0;
        for (size_t i = 0; i < y.size(); ++i) {
            int c = sd.groups[j][i];
            acc = F.add(acc, F.mul(m.weight[c], F.mul(ipow(m.phi[c], s), y[i])));
        }
        return acc;
    };
    std::vector<std::vector<u32>> ker(q);
    for (size_t j = 0; j < q; ++j) {
        int mj = int(sd.groups[j].size());
        int lo, hi, dj;
        if (q == 1) {
            dj = mj / 2;
            lo = 2;
            hi = mj;
        } else if (j == 0) {
            dj = mj / 2;
            lo = 2;
            hi = mj;
        } else if (j + 1 == q) {
            dj = mj / 2;
            lo = 1;
            hi = mj - 1;
        } else {
            dj = mj / 2 - 1;
            lo = 1;
            hi = mj - 1;
        }
        sd.chain.push_back(dj);
        FpMat eqs;
        for (int s = lo; s <= hi; ++s) {
            std::vector<u32> row;
            for (int c : sd.groups[j]) row.push_back(F.mul(m.weight[c], ipow(m.phi[c], s)));
            eqs.push_back(row);
        }
        FpMat K = eqs.empty() ? FpMat{} : fp_kernel(F, eqs, size_t(mj));
        if (eqs.empty()) {
            K.assign(size_t(mj), std::vector<u32>(size_t(mj), 0));
            for (int i = 0; i < mj; ++i) K[size_t(i)][size_t(i)] = 1;
        }
        if (K.size() != 1) throw Error(ErrorKind::GenericityFailure, "isotropy system for degree " + std::to_string(m.degree[sd.groups[j][0]]) + " has kernel of dimension " + std::to_string(K.size()));
        for (u32 x : K[0])
            if (!x) throw Error(ErrorKind::GenericityFailure, "a w-component vanishes");
        ker[j] = K[0];
    }
    // linking scalars; lambda_1 runs over the two square classes
    for (u32 l1 : {1u, F.non_residue()}) {
        std::vector<u32> lam{l1};
        bool ok = true;
        for (size_t j = 0; j + 1 < q; ++j) {
            u32 den = S(j + 1, ker[j + 1], 0);
            if (!den) throw Error(ErrorKind::GenericityFailure, "degenerate link between degree groups");
            u32 num = S(j, ker[j], 2 * sd.chain[j] + 2);
            lam.push_back(F.mul(F.neg(lam[j]), F.mul(num, F.inv(den))));
        }
        sd.y.clear();
        for (size_t j = 0; j < q && ok; ++j) {
            std::vector<u32> y;
            for (u32 x : ker[j]) {
                u32 v = F.mul(lam[j], x);
                if (!v || !F.is_square(v)) ok = false;
                y.push_back(v);
            }
            sd.y.push_back(y);
        }
        if (ok) return sd;
    }
    throw Error(ErrorKind::GenericityFailure, "w-components need square roots outside F_p");
}

inline BlockResult structural_block(const ResidueModel& m, const ResidueBlock& b) {
    Field F(m.p);
    BlockResult res;
    int D = int(b.coords.size());
    if (D / 2 == 0) {
        res.solutions.push_back({{}, std::vector<int>(size_t(D), 1)});
        return res;
    }
    auto sd = structural_data(m, b);
    std::vector<u32> root;
    for (auto& y : sd.y)
        for (u32 v : y) root.push_back(*F.sqrt(v));
    auto local = [&](int c) { return int(std::find(b.coords.begin(), b.coords.end(), c) - b.coords.begin()); };
    size_t q = sd.groups.size();
    for (int mask = 0; mask < (1 << (D - 1)); ++mask) {
        std::vector<int> signs(size_t(D), 1);
        for (int i = 1; i < D; ++i)
            if (mask >> (i - 1) & 1) signs[size_t(i)] = -1;
        auto w = [&](size_t j, int power) {  // Phi^{-power} w_j in block coordinates
            std::vector<u32> v(size_t(D), 0);
            for (int c : sd.groups[j]) {
                int i = local(c);
                u32 x = signs[size_t(i)] > 0 ? root[size_t(i)] : F.neg(root[size_t(i)]);
                v[size_t(i)] = F.mul(x, F.pow(F.inv(m.phi[c]), u64(power)));
            }
            return v;
        };
        FpMat rows;
        for (size_t j = 0; j < q; ++j) {
            for (int a = 1; a <= sd.chain[j]; ++a) rows.push_back(w(j, a));
            if (j + 1 < q) {
                auto v = w(j, sd.chain[j] + 1), u = w(j + 1, 0);
                for (int i = 0; i < D; ++i) v[size_t(i)] = F.add(v[size_t(i)], u[size_t(i)]);
                rows.push_back(v);
            }
        }
        res.solutions.push_back({detail::canonical_rows(F, rows), signs});
    }
    std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

enum class Method { Structural, BruteForce };

struct IsotropicReport {
    ResidueModel model;
    std::vector<BlockResult> structural, brute;
    long long structural_count = 1, brute_count = 1, expected = 1;
    bool sets_agree = true;
    bool dims_ok = true, isotropic_ok = true, ranks_ok = true, components_ok = true, sign_closed = true;
    int resamples = 0;
    bool ok() const {
        return sets_agree && structural_count == expected && brute_count == expected && dims_ok && isotropic_ok &&
               ranks_ok && components_ok && sign_closed;
    }
};

// Global solutions are direct sums of per-block solutions; coordinates of Q.
inline std::vector<IsotropicSolution> combine(const ResidueModel& m, const std::vector<BlockResult>& blocks) {
    Field F(m.p);
    std::vector<IsotropicSolution> out{{{}, {}}};
    for (size_t k = 0; k < blocks.size(); ++k) {
        std::vector<IsotropicSolution> next;
        for (auto& base : out)
            for (auto& s : blocks[k].solutions) {
                IsotropicSolution g = base;
                for (auto& r : s.basis) {
                    std::vector<u32> v(size_t(m.dim()), 0);
                    for (size_t i = 0; i < r.size(); ++i) v[size_t(m.blocks[k].coords[i])] = r[i];
                    g.basis.push_back(v);
                }
                g.signs.insert(g.signs.end(), s.signs.begin(), s.signs.end());
                next.push_back(g);
            }
        out = next;
    }
    for (auto& s : out) s.basis = detail::canonical_rows(F, s.basis);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<IsotropicSolution> enumerate_iota_isotropic(const ResidueModel& m, Method method) {
    std::vector<BlockResult> br;
    for (auto& b : m.blocks) br.push_back(method == Method::Structural ? structural_block(m, b) : brute_force_block(m, b));
    return combine(m, br);
}

// Structural vs brute force on one partition; genericity failures of the draw trigger a resample.
inline IsotropicReport count_report(const Partition& d, u32 prime, std::uint64_t seed, bool brute = true, int max_resamples = 400) {
    IsotropicReport r;
    Field F(prime);
    for (int attempt = 0;; ++attempt) {
        r.model = build_residue_model(d, prime, seed + std::uint64_t(attempt) * 0x100000001ull);
        try {
            r.structural.clear();
            for (auto& b : r.model.blocks) r.structural.push_back(structural_block(r.model, b));
            r.resamples = attempt;
            break;
        } catch (const Error& e) {
            if (e.kind != ErrorKind::GenericityFailure || attempt >= max_resamples) throw;
        }
    }
    const auto& m = r.model;
    r.expected = 1LL << (m.beta - m.c);
    r.structural_count = r.brute_count = 1;
    for (size_t k = 0; k < m.blocks.size(); ++k) {
        const auto& b = m.blocks[k];
        auto& sol = r.structural[k].solutions;
        r.structural_count *= static_cast<long long>(sol.size());
        auto target = block_target_ranks(m, b);
        std::set<FpMat> members;
        for (auto& s : sol) members.insert(s.basis);
        for (auto& s : sol) {
            if (fp_dim(F, s.basis) != int(b.coords.size()) / 2) r.dims_ok = false;
            if (!block_isotropic(m, b, s.basis)) r.isotropic_ok = false;
            if (block_residue_ranks(m, b, s.basis) != target) r.ranks_ok = false;
            // every coordinate of Q^T_j is hit by W (no w-component vanishes)
            for (size_t i = 0; i < b.coords.size() && !s.basis.empty(); ++i) {
                bool hit = false;
                for (auto& row : s.basis) hit = hit || row[i];
                if (!hit) r.components_ok = false;
            }
            // flipping one coordinate sign maps solutions to solutions
            for (size_t i = 0; i < b.coords.size(); ++i) {
                FpMat img = s.basis;
                for (auto& row : img) row[i] = F.neg(row[i]);
                if (!members.count(detail::canonical_rows(F, img))) r.sign_closed = false;
            }
        }
        if (brute) {
            r.brute.push_back(brute_force_block(m, b));
            r.brute_count *= static_cast<long long>(r.brute.back().solutions.size());
            std::vector<FpMat> a, c;
            for (auto& s : sol) a.push_back(s.basis);
            for (auto& s : r.brute.back().solutions) c.push_back(s.basis);
            std::sort(a.begin(), a.end());
            std::sort(c.begin(), c.end());
            if (a != c) r.sets_agree = false;
        }
    }
    if (!brute) r.brute_count = r.structural_count;
    return r;
}

inline bool count_check(const Partition& d, u32 prime = 101, std::uint64_t seed = 0) {
    return count_report(d, prime, seed).ok();
}

} // namespace orbitduality
