#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partition.hpp"

namespace orbitduality {

enum class BlockKind { B1, B1star, B2, B3 };

inline const char* block_name(BlockKind k) {
    switch (k) {
    case BlockKind::B1: return "B1";
    case BlockKind::B1star: return "B1*";
    case BlockKind::B2: return "B2";
    case BlockKind::B3: return "B3";
    }
    return "?";
}

struct Block {
    BlockKind kind;
    Partition parts;
    int start = 0;  // 0-based offset of the block inside the partition
    bool operator==(const Block&) const = default;
};

using BlockDecomposition = std::vector<Block>;

namespace detail {

inline bool odd(int x) { return x % 2 != 0; }

// Length of a B2/B3 body [a, b,b, ..., ] starting at i: a odd, then pairs of equal even parts below a.
inline size_t even_pairs_after(const Partition& d, size_t i) {
    size_t j = i + 1;
    while (j + 1 < d.size() && !odd(d[j]) && d[j] == d[j + 1] && d[j] < d[i]) j += 2;
    return j;
}

inline bool valid_block(BlockKind k, const Partition& b) {
    switch (k) {
    case BlockKind::B1: return b.size() == 2 && odd(b[0]) && b[0] == b[1];
    case BlockKind::B1star: return b.size() == 2 && !odd(b[0]) && b[0] == b[1];
    case BlockKind::B2:
    case BlockKind::B3: {
        if (b.empty() || !odd(b[0])) return false;
        size_t evens_end = k == BlockKind::B2 ? b.size() - 1 : b.size();
        if (k == BlockKind::B2 && (b.size() < 2 || !odd(b.back()))) return false;
        if ((evens_end - 1) % 2 != 0) return false;
        for (size_t j = 1; j < evens_end; j += 2)
            if (odd(b[j]) || b[j] != b[j + 1]) return false;
        for (size_t j = 1; j < b.size(); ++j)
            if (b[j] > b[j - 1]) return false;
        if (b.size() > 1 && b[1] >= b[0]) return false;
        if (k == BlockKind::B2 && b.size() > 2 && b[b.size() - 2] <= b.back()) return false;
        return true;
    }
    }
    return false;
}

// Counts every way to cut d into valid blocks with a single trailing B3.
inline int count_decompositions(const Partition& d, size_t i = 0) {
    if (i == d.size()) return 0;
    int count = 0;
    for (size_t j = i + 1; j <= d.size(); ++j) {
        Partition b(d.begin() + i, d.begin() + j);
        if (j == d.size()) {
            if (valid_block(BlockKind::B3, b)) ++count;
        }
        bool inner = valid_block(BlockKind::B1, b) || valid_block(BlockKind::B1star, b) ||
                     valid_block(BlockKind::B2, b);
        if (inner && j < d.size()) count += count_decompositions(d, j);
    }
    return count;
}

} // namespace detail

// Greedy left-to-right scan: equal pairs become B1/B1*, otherwise an odd head
// collects its even pairs and closes either with an odd tail (B2) or at the end (B3).
inline BlockDecomposition block_decompose(const Partition& d0) {
    Partition d = canonical(d0);
    if (total(d) % 2 == 0 || !is_member(d, OrbitType::B))
        throw Error(ErrorKind::NotTypeB, to_string(d) + " is not a type-B partition");
    BlockDecomposition out;
    size_t i = 0;
    while (i < d.size()) {
        if (i + 1 < d.size() && d[i] == d[i + 1]) {
            out.push_back({detail::odd(d[i]) ? BlockKind::B1 : BlockKind::B1star, {d[i], d[i]}, int(i)});
            i += 2;
            continue;
        }
        if (!detail::odd(d[i]))
            throw Error(ErrorKind::DecompositionFailure, "unpaired even part in " + to_string(d));
        size_t j = detail::even_pairs_after(d, i);
        if (j == d.size()) {
            out.push_back({BlockKind::B3, Partition(d.begin() + i, d.end()), int(i)});
            i = j;
        } else if (detail::odd(d[j])) {
            out.push_back({BlockKind::B2, Partition(d.begin() + i, d.begin() + j + 1), int(i)});
            i = j + 1;
        } else {
            throw Error(ErrorKind::DecompositionFailure, "cannot close block at " + std::to_string(j) + " in " + to_string(d));
        }
    }
    Partition cat;
    for (auto& b : out) {
        if (!detail::valid_block(b.kind, b.parts))
            throw Error(ErrorKind::DecompositionFailure, std::string("invalid ") + block_name(b.kind) + " block in " + to_string(d));
        cat.insert(cat.end(), b.parts.begin(), b.parts.end());
    }
    if (cat != d || out.empty() || out.back().kind != BlockKind::B3)
        throw Error(ErrorKind::DecompositionFailure, "bad block layout for " + to_string(d));
    for (size_t k = 0; k + 1 < out.size(); ++k)
        if (out[k].kind == BlockKind::B3) throw Error(ErrorKind::DecompositionFailure, "interior B3 in " + to_string(d));
    if (detail::count_decompositions(d) != 1)
        throw Error(ErrorKind::DecompositionFailure, "decomposition of " + to_string(d) + " is not unique");
    return out;
}

// Image of one block under the block-wise dual map (zero parts dropped later).
inline Partition block_dual(const Block& b) {
    Partition s = b.parts;
    switch (b.kind) {
    case BlockKind::B1:
    case BlockKind::B1star: break;
    case BlockKind::B2:
        s.front() -= 1;
        s.back() += 1;
        break;
    case BlockKind::B3: s.front() -= 1; break;
    }
    return s;
}

// Concatenation of block duals; positions line up with the type-B partition.
inline Partition block_dual_concat(const BlockDecomposition& bd) {
    Partition s;
    for (auto& b : bd) {
        auto x = block_dual(b);
        s.insert(s.end(), x.begin(), x.end());
    }
    return canonical(s);
}

// Number of Young-diagram corners with odd row length and odd column height.
inline int odd_odd_corners(const Partition& d) {
    int count = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        bool corner = i + 1 == d.size() || d[i + 1] < d[i];
        if (corner && d[i] % 2 != 0 && (i + 1) % 2 != 0) ++count;
    }
    return count;
}

struct OrbitInvariants {
    int c = 0;
    int beta = 0;
    Partition degree_partition;
    std::uint64_t canonical_quotient_order = 1;
    int corner_q = 0;  // corner-count oracle exponent
};

inline Partition type_b_side(const Partition& d, OrbitType t) {
    return t == OrbitType::B ? canonical(d) : springer_dual(d, Direction::C_to_B);
}

inline OrbitInvariants orbit_invariants(const Partition& d, OrbitType t) {
    if (!is_special(d, t)) throw Error(ErrorKind::NotSpecial, to_string(d) + " is not special");
    Partition dB = type_b_side(d, t);
    auto bd = block_decompose(dB);
    OrbitInvariants inv;
    for (auto& b : bd)
        if (b.kind == BlockKind::B2) ++inv.c;
    Partition sd = block_dual_concat(bd);
    for (int x : sd)
        if (x % 2 == 0) ++inv.beta;
    if (t == OrbitType::B) {
        inv.degree_partition = sd;
        inv.degree_partition.push_back(1);
    } else {
        inv.degree_partition = canonical(d);
    }
    inv.canonical_quotient_order = std::uint64_t(1) << inv.c;
    inv.corner_q = odd_odd_corners(dB) - 1;
    return inv;
}

struct KLLabel {
    Partition alpha;
    Partition beta;
    bool operator==(const KLLabel&) const = default;
};

inline KLLabel kl_label(const Partition& d0, OrbitType t) {
    Partition d = canonical(d0);
    if (!is_member(d, t)) throw Error(ErrorKind::NotAMember, to_string(d) + " is not of type " + type_char(t));
    KLLabel kl;
    if (t == OrbitType::C) {
        auto r = multiplicities(d);
        for (auto [e, m] : r) {
            if (e % 2 == 0)
                for (int k = 0; k < m; ++k) kl.beta.push_back(e / 2);
            else
                for (int k = 0; k < m / 2; ++k) kl.alpha.push_back(e);
        }
    } else {
        auto bd = block_decompose(d);
        std::map<int, int> odd_degrees;
        for (auto& b : bd) {
            Partition s = canonical(block_dual(b));
            if (b.kind == BlockKind::B1star) {
                kl.alpha.push_back(s[0]);
                continue;
            }
            for (int e : s) {
                if (e % 2 == 0) kl.beta.push_back(e / 2);
                else ++odd_degrees[e];
            }
        }
        for (auto [e, m] : odd_degrees)
            for (int k = 0; k < m / 2; ++k) kl.alpha.push_back(e);
    }
    kl.alpha = canonical(kl.alpha);
    kl.beta = canonical(kl.beta);
    return kl;
}

inline std::vector<int> eta_sequence(const Partition& d0, OrbitType t) {
    Partition d = canonical(d0);
    int n = rank_of(d, t);
    std::vector<int> eta;
    int j = 0, sum = 0;
    for (int i = 1; i <= n; ++i) {
        while (sum < 2 * i) sum += d[j++];
        eta.push_back(j);
    }
    return eta;
}

struct HitchinContext {
    int n = 1;
    int g = 2;
};

struct DimensionReport {
    long orbit_dim = 0;
    long hitchin_base_dim = 0;
    long moduli_dim = 0;
    long eta_sum = 0;
    std::optional<bool> half_check;
    std::optional<bool> eta_sum_identity;
    // Degrees are powers of two; only the exponents are stored.
    std::optional<long> log2_deg_L_BC;
    std::optional<long> log2_deg_component_cover;
    std::optional<long> log2_deg_prym_dual;
};

inline long orbit_dimension(const Partition& d0, OrbitType t) {
    Partition d = canonical(d0);
    long n = rank_of(d, t);
    long dimG = 2 * n * n + n;
    Partition s = transpose(d);
    long sq = 0;
    for (int x : s) sq += long(x) * x;
    auto r = multiplicities(d);
    if (t == OrbitType::C) {
        long odd_r = 0;
        for (auto [i, m] : r)
            if (i % 2 != 0) odd_r += m;
        return dimG - (sq + odd_r) / 2;
    }
    long odd_parts = 0;
    for (int x : d)
        if (x % 2 != 0) ++odd_parts;
    return dimG - (sq - odd_parts) / 2;
}

inline DimensionReport dimension_report(const Partition& d0, OrbitType t, const HitchinContext& ctx, bool require_special = false) {
    Partition d = canonical(d0);
    if (!is_member(d, t)) throw Error(ErrorKind::NotAMember, to_string(d) + " is not of type " + type_char(t));
    bool special = is_special(d, t);
    if (require_special && !special) throw Error(ErrorKind::NotSpecial, "half_check needs a special partition");
    long n = ctx.n, g = ctx.g;
    long dimG = 2 * n * n + n;
    DimensionReport rep;
    rep.orbit_dim = orbit_dimension(d, t);
    for (int e : eta_sequence(d, t)) rep.eta_sum += e;
    rep.hitchin_base_dim = dimG * g - n * n - rep.eta_sum;
    rep.moduli_dim = (2 * g - 2) * dimG + rep.orbit_dim;
    if (special) {
        rep.half_check = 2 * rep.hitchin_base_dim == rep.moduli_dim;
        auto inv = orbit_invariants(d, t);
        long base = 2 * n * (2 * g - 2);
        rep.log2_deg_L_BC = base + inv.beta - inv.c - 1;
        rep.log2_deg_component_cover = base + inv.beta - inv.c - 2;
        rep.log2_deg_prym_dual = base + inv.beta - 2;
    }
    if (t == OrbitType::C) {
        long rhs = 0;
        for (int s : transpose(d)) rhs += long(s) * (s + 1);
        for (auto [i, m] : multiplicities(d))
            if (i % 2 != 0) rhs += m;
        rep.eta_sum_identity = 4 * rep.eta_sum == rhs;
    }
    return rep;
}

struct RamificationEntry {
    int i;
    int partial_sum;
    bool parity_ok;
};

inline std::vector<RamificationEntry> ramification_coefficients(const Partition& d0) {
    Partition d = canonical(d0);
    if (!is_member(d, OrbitType::C)) throw Error(ErrorKind::NotAMember, to_string(d) + " is not of type C");
    Partition lam = transpose(d);
    std::vector<RamificationEntry> out;
    int sum = 0;
    auto r = multiplicities(d);
    for (size_t j = 0; j < lam.size(); ++j) {
        sum += lam[j];
        int i = int(j) + 1;
        if (r.count(i)) out.push_back({i, sum, sum % 2 == 0});
    }
    return out;
}

} // namespace orbitduality
