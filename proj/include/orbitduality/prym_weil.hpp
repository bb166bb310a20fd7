#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "orbit.hpp"
#include "richardson.hpp"

namespace orbitduality {

// A sigma-fixed point other than the base point; its class is one generator.
struct WeilPoint {
    bool marked = false;
    int position = 0;  // 1-based part of d_C for marked points
    int block = -1;    // index into the block decomposition of d_B
};

// Generators P_1..P_{2N-1}; the relation is their sum, ker beta is F_2^{2N-1} modulo it.
struct WeilSpace {
    int N = 1;
    std::vector<WeilPoint> labels;

    int gens() const { return 2 * N - 1; }
    int kernel_dim() const { return 2 * N - 2; }
    gf2::Vec generator(int i) const { return gf2::unit(gens(), i); }
    gf2::Vec relation() const { return gf2::ones(gens()); }

    // e(P_i, P_j) = 1 iff i != j, extended bilinearly.
    bool pair(const gf2::Vec& a, const gf2::Vec& b) const {
        return ((a.weight() & b.weight() & 1) != 0) != gf2::dot(a, b);
    }
};

inline WeilSpace weil_space(int N, std::vector<WeilPoint> labels = {}) {
    if (N < 1) throw Error(ErrorKind::Usage, "N must be at least 1");
    WeilSpace w;
    w.N = N;
    if (labels.empty()) labels.assign(size_t(w.gens()), WeilPoint{});
    if (int(labels.size()) != w.gens()) throw Error(ErrorKind::Usage, "need one label per generator");
    w.labels = std::move(labels);
    return w;
}

// Subspaces of ker beta are stored as their preimage in F_2^{2N-1}, which always contains the relation.
inline gf2::Basis lift(const WeilSpace& w, const std::vector<gf2::Vec>& gens) {
    gf2::Basis b = gf2::span(w.gens(), gens);
    b.insert(w.relation());
    return b;
}

inline int kernel_dim_of(const gf2::Basis& lifted) { return lifted.dim() - 1; }

inline gf2::Basis annihilator(const WeilSpace& w, const std::vector<gf2::Vec>& gens) {
    // e(x, v) = <x, v + wt(v) * 1>
    std::vector<gf2::Vec> cons;
    for (auto& v : gens) cons.push_back(v.weight() % 2 ? v ^ w.relation() : v);
    return gf2::orthogonal(w.gens(), cons);
}

inline bool dual_check(const WeilSpace& w, const std::vector<gf2::Vec>& V1, const std::vector<gf2::Vec>& V2) {
    return gf2::same_span(lift(w, V1), annihilator(w, V2));
}

// Rank of the pairing on ker beta.
inline int induced_rank(const WeilSpace& w) {
    std::vector<gf2::Vec> rows;
    for (int i = 0; i < w.gens(); ++i) rows.push_back(w.generator(i) ^ w.relation());
    return gf2::rank(w.gens(), rows);
}

struct ComponentCount {
    int log2 = 0;
    std::uint64_t count() const { return std::uint64_t(1) << log2; }
};

// Components of the fibre product cover: 2^{#gens - rank in ker beta}.
inline ComponentCount component_count(const WeilSpace& w, const std::vector<gf2::Vec>& gens) {
    return {int(gens.size()) - kernel_dim_of(lift(w, gens))};
}

struct HitchinInstance {
    int n = 0, g = 2;
    Partition dC, dB;
    LeviType LC, LB;
    PolarizationData pc, pb;
    int beta = 0, c = 0;
    WeilSpace space;
    std::vector<gf2::Vec> VB, VC, naive;
    int dim_VB = 0, dim_VC = 0, dim_naive = 0;
    bool dual = false;
    ComponentCount components;
    bool degree_ok = false;
    bool naive_dual = false;  // component cover against the Prym itself
};

inline HitchinInstance hitchin_instance(int n, int g, const Partition& dC0, const LeviType& LC) {
    if (g < 2) throw Error(ErrorKind::Usage, "genus must be at least 2");
    if (LC.type != OrbitType::C) throw Error(ErrorKind::InvalidLevi, "hitchin_instance takes a type-C Levi");
    HitchinInstance h;
    h.n = n;
    h.g = g;
    h.dC = canonical(dC0);
    h.LC = LC;
    h.LB = dual_levi(LC);
    h.pc = richardson_data(LC);
    h.pb = richardson_data(h.LB);
    if (levi_rank(LC) != n) throw Error(ErrorKind::InvalidLevi, to_string(LC) + " has rank " + std::to_string(levi_rank(LC)));
    if (h.pc.orbit != h.dC)
        throw Error(ErrorKind::NotRichardson, to_string(h.dC) + " is not the Richardson orbit of " + to_string(LC));
    auto inv = orbit_invariants(h.dC, OrbitType::C);
    h.beta = inv.beta;
    h.c = inv.c;
    h.dB = h.pb.orbit;
    int twoN = 2 * n * (2 * g - 2) + h.beta;
    if (twoN % 2)
        throw Error(ErrorKind::ParityGuard, "2n(2g-2) + beta = " + std::to_string(twoN) + " is odd for " + to_string(h.dC));

    auto bd = block_decompose(h.dB);
    std::vector<WeilPoint> labels;
    std::vector<int> index_of(h.dC.size() + 2, -1);  // position -> generator, -1 if none
    for (size_t k = 0; k < h.dC.size(); ++k) {
        if (h.dC[k] % 2) continue;
        WeilPoint pt{true, int(k) + 1, -1};
        for (size_t b = 0; b < bd.size(); ++b)
            if (int(k) >= bd[b].start && int(k) < bd[b].start + int(bd[b].parts.size())) pt.block = int(b);
        index_of[k + 1] = int(labels.size());
        labels.push_back(pt);
    }
    int free_gens = twoN - h.beta - 1;
    for (int i = 0; i < free_gens; ++i) labels.push_back(WeilPoint{});
    h.space = weil_space(twoN / 2, labels);
    const WeilSpace& w = h.space;

    auto x = [&](int j) {
        gf2::Vec v(w.gens());
        if (j >= 1 && j < int(index_of.size()) && index_of[size_t(j)] >= 0) v.set(index_of[size_t(j)]);
        return v;
    };
    auto ties = [&](const std::vector<int>& I) {
        std::vector<gf2::Vec> out;
        for (int j : I) {
            auto v = x(j) ^ x(j + 1);
            if (!v.zero()) out.push_back(v);
        }
        return out;
    };
    h.VC = ties(h.pc.index_set);

    for (size_t b = 0; b < bd.size(); ++b) {
        std::vector<int> pts;
        for (int i = 0; i < int(labels.size()); ++i)
            if (labels[size_t(i)].marked && labels[size_t(i)].block == int(b)) pts.push_back(i);
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            gf2::Vec v(w.gens());
            v.set(pts[k]);
            v.set(pts.back());
            h.naive.push_back(v);
        }
    }
    for (int i = 0; i < w.gens(); ++i)
        if (!labels[size_t(i)].marked) h.naive.push_back(w.generator(i));
    h.VB = h.naive;
    for (auto& v : ties(h.pb.index_set)) h.VB.push_back(v);

    h.dim_VB = kernel_dim_of(lift(w, h.VB));
    h.dim_VC = kernel_dim_of(lift(w, h.VC));
    h.dim_naive = kernel_dim_of(lift(w, h.naive));
    h.dual = dual_check(w, h.VB, h.VC);
    h.components = component_count(w, h.VB);
    h.degree_ok = h.dim_VB + h.dim_VC == w.kernel_dim();
    h.naive_dual = dual_check(w, h.naive, {});
    return h;
}

} // namespace orbitduality
