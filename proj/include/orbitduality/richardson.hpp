#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "orbit.hpp"

namespace orbitduality {

struct LeviType {
    std::vector<int> ps;
    int q = 0;
    OrbitType type = OrbitType::C;
    bool operator==(const LeviType&) const = default;
};

inline std::string to_string(const LeviType& L) {
    std::string s = "(";
    for (size_t i = 0; i < L.ps.size(); ++i) s += (i ? "," : "") + std::to_string(L.ps[i]);
    s += ";" + std::to_string(L.q) + ")";
    s.push_back(type_char(L.type));
    return s;
}

// "2,1:2" means ps = (2,1), q = 2.
inline LeviType parse_levi(const std::string& s, OrbitType t) {
    LeviType L;
    L.type = t;
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    if (colon != std::string::npos) L.q = std::stoi(s.substr(colon + 1));
    std::string tok;
    for (char ch : head + ",") {
        if (ch == ',') {
            if (!tok.empty()) L.ps.push_back(std::stoi(tok));
            tok.clear();
        } else {
            tok.push_back(ch);
        }
    }
    return L;
}

inline int levi_rank(const LeviType& L) {
    int s = 0;
    for (int p : L.ps) s += p;
    return s + (L.type == OrbitType::C ? L.q / 2 : (L.q - 1) / 2);
}

inline void validate(const LeviType& L) {
    bool ok = L.q >= 0;
    for (int p : L.ps) ok = ok && p >= 1;
    if (L.type == OrbitType::C) ok = ok && L.q % 2 == 0;
    else ok = ok && L.q % 2 == 1;
    if (!ok) throw Error(ErrorKind::InvalidLevi, to_string(L));
}

struct PolarizationData {
    Partition ord;
    Partition orbit;
    std::vector<int> index_set;  // 1-based positions j
    int log2_degree = 0;
};

// ord_i counts the entries >= i of the multiset {q, p_1..p_k, p_k..p_1}.
inline Partition ord_partition(const LeviType& L) {
    Partition multiset{L.q};
    for (int p : L.ps) {
        multiset.push_back(p);
        multiset.push_back(p);
    }
    return transpose(canonical(multiset));
}

inline std::vector<int> index_set(const Partition& ord, OrbitType t) {
    std::vector<int> I;
    int want = t == OrbitType::B ? 0 : 1;
    for (size_t k = 0; k < ord.size(); ++k) {
        int j = int(k) + 1;
        int dj = ord[k], next = k + 1 < ord.size() ? ord[k + 1] : 0;
        if (j % 2 == want && dj % 2 == want && dj >= next + 2) I.push_back(j);
    }
    return I;
}

inline PolarizationData richardson_data(const LeviType& L) {
    validate(L);
    PolarizationData pd;
    pd.ord = ord_partition(L);
    pd.orbit = collapse(pd.ord, L.type);
    pd.index_set = index_set(pd.ord, L.type);
    pd.log2_degree = int(pd.index_set.size());
    return pd;
}

// Leading B1 or two-part B2 blocks, then B2 blocks, then the B3 block.
inline bool richardson_shape_ok(const BlockDecomposition& bd) {
    if (bd.empty() || bd.back().kind != BlockKind::B3) return false;
    size_t i = 0;
    while (i + 1 < bd.size() && (bd[i].kind == BlockKind::B1 || (bd[i].kind == BlockKind::B2 && bd[i].parts.size() == 2))) ++i;
    for (; i + 1 < bd.size(); ++i)
        if (bd[i].kind != BlockKind::B2) return false;
    return true;
}

inline LeviType dual_levi(const LeviType& L) {
    validate(L);
    LeviType D = L;
    D.type = other(L.type);
    D.q = L.type == OrbitType::C ? L.q + 1 : L.q - 1;
    return D;
}

struct SeesawReport {
    PolarizationData pc, pb;
    int c = 0;
    bool springer_ok = false;
    bool product_ok = false;
    bool ok() const { return springer_ok && product_ok; }
};

inline SeesawReport seesaw_check(const LeviType& LC) {
    if (LC.type != OrbitType::C) throw Error(ErrorKind::InvalidLevi, "seesaw_check takes a type-C Levi");
    SeesawReport r;
    r.pc = richardson_data(LC);
    r.pb = richardson_data(dual_levi(LC));
    r.c = orbit_invariants(r.pb.orbit, OrbitType::B).c;
    r.springer_ok = is_special(r.pc.orbit, OrbitType::C) && springer_dual(r.pc.orbit, Direction::C_to_B) == r.pb.orbit;
    r.product_ok = r.pb.log2_degree + r.pc.log2_degree == r.c;
    return r;
}

struct ComponentGroupData {
    int len = 0;  // coordinates are the positions 1..len of d_C, stored 0-based
    std::vector<int> even_positions;
    gf2::Basis A_theta, A_W, A_PC, A_PB;
    int c = 0;
    int log2_quot_W = 0;      // #(A_W / A_PB)
    int log2_quot_theta = 0;  // #(A_theta / A_PC)
    bool nested = false;
    bool product_ok = false;
    bool cross_check = false;
};

namespace detail {

// Constraints b_j = b_{j+1} (1-based); a missing or odd-part neighbour counts as zero.
inline std::vector<gf2::Vec> tie_constraints(int len, const std::vector<bool>& live, const std::vector<int>& I) {
    std::vector<gf2::Vec> cons;
    for (int j : I) {
        gf2::Vec v(len + 1);
        if (j - 1 < len && live[j - 1]) v.set(j - 1);
        if (j < len && live[j]) v.set(j);
        if (!v.zero()) cons.push_back(v);
    }
    return cons;
}

} // namespace detail

inline ComponentGroupData component_groups(const LeviType& LC) {
    if (LC.type != OrbitType::C) throw Error(ErrorKind::InvalidLevi, "component_groups takes a type-C Levi");
    auto pc = richardson_data(LC);
    auto pb = richardson_data(dual_levi(LC));
    const Partition& dC = pc.orbit;
    if (!is_special(dC, OrbitType::C)) throw Error(ErrorKind::NotSpecial, to_string(dC));
    const Partition& dB = pb.orbit;
    auto bd = block_decompose(dB);

    ComponentGroupData g;
    g.len = int(dC.size());
    int n = g.len + 1;  // one spare coordinate so out-of-range neighbours have a slot
    std::vector<bool> live(g.len, false);
    for (int i = 0; i < g.len; ++i)
        if (dC[i] % 2 == 0) {
            live[i] = true;
            g.even_positions.push_back(i + 1);
        }

    // A_theta and the masks of the live coordinates.
    g.A_theta = gf2::Basis(n);
    std::vector<gf2::Vec> dead;
    for (int i = 0; i < n; ++i) {
        if (i < g.len && live[i]) g.A_theta.insert(gf2::unit(n, i));
        else dead.push_back(gf2::unit(n, i));
    }

    // A_W: one generator per B2 block, summing its even positions in d_C.
    g.A_W = gf2::Basis(n);
    for (auto& b : bd) {
        if (b.kind != BlockKind::B2) continue;
        ++g.c;
        gf2::Vec v(n);
        for (int k = 0; k < int(b.parts.size()); ++k) {
            int pos = b.start + k;
            if (pos < g.len && live[pos]) v.set(pos);
        }
        g.A_W.insert(v);
    }

    auto tied_subspace = [&](const std::vector<int>& I) {
        auto cons = detail::tie_constraints(g.len, live, I);
        cons.insert(cons.end(), dead.begin(), dead.end());
        return gf2::orthogonal(n, cons);
    };
    g.A_PC = tied_subspace(pc.index_set);
    g.A_PB = gf2::intersect(n, tied_subspace(pb.index_set), g.A_W);

    g.nested = gf2::subspace_of(g.A_PB, g.A_W) && gf2::subspace_of(g.A_W, g.A_theta) &&
               gf2::subspace_of(g.A_PC, g.A_theta);
    g.log2_quot_W = g.A_W.dim() - g.A_PB.dim();
    g.log2_quot_theta = g.A_theta.dim() - g.A_PC.dim();
    g.product_ok = g.log2_quot_W + g.log2_quot_theta == g.c;

    std::vector<gf2::Vec> alt;
    for (int j : pc.index_set) {
        gf2::Vec v(n);
        if (j - 1 < g.len && live[j - 1]) v.set(j - 1);
        if (j < g.len && live[j]) v.set(j);
        alt.push_back(v);
    }
    g.cross_check = gf2::same_span(gf2::span(n, alt), g.A_PB);
    return g;
}

inline std::vector<std::vector<int>> compositions(int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = 1; x <= rest; ++x) {
            cur.push_back(x);
            rec(rest - x);
            cur.pop_back();
        }
    };
    rec(m);
    return out;
}

// Every Levi type (p_1..p_k; q) of rank n, ordered by Richardson orbit then by q.
inline std::vector<std::pair<LeviType, PolarizationData>> enumerate_polarizations(int n, OrbitType t) {
    std::vector<std::pair<LeviType, PolarizationData>> out;
    for (int half = 0; half <= n; ++half) {
        int q = t == OrbitType::C ? 2 * half : 2 * half + 1;
        int rest = n - half;
        if (rest == 0) continue;  // the group itself is not a proper parabolic
        for (auto& ps : compositions(rest)) {
            LeviType L{ps, q, t};
            out.emplace_back(L, richardson_data(L));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return b.second.orbit < a.second.orbit; });
    return out;
}

} // namespace orbitduality
