#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace orbitduality {

// Weakly decreasing list of positive parts. Zeros are stripped by canonical().
using Partition = std::vector<int>;

enum class OrbitType { B, C };

inline char type_char(OrbitType t) { return t == OrbitType::B ? 'B' : 'C'; }

inline OrbitType other(OrbitType t) { return t == OrbitType::B ? OrbitType::C : OrbitType::B; }

inline int total(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline Partition canonical(Partition p) {
    std::sort(p.begin(), p.end(), std::greater<int>());
    while (!p.empty() && p.back() <= 0) p.pop_back();
    return p;
}

inline std::string to_string(const Partition& p) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ']';
    return os.str();
}

// Parses "3,1,1" or "[3,1,1]"; exponent shorthand "1^5" is accepted.
inline Partition parse_partition(const std::string& s) {
    Partition out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        auto caret = tok.find('^');
        int v = std::stoi(tok.substr(0, caret));
        int rep = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        for (int i = 0; i < rep; ++i) out.push_back(v);
        tok.clear();
    };
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '[' || ch == ']') flush();
        else tok.push_back(ch);
    }
    flush();
    return canonical(out);
}

inline Partition transpose(const Partition& p) {
    Partition t;
    if (p.empty()) return t;
    t.assign(p.front(), 0);
    for (int part : p)
        for (int i = 0; i < part; ++i) ++t[i];
    return t;
}

// Multiplicity table r_i = #{j : p_j = i}.
inline std::map<int, int> multiplicities(const Partition& p) {
    std::map<int, int> r;
    for (int x : p) ++r[x];
    return r;
}

// a <= b in dominance order; shorter partition padded with zeros.
inline bool dominated_by(const Partition& a, const Partition& b) {
    long sa = 0, sb = 0;
    size_t len = std::max(a.size(), b.size());
    for (size_t i = 0; i < len; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa > sb) return false;
    }
    return true;
}

// Parts of the "bad" parity must have even multiplicity: even parts for B, odd for C.
inline bool bad_parity(int part, OrbitType t) { return (part % 2 == 0) == (t == OrbitType::B); }

inline void check_parity(const Partition& p, OrbitType t) {
    int n = total(p);
    bool odd = n % 2 != 0;
    if (odd != (t == OrbitType::B))
        throw Error(ErrorKind::ParityMismatch,
                    to_string(p) + " has total " + std::to_string(n) + ", wrong parity for type " + type_char(t));
}

inline bool is_member(const Partition& p, OrbitType t) {
    check_parity(p, t);
    for (auto [part, mult] : multiplicities(p))
        if (bad_parity(part, t) && mult % 2 != 0) return false;
    return true;
}

// Greedy collapse: take the largest offending part, lower its last copy by one and
// raise the first later part that is at least two smaller (a fresh 1 if none).
inline Partition collapse(const Partition& p0, OrbitType t) {
    check_parity(p0, t);
    Partition v = canonical(p0);
    for (;;) {
        auto r = multiplicities(v);
        int q = 0;
        for (auto it = r.rbegin(); it != r.rend(); ++it)
            if (bad_parity(it->first, t) && it->second % 2 != 0) {
                q = it->first;
                break;
            }
        if (q == 0) return v;
        size_t idx = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == q) idx = i;
        v[idx] = q - 1;
        size_t j = idx + 1;
        while (j < v.size() && v[j] >= q - 1) ++j;
        if (j == v.size()) v.push_back(0);
        v[j] += 1;
        v = canonical(v);
    }
}

inline bool is_special(const Partition& p, OrbitType t) {
    if (!is_member(p, t)) throw Error(ErrorKind::NotAMember, to_string(p) + " is not of type " + type_char(t));
    Partition tr = transpose(p);
    for (auto [part, mult] : multiplicities(tr))
        if (bad_parity(part, t) && mult % 2 != 0) return false;
    return true;
}

enum class Direction { C_to_B, B_to_C };

inline Partition plus_one(Partition p) {
    if (p.empty()) return {1};
    p.front() += 1;
    return p;
}

inline Partition minus_one(Partition p) {
    if (!p.empty()) p.back() -= 1;
    return canonical(p);
}

inline Partition springer_dual(const Partition& p, Direction dir) {
    OrbitType src = dir == Direction::C_to_B ? OrbitType::C : OrbitType::B;
    if (!is_special(p, src))
        throw Error(ErrorKind::NotSpecial, to_string(p) + " is not special of type " + type_char(src));
    if (dir == Direction::C_to_B) return collapse(plus_one(p), OrbitType::B);
    return collapse(minus_one(p), OrbitType::C);
}

// All partitions of n in descending lexicographic order.
inline std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(rest, maxpart); x >= 1; --x) {
            cur.push_back(x);
            rec(rest - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::vector<Partition> enumerate_partitions(OrbitType t, int N, bool special_only) {
    std::vector<Partition> out;
    if (N < 1) return out;
    check_parity(Partition{N}, t);
    for (auto& p : all_partitions(N)) {
        if (!is_member(p, t)) continue;
        if (special_only && !is_special(p, t)) continue;
        out.push_back(p);
    }
    return out;
}

// Rank n attached to a partition of 2n (C) or 2n+1 (B).
inline int rank_of(const Partition& p, OrbitType t) {
    int N = total(p);
    return t == OrbitType::C ? N / 2 : (N - 1) / 2;
}

inline int ambient(int n, OrbitType t) { return t == OrbitType::C ? 2 * n : 2 * n + 1; }

} // namespace orbitduality
