#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isotropic.hpp"
#include "local_checks.hpp"
#include "orbit.hpp"
#include "prym_weil.hpp"
#include "richardson.hpp"

namespace orbitduality {

inline constexpr const char* kVersion = "0.1.0";

using ojson = nlohmann::ordered_json;

struct FailureRecord {
    std::string input, expected, got;
};

struct VerifyOptions {
    int max_n = 4;
    std::vector<int> genera{2, 3};
    u32 prime = 101;
    std::uint64_t seed = 0;
    int local_count = 500;
    int isotropic_seeds = 3;
    int isotropic_max_dim = 6;  // dim Q bound for the isotropic sweep
};

struct VerificationReport {
    std::string suite;
    VerifyOptions options;
    long instances = 0, passed = 0, failed = 0, skipped = 0;
    std::vector<FailureRecord> failures;
    std::vector<std::string> notes;
    std::vector<VerificationReport> parts;  // sub-suites of "all"
    double wall_seconds = 0;                 // never serialized

    bool ok() const { return failed == 0; }
    void check(bool good, const std::string& input, const std::string& expected, const std::string& got) {
        ++instances;
        if (good) {
            ++passed;
            return;
        }
        ++failed;
        if (failures.size() < 200) failures.push_back({input, expected, got});
    }
    void skip() {
        ++instances;
        ++skipped;
    }
};

namespace detail {

inline std::string eta_str(const std::vector<int>& v) { return to_string(Partition(v.begin(), v.end())); }

inline std::string flag(bool b) { return b ? "true" : "false"; }

} // namespace detail

inline VerificationReport suite_duality(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "duality";
    for (int n = 1; n <= o.max_n; ++n) {
        auto SC = enumerate_partitions(OrbitType::C, 2 * n, true);
        auto SB = enumerate_partitions(OrbitType::B, 2 * n + 1, true);
        std::set<Partition> image;
        for (auto& d : SC) {
            auto b = springer_dual(d, Direction::C_to_B);
            image.insert(b);
            bool special = is_special(b, OrbitType::B);
            bool back = special && springer_dual(b, Direction::B_to_C) == d;
            long dc = orbit_dimension(d, OrbitType::C), db = orbit_dimension(b, OrbitType::B);
            r.check(special && back && dc == db, to_string(d) + "C",
                    "special dual, inverse, equal dimension",
                    to_string(b) + " special=" + detail::flag(special) + " inverse=" + detail::flag(back) + " dims " +
                        std::to_string(dc) + "/" + std::to_string(db));
        }
        r.check(image.size() == SB.size() && SC.size() == SB.size(), "n=" + std::to_string(n), std::to_string(SB.size()) + " special B orbits hit",
                std::to_string(image.size()) + " of " + std::to_string(SB.size()));
        for (auto& b : SB) {
            auto inv = orbit_invariants(b, OrbitType::B);
            auto deg = springer_dual(b, Direction::B_to_C);
            deg.push_back(1);
            r.check(inv.c == inv.corner_q && inv.degree_partition == deg, to_string(b) + "B",
                    "2^c = corner order, degree = [dual,1]",
                    "c=" + std::to_string(inv.c) + " corners=" + std::to_string(inv.corner_q) + " degree=" + to_string(inv.degree_partition));
        }
    }
    return r;
}

inline VerificationReport suite_eta(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "eta";
    long refined = 0, literal = 0;
    for (int n = 1; n <= o.max_n; ++n) {
        for (auto& d : enumerate_partitions(OrbitType::C, 2 * n, true)) {
            auto b = springer_dual(d, Direction::C_to_B);
            auto ec = eta_sequence(d, OrbitType::C), eb = eta_sequence(b, OrbitType::B);
            bool kl = kl_label(d, OrbitType::C) == kl_label(b, OrbitType::B);
            r.check(ec == eb && kl, to_string(d) + "C/" + to_string(b) + "B", "equal eta and KL label",
                    detail::eta_str(ec) + " vs " + detail::eta_str(eb) + " kl=" + detail::flag(kl));
        }
        auto allB = enumerate_partitions(OrbitType::B, 2 * n + 1, false);
        auto allC = enumerate_partitions(OrbitType::C, 2 * n, false);
        for (auto& b : allB)
            for (auto& c : allC) {
                if (eta_sequence(b, OrbitType::B) != eta_sequence(c, OrbitType::C)) continue;
                bool dual = is_special(b, OrbitType::B) && is_special(c, OrbitType::C) &&
                            springer_dual(c, Direction::C_to_B) == b;
                if (!dual && is_special(b, OrbitType::B)) ++refined;
                if (!dual) ++literal;
                r.check(dual, to_string(b) + "B ~ " + to_string(c) + "C", "equal eta only for special dual pairs",
                        "equal eta " + detail::eta_str(eta_sequence(c, OrbitType::C)) + ", special B=" +
                            detail::flag(is_special(b, OrbitType::B)));
            }
    }
    r.notes.push_back("converse violations: " + std::to_string(literal) + ", with special d_B: " + std::to_string(refined));
    return r;
}

inline VerificationReport suite_dims(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "dims";
    for (int n = 1; n <= o.max_n; ++n) {
        for (OrbitType t : {OrbitType::C, OrbitType::B})
            for (auto& d : enumerate_partitions(t, ambient(n, t), true))
                for (int g : o.genera) {
                    auto rep = dimension_report(d, t, {n, g}, true);
                    bool ok = rep.half_check.value_or(false) && (t == OrbitType::B || rep.eta_sum_identity.value_or(false));
                    r.check(ok, to_string(d) + type_char(t) + " g=" + std::to_string(g), "half_check and eta-sum identity",
                            "base=" + std::to_string(rep.hitchin_base_dim) + " moduli=" + std::to_string(rep.moduli_dim));
                }
        for (auto& d : enumerate_partitions(OrbitType::C, 2 * n, false)) {
            bool special = is_special(d, OrbitType::C), all_even = true;
            std::string got;
            for (auto& e : ramification_coefficients(d)) {
                all_even = all_even && e.parity_ok;
                got += "(" + std::to_string(e.i) + "," + std::to_string(e.partial_sum) + ")";
            }
            r.check(all_even == special, to_string(d) + "C ramification",
                    special ? "even at every populated index" : "some odd coefficient", got);
        }
    }
    return r;
}

inline VerificationReport suite_seesaw(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "seesaw";
    for (int n = 1; n <= o.max_n; ++n)
        for (auto& [L, pd] : enumerate_polarizations(n, OrbitType::C)) {
            auto s = seesaw_check(L);
            bool shape = richardson_shape_ok(block_decompose(s.pb.orbit));
            bool sum = int(s.pb.index_set.size() + s.pc.index_set.size()) == s.c;
            r.check(s.ok() && shape && sum, to_string(L), "deg P_B * deg P_C = 2^c, Springer dual orbits",
                    "2^" + std::to_string(s.pb.log2_degree) + " * 2^" + std::to_string(s.pc.log2_degree) + " c=" +
                        std::to_string(s.c) + " springer=" + detail::flag(s.springer_ok) + " shape=" + detail::flag(shape));
        }
    return r;
}

inline VerificationReport suite_groups(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "groups";
    for (int n = 1; n <= o.max_n; ++n)
        for (auto& [L, pd] : enumerate_polarizations(n, OrbitType::C)) {
            auto g = component_groups(L);
            auto order = orbit_invariants(pd.orbit, OrbitType::C).canonical_quotient_order;
            bool ok = g.nested && g.product_ok && g.cross_check &&
                      (std::uint64_t(1) << (g.log2_quot_W + g.log2_quot_theta)) == order;
            r.check(ok, to_string(L), "quotients multiply to 2^c",
                    "2^" + std::to_string(g.log2_quot_W) + " * 2^" + std::to_string(g.log2_quot_theta) + " c=" +
                        std::to_string(g.c) + " nested=" + detail::flag(g.nested) + " cross=" + detail::flag(g.cross_check));
        }
    return r;
}

// Special type-B partitions with dim Q <= bound, in enumeration order.
inline std::vector<Partition> isotropic_suite_partitions(int max_n, int max_dim) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_n; ++n)
        for (auto& d : enumerate_partitions(OrbitType::B, 2 * n + 1, true))
            if (orbit_invariants(d, OrbitType::B).beta + 1 <= max_dim) out.push_back(d);
    return out;
}

inline VerificationReport suite_isotropic(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "isotropic";
    long resamples = 0;
    for (auto& d : isotropic_suite_partitions(o.max_n, o.isotropic_max_dim))
        for (int k = 0; k < o.isotropic_seeds; ++k) {
            std::uint64_t seed = o.seed + std::uint64_t(k);
            std::string input = to_string(d) + " seed=" + std::to_string(seed);
            try {
                auto rep = count_report(d, o.prime, seed);
                resamples += rep.resamples;
                r.check(rep.ok(), input, std::to_string(rep.expected) + " solutions, sets agree",
                        "structural=" + std::to_string(rep.structural_count) + " brute=" + std::to_string(rep.brute_count) +
                            " agree=" + detail::flag(rep.sets_agree));
            } catch (const Error& e) {
                r.check(false, input, "count", e.what());
            }
        }
    r.notes.push_back("resampled draws: " + std::to_string(resamples));
    return r;
}

inline VerificationReport suite_weil(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "weil";
    std::mt19937_64 rng(o.seed);
    for (int N = 1; N <= 8; ++N) {
        auto w = weil_space(N);
        int m = w.gens();
        r.check(induced_rank(w) == w.kernel_dim(), "N=" + std::to_string(N), "nondegenerate on ker beta",
                "rank " + std::to_string(induced_rank(w)));
        auto full = component_count(w, [&] {
            std::vector<gf2::Vec> all;
            for (int i = 0; i < m; ++i) all.push_back(w.generator(i));
            return all;
        }());
        bool proper = true;
        for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t(1) << m); ++mask) {
            std::vector<gf2::Vec> gens;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) gens.push_back(w.generator(i));
            proper = proper && component_count(w, gens).log2 == 0;
        }
        r.check(full.count() == 2 && proper, "N=" + std::to_string(N) + " components", "2 for all generators, 1 for proper subsets",
                std::to_string(full.count()) + ", proper=" + detail::flag(proper));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<gf2::Vec> gens;
            int k = int(rng() % std::uint64_t(m + 1));
            for (int j = 0; j < k; ++j) {
                gf2::Vec v(m);
                for (int i = 0; i < m; ++i)
                    if (rng() & 1) v.set(i);
                gens.push_back(v);
            }
            auto ann = annihilator(w, gens);
            bool twice = gf2::same_span(annihilator(w, ann.rows), lift(w, gens));
            bool dims = kernel_dim_of(lift(w, gens)) + kernel_dim_of(ann) == w.kernel_dim();
            r.check(twice && dims, "N=" + std::to_string(N) + " random subspace " + std::to_string(trial),
                    "Ann(Ann V) = V, dims add to 2N-2", "involution=" + detail::flag(twice) + " dims=" + detail::flag(dims));
        }
    }
    long guarded = 0;
    for (int g : o.genera)
        for (int n = 1; n <= o.max_n; ++n)
            for (auto& [L, pd] : enumerate_polarizations(n, OrbitType::C)) {
                std::string input = to_string(L) + " " + to_string(pd.orbit) + " g=" + std::to_string(g);
                try {
                    auto h = hitchin_instance(n, g, pd.orbit, L);
                    auto dims = dimension_report(h.dC, OrbitType::C, {n, g});
                    bool degrees = h.space.kernel_dim() == *dims.log2_deg_prym_dual &&
                                   h.dim_naive == *dims.log2_deg_component_cover;
                    bool ok = h.dual && h.components.count() == 2 && h.degree_ok && degrees && h.naive_dual == (h.c == 0);
                    r.check(ok, input, "dual, 2 components, naive pair dual iff c=0",
                            "dual=" + detail::flag(h.dual) + " components=" + std::to_string(h.components.count()) +
                                " dimVB+dimVC=" + std::to_string(h.dim_VB + h.dim_VC) + " naive=" + detail::flag(h.naive_dual) +
                                " c=" + std::to_string(h.c));
                } catch (const Error& e) {
                    if (e.kind != ErrorKind::ParityGuard) throw;
                    ++guarded;
                    r.skip();
                }
            }
    r.notes.push_back("parity-guarded instances skipped: " + std::to_string(guarded));
    return r;
}

inline VerificationReport suite_local(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "local";
    long equal = 0;
    for (int i = 0; i < o.local_count; ++i) {
        std::uint64_t s = o.seed * 1000003ull + std::uint64_t(i);
        LocalCharData chi;
        try {
            chi = local_instance(o.prime, s);
        } catch (const Error& e) {
            r.check(false, "instance " + std::to_string(s), "generic draw", e.what());
            continue;
        }
        std::string in = describe(chi) + " seed=" + std::to_string(s);
        auto res = resultant_check(chi);
        r.check(res.ok, in + " resultant", "ord = min degree", res.detail);
        auto eis = eisenstein_check(chi);
        r.check(eis.ok, in + " eisenstein", "factors Eisenstein", eis.detail);
        auto coe = coefficient_check(chi);
        r.check(coe.ok, in + " coefficients", "ord a_i >= eta bound", coe.detail);
        equal += coe.all_equal;
        auto spl = splitting_check(chi, s);
        r.check(spl.ok, in + " splitting", "criterion = section search", spl.detail);
        auto deg = degeneracy_check(chi);
        r.check(deg.ok, in + " degeneracy", "1-degenerate, additive", deg.detail);
    }
    // Bound equality is generic, not certain: a coefficient cancels mod p now and then.
    bool rate_ok = o.local_count == 0 || 10 * equal >= 9 * o.local_count;
    r.check(rate_ok, "bound equality rate", ">= 90% of draws", std::to_string(equal) + "/" + std::to_string(o.local_count));
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"duality", "eta", "dims", "seesaw", "groups", "isotropic", "weil", "local", "all"};
    return names;
}

inline VerificationReport run_verify(const std::string& suite, const VerifyOptions& o) {
    static const std::map<std::string, std::function<VerificationReport(const VerifyOptions&)>> table = {
        {"duality", suite_duality}, {"eta", suite_eta},           {"dims", suite_dims}, {"seesaw", suite_seesaw},
        {"groups", suite_groups},   {"isotropic", suite_isotropic}, {"weil", suite_weil}, {"local", suite_local},
    };
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    if (suite == "all") {
        r.suite = "all";
        for (auto& name : suite_names()) {
            if (name == "all") continue;
            auto part = run_verify(name, o);
            r.instances += part.instances;
            r.passed += part.passed;
            r.failed += part.failed;
            r.skipped += part.skipped;
            r.parts.push_back(std::move(part));
        }
    } else {
        auto it = table.find(suite);
        if (it == table.end()) throw Error(ErrorKind::UnknownSuite, suite);
        r = it->second(o);
    }
    r.options = o;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---- serialization

inline ojson to_json(const VerificationReport& r) {
    ojson j;
    j["suite"] = r.suite;
    j["version"] = kVersion;
    j["max_n"] = r.options.max_n;
    j["genera"] = r.options.genera;
    j["prime"] = r.options.prime;
    j["seed"] = r.options.seed;
    j["instances"] = r.instances;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["skipped"] = r.skipped;
    j["notes"] = r.notes;
    j["failures"] = ojson::array();
    for (auto& f : r.failures) j["failures"].push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
    if (!r.parts.empty()) {
        j["parts"] = ojson::array();
        for (auto& p : r.parts) j["parts"].push_back(to_json(p));
    }
    return j;
}

inline VerificationReport report_from_json(const ojson& j) {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.options.max_n = j.at("max_n").get<int>();
    r.options.genera = j.at("genera").get<std::vector<int>>();
    r.options.prime = j.at("prime").get<u32>();
    r.options.seed = j.at("seed").get<std::uint64_t>();
    r.instances = j.at("instances").get<long>();
    r.passed = j.at("passed").get<long>();
    r.failed = j.at("failed").get<long>();
    r.skipped = j.at("skipped").get<long>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (auto& f : j.at("failures")) r.failures.push_back({f.at("input"), f.at("expected"), f.at("got")});
    if (j.contains("parts"))
        for (auto& p : j.at("parts")) r.parts.push_back(report_from_json(p));
    return r;
}

inline std::string summary_line(const VerificationReport& r) {
    std::ostringstream os;
    os << r.suite << ": " << r.instances << " instances, " << r.passed << " passed, " << r.failed << " failed";
    if (r.skipped) os << ", " << r.skipped << " skipped";
    return os.str();
}

inline std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    auto one = [&](const VerificationReport& x) {
        os << summary_line(x) << "\n";
        for (auto& n : x.notes) os << "  note: " << n << "\n";
        size_t shown = 0;
        for (auto& f : x.failures) {
            if (shown++ == 10) {
                os << "  ... " << (x.failures.size() - 10) << " more\n";
                break;
            }
            os << "  FAIL " << f.input << ": expected " << f.expected << ", got " << f.got << "\n";
        }
    };
    for (auto& p : r.parts) one(p);
    one(r);
    return os.str();
}

// ---- cache

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string cache_key(const std::string& suite, const VerifyOptions& o) {
    std::ostringstream os;
    os << suite << "|" << o.max_n << "|";
    for (int g : o.genera) os << g << ",";
    os << "|" << o.prime << "|" << o.seed << "|" << o.local_count << "|" << o.isotropic_seeds << "|" << o.isotropic_max_dim << "|"
       << kVersion;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

// The environment variable wins over the flag.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
    if (const char* env = std::getenv("ORBITDUALITY_CACHE"); env && *env) return std::filesystem::path(env);
    if (!flag.empty()) return std::filesystem::path(flag);
    return std::nullopt;
}

struct CachedRun {
    VerificationReport report;
    std::string json;  // exact bytes written or read
    bool hit = false;
};

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline CachedRun cached_verify(const std::string& suite, const VerifyOptions& o, const std::optional<std::filesystem::path>& dir) {
    CachedRun out;
    std::filesystem::path file;
    if (dir) {
        file = *dir / (suite + "-" + cache_key(suite, o) + ".json");
        std::ifstream in(file, std::ios::binary);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            out.json = ss.str();
            out.report = report_from_json(ojson::parse(out.json));
            out.report.options = o;
            out.hit = true;
            return out;
        }
    }
    out.report = run_verify(suite, o);
    out.json = dump(to_json(out.report));
    if (dir) {
        std::error_code ec;
        std::filesystem::create_directories(*dir, ec);
        std::ofstream os(file, std::ios::binary);
        if (!os) throw Error(ErrorKind::IoError, "cannot write cache file " + file.string());
        os << out.json;
    }
    return out;
}

// ---- records

inline ojson partition_json(const Partition& p) { return ojson(std::vector<int>(p.begin(), p.end())); }

inline ojson orbit_record(const Partition& d0, OrbitType t, int g) {
    Partition d = canonical(d0);
    if (!is_member(d, t)) throw Error(ErrorKind::NotAMember, to_string(d) + " is not of type " + type_char(t));
    int n = rank_of(d, t);
    bool special = is_special(d, t);
    ojson j;
    j["partition"] = partition_json(d);
    j["type"] = std::string(1, type_char(t));
    j["special"] = special;
    j["blocks"] = ojson::array();
    if (t == OrbitType::B)
        for (auto& b : block_decompose(d)) j["blocks"].push_back({{"kind", block_name(b.kind)}, {"parts", partition_json(b.parts)}});
    if (special) {
        auto inv = orbit_invariants(d, t);
        j["dual"] = partition_json(springer_dual(d, t == OrbitType::C ? Direction::C_to_B : Direction::B_to_C));
        j["c"] = inv.c;
        j["beta"] = inv.beta;
        j["degree_partition"] = partition_json(inv.degree_partition);
    } else {
        j["dual"] = nullptr;
        j["c"] = nullptr;
        j["beta"] = nullptr;
        j["degree_partition"] = nullptr;
    }
    auto kl = kl_label(d, t);
    j["kl"] = {{"alpha", partition_json(kl.alpha)}, {"beta", partition_json(kl.beta)}};
    j["eta"] = eta_sequence(d, t);
    auto rep = dimension_report(d, t, {n, g});
    ojson dims;
    dims["n"] = n;
    dims["g"] = g;
    dims["orbit_dim"] = rep.orbit_dim;
    dims["hitchin_base_dim"] = rep.hitchin_base_dim;
    dims["moduli_dim"] = rep.moduli_dim;
    dims["half_check"] = rep.half_check ? ojson(*rep.half_check) : ojson(nullptr);
    dims["eta_sum_identity"] = rep.eta_sum_identity ? ojson(*rep.eta_sum_identity) : ojson(nullptr);
    dims["log2_deg_L_BC"] = rep.log2_deg_L_BC ? ojson(*rep.log2_deg_L_BC) : ojson(nullptr);
    dims["log2_deg_component_cover"] = rep.log2_deg_component_cover ? ojson(*rep.log2_deg_component_cover) : ojson(nullptr);
    dims["log2_deg_prym_dual"] = rep.log2_deg_prym_dual ? ojson(*rep.log2_deg_prym_dual) : ojson(nullptr);
    j["dims"] = dims;
    return j;
}

inline ojson polarization_record(const LeviType& L) {
    auto pd = richardson_data(L);
    ojson j;
    j["levi"] = to_string(L);
    j["ps"] = L.ps;
    j["q"] = L.q;
    j["type"] = std::string(1, type_char(L.type));
    j["ord"] = partition_json(pd.ord);
    j["orbit"] = partition_json(pd.orbit);
    j["index_set"] = pd.index_set;
    j["degree"] = std::uint64_t(1) << pd.log2_degree;
    if (L.type == OrbitType::C) {
        auto s = seesaw_check(L);
        j["dual_levi"] = to_string(dual_levi(L));
        j["dual_orbit"] = partition_json(s.pb.orbit);
        j["dual_degree"] = std::uint64_t(1) << s.pb.log2_degree;
        j["c"] = s.c;
        j["seesaw"] = s.ok();
    }
    return j;
}

inline ojson vec_json(const gf2::Vec& v) { return v.str(); }

inline ojson weil_record(const HitchinInstance& h) {
    ojson j;
    j["n"] = h.n;
    j["g"] = h.g;
    j["orbit_C"] = partition_json(h.dC);
    j["orbit_B"] = partition_json(h.dB);
    j["levi_C"] = to_string(h.LC);
    j["levi_B"] = to_string(h.LB);
    j["beta"] = h.beta;
    j["c"] = h.c;
    j["N"] = h.space.N;
    j["generators"] = ojson::array();
    for (auto& p : h.space.labels)
        j["generators"].push_back(p.marked ? ojson{{"marked", true}, {"position", p.position}, {"block", p.block}}
                                           : ojson{{"marked", false}});
    auto basis = [&](const std::vector<gf2::Vec>& gens) {
        ojson a = ojson::array();
        for (auto& v : gens) a.push_back(vec_json(v));
        return a;
    };
    j["V_B"] = basis(h.VB);
    j["V_C"] = basis(h.VC);
    j["dim_V_B"] = h.dim_VB;
    j["dim_V_C"] = h.dim_VC;
    j["dual_check"] = h.dual;
    j["component_count"] = h.components.count();
    j["degree_ok"] = h.degree_ok;
    j["naive_dual"] = h.naive_dual;
    return j;
}

// ---- CSV

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

inline std::string csv_value(const ojson& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// One row per record, columns in the given order.
inline std::string to_csv(const std::vector<ojson>& rows, const std::vector<std::string>& columns) {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_field(columns[i]);
    out += "\n";
    for (auto& r : rows) {
        for (size_t i = 0; i < columns.size(); ++i) {
            ojson v = r.contains(columns[i]) ? r[columns[i]] : ojson(nullptr);
            out += (i ? "," : "") + csv_field(csv_value(v));
        }
        out += "\n";
    }
    return out;
}

inline const std::vector<std::string>& orbit_csv_columns() {
    static const std::vector<std::string> c = {"partition", "special", "dual", "c", "beta", "eta", "degree_partition", "kl_alpha", "kl_beta", "orbit_dim"};
    return c;
}

inline ojson flatten_orbit(const ojson& rec) {
    ojson f;
    for (auto& k : {"partition", "special", "dual", "c", "beta", "eta", "degree_partition"}) f[k] = rec[k];
    f["kl_alpha"] = rec["kl"]["alpha"];
    f["kl_beta"] = rec["kl"]["beta"];
    f["orbit_dim"] = rec["dims"]["orbit_dim"];
    return f;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::IoError, "cannot open " + path);
    os << content;
    if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

} // namespace orbitduality
