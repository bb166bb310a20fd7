// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "orbitduality/orbitduality.hpp"

using namespace orbitduality;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = dt <= budget_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs of %.0fs", dt, budget_s);
    std::cout << "criterion " << id << " [" << (pass ? "PASS" : "FAIL") << "] " << title << " | " << o.detail << " | " << buf
              << (in_time ? "" : " (over budget)") << std::endl;
}

std::string counts(const VerificationReport& r) {
    std::string s = std::to_string(r.passed) + "/" + std::to_string(r.instances - r.skipped) + " passed";
    if (r.skipped) s += ", " + std::to_string(r.skipped) + " skipped";
    return s;
}

std::string first_failure(const VerificationReport& r) {
    if (r.failures.empty()) return "";
    auto& f = r.failures.front();
    return "; first failure " + f.input + ": " + f.got;
}

} // namespace

int main() {
    criterion("1", "Springer bijection with inverse, n <= 8", 60, [] {
        long pairs = 0, bad = 0;
        for (int n = 1; n <= 8; ++n) {
            auto SC = enumerate_partitions(OrbitType::C, 2 * n, true);
            auto SB = enumerate_partitions(OrbitType::B, 2 * n + 1, true);
            std::set<Partition> image;
            for (auto& d : SC) {
                auto b = springer_dual(d, Direction::C_to_B);
                ++pairs;
                if (!is_special(b, OrbitType::B) || springer_dual(b, Direction::B_to_C) != d) ++bad;
                image.insert(b);
            }
            if (image.size() != SB.size() || SC.size() != SB.size()) ++bad;
        }
        return Outcome{bad == 0, std::to_string(pairs) + " special pairs, " + std::to_string(bad) + " defects"};
    });

    VerifyOptions eta_opts;
    eta_opts.max_n = 6;
    criterion("2", "eta_B = eta_C exactly for special Springer-dual pairs, n <= 6", 120, [&] {
        auto r = suite_eta(eta_opts);
        return Outcome{r.ok(), counts(r) + "; " + r.notes.front() + first_failure(r)};
    });
    criterion("2r", "refinement: eta coincidence with special d_B forces a special dual pair, n <= 6", 120, [&] {
        long coincidences = 0, bad = 0;
        for (int n = 1; n <= 6; ++n)
            for (auto& b : enumerate_partitions(OrbitType::B, 2 * n + 1, true))
                for (auto& c : enumerate_partitions(OrbitType::C, 2 * n, false))
                    if (eta_sequence(b, OrbitType::B) == eta_sequence(c, OrbitType::C)) {
                        ++coincidences;
                        if (!is_special(c, OrbitType::C) || springer_dual(c, Direction::C_to_B) != b) ++bad;
                    }
        return Outcome{bad == 0, std::to_string(coincidences) + " coincidences, " + std::to_string(bad) + " not dual"};
    });

    criterion("3", "half_check and eta-sum identity, special orbits n <= 8, g in {2,3}", 60, [] {
        long checked = 0, bad = 0;
        for (int n = 1; n <= 8; ++n)
            for (OrbitType t : {OrbitType::C, OrbitType::B})
                for (auto& d : enumerate_partitions(t, ambient(n, t), true))
                    for (int g : {2, 3}) {
                        auto rep = dimension_report(d, t, {n, g}, true);
                        ++checked;
                        if (!*rep.half_check || (t == OrbitType::C && !*rep.eta_sum_identity)) ++bad;
                    }
        return Outcome{bad == 0, std::to_string(checked) + " orbit/genus cases, " + std::to_string(bad) + " failures"};
    });

    criterion("4", "2^c equals the corner-oracle order, special B of total <= 17", 10, [] {
        long checked = 0, bad = 0;
        for (int N = 1; N <= 17; N += 2)
            for (auto& d : enumerate_partitions(OrbitType::B, N, true)) {
                auto inv = orbit_invariants(d, OrbitType::B);
                ++checked;
                if (inv.c != inv.corner_q) ++bad;
            }
        return Outcome{bad == 0, std::to_string(checked) + " partitions, " + std::to_string(bad) + " mismatches"};
    });

    VerifyOptions six;
    six.max_n = 6;
    criterion("5", "seesaw deg P_B * deg P_C = 2^c, type-C Levi types n <= 6", 60, [&] {
        auto r = suite_seesaw(six);
        return Outcome{r.ok(), counts(r) + first_failure(r)};
    });
    criterion("6", "component-group quotients multiply to 2^c, n <= 6", 60, [&] {
        auto r = suite_groups(six);
        return Outcome{r.ok(), counts(r) + first_failure(r)};
    });

    criterion("7", "iota-isotropic counts, structural = brute force = 2^(beta-c), dim Q <= 6, n <= 8, p = 101, 3 seeds", 600, [] {
        VerifyOptions o;
        o.max_n = 8;
        o.prime = 101;
        o.seed = 0;
        o.isotropic_seeds = 3;
        auto r = suite_isotropic(o);
        auto parts = isotropic_suite_partitions(8, 6).size();
        return Outcome{r.ok(), std::to_string(parts) + " partitions, " + counts(r) + "; " + r.notes.front() + first_failure(r)};
    });

    criterion("8", "formal-local lemmas on 500 random instances each", 300, [] {
        VerifyOptions o;
        o.prime = 101;
        o.seed = 0;
        o.local_count = 500;
        auto r = suite_local(o);
        return Outcome{r.ok(), counts(r) + " (resultant, Eisenstein, coefficient bounds, splitting, degeneracy)" + first_failure(r)};
    });

    criterion("9", "Weil duality and two components, Richardson pairs n <= 4, g in {2,3}; naive pair dual iff c = 0", 60, [] {
        long dual_ok = 0, total = 0, guarded = 0, naive_bad = 0;
        for (int g : {2, 3})
            for (int n = 1; n <= 4; ++n)
                for (auto& [L, pd] : enumerate_polarizations(n, OrbitType::C)) {
                    try {
                        auto h = hitchin_instance(n, g, pd.orbit, L);
                        ++total;
                        if (h.dual && h.components.count() == 2 && h.degree_ok) ++dual_ok;
                        if (h.naive_dual != (h.c == 0)) ++naive_bad;
                    } catch (const Error& e) {
                        if (e.kind != ErrorKind::ParityGuard) throw;
                        ++guarded;
                    }
                }
        return Outcome{dual_ok == total && naive_bad == 0,
                       std::to_string(dual_ok) + "/" + std::to_string(total) + " dual with 2 components, naive mismatches " +
                           std::to_string(naive_bad) + ", " + std::to_string(guarded) + " parity-guarded (odd 2N) not evaluated"};
    });

    criterion("10", "ramification parity at populated indices, type C n <= 8; non-special counterexamples fail", 10, [] {
        long special = 0, special_bad = 0, nonspecial = 0, nonspecial_even = 0;
        for (int n = 1; n <= 8; ++n)
            for (auto& d : enumerate_partitions(OrbitType::C, 2 * n, false)) {
                bool even = true;
                for (auto& e : ramification_coefficients(d)) even = even && e.parity_ok;
                if (is_special(d, OrbitType::C)) {
                    ++special;
                    if (!even) ++special_bad;
                } else {
                    ++nonspecial;
                    if (even) ++nonspecial_even;
                }
            }
        return Outcome{special_bad == 0 && nonspecial_even == 0,
                       std::to_string(special) + " special all even (" + std::to_string(special_bad) + " bad), " +
                           std::to_string(nonspecial) + " non-special, " + std::to_string(nonspecial - nonspecial_even) + " with an odd coefficient"};
    });

    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criterion line(s) failed" : std::string("acceptance: all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
