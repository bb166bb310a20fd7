#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitduality/orbitduality.hpp"

using namespace orbitduality;

namespace {

struct Globals {
    int max_n = 4;
    std::vector<int> genus{2, 3};
    u32 prime = 101;
    std::uint64_t seed = 0;
    bool json = false;
    std::string cache_dir;
};

OrbitType parse_type(const std::string& s) {
    if (s == "B" || s == "b") return OrbitType::B;
    if (s == "C" || s == "c") return OrbitType::C;
    throw Error(ErrorKind::Usage, "type must be B or C, got " + s);
}

void emit(const Globals& G, const ojson& j, const std::string& text) {
    if (G.json) std::cout << dump(j);
    else std::cout << text;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int cmd_dual(const Globals& G, const std::string& part, const std::string& type) {
    ojson out = ojson::array();
    std::string text;
    auto one = [&](const Partition& d, OrbitType t) {
        auto dir = t == OrbitType::C ? Direction::C_to_B : Direction::B_to_C;
        auto e = springer_dual(d, dir);
        out.push_back({{"partition", partition_json(d)}, {"type", std::string(1, type_char(t))}, {"dual", partition_json(e)},
                       {"round_trip", springer_dual(e, t == OrbitType::C ? Direction::B_to_C : Direction::C_to_B) == d}});
        text += to_string(d) + type_char(t) + " -> " + to_string(e) + type_char(other(t)) + "\n";
    };
    OrbitType t = parse_type(type);
    if (!part.empty()) {
        one(parse_partition(part), t);
    } else {
        for (int n = 1; n <= G.max_n; ++n)
            for (auto& d : enumerate_partitions(t, ambient(n, t), true)) one(d, t);
    }
    emit(G, part.empty() ? out : out[0], text);
    return 0;
}

int cmd_orbit(const Globals& G, const std::string& part, const std::string& type) {
    auto rec = orbit_record(parse_partition(part), parse_type(type), G.genus.front());
    std::string text;
    for (auto& [k, v] : rec.items()) text += k + ": " + v.dump() + "\n";
    emit(G, rec, text);
    return 0;
}

int cmd_richardson(const Globals& G, int n, const std::string& type, const std::string& levi) {
    OrbitType t = parse_type(type);
    std::vector<LeviType> Ls;
    if (!levi.empty()) Ls.push_back(parse_levi(levi, t));
    else
        for (auto& [L, pd] : enumerate_polarizations(n > 0 ? n : G.max_n, t)) Ls.push_back(L);
    ojson out = ojson::array();
    std::string text;
    bool ok = true;
    for (auto& L : Ls) {
        auto rec = polarization_record(L);
        std::string line = rec["levi"].get<std::string>() + "  ord=" + to_string(richardson_data(L).ord) +
                           "  orbit=" + to_string(richardson_data(L).orbit) + "  I=" + rec["index_set"].dump() +
                           "  deg=" + rec["degree"].dump();
        if (t == OrbitType::C) {
            line += "  dual=" + rec["dual_levi"].get<std::string>() + " deg=" + rec["dual_degree"].dump() +
                    "  c=" + rec["c"].dump() + "  seesaw=" + (rec["seesaw"].get<bool>() ? "ok" : "FAIL");
            ok = ok && rec["seesaw"].get<bool>();
        }
        text += line + "\n";
        out.push_back(rec);
    }
    emit(G, out, text);
    return ok ? 0 : 1;
}

int cmd_local_sample(const Globals& G, const std::string& part, const std::string& type, int N) {
    auto chi = sample_generic_char(parse_partition(part), parse_type(type), G.prime, N, G.seed);
    auto rep = assumption_check(chi);
    ojson j;
    j["partition"] = partition_json(chi.target);
    j["type"] = std::string(1, type_char(chi.type));
    j["prime"] = chi.p;
    j["N"] = chi.N;
    j["delta"] = chi.delta;
    j["attempts"] = chi.attempts;
    j["factors"] = ojson::array();
    std::string text = "partition " + to_string(chi.target) + type_char(chi.type) + "  p=" + std::to_string(chi.p) +
                       "  N=" + std::to_string(chi.N) + "  delta=" + std::to_string(chi.delta) + "\n";
    for (size_t i = 0; i < chi.factors.size(); ++i) {
        ojson coeffs = ojson::array();
        std::string poly;
        for (size_t k = 0; k < chi.factors[i].size(); ++k) {
            coeffs.push_back(chi.factors[i][k].str());
            poly += (k ? " + (" : "(") + chi.factors[i][k].str() + ")*l^" + std::to_string(k);
        }
        j["factors"].push_back({{"degree", chi.degrees[i]}, {"partner", chi.partner[i]}, {"residue", chi.residues[i]},
                                {"lambda", int(i) == chi.lambda_factor}, {"coefficients", coeffs}});
        text += "f" + std::to_string(i) + "  deg " + std::to_string(chi.degrees[i]) + "  partner f" +
                std::to_string(chi.partner[i]) + "  residue " + std::to_string(chi.residues[i]) + "\n    " + poly + "\n";
    }
    j["assumption_ok"] = rep.ok();
    j["failures"] = rep.failures;
    text += std::string("assumption check: ") + (rep.ok() ? "pass" : "FAIL") + "\n";
    for (auto& f : rep.failures) text += "  " + f + "\n";
    emit(G, j, text);
    return rep.ok() ? 0 : 1;
}

int cmd_verify(const Globals& G, const std::string& suite, int count) {
    VerifyOptions o;
    o.max_n = G.max_n;
    o.genera = G.genus;
    o.prime = G.prime;
    o.seed = G.seed;
    if (count >= 0) o.local_count = count;
    auto run = cached_verify(suite, o, resolve_cache_dir(G.cache_dir));
    if (G.json) std::cout << run.json;
    else {
        std::cout << to_text(run.report);
        if (run.hit) std::cout << "(cached)\n";
        else std::cout << "wall time " << run.report.wall_seconds << " s\n";
    }
    return run.report.ok() ? 0 : 1;
}

int cmd_isotropic(const Globals& G, const std::string& part, const std::string& method) {
    Partition d = parse_partition(part);
    if (method != "both" && method != "structural" && method != "brute")
        throw Error(ErrorKind::Usage, "method must be structural, brute or both");
    auto rep = count_report(d, G.prime, G.seed, method != "structural");
    const auto& m = rep.model;
    ojson j;
    j["partition"] = partition_json(d);
    j["prime"] = G.prime;
    j["seed"] = G.seed;
    j["dim_Q"] = m.dim();
    j["beta"] = m.beta;
    j["c"] = m.c;
    j["expected"] = rep.expected;
    j["structural"] = rep.structural_count;
    if (method != "structural") j["brute_force"] = rep.brute_count;
    j["resamples"] = rep.resamples;
    j["solutions"] = ojson::array();
    std::string text = "partition " + to_string(d) + "  dim Q=" + std::to_string(m.dim()) + "  beta=" + std::to_string(m.beta) +
                       "  c=" + std::to_string(m.c) + "  p=" + std::to_string(G.prime) + "  resamples=" + std::to_string(rep.resamples) + "\n";
    auto sols = combine(m, rep.structural);
    for (auto& s : sols) {
        std::string signs;
        for (int x : s.signs) signs += x > 0 ? '+' : '-';
        j["solutions"].push_back({{"signs", signs}, {"basis", s.basis}});
        text += "  W signs " + (signs.empty() ? std::string("(none)") : signs) + "\n";
    }
    text += "count structural=" + std::to_string(rep.structural_count);
    if (method != "structural") text += " brute=" + std::to_string(rep.brute_count);
    text += " expected=" + std::to_string(rep.expected) + "  verdict " + (rep.ok() ? "pass" : "FAIL") + "\n";
    j["verdict"] = rep.ok();
    emit(G, j, text);
    return rep.ok() ? 0 : 1;
}

HitchinInstance weil_from_args(const Globals& G, int n, const std::string& orbit, const std::string& levi) {
    if (levi.empty()) throw Error(ErrorKind::Usage, "--levi is required");
    LeviType L = parse_levi(levi, OrbitType::C);
    if (n <= 0) n = levi_rank(L);
    Partition d = orbit.empty() ? richardson_data(L).orbit : parse_partition(orbit);
    return hitchin_instance(n, G.genus.front(), d, L);
}

int cmd_weil(const Globals& G, int n, const std::string& orbit, const std::string& levi) {
    auto h = weil_from_args(G, n, orbit, levi);
    auto j = weil_record(h);
    std::string text = "n=" + std::to_string(h.n) + " g=" + std::to_string(h.g) + "  d_C=" + to_string(h.dC) + "  d_B=" +
                       to_string(h.dB) + "  beta=" + std::to_string(h.beta) + "  c=" + std::to_string(h.c) + "\n";
    text += "2N=" + std::to_string(2 * h.space.N) + "  dim ker beta=" + std::to_string(h.space.kernel_dim()) + "\n";
    text += "V_C (dim " + std::to_string(h.dim_VC) + "):";
    for (auto& v : h.VC) text += " " + v.str();
    text += "\nV_B (dim " + std::to_string(h.dim_VB) + "):";
    for (auto& v : h.VB) text += " " + v.str();
    text += "\ndual_check " + yes(h.dual) + "  components " + std::to_string(h.components.count()) + "  dim V_B + dim V_C = 2N-2 " +
            yes(h.degree_ok) + "\nnaive pair dual " + yes(h.naive_dual) + "\n";
    emit(G, j, text);
    bool ok = h.dual && h.components.count() == 2 && h.degree_ok;
    return ok ? 0 : 1;
}

int cmd_export(const Globals& G, const std::string& what, const std::string& format, const std::string& path,
               const std::string& type, int n, const std::string& orbit, const std::string& levi, const std::string& suite) {
    if (format != "json" && format != "csv") throw Error(ErrorKind::Usage, "format must be json or csv");
    std::string content;
    if (what == "orbits") {
        OrbitType t = parse_type(type);
        std::vector<ojson> recs;
        for (auto& d : enumerate_partitions(t, ambient(n > 0 ? n : G.max_n, t), false)) recs.push_back(orbit_record(d, t, G.genus.front()));
        if (format == "json") content = dump(ojson(recs));
        else {
            std::vector<ojson> flat;
            for (auto& r : recs) flat.push_back(flatten_orbit(r));
            content = to_csv(flat, orbit_csv_columns());
        }
    } else if (what == "levi") {
        std::vector<ojson> recs;
        for (auto& [L, pd] : enumerate_polarizations(n > 0 ? n : G.max_n, parse_type(type))) recs.push_back(polarization_record(L));
        if (format == "json") content = dump(ojson(recs));
        else content = to_csv(recs, {"levi", "ord", "orbit", "index_set", "degree", "dual_levi", "dual_orbit", "dual_degree", "c", "seesaw"});
    } else if (what == "weil") {
        auto rec = weil_record(weil_from_args(G, n, orbit, levi));
        if (format == "json") content = dump(rec);
        else content = to_csv({rec}, {"n", "g", "orbit_C", "orbit_B", "levi_C", "levi_B", "beta", "c", "N", "dim_V_B", "dim_V_C", "dual_check", "component_count", "degree_ok", "naive_dual"});
    } else if (what == "report") {
        VerifyOptions o;
        o.max_n = G.max_n;
        o.genera = G.genus;
        o.prime = G.prime;
        o.seed = G.seed;
        auto run = cached_verify(suite, o, resolve_cache_dir(G.cache_dir));
        if (format == "json") content = run.json;
        else {
            std::vector<ojson> rows;
            auto add = [&](const VerificationReport& r) {
                rows.push_back({{"suite", r.suite}, {"instances", r.instances}, {"passed", r.passed}, {"failed", r.failed}, {"skipped", r.skipped}});
            };
            for (auto& p : run.report.parts) add(p);
            add(run.report);
            content = to_csv(rows, {"suite", "instances", "passed", "failed", "skipped"});
        }
    } else {
        throw Error(ErrorKind::Usage, "export takes orbits, levi, weil or report");
    }
    if (path.empty() || path == "-") std::cout << content;
    else write_file(path, content);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Springer duality, Richardson data, isotropic counts and Weil pairings for types B and C"};
    app.require_subcommand(1);
    Globals G;
    app.add_option("--max-n", G.max_n, "largest rank in sweeps")->check(CLI::Range(1, 12));
    app.add_option("--genus", G.genus, "genus list, e.g. 2,3")->delimiter(',')->check(CLI::Range(2, 64));
    app.add_option("--prime", G.prime, "odd prime for finite-field work");
    app.add_option("--seed", G.seed, "random seed (default 0)");
    app.add_flag("--json", G.json, "machine-readable output");
    app.add_option("--cache-dir", G.cache_dir, "cache directory for verify (ORBITDUALITY_CACHE wins)");

    std::string partition, type = "C", levi, orbit, method = "both", suite = "all", what, format = "json", out, action;
    int n = 0, truncation = 0, count = -1;

    auto* dual = app.add_subcommand("dual", "Springer dual of a special partition, or all of them up to --max-n");
    dual->add_option("--partition,partition", partition);
    dual->add_option("--type", type);

    auto* orbit_cmd = app.add_subcommand("orbit", "invariants of one orbit");
    orbit_cmd->add_option("--partition,partition", partition)->required();
    orbit_cmd->add_option("--type", type);

    auto* rich = app.add_subcommand("richardson", "Richardson orbits and seesaw verdicts");
    rich->add_option("--n", n);
    rich->add_option("--type", type);
    rich->add_option("--levi", levi, "p1,p2,...:q");

    auto* local = app.add_subcommand("local", "formal-local sampling and checks");
    local->add_option("action", action, "sample | verify")->required()->check(CLI::IsMember({"sample", "verify"}));
    local->add_option("--partition", partition);
    local->add_option("--type", type);
    local->add_option("--truncation", truncation, "N; 0 picks 2*max part + 2");
    local->add_option("--count", count, "instances for verify");

    auto* iso = app.add_subcommand("isotropic", "iota-isotropic subspaces of the residue model");
    iso->add_option("--partition,partition", partition)->required();
    iso->add_option("--method", method, "structural | brute | both");

    auto* weil = app.add_subcommand("weil", "Weil-pairing model of a dual pair");
    weil->add_option("--n", n);
    weil->add_option("--g", G.genus, "genus")->delimiter(',');
    weil->add_option("--orbit", orbit);
    weil->add_option("--levi", levi)->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite,--suite", suite)->check(CLI::IsMember(suite_names()));
    verify->add_option("--count", count, "instances for the local suite");

    auto* exp = app.add_subcommand("export", "write records as JSON or CSV");
    exp->add_option("what", what, "orbits | levi | weil | report")->required();
    exp->add_option("--format", format);
    exp->add_option("--out", out, "path, stdout if omitted");
    exp->add_option("--type", type);
    exp->add_option("--n", n);
    exp->add_option("--orbit", orbit);
    exp->add_option("--levi", levi);
    exp->add_option("--g", G.genus)->delimiter(',');
    exp->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (G.genus.empty()) G.genus = {2};

    try {
        if (dual->parsed()) return cmd_dual(G, partition, type);
        if (orbit_cmd->parsed()) return cmd_orbit(G, partition, type);
        if (rich->parsed()) return cmd_richardson(G, n, type, levi);
        if (local->parsed()) {
            if (action == "sample") {
                if (partition.empty()) throw Error(ErrorKind::Usage, "local sample needs --partition");
                return cmd_local_sample(G, partition, type, truncation);
            }
            return cmd_verify(G, "local", count);
        }
        if (iso->parsed()) return cmd_isotropic(G, partition, method);
        if (weil->parsed()) return cmd_weil(G, n, orbit, levi);
        if (verify->parsed()) return cmd_verify(G, suite, count);
        if (exp->parsed()) return cmd_export(G, what, format, out, type, n, orbit, levi, suite);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
