#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "orbitduality/report.hpp"

using namespace orbitduality;
namespace fs = std::filesystem;

namespace {

VerifyOptions opts(int max_n, std::vector<int> genera = {2, 3}, u32 prime = 101, std::uint64_t seed = 0) {
    VerifyOptions o;
    o.max_n = max_n;
    o.genera = std::move(genera);
    o.prime = prime;
    o.seed = seed;
    return o;
}

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("orbitduality-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

} // namespace

TEST(Verify, Duality) {
    auto r = run_verify("duality", opts(8));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.failed, 0);
    EXPECT_GT(r.passed, 0);
}

TEST(Verify, Seesaw) {
    auto r = run_verify("seesaw", opts(6));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.instances, 120);
}

TEST(Verify, SmokeAll) {
    auto o = opts(1, {2}, 101, 7);
    o.local_count = 50;
    auto r = run_verify("all", o);
    EXPECT_TRUE(r.ok()) << to_text(r);
    EXPECT_FALSE(r.parts.empty());
}

TEST(Verify, EtaReportsLiteralConverse) {
    auto r = run_verify("eta", opts(3));
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.failed, 2);  // one non-special coincidence at each of n = 2, 3
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes.front().find("with special d_B: 0"), std::string::npos);
}

TEST(Verify, UnknownSuite) {
    try {
        run_verify("nope", opts(1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, ErrorKind::UnknownSuite);
    }
}

TEST(Verify, Deterministic) {
    auto o = opts(4);
    auto a = dump(to_json(run_verify("isotropic", o)));
    auto b = dump(to_json(run_verify("isotropic", o)));
    EXPECT_EQ(a, b);
    auto c = dump(to_json(run_verify("weil", opts(3))));
    EXPECT_EQ(c, dump(to_json(run_verify("weil", opts(3)))));
}

TEST(Verify, JsonRoundTrip) {
    auto r = run_verify("groups", opts(4));
    auto j = to_json(r);
    auto back = report_from_json(ojson::parse(dump(j)));
    EXPECT_EQ(dump(to_json(back)), dump(j));
    EXPECT_EQ(back.passed, r.passed);
    EXPECT_EQ(summary_line(back), summary_line(r));
}

TEST(Cache, HitIsByteIdentical) {
    auto dir = scratch_dir("cache");
    auto o = opts(4);
    auto first = cached_verify("isotropic", o, dir);
    EXPECT_FALSE(first.hit);
    auto second = cached_verify("isotropic", o, dir);
    EXPECT_TRUE(second.hit);
    EXPECT_EQ(first.json, second.json);
    auto file = dir / ("isotropic-" + cache_key("isotropic", o) + ".json");
    std::ifstream in(file, std::ios::binary);
    std::string disk((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(disk, first.json);
    // any argument change misses
    auto o2 = o;
    o2.seed = 1;
    EXPECT_NE(cache_key("isotropic", o), cache_key("isotropic", o2));
    EXPECT_FALSE(cached_verify("isotropic", o2, dir).hit);
    fs::remove_all(dir);
}

TEST(Cache, EnvironmentWins) {
    ::unsetenv("ORBITDUALITY_CACHE");
    EXPECT_FALSE(resolve_cache_dir("").has_value());
    EXPECT_EQ(resolve_cache_dir("/a").value(), fs::path("/a"));
    ::setenv("ORBITDUALITY_CACHE", "/b", 1);
    EXPECT_EQ(resolve_cache_dir("/a").value(), fs::path("/b"));
    ::unsetenv("ORBITDUALITY_CACHE");
}

TEST(Records, OrbitRecord) {
    auto r = orbit_record({7, 6, 6, 4, 4, 2, 2, 1, 1}, OrbitType::B, 2);
    EXPECT_EQ(r["type"], "B");
    EXPECT_EQ(r["special"], true);
    EXPECT_EQ(r["c"], 1);
    EXPECT_EQ(r["beta"], 8);
    EXPECT_EQ(r["degree_partition"], ojson::parse("[6,6,6,4,4,2,2,2,1]"));
    EXPECT_EQ(r["partition"], ojson::parse("[7,6,6,4,4,2,2,1,1]"));
    EXPECT_TRUE(r.contains("kl"));
    EXPECT_TRUE(r.contains("eta"));
    EXPECT_TRUE(r.contains("dims"));
}

TEST(Records, WeilRoundTrip) {
    auto h = hitchin_instance(2, 2, {2, 2}, {{1}, 2, OrbitType::C});
    auto rec = weil_record(h);
    auto text = dump(rec);
    auto back = ojson::parse(text);
    EXPECT_EQ(back, rec);
    EXPECT_EQ(dump(back), text);
}

TEST(Records, OrbitCsv) {
    std::vector<ojson> rows;
    for (auto& d : enumerate_partitions(OrbitType::C, 6, false)) rows.push_back(flatten_orbit(orbit_record(d, OrbitType::C, 2)));
    auto csv = to_csv(rows, orbit_csv_columns());
    auto header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header.rfind("partition,special,dual,c,beta,eta", 0), 0u) << header;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), long(rows.size()) + 1);
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("plain"), "plain");
}
