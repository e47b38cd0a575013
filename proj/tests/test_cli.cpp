#include <filesystem>
#include <fstream>

#include "arid/cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("arid-cli-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

int run(const fs::path& ks, std::vector<std::string> args) {
    std::vector<std::string> full{"arid", "--keystore", ks.string()};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    return arid::cli::run_cli(int(argv.size()), argv.data());
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream(p) << s;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("cli: full lifecycle on toy curves") {
    TempDir tmp;
    const auto& ks = tmp.path;

    // setup both schemes; duplicates need --force
    CHECK(run(ks, {"setup", "--scheme", "cs", "--curve", "toy", "--seed", "1"}) == 0);
    CHECK(run(ks, {"setup", "--scheme", "ds", "--curve", "toy", "--seed", "2"}) == 0);
    CHECK(run(ks, {"setup", "--scheme", "cs", "--curve", "toy"}) == 2);
    CHECK(run(ks, {"setup", "--scheme", "cs", "--curve", "toy", "--force", "--seed", "1"}) == 0);

    // membership
    CHECK(run(ks, {"join", "--scheme", "cs", "--name", "ua-one", "--seed", "3"}) == 0);
    CHECK(run(ks, {"join", "--scheme", "ds", "--name", "ua-two", "--seed", "4"}) == 0);
    CHECK(run(ks, {"join", "--scheme", "cs", "--name", "ua-one"}) == 2);  // duplicate

    // member secrets are written owner-only
    auto member = ks / "cs" / "members" / "ua-one.key";
    REQUIRE(fs::exists(member));
    auto perms = fs::status(member).permissions();
    CHECK((perms & fs::perms::group_all) == fs::perms::none);
    CHECK((perms & fs::perms::others_all) == fs::perms::none);

    // track and zone fixtures: hover inside a small square
    write_text(ks / "track.json",
               R"([{"t":0,"lat":45.0,"lon":9.0,"alt":50},{"t":60,"lat":45.0,"lon":9.0,"alt":50}])");
    write_text(ks / "zone.json", R"([[45.001,8.999],[45.001,9.001],[44.999,9.001],[44.999,8.999]])");

    // fly all three schemes
    CHECK(run(ks, {"fly", "--scheme", "cs", "--member", "ua-one", "--duration", "3", "--rate",
                   "1", "--track", (ks / "track.json").string(), "--out",
                   (ks / "cs.frames").string(), "--pcap", (ks / "cs.pcap").string(), "--seed",
                   "5"}) == 0);
    CHECK(run(ks, {"fly", "--scheme", "ds-cca2", "--member", "ua-two", "--duration", "3",
                   "--rate", "1", "--track", (ks / "track.json").string(), "--precompute",
                   "--out", (ks / "cca2.frames").string(), "--seed", "6"}) == 0);
    CHECK(fs::file_size(ks / "cs.pcap") > 24);

    // a standalone precompute store feeds a later flight
    CHECK(run(ks, {"precompute", "--scheme", "ds-cpa", "--member", "ua-two", "--duration", "5",
                   "--rate", "1", "--out", (ks / "cpa.store").string(), "--seed", "7"}) == 0);
    CHECK(run(ks, {"fly", "--scheme", "ds-cpa", "--member", "ua-two", "--duration", "3",
                   "--rate", "1", "--track", (ks / "track.json").string(), "--store",
                   (ks / "cpa.store").string(), "--out", (ks / "cpa.frames").string(),
                   "--seed", "8"}) == 0);
    // an undersized store causes emission failures → exit 3
    CHECK(run(ks, {"precompute", "--scheme", "ds-cpa", "--member", "ua-two", "--duration", "1",
                   "--rate", "1", "--out", (ks / "tiny.store").string(), "--seed", "9"}) == 0);
    CHECK(run(ks, {"fly", "--scheme", "ds-cpa", "--member", "ua-two", "--duration", "5",
                   "--rate", "1", "--out", (ks / "under.frames").string(), "--store",
                   (ks / "tiny.store").string(), "--seed", "10"}) == 3);
    // CS flights reject DS-only options
    CHECK(run(ks, {"fly", "--scheme", "cs", "--member", "ua-one", "--precompute", "--out",
                   (ks / "x.frames").string()}) == 2);

    // observe: all frames verify with an aligned clock
    CHECK(run(ks, {"observe", "--frames", (ks / "cs.frames").string(), "--zone",
                   (ks / "zone.json").string(), "--report", (ks / "cs.report").string(),
                   "--out", (ks / "cs.invasions").string()}) == 0);
    auto rep = json::parse(read_text(ks / "cs.report"));
    CHECK(rep["frames"] == 4);
    CHECK(rep["verdicts"]["accepted"] == 4);
    CHECK(rep["invasions"] == 4);  // hover track sits inside the zone
    CHECK(run(ks, {"observe", "--frames", (ks / "cca2.frames").string()}) == 0);
    CHECK(run(ks, {"observe", "--frames", (ks / "cpa.frames").string()}) == 0);
    // a skewed observer clock pushes every frame outside τ → exit 4
    CHECK(run(ks, {"observe", "--frames", (ks / "cs.frames").string(), "--skew", "100",
                   "--report", (ks / "skew.report").string()}) == 4);
    auto skew = json::parse(read_text(ks / "skew.report"));
    CHECK(skew["verdicts"]["replay"] == 4);

    // disclose resolves the invasions and appends to the audit log
    CHECK(run(ks, {"disclose", "--report", (ks / "cs.invasions").string()}) == 0);
    auto audit = read_text(ks / "audit.jsonl");
    CHECK(audit.find("ua-one") != std::string::npos);
    CHECK(audit.find("\"case_id\":1") != std::string::npos);
    // a second disclosure continues the case numbering
    CHECK(run(ks, {"disclose", "--report", (ks / "cs.invasions").string()}) == 0);
    CHECK(read_text(ks / "audit.jsonl").find("\"case_id\":5") != std::string::npos);
    auto aperms = fs::status(ks / "audit.jsonl").permissions();
    CHECK((aperms & fs::perms::group_all) == fs::perms::none);
}

TEST_CASE("cli: config errors report exit code 2") {
    TempDir tmp;
    const auto& ks = tmp.path;
    CHECK(run(ks, {"join", "--scheme", "cs", "--name", "x"}) == 2);  // no group yet
    CHECK(run(ks, {"fly", "--scheme", "cs", "--member", "x", "--out",
                   (ks / "f").string()}) == 2);
    CHECK(run(ks, {"setup", "--scheme", "bogus"}) == 2);
    CHECK(run(ks, {"nonsense"}) == 2);
    CHECK(run(ks, {"observe", "--frames", (ks / "missing.frames").string()}) == 2);
    CHECK(run(ks, {"bench", "--runs", "5"}) == 2);  // below the 100-run floor
}

TEST_CASE("cli: bench runs on toy curves and writes a JSON report") {
    TempDir tmp;
    const auto& ks = tmp.path;
    CHECK(run(ks, {"bench", "--runs", "100", "--curve", "toy", "--schemes", "cs,ds-cpa",
                   "--seed", "11", "--json", (ks / "bench.json").string()}) == 0);
    auto rep = json::parse(read_text(ks / "bench.json"));
    bool saw_sign = false;
    for (const auto& s : rep) {
        CHECK(s["runs"].get<int>() >= 100);
        if (s["name"].get<std::string>().find("sign") != std::string::npos) saw_sign = true;
    }
    CHECK(saw_sign);
}

TEST_CASE("cli: simulate runs a toy scenario config") {
    TempDir tmp;
    const auto& ks = tmp.path;
    json cfg{{"schema", 1}, {"seed", 5}, {"duration", 5}, {"curve", "toy"},
             {"channel", {{"loss", 0.0}}}};
    json track = json::array({{{"t", 0}, {"lat", 45.0}, {"lon", 9.0}, {"alt", 50}},
                              {{"t", 60}, {"lat", 45.0}, {"lon", 9.0}, {"alt", 50}}});
    cfg["drones"] = json::array({{{"name", "d1"},
                                  {"scheme", "ds-cpa"},
                                  {"rate", 1},
                                  {"precompute", true},
                                  {"track", track}}});
    write_text(ks / "scenario.json", cfg.dump());
    CHECK(run(ks, {"simulate", "--config", (ks / "scenario.json").string(), "--out",
                   (ks / "report.json").string()}) == 0);
    auto rep = json::parse(read_text(ks / "report.json"));
    CHECK(rep["verdicts"]["accepted"].get<int>() > 0);
    CHECK(rep["verdicts"]["signature"] == 0);
    CHECK(run(ks, {"simulate", "--config", (ks / "nope.json").string()}) == 2);
}
