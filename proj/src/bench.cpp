#include "arid/bench.hpp"

#include <chrono>
#include <cmath>

#include "arid/cs.hpp"
#include "arid/ds.hpp"
#include "arid/errors.hpp"
#include "json.hpp"

namespace arid::bench {

Stat measure(const std::string& name, size_t runs, const std::function<void()>& fn) {
    for (int i = 0; i < 10; i++) fn();
    reset_op_counters();
    std::vector<double> samples(runs);
    for (size_t i = 0; i < runs; i++) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        samples[i] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    }
    Stat s;
    s.name = name;
    s.runs = runs;
    s.min_ms = samples[0];
    s.max_ms = samples[0];
    double sum = 0;
    for (double x : samples) {
        sum += x;
        s.min_ms = std::min(s.min_ms, x);
        s.max_ms = std::max(s.max_ms, x);
    }
    s.mean_ms = sum / double(runs);
    double var = 0;
    for (double x : samples) var += (x - s.mean_ms) * (x - s.mean_ms);
    var /= runs > 1 ? double(runs - 1) : 1.0;
    s.ci95_ms = 1.96 * std::sqrt(var / double(runs));
    s.pairings = op_counters().pairings;
    s.scalar_muls = op_counters().scalar_muls;
    s.hashes = op_counters().hashes;
    return s;
}

namespace {

std::vector<uint8_t> bench_msg(size_t i) {
    std::vector<uint8_t> m(41, 0);  // telemetry-block sized
    for (int b = 0; b < 8; b++) m[b] = static_cast<uint8_t>(i >> (8 * b));
    return m;
}

void bench_cs(const Options& opt, std::vector<Stat>& out) {
    auto ctx = BilinearContext::create(opt.cs_curve);
    SeededRandom rng(opt.seed);
    auto su = cs::setup(ctx, rng);
    std::vector<cs::MemberKey> members;
    for (int i = 0; i < 3; i++) {
        auto [st, req] = cs::join_request(ctx, su.gpk, rng);
        auto cert = cs::join_issue(ctx, su.gpk, su.ik, req, su.reg, rng);
        members.push_back(cs::join_finalize(ctx, su.gpk, st, cert));
    }
    size_t i = 0;
    out.push_back(measure("cs_sign", opt.runs, [&] {
        (void)cs::sign(ctx, su.gpk, members[1], bench_msg(i++), rng);
    }));
    auto msg = bench_msg(0);
    auto sig = cs::sign(ctx, su.gpk, members[1], msg, rng);
    out.push_back(
        measure("cs_verify", opt.runs, [&] { (void)cs::verify(ctx, su.gpk, msg, sig); }));
    out.push_back(
        measure("cs_open", opt.runs, [&] { (void)cs::open(ctx, su.gpk, su.ok, su.reg, sig); }));
}

void bench_ds_mode(const Options& opt, ds::Mode mode, const std::string& tag, bool with_verify,
                   std::vector<Stat>& out) {
    auto ctx = BilinearContext::create(opt.ds_curve);
    SeededRandom rng(opt.seed + 17);
    auto [gpk, keys] = ds::setup(ctx, rng);
    ds::Registry reg;
    std::vector<ds::MemberKey> members;
    for (int i = 0; i < 3; i++) {
        auto kp = dsig::keygen(ctx, rng);
        auto [st, req] = ds::join_request(ctx, gpk, kp.sk, kp.pk, rng);
        auto issued = ds::join_issue(ctx, gpk, keys, reg, req, rng);
        members.push_back(ds::join_finalize(ctx, gpk, st, kp.pk, issued, rng));
    }
    size_t i = 0;
    out.push_back(measure("ds_sign_" + tag, opt.runs, [&] {
        (void)ds::sign(ctx, gpk, members[1], mode, bench_msg(i++), rng);
    }));
    if (opt.precompute) {
        // one oversized store; regenerated if the warm-up plus runs drain it
        auto refill = [&] {
            SeededRandom prng(opt.seed + 23);
            return ds::precompute_generate(ctx, gpk, members[1], mode,
                                           static_cast<uint32_t>(opt.runs + 16), 1, prng);
        };
        auto store = refill();
        out.push_back(measure("ds_sign_" + tag + "_pre", opt.runs, [&] {
            if (store.capacity() == 0) store = refill();
            (void)ds::sign(ctx, gpk, mode, bench_msg(i++), store);
        }));
    }
    if (with_verify) {
        auto msg = bench_msg(0);
        auto sig = ds::sign(ctx, gpk, members[1], mode, msg, rng);
        out.push_back(
            measure("ds_verify", opt.runs, [&] { (void)ds::verify(ctx, gpk, msg, sig); }));
        out.push_back(
            measure("ds_open", opt.runs, [&] { (void)ds::open(ctx, gpk, keys, reg, sig); }));
    }
}

}  // namespace

std::vector<Stat> run_bench(const Options& opt) {
    if (opt.runs < 100) throw ConfigError("bench: runs must be >= 100");
    std::vector<Stat> out;
    if (opt.cs) bench_cs(opt, out);
    if (opt.ds_cca2) bench_ds_mode(opt, ds::Mode::Cca2, "cca2", true, out);
    if (opt.ds_cpa) bench_ds_mode(opt, ds::Mode::Cpa, "cpa", false, out);
    return out;
}

std::string format_report(const std::vector<Stat>& stats) {
    char line[256];
    std::string out;
    snprintf(line, sizeof line, "%-18s %7s %11s %11s %9s %9s %10s %12s %8s\n", "operation",
             "runs", "mean_ms", "ci95_ms", "min_ms", "max_ms", "pairings", "scalar_muls",
             "hashes");
    out += line;
    for (const auto& s : stats) {
        snprintf(line, sizeof line,
                 "%-18s %7zu %11.3f %11.3f %9.3f %9.3f %10llu %12llu %8llu\n", s.name.c_str(),
                 s.runs, s.mean_ms, s.ci95_ms, s.min_ms, s.max_ms, s.pairings, s.scalar_muls,
                 s.hashes);
        out += line;
    }
    return out;
}

std::string json_report(const std::vector<Stat>& stats) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : stats)
        j.push_back({{"name", s.name},
                     {"runs", s.runs},
                     {"mean_ms", s.mean_ms},
                     {"ci95_ms", s.ci95_ms},
                     {"min_ms", s.min_ms},
                     {"max_ms", s.max_ms},
                     {"ops", {{"pairings", s.pairings},
                              {"scalar_muls", s.scalar_muls},
                              {"hashes", s.hashes}}}});
    return j.dump(2);
}

}  // namespace arid::bench
