#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arid/algebra.hpp"

namespace arid::bench {

struct Stat {
    std::string name;
    size_t runs = 0;
    double mean_ms = 0, ci95_ms = 0, min_ms = 0, max_ms = 0;
    // operation-count energy proxy, totals across all measured runs
    unsigned long long pairings = 0, scalar_muls = 0, hashes = 0;
};

// Times `fn` over `runs` iterations after 10 warm-up runs (excluded).
Stat measure(const std::string& name, size_t runs, const std::function<void()>& fn);

struct Options {
    bool cs = true, ds_cca2 = true, ds_cpa = true;
    bool precompute = true;  // also measure the precomputed DS paths
    size_t runs = 1000;      // >= 100
    CurveId cs_curve = CurveId::TypeA160;
    CurveId ds_curve = CurveId::Bn254;
    uint64_t seed = 1;
};

// Operations covered: cs_sign, cs_verify, cs_open, ds_sign_cca2[,_pre],
// ds_sign_cpa[,_pre], ds_verify, ds_open. Throws ConfigError if runs < 100.
std::vector<Stat> run_bench(const Options& opt);

std::string format_report(const std::vector<Stat>& stats);  // aligned text table
std::string json_report(const std::vector<Stat>& stats);

}  // namespace arid::bench
