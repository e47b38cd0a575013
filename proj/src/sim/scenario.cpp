#include "arid/sim/scenario.hpp"

#include <cmath>

#include "json.hpp"

namespace arid::sim {

using nlohmann::json;

namespace {

Track parse_track(const json& jt) {
    std::vector<Waypoint> wps;
    for (const auto& w : jt)
        wps.push_back(Waypoint{w.at("t").get<double>(), w.at("lat").get<double>(),
                               w.at("lon").get<double>(), w.value("alt", 0.0)});
    try {
        return Track(std::move(wps));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

wire::ModeTag parse_scheme(const std::string& s) {
    if (s == "cs") return wire::ModeTag::Cs;
    if (s == "ds-cca2") return wire::ModeTag::DsCca2;
    if (s == "ds-cpa") return wire::ModeTag::DsCpa;
    throw ConfigError("scenario: unknown scheme '" + s + "'");
}

}  // namespace

std::string run_scenario(const std::string& config_json) {
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: bad config JSON: ") + e.what());
    }
    try {
        if (cfg.value("schema", 0) != 1) throw ConfigError("scenario: schema must be 1");
        uint64_t seed = cfg.value("seed", 1ull);
        double duration = cfg.at("duration").get<double>();
        if (duration <= 0) throw ConfigError("scenario: duration must be positive");
        double tau = cfg.value("tau", 5.0);
        std::string curve_set = cfg.value("curve", "production");
        CurveId cs_curve, ds_curve;
        if (curve_set == "production") {
            cs_curve = CurveId::TypeA160;
            ds_curve = CurveId::Bn254;
        } else if (curve_set == "toy") {
            cs_curve = CurveId::Toy;
            ds_curve = CurveId::ToyT3;
        } else {
            throw ConfigError("scenario: curve must be 'production' or 'toy'");
        }
        Polygon zone;
        for (const auto& v : cfg.value("zone", json::array()))
            zone.push_back(GeoPoint{v.at(0).get<double>(), v.at(1).get<double>()});
        double loss = cfg.contains("channel") ? cfg["channel"].value("loss", 0.0) : 0.0;
        uint64_t replay_every = 0;
        double replay_delay = 0;
        if (cfg.contains("adversary")) {
            replay_every = cfg["adversary"].value("replay_every", 0ull);
            replay_delay = cfg["adversary"].value("replay_delay", 2 * tau);
        }
        const auto& jdrones = cfg.at("drones");
        if (!jdrones.is_array() || jdrones.empty())
            throw ConfigError("scenario: drones must be a non-empty array");

        constexpr uint32_t kCsGroup = 1, kDsGroup = 2;
        UssService uss;
        SeededRandom uss_rng(seed);
        bool any_cs = false, any_ds = false;
        for (const auto& d : jdrones) {
            auto m = parse_scheme(d.at("scheme").get<std::string>());
            (m == wire::ModeTag::Cs ? any_cs : any_ds) = true;
        }
        if (any_cs) uss.create_cs_group(kCsGroup, cs_curve, uss_rng);
        if (any_ds) uss.create_ds_group(kDsGroup, ds_curve, uss_rng);

        std::vector<UaAgent> drones;
        double max_rate = 1;
        uint64_t idx = 0;
        for (const auto& d : jdrones) {
            std::string name = d.at("name").get<std::string>();
            wire::ModeTag m = parse_scheme(d.at("scheme").get<std::string>());
            double rate = d.value("rate", 1.0);
            max_rate = std::max(max_rate, rate);
            Track track = parse_track(d.at("track"));
            uint64_t dseed = seed + 1000 + idx++;
            if (m == wire::ModeTag::Cs) {
                auto ctx = BilinearContext::create(cs_curve);
                auto key = uss.join_cs(kCsGroup, name, uss_rng);
                auto gpk = cs::deserialize_gpk(ctx, uss.pbir_fetch(kCsGroup)->gpk_blob);
                drones.emplace_back(name, kCsGroup, ctx, std::move(gpk), std::move(key),
                                    std::move(track), rate, dseed);
            } else {
                auto ctx = BilinearContext::create(ds_curve);
                auto key = uss.join_ds(kDsGroup, name, uss_rng);
                auto gpk = ds::deserialize_gpk(ctx, uss.pbir_fetch(kDsGroup)->gpk_blob);
                ds::Mode mode = m == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
                UaAgent agent(name, kDsGroup, m, ctx, gpk, key, std::move(track), rate, dseed);
                if (d.value("precompute", false)) {
                    SeededRandom prng(dseed + 5000);
                    agent.attach_store(ds::precompute_generate(
                        ctx, gpk, key, mode, static_cast<uint32_t>(std::ceil(duration)) + 1,
                        static_cast<uint32_t>(std::ceil(rate)), prng));
                }
                drones.push_back(std::move(agent));
            }
        }

        ObserverAgent observer(uss, tau, zone);
        BroadcastChannel channel(loss, seed + 1);

        std::map<std::string, uint64_t> verdicts;
        for (int v = 0; v <= 4; v++) verdicts[verdict_name(static_cast<Verdict>(v))] = 0;
        json disclosures = json::array();
        uint64_t replayed = 0, adversary_counter = 0;

        double dt = 1.0 / max_rate;
        double horizon = duration + (replay_every ? replay_delay + dt : 0);
        for (double now = 0; now <= horizon + 1e-9; now += dt) {
            if (now <= duration + 1e-9) {
                for (auto& ua : drones) {
                    auto frame = ua.tick(now);
                    if (!frame) continue;
                    if (replay_every && ++adversary_counter % replay_every == 0) {
                        channel.inject(now + replay_delay, *frame);
                        replayed++;
                    }
                    channel.send(now, std::move(*frame));
                }
            }
            for (auto& dv : channel.deliver_until(now)) {
                auto res = observer.receive(dv.frame, now);
                verdicts[verdict_name(res.verdict)]++;
                if (res.invasion) {
                    auto ack = uss.disclose(*res.invasion);
                    disclosures.push_back({{"case_id", ack.case_id}, {"verified", ack.verified}});
                }
            }
        }

        json rep;
        rep["schema"] = 1;
        rep["seed"] = seed;
        uint64_t sent = 0, failures = 0;
        double sign_ms = 0;
        json per_drone = json::object();
        for (const auto& ua : drones) {
            sent += ua.emitted();
            failures += ua.emission_failures();
            sign_ms += ua.sign_ms_total();
            per_drone[ua.name()] = {{"sent", ua.emitted()},
                                    {"emission_failures", ua.emission_failures()}};
        }
        rep["frames_sent"] = sent;
        rep["emission_failures"] = failures;
        rep["frames_dropped"] = channel.dropped();
        rep["frames_replayed_by_adversary"] = replayed;
        rep["verdicts"] = verdicts;
        rep["invasions"] = disclosures.size();
        rep["disclosures"] = disclosures;
        rep["per_drone"] = per_drone;
        rep["observer_network_calls"] = observer.network_calls();
        rep["timing"] = {{"sign_ms_mean", sent ? sign_ms / double(sent) : 0.0}};
        return rep.dump(2);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: bad config: ") + e.what());
    }
}

}  // namespace arid::sim
