#include "arid/sim/actors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"

namespace arid::sim {

using nlohmann::json;

std::vector<uint8_t> serialize_ack(const DiscloseAck& ack) {
    json j;
    j["case_id"] = ack.case_id;
    j["verified"] = ack.verified;
    std::string s = j.dump();
    return {s.begin(), s.end()};
}

void UssService::create_cs_group(uint32_t group_id, CurveId curve, RandomSource& rng) {
    if (pbir_.count(group_id)) throw ConfigError("uss: group id already exists");
    auto ctx = BilinearContext::create(curve);
    CsGroup g{ctx, cs::setup(ctx, rng), {}};
    pbir_[group_id] = PbirEntry{false, curve, cs::serialize_gpk(ctx, g.s.gpk)};
    cs_.emplace(group_id, std::move(g));
}

void UssService::create_ds_group(uint32_t group_id, CurveId curve, RandomSource& rng) {
    if (pbir_.count(group_id)) throw ConfigError("uss: group id already exists");
    auto ctx = BilinearContext::create(curve);
    auto [gpk, keys] = ds::setup(ctx, rng);  // throws on Type-1 curves
    pbir_[group_id] = PbirEntry{true, curve, ds::serialize_gpk(ctx, gpk)};
    ds_.emplace(group_id, DsGroup{ctx, std::move(gpk), std::move(keys), {}, {}});
}

cs::MemberKey UssService::join_cs(uint32_t group_id, const std::string& name, RandomSource& rng) {
    auto it = cs_.find(group_id);
    if (it == cs_.end()) throw ConfigError("uss: no such CS group");
    CsGroup& g = it->second;
    auto [st, req] = cs::join_request(g.ctx, g.s.gpk, rng);
    auto cert = cs::join_issue(g.ctx, g.s.gpk, g.s.ik, req, g.s.reg, rng);
    auto key = cs::join_finalize(g.ctx, g.s.gpk, st, cert);
    g.names.push_back(name);
    return key;
}

ds::MemberKey UssService::join_ds(uint32_t group_id, const std::string& name, RandomSource& rng) {
    auto it = ds_.find(group_id);
    if (it == ds_.end()) throw ConfigError("uss: no such DS group");
    DsGroup& g = it->second;
    auto kp = dsig::keygen(g.ctx, rng);
    auto [st, req] = ds::join_request(g.ctx, g.gpk, kp.sk, kp.pk, rng);
    auto issued = ds::join_issue(g.ctx, g.gpk, g.keys, g.reg, req, rng);
    auto key = ds::join_finalize(g.ctx, g.gpk, st, kp.pk, issued, rng);
    g.names.push_back(name);
    return key;
}

const UssService::PbirEntry* UssService::pbir_fetch(uint32_t group_id) const {
    auto it = pbir_.find(group_id);
    return it == pbir_.end() ? nullptr : &it->second;
}

std::vector<std::string> UssService::member_names(uint32_t group_id) const {
    if (auto it = cs_.find(group_id); it != cs_.end()) return it->second.names;
    if (auto it = ds_.find(group_id); it != ds_.end()) return it->second.names;
    return {};
}

DiscloseAck UssService::disclose(const InvasionReport& report) {
    AuditRecord rec;
    rec.case_id = next_case_++;
    rec.observed_at = report.observed_at;
    DiscloseAck ack{false, rec.case_id};
    try {
        auto payload = wire::decode_frame(report.frame);
        auto d = wire::decode_payload(payload);
        rec.group_id = d.payload.group_id;
        auto msg = wire::message_bytes(d.payload);
        if (d.mode == wire::ModeTag::Cs) {
            auto it = cs_.find(d.payload.group_id);
            if (it == cs_.end()) throw ConfigError("unknown group");
            CsGroup& g = it->second;
            auto sig = cs::deserialize_signature(g.ctx, d.sig_blob);
            if (!cs::verify(g.ctx, g.s.gpk, msg, sig)) {
                rec.note = "signature invalid";
            } else {
                ack.verified = true;
                size_t idx = cs::open(g.ctx, g.s.gpk, g.s.ok, g.s.reg, sig);
                rec.member = g.names.at(idx);
                rec.verified = true;
            }
        } else {
            auto it = ds_.find(d.payload.group_id);
            if (it == ds_.end()) throw ConfigError("unknown group");
            DsGroup& g = it->second;
            ds::Mode mode = d.mode == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
            auto sig = ds::deserialize_signature(g.ctx, mode, d.sig_blob);
            if (!ds::verify(g.ctx, g.gpk, msg, sig)) {
                rec.note = "signature invalid";
            } else {
                ack.verified = true;
                size_t idx = ds::open(g.ctx, g.gpk, g.keys, g.reg, sig);
                rec.member = g.names.at(idx);
                rec.verified = true;
            }
        }
    } catch (const wire::WireError& e) {
        rec.note = std::string("undecodable report: ") + e.what();
        ack.verified = false;
    } catch (const SerializationError& e) {
        rec.note = std::string("malformed signature: ") + e.what();
        ack.verified = false;
    } catch (const CryptoError& e) {
        // verified signature that opens to no registered member is an anomaly
        rec.note = std::string("anomaly: ") + e.what();
    } catch (const ConfigError& e) {
        rec.note = e.what();
        ack.verified = false;
    }
    audit_.push_back(std::move(rec));
    return ack;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "accepted";
        case Verdict::RejectedDecode: return "decode";
        case Verdict::RejectedReplay: return "replay";
        case Verdict::RejectedSignature: return "signature";
        case Verdict::RejectedUnknownGroup: return "unknown_group";
    }
    return "?";
}

ObserverAgent::ObserverAgent(PbirProvider pbir, double tau, Polygon zone, std::string name)
    : pbir_(std::move(pbir)), tau_(tau), zone_(std::move(zone)), name_(std::move(name)) {}

ObserverAgent::ObserverAgent(const UssService& uss, double tau, Polygon zone, std::string name)
    : ObserverAgent([&uss](uint32_t gid) { return uss.pbir_fetch(gid); }, tau, std::move(zone),
                    std::move(name)) {}

const ObserverAgent::CachedGroup* ObserverAgent::group(uint32_t group_id) {
    auto it = cache_.find(group_id);
    if (it != cache_.end()) return &it->second;
    const auto* e = pbir_(group_id);
    network_calls_++;
    if (!e) return nullptr;
    auto ctx = BilinearContext::create(e->curve);
    CachedGroup g{e->is_ds, ctx, std::nullopt, std::nullopt};
    if (e->is_ds)
        g.ds_gpk = ds::deserialize_gpk(ctx, e->gpk_blob);
    else
        g.cs_gpk = cs::deserialize_gpk(ctx, e->gpk_blob);
    return &cache_.emplace(group_id, std::move(g)).first->second;
}

ReceiveResult ObserverAgent::receive(const std::vector<uint8_t>& frame, double now) {
    wire::DecodedPayload d;
    try {
        d = wire::decode_payload(wire::decode_frame(frame));
    } catch (const wire::WireError&) {
        return {Verdict::RejectedDecode, std::nullopt};
    }
    const CachedGroup* g = group(d.payload.group_id);
    if (!g) return {Verdict::RejectedUnknownGroup, std::nullopt};
    if (std::fabs(now - double(d.payload.timestamp)) > tau_)
        return {Verdict::RejectedReplay, std::nullopt};
    auto msg = wire::message_bytes(d.payload);
    bool ok = false;
    try {
        if (d.mode == wire::ModeTag::Cs) {
            if (g->is_ds) return {Verdict::RejectedSignature, std::nullopt};
            ok = cs::verify(g->ctx, *g->cs_gpk, msg, cs::deserialize_signature(g->ctx, d.sig_blob));
        } else {
            if (!g->is_ds) return {Verdict::RejectedSignature, std::nullopt};
            ds::Mode mode = d.mode == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
            ok = ds::verify(g->ctx, *g->ds_gpk, msg,
                            ds::deserialize_signature(g->ctx, mode, d.sig_blob));
        }
    } catch (const SerializationError&) {
        return {Verdict::RejectedSignature, std::nullopt};
    }
    if (!ok) return {Verdict::RejectedSignature, std::nullopt};
    ReceiveResult res{Verdict::Accepted, std::nullopt};
    GeoPoint pos{d.payload.lat_deg(), d.payload.lon_deg()};
    if (point_in_polygon(pos, zone_)) {
        InvasionReport rep;
        rep.frame = frame;
        rep.observed_at = static_cast<uint32_t>(std::llround(now));
        rep.position = pos;
        rep.observer = name_;
        res.invasion = std::move(rep);
    }
    return res;
}

UaAgent::UaAgent(std::string name, uint32_t group_id, BilinearContext ctx, cs::GroupPublicKey gpk,
                 cs::MemberKey key, Track track, double rate, uint64_t seed)
    : name_(std::move(name)),
      group_id_(group_id),
      mode_(wire::ModeTag::Cs),
      ctx_(std::move(ctx)),
      cs_gpk_(std::move(gpk)),
      cs_key_(std::move(key)),
      track_(std::move(track)),
      rate_(rate),
      rng_(seed) {
    if (rate_ < 1.0) throw ConfigError("ua: emit rate must be >= 1 msg/s");
}

UaAgent::UaAgent(std::string name, uint32_t group_id, wire::ModeTag mode, BilinearContext ctx,
                 ds::GroupPublicKey gpk, ds::MemberKey key, Track track, double rate,
                 uint64_t seed)
    : name_(std::move(name)),
      group_id_(group_id),
      mode_(mode),
      ctx_(std::move(ctx)),
      ds_gpk_(std::move(gpk)),
      ds_key_(std::move(key)),
      track_(std::move(track)),
      rate_(rate),
      rng_(seed) {
    if (mode == wire::ModeTag::Cs) throw ConfigError("ua: DS constructor used with CS mode");
    if (rate_ < 1.0) throw ConfigError("ua: emit rate must be >= 1 msg/s");
}

void UaAgent::attach_store(ds::PrecomputeStore store) {
    if (mode_ == wire::ModeTag::Cs) throw ConfigError("ua: precompute store is DS-only");
    store_ = std::move(store);
}

std::optional<std::vector<uint8_t>> UaAgent::tick(double now) {
    if (now + 1e-9 < next_emit_) return std::nullopt;
    next_emit_ += 1.0 / rate_;
    try {
        return build_frame(now);
    } catch (const CryptoError&) {  // precompute exhaustion
        emission_failures_++;
        return std::nullopt;
    }
}

std::vector<uint8_t> UaAgent::build_frame(double now) {
    Fix f = track_.sample(now);
    wire::RidPayload p;
    p.group_id = group_id_;
    p.drone_lat = static_cast<int32_t>(std::llround(f.lat * 1e7));
    p.drone_lon = static_cast<int32_t>(std::llround(f.lon * 1e7));
    p.drone_alt = static_cast<int32_t>(std::llround(f.alt * 100));
    p.drone_speed = static_cast<int32_t>(std::llround(f.speed * 100));
    p.drone_cog = static_cast<int32_t>(std::llround(f.cog * 100));
    p.gcs_lat = static_cast<int32_t>(std::llround(track_.gcs().lat * 1e7));
    p.gcs_lon = static_cast<int32_t>(std::llround(track_.gcs().lon * 1e7));
    p.gcs_alt = static_cast<int32_t>(std::llround(track_.gcs().alt * 100));
    p.timestamp = static_cast<uint32_t>(std::llround(now));
    p.emergency = 0;
    auto msg = wire::message_bytes(p);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<uint8_t> blob;
    if (mode_ == wire::ModeTag::Cs) {
        blob = cs::serialize_signature(ctx_, cs::sign(ctx_, *cs_gpk_, *cs_key_, msg, rng_));
    } else {
        ds::Mode mode = mode_ == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
        ds::Signature sig = store_ ? ds::sign(ctx_, *ds_gpk_, mode, msg, *store_)
                                   : ds::sign(ctx_, *ds_gpk_, *ds_key_, mode, msg, rng_);
        blob = ds::serialize_signature(ctx_, sig);
    }
    sign_ms_total_ +=
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emitted_++;
    return wire::encode_frame(wire::encode_payload(p, mode_, blob));
}

void BroadcastChannel::send(double now, std::vector<uint8_t> frame) {
    uint64_t draw = 0;
    for (uint8_t b : rng_.bytes(8)) draw = (draw << 8) | b;
    if (loss_ > 0 && double(draw) / 18446744073709551616.0 < loss_) {
        dropped_++;
        return;
    }
    pending_.push_back({now, std::move(frame)});
}

void BroadcastChannel::inject(double deliver_at, std::vector<uint8_t> frame) {
    pending_.push_back({deliver_at, std::move(frame)});
}

std::vector<BroadcastChannel::Delivery> BroadcastChannel::deliver_until(double now) {
    std::vector<Delivery> due, rest;
    for (auto& d : pending_) {
        if (d.at <= now + 1e-9)
            due.push_back(std::move(d));
        else
            rest.push_back(std::move(d));
    }
    pending_ = std::move(rest);
    std::stable_sort(due.begin(), due.end(),
                     [](const Delivery& a, const Delivery& b) { return a.at < b.at; });
    return due;
}

}  // namespace arid::sim
