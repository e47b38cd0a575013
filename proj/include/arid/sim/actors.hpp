#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "arid/cs.hpp"
#include "arid/ds.hpp"
#include "arid/sim/track.hpp"
#include "arid/wire/frame.hpp"

// The three protocol roles over a simulated broadcast channel: UA (periodic
// anonymous emitter), USS (authority with registration tables and disclosure
// endpoint), Observer (offline verifier with replay window τ and no-fly-zone
// invasion reporting).
namespace arid::sim {

struct SimClock {
    double now = 0;
    double step = 1.0;
    void advance() { now += step; }
};

struct InvasionReport {
    std::vector<uint8_t> frame;  // raw frame, forwarded verbatim
    uint32_t observed_at = 0;    // observer clock, seconds
    GeoPoint position;           // decoded drone position
    std::string observer;
};

// Observer-visible disclosure acknowledgment: deliberately identity-free.
struct DiscloseAck {
    bool verified = false;
    uint32_t case_id = 0;
};
std::vector<uint8_t> serialize_ack(const DiscloseAck& ack);  // stable JSON bytes

struct AuditRecord {
    uint32_t case_id = 0;
    uint32_t group_id = 0;
    std::string member;  // empty when unresolved
    bool verified = false;
    uint32_t observed_at = 0;
    std::string note;
};

class UssService {
public:
    struct PbirEntry {
        bool is_ds = false;
        CurveId curve = CurveId::Bn254;
        std::vector<uint8_t> gpk_blob;
    };

    // Group management. Throws ConfigError on duplicate group id, CryptoError
    // on curve/scheme mismatch (DS requires a Type-3 curve).
    void create_cs_group(uint32_t group_id, CurveId curve, RandomSource& rng);
    void create_ds_group(uint32_t group_id, CurveId curve, RandomSource& rng);

    cs::MemberKey join_cs(uint32_t group_id, const std::string& name, RandomSource& rng);
    ds::MemberKey join_ds(uint32_t group_id, const std::string& name, RandomSource& rng);

    const PbirEntry* pbir_fetch(uint32_t group_id) const;  // nullptr when unknown

    // Decodes and verifies the forwarded frame, opens the signature, and logs
    // (case id → member identity) internally. The returned ack never carries
    // identity.
    DiscloseAck disclose(const InvasionReport& report);

    const std::vector<AuditRecord>& audit_log() const { return audit_; }
    std::vector<std::string> member_names(uint32_t group_id) const;

private:
    struct CsGroup {
        BilinearContext ctx;
        cs::SetupResult s;
        std::vector<std::string> names;
    };
    struct DsGroup {
        BilinearContext ctx;
        ds::GroupPublicKey gpk;
        ds::AuthorityKeys keys;
        ds::Registry reg;
        std::vector<std::string> names;
    };
    std::map<uint32_t, CsGroup> cs_;
    std::map<uint32_t, DsGroup> ds_;
    std::map<uint32_t, PbirEntry> pbir_;
    std::vector<AuditRecord> audit_;
    uint32_t next_case_ = 1;
};

enum class Verdict : uint8_t {
    Accepted = 0,
    RejectedDecode,
    RejectedReplay,
    RejectedSignature,
    RejectedUnknownGroup,
};
const char* verdict_name(Verdict v);

struct ReceiveResult {
    Verdict verdict = Verdict::RejectedDecode;
    std::optional<InvasionReport> invasion;
};

// Where an observer bootstraps group public keys from; every call counts as
// one network fetch.
using PbirProvider = std::function<const UssService::PbirEntry*(uint32_t)>;

class ObserverAgent {
public:
    ObserverAgent(PbirProvider pbir, double tau, Polygon zone, std::string name = "observer");
    ObserverAgent(const UssService& uss, double tau, Polygon zone, std::string name = "observer");

    // decode → replay window (|t_k − now| ≤ τ) → signature → zone check.
    ReceiveResult receive(const std::vector<uint8_t>& frame, double now);

    uint64_t network_calls() const { return network_calls_; }  // PbIR fetches
    double tau() const { return tau_; }

private:
    struct CachedGroup {
        bool is_ds = false;
        BilinearContext ctx;
        std::optional<cs::GroupPublicKey> cs_gpk;
        std::optional<ds::GroupPublicKey> ds_gpk;
    };
    const CachedGroup* group(uint32_t group_id);

    PbirProvider pbir_;
    double tau_;
    Polygon zone_;
    std::string name_;
    std::map<uint32_t, CachedGroup> cache_;
    uint64_t network_calls_ = 0;
};

class UaAgent {
public:
    // CS member.
    UaAgent(std::string name, uint32_t group_id, BilinearContext ctx, cs::GroupPublicKey gpk,
            cs::MemberKey key, Track track, double rate, uint64_t seed);
    // DS member (CCA2 or CPA per mode).
    UaAgent(std::string name, uint32_t group_id, wire::ModeTag mode, BilinearContext ctx,
            ds::GroupPublicKey gpk, ds::MemberKey key, Track track, double rate, uint64_t seed);

    void attach_store(ds::PrecomputeStore store);  // DS only

    // Emits a frame when an emission is due at `now`; returns nullopt when not
    // due or on precompute exhaustion (logged as an emission failure, not fatal).
    std::optional<std::vector<uint8_t>> tick(double now);

    const std::string& name() const { return name_; }
    wire::ModeTag mode() const { return mode_; }
    uint64_t emitted() const { return emitted_; }
    uint64_t emission_failures() const { return emission_failures_; }
    double rate() const { return rate_; }
    double sign_ms_total() const { return sign_ms_total_; }
    const Track& track() const { return track_; }

private:
    std::vector<uint8_t> build_frame(double now);

    std::string name_;
    uint32_t group_id_;
    wire::ModeTag mode_;
    BilinearContext ctx_;
    std::optional<cs::GroupPublicKey> cs_gpk_;
    std::optional<cs::MemberKey> cs_key_;
    std::optional<ds::GroupPublicKey> ds_gpk_;
    std::optional<ds::MemberKey> ds_key_;
    std::optional<ds::PrecomputeStore> store_;
    Track track_;
    double rate_;
    double next_emit_ = 0;
    uint64_t emitted_ = 0;
    uint64_t emission_failures_ = 0;
    double sign_ms_total_ = 0;
    SeededRandom rng_;
};

// In-flight frame with a delivery time; the adversary hook may duplicate
// (replay) or inject arbitrary frames.
class BroadcastChannel {
public:
    BroadcastChannel(double loss_rate, uint64_t seed) : loss_(loss_rate), rng_(seed) {}

    void send(double now, std::vector<uint8_t> frame);
    void inject(double deliver_at, std::vector<uint8_t> frame);  // adversary hook

    struct Delivery {
        double at;
        std::vector<uint8_t> frame;
    };
    // All deliveries due at or before `now`, in time order (stable per sender).
    std::vector<Delivery> deliver_until(double now);

    uint64_t dropped() const { return dropped_; }

private:
    double loss_;
    SeededRandom rng_;
    std::vector<Delivery> pending_;
    uint64_t dropped_ = 0;
    uint64_t seqno_ = 0;
};

}  // namespace arid::sim
