#include "arid/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "arid/bench.hpp"
#include "arid/keystore.hpp"
#include "arid/sim/scenario.hpp"
#include "json.hpp"

namespace arid::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------- small helpers ----------

std::vector<uint8_t> u32_blob(uint32_t v) {
    return {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
            static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
}
uint32_t blob_u32(const std::vector<uint8_t>& b) {
    if (b.size() != 4) throw ConfigError("keystore: bad u32 blob");
    return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) | b[3];
}
std::vector<uint8_t> str_blob(const std::string& s) { return {s.begin(), s.end()}; }
std::string blob_str(const std::vector<uint8_t>& b) { return {b.begin(), b.end()}; }

std::string hex(const std::vector<uint8_t>& b) {
    static const char* d = "0123456789abcdef";
    std::string s;
    for (uint8_t x : b) {
        s.push_back(d[x >> 4]);
        s.push_back(d[x & 15]);
    }
    return s;
}
std::vector<uint8_t> unhex(const std::string& s) {
    if (s.size() % 2) throw ConfigError("bad hex string");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ConfigError("bad hex digit");
    };
    std::vector<uint8_t> out(s.size() / 2);
    for (size_t i = 0; i < out.size(); i++)
        out[i] = static_cast<uint8_t>(nib(s[2 * i]) << 4 | nib(s[2 * i + 1]));
    return out;
}

CurveId curve_for(ks::Scheme scheme, const std::string& set) {
    if (set == "production") return scheme == ks::Scheme::Cs ? CurveId::TypeA160 : CurveId::Bn254;
    if (set == "toy") return scheme == ks::Scheme::Cs ? CurveId::Toy : CurveId::ToyT3;
    throw ConfigError("curve must be 'production' or 'toy'");
}

struct SchemeArg {
    ks::Scheme family;
    wire::ModeTag mode;
};
SchemeArg parse_scheme(const std::string& s) {
    if (s == "cs") return {ks::Scheme::Cs, wire::ModeTag::Cs};
    if (s == "ds-cca2") return {ks::Scheme::Ds, wire::ModeTag::DsCca2};
    if (s == "ds-cpa") return {ks::Scheme::Ds, wire::ModeTag::DsCpa};
    throw ConfigError("scheme must be cs, ds-cca2, or ds-cpa");
}

fs::path scheme_dir(const fs::path& root, ks::Scheme s) {
    return root / (s == ks::Scheme::Cs ? "cs" : "ds");
}

// ---------- frames file: "A2RF" v1, records of u64 usec + u32 len + frame ----------

struct TimedFrame {
    uint64_t usec;
    std::vector<uint8_t> frame;
};

void write_frames(const fs::path& path, const std::vector<TimedFrame>& frames) {
    std::vector<uint8_t> out{'A', '2', 'R', 'F', 1};
    for (const auto& tf : frames) {
        for (int i = 7; i >= 0; i--) out.push_back(static_cast<uint8_t>(tf.usec >> (8 * i)));
        uint32_t n = static_cast<uint32_t>(tf.frame.size());
        for (int i = 3; i >= 0; i--) out.push_back(static_cast<uint8_t>(n >> (8 * i)));
        out.insert(out.end(), tf.frame.begin(), tf.frame.end());
    }
    ks::write_bytes(path, out);
}

std::vector<TimedFrame> read_frames(const fs::path& path) {
    auto b = ks::read_bytes(path);
    if (b.size() < 5 || b[0] != 'A' || b[1] != '2' || b[2] != 'R' || b[3] != 'F' || b[4] != 1)
        throw ConfigError("frames file: bad magic/version");
    std::vector<TimedFrame> out;
    size_t off = 5;
    while (off < b.size()) {
        if (off + 12 > b.size()) throw ConfigError("frames file: truncated record");
        uint64_t usec = 0;
        for (int i = 0; i < 8; i++) usec = (usec << 8) | b[off + i];
        uint32_t n = 0;
        for (int i = 8; i < 12; i++) n = (n << 8) | b[off + i];
        off += 12;
        if (off + n > b.size()) throw ConfigError("frames file: truncated frame");
        out.push_back({usec, {b.begin() + off, b.begin() + off + n}});
        off += n;
    }
    return out;
}

// ---------- keystore layouts ----------

struct CsStore {
    BilinearContext ctx;
    uint32_t gid;
    cs::SetupResult s;
    std::vector<std::string> names;
};
struct DsStore {
    BilinearContext ctx;
    uint32_t gid;
    ds::GroupPublicKey gpk;
    ds::AuthorityKeys keys;
    ds::Registry reg;
    std::vector<std::string> names;
};

void save_cs(const fs::path& root, const CsStore& st) {
    fs::path dir = scheme_dir(root, ks::Scheme::Cs);
    uint8_t cv = static_cast<uint8_t>(st.ctx.curve());
    ks::KeyFile gpk{1, ks::Scheme::Cs, ks::Role::Gpk, cv,
                    {u32_blob(st.gid), cs::serialize_gpk(st.ctx, st.s.gpk)}};
    ks::write_key_file(dir / "gpk.key", gpk, false);
    ks::write_key_file(dir / "ik.key",
                       {1, ks::Scheme::Cs, ks::Role::IssuingKey, cv,
                        {st.ctx.serialize(st.s.ik.x), st.ctx.serialize(st.s.ik.y)}},
                       true);
    ks::write_key_file(dir / "ok.key",
                       {1, ks::Scheme::Cs, ks::Role::OpeningKey, cv,
                        {st.ctx.serialize(st.s.ok.x1), st.ctx.serialize(st.s.ok.x2),
                         st.ctx.serialize(st.s.ok.x3), st.ctx.serialize(st.s.ok.x4),
                         st.ctx.serialize(st.s.ok.x5)}},
                       true);
    ks::KeyFile reg{1, ks::Scheme::Cs, ks::Role::Registry, cv, {}};
    for (size_t i = 0; i < st.s.reg.size(); i++) {
        reg.blobs.push_back(str_blob(st.names.at(i)));
        reg.blobs.push_back(st.ctx.serialize(st.s.reg[i].p1));
        reg.blobs.push_back(st.ctx.serialize(st.s.reg[i].p2));
    }
    ks::write_key_file(dir / "registry.key", reg, true);
    ks::write_key_file(root / "pbir" / (std::to_string(st.gid) + ".key"),
                       {1, ks::Scheme::Cs, ks::Role::Pbir, cv,
                        {u32_blob(st.gid), cs::serialize_gpk(st.ctx, st.s.gpk)}},
                       false);
}

CsStore load_cs(const fs::path& root) {
    fs::path dir = scheme_dir(root, ks::Scheme::Cs);
    auto gpkf = ks::read_key_file(dir / "gpk.key");
    auto ctx = BilinearContext::create(static_cast<CurveId>(gpkf.curve));
    CsStore st{ctx, blob_u32(gpkf.blobs.at(0)), {}, {}};
    st.s.gpk = cs::deserialize_gpk(ctx, gpkf.blobs.at(1));
    auto ikf = ks::read_key_file(dir / "ik.key");
    st.s.ik = {ctx.deserialize_scalar(ikf.blobs.at(0)), ctx.deserialize_scalar(ikf.blobs.at(1))};
    auto okf = ks::read_key_file(dir / "ok.key");
    st.s.ok = {ctx.deserialize_scalar(okf.blobs.at(0)), ctx.deserialize_scalar(okf.blobs.at(1)),
               ctx.deserialize_scalar(okf.blobs.at(2)), ctx.deserialize_scalar(okf.blobs.at(3)),
               ctx.deserialize_scalar(okf.blobs.at(4))};
    auto regf = ks::read_key_file(dir / "registry.key");
    if (regf.blobs.size() % 3) throw ConfigError("cs registry: corrupt entry count");
    for (size_t i = 0; i < regf.blobs.size(); i += 3) {
        st.names.push_back(blob_str(regf.blobs[i]));
        st.s.reg.push_back({ctx.deserialize(regf.blobs[i + 1], Group::G1),
                            ctx.deserialize(regf.blobs[i + 2], Group::Gt)});
    }
    return st;
}

void save_ds(const fs::path& root, const DsStore& st) {
    fs::path dir = scheme_dir(root, ks::Scheme::Ds);
    uint8_t cv = static_cast<uint8_t>(st.ctx.curve());
    ks::write_key_file(dir / "gpk.key",
                       {1, ks::Scheme::Ds, ks::Role::Gpk, cv,
                        {u32_blob(st.gid), ds::serialize_gpk(st.ctx, st.gpk)}},
                       false);
    ks::write_key_file(dir / "ik.key",
                       {1, ks::Scheme::Ds, ks::Role::IssuingKey, cv,
                        {st.ctx.serialize(st.keys.ik.x.at(0)),
                         st.ctx.serialize(st.keys.ik.x.at(1))}},
                       true);
    ks::write_key_file(dir / "ok.key",
                       {1, ks::Scheme::Ds, ks::Role::OpeningKey, cv,
                        {st.ctx.serialize(st.keys.ok.k)}},
                       true);
    ks::KeyFile reg{1, ks::Scheme::Ds, ks::Role::Registry, cv, {}};
    for (size_t i = 0; i < st.reg.size(); i++) {
        reg.blobs.push_back(str_blob(st.names.at(i)));
        reg.blobs.push_back(st.reg[i].c_ji);
        reg.blobs.push_back(st.ctx.serialize(st.reg[i].sigma_ji));
        reg.blobs.push_back(st.ctx.serialize(st.reg[i].pk_i.point));
    }
    ks::write_key_file(dir / "registry.key", reg, true);
    ks::write_key_file(root / "pbir" / (std::to_string(st.gid) + ".key"),
                       {1, ks::Scheme::Ds, ks::Role::Pbir, cv,
                        {u32_blob(st.gid), ds::serialize_gpk(st.ctx, st.gpk)}},
                       false);
}

DsStore load_ds(const fs::path& root) {
    fs::path dir = scheme_dir(root, ks::Scheme::Ds);
    auto gpkf = ks::read_key_file(dir / "gpk.key");
    auto ctx = BilinearContext::create(static_cast<CurveId>(gpkf.curve));
    DsStore st{ctx, blob_u32(gpkf.blobs.at(0)), ds::deserialize_gpk(ctx, gpkf.blobs.at(1)),
               {}, {}, {}};
    auto ikf = ks::read_key_file(dir / "ik.key");
    st.keys.ik.x = {ctx.deserialize_scalar(ikf.blobs.at(0)),
                    ctx.deserialize_scalar(ikf.blobs.at(1))};
    auto okf = ks::read_key_file(dir / "ok.key");
    st.keys.ok.k = ctx.deserialize_scalar(okf.blobs.at(0));
    auto regf = ks::read_key_file(dir / "registry.key");
    if (regf.blobs.size() % 4) throw ConfigError("ds registry: corrupt entry count");
    for (size_t i = 0; i < regf.blobs.size(); i += 4) {
        st.names.push_back(blob_str(regf.blobs[i]));
        st.reg.push_back({regf.blobs[i + 1], ctx.deserialize(regf.blobs[i + 2], Group::G1),
                          {ctx.deserialize(regf.blobs[i + 3], Group::G2)}});
    }
    return st;
}

cs::MemberKey load_cs_member(const fs::path& root, const BilinearContext& ctx,
                             const std::string& name) {
    auto f = ks::read_key_file(scheme_dir(root, ks::Scheme::Cs) / "members" / (name + ".key"));
    return {ctx.deserialize_scalar(f.blobs.at(0)), ctx.deserialize(f.blobs.at(1), Group::G1),
            ctx.deserialize(f.blobs.at(2), Group::G1), ctx.deserialize(f.blobs.at(3), Group::G1)};
}

ds::MemberKey load_ds_member(const fs::path& root, const BilinearContext& ctx,
                             const std::string& name) {
    auto f = ks::read_key_file(scheme_dir(root, ks::Scheme::Ds) / "members" / (name + ".key"));
    return {ctx.deserialize(f.blobs.at(0), Group::G1), ctx.deserialize(f.blobs.at(1), Group::G1),
            {ctx.deserialize(f.blobs.at(2), Group::G1), ctx.deserialize(f.blobs.at(3), Group::G1),
             ctx.deserialize(f.blobs.at(4), Group::G2)},
            ctx.deserialize_scalar(f.blobs.at(5))};
}

// PbIR provider over the keystore's pbir directory.
sim::PbirProvider pbir_provider(const fs::path& root,
                                std::shared_ptr<std::map<uint32_t, sim::UssService::PbirEntry>>
                                    cache) {
    return [root, cache](uint32_t gid) -> const sim::UssService::PbirEntry* {
        auto it = cache->find(gid);
        if (it != cache->end()) return &it->second;
        fs::path p = root / "pbir" / (std::to_string(gid) + ".key");
        if (!fs::exists(p)) return nullptr;
        auto f = ks::read_key_file(p);
        sim::UssService::PbirEntry e{f.scheme == ks::Scheme::Ds,
                                     static_cast<CurveId>(f.curve), f.blobs.at(1)};
        return &cache->emplace(gid, std::move(e)).first->second;
    };
}

sim::Track load_track(const std::string& path) {
    if (path.empty())
        return sim::Track({{0, 45.0, 9.0, 50.0}});  // default: hover
    json jt = json::parse(blob_str(ks::read_bytes(path)));
    std::vector<sim::Waypoint> wps;
    for (const auto& w : jt)
        wps.push_back({w.at("t").get<double>(), w.at("lat").get<double>(),
                       w.at("lon").get<double>(), w.value("alt", 0.0)});
    return sim::Track(std::move(wps));
}

sim::Polygon load_zone(const std::string& path) {
    sim::Polygon zone;
    if (path.empty()) return zone;
    json jz = json::parse(blob_str(ks::read_bytes(path)));
    for (const auto& v : jz) zone.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return zone;
}

// ---------- verbs ----------

int cmd_setup(const fs::path& root, const std::string& scheme, const std::string& curve_set,
              uint32_t group_id, bool force, uint64_t seed) {
    ks::Scheme fam = parse_scheme(scheme == "ds" ? "ds-cca2" : scheme).family;
    fs::path dir = scheme_dir(root, fam);
    if (fs::exists(dir / "gpk.key") && !force)
        throw ConfigError("setup: group already exists (use --force to replace)");
    SeededRandom rng(seed);
    CurveId curve = curve_for(fam, curve_set);
    auto ctx = BilinearContext::create(curve);
    if (fam == ks::Scheme::Cs) {
        CsStore st{ctx, group_id, cs::setup(ctx, rng), {}};
        save_cs(root, st);
    } else {
        auto [gpk, keys] = ds::setup(ctx, rng);  // throws CryptoError on Type-1 curves
        DsStore st{ctx, group_id, std::move(gpk), std::move(keys), {}, {}};
        save_ds(root, st);
    }
    printf("setup: %s group %u on curve %d written to %s\n", scheme.c_str(), group_id,
           static_cast<int>(curve), dir.string().c_str());
    return kOk;
}

int cmd_join(const fs::path& root, const std::string& scheme, const std::string& name,
             uint64_t seed) {
    ks::Scheme fam = parse_scheme(scheme == "ds" ? "ds-cca2" : scheme).family;
    fs::path member_path = scheme_dir(root, fam) / "members" / (name + ".key");
    if (fs::exists(member_path)) throw ConfigError("join: duplicate member name");
    SeededRandom rng(seed);
    std::vector<uint8_t> msg(41, 0x5a);
    if (fam == ks::Scheme::Cs) {
        auto st = load_cs(root);
        auto [js, req] = cs::join_request(st.ctx, st.s.gpk, rng);
        auto cert = cs::join_issue(st.ctx, st.s.gpk, st.s.ik, req, st.s.reg, rng);
        auto key = cs::join_finalize(st.ctx, st.s.gpk, js, cert);
        st.names.push_back(name);
        if (!cs::verify(st.ctx, st.s.gpk, msg, cs::sign(st.ctx, st.s.gpk, key, msg, rng)))
            throw CryptoError("join: self-check sign/verify failed");
        ks::write_key_file(member_path,
                           {1, ks::Scheme::Cs, ks::Role::Member,
                            static_cast<uint8_t>(st.ctx.curve()),
                            {st.ctx.serialize(key.k), st.ctx.serialize(key.a),
                             st.ctx.serialize(key.b), st.ctx.serialize(key.c)}},
                           true);
        save_cs(root, st);
    } else {
        auto st = load_ds(root);
        auto kp = dsig::keygen(st.ctx, rng);
        auto [js, req] = ds::join_request(st.ctx, st.gpk, kp.sk, kp.pk, rng);
        auto issued = ds::join_issue(st.ctx, st.gpk, st.keys, st.reg, req, rng);
        auto key = ds::join_finalize(st.ctx, st.gpk, js, kp.pk, issued, rng);
        st.names.push_back(name);
        if (!ds::verify(st.ctx, st.gpk, msg,
                        ds::sign(st.ctx, st.gpk, key, ds::Mode::Cpa, msg, rng)))
            throw CryptoError("join: self-check sign/verify failed");
        ks::write_key_file(member_path,
                           {1, ks::Scheme::Ds, ks::Role::Member,
                            static_cast<uint8_t>(st.ctx.curve()),
                            {st.ctx.serialize(key.r_pt), st.ctx.serialize(key.p_pt),
                             st.ctx.serialize(key.sigma.z), st.ctx.serialize(key.sigma.y),
                             st.ctx.serialize(key.sigma.yhat), st.ctx.serialize(key.mu)}},
                           true);
        save_ds(root, st);
    }
    printf("join: member '%s' registered, self-check passed\n", name.c_str());
    return kOk;
}

int cmd_fly(const fs::path& root, const std::string& scheme, const std::string& member,
            double duration, double rate, const std::string& track_path, double start,
            bool precompute, const std::string& store_path, const std::string& out,
            const std::string& pcap_out, uint64_t seed) {
    if (rate < 1.0) throw ConfigError("fly: rate must be >= 1 msg/s");
    SchemeArg sa = parse_scheme(scheme);
    sim::Track track = load_track(track_path);
    std::unique_ptr<sim::UaAgent> ua;
    if (sa.family == ks::Scheme::Cs) {
        if (precompute || !store_path.empty())
            throw ConfigError("fly: --precompute/--store are DS-only");
        auto st = load_cs(root);
        ua = std::make_unique<sim::UaAgent>(member, st.gid, st.ctx, st.s.gpk,
                                            load_cs_member(root, st.ctx, member), track, rate,
                                            seed);
    } else {
        auto st = load_ds(root);
        auto key = load_ds_member(root, st.ctx, member);
        ua = std::make_unique<sim::UaAgent>(member, st.gid, sa.mode, st.ctx, st.gpk, key, track,
                                            rate, seed);
        ds::Mode mode = sa.mode == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
        if (!store_path.empty()) {
            auto store = ds::PrecomputeStore::deserialize(st.ctx, ks::read_bytes(store_path));
            ua->attach_store(std::move(store));
        } else if (precompute) {
            SeededRandom prng(seed + 1);
            auto store = ds::precompute_generate(st.ctx, st.gpk, key, mode,
                                                 static_cast<uint32_t>(std::ceil(duration)) + 1,
                                                 static_cast<uint32_t>(std::ceil(rate)), prng);
            printf("fly: precompute store %zu bundles, %zu B/bundle, %zu B total\n",
                   store.capacity(), ds::PrecomputeStore::bundle_bytes(st.ctx, mode),
                   store.total_bytes(st.ctx));
            ua->attach_store(std::move(store));
        }
    }
    std::vector<TimedFrame> frames;
    for (double t = 0; t <= duration + 1e-9; t += 1.0 / rate) {
        auto f = ua->tick(start + t);
        if (f) frames.push_back({static_cast<uint64_t>((start + t) * 1e6), std::move(*f)});
    }
    if (ua->emission_failures())
        fprintf(stderr, "fly: %llu emission failures (precompute underrun)\n",
                static_cast<unsigned long long>(ua->emission_failures()));
    write_frames(out, frames);
    if (!pcap_out.empty()) {
        std::vector<std::pair<uint64_t, std::vector<uint8_t>>> recs;
        for (const auto& tf : frames) recs.emplace_back(tf.usec, tf.frame);
        ks::write_bytes(pcap_out, wire::pcap_file(recs));
    }
    printf("fly: %zu frames written to %s\n", frames.size(), out.c_str());
    return ua->emission_failures() ? kCryptoError : kOk;
}

int cmd_observe(const fs::path& root, const std::string& frames_path,
                const std::string& zone_path, double tau, double skew,
                const std::string& report_out, const std::string& invasions_out) {
    auto cache = std::make_shared<std::map<uint32_t, sim::UssService::PbirEntry>>();
    sim::ObserverAgent obs(pbir_provider(root, cache), tau, load_zone(zone_path));
    auto frames = read_frames(frames_path);
    std::map<std::string, uint64_t> verdicts;
    for (int v = 0; v <= 4; v++) verdicts[sim::verdict_name(static_cast<sim::Verdict>(v))] = 0;
    json invasions = json::array();
    uint64_t rejected = 0;
    for (const auto& tf : frames) {
        double now = double(tf.usec) / 1e6 + skew;
        auto res = obs.receive(tf.frame, now);
        verdicts[sim::verdict_name(res.verdict)]++;
        if (res.verdict != sim::Verdict::Accepted) rejected++;
        if (res.invasion)
            invasions.push_back({{"frame", hex(res.invasion->frame)},
                                 {"observed_at", res.invasion->observed_at},
                                 {"lat", res.invasion->position.lat},
                                 {"lon", res.invasion->position.lon},
                                 {"observer", res.invasion->observer}});
    }
    json rep{{"frames", frames.size()},
             {"verdicts", verdicts},
             {"invasions", invasions.size()},
             {"network_calls", obs.network_calls()}};
    std::string reps = rep.dump(2);
    printf("%s\n", reps.c_str());
    if (!report_out.empty()) ks::write_bytes(report_out, {reps.begin(), reps.end()});
    if (!invasions_out.empty()) {
        std::string s = invasions.dump(2);
        ks::write_bytes(invasions_out, {s.begin(), s.end()});
    }
    return rejected ? kVerificationError : kOk;
}

int cmd_disclose(const fs::path& root, const std::string& report_path) {
    json reports = json::parse(blob_str(ks::read_bytes(report_path)));
    if (!reports.is_array()) throw ConfigError("disclose: report file must be a JSON array");
    std::optional<CsStore> csst;
    std::optional<DsStore> dsst;
    if (fs::exists(scheme_dir(root, ks::Scheme::Cs) / "gpk.key")) csst = load_cs(root);
    if (fs::exists(scheme_dir(root, ks::Scheme::Ds) / "gpk.key")) dsst = load_ds(root);

    fs::path audit_path = root / "audit.jsonl";
    std::string audit_lines;
    uint32_t next_case = 1;
    if (fs::exists(audit_path)) {
        auto prev = blob_str(ks::read_bytes(audit_path));
        next_case += static_cast<uint32_t>(std::count(prev.begin(), prev.end(), '\n'));
        audit_lines = prev;
    }
    json acks = json::array();
    for (const auto& r : reports) {
        uint32_t case_id = next_case++;
        bool verified = false;
        std::string member_name, note;
        uint32_t gid = 0;
        try {
            auto payload = wire::decode_frame(unhex(r.at("frame").get<std::string>()));
            auto d = wire::decode_payload(payload);
            gid = d.payload.group_id;
            auto msg = wire::message_bytes(d.payload);
            if (d.mode == wire::ModeTag::Cs) {
                if (!csst || csst->gid != gid) throw ConfigError("unknown group");
                auto sig = cs::deserialize_signature(csst->ctx, d.sig_blob);
                if (cs::verify(csst->ctx, csst->s.gpk, msg, sig)) {
                    verified = true;
                    member_name =
                        csst->names.at(cs::open(csst->ctx, csst->s.gpk, csst->s.ok, csst->s.reg,
                                                sig));
                } else {
                    note = "signature invalid";
                }
            } else {
                if (!dsst || dsst->gid != gid) throw ConfigError("unknown group");
                ds::Mode mode = d.mode == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
                auto sig = ds::deserialize_signature(dsst->ctx, mode, d.sig_blob);
                if (ds::verify(dsst->ctx, dsst->gpk, msg, sig)) {
                    verified = true;
                    member_name =
                        dsst->names.at(ds::open(dsst->ctx, dsst->gpk, dsst->keys, dsst->reg,
                                                sig));
                } else {
                    note = "signature invalid";
                }
            }
        } catch (const wire::WireError& e) {
            note = e.what();
        } catch (const SerializationError& e) {
            note = e.what();
        } catch (const CryptoError& e) {
            note = std::string("anomaly: ") + e.what();  // e.g. verified but unregistered
        } catch (const ConfigError& e) {
            note = e.what();
        } catch (const json::exception& e) {
            note = e.what();
        }
        json audit{{"case_id", case_id}, {"group_id", gid},     {"member", member_name},
                   {"verified", verified}, {"note", note}};
        audit_lines += audit.dump() + "\n";
        // observer-visible ack: identity-free by construction
        acks.push_back({{"case_id", case_id}, {"verified", verified}});
    }
    ks::write_bytes(audit_path, {audit_lines.begin(), audit_lines.end()}, true);
    printf("%s\n", acks.dump(2).c_str());
    return kOk;
}

int cmd_precompute(const fs::path& root, const std::string& scheme, const std::string& member,
                   double duration, double rate, const std::string& out, uint64_t seed) {
    SchemeArg sa = parse_scheme(scheme);
    if (sa.family != ks::Scheme::Ds) throw ConfigError("precompute: DS schemes only");
    if (rate < 1.0) throw ConfigError("precompute: rate must be >= 1 msg/s");
    auto st = load_ds(root);
    auto key = load_ds_member(root, st.ctx, member);
    ds::Mode mode = sa.mode == wire::ModeTag::DsCca2 ? ds::Mode::Cca2 : ds::Mode::Cpa;
    SeededRandom rng(seed);
    auto store = ds::precompute_generate(st.ctx, st.gpk, key, mode,
                                         static_cast<uint32_t>(std::ceil(duration)),
                                         static_cast<uint32_t>(std::ceil(rate)), rng);
    ks::write_bytes(out, store.serialize(st.ctx), true);
    printf("precompute: %zu bundles, %zu B/bundle, %zu B total -> %s\n", store.capacity(),
           ds::PrecomputeStore::bundle_bytes(st.ctx, mode), store.total_bytes(st.ctx),
           out.c_str());
    return kOk;
}

int cmd_bench(const std::string& schemes, size_t runs, bool no_precompute,
              const std::string& curve_set, uint64_t seed, const std::string& json_out) {
    bench::Options opt;
    opt.cs = schemes.find("cs") != std::string::npos;
    opt.ds_cca2 = schemes.find("ds-cca2") != std::string::npos;
    opt.ds_cpa = schemes.find("ds-cpa") != std::string::npos;
    if (!opt.cs && !opt.ds_cca2 && !opt.ds_cpa)
        throw ConfigError("bench: no schemes selected");
    opt.precompute = !no_precompute;
    opt.runs = runs;
    opt.cs_curve = curve_for(ks::Scheme::Cs, curve_set);
    opt.ds_curve = curve_for(ks::Scheme::Ds, curve_set);
    opt.seed = seed;
    auto stats = bench::run_bench(opt);
    printf("%s", bench::format_report(stats).c_str());
    if (!json_out.empty()) {
        std::string s = bench::json_report(stats);
        ks::write_bytes(json_out, {s.begin(), s.end()});
    }
    // the RID rate bound: every signing path must stay under 1 s/message
    for (const auto& s : stats)
        if (s.name.find("sign") != std::string::npos && s.mean_ms >= 1000.0) {
            fprintf(stderr, "bench: %s mean %.1f ms violates the 1 s RID bound\n",
                    s.name.c_str(), s.mean_ms);
            return kVerificationError;
        }
    return kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out) {
    auto rep = sim::run_scenario(blob_str(ks::read_bytes(config_path)));
    printf("%s\n", rep.c_str());
    if (!out.empty()) ks::write_bytes(out, {rep.begin(), rep.end()});
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"A2RID anonymous RemoteID toolkit"};
    app.require_subcommand(1);

    std::string keystore = [] {
        const char* env = getenv("ARID_KEYSTORE");
        return std::string(env ? env : "keystore");
    }();
    app.add_option("--keystore", keystore, "keystore root directory (env ARID_KEYSTORE)");

    std::string scheme = "cs", curve_set = "production", member, track_path, zone_path;
    std::string frames_path, out_path, pcap_path, report_path, store_path, config_path;
    std::string json_out, schemes_csv = "cs,ds-cca2,ds-cpa";
    uint32_t group_id = 0;
    uint64_t seed = 1;
    size_t runs = 1000;
    double duration = 10, rate = 1, tau = 5, skew = 0, start = 0;
    bool force = false, precompute = false, no_precompute = false;

    auto* c_setup = app.add_subcommand("setup", "create group key material");
    c_setup->add_option("--scheme", scheme, "cs | ds")->required();
    c_setup->add_option("--curve", curve_set, "production | toy");
    c_setup->add_option("--group-id", group_id, "group id (default: cs 1, ds 2)");
    c_setup->add_flag("--force", force, "replace an existing group");
    c_setup->add_option("--seed", seed);

    auto* c_join = app.add_subcommand("join", "register a member");
    c_join->add_option("--scheme", scheme, "cs | ds")->required();
    c_join->add_option("--name", member, "member name")->required();
    c_join->add_option("--seed", seed);

    auto* c_fly = app.add_subcommand("fly", "emit signed RemoteID frames");
    c_fly->add_option("--scheme", scheme, "cs | ds-cca2 | ds-cpa")->required();
    c_fly->add_option("--member", member)->required();
    c_fly->add_option("--duration", duration, "seconds");
    c_fly->add_option("--rate", rate, "messages/second (>= 1)");
    c_fly->add_option("--track", track_path, "waypoint track JSON");
    c_fly->add_option("--start", start, "start timestamp (seconds)");
    c_fly->add_flag("--precompute", precompute, "generate and consume a store (DS only)");
    c_fly->add_option("--store", store_path, "use an existing precompute store file");
    c_fly->add_option("--out", out_path, "frames file")->required();
    c_fly->add_option("--pcap", pcap_path, "also export a pcap capture");
    c_fly->add_option("--seed", seed);

    auto* c_observe = app.add_subcommand("observe", "verify a frames file");
    c_observe->add_option("--frames", frames_path)->required();
    c_observe->add_option("--zone", zone_path, "no-fly polygon JSON [[lat,lon],...]");
    c_observe->add_option("--tau", tau, "replay threshold seconds");
    c_observe->add_option("--skew", skew, "observer clock offset seconds");
    c_observe->add_option("--report", report_path, "write verdict report JSON");
    c_observe->add_option("--out", out_path, "write invasion reports JSON");

    auto* c_disclose = app.add_subcommand("disclose", "open invasion reports (authority)");
    c_disclose->add_option("--report", report_path, "invasion reports JSON")->required();

    auto* c_pre = app.add_subcommand("precompute", "generate a DS precompute store");
    c_pre->add_option("--scheme", scheme, "ds-cca2 | ds-cpa")->required();
    c_pre->add_option("--member", member)->required();
    c_pre->add_option("--duration", duration, "flight seconds");
    c_pre->add_option("--rate", rate, "messages/second");
    c_pre->add_option("--out", out_path, "store file")->required();
    c_pre->add_option("--seed", seed);

    auto* c_bench = app.add_subcommand("bench", "latency benchmarks");
    c_bench->add_option("--schemes", schemes_csv, "comma list: cs,ds-cca2,ds-cpa");
    c_bench->add_option("--runs", runs, ">= 100");
    c_bench->add_flag("--no-precompute", no_precompute, "skip precomputed DS paths");
    c_bench->add_option("--curve", curve_set, "production | toy");
    c_bench->add_option("--seed", seed);
    c_bench->add_option("--json", json_out, "write JSON report");

    auto* c_sim = app.add_subcommand("simulate", "run a scenario config");
    c_sim->add_option("--config", config_path)->required();
    c_sim->add_option("--out", out_path, "write report JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        fs::path root(keystore);
        if (c_setup->parsed()) {
            if (group_id == 0) group_id = scheme == "cs" ? 1 : 2;
            return cmd_setup(root, scheme, curve_set, group_id, force, seed);
        }
        if (c_join->parsed()) return cmd_join(root, scheme, member, seed);
        if (c_fly->parsed())
            return cmd_fly(root, scheme, member, duration, rate, track_path, start, precompute,
                           store_path, out_path, pcap_path, seed);
        if (c_observe->parsed())
            return cmd_observe(root, frames_path, zone_path, tau, skew, report_path, out_path);
        if (c_disclose->parsed()) return cmd_disclose(root, report_path);
        if (c_pre->parsed())
            return cmd_precompute(root, scheme, member, duration, rate, out_path, seed);
        if (c_bench->parsed())
            return cmd_bench(schemes_csv, runs, no_precompute, curve_set, seed, json_out);
        if (c_sim->parsed()) return cmd_simulate(config_path, out_path);
        return kConfigError;
    } catch (const ConfigError& e) {
        fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const wire::WireError& e) {
        fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const SerializationError& e) {
        fprintf(stderr, "crypto error: %s\n", e.what());
        return kCryptoError;
    } catch (const CryptoError& e) {
        fprintf(stderr, "crypto error: %s\n", e.what());
        return kCryptoError;
    } catch (const AlgebraError& e) {
        fprintf(stderr, "crypto error: %s\n", e.what());
        return kCryptoError;
    }
}

}  // namespace arid::cli
