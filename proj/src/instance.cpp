#include "altrel/instance.hpp"

#include "altrel/errors.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

using nlohmann::json;

namespace altrel {

namespace {

json vec_to_json(const std::vector<elem>& v) {
    json a = json::array();
    for (elem e : v) a.push_back(e);
    return a;
}

std::vector<elem> vec_from_json(const json& a) {
    std::vector<elem> v;
    v.reserve(a.size());
    for (const auto& e : a) v.push_back(e.get<elem>());
    return v;
}

} // namespace

Field instance_field(const InstanceHeader& h) { return make_field(h.p, h.a, h.m); }

InstanceFile instance_from_key(const KeyInstance& key, uint64_t seed) {
    InstanceFile inst;
    const FieldCtx& F = *key.F;
    inst.header.p = F.p;
    inst.header.a = F.a;
    inst.header.m = F.m;
    inst.header.r = key.r;
    inst.header.n = key.pub.n();
    inst.header.seed = seed;
    inst.header.kind = key.kind == KeyInstance::Kind::goppa ? "goppa" : "alternant";
    inst.x = key.sm.x;
    if (key.gamma)
        inst.gamma = key.gamma->c;
    else
        inst.y = key.sm.y;
    inst.pub = key.pub.gen;
    return inst;
}

std::string instance_to_json(const InstanceFile& inst) {
    std::string out;
    json h;
    h["format_version"] = inst.header.format_version;
    h["p"] = inst.header.p;
    h["a"] = inst.header.a;
    h["m"] = inst.header.m;
    h["r"] = inst.header.r;
    h["n"] = inst.header.n;
    h["kind"] = inst.header.kind;
    h["seed"] = inst.header.seed;
    out += json{{"header", h}}.dump() + "\n";

    if (inst.x) {
        json s;
        s["x"] = vec_to_json(*inst.x);
        if (inst.gamma)
            s["gamma"] = vec_to_json(*inst.gamma);
        else if (inst.y)
            s["y"] = vec_to_json(*inst.y);
        else
            throw std::invalid_argument("secret support without multiplier or polynomial");
        out += json{{"secret", s}}.dump() + "\n";
    }

    json rows = json::array();
    for (size_t i = 0; i < inst.pub.rows; ++i) {
        json row = json::array();
        for (size_t j = 0; j < inst.pub.cols; ++j) row.push_back(inst.pub.at(i, j));
        rows.push_back(row);
    }
    out += json{{"public", {{"gen", rows}}}}.dump() + "\n";
    return out;
}

InstanceFile instance_parse(const std::string& text) {
    InstanceFile inst;
    bool have_header = false, have_public = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json obj = json::parse(line);
        if (!obj.is_object() || obj.size() != 1)
            throw std::invalid_argument("each instance line holds one wrapped object");
        if (obj.contains("header")) {
            const json& h = obj["header"];
            inst.header.format_version = h.at("format_version").get<uint32_t>();
            if (inst.header.format_version != 1)
                throw std::invalid_argument("unsupported format_version");
            inst.header.p = h.at("p").get<uint32_t>();
            inst.header.a = h.at("a").get<uint32_t>();
            inst.header.m = h.at("m").get<uint32_t>();
            inst.header.r = h.at("r").get<uint32_t>();
            inst.header.n = h.at("n").get<uint64_t>();
            inst.header.kind = h.at("kind").get<std::string>();
            inst.header.seed = h.at("seed").get<uint64_t>();
            have_header = true;
        } else if (obj.contains("secret")) {
            const json& s = obj["secret"];
            inst.x = vec_from_json(s.at("x"));
            if (s.contains("gamma")) inst.gamma = vec_from_json(s["gamma"]);
            if (s.contains("y")) inst.y = vec_from_json(s["y"]);
        } else if (obj.contains("public")) {
            const json& rows = obj["public"].at("gen");
            size_t nr = rows.size();
            size_t nc = nr ? rows[0].size() : 0;
            inst.pub = Mat(nr, nc);
            for (size_t i = 0; i < nr; ++i) {
                if (rows[i].size() != nc)
                    throw std::invalid_argument("ragged public matrix");
                for (size_t j = 0; j < nc; ++j) inst.pub.at(i, j) = rows[i][j].get<elem>();
            }
            have_public = true;
        } else {
            throw std::invalid_argument("unknown instance line: " + line);
        }
    }
    if (!have_header || !have_public)
        throw std::invalid_argument("instance needs a header line and a public line");
    if (inst.pub.cols != inst.header.n)
        throw std::invalid_argument("public matrix width disagrees with n");
    return inst;
}

void instance_write(const InstanceFile& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst);
}

InstanceFile instance_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_parse(buf.str());
}

LinearCode instance_public_code(const InstanceFile& inst) {
    Field F = instance_field(inst.header);
    for (elem e : inst.pub.a)
        if (!F->in_subfield(e)) throw degenerate_error("public matrix entry outside GF(q)");
    return make_code(F, inst.pub, true);
}

KeyInstance instance_secret_key(const InstanceFile& inst) {
    if (!inst.x) throw degenerate_error("instance carries no secret");
    Field F = instance_field(inst.header);
    KeyInstance key = [&] {
        if (inst.header.kind == "goppa") {
            if (!inst.gamma) throw degenerate_error("goppa secret without polynomial");
            return goppa_key(F, *inst.x, Poly(*inst.gamma));
        }
        if (!inst.y) throw degenerate_error("alternant secret without multiplier");
        return alternant_key(F, SupportMultiplier{*inst.x, *inst.y}, inst.header.r);
    }();
    if (key.pub.gen.rows != inst.pub.rows || key.pub.gen.a != inst.pub.a)
        throw degenerate_error("secret does not regenerate the stored public matrix");
    return key;
}

std::pair<uint32_t, uint32_t> factor_prime_power(uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    uint32_t a = 0;
    uint64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++a;
    }
    if (v != 1) throw std::invalid_argument("q must be a prime power");
    return {(uint32_t)p, a};
}

std::string digest_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

void RunLog::time(const std::string& stage, double seconds) {
    timings.emplace_back(stage, seconds);
}

std::string RunLog::to_json() const {
    json j;
    j["command"] = command;
    j["config"] = json(config);
    json t = json::object();
    for (const auto& [stage, s] : timings) t[stage] = s;
    j["timings"] = t;
    j["counters"] = json(counters);
    j["verdicts"] = json(verdicts);
    j["digests"] = json(digests);
    return j.dump();
}

} // namespace altrel
