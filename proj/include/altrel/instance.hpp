#pragma once

// On-disk format for key instances and the run log. An instance file is
// line-oriented JSON, one object per line, at most three lines:
//
//   {"header":{"a":..,"format_version":1,"kind":"..","m":..,"n":..,"p":..,"r":..,"seed":..}}
//   {"secret":{"x":[..],"y":[..]}}            (or {"gamma":[..],"x":[..]}; absent for random)
//   {"public":{"gen":[[..],..]}}
//
// Field elements are their integer encodings; matrices are arrays of row
// arrays. Serialization is canonical (sorted keys, no whitespace), so equal
// instances produce byte-identical files.

#include "altrel/codes.hpp"

#include <map>
#include <string>
#include <vector>

namespace altrel {

struct InstanceHeader {
    uint32_t format_version = 1;
    uint32_t p = 0, a = 0, m = 0, r = 0;
    uint64_t n = 0;
    std::string kind; // alternant | goppa | random
    uint64_t seed = 0;
};

struct InstanceFile {
    InstanceHeader header;
    std::optional<std::vector<elem>> x;     // support, when the secret is kept
    std::optional<std::vector<elem>> y;     // alternant multiplier
    std::optional<std::vector<elem>> gamma; // Goppa polynomial, low to high
    Mat pub;                                // (n - rm) x n over GF(q)
};

Field instance_field(const InstanceHeader& h);

InstanceFile instance_from_key(const KeyInstance& key, uint64_t seed);

std::string instance_to_json(const InstanceFile& inst);
InstanceFile instance_parse(const std::string& text);
void instance_write(const InstanceFile& inst, const std::string& path);
InstanceFile instance_read(const std::string& path);

LinearCode instance_public_code(const InstanceFile& inst);
// rebuilds the key from the secret and checks it regenerates the stored
// public matrix exactly; throws degenerate_error otherwise
KeyInstance instance_secret_key(const InstanceFile& inst);

// q = p^a with p prime; throws invalid_argument otherwise
std::pair<uint32_t, uint32_t> factor_prime_power(uint64_t q);

// FNV-1a, for output digests in the run log
std::string digest_hex(const std::string& bytes);

struct RunLog {
    std::string command;
    std::map<std::string, std::string> config;
    std::vector<std::pair<std::string, double>> timings; // stage -> seconds
    std::map<std::string, uint64_t> counters;
    std::map<std::string, std::string> verdicts;
    std::map<std::string, std::string> digests;

    void time(const std::string& stage, double seconds);
    // one JSON line; equal runs agree byte-for-byte outside the "timings" key
    std::string to_json() const;
};

} // namespace altrel
