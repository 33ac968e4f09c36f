#pragma once
// Verification certificates and their canonical JSON form: sorted keys,
// decimal-string big integers, "p/q" rationals, schemaVersion 1. Files are
// written atomically and are byte-identical across reruns with the same
// inputs and seed (no timestamps or runtimes inside the payload).

#include <cstdint>
#include <string>

#include <json.hpp>

#include "indlab/numeric.hpp"

namespace indlab {

struct Certificate {
    std::string claim;  // claim identifier
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json payload = nlohmann::json::object();
    bool verified = false;
    std::string toolVersion = "indlab 1.0.0";
    std::uint64_t seed = 0;
};

// JSON helpers for exact values
nlohmann::json rat_json(const Rat& r);        // "p/q" (or "p")
nlohmann::json bigint_json(const BigInt& v);  // decimal string

std::string certificate_json(const Certificate& cert);  // canonical form
void write_certificate(const Certificate& cert, const std::string& path);

}  // namespace indlab
