#include "indlab/certificate.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace indlab {

nlohmann::json rat_json(const Rat& r) { return rat_str(r); }
nlohmann::json bigint_json(const BigInt& v) { return bigint_str(v); }

std::string certificate_json(const Certificate& cert) {
    nlohmann::json j;
    j["schemaVersion"] = 1;
    j["claim"] = cert.claim;
    j["params"] = cert.params;
    j["payload"] = cert.payload;
    j["verified"] = cert.verified;
    j["toolVersion"] = cert.toolVersion;
    j["seed"] = cert.seed;
    return j.dump(2) + "\n";  // nlohmann objects keep keys sorted
}

void write_certificate(const Certificate& cert, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_certificate: cannot open " + tmp);
        out << certificate_json(cert);
        if (!out) throw std::runtime_error("write_certificate: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_certificate: rename failed for " + path);
}

}  // namespace indlab
