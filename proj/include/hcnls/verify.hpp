#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcnls/config.hpp"

namespace hcnls {

enum class VerifySuite { Hgn, Pohozaev, Virial, Blowup, Phase, Riesz };

std::optional<VerifySuite> parse_suite(const std::string& name);
const char* to_string(VerifySuite s);

struct CheckRow {
    std::string name;
    bool pass;
    std::string detail;
};

// Runs the named property suite at the config's parameters (seeded where the
// suite draws random trials). Suites that need canonical oracle parameters
// (the Newton-ball test, the minimal-mass law) say so in their row names.
// When out_dir is nonempty the blow-up suite writes its verification CSV
// there.
std::vector<CheckRow> run_verify_suite(VerifySuite suite, const RunConfig& cfg,
                                       std::uint64_t seed, const std::string& out_dir = "");

} // namespace hcnls
