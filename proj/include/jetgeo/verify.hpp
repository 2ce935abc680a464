#pragma once

/**
 * @file verify.hpp
 * @brief The self-verification suite: one named check per statement the
 *        library's algorithms rely on, rerun from scratch on every call.
 *
 * Each line re-proves a statement on concrete data: algebra relations by
 * exhausting basis products, identities by evaluating both sides on seeded
 * random inputs, equivalences by running both sides independently. A line
 * marked "evidence" samples points instead of quantifying over them.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "jetgeo/innerprod.hpp"
#include "jetgeo/riemann.hpp"

namespace jetgeo {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run every check. Deterministic for a fixed seed. `sign` feeds only the
/// transport-isometry line, so a flipped convention fails exactly there.
std::vector<CheckLine> run_paper_suite(ScalarMode mode, std::uint64_t seed,
                                       const CheckOptions& opts = {},
                                       GammaSign sign = GammaSign::Standard);

} // namespace jetgeo
