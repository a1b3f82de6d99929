#pragma once

#include <string>
#include <vector>

#include "ukit/spectral.hpp"

namespace ukit {

enum class Comparison {
    near,      // |value - expected| <= tolerance
    at_least,  // value >= expected - tolerance
    at_most,   // value <= expected + tolerance
    relative,  // |value - expected| <= tolerance |expected|
};

struct AnchorResult {
    std::string name;
    std::string source;  // where the expected value comes from
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::near;
    bool passed = false;
    double seconds = 0.0;
    std::string error;  // set when the computation threw
};

const char* comparison_name(Comparison c);

// Every reference value the library reproduces: ground energies and
// constants of the solvable cases, Hirschman's bound at (2,2), trial bounds,
// the Airy and Reeb values, the covariant saturation case, the finite Weyl
// relation and the finite diagram touch points.
std::vector<AnchorResult> run_anchors(const SolverConfig& cfg = {});

}  // namespace ukit
