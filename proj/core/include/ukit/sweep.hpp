#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ukit/constants.hpp"

namespace ukit {

// alpha -> (alpha - 1) / (alpha + 1), mapping [1, inf] onto [0, 1].
double scaled_axis(Exponent alpha);

struct SweepNode {
    ConstantsBundle bundle;
    double alpha_scaled = 0.0;
    double beta_scaled = 0.0;
    double seconds = 0.0;
    std::string error;  // non-empty when the node failed; bundle then holds only the exponents
};

struct SweepOptions {
    std::vector<Exponent> alphas;
    std::vector<Exponent> betas;
    SolverConfig config;
    unsigned jobs = 1;
};

// Evaluates compute_constants on the alphas x betas grid, row-major in alpha,
// with up to `jobs` worker threads. Node failures are captured per node.
std::vector<SweepNode> run_sweep(const SweepOptions& opts);

// Worker count: the explicit value if given, else UNCERTAINTY_KIT_JOBS, else
// the hardware concurrency (at least 1). Throws DomainError on a bad value.
unsigned resolve_jobs(std::optional<int> requested);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepNode& node);

}  // namespace ukit
