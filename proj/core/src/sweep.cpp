#include "ukit/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "ukit/errors.hpp"
#include "ukit/format.hpp"

namespace ukit {

double scaled_axis(Exponent alpha) {
    if (alpha.is_infinite()) return 1.0;
    return (alpha.value() - 1.0) / (alpha.value() + 1.0);
}

std::vector<SweepNode> run_sweep(const SweepOptions& opts) {
    opts.config.validate();
    const std::size_t nb = opts.betas.size();
    const std::size_t total = opts.alphas.size() * nb;
    std::vector<SweepNode> nodes(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            SweepNode& n = nodes[i];
            const Exponent a = opts.alphas[i / nb], b = opts.betas[i % nb];
            n.bundle.alpha = a;
            n.bundle.beta = b;
            n.alpha_scaled = scaled_axis(a);
            n.beta_scaled = scaled_axis(b);
            auto t0 = std::chrono::steady_clock::now();
            try {
                n.bundle = compute_constants(a, b, opts.config);
            } catch (const std::exception& e) {
                n.error = e.what();
            }
            n.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return nodes;
}

unsigned resolve_jobs(std::optional<int> requested) {
    if (requested) {
        if (*requested < 1) throw DomainError("--jobs must be at least 1");
        return static_cast<unsigned>(*requested);
    }
    if (const char* env = std::getenv("UNCERTAINTY_KIT_JOBS"); env && *env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw DomainError("UNCERTAINTY_KIT_JOBS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string sweep_csv_header() {
    return "alpha,beta,alpha_scaled,beta_scaled,g,g_prime,c,c_prime,hirschman,c_minus_hirschman,trial_upper,"
           "exact,provenance,parity_ordered,error";
}

std::string sweep_csv_row(const SweepNode& n) {
    const auto& b = n.bundle;
    std::string s = b.alpha.to_string() + ',' + b.beta.to_string() + ',' + format_double(n.alpha_scaled) + ',' +
                    format_double(n.beta_scaled) + ',';
    if (!n.error.empty()) {
        std::string msg = n.error;
        for (char& ch : msg)
            if (ch == ',' || ch == '\n') ch = ';';
        return s + ",,,,,,,,,," + msg;
    }
    s += format_double(b.g) + ',' + format_double(b.g_prime) + ',' + format_double(b.c) + ',' +
         format_double(b.c_prime) + ',' + format_double(b.hirschman) + ',' + format_double(b.c - b.hirschman) + ',';
    s += (b.trial_upper ? format_double(*b.trial_upper) : std::string()) + ',';
    s += (b.exact ? format_double(b.exact->c) : std::string()) + ',';
    s += (b.exact ? b.exact->provenance : std::string("solver")) + ',';
    s += b.parity_ordered ? "1," : "0,";
    return s;
}

}  // namespace ukit
