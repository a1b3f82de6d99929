#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ukit/constants.hpp"
#include "ukit/covariant.hpp"
#include "ukit/discrete.hpp"
#include "ukit/errors.hpp"
#include "ukit/format.hpp"
#include "ukit/measure_io.hpp"
#include "ukit/svg.hpp"
#include "ukit/sweep.hpp"
#include "ukit/transport.hpp"
#include "ukit/validate.hpp"

namespace ukit::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    std::string config_path;
    std::optional<int> jobs;
    std::uint64_t seed = 1;
    std::optional<std::size_t> grid_points;
    std::optional<double> half_width;
    std::optional<int> max_iterations;
    std::optional<double> residual_tol;
    std::optional<int> basis_size;
};

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T v{};
    in >> v;
    if (!in || !(in >> std::ws).eof()) throw UsageError("bad value for " + key + ": '" + text + "'");
    return v;
}

// Reads key=value lines into opts wherever the flag was not given.
void apply_config_file(const std::string& path, GlobalOptions& o, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::string line;
    auto unset = [&](const char* flag) { return app.count(flag) == 0; };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw UsageError("config: expected key=value, got '" + trim(line) + "'");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "grid_points") {
            if (unset("--grid-points")) o.grid_points = parse_value<std::size_t>(key, val);
        } else if (key == "half_width") {
            if (unset("--half-width")) o.half_width = parse_value<double>(key, val);
        } else if (key == "max_iterations") {
            if (unset("--max-iterations")) o.max_iterations = parse_value<int>(key, val);
        } else if (key == "residual_tol") {
            if (unset("--residual-tol")) o.residual_tol = parse_value<double>(key, val);
        } else if (key == "basis_size") {
            if (unset("--basis-size")) o.basis_size = parse_value<int>(key, val);
        } else if (key == "jobs") {
            if (unset("--jobs")) o.jobs = parse_value<int>(key, val);
        } else if (key == "seed") {
            if (unset("--seed")) o.seed = parse_value<std::uint64_t>(key, val);
        } else {
            throw UsageError("config: unknown key '" + key + "'");
        }
    }
}

SolverConfig solver_config(const GlobalOptions& o) {
    SolverConfig c;
    if (o.grid_points) c.grid_points = *o.grid_points;
    if (o.half_width) c.half_width = *o.half_width;
    if (o.max_iterations) c.max_iterations = *o.max_iterations;
    if (o.residual_tol) c.residual_tol = *o.residual_tol;
    if (o.basis_size) c.basis_size = *o.basis_size;
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return c;
}

Exponent exponent_arg(const std::string& name, const std::string& text) {
    try {
        return Exponent::parse(text);
    } catch (const Error& e) {
        throw UsageError(name + ": " + e.what());
    }
}

std::vector<Exponent> exponent_list(const std::string& name, const std::string& text) {
    std::vector<Exponent> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(exponent_arg(name, item));
    if (v.empty()) throw UsageError(name + ": empty list");
    return v;
}

json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

json bundle_json(const ConstantsBundle& b) {
    json j{{"alpha", b.alpha.to_string()}, {"beta", b.beta.to_string()}, {"g", json_number(b.g)},
           {"g_prime", json_number(b.g_prime)}, {"c", json_number(b.c)}, {"c_prime", json_number(b.c_prime)},
           {"hirschman", json_number(b.hirschman)}, {"parity_ordered", b.parity_ordered},
           {"method", b.grid.method}, {"grid_points", b.grid.points}};
    j["trial_upper"] = b.trial_upper ? json_number(*b.trial_upper) : json(nullptr);
    j["exact"] = b.exact ? json_number(b.exact->c) : json(nullptr);
    j["provenance"] = b.exact ? b.exact->provenance : "solver";
    return j;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    return f;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uncertainty constants, transport distances and covariant error measures"};
    app.name("ukit");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path, "key=value file overriding solver defaults");
    app.add_option("--jobs", g.jobs, "worker threads for sweeps (default: UNCERTAINTY_KIT_JOBS or all cores)");
    app.add_option("--seed", g.seed, "seed for all sampling")->capture_default_str();
    app.add_option("--grid-points", g.grid_points, "grid nodes (power of two, >= 256)");
    app.add_option("--half-width", g.half_width, "position extent L of the grid [-L, L)");
    app.add_option("--max-iterations", g.max_iterations, "eigensolver iteration budget");
    app.add_option("--residual-tol", g.residual_tol, "relative preconditioned residual tolerance");
    app.add_option("--basis-size", g.basis_size, "oscillator basis size for cross-checks");

    std::string alpha_s = "2", beta_s = "2", format = "csv";
    auto* constants = app.add_subcommand("constants", "ground energies and constants for one (alpha, beta)");
    constants->add_option("--alpha", alpha_s, "position exponent (number or inf)")->required();
    constants->add_option("--beta", beta_s, "momentum exponent (number or inf)")->required();
    constants->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::string alphas_s = "1,1.5,2,4,10", betas_s = "1,1.5,2,4,10", out_path, svg_path, svg_value = "c";
    auto* sweep = app.add_subcommand("sweep", "constants over an alpha x beta grid");
    sweep->add_option("--alphas", alphas_s, "comma-separated alpha values")->capture_default_str();
    sweep->add_option("--betas", betas_s, "comma-separated beta values")->capture_default_str();
    sweep->add_option("--out", out_path, "CSV output path (default stdout)");
    sweep->add_option("--svg", svg_path, "also write an SVG heatmap");
    sweep->add_option("--svg-value", svg_value, "heatmap quantity")
        ->check(CLI::IsMember({"c", "c_prime", "hirschman", "gap"}))
        ->capture_default_str();

    std::string report_path;
    auto* validate = app.add_subcommand("validate", "check every reference anchor; JSON lines");
    validate->add_option("--report", report_path, "also write the JSON-lines report to a file");

    std::string mu_s, nu_s, coupling_path, t_alpha_s = "2";
    auto* transport = app.add_subcommand("transport", "Wasserstein distance between two measures");
    transport->add_option("mu", mu_s, "measure CSV or gaussian:M,S / dirac:X / uniform:A,B")->required();
    transport->add_option("nu", nu_s, "second measure")->required();
    transport->add_option("--alpha", t_alpha_s, "exponent (number or inf)")->capture_default_str();
    transport->add_option("--coupling", coupling_path, "write the monotone coupling as CSV ('-' for stdout)");

    std::string sigma_s, noise_q_s, noise_p_s, c_alpha_s = "2", c_beta_s = "2", c_format = "json";
    auto* covariant = app.add_subcommand("covariant", "errors of a covariant phase-space observable");
    auto* sigma_opt = covariant->add_option("--sigma", sigma_s, "gaussian:SQ,SP generating state");
    auto* nq = covariant->add_option("--noise-q", noise_q_s, "position noise measure (unverified state)");
    auto* np = covariant->add_option("--noise-p", noise_p_s, "momentum noise measure (unverified state)");
    sigma_opt->excludes(nq)->excludes(np);
    nq->needs(np);
    np->needs(nq);
    covariant->add_option("--alpha", c_alpha_s, "position exponent")->capture_default_str();
    covariant->add_option("--beta", c_beta_s, "momentum exponent")->capture_default_str();
    covariant->add_option("--format", c_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    int d = 3, samples = 10000;
    auto* diagram = app.add_subcommand("diagram", "finite phase-space preparation uncertainty diagram");
    diagram->add_option("--d", d, "dimension")->check(CLI::Range(2, discrete::kMaxDim))->capture_default_str();
    diagram->add_option("--samples", samples, "random pure states")->check(CLI::NonNegativeNumber)->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (!g.config_path.empty()) apply_config_file(g.config_path, g, app);

        if (*constants) {
            const Exponent a = exponent_arg("--alpha", alpha_s), b = exponent_arg("--beta", beta_s);
            const auto bundle = compute_constants(a, b, solver_config(g));
            if (format == "json") out << bundle_json(bundle).dump() << '\n';
            else out << constants_csv_header() << '\n' << constants_csv_row(bundle) << '\n';
            return kOk;
        }
        if (*sweep) {
            SweepOptions so;
            so.alphas = exponent_list("--alphas", alphas_s);
            so.betas = exponent_list("--betas", betas_s);
            so.config = solver_config(g);
            try {
                so.jobs = resolve_jobs(g.jobs);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            const auto nodes = run_sweep(so);
            std::ofstream file;
            if (!out_path.empty()) file = open_output(out_path);
            std::ostream& csv = out_path.empty() ? out : file;
            csv << sweep_csv_header() << '\n';
            int failed = 0;
            for (const auto& n : nodes) {
                csv << sweep_csv_row(n) << '\n';
                if (!n.error.empty()) {
                    ++failed;
                    err << "node (" << n.bundle.alpha.to_string() << ", " << n.bundle.beta.to_string()
                        << ") failed: " << n.error << '\n';
                }
            }
            if (!svg_path.empty()) {
                std::function<double(const SweepNode&)> f;
                if (svg_value == "c") f = [](const SweepNode& n) { return n.bundle.c; };
                else if (svg_value == "c_prime") f = [](const SweepNode& n) { return n.bundle.c_prime; };
                else if (svg_value == "hirschman") f = [](const SweepNode& n) { return n.bundle.hirschman; };
                else f = [](const SweepNode& n) { return n.bundle.c - n.bundle.hirschman; };
                auto svg = open_output(svg_path);
                svg << sweep_heatmap_svg(nodes, f, {svg_value + " over (alpha, beta), axes scaled by (a-1)/(a+1)"});
            }
            return failed ? kValidationFailure : kOk;
        }
        if (*validate) {
            const auto results = run_anchors(solver_config(g));
            std::ofstream file;
            if (!report_path.empty()) file = open_output(report_path);
            int passed = 0;
            for (const auto& r : results) {
                json j{{"anchor", r.name}, {"source", r.source}, {"value", json_number(r.value)},
                       {"expected", json_number(r.expected)}, {"tolerance", r.tolerance},
                       {"comparison", comparison_name(r.comparison)}, {"passed", r.passed}};
                if (!r.error.empty()) j["error"] = r.error;
                out << j.dump() << '\n';
                if (file) file << j.dump() << '\n';
                passed += r.passed;
            }
            err << passed << "/" << results.size() << " anchors passed\n";
            return passed == static_cast<int>(results.size()) ? kOk : kValidationFailure;
        }
        if (*transport) {
            const Exponent a = exponent_arg("--alpha", t_alpha_s);
            Measure1D mu = Measure1D::dirac(0.0), nu = mu;
            try {
                mu = parse_measure_spec(mu_s);
                nu = parse_measure_spec(nu_s);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            out << "alpha,distance\n" << a.to_string() << ',' << format_double(wasserstein(mu, nu, a)) << '\n';
            if (!coupling_path.empty()) {
                const auto cells = monotone_coupling(mu, nu);
                if (coupling_path == "-") {
                    write_coupling_csv(out, cells);
                } else {
                    auto f = open_output(coupling_path);
                    write_coupling_csv(f, cells);
                }
            }
            return kOk;
        }
        if (*covariant) {
            const Exponent a = exponent_arg("--alpha", c_alpha_s), b = exponent_arg("--beta", c_beta_s);
            std::optional<CovariantModel> model;
            try {
                if (!sigma_s.empty()) {
                    if (sigma_s.rfind("gaussian:", 0) != 0) throw UsageError("--sigma expects gaussian:SQ,SP");
                    std::string rest = sigma_s.substr(9);
                    auto comma = rest.find(',');
                    if (comma == std::string::npos) throw UsageError("--sigma expects gaussian:SQ,SP");
                    model = CovariantModel::gaussian(parse_value<double>("--sigma", rest.substr(0, comma)),
                                                     parse_value<double>("--sigma", rest.substr(comma + 1)));
                } else if (!noise_q_s.empty()) {
                    model = CovariantModel::grid_pair(parse_measure_spec(noise_q_s), parse_measure_spec(noise_p_s));
                } else {
                    throw UsageError("covariant needs --sigma or --noise-q/--noise-p");
                }
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            const auto bundle = compute_constants(a, b, solver_config(g));
            const auto r = verify_mur(*model, a, b, bundle);
            if (c_format == "json") {
                json j{{"model", model->describe()}, {"alpha", a.to_string()}, {"beta", b.to_string()},
                       {"d_q", json_number(r.d_q)}, {"d_p", json_number(r.d_p)}, {"product", json_number(r.product)},
                       {"bound", json_number(r.bound)}, {"saturation_gap", json_number(r.saturation_gap)},
                       {"indefinite", r.indefinite}, {"note", r.note}};
                j["near_minimal_norm_bound"] = r.near_minimal_norm_bound ? json(*r.near_minimal_norm_bound) : json(nullptr);
                out << j.dump() << '\n';
            } else {
                out << "alpha,beta,d_q,d_p,product,bound,saturation_gap,near_minimal_norm_bound,indefinite,note\n";
                out << a.to_string() << ',' << b.to_string() << ',' << format_double(r.d_q) << ','
                    << format_double(r.d_p) << ',' << format_double(r.product) << ',' << format_double(r.bound) << ','
                    << format_double(r.saturation_gap) << ','
                    << (r.near_minimal_norm_bound ? format_double(*r.near_minimal_norm_bound) : "") << ','
                    << (r.indefinite ? 1 : 0) << ',' << r.note << '\n';
            }
            return kOk;
        }
        if (*diagram) {
            const auto pd = discrete::preparation_diagram(d, samples, g.seed);
            const auto& e = pd.ellipse;
            out << "# d=" << d << ", center=(" << format_double(e.center_q) << "," << format_double(e.center_p)
                << "), semi_major=" << format_double(e.semi_major) << ", semi_minor=" << format_double(e.semi_minor)
                << ", angle=" << format_double(e.angle) << ", intercept=" << format_double(e.intercept)
                << ", k=" << format_double(e.k) << '\n';
            out << "kind,dq,dp\n";
            for (const auto& p : pd.boundary) out << "boundary," << format_double(p.dq) << ',' << format_double(p.dp) << '\n';
            for (const auto& p : pd.samples) out << "sample," << format_double(p.dq) << ',' << format_double(p.dp) << '\n';
            if (pd.corner) out << "corner," << format_double(pd.corner->dq) << ',' << format_double(pd.corner->dp) << '\n';
            for (const auto& p : pd.corner_tangents)
                out << "tangent," << format_double(p.dq) << ',' << format_double(p.dp) << '\n';
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "ukit: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "ukit: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kUsageError;
}

}  // namespace ukit::cli
