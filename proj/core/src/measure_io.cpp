#include "ukit/measure_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <regex>

#include "ukit/errors.hpp"
#include "ukit/format.hpp"

namespace ukit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s == "inf" || s == "+inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (s == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::vector<double> split_numbers(std::string_view s) {
    std::vector<double> out;
    while (true) {
        auto comma = s.find(',');
        double v;
        if (!parse_number(s.substr(0, comma), v)) throw RepresentationError("not a number: '" + std::string(trim(s.substr(0, comma))) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw RepresentationError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Measure1D read_measure_csv(std::istream& in) {
    static const std::regex grid_re(R"(#\s*origin\s*=\s*([^,\s]+)\s*,\s*step\s*=\s*([^,\s]+)\s*)");
    static const std::regex gauss_re(R"(#\s*gaussian\s+mean\s*=\s*([^,\s]+)\s*,\s*std\s*=\s*([^,\s]+)\s*)");
    enum class Mode { unknown, atoms, grid, quantile, gaussian } mode = Mode::unknown;
    double origin = 0.0, step = 1.0, g_mean = 0.0, g_std = 1.0;
    std::vector<double> a, b;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            std::smatch m;
            std::string s(t);
            if (std::regex_match(s, m, grid_re)) {
                if (mode != Mode::unknown) fail(lineno, "grid header after data");
                if (!parse_number(m[1].str(), origin) || !parse_number(m[2].str(), step)) fail(lineno, "bad grid header");
                mode = Mode::grid;
            } else if (std::regex_match(s, m, gauss_re)) {
                if (mode != Mode::unknown) fail(lineno, "gaussian header after data");
                if (!parse_number(m[1].str(), g_mean) || !parse_number(m[2].str(), g_std)) fail(lineno, "bad gaussian header");
                mode = Mode::gaussian;
            }
            continue;
        }
        if (mode == Mode::unknown && t == "point,weight") {
            mode = Mode::atoms;
            continue;
        }
        if (mode == Mode::unknown && t == "level,value") {
            mode = Mode::quantile;
            continue;
        }
        if (mode == Mode::gaussian) fail(lineno, "gaussian measure takes no rows");
        std::vector<double> v;
        try {
            v = split_numbers(t);
        } catch (const RepresentationError& e) {
            fail(lineno, e.what());
        }
        if (mode == Mode::grid) {
            if (v.size() != 1) fail(lineno, "grid rows hold one value");
            a.push_back(v[0]);
            continue;
        }
        if (mode == Mode::unknown) mode = Mode::atoms;
        if (v.size() != 2) fail(lineno, "expected two columns");
        a.push_back(v[0]);
        b.push_back(v[1]);
    }
    switch (mode) {
        case Mode::grid: return Measure1D::grid(origin, step, std::move(a));
        case Mode::quantile: return Measure1D::quantile_table(std::move(a), std::move(b));
        case Mode::gaussian: return Measure1D::gaussian(g_mean, g_std);
        case Mode::atoms:
        case Mode::unknown: return Measure1D::atoms(std::move(a), std::move(b));
    }
    return Measure1D::dirac(0.0);
}

Measure1D read_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RepresentationError("cannot open " + path);
    try {
        return read_measure_csv(in);
    } catch (const RepresentationError& e) {
        throw RepresentationError(path + ": " + e.what());
    }
}

void write_measure_csv(std::ostream& out, const Measure1D& mu) {
    switch (mu.kind()) {
        case MeasureKind::atoms: {
            const auto& a = mu.as_atoms();
            out << "point,weight\n";
            for (std::size_t i = 0; i < a.points.size(); ++i)
                out << format_double(a.points[i]) << ',' << format_double(a.weights[i]) << '\n';
            break;
        }
        case MeasureKind::grid: {
            const auto& g = mu.as_grid();
            out << "# origin=" << format_double(g.origin) << ", step=" << format_double(g.step) << '\n';
            for (double v : g.values) out << format_double(v) << '\n';
            break;
        }
        case MeasureKind::quantile: {
            const auto& q = mu.as_quantile();
            out << "level,value\n";
            for (std::size_t i = 0; i < q.levels.size(); ++i)
                out << format_double(q.levels[i]) << ',' << format_double(q.values[i]) << '\n';
            break;
        }
        case MeasureKind::gaussian: {
            const auto& g = mu.as_gaussian();
            out << "# gaussian mean=" << format_double(g.mean) << ", std=" << format_double(g.std) << '\n';
            break;
        }
    }
}

Measure1D parse_measure_spec(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon != std::string_view::npos) {
        std::string_view kind = spec.substr(0, colon);
        std::vector<double> v;
        if (kind == "gaussian" || kind == "dirac" || kind == "uniform") v = split_numbers(spec.substr(colon + 1));
        if (kind == "gaussian") {
            if (v.size() != 2) throw RepresentationError("gaussian:M,S expects two numbers");
            return Measure1D::gaussian(v[0], v[1]);
        }
        if (kind == "dirac") {
            if (v.size() != 1) throw RepresentationError("dirac:X expects one number");
            return Measure1D::dirac(v[0]);
        }
        if (kind == "uniform") {
            if (v.size() != 2) throw RepresentationError("uniform:A,B expects two numbers");
            return Measure1D::uniform(v[0], v[1]);
        }
    }
    return read_measure_file(std::string(spec));
}

void write_coupling_csv(std::ostream& out, const std::vector<CouplingCell>& cells) {
    out << "x,y,mass\n";
    for (const auto& c : cells) out << format_double(c.x) << ',' << format_double(c.y) << ',' << format_double(c.mass) << '\n';
}

}  // namespace ukit
