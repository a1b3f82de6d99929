#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace ukit {

// An exponent alpha in [1, inf]. Infinity is an explicit state rather than a
// large number, so code can branch on it without comparing against a cutoff.
class Exponent {
public:
    // Accepts any alpha >= 1; +inf maps to the infinite exponent.
    Exponent(double alpha);  // NOLINT(google-explicit-constructor)

    static Exponent finite(double alpha);
    static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

    // Parses "2", "1.5", "inf", "infinity" (case-insensitive).
    static Exponent parse(std::string_view text);

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    // The numeric value; +inf for the infinite exponent.
    double value() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : alpha_;
    }

    // 1/alpha, equal to 0 for the infinite exponent.
    double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / alpha_; }

    // Shortest round-tripping decimal, or "inf".
    std::string to_string() const;

    friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.alpha_ == b.alpha_);
    }

private:
    double alpha_ = 1.0;
    bool infinite_ = false;
};

}  // namespace ukit
