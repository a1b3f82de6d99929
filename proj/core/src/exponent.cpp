#include "ukit/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ukit/errors.hpp"

namespace ukit {

Exponent::Exponent(double alpha) {
    if (std::isnan(alpha) || alpha < 1.0) {
        throw DomainError("exponent must lie in [1, inf], got " + std::to_string(alpha));
    }
    if (std::isinf(alpha)) {
        infinite_ = true;
        alpha_ = 1.0;
    } else {
        alpha_ = alpha;
    }
}

Exponent Exponent::finite(double alpha) {
    if (std::isinf(alpha)) {
        throw DomainError("finite exponent requested with an infinite value");
    }
    return Exponent(alpha);
}

Exponent Exponent::parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "\xe2\x88\x9e") {
        return infinity();
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DomainError("cannot parse exponent '" + std::string(text) + "'");
    }
    return Exponent(v);
}

std::string Exponent::to_string() const {
    if (infinite_) return "inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), alpha_);
    return std::string(buf, ptr);
}

}  // namespace ukit
