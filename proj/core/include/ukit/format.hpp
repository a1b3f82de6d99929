#pragma once

#include <string>

namespace ukit {

// Shortest decimal that reads back to the same double; "inf", "-inf", "nan"
// for non-finite values.
std::string format_double(double x);

}  // namespace ukit
