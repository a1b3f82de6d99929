#pragma once

#include <mutex>

namespace ukit::detail {

// FFTW planning routines are not reentrant; every plan creation and
// destruction in the library goes through this lock. Plan execution is safe
// without it.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace ukit::detail
