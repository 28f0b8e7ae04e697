#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "weft/state.hpp"

namespace support {

inline weft::SampledState sample(const weft::Grid &g, const auto &f) {
    std::vector<weft::cplx> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.x(j));
    return weft::SampledState(g, std::move(v));
}

inline double max_abs(const weft::SampledState &a, const weft::SampledState &b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

/// Sets WIGNER_WEFT_THREADS for the lifetime of the guard.
class ThreadEnv {
  public:
    explicit ThreadEnv(const std::string &value) {
        if (const char *old = std::getenv("WIGNER_WEFT_THREADS")) {
            had_ = true;
            old_ = old;
        }
        ::setenv("WIGNER_WEFT_THREADS", value.c_str(), 1);
    }
    ~ThreadEnv() {
        if (had_) ::setenv("WIGNER_WEFT_THREADS", old_.c_str(), 1);
        else ::unsetenv("WIGNER_WEFT_THREADS");
    }

  private:
    bool had_ = false;
    std::string old_;
};

} // namespace support
