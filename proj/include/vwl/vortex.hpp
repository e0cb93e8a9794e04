#pragma once

#include <complex>

namespace vwl {

struct Vortex {
    std::complex<double> position;
    double strength = 0.0;
};

}  // namespace vwl
