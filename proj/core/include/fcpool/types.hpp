#pragma once

#include <complex>

namespace fcpool {

using Complex = std::complex<double>;

}  // namespace fcpool
