#pragma once

#include "truncon/types.hpp"

namespace truncon {

// Principal branch of ln Gamma(z) for complex z (GSL backend).
Complex log_gamma(Complex z);

// e^w - 1 without cancellation near w = 0.
Complex expm1(Complex w);

// (m+1)^z - m^z for integer m >= 0, accurate for large m.
Complex power_difference(std::size_t m, Complex z);

// Integral of x^{z-1}/Gamma(z) over the cell [m h, (m+1) h]:
// h^z ((m+1)^z - m^z) / Gamma(z+1). Requires Re z > 0.
Complex power_law_cell_integral(std::size_t m, Complex z, double h);

}  // namespace truncon
