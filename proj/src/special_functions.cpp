#include "truncon/special_functions.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <string>

namespace truncon {

Complex log_gamma(Complex z) {
    gsl_sf_result lnr;
    gsl_sf_result arg;
    // GSL's default handler aborts the process; errors are reported through
    // the status code instead. The handler is global, so switch it once.
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;
    const int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    if (status != GSL_SUCCESS) {
        throw NumericalError("log-gamma failed at z = (" + std::to_string(z.real()) + ", " +
                             std::to_string(z.imag()) + ")");
    }
    return {lnr.val, arg.val};
}

Complex expm1(Complex w) {
    const double a = w.real();
    const double b = w.imag();
    const double s = std::sin(0.5 * b);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * s * s;
    const double im = std::exp(a) * std::sin(b);
    return {re, im};
}

Complex power_difference(std::size_t m, Complex z) {
    if (m == 0) return 1.0;
    const double dm = static_cast<double>(m);
    // m^z (exp(z log1p(1/m)) - 1)
    return std::exp(z * std::log(dm)) * expm1(z * std::log1p(1.0 / dm));
}

Complex power_law_cell_integral(std::size_t m, Complex z, double h) {
    const Complex scale = std::exp(z * std::log(h) - log_gamma(z + 1.0));
    return scale * power_difference(m, z);
}

}  // namespace truncon
