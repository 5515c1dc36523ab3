#include "iqf/special.hpp"

#include <cmath>
#include <stdexcept>

namespace iqf {

namespace {

bool near_nonpositive_integer(Complex z) {
    if (z.real() > 0.1) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-12 && std::abs(z.imag()) < 1e-12;
}

// Stirling series, valid once |z| is large enough and Re z > 0.
Complex log_gamma_stirling(Complex z) {
    const double kLogTwoPi = 1.8378770664093454835606594728112353;
    Complex r = (z - 0.5) * std::log(z) - z + 0.5 * kLogTwoPi;
    Complex zi = 1.0 / (z * z);
    Complex p = 1.0 / z;
    for (int k = 1; k <= 10; ++k) {
        r += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= zi;
    }
    return r;
}

} // namespace

Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at nonpositive integer");
    // Shift Re z up until Stirling is accurate; |Im| large alone is also fine.
    Complex shift = 0.0;
    int guard = 0;
    while (z.real() < 12.0 && std::abs(z.imag()) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
        if (++guard > 64) throw std::domain_error("log_gamma: shift failed");
    }
    if (z.real() < 0.5) {
        // large |Im| but negative real part: reflect the real direction via
        // recurrence as well (cheap, few steps since |Im| is already large)
        while (z.real() < 0.5) {
            shift -= std::log(z);
            z += 1.0;
        }
    }
    return log_gamma_stirling(z) + shift;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex digamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("digamma: pole at nonpositive integer");
    Complex acc = 0.0;
    int guard = 0;
    while (z.real() < 12.0 && std::abs(z.imag()) < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
        if (++guard > 64) throw std::domain_error("digamma: shift failed");
    }
    while (z.real() < 0.5) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    Complex r = std::log(z) - 0.5 / z;
    Complex zi = 1.0 / (z * z);
    Complex p = zi;
    for (int k = 1; k <= 10; ++k) {
        r -= kBernoulli2k[k - 1] / (2.0 * k) * p;
        p *= zi;
    }
    return acc + r;
}

} // namespace iqf
