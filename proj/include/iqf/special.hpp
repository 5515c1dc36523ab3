// Special functions on the complex plane: log-gamma, gamma, digamma.
// Stirling asymptotics with recurrence shifting, accurate to ~1e-14 on the
// argument ranges this project uses (|Im| <= 500, moderate real parts).
#pragma once

#include <complex>

namespace iqf {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Bernoulli numbers B_2, B_4, ..., B_30 (B_{2k} at index k-1).
inline constexpr double kBernoulli2k[15] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Principal branch of log Gamma(z). Poles (z = 0, -1, -2, ...) are rejected.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// Digamma psi(z) by recurrence into the asymptotic region.
Complex digamma(Complex z);

} // namespace iqf
