// Numerical integration engines.
//
// tanh_sinh: double-exponential quadrature on a finite interval with a
// node-doubling convergence loop and an absolute-tolerance contract; the node
// placement clusters double-exponentially at the endpoints, so integrable
// endpoint singularities (x^{s-1} at 0, etc.) converge without special-casing.
// exp_sinh: semi-infinite version for decaying integrands on (a, inf).
// gauss_legendre_panels: fixed-order composite rule for smooth oscillatory
// integrands where the oscillation count fixes the panel budget.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace iqf {

struct QuadOptions {
    double abs_tol = 1e-12;
    int max_level = 12;     // node count roughly doubles per level
    bool throw_on_fail = true;
};

template <typename V>
struct QuadResult {
    V value{};
    double error = 0.0; // estimated absolute error
    bool converged = false;
    long evaluations = 0;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

QuadResult<double> tanh_sinh(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt = {});
QuadResult<std::complex<double>> tanh_sinh_c(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, const QuadOptions& opt = {});

// integral over (a, infinity) of a decaying integrand
QuadResult<double> exp_sinh(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt = {});

// n_panels panels of fixed-order Gauss-Legendre (order 16)
double gauss_legendre_panels(const std::function<double(double)>& f, double a, double b,
                             int n_panels);
std::complex<double> gauss_legendre_panels_c(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, int n_panels);

// nodes/weights of the order-16 rule on [-1, 1]
const std::vector<double>& gl16_nodes();
const std::vector<double>& gl16_weights();

} // namespace iqf
