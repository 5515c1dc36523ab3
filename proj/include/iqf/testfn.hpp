// Smooth compactly supported test functions on R+, their Mellin transforms,
// and the quadrature front door.
//
// Mellin convention used throughout:  M^s(f) = int_0^inf f(x) x^{s-1} dx.
// See docs/mellin-convention.md for why this normalization is forced.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "iqf/quadrature.hpp"
#include "iqf/series.hpp"

namespace iqf {

struct TestFunction {
    double support_lo = 0.0; // a
    double support_hi = 0.0; // b, 0 < a <= b
    std::function<double(double)> eval;
    // Taylor expansions at a point (optional; null for generic evaluators).
    // taylor_x:    series of t -> f(x0 + t)
    // taylor_logx: series of t -> f(exp(u0 + t))
    std::function<Series(double)> taylor_x;
    std::function<Series(double)> taylor_logx;
    std::string description;

    double operator()(double x) const { return eval(x); }
    bool has_taylor() const { return static_cast<bool>(taylor_x); }
    // derivative of order k at x (Taylor route when present, else 0 outside support)
    double derivative_at(double x, int k) const;
};

// f(x) = exp(-1/(1-u^2)), u = log(x/center)/radius, supported on
// [center e^-radius, center e^radius].
TestFunction make_log_bump(double center, double radius);

// Indicator of [a, b]: a quadrature-validation input, deliberately outside the
// smooth class (discontinuous at the endpoints).
TestFunction make_indicator(double a, double b);

TestFunction scale_function(const TestFunction& f, double coeff);
TestFunction add_functions(const TestFunction& f, const TestFunction& g);
// g(x) = f(c x)
TestFunction dilate_function(const TestFunction& f, double c);

// CLI/config grammar: "bump:center=<x>,radius=<r>"
TestFunction parse_test_function(const std::string& spec);

struct MellinValue {
    std::complex<double> value;
    double abs_error_estimate = 0.0;
};

MellinValue mellin(const TestFunction& f, std::complex<double> s);
// pole-term values M^0(f), M^1(f)
double mellin_at_zero(const TestFunction& f);
double mellin_at_one(const TestFunction& f);

// Decay envelope: M_k(sigma) = int |d^k/du^k (f(e^u) e^{sigma u})| du, so that
// |M^{sigma+it}(f)| <= M_k / |t|^k for every k computed. Without Taylor data
// only k = 0 is available.
std::vector<double> mellin_envelope(const TestFunction& f, double sigma, int k_max = 12);
// min over computed k of M_k / t^k
double envelope_bound(const std::vector<double>& mk, double t);

// Quadrature front door with the (value, error) contract.
QuadResult<double> integrate(const std::function<double(double)>& g, double a, double b,
                             double tol);

} // namespace iqf
