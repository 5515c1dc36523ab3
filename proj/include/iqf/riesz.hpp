// Riesz kernels R_v^s acting by convolution on radial functions.
//
// Finite places: exact ultrametric shell calculus. Radial functions live on
// valuation levels n (|x| = q^-n, q = N(p)); all integrals reduce to finite
// shell sums plus geometric tails in closed form, so results are exact to
// rounding. The meromorphically continued operator is
//   R_v^s * g(y) = A_s g(y) + B_s [ int_{|x|<=1} (g(y+x)-g(y)) |x|^{s-1} dx
//                                  + int_{|x|>1} g(y+x) |x|^{s-1} dx ]
//   A_s = Nd^-s (1-1/q)/(1-q^{s-1}),  B_s = Nd^{1/2-s} (1-q^{-s})/(1-q^{s-1}),
// valid for Re s < 1, s != 1 (mod 2 pi i / log q).
//
// Complex place: |z|_inf = z zbar (square of the usual modulus), dz = twice
// Lebesgue. Convolutions reduce to a radial integral of an angular average;
// the angular average over the circle |z| = r is computed in the substituted
// variable phi with w = c + d sin(phi), which removes the 1/sqrt endpoint
// weight and clips exactly to the support of the profile.
// See docs/shell-calculus.md for the derivations.
#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "iqf/quadfield.hpp"
#include "iqf/testfn.hpp"

namespace iqf {

// ---------- radial functions at a finite place ----------

struct RadialProfile {
    PlaceInfo place;
    int n_min = 0;               // values[i] is level n_min + i
    std::vector<double> values;  // empty means identically value_at_zero rule
    double value_at_zero = 0.0;  // value for n > n_max (locally constant near 0)

    int n_max() const { return n_min + static_cast<int>(values.size()) - 1; }
    double at(long n) const {
        if (values.empty()) return n >= n_min ? value_at_zero : 0.0;
        if (n < n_min) return 0.0;
        if (n > n_max()) return value_at_zero;
        return values[static_cast<std::size_t>(n - n_min)];
    }
};

// indicator of O_v / of the unit group O_v^x
RadialProfile profile_unit_ball(const PlaceInfo& place);
RadialProfile profile_units(const PlaceInfo& place);
// f(|x|_v) for a test function f (vanishes at 0, finitely many levels)
RadialProfile profile_from_function(const PlaceInfo& place, const TestFunction& f);

// additive Haar measure of the ball |x| <= q^-n:  Nd^{-1/2} q^{-n}
double ball_measure(const PlaceInfo& place, long n);
// measure of the full sphere |x| = q^-n
double shell_measure(const PlaceInfo& place, long n);
// measure of {x : |x| = q^-m, |x+y| <= q^-k} for any fixed |y| = q^-m.
// For k > m this is the ball measure at level k (a translated ball); the
// complementary case k <= m is rejected unless allow_complement is set, in
// which case k == m returns the full sphere and k < m returns 0.
double shell_intersection_measure(const PlaceInfo& place, long m, long k,
                                  bool allow_complement = false);

// A radial function given per level, with analytic tail data so convolution
// results (which have geometric far tails) can be convolved again exactly.
//   n <  lo_start: value(n) = value(lo_start) * lo_ratio^(lo_start - n)
//   n >  hi_start: value(n) = hi_const
class PadicRadialFn {
public:
    PadicRadialFn(std::function<std::complex<double>(long)> fn, long lo_start,
                  std::complex<double> lo_ratio, long hi_start, std::complex<double> hi_const);
    static PadicRadialFn from_profile(const RadialProfile& p);

    std::complex<double> at(long n) const;
    long lo_start() const { return lo_start_; }
    std::complex<double> lo_ratio() const { return lo_ratio_; }
    long hi_start() const { return hi_start_; }
    std::complex<double> hi_const() const { return hi_const_; }

private:
    std::function<std::complex<double>(long)> fn_;
    long lo_start_;
    std::complex<double> lo_ratio_;
    long hi_start_;
    std::complex<double> hi_const_;
    mutable std::map<long, std::complex<double>> memo_;
};

// Continued-form convolution, Re s < 1. y_level gives |y| = q^{-y_level}.
std::complex<double> riesz_convolve_padic(const PlaceInfo& place, const PadicRadialFn& g,
                                          std::complex<double> s, long y_level);
std::complex<double> riesz_convolve_padic(const PlaceInfo& place, const RadialProfile& phi,
                                          std::complex<double> s, long y_level);
// Direct route (no continuation), 0 < Re s < 1; used as the second leg of
// the dual-route checks.
std::complex<double> riesz_convolve_padic_direct(const PlaceInfo& place,
                                                 const RadialProfile& phi,
                                                 std::complex<double> s, long y_level);

// R^s*phi wrapped as a PadicRadialFn (exact geometric low tail, constant high
// tail beyond hi_pad extra levels).
PadicRadialFn riesz_convolved_fn(const PlaceInfo& place, const RadialProfile& phi,
                                 std::complex<double> s, int hi_pad = 80);

// max over sample levels of |R^{s'}*(R^s*phi) - R^{s+s'}*phi|
double semigroup_defect_padic(const PlaceInfo& place, const RadialProfile& phi,
                              std::complex<double> s, std::complex<double> s_prime,
                              const std::vector<long>& sample_levels);

// ---------- complex place ----------

// Radial function on |.|_inf together with its support window.
struct ComplexRadial {
    std::function<double(double)> eval; // argument is t = |z|_inf
    double supp_lo = 0.0;
    double supp_hi = 0.0;
};

ComplexRadial radial_from_function(const TestFunction& f);

// (1/2pi) int_0^{2pi} F(|y|_inf + 2 sqrt(|y|_inf t) cos th + t) dth
double angular_average(const ComplexRadial& F, double t, double y_usual, double tol = 1e-11);

// Continued form, -1 < Re s < 1 (direct and continued agree on 0 < Re s < 1).
std::complex<double> riesz_convolve_complex(const ComplexRadial& F, std::complex<double> s,
                                            double y_norm, double tol = 1e-11);
std::complex<double> riesz_convolve_complex(const TestFunction& f, std::complex<double> s,
                                            double y_norm, double tol = 1e-11);
// Direct route, 0 < Re s < 1.
std::complex<double> riesz_convolve_complex_direct(const ComplexRadial& F, std::complex<double> s,
                                                   double y_norm, double tol = 1e-11);

// max over sample |y|_inf values of |R^{s'}*(R^s*f) - R^{s+s'}*f|,
// 0 < s, s', Re(s+s') < 1. Builds a spline of the inner convolution and
// closes the far radial tail with the analytic asymptote.
double semigroup_defect_complex(const TestFunction& f, double s, double s_prime,
                                const std::vector<double>& sample_norms);

// ---------- generator finite differences ----------

// Central difference (R^{-h}*f|_v(1) - R^{h}*f|_v(1)) / (2h), Richardson
// extrapolated over h and h/2.
double generator_fd(const PlaceInfo& place, const TestFunction& f, double h = 0.02);

} // namespace iqf
