// Closed-form local generators W_v(f) for the three place types, the
// vertical-contour oracle, and the rescaling constants c_v^s.
#pragma once

#include <complex>
#include <string>

#include "iqf/quadfield.hpp"
#include "iqf/testfn.hpp"

namespace iqf {

enum class Route { closed_form, contour, finite_difference };

struct LocalTerm {
    PlaceInfo place;
    double value = 0.0;
    Route route = Route::closed_form;
    double error_estimate = 0.0;
};

// Split and inert places:  -log q * sum_{n != 0} f(q^n) min(1, q^n), q = N(p).
LocalTerm W_unramified(const PlaceInfo& place, const TestFunction& f);

// Ramified places:  log N(d_v) f(1) + the same sum with q = p.
LocalTerm W_ramified(const PlaceInfo& place, const TestFunction& f);

// Complex place:
//   -2(gamma + log 2pi) f(1) - int_1^inf f(u) du/u
//   - int_1^inf (f(u)-f(1))/(u-1) du/u - int_0^1 f(u) du
//   - int_0^1 (u f(u) - f(1))/(1-u) du,
// the u -> 1 integrands extended by their limits.
LocalTerm W_complex(const TestFunction& f);

// dispatch on place kind
LocalTerm W_closed(const PlaceInfo& place, const TestFunction& f);

// Truncated vertical-line route:
//   (1/pi) int_0^T Re[ M^{sigma+it}(f) rho_v(sigma+it) ] dt
// where rho_v is the logarithmic derivative of the local zeta ratio:
//   unramified: d/ds log[(1 - q^{s-1})/(1 - q^{-s})]
//   ramified:   the same plus log N(d_v)
//   complex:    -2 log 2pi + psi(s) + psi(1-s)
// error_estimate carries the computed truncation tail (Mellin decay envelope
// times the density bound, integrated over (T, inf)).
LocalTerm W_contour(const PlaceInfo& place, const TestFunction& f, double sigma, double T);

std::complex<double> contour_density(const PlaceInfo& place, std::complex<double> s);

// Rescaling constant c_v^s: R_v^{-s} * 1_{O_v^x}(1), with the extra N(d_v)^{-s}
// factor at ramified places. Equals 1 + O(s^2) near s = 0.
double c_factor(const PlaceInfo& place, double s);

// generator route values side by side (used by the CLI and the route tests)
struct RouteValues {
    LocalTerm closed;
    LocalTerm contour;
    LocalTerm fd;
};
RouteValues all_routes(const PlaceInfo& place, const TestFunction& f, double sigma = 0.5,
                       double T = 200.0, double fd_h = 0.02);

} // namespace iqf
