#include "iqf/localterms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "iqf/kahan.hpp"
#include "iqf/riesz.hpp"
#include "iqf/special.hpp"

namespace iqf {

using C = std::complex<double>;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLog2Pi = 1.8378770664093454835606594728112353;

// -log q * sum_{n != 0} f(q^n) min(1, q^n)
double prime_power_sum(double q, const TestFunction& f) {
    KahanReal acc;
    const double lq = std::log(q);
    for (double x = q; x <= f.support_hi * (1 + 1e-12); x *= q) {
        if (x >= f.support_lo) acc.add(f.eval(x));
    }
    for (double x = 1.0 / q; x >= f.support_lo * (1 - 1e-12); x /= q) {
        if (x <= f.support_hi) acc.add(f.eval(x) * x);
    }
    return -lq * acc.value();
}

} // namespace

LocalTerm W_unramified(const PlaceInfo& place, const TestFunction& f) {
    if (place.kind != PlaceKind::split && place.kind != PlaceKind::inert)
        throw std::invalid_argument("W_unramified: split or inert place required");
    LocalTerm t;
    t.place = place;
    t.route = Route::closed_form;
    t.value = prime_power_sum(static_cast<double>(place.norm), f);
    t.error_estimate = 1e-15 * std::abs(t.value);
    return t;
}

LocalTerm W_ramified(const PlaceInfo& place, const TestFunction& f) {
    if (place.kind != PlaceKind::ramified)
        throw std::invalid_argument("W_ramified: ramified place required");
    LocalTerm t;
    t.place = place;
    t.route = Route::closed_form;
    t.value = std::log(static_cast<double>(place.different_norm)) * f.eval(1.0) +
              prime_power_sum(static_cast<double>(place.norm), f);
    t.error_estimate = 1e-15 * std::abs(t.value);
    return t;
}

LocalTerm W_complex(const TestFunction& f) {
    const double a = f.support_lo, b = f.support_hi;
    const double f1 = f.eval(1.0);
    // Taylor data at 1 for the removable u -> 1 integrands
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    if (f1 != 0.0 || (a < 1.0 && b > 1.0)) {
        if (f.taylor_x) {
            Series sr = f.taylor_x(1.0);
            c1 = sr.c[1];
            c2 = sr.c[2];
            c3 = sr.c[3];
        } else {
            c1 = f.derivative_at(1.0, 1);
            c2 = f.derivative_at(1.0, 2) / 2.0;
            c3 = f.derivative_at(1.0, 3) / 6.0;
        }
    }
    const double guard = 1e-4;
    QuadOptions opt{1e-12, 12, true};
    KahanReal acc;
    acc.add(-2.0 * (kEulerGamma + kLog2Pi) * f1);

    // I1 = int_1^inf f(u) du/u
    if (b > 1.0) {
        double lo = std::max(1.0, a);
        acc.add(-tanh_sinh([&](double u) { return f.eval(u) / u; }, lo, b, opt).value);
    }
    // I2 = int_1^inf (f(u) - f(1))/(u-1) du/u ; beyond the support the
    // integrand is -f1/(u(u-1)) with closed-form integral
    if (b > 1.0 || f1 != 0.0) {
        double hi = std::max(b, 1.0 + 1e-6);
        auto g2 = [&](double u) {
            double d = u - 1.0;
            if (std::abs(d) < guard) return (c1 + c2 * d + c3 * d * d) / u;
            return (f.eval(u) - f1) / (d * u);
        };
        acc.add(-tanh_sinh(g2, 1.0, hi, opt).value);
        if (f1 != 0.0) acc.add(f1 * std::log(hi / (hi - 1.0))); // -(-f1 log(hi/(hi-1)))
    }
    // I3 = int_0^1 f(u) du
    if (a < 1.0)
        acc.add(-tanh_sinh([&](double u) { return f.eval(u); }, a, std::min(1.0, b), opt).value);
    // I4 = int_0^1 (u f(u) - f(1))/(1-u) du ; below the support the integrand
    // is -f1/(1-u)
    if (a < 1.0 || f1 != 0.0) {
        double lo = std::min(a, 1.0);
        auto g4 = [&](double u) {
            double d = u - 1.0;
            if (std::abs(d) < guard)
                return -((f1 + c1) + (c1 + c2) * d + (c2 + c3) * d * d);
            return (u * f.eval(u) - f1) / (1.0 - u);
        };
        acc.add(-tanh_sinh(g4, lo, 1.0, opt).value);
        if (f1 != 0.0 && lo < 1.0) acc.add(-f1 * std::log(1.0 - lo));
    }

    LocalTerm t;
    t.place = complex_place();
    t.route = Route::closed_form;
    t.value = acc.value();
    t.error_estimate = 1e-11;
    return t;
}

LocalTerm W_closed(const PlaceInfo& place, const TestFunction& f) {
    switch (place.kind) {
        case PlaceKind::split:
        case PlaceKind::inert: return W_unramified(place, f);
        case PlaceKind::ramified: return W_ramified(place, f);
        case PlaceKind::complex_place: return W_complex(f);
    }
    throw std::logic_error("W_closed: unreachable");
}

C contour_density(const PlaceInfo& place, C s) {
    if (place.is_finite()) {
        double q = static_cast<double>(place.norm);
        double lq = std::log(q);
        C qs1 = std::exp((s - 1.0) * lq);
        C qms = std::exp(-s * lq);
        C d = -lq * (qs1 / (1.0 - qs1) + qms / (1.0 - qms));
        if (place.kind == PlaceKind::ramified)
            d += std::log(static_cast<double>(place.different_norm));
        return d;
    }
    return -2.0 * kLog2Pi + digamma(s) + digamma(1.0 - s);
}

namespace {

// (1/pi) int_T^inf env(t) |rho_v| dt with |rho_v| <= dens_a + dens_b log t,
// using the envelope order k that minimizes the closed-form bound
double contour_tail(const std::vector<double>& mk, const PlaceInfo& place, double sigma,
                    double T) {
    double dens_a, dens_b = 0.0;
    if (place.is_finite()) {
        double q = static_cast<double>(place.norm);
        double qs1 = std::pow(q, sigma - 1.0), qms = std::pow(q, -sigma);
        dens_a = std::log(q) * (qs1 / (1.0 - qs1) + qms / (1.0 - qms));
        if (place.kind == PlaceKind::ramified)
            dens_a += std::log(static_cast<double>(place.different_norm));
    } else {
        dens_a = 2.0 * kLog2Pi + 2.0; // |psi(s)+psi(1-s)| <= 2 log t + O(1) on the strip
        dens_b = 2.0;
    }
    // k = 0 gives no decay, hence no finite tail bound
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 2; k < mk.size(); ++k) {
        double km1 = static_cast<double>(k) - 1.0;
        double t1k = std::pow(T, 1.0 - static_cast<double>(k));
        double bound = mk[k] * (dens_a * t1k / km1 +
                                dens_b * (t1k * std::log(T) / km1 + t1k / (km1 * km1)));
        best = std::min(best, bound);
    }
    return best / M_PI;
}

} // namespace

LocalTerm W_contour(const PlaceInfo& place, const TestFunction& f, double sigma, double T) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("W_contour: need sigma in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("W_contour: need T > 0");
    // panel length tied to the fastest Mellin oscillation exp(i t log x)
    double lw = std::max(std::abs(std::log(f.support_lo)), std::abs(std::log(f.support_hi)));
    double panel = std::min(1.5, M_PI / (2.0 * std::max(lw, 0.5)));
    int npan = static_cast<int>(T / panel) + 1;
    auto integrand = [&](double t) -> double {
        C s(sigma, t);
        return (mellin(f, s).value * contour_density(place, s)).real();
    };
    double value = gauss_legendre_panels(integrand, 0.0, T, npan) / M_PI;
    LocalTerm lt;
    lt.place = place;
    lt.route = Route::contour;
    lt.value = value;
    lt.error_estimate = contour_tail(mellin_envelope(f, sigma), place, sigma, T);
    return lt;
}

double c_factor(const PlaceInfo& place, double s) {
    if (!place.is_finite()) throw std::invalid_argument("c_factor: finite place required");
    if (!(std::abs(s) < 1.0)) throw std::invalid_argument("c_factor: need |s| < 1");
    RadialProfile units = profile_units(place);
    C v = riesz_convolve_padic(place, units, C(-s), 0);
    if (place.kind == PlaceKind::ramified)
        v *= std::pow(static_cast<double>(place.different_norm), -s);
    if (std::abs(v.imag()) > 1e-12)
        throw std::logic_error("c_factor: nonreal value");
    return v.real();
}

RouteValues all_routes(const PlaceInfo& place, const TestFunction& f, double sigma, double T,
                       double fd_h) {
    RouteValues rv;
    rv.closed = W_closed(place, f);
    rv.contour = W_contour(place, f, sigma, T);
    rv.fd.place = place;
    rv.fd.route = Route::finite_difference;
    rv.fd.value = generator_fd(place, f, fd_h);
    rv.fd.error_estimate = 1e-6;
    return rv;
}

} // namespace iqf
