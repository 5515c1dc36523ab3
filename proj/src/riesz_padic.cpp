#include "iqf/riesz.hpp"

#include <cmath>
#include <stdexcept>

#include "iqf/kahan.hpp"

namespace iqf {

using C = std::complex<double>;

namespace {

void require_finite(const PlaceInfo& place, const char* who) {
    if (!place.is_finite()) throw std::invalid_argument(std::string(who) + ": finite place required");
}

// q^z for real positive q; the real-axis case goes through std::pow so that
// identities like 1 - q^{-1} == 1 - 1/q hold to the last ulp (the delta
// identity at s = 0 is exact because of this)
C qpow(double q, C z) {
    if (z.imag() == 0.0) return C(std::pow(q, z.real()), 0.0);
    return std::exp(z * std::log(q));
}

struct PlaceConsts {
    double q;
    double rootNd;       // sqrt(N(d_v))
    double inv_rootNd;
    explicit PlaceConsts(const PlaceInfo& v)
        : q(static_cast<double>(v.norm)),
          rootNd(std::sqrt(static_cast<double>(v.different_norm))),
          inv_rootNd(1.0 / rootNd) {}
};

} // namespace

RadialProfile profile_unit_ball(const PlaceInfo& place) {
    require_finite(place, "profile_unit_ball");
    RadialProfile p;
    p.place = place;
    p.n_min = 0;
    p.values = {1.0};
    p.value_at_zero = 1.0;
    return p;
}

RadialProfile profile_units(const PlaceInfo& place) {
    require_finite(place, "profile_units");
    RadialProfile p;
    p.place = place;
    p.n_min = 0;
    p.values = {1.0};
    p.value_at_zero = 0.0;
    return p;
}

RadialProfile profile_from_function(const PlaceInfo& place, const TestFunction& f) {
    require_finite(place, "profile_from_function");
    RadialProfile p;
    p.place = place;
    p.value_at_zero = 0.0;
    const double lq = std::log(static_cast<double>(place.norm));
    // levels n with q^-n in [a, b]:  -log b / log q <= n <= -log a / log q
    int lo = static_cast<int>(std::ceil(-std::log(f.support_hi) / lq - 1e-12));
    int hi = static_cast<int>(std::floor(-std::log(f.support_lo) / lq + 1e-12));
    if (lo > hi) {
        p.n_min = 0;
        p.values.clear();
        p.value_at_zero = 0.0;
        // empty profile: represent as all-zero window at level 0
        p.values = {0.0};
        return p;
    }
    p.n_min = lo;
    for (int n = lo; n <= hi; ++n)
        p.values.push_back(f.eval(std::pow(static_cast<double>(place.norm), -n)));
    return p;
}

double ball_measure(const PlaceInfo& place, long n) {
    require_finite(place, "ball_measure");
    PlaceConsts pc(place);
    return pc.inv_rootNd * std::pow(pc.q, static_cast<double>(-n));
}

double shell_measure(const PlaceInfo& place, long n) {
    PlaceConsts pc(place);
    return pc.inv_rootNd * std::pow(pc.q, static_cast<double>(-n)) * (1.0 - 1.0 / pc.q);
}

double shell_intersection_measure(const PlaceInfo& place, long m, long k, bool allow_complement) {
    require_finite(place, "shell_intersection_measure");
    if (k > m) {
        // {x : |x| = q^-m, |x+y| <= q^-k} with |y| = q^-m is the translate of
        // the ball of radius q^-k by -y; since q^-k < q^-m = |y|, every point
        // of -y + B_k keeps absolute value q^-m, so the translate lies inside
        // the sphere and the measure is the full ball measure.
        return ball_measure(place, k);
    }
    if (!allow_complement)
        throw std::invalid_argument("shell_intersection_measure: need k > m");
    if (k == m) return shell_measure(place, m);
    return 0.0;
}

PadicRadialFn::PadicRadialFn(std::function<C(long)> fn, long lo_start, C lo_ratio, long hi_start,
                             C hi_const)
    : fn_(std::move(fn)),
      lo_start_(lo_start),
      lo_ratio_(lo_ratio),
      hi_start_(hi_start),
      hi_const_(hi_const) {}

PadicRadialFn PadicRadialFn::from_profile(const RadialProfile& p) {
    RadialProfile copy = p;
    return PadicRadialFn([copy](long n) { return C(copy.at(n), 0.0); }, p.n_min, C(0.0),
                         p.n_max(), C(p.value_at_zero, 0.0));
}

C PadicRadialFn::at(long n) const {
    if (n < lo_start_) {
        if (lo_ratio_ == C(0.0)) return 0.0;
        return at(lo_start_) * std::pow(lo_ratio_, static_cast<double>(lo_start_ - n));
    }
    if (n > hi_start_) return hi_const_;
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    C v = fn_(n);
    memo_.emplace(n, v);
    return v;
}

namespace {

// critical-shell integral minus the centered value:
//   S_m(g) - g(m) mu_m = Nd^{-1/2} (1-1/q) sum_{k>m} (g(k) - g(m)) q^{-k}
C critical_shell(const PlaceConsts& pc, const PadicRadialFn& g, long m) {
    C gm = g.at(m);
    long H = std::max(g.hi_start(), m);
    KahanComplex acc;
    for (long k = m + 1; k <= H; ++k)
        acc.add((g.at(k) - gm) * std::pow(pc.q, static_cast<double>(-k)));
    // constant tail beyond H
    acc.add((g.hi_const() - gm) * std::pow(pc.q, static_cast<double>(-(H + 1))) /
            (1.0 - 1.0 / pc.q));
    return pc.inv_rootNd * (1.0 - 1.0 / pc.q) * acc.value();
}

} // namespace

C riesz_convolve_padic(const PlaceInfo& place, const PadicRadialFn& g, C s, long m) {
    require_finite(place, "riesz_convolve_padic");
    PlaceConsts pc(place);
    if (s.real() >= 1.0 - 1e-12)
        throw std::invalid_argument("riesz_convolve_padic: need Re s < 1");
    C qs1 = qpow(pc.q, s - 1.0);
    if (std::abs(1.0 - qs1) < 1e-12)
        throw std::domain_error("riesz_convolve_padic: pole at s = 1 (mod 2 pi i/log q)");
    const double Nd = static_cast<double>(place.different_norm);
    C A = qpow(Nd, -s) * (1.0 - 1.0 / pc.q) / (1.0 - qs1);
    C B = qpow(Nd, 0.5 - s) * (1.0 - qpow(pc.q, -s)) / (1.0 - qs1);
    C gm = g.at(m);

    auto mu = [&](long n) { return shell_measure(place, n); };
    auto qp = [&](C z) { return qpow(pc.q, z); };

    // I1 = sum_{n >= 0} q^{-n(s-1)} [S_n - g(m) mu_n]; only n in [0, m] survive
    KahanComplex I1;
    if (m >= 0) {
        for (long n = 0; n < m; ++n)
            I1.add(qp(-static_cast<double>(n) * (s - 1.0)) * (g.at(n) - gm) * mu(n));
        I1.add(qp(-static_cast<double>(m) * (s - 1.0)) * critical_shell(pc, g, m));
    }

    // I2 = sum_{n <= -1} q^{-n(s-1)} S_n
    KahanComplex I2;
    if (m >= 0) {
        // all n <= -1 are below m: S_n = g(n) mu_n; finite part + geometric tail
        for (long n = -1; n >= g.lo_start(); --n)
            I2.add(qp(-static_cast<double>(n) * (s - 1.0)) * g.at(n) * mu(n));
        if (g.lo_ratio() != C(0.0)) {
            long n0 = std::min(-1L, g.lo_start() - 1);
            C t0 = qp(-static_cast<double>(n0) * (s - 1.0)) * g.at(n0) * mu(n0);
            C ratio = qpow(pc.q, s) * g.lo_ratio(); // T_{n-1} / T_n
            if (std::abs(ratio) >= 1.0 - 1e-12)
                throw std::domain_error("riesz_convolve_padic: divergent far tail");
            I2.add(t0 / (1.0 - ratio));
        }
    } else {
        for (long n = m + 1; n <= -1; ++n)
            I2.add(qp(-static_cast<double>(n) * (s - 1.0)) * gm * mu(n));
        I2.add(qp(-static_cast<double>(m) * (s - 1.0)) *
               (critical_shell(pc, g, m) + gm * mu(m)));
        for (long n = m - 1; n >= g.lo_start(); --n)
            I2.add(qp(-static_cast<double>(n) * (s - 1.0)) * g.at(n) * mu(n));
        if (g.lo_ratio() != C(0.0)) {
            long n0 = std::min(m - 1, g.lo_start() - 1);
            C t0 = qp(-static_cast<double>(n0) * (s - 1.0)) * g.at(n0) * mu(n0);
            C ratio = qpow(pc.q, s) * g.lo_ratio();
            if (std::abs(ratio) >= 1.0 - 1e-12)
                throw std::domain_error("riesz_convolve_padic: divergent far tail");
            I2.add(t0 / (1.0 - ratio));
        }
    }
    return A * gm + B * (I1.value() + I2.value());
}

C riesz_convolve_padic(const PlaceInfo& place, const RadialProfile& phi, C s, long y_level) {
    return riesz_convolve_padic(place, PadicRadialFn::from_profile(phi), s, y_level);
}

C riesz_convolve_padic_direct(const PlaceInfo& place, const RadialProfile& phi, C s,
                              long m) {
    require_finite(place, "riesz_convolve_padic_direct");
    if (!(s.real() > 0.0 && s.real() < 1.0))
        throw std::invalid_argument("riesz_convolve_padic_direct: need 0 < Re s < 1");
    PlaceConsts pc(place);
    const double Nd = static_cast<double>(place.different_norm);
    C qs1 = qpow(pc.q, s - 1.0);
    C B = qpow(Nd, 0.5 - s) * (1.0 - qpow(pc.q, -s)) / (1.0 - qs1);
    auto qp = [&](C z) { return qpow(pc.q, z); };
    PadicRadialFn g = PadicRadialFn::from_profile(phi);

    KahanComplex T;
    // shells inside |y| (n > m): g(y+x) = g(m); geometric in q^{-ns}
    C z = qpow(pc.q, -s);
    T.add(g.at(m) * pc.inv_rootNd * (1.0 - 1.0 / pc.q) * std::pow(z, static_cast<double>(m + 1)) /
          (1.0 - z));
    // critical shell n = m
    C S_m = critical_shell(pc, g, m) + g.at(m) * shell_measure(place, m);
    T.add(qp(-static_cast<double>(m) * (s - 1.0)) * S_m);
    // shells outside |y| (n < m): g(y+x) = g(n), finitely supported below
    for (long n = phi.n_min; n < m; ++n)
        T.add(qp(-static_cast<double>(n) * (s - 1.0)) * g.at(n) * shell_measure(place, n));
    return B * T.value();
}

PadicRadialFn riesz_convolved_fn(const PlaceInfo& place, const RadialProfile& phi, C s,
                                 int hi_pad) {
    PadicRadialFn base = PadicRadialFn::from_profile(phi);
    PlaceInfo pl = place;
    auto fn = [pl, base, s](long n) { return riesz_convolve_padic(pl, base, s, n); };
    long lo = phi.n_min - 1;
    long hi = phi.n_max() + hi_pad;
    C lo_ratio = qpow(static_cast<double>(place.norm), s - 1.0);
    C hi_const = riesz_convolve_padic(place, base, s, hi);
    return PadicRadialFn(fn, lo, lo_ratio, hi, hi_const);
}

double semigroup_defect_padic(const PlaceInfo& place, const RadialProfile& phi, C s, C s_prime,
                              const std::vector<long>& sample_levels) {
    if ((s + s_prime).real() >= 1.0)
        throw std::invalid_argument("semigroup_defect_padic: need Re(s+s') < 1");
    PadicRadialFn inner = riesz_convolved_fn(place, phi, s);
    PadicRadialFn base = PadicRadialFn::from_profile(phi);
    double worst = 0.0;
    for (long m : sample_levels) {
        C lhs = riesz_convolve_padic(place, inner, s_prime, m);
        C rhs = riesz_convolve_padic(place, base, s + s_prime, m);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double generator_fd(const PlaceInfo& place, const TestFunction& f, double h) {
    if (!(h > 0.0 && h <= 0.1))
        throw std::invalid_argument("generator_fd: need h in (0, 0.1]");
    auto value = [&](double hh) -> double {
        if (place.is_finite()) {
            RadialProfile phi = profile_from_function(place, f);
            C lo = riesz_convolve_padic(place, phi, C(-hh), 0);
            C hi = riesz_convolve_padic(place, phi, C(hh), 0);
            return (lo.real() - hi.real()) / (2.0 * hh);
        }
        C lo = riesz_convolve_complex(f, C(-hh), 1.0);
        C hi = riesz_convolve_complex(f, C(hh), 1.0);
        return (lo.real() - hi.real()) / (2.0 * hh);
    };
    double d_h = value(h);
    double d_h2 = value(h / 2.0);
    return (4.0 * d_h2 - d_h) / 3.0;
}

} // namespace iqf
