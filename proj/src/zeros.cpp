#include "iqf/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iqf/kahan.hpp"
#include "iqf/special.hpp"

namespace iqf {

using C = std::complex<double>;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_envelope(C s) {
    if (s.real() < -1.0 - 1e-9 || s.real() > 2.0 + 1e-9 || std::abs(s.imag()) > 500.0)
        throw std::invalid_argument("l_value: outside the supported envelope "
                                    "(Re s in [-1,2], |Im s| <= 500)");
}

// (x^{1-s} - 1)/(s-1), stable at s = 1 (used to cancel the Hurwitz pole
// against sum chi(a) = 0)
C pole_part_regularized(double x, C s) {
    double L = std::log(x);
    C z = (1.0 - s) * L;
    C phi1; // (e^z - 1)/z
    if (std::abs(z) < 1e-4)
        phi1 = 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    else
        phi1 = (std::exp(z) - 1.0) / z;
    return -L * phi1; // (x^{1-s}-1)/(s-1) = -L * (e^z-1)/z
}

const std::vector<int>& chi_table(long long conductor, long long D) {
    static std::map<long long, std::vector<int>> cache;
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    std::vector<int> tab(static_cast<std::size_t>(conductor), 0);
    for (long long n = 1; n < conductor; ++n) tab[static_cast<std::size_t>(n)] = kronecker(D, n);
    return cache.emplace(D, std::move(tab)).first->second;
}

} // namespace

std::string LFunctionId::name() const {
    std::ostringstream os;
    if (kind == LKind::riemann_zeta)
        os << "zeta";
    else
        os << "dirichlet_" << conductor;
    return os.str();
}

LFunctionId zeta_id() { return {LKind::riemann_zeta, 1}; }

LFunctionId dirichlet_id(long long D) {
    if (D >= 0) throw std::invalid_argument("dirichlet_id: D must be a negative discriminant");
    return {LKind::dirichlet, -D};
}

C hurwitz_zeta(C s, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("hurwitz_zeta: alpha in (0,1]");
    if (std::abs(s - C(1.0)) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    check_envelope(s);
    const int N = std::max(28, static_cast<int>(0.9 * std::abs(s.imag())) + 8);
    const int K = 12;
    KahanComplex acc;
    for (int n = 0; n < N; ++n) acc.add(std::exp(-s * std::log(n + alpha)));
    const double x = N + alpha;
    const C lx = std::log(x);
    acc.add(std::exp((1.0 - s) * lx) / (s - 1.0));
    acc.add(0.5 * std::exp(-s * lx));
    // correction terms B_{2k}/(2k)! * (s)_{2k-1} * x^{-s-2k+1}
    C rising = s; // (s)_1
    double fact = 1.0;
    for (int k = 1; k <= K; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        acc.add(kBernoulli2k[k - 1] / fact * rising * std::exp((-s - (2.0 * k - 1.0)) * lx));
        rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    }
    return acc.value();
}

C l_value(const LFunctionId& id, C s) {
    check_envelope(s);
    if (id.kind == LKind::riemann_zeta) {
        if (std::abs(s - C(1.0)) < 1e-12) throw std::domain_error("l_value: zeta pole at s = 1");
        return hurwitz_zeta(s, 1.0);
    }
    const long long m = id.conductor;
    const long long D = -m;
    const auto& chi = chi_table(m, D);
    // L(s,chi) = m^{-s} sum_a chi(a) zeta(s, a/m); the (N+a/m)^{1-s}/(s-1)
    // pole terms are replaced by their chi-weighted regularization.
    const int N = std::max(28, static_cast<int>(0.9 * std::abs(s.imag())) + 8);
    const int K = 12;
    KahanComplex acc;
    for (long long a = 1; a < m; ++a) {
        if (chi[static_cast<std::size_t>(a)] == 0) continue;
        const double alpha = static_cast<double>(a) / m;
        const double w = chi[static_cast<std::size_t>(a)];
        KahanComplex ha;
        for (int n = 0; n < N; ++n) ha.add(std::exp(-s * std::log(n + alpha)));
        const double x = N + alpha;
        const C lx = std::log(x);
        ha.add(pole_part_regularized(x, s));
        ha.add(0.5 * std::exp(-s * lx));
        C rising = s;
        double fact = 1.0;
        for (int k = 1; k <= K; ++k) {
            fact *= (2.0 * k - 1.0) * (2.0 * k);
            ha.add(kBernoulli2k[k - 1] / fact * rising *
                   std::exp((-s - (2.0 * k - 1.0)) * lx));
            rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        }
        acc.add(w * ha.value());
    }
    return std::exp(-s * std::log(static_cast<double>(m))) * acc.value();
}

C completed(const LFunctionId& id, C s) {
    if (id.kind == LKind::riemann_zeta) {
        C arch = std::exp(-(s / 2.0) * std::log(M_PI) + log_gamma(s / 2.0));
        return arch * l_value(id, s);
    }
    const double m = static_cast<double>(id.conductor);
    C arch = std::exp((s + 1.0) / 2.0 * std::log(m / M_PI) + log_gamma((s + 1.0) / 2.0));
    return arch * l_value(id, s);
}

double hardy(const LFunctionId& id, double t) {
    return completed(id, C(0.5, t)).real();
}

double zero_count_estimate(const LFunctionId& id, double T) {
    if (!(T >= 5.0)) throw std::invalid_argument("zero_count_estimate: need T >= 5");
    if (id.kind == LKind::riemann_zeta) {
        double theta = log_gamma(C(0.25, T / 2.0)).imag() - (T / 2.0) * std::log(M_PI);
        return theta / M_PI + 1.0;
    }
    double m = static_cast<double>(id.conductor);
    double theta = log_gamma(C(0.75, T / 2.0)).imag() + (T / 2.0) * std::log(m / M_PI);
    return theta / M_PI;
}

double zero_density(const LFunctionId& id, double T) {
    double t = std::max(T, 8.0);
    double qeff = id.kind == LKind::riemann_zeta ? 1.0 : static_cast<double>(id.conductor);
    return std::max(0.05, std::log(qeff * t / kTwoPi) / kTwoPi);
}

std::optional<long> rectangle_zero_count(const LFunctionId& id, double t_lo, double T) {
    // Phase tracking around the rectangle [-0.5, 1.5] x [t_lo, T]. The edges
    // are pre-subdivided below the a-priori phase-speed bound (gamma-factor
    // log-derivative plus a Dirichlet-series margin), so a single step can
    // never wrap by 2 pi unnoticed; the adaptive refinement then only has to
    // deal with near-zero passages.
    const double qeff = id.kind == LKind::riemann_zeta ? 1.0 : static_cast<double>(id.conductor);
    const double speed =
        0.5 * std::log(qeff * (T + 4.0) * (T + 4.0) / (4.0 * M_PI * M_PI)) + 4.0;
    const double max_step = (M_PI / 3.0) / speed;

    const C corners[5] = {C(1.5, t_lo), C(1.5, T), C(-0.5, T), C(-0.5, t_lo), C(1.5, t_lo)};
    double total = 0.0;
    long evals = 0;
    const long budget = 2000000;
    for (int e = 0; e < 4; ++e) {
        C s0 = corners[e], s1 = corners[e + 1];
        int nseg = std::max(1, static_cast<int>(std::ceil(std::abs(s1 - s0) / max_step)));
        struct Seg {
            C s0, s1, v0, v1;
            int depth;
        };
        std::vector<Seg> stack;
        C prev_s = s0;
        C prev_v = completed(id, s0);
        for (int i = 1; i <= nseg; ++i) {
            C si = s0 + (s1 - s0) * (static_cast<double>(i) / nseg);
            C vi = completed(id, si);
            stack.push_back({prev_s, si, prev_v, vi, 0});
            prev_s = si;
            prev_v = vi;
        }
        while (!stack.empty()) {
            Seg seg = stack.back();
            stack.pop_back();
            double dphi = std::arg(seg.v1 / seg.v0);
            double mag = std::abs(seg.v1 / seg.v0);
            if (std::abs(dphi) < M_PI / 2 && mag > 0.25 && mag < 4.0) {
                total += dphi;
                continue;
            }
            if (seg.depth > 48 || ++evals > budget) return std::nullopt;
            C mid = 0.5 * (seg.s0 + seg.s1);
            C vm = completed(id, mid);
            if (std::abs(vm) == 0.0) return std::nullopt;
            stack.push_back({mid, seg.s1, vm, seg.v1, seg.depth + 1});
            stack.push_back({seg.s0, mid, seg.v0, vm, seg.depth + 1});
        }
    }
    double winding = total / kTwoPi;
    long n = std::lround(winding);
    if (std::abs(winding - static_cast<double>(n)) > 0.25) return std::nullopt;
    return n;
}

namespace {

double bisect_ordinate(const LFunctionId& id, double lo, double hi, double f_lo) {
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = hardy(id, mid);
        if (fm == 0.0) return mid;
        if ((f_lo < 0) != (fm < 0))
            hi = mid;
        else {
            lo = mid;
            f_lo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_ordinates(const LFunctionId& id, double T, double refine) {
    std::vector<double> zs;
    double t = 0.02;
    double h0 = hardy(id, t);
    while (t < T) {
        double step = std::clamp(0.25 / zero_density(id, t) * refine, 0.02, 2.0);
        double t2 = std::min(t + step, T);
        double h1 = hardy(id, t2);
        if ((h0 < 0) != (h1 < 0)) zs.push_back(bisect_ordinate(id, t, t2, h0));
        t = t2;
        h0 = h1;
        if (t >= T) break;
    }
    return zs;
}

} // namespace

ZeroList find_zeros(const LFunctionId& id, double T) {
    if (!(T > 0.0 && T <= 500.0)) throw std::invalid_argument("find_zeros: need 0 < T <= 500");
    ZeroList list;
    list.id = id;
    list.height = T;
    list.precision = 1e-9;
    list.ordinates = scan_ordinates(id, T, 1.0);
    list.certified = false;
    if (certify(list)) return list;
    // one denser rescan before reporting an uncertified list
    std::vector<double> dense = scan_ordinates(id, T, 0.4);
    if (dense.size() > list.ordinates.size()) list.ordinates = dense;
    certify(list);
    return list;
}

bool certify(ZeroList& list) {
    const LFunctionId& id = list.id;
    const double T = list.height;
    list.certified = false;
    // every ordinate must sit on a small completed-function value
    for (double g : list.ordinates) {
        if (!(g > 0.0 && g <= T)) return false;
        if (std::abs(completed(id, C(0.5, g))) > 1e-8) return false;
    }
    for (std::size_t i = 1; i < list.ordinates.size(); ++i)
        if (!(list.ordinates[i] > list.ordinates[i - 1])) return false;
    // rectangle bottom: zeta's completed function has poles at s = 0, 1, so
    // keep the bottom edge at t = 1 and require no ordinate below it (the
    // first zeta zero is far above); dirichlet Lambda is entire.
    double t_lo = id.kind == LKind::riemann_zeta ? 1.0 : 0.0;
    for (double g : list.ordinates)
        if (g <= t_lo) return false;
    auto count = rectangle_zero_count(id, t_lo, T);
    if (!count) {
        // a zero ordinate too close to the top edge stalls the tracker; nudge
        for (double bump : {0.05, -0.05, 0.11}) {
            double T2 = T + bump;
            if (std::none_of(list.ordinates.begin(), list.ordinates.end(),
                             [&](double g) { return g > std::min(T, T2) && g <= std::max(T, T2); }))
                count = rectangle_zero_count(id, t_lo, T2);
            if (count) break;
        }
    }
    if (!count) return false;
    list.certified = (*count == static_cast<long>(list.ordinates.size()));
    return list.certified;
}

} // namespace iqf
