// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <map>
#include <vector>

#include "iqf/explicit_formula.hpp"
#include "iqf/kahan.hpp"
#include "iqf/localterms.hpp"
#include "iqf/quadfield.hpp"
#include "iqf/riesz.hpp"
#include "iqf/special.hpp"
#include "iqf/testfn.hpp"
#include "iqf/zeros.hpp"

using namespace iqf;
using C = std::complex<double>;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename Fn>
void run_criterion(int criterion, const std::string& name, Fn&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(criterion, name, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    auto wall0 = std::chrono::steady_clock::now();

    // ---- shared zero caches to height 120 ----
    std::map<long long, ZeroList> chi_lists;
    ZeroList zeta_list;
    {
        auto t0 = std::chrono::steady_clock::now();
        zeta_list = find_zeros(zeta_id(), 120.0);
        for (long long D : {-3LL, -4LL, -7LL, -8LL, -11LL})
            chi_lists.emplace(D, find_zeros(dirichlet_id(D), 120.0));
        std::printf("# zero caches to T=120 built in %.1f s (zeta: %zu ordinates)\n",
                    seconds_since(t0), zeta_list.ordinates.size());
    }

    // ---- criterion 1: explicit-formula verification ----
    run_criterion(1, "explicit", [&] {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        const std::vector<std::pair<double, double>> fns{{2.0, 0.7}, {3.0, 0.5}};
        for (long long d : {-3LL, -1LL, -7LL, -2LL, -11LL}) {
            FieldSpec field = discriminant(d);
            for (auto [c, r] : fns) {
                TestFunction f = make_log_bump(c, r);
                VerificationReport rep =
                    verify(field, f, 120.0, 1e-4, zeta_list, chi_lists.at(field.D));
                char buf[160];
                std::snprintf(buf, sizeof buf, "D=%lld bump(%g,%g): |disc|=%.2e tail=%.2e; ",
                              field.D, c, r, std::abs(rep.discrepancy), rep.tail_estimate);
                detail += buf;
                if (!rep.pass) ok = false;
            }
        }
        char tail[64];
        std::snprintf(tail, sizeof tail, "runtime %.1f s", seconds_since(t0));
        report(1, "explicit formula, 5 fields x 2 functions, T=120, tol 1e-4", ok,
               std::string(tail));
        if (!ok) std::printf("  %s\n", detail.c_str());
    });

    // ---- criterion 2: three-route local-term agreement ----
    run_criterion(2, "routes", [&] {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<TestFunction> battery{make_log_bump(1.0, 0.9),  make_log_bump(2.0, 1.0),
                                          make_log_bump(2.5, 1.0),  make_log_bump(3.0, 0.85),
                                          make_log_bump(5.0, 1.0),  make_log_bump(9.0, 0.8)};
        std::vector<PlaceInfo> places{splitting_type(discriminant(-7), 2),  // split q=2
                                      splitting_type(discriminant(-1), 3),  // inert q=9
                                      splitting_type(discriminant(-1), 2),  // ramified Nd=4
                                      splitting_type(discriminant(-3), 3),  // ramified Nd=3
                                      complex_place()};
        bool ok = true;
        double worst_contour = 0.0, worst_fd = 0.0;
        for (const PlaceInfo& v : places) {
            for (const TestFunction& f : battery) {
                RouteValues rv = all_routes(v, f, 0.5, 200.0);
                double dc = std::abs(rv.closed.value - rv.contour.value);
                double df = std::abs(rv.closed.value - rv.fd.value);
                worst_contour = std::max(worst_contour, dc);
                worst_fd = std::max(worst_fd, df);
                if (dc > 1e-6 || df > 1e-5) ok = false;
            }
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "max |closed-contour|=%.2e (tol 1e-6), max |closed-fd|=%.2e (tol 1e-5), "
                      "%.1f s",
                      worst_contour, worst_fd, seconds_since(t0));
        report(2, "three-route agreement, 6-function battery, all place types", ok, buf);
    });

    // ---- criterion 3: semigroup property ----
    run_criterion(3, "semigroup", [&] {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        double worst_padic = 0.0;
        std::vector<long> samples{-2, -1, 0, 1, 3};
        for (const PlaceInfo& v :
             {splitting_type(discriminant(-7), 2), splitting_type(discriminant(-1), 3),
              splitting_type(discriminant(-1), 2)}) {
            for (const RadialProfile& phi : {profile_unit_ball(v), profile_units(v)}) {
                for (C s : {C(0.2), C(-0.3), C(0.3, 0.4), C(0.45)}) {
                    for (C sp : {C(0.3), C(0.2), C(0.25, -0.2)}) {
                        if ((s + sp).real() >= 1.0) continue;
                        worst_padic =
                            std::max(worst_padic, semigroup_defect_padic(v, phi, s, sp, samples));
                    }
                }
            }
        }
        if (worst_padic > 1e-12) ok = false;
        double cx = semigroup_defect_complex(make_log_bump(1.0, 0.8), 0.2, 0.2,
                                             {0.25, 0.5, 1.0, 2.0, 4.0});
        if (cx > 1e-6) ok = false;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "p-adic defect %.2e (tol 1e-12), complex defect %.2e at 5 radii "
                      "(tol 1e-6), %.1f s",
                      worst_padic, cx, seconds_since(t0));
        report(3, "semigroup property", ok, buf);
    });

    // ---- criterion 4: delta identity ----
    run_criterion(4, "delta", [&] {
        bool ok = true;
        for (const PlaceInfo& v :
             {splitting_type(discriminant(-7), 2), splitting_type(discriminant(-1), 3),
              splitting_type(discriminant(-1), 2), splitting_type(discriminant(-3), 3)}) {
            for (const RadialProfile& phi : {profile_unit_ball(v), profile_units(v)}) {
                for (long m : {-3L, -1L, 0L, 2L, 6L}) {
                    C got = riesz_convolve_padic(v, phi, C(0.0), m);
                    if (got != C(phi.at(m))) ok = false; // exact
                }
            }
        }
        double worst = 0.0;
        TestFunction f = make_log_bump(2.0, 0.5);
        for (double y : {0.5, 1.0, 2.0, 3.5}) {
            worst = std::max(worst, std::abs(riesz_convolve_complex(f, C(0.0), y) - C(f(y))));
        }
        if (worst > 1e-8) ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "finite places exact, complex deviation %.2e (tol 1e-8)",
                      worst);
        report(4, "delta identity R^0 * phi = phi", ok, buf);
    });

    // ---- criterion 5: measure / local zeta consistency ----
    run_criterion(5, "zeta-table", [&] {
        bool ok = true;
        double worst = 0.0;
        const C svals[10] = {C(0.5),      C(1.0),       C(2.0),      C(0.3, 1.7), C(1.2, -0.4),
                             C(0.75),     C(0.9, 3.0),  C(1.5, 0.5), C(2.0, -2.0), C(0.25, 0.1)};
        for (long long d : {-1LL, -2LL, -3LL, -7LL, -11LL}) {
            FieldSpec field = discriminant(d);
            long long prod = 1;
            for (long long p : primes_up_to(std::llabs(field.D) + 1)) {
                PlaceInfo v = splitting_type(field, p);
                if (v.kind != PlaceKind::ramified) continue;
                prod *= v.different_norm;
                // shell-calculus evaluation of int phi |x|^s dx* per place
                for (const C& s : svals) {
                    double q = static_cast<double>(v.norm);
                    double rNd = std::sqrt(static_cast<double>(v.different_norm));
                    KahanComplex acc;
                    for (long n = 0; n <= 64; ++n)
                        acc.add(std::exp(-s * static_cast<double>(n) * std::log(q)) / rNd);
                    C got = acc.value() + std::exp(-s * 65.0 * std::log(q)) / rNd /
                                              (1.0 - std::exp(-s * std::log(q)));
                    C want = (1.0 / rNd) / (1.0 - std::exp(-s * std::log(q)));
                    worst = std::max(worst, std::abs(got - want) / std::abs(want));
                }
            }
            if (prod != std::llabs(field.D)) ok = false;
            double logsum = 0.0;
            for (const PlaceInfo& v : places_up_to(field, std::llabs(field.D) + 1))
                if (v.kind == PlaceKind::ramified)
                    logsum += std::log(static_cast<double>(v.different_norm));
            if (std::abs(logsum - std::log(static_cast<double>(std::llabs(field.D)))) > 1e-12)
                ok = false;
        }
        // unramified/split rows and the complex row of the local zeta table
        for (long long q : {2LL, 9LL, 5LL}) {
            PlaceInfo v;
            v.kind = q == 9 ? PlaceKind::inert : PlaceKind::split;
            v.p = q == 9 ? 3 : q;
            v.norm = q;
            v.different_norm = 1;
            for (const C& s : svals) {
                double qq = static_cast<double>(q);
                KahanComplex acc;
                for (long n = 0; n <= 64; ++n)
                    acc.add(std::exp(-s * static_cast<double>(n) * std::log(qq)));
                C got = acc.value() +
                        std::exp(-s * 65.0 * std::log(qq)) / (1.0 - std::exp(-s * std::log(qq)));
                C want = 1.0 / (1.0 - std::exp(-s * std::log(qq)));
                worst = std::max(worst, std::abs(got - want) / std::abs(want));
            }
        }
        {
            // complex row: 2pi int_0^inf e^{-2pi t} t^{s-1} dt = (2pi)^{1-s} Gamma(s);
            // the t^{s-1} mass at 0 is peeled off in closed form
            for (double s : {0.5, 1.0, 1.7}) {
                QuadOptions opt{1e-14, 12, true};
                double got =
                    1.0 / s +
                    tanh_sinh([&](double t) { return (std::exp(-2.0 * M_PI * t) - 1.0) *
                                                     std::pow(t, s - 1.0); },
                              0.0, 1.0, opt)
                        .value +
                    tanh_sinh([&](double t) { return std::exp(-2.0 * M_PI * t) *
                                                     std::pow(t, s - 1.0); },
                              1.0, 40.0, opt)
                        .value;
                got *= 2.0 * M_PI;
                double want = std::pow(2.0 * M_PI, 1.0 - s) * gamma(C(s)).real();
                worst = std::max(worst, std::abs(got - want) / std::abs(want));
            }
        }
        if (worst > 1e-12) ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "worst zeta-table deviation %.2e (tol 1e-12)", worst);
        report(5, "measure and local zeta consistency", ok, buf);
    });

    // ---- criterion 6: rescaling constants ----
    run_criterion(6, "c-factor", [&] {
        bool ok = true;
        double worst_dev = 0.0;
        for (const PlaceInfo& v :
             {splitting_type(discriminant(-7), 2), splitting_type(discriminant(-1), 3),
              splitting_type(discriminant(-1), 2), splitting_type(discriminant(-3), 3),
              splitting_type(discriminant(-11), 11)}) {
            if (c_factor(v, 0.0) != 1.0) ok = false; // exact
            double prev_ratio = 0.0;
            double prev_gap = 1e9;
            for (double h : {0.02, 0.01, 0.005}) {
                double ratio = (c_factor(v, h) - 1.0) / (h * h);
                if (std::abs(ratio) > 10.0) ok = false; // boundedness
                if (prev_ratio != 0.0) {
                    double gap = std::abs(ratio - prev_ratio);
                    if (gap > prev_gap * 0.6 + 1e-9) ok = false; // stabilizing
                    prev_gap = gap;
                    worst_dev = std::max(worst_dev, gap);
                }
                prev_ratio = ratio;
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "c(0)=1 exact; (c(h)-1)/h^2 ratio drift %.2e", worst_dev);
        report(6, "rescaling constants c_v^s = 1 + O(s^2)", ok, buf);
    });

    // ---- criterion 7: zero machinery ----
    run_criterion(7, "zeros", [&] {
        bool ok = true;
        std::string why;
        if (!zeta_list.certified) {
            ok = false;
            why += "zeta list uncertified; ";
        }
        for (auto& [D, list] : chi_lists)
            if (!list.certified) {
                ok = false;
                why += list.id.name() + " uncertified; ";
            }
        double worst_zero = 0.0, worst_fe = 0.0;
        auto check_list = [&](const ZeroList& list) {
            for (double g : list.ordinates)
                worst_zero =
                    std::max(worst_zero, std::abs(completed(list.id, C(0.5, g))));
            for (C s : {C(0.3, 5.0), C(0.7, 21.0), C(0.1, 44.0), C(0.45, 87.0)}) {
                C a = completed(list.id, s), b = completed(list.id, 1.0 - s);
                worst_fe = std::max(worst_fe, std::abs(a - b));
            }
        };
        check_list(zeta_list);
        for (auto& [D, list] : chi_lists) check_list(list);
        if (worst_zero > 1e-8) ok = false;
        if (worst_fe > 1e-10) ok = false;
        double l1 = l_value(dirichlet_id(-4), C(1.0)).real();
        if (std::abs(l1 - M_PI / 4.0) > 1e-10) ok = false;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "max|Lambda(1/2+i g)|=%.1e (tol 1e-8), FE residual %.1e (tol 1e-10), "
                      "|L(1,chi_-4)-pi/4|=%.1e %s",
                      worst_zero, worst_fe, std::abs(l1 - M_PI / 4.0), why.c_str());
        report(7, "zero machinery certified to T=120 for zeta and |D| <= 11", ok, buf);
    });

    // ---- criterion 8: determinism ----
    run_criterion(8, "determinism", [&] {
        FieldSpec field = discriminant(-1);
        TestFunction f = make_log_bump(2.0, 0.7);
        std::string a =
            report_to_json(verify(field, f, 120.0, 1e-4, zeta_list, chi_lists.at(-4)));
        std::string b =
            report_to_json(verify(field, f, 120.0, 1e-4, zeta_list, chi_lists.at(-4)));
        bool ok = (a == b) && !a.empty();
        report(8, "repeated verify with fixed caches is byte-identical", ok,
               ok ? "library route; the CLI route is covered by the cli_determinism test" : "");
    });

    std::printf("# total wall time %.1f s\n", seconds_since(wall0));
    return failures;
}
