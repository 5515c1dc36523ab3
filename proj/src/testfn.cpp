#include "iqf/testfn.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "iqf/kahan.hpp"

namespace iqf {

double TestFunction::derivative_at(double x, int k) const {
    if (k == 0) return eval(x);
    if (x <= support_lo || x >= support_hi) return 0.0;
    if (taylor_x) return taylor_x(x).derivative(k);
    // central differences, modest accuracy; bump functions carry Taylor data
    double h = 1e-3 * std::max(1.0, std::abs(x));
    if (k == 1) {
        double d1 = (eval(x + h) - eval(x - h)) / (2 * h);
        double d2 = (eval(x + h / 2) - eval(x - h / 2)) / h;
        return (4 * d2 - d1) / 3;
    }
    if (k == 2)
        return (eval(x + h) - 2 * eval(x) + eval(x - h)) / (h * h);
    if (k == 3)
        return (eval(x + 2 * h) - 2 * eval(x + h) + 2 * eval(x - h) - eval(x - 2 * h)) /
               (2 * h * h * h);
    throw std::invalid_argument("derivative_at: order not supported without Taylor data");
}

TestFunction make_log_bump(double center, double radius) {
    if (!(center > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("make_log_bump: center and radius must be positive");
    const double c = center, r = radius;
    const double lc = std::log(c);
    TestFunction f;
    f.support_lo = c * std::exp(-r);
    f.support_hi = c * std::exp(r);
    f.eval = [c, r](double x) {
        if (x <= 0.0) return 0.0;
        double u = std::log(x / c) / r;
        double d = 1.0 - u * u;
        if (d < 1e-14) return 0.0;
        double w = -1.0 / d;
        if (w < -700.0) return 0.0;
        return std::exp(w);
    };
    auto bump_series_in_v = [](Series v) {
        // exp(-1/(1-v^2)) as a series in the local variable
        Series one = Series::constant(1.0);
        Series d = one - v * v;
        if (d.c[0] < 1e-12) {
            // too close to the support edge: vanishes to all orders at double
            return Series{};
        }
        Series w = d.reciprocal() * (-1.0);
        return w.exp();
    };
    f.taylor_logx = [lc, r, bump_series_in_v](double u0) {
        double v0 = (u0 - lc) / r;
        if (std::abs(v0) >= 1.0 - 1e-13) return Series{};
        return bump_series_in_v(Series::variable(v0, 1.0 / r));
    };
    f.taylor_x = [c, lc, r, bump_series_in_v](double x0) {
        if (x0 <= 0.0) return Series{};
        double v0 = std::log(x0 / c) / r;
        if (std::abs(v0) >= 1.0 - 1e-13) return Series{};
        // v(x0 + t) = (log(x0 + t) - log c)/r
        Series u = Series::variable(x0, 1.0).log();
        u.c[0] = std::log(x0); // keep the constant term exact
        Series v = (u - Series::constant(lc)) * (1.0 / r);
        return bump_series_in_v(v);
    };
    std::ostringstream os;
    os << "bump:center=" << c << ",radius=" << r;
    f.description = os.str();
    return f;
}

TestFunction make_indicator(double a, double b) {
    if (!(0.0 < a && a <= b))
        throw std::invalid_argument("make_indicator: need 0 < a <= b");
    TestFunction f;
    f.support_lo = a;
    f.support_hi = b;
    f.eval = [a, b](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; };
    std::ostringstream os;
    os << "indicator:[" << a << "," << b << "]";
    f.description = os.str();
    return f;
}

TestFunction scale_function(const TestFunction& f, double coeff) {
    TestFunction g = f;
    auto base = std::make_shared<TestFunction>(f);
    g.eval = [base, coeff](double x) { return coeff * base->eval(x); };
    if (f.taylor_x)
        g.taylor_x = [base, coeff](double x0) { return base->taylor_x(x0) * coeff; };
    if (f.taylor_logx)
        g.taylor_logx = [base, coeff](double u0) { return base->taylor_logx(u0) * coeff; };
    g.description = f.description + "*scaled";
    return g;
}

TestFunction add_functions(const TestFunction& f, const TestFunction& g) {
    auto bf = std::make_shared<TestFunction>(f);
    auto bg = std::make_shared<TestFunction>(g);
    TestFunction h;
    h.support_lo = std::min(f.support_lo, g.support_lo);
    h.support_hi = std::max(f.support_hi, g.support_hi);
    h.eval = [bf, bg](double x) { return bf->eval(x) + bg->eval(x); };
    if (f.taylor_x && g.taylor_x) {
        h.taylor_x = [bf, bg](double x0) {
            Series a = x0 > bf->support_lo && x0 < bf->support_hi ? bf->taylor_x(x0) : Series{};
            Series b = x0 > bg->support_lo && x0 < bg->support_hi ? bg->taylor_x(x0) : Series{};
            return a + b;
        };
    }
    if (f.taylor_logx && g.taylor_logx) {
        h.taylor_logx = [bf, bg](double u0) {
            double x0 = std::exp(u0);
            Series a = x0 > bf->support_lo && x0 < bf->support_hi ? bf->taylor_logx(u0) : Series{};
            Series b = x0 > bg->support_lo && x0 < bg->support_hi ? bg->taylor_logx(u0) : Series{};
            return a + b;
        };
    }
    h.description = f.description + "+" + g.description;
    return h;
}

TestFunction dilate_function(const TestFunction& f, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("dilate_function: c must be positive");
    auto base = std::make_shared<TestFunction>(f);
    TestFunction g;
    g.support_lo = f.support_lo / c;
    g.support_hi = f.support_hi / c;
    g.eval = [base, c](double x) { return base->eval(c * x); };
    g.description = f.description + "*dilated";
    return g;
}

TestFunction parse_test_function(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("function spec: expected '<family>:<params>'");
    std::string family = spec.substr(0, colon);
    if (family != "bump")
        throw std::invalid_argument("function spec: unknown family '" + family + "'");
    double center = 0.0, radius = 0.0;
    bool have_c = false, have_r = false;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("function spec: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        double val = 0.0;
        try {
            std::size_t pos = 0;
            val = std::stod(item.substr(eq + 1), &pos);
            if (pos != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("function spec: bad numeric value in '" + item + "'");
        }
        if (key == "center") {
            center = val;
            have_c = true;
        } else if (key == "radius") {
            radius = val;
            have_r = true;
        } else {
            throw std::invalid_argument("function spec: unknown key '" + key + "'");
        }
    }
    if (!have_c || !have_r)
        throw std::invalid_argument("function spec: bump needs center and radius");
    return make_log_bump(center, radius);
}

MellinValue mellin(const TestFunction& f, std::complex<double> s) {
    const double la = std::log(f.support_lo);
    const double lb = std::log(f.support_hi);
    if (!(lb > la)) return {0.0, 0.0};
    auto integrand = [&f, s](double u) {
        return f.eval(std::exp(u)) * std::exp(s * u);
    };
    int npan = std::max(8, static_cast<int>(std::abs(s.imag()) * (lb - la) / 2.5) + 8);
    std::complex<double> coarse = gauss_legendre_panels_c(integrand, la, lb, npan);
    MellinValue mv;
    for (int round = 0; round < 6; ++round) {
        npan *= 2;
        std::complex<double> fine = gauss_legendre_panels_c(integrand, la, lb, npan);
        mv.value = fine;
        mv.abs_error_estimate = std::abs(fine - coarse);
        if (mv.abs_error_estimate <= 1e-11 * std::max(1.0, std::abs(fine))) return mv;
        coarse = fine;
    }
    throw QuadratureError("mellin: node doubling did not stabilize");
}

double mellin_at_zero(const TestFunction& f) { return mellin(f, 0.0).value.real(); }
double mellin_at_one(const TestFunction& f) { return mellin(f, 1.0).value.real(); }

std::vector<double> mellin_envelope(const TestFunction& f, double sigma, int k_max) {
    const double la = std::log(f.support_lo);
    const double lb = std::log(f.support_hi);
    std::vector<double> mk;
    if (!f.taylor_logx) {
        double m0 = gauss_legendre_panels(
            [&](double u) { return std::abs(f.eval(std::exp(u)) * std::exp(sigma * u)); },
            la, lb, 64);
        mk.push_back(m0);
        return mk;
    }
    k_max = std::min(k_max, kSeriesOrder);
    std::vector<KahanReal> acc(k_max + 1);
    const auto& xs = gl16_nodes();
    const auto& ws = gl16_weights();
    const int panels = 80;
    double h = (lb - la) / panels;
    for (int i = 0; i < panels; ++i) {
        double mid = la + i * h + 0.5 * h;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double u = mid + 0.5 * h * xs[j];
            Series g = f.taylor_logx(u) * Series::variable(sigma * u, sigma).exp();
            double w = ws[j] * 0.5 * h;
            for (int k = 0; k <= k_max; ++k) acc[k].add(std::abs(g.derivative(k)) * w);
        }
    }
    for (int k = 0; k <= k_max; ++k) mk.push_back(acc[k].value());
    return mk;
}

double envelope_bound(const std::vector<double>& mk, double t) {
    t = std::abs(t);
    if (t < 1.0) return mk.empty() ? 0.0 : mk[0];
    double best = mk.empty() ? 0.0 : mk[0];
    double tk = 1.0;
    for (std::size_t k = 1; k < mk.size(); ++k) {
        tk *= t;
        best = std::min(best, mk[k] / tk);
    }
    return best;
}

QuadResult<double> integrate(const std::function<double(double)>& g, double a, double b,
                             double tol) {
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.throw_on_fail = false;
    return tanh_sinh(g, a, b, opt);
}

} // namespace iqf
