#include "iqf/quadrature.hpp"

#include <cmath>

#include "iqf/kahan.hpp"

namespace iqf {

namespace {

constexpr double kPiHalf = 1.5707963267948966;
constexpr double kUMax = 4.2; // abscissa cutoff; weights vanish past here

// One tanh-sinh node: u -> (delta from nearer endpoint, weight), both for the
// half-length-1 interval [-1,1]. Node position is 1 - delta on the +u side.
struct TsNode {
    double delta; // distance from the endpoint, computed without cancellation
    double weight;
};

TsNode ts_node(double u) {
    double t = kPiHalf * std::sinh(u);
    double e = std::exp(-2.0 * t); // small for u > 0
    double delta = 2.0 * e / (1.0 + e);
    double ch = std::cosh(t);
    double w = kPiHalf * std::cosh(u) / (ch * ch);
    return {delta, w};
}

template <typename V, typename F>
QuadResult<V> tanh_sinh_impl(const F& f, double a, double b, const QuadOptions& opt) {
    QuadResult<V> res;
    if (!(b > a)) {
        res.converged = true;
        return res;
    }
    const double half = 0.5 * (b - a);

    // level 0: h = 1
    double h = 1.0;
    KahanSum<V> acc;
    {
        TsNode n0 = ts_node(0.0);
        acc.add(V(f(a + half)) * n0.weight);
        for (double u = h; u <= kUMax; u += h) {
            TsNode n = ts_node(u);
            double d = half * n.delta;
            if (d == 0.0) break;
            acc.add((V(f(a + d)) + V(f(b - d))) * n.weight);
            res.evaluations += 2;
        }
    }
    V prev = acc.value() * (half * h);
    double err = std::abs(prev) + 1.0;

    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        // new nodes are the odd multiples of h
        for (double u = h; u <= kUMax; u += 2.0 * h) {
            TsNode n = ts_node(u);
            double d = half * n.delta;
            if (d == 0.0) continue;
            acc.add((V(f(a + d)) + V(f(b - d))) * n.weight);
            res.evaluations += 2;
        }
        V cur = acc.value() * (half * h);
        err = std::abs(cur - prev);
        prev = cur;
        if (level >= 3 && err <= opt.abs_tol) {
            res.value = cur;
            res.error = err;
            res.converged = true;
            return res;
        }
    }
    res.value = prev;
    res.error = err;
    res.converged = false;
    if (opt.throw_on_fail)
        throw QuadratureError("tanh_sinh: no convergence within node budget");
    return res;
}

} // namespace

QuadResult<double> tanh_sinh(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt) {
    return tanh_sinh_impl<double>(f, a, b, opt);
}

QuadResult<std::complex<double>> tanh_sinh_c(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, const QuadOptions& opt) {
    return tanh_sinh_impl<std::complex<double>>(f, a, b, opt);
}

QuadResult<double> exp_sinh(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt) {
    QuadResult<double> res;
    double h = 1.0;
    auto node_sum = [&](double hh, bool odd_only) {
        KahanReal acc;
        double start = odd_only ? hh : 0.0;
        double step = odd_only ? 2.0 * hh : hh;
        for (double u = start;; u += step) {
            double t = kPiHalf * std::sinh(u);
            double x = std::exp(t);
            double w = kPiHalf * std::cosh(u) * x;
            double v = f(a + x) * w;
            res.evaluations++;
            acc.add(v);
            if (u > 0.0 && (std::abs(v) < 1e-300 || u > kUMax)) break;
            if (u == 0.0 && odd_only) break;
        }
        // negative abscissas (x -> 0+)
        for (double u = -(odd_only ? hh : h);; u -= step) {
            double t = kPiHalf * std::sinh(u);
            double x = std::exp(t);
            double w = kPiHalf * std::cosh(u) * x;
            double v = f(a + x) * w;
            res.evaluations++;
            acc.add(v);
            if (std::abs(v) < 1e-300 || u < -kUMax) break;
        }
        return acc.value();
    };

    double sum = node_sum(h, false);
    double prev = sum * h;
    double err = std::abs(prev) + 1.0;
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        sum += node_sum(h, true);
        double cur = sum * h;
        err = std::abs(cur - prev);
        prev = cur;
        if (level >= 3 && err <= opt.abs_tol) {
            res.value = cur;
            res.error = err;
            res.converged = true;
            return res;
        }
    }
    res.value = prev;
    res.error = err;
    res.converged = false;
    if (opt.throw_on_fail)
        throw QuadratureError("exp_sinh: no convergence within node budget");
    return res;
}

namespace {

// Gauss-Legendre nodes by Newton iteration on P_n; computed once.
void build_gl(int n, std::vector<double>& xs, std::vector<double>& ws) {
    xs.resize(n);
    ws.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

struct Gl16 {
    std::vector<double> xs, ws;
    Gl16() { build_gl(16, xs, ws); }
};
const Gl16& gl16() {
    static const Gl16 g;
    return g;
}

} // namespace

const std::vector<double>& gl16_nodes() { return gl16().xs; }
const std::vector<double>& gl16_weights() { return gl16().ws; }

double gauss_legendre_panels(const std::function<double(double)>& f, double a, double b,
                             int n_panels) {
    const auto& xs = gl16().xs;
    const auto& ws = gl16().ws;
    double h = (b - a) / n_panels;
    KahanReal acc;
    for (int i = 0; i < n_panels; ++i) {
        double mid = a + i * h + 0.5 * h;
        for (std::size_t j = 0; j < xs.size(); ++j)
            acc.add(f(mid + 0.5 * h * xs[j]) * ws[j] * 0.5 * h);
    }
    return acc.value();
}

std::complex<double> gauss_legendre_panels_c(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, int n_panels) {
    const auto& xs = gl16().xs;
    const auto& ws = gl16().ws;
    double h = (b - a) / n_panels;
    KahanComplex acc;
    for (int i = 0; i < n_panels; ++i) {
        double mid = a + i * h + 0.5 * h;
        for (std::size_t j = 0; j < xs.size(); ++j)
            acc.add(f(mid + 0.5 * h * xs[j]) * ws[j] * (0.5 * h));
    }
    return acc.value();
}

} // namespace iqf
