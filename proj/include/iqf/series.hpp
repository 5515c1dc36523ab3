// Fixed-order truncated Taylor series arithmetic (value + derivatives at a point).
// Used to get exact high-order derivatives of bump test functions for the
// Mellin decay envelope and the removable-singularity guards.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace iqf {

constexpr int kSeriesOrder = 14; // coefficients c_0..c_14

struct Series {
    std::array<double, kSeriesOrder + 1> c{};

    static Series constant(double v) {
        Series s;
        s.c[0] = v;
        return s;
    }
    // the local variable itself: v0 + t
    static Series variable(double v0, double slope = 1.0) {
        Series s;
        s.c[0] = v0;
        s.c[1] = slope;
        return s;
    }

    Series operator+(const Series& o) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Series operator-(const Series& o) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Series operator*(double k) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] = c[i] * k;
        return r;
    }
    Series operator*(const Series& o) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i)
            for (int j = 0; i + j <= kSeriesOrder; ++j)
                r.c[i + j] += c[i] * o.c[j];
        return r;
    }

    // 1/this; requires c[0] != 0
    Series reciprocal() const {
        if (c[0] == 0.0) throw std::domain_error("series reciprocal at zero");
        Series r;
        r.c[0] = 1.0 / c[0];
        for (int n = 1; n <= kSeriesOrder; ++n) {
            double acc = 0.0;
            for (int k = 1; k <= n; ++k) acc += c[k] * r.c[n - k];
            r.c[n] = -acc / c[0];
        }
        return r;
    }

    // exp(this); standard recurrence e' = e * f'
    Series exp() const {
        Series r;
        double e0 = std::exp(c[0]);
        r.c[0] = e0;
        if (e0 == 0.0) return r; // underflow: function vanishes to all orders
        for (int n = 1; n <= kSeriesOrder; ++n) {
            double acc = 0.0;
            for (int k = 1; k <= n; ++k) acc += k * c[k] * r.c[n - k];
            r.c[n] = acc / n;
        }
        return r;
    }

    // log(1 + this/c0) style composition is not needed; log of a positive series:
    Series log() const {
        if (c[0] <= 0.0) throw std::domain_error("series log of nonpositive value");
        Series r;
        r.c[0] = std::log(c[0]);
        // r' = f'/f  ->  n r_n = (1/c0) (n c_n - sum_{k=1}^{n-1} k r_k c_{n-k})
        for (int n = 1; n <= kSeriesOrder; ++n) {
            double acc = n * c[n];
            for (int k = 1; k < n; ++k) acc -= k * r.c[k] * c[n - k];
            r.c[n] = acc / (n * c[0]);
        }
        return r;
    }

    // k-th derivative value at the expansion point
    double derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c[static_cast<std::size_t>(k)] * fact;
    }
};

} // namespace iqf
