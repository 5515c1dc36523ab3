// Compensated (Kahan-Neumaier) accumulation for long sums.
#pragma once

#include <complex>

namespace iqf {

template <typename T>
class KahanSum {
public:
    void add(T v) {
        T t = sum_ + v;
        if constexpr (std::is_floating_point_v<T>) {
            if (std::abs(sum_) >= std::abs(v))
                comp_ += (sum_ - t) + v;
            else
                comp_ += (v - t) + sum_;
        } else {
            // complex: compensate each part through the same branchless form
            comp_ += (sum_ - t) + v;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

using KahanReal = KahanSum<double>;
using KahanComplex = KahanSum<std::complex<double>>;

} // namespace iqf
