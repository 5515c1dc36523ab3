#include "iqf/quadfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iqf {

std::string PlaceInfo::label() const {
    std::ostringstream os;
    switch (kind) {
        case PlaceKind::split: os << "split p=" << p << " (N=" << norm << ")"; break;
        case PlaceKind::inert: os << "inert p=" << p << " (N=" << norm << ")"; break;
        case PlaceKind::ramified:
            os << "ramified p=" << p << " (N=" << norm << ", Nd=" << different_norm << ")";
            break;
        case PlaceKind::complex_place: os << "complex"; break;
    }
    return os.str();
}

int kronecker(long long D, long long n) {
    if (n == 0) throw std::invalid_argument("kronecker: n must be >= 1");
    if (n < 0) throw std::invalid_argument("kronecker: n must be positive");
    long long a = D;
    int res = 1;
    // factor out 2s of n: (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 otherwise
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) res = -res;
    }
    // Jacobi algorithm on odd n
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) res = -res;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

namespace {

bool squarefree(long long m) {
    if (m % 4 == 0) return false;
    for (long long k = 3; k * k <= m; k += 2)
        if (m % (k * k) == 0) return false;
    return true;
}

} // namespace

FieldSpec discriminant(long long d) {
    if (d >= 0) throw std::invalid_argument("discriminant: d must be negative");
    if (!squarefree(-d)) throw std::invalid_argument("discriminant: d must be squarefree");
    FieldSpec f;
    f.d = d;
    long long mod4 = ((d % 4) + 4) % 4;
    f.D = (mod4 == 1) ? d : 4 * d;
    static const long long kClassNumberOne[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};
    f.class_number_one = std::find(std::begin(kClassNumberOne), std::end(kClassNumberOne),
                                   f.D) != std::end(kClassNumberOne);
    return f;
}

PlaceInfo splitting_type(const FieldSpec& field, long long p) {
    if (p < 2) throw std::invalid_argument("splitting_type: p must be prime");
    PlaceInfo v;
    v.p = p;
    int sym = kronecker(field.D, p);
    if (sym == 1) {
        v.kind = PlaceKind::split;
        v.norm = p;
        v.different_norm = 1;
        v.places_above = 2;
    } else if (sym == -1) {
        v.kind = PlaceKind::inert;
        v.norm = p * p;
        v.different_norm = 1;
        v.places_above = 1;
    } else {
        v.kind = PlaceKind::ramified;
        v.norm = p;
        long long nd = 1, m = field.D < 0 ? -field.D : field.D;
        while (m % p == 0) {
            nd *= p;
            m /= p;
        }
        v.different_norm = nd;
        v.places_above = 1;
    }
    return v;
}

PlaceInfo complex_place() {
    PlaceInfo v;
    v.kind = PlaceKind::complex_place;
    v.p = 0;
    v.norm = 0;
    v.different_norm = 1;
    v.places_above = 1;
    return v;
}

std::vector<long long> primes_up_to(long long X) {
    std::vector<long long> ps;
    if (X < 2) return ps;
    std::vector<bool> sieve(static_cast<std::size_t>(X) + 1, true);
    sieve[0] = sieve[1] = false;
    for (long long i = 2; i * i <= X; ++i)
        if (sieve[static_cast<std::size_t>(i)])
            for (long long j = i * i; j <= X; j += i) sieve[static_cast<std::size_t>(j)] = false;
    for (long long i = 2; i <= X; ++i)
        if (sieve[static_cast<std::size_t>(i)]) ps.push_back(i);
    return ps;
}

std::vector<PlaceInfo> places_up_to(const FieldSpec& field, long long X) {
    if (X < 2) throw std::invalid_argument("places_up_to: X must be >= 2");
    std::vector<PlaceInfo> out;
    for (long long p : primes_up_to(X)) {
        PlaceInfo v = splitting_type(field, p);
        if (v.norm > X) continue;
        out.push_back(v);
        if (v.kind == PlaceKind::split) out.push_back(v); // one entry per place
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PlaceInfo& a, const PlaceInfo& b) { return a.norm < b.norm; });
    out.push_back(complex_place());
    return out;
}

} // namespace iqf
