// Arithmetic of an imaginary quadratic field Q(sqrt(d)), d < 0 squarefree:
// fundamental discriminant, Kronecker symbol, splitting of rational primes,
// norms of prime ideals and local differents.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace iqf {

struct FieldSpec {
    long long d = 0;          // squarefree negative integer
    long long D = 0;          // fundamental discriminant: d if d = 1 mod 4, else 4d
    bool class_number_one = false;
};

enum class PlaceKind { split, inert, ramified, complex_place };

struct PlaceInfo {
    long long p = 0;            // rational prime below (0 for the complex place)
    PlaceKind kind = PlaceKind::complex_place;
    long long norm = 0;         // N(p): p (split/ramified) or p^2 (inert)
    long long different_norm = 1; // N(d_v); p^ord_p(D) when ramified, else 1
    int places_above = 1;       // 2 for split primes, else 1

    bool is_finite() const { return kind != PlaceKind::complex_place; }
    std::string label() const;
};

// Kronecker symbol (D/n) for fundamental discriminant D and n >= 1.
// Completely multiplicative in n, period |D|; zero iff gcd(n, D) > 1.
int kronecker(long long D, long long n);

// Builds the FieldSpec; rejects non-squarefree or nonnegative d.
FieldSpec discriminant(long long d);

PlaceInfo splitting_type(const FieldSpec& field, long long p);

PlaceInfo complex_place();

// All finite places with norm <= X (split primes appear twice), sorted by
// norm, followed by the complex place marker.
std::vector<PlaceInfo> places_up_to(const FieldSpec& field, long long X);

std::vector<long long> primes_up_to(long long X);

} // namespace iqf
