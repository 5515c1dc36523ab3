// Evaluation of zeta(s) and L(s, chi_D) in the critical strip, completed
// functions, zero isolation on the critical line, and argument-principle
// certification of list completeness.
#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "iqf/quadfield.hpp"

namespace iqf {

enum class LKind { riemann_zeta, dirichlet };

struct LFunctionId {
    LKind kind = LKind::riemann_zeta;
    long long conductor = 1; // |D| for dirichlet, 1 for zeta
    // All imaginary quadratic chi_D are odd; zeta carries the even factor.
    bool odd() const { return kind == LKind::dirichlet; }
    std::string name() const;
};

LFunctionId zeta_id();
LFunctionId dirichlet_id(long long D); // takes the (negative) fundamental discriminant

struct ZeroList {
    LFunctionId id;
    std::vector<double> ordinates; // ascending, in (0, height]
    double height = 0.0;           // certified-complete up to here when certified
    bool certified = false;
    double precision = 1e-9; // per-ordinate error bound
};

// Hurwitz zeta by Euler-Maclaurin; absolute error <= ~1e-12 on the envelope
// Re s in [-1, 2], |Im s| <= 500 (s = 1 rejected).
std::complex<double> hurwitz_zeta(std::complex<double> s, double alpha);

// zeta(s) or L(s, chi_D); the Dirichlet branch removes the per-term Hurwitz
// pole analytically (sum chi = 0), so it is regular at s = 1.
std::complex<double> l_value(const LFunctionId& id, std::complex<double> s);

// Completed function: zeta: pi^{-s/2} Gamma(s/2) zeta(s);
// odd dirichlet: (|D|/pi)^{(s+1)/2} Gamma((s+1)/2) L(s, chi). Satisfies
// Lambda(s) = Lambda(1-s) and is real on the critical line.
std::complex<double> completed(const LFunctionId& id, std::complex<double> s);

// real-valued restriction of the completed function to the critical line
double hardy(const LFunctionId& id, double t);

// Smooth main-term count of zeros with 0 < gamma <= T (within +-2 of truth on
// the desk envelope; checked by tests, not assumed).
double zero_count_estimate(const LFunctionId& id, double T);

// local zero density (d/dT of the smooth count), clamped away from 0
double zero_density(const LFunctionId& id, double T);

// Argument-principle count of zeros with t_lo < Im s < T inside the strip
// -0.5 < Re s < 1.5, by phase tracking around the rectangle. Returns nullopt
// if the winding number fails to stabilize (e.g. a zero sits on the contour).
std::optional<long> rectangle_zero_count(const LFunctionId& id, double t_lo, double T);

// Sign-change isolation + bisection + certification. Never silently drops a
// mismatch: the certified flag records whether the argument-principle count
// equals the list length.
ZeroList find_zeros(const LFunctionId& id, double T);

// Re-certify an existing list (imported lists come in uncertified).
bool certify(ZeroList& list);

// ---- cache files ----
// Text format: '# kind=', '# conductor=', '# height=', '# certified=' header
// lines, one ordinate per line (12 significant digits), then a trailing
// '# sha256=<hex>' over everything before it.
std::string serialize_zero_list(const ZeroList& list);
ZeroList parse_zero_list(const std::string& text); // throws on malformed/checksum
void export_zeros(const ZeroList& list, const std::filesystem::path& file);
ZeroList import_zeros(const std::filesystem::path& file); // marked uncertified

std::string sha256_hex(const std::string& data);

// cache-file naming used by the CLI and the verifier
std::filesystem::path zero_cache_path(const std::filesystem::path& dir, const LFunctionId& id);

} // namespace iqf
