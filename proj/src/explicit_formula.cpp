#include "iqf/explicit_formula.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "iqf/kahan.hpp"

namespace iqf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// W at a finite place vanishes unless some N(p)^n lies in supp(f) (n != 0) or,
// at a ramified place, f(1) != 0; ramified primes divide D. The enumeration
// bound must therefore cover norms up to sup supp(f) AND, when inf supp(f) < 1,
// up to 1/inf supp(f) (negative powers can land in the support).
long long enumeration_bound(const FieldSpec& field, const TestFunction& f) {
    double bound = std::max(2.0, std::ceil(f.support_hi));
    if (f.support_lo < 1.0)
        bound = std::max(bound, std::ceil(1.0 / f.support_lo));
    bound = std::max(bound, static_cast<double>(std::abs(field.D)));
    return static_cast<long long>(bound);
}

} // namespace

std::pair<double, std::vector<std::pair<PlaceInfo, double>>> lhs_sum(const FieldSpec& field,
                                                                     const TestFunction& f) {
    if (!field.class_number_one)
        throw std::invalid_argument("lhs_sum: field must have class number one");
    KahanReal acc;
    std::vector<std::pair<PlaceInfo, double>> breakdown;
    for (const PlaceInfo& v : places_up_to(field, enumeration_bound(field, f))) {
        LocalTerm t = W_closed(v, f);
        acc.add(t.value);
        breakdown.emplace_back(v, t.value);
    }
    return {acc.value(), breakdown};
}

RhsSum rhs_sum(const FieldSpec& field, const TestFunction& f, double T,
               const ZeroList& zeta_zeros, const ZeroList& chi_zeros) {
    if (!zeta_zeros.certified || !chi_zeros.certified)
        throw std::invalid_argument("rhs_sum: refusing uncertified zero lists");
    if (zeta_zeros.height < T || chi_zeros.height < T)
        throw std::invalid_argument("rhs_sum: zero lists do not reach the requested height");
    if (zeta_zeros.id.kind != LKind::riemann_zeta || chi_zeros.id.kind != LKind::dirichlet ||
        chi_zeros.id.conductor != -field.D)
        throw std::invalid_argument("rhs_sum: zero lists do not match the field");

    RhsSum r;
    KahanReal acc;
    for (const ZeroList* list : {&zeta_zeros, &chi_zeros}) {
        for (double g : list->ordinates) {
            if (g > T) break;
            MellinValue mv = mellin(f, std::complex<double>(0.5, g));
            MellinValue mv_conj = mellin(f, std::complex<double>(0.5, -g));
            acc.add(2.0 * mv.value.real());
            r.fold_residual =
                std::max(r.fold_residual, std::abs((mv.value + mv_conj.value).imag()));
        }
    }
    r.zero_sum = acc.value();

    // tail over gamma > T: 2 sum |M(1/2+i gamma)| <= 2 int_T^inf env(t) dN(t);
    // bound the density of each factor by a + b log t and use the envelope
    // order with the smallest closed-form bound.
    std::vector<double> mk = mellin_envelope(f, 0.5);
    double tail = 0.0;
    for (const ZeroList* list : {&zeta_zeros, &chi_zeros}) {
        double qeff =
            list->id.kind == LKind::riemann_zeta ? 1.0 : static_cast<double>(list->id.conductor);
        double a = (std::log(qeff / kTwoPi) + std::log1p(6.0 / T)) / kTwoPi + 0.3;
        double b = 1.0 / kTwoPi;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 2; k < mk.size(); ++k) {
            double km1 = static_cast<double>(k) - 1.0;
            double t1k = std::pow(T, 1.0 - static_cast<double>(k));
            double bound =
                mk[k] * (a * t1k / km1 + b * (t1k * std::log(T) / km1 + t1k / (km1 * km1)));
            best = std::min(best, bound);
        }
        tail += 2.0 * std::max(best, 0.0);
    }
    r.tail_estimate = tail;
    return r;
}

VerificationReport verify(const FieldSpec& field, const TestFunction& f, double T,
                          double tolerance, const ZeroList& zeta_zeros,
                          const ZeroList& chi_zeros) {
    VerificationReport rep;
    rep.field = field;
    rep.test_function = f.description;
    rep.truncation_height = T;
    rep.tolerance = tolerance;
    auto [lhs, breakdown] = lhs_sum(field, f);
    rep.lhs_total = lhs;
    rep.lhs_breakdown = std::move(breakdown);
    RhsSum rhs = rhs_sum(field, f, T, zeta_zeros, chi_zeros);
    rep.rhs_zero_sum = rhs.zero_sum;
    rep.tail_estimate = rhs.tail_estimate;
    rep.mellin_at_0 = mellin_at_zero(f);
    rep.mellin_at_1 = mellin_at_one(f);
    rep.discrepancy = rep.lhs_total - (rep.rhs_zero_sum - rep.mellin_at_0 - rep.mellin_at_1);
    rep.pass = std::abs(rep.discrepancy) <= tolerance + rep.tail_estimate;
    rep.zero_cache_checksums.emplace_back(
        zeta_zeros.id.name(), sha256_hex(serialize_zero_list(zeta_zeros)));
    rep.zero_cache_checksums.emplace_back(
        chi_zeros.id.name(), sha256_hex(serialize_zero_list(chi_zeros)));
    return rep;
}

namespace {

std::string num12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string report_to_json(const VerificationReport& r) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"field\": {\"d\": " << r.field.d << ", \"discriminant\": " << r.field.D
       << ", \"class_number_one\": " << (r.field.class_number_one ? "true" : "false") << "},\n";
    os << "  \"test_function\": \"" << json_escape(r.test_function) << "\",\n";
    os << "  \"lhs_total\": " << num12(r.lhs_total) << ",\n";
    os << "  \"lhs_breakdown\": [";
    for (std::size_t i = 0; i < r.lhs_breakdown.size(); ++i) {
        if (i) os << ", ";
        os << "{\"place\": \"" << json_escape(r.lhs_breakdown[i].first.label())
           << "\", \"value\": " << num12(r.lhs_breakdown[i].second) << "}";
    }
    os << "],\n";
    os << "  \"rhs_zero_sum\": " << num12(r.rhs_zero_sum) << ",\n";
    os << "  \"rhs_pole_terms\": {\"mellin_at_0\": " << num12(r.mellin_at_0)
       << ", \"mellin_at_1\": " << num12(r.mellin_at_1) << "},\n";
    os << "  \"truncation_height\": " << num12(r.truncation_height) << ",\n";
    os << "  \"tail_estimate\": " << num12(r.tail_estimate) << ",\n";
    os << "  \"discrepancy\": " << num12(r.discrepancy) << ",\n";
    os << "  \"pass\": " << (r.pass ? "true" : "false") << ",\n";
    os << "  \"tool_version\": \"1.0.0\",\n";
    os << "  \"zero_cache_checksums\": {";
    for (std::size_t i = 0; i < r.zero_cache_checksums.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << json_escape(r.zero_cache_checksums[i].first) << "\": \""
           << r.zero_cache_checksums[i].second << "\"";
    }
    os << "}\n";
    os << "}\n";
    return os.str();
}

} // namespace iqf
