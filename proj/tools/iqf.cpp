// iqf: explicit-formula toolkit for imaginary quadratic fields.
//
// Subcommands:
//   field   print discriminant data and prime splitting
//   local   evaluate the local generator W_v(f) by one or all routes
//   zeros   compute / import / export / certify zero caches
//   verify  run the global explicit-formula verification, emit a JSON report
//
// Exit codes: 0 pass, 1 numeric fail, 2 usage error, 3 unsupported field.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "iqf/explicit_formula.hpp"
#include "iqf/localterms.hpp"
#include "iqf/quadfield.hpp"
#include "iqf/riesz.hpp"
#include "iqf/testfn.hpp"
#include "iqf/zeros.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumericFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupportedField = 3;

std::string num12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// The --d flag accepts either a squarefree negative d or the fundamental
// discriminant of the field (so --d -4 and --d -1 both name Q(i)).
iqf::FieldSpec parse_field_argument(long long x) {
    if (x >= 0) throw std::invalid_argument("field argument must be negative");
    try {
        return iqf::discriminant(x);
    } catch (const std::invalid_argument&) {
        if (x % 4 == 0) {
            long long m = x / 4;
            long long mod4 = ((m % 4) + 4) % 4;
            if (mod4 == 2 || mod4 == 3) {
                iqf::FieldSpec f = iqf::discriminant(m);
                if (f.D == x) return f;
            }
        }
        throw std::invalid_argument(
            "field argument must be a squarefree negative d or a fundamental discriminant");
    }
}

iqf::ZeroList load_or_compute(const iqf::LFunctionId& id, double height, const fs::path& cache_dir,
                              bool compute_missing) {
    fs::path file = iqf::zero_cache_path(cache_dir, id);
    if (fs::exists(file)) {
        iqf::ZeroList list = iqf::import_zeros(file);
        if (list.height >= height) {
            iqf::certify(list);
            if (list.certified) return list;
            std::cerr << "error: cache " << file.string()
                      << " failed certification; recompute with 'iqf zeros compute'\n";
            throw std::runtime_error("uncertified cache");
        }
    }
    if (!compute_missing) {
        std::cerr << "error: no usable zero cache for " << id.name() << " up to height " << height
                  << " in " << cache_dir.string() << "\n"
                  << "hint: run 'iqf zeros compute --kind "
                  << (id.kind == iqf::LKind::riemann_zeta ? "zeta" : "dirichlet")
                  << (id.kind == iqf::LKind::dirichlet
                          ? " --conductor " + std::to_string(id.conductor)
                          : "")
                  << " --height " << height << "' or pass --compute-missing\n";
        throw std::runtime_error("missing cache");
    }
    iqf::ZeroList list = iqf::find_zeros(id, height);
    if (!list.certified) {
        std::cerr << "error: zero search for " << id.name() << " failed certification\n";
        throw std::runtime_error("uncertified result");
    }
    fs::create_directories(cache_dir);
    iqf::export_zeros(list, file);
    return list;
}

int cmd_field(long long d, long long bound) {
    iqf::FieldSpec field = parse_field_argument(d);
    std::cout << "d = " << field.d << "\n";
    std::cout << "discriminant D = " << field.D << "\n";
    std::cout << "class_number_one = " << (field.class_number_one ? "yes" : "no") << "\n";
    std::cout << "splitting of primes up to " << bound << ":\n";
    for (long long p : iqf::primes_up_to(bound)) {
        iqf::PlaceInfo v = iqf::splitting_type(field, p);
        std::cout << "  p=" << p << ": " << v.label();
        if (v.kind == iqf::PlaceKind::split) std::cout << "  [two places]";
        std::cout << "\n";
    }
    return kExitPass;
}

int cmd_local(long long d, const std::string& place_spec, long long prime,
              const std::string& fn_spec, const std::string& route, double sigma, double height) {
    iqf::TestFunction f = iqf::parse_test_function(fn_spec);
    iqf::PlaceInfo place;
    if (place_spec == "complex") {
        place = iqf::complex_place();
    } else {
        iqf::FieldSpec field = parse_field_argument(d);
        place = iqf::splitting_type(field, prime);
    }
    std::cout << "place: " << place.label() << "\n";
    std::cout << "f: " << f.description << "\n";
    if (route == "closed") {
        iqf::LocalTerm t = iqf::W_closed(place, f);
        std::cout << "W[closed] = " << num12(t.value) << "\n";
        return kExitPass;
    }
    if (route == "contour") {
        iqf::LocalTerm t = iqf::W_contour(place, f, sigma, height);
        std::cout << "W[contour sigma=" << sigma << " T=" << height << "] = " << num12(t.value)
                  << "  (truncation tail <= " << num12(t.error_estimate) << ")\n";
        return kExitPass;
    }
    if (route == "fd") {
        double v = iqf::generator_fd(place, f);
        std::cout << "W[finite-difference] = " << num12(v) << "\n";
        return kExitPass;
    }
    if (route == "all") {
        iqf::RouteValues rv = iqf::all_routes(place, f, sigma, height);
        std::cout << "W[closed]  = " << num12(rv.closed.value) << "\n";
        std::cout << "W[contour] = " << num12(rv.contour.value) << "  (tail <= "
                  << num12(rv.contour.error_estimate) << ")\n";
        std::cout << "W[fd]      = " << num12(rv.fd.value) << "\n";
        std::cout << "delta closed-contour = " << num12(rv.closed.value - rv.contour.value)
                  << "\n";
        std::cout << "delta closed-fd      = " << num12(rv.closed.value - rv.fd.value) << "\n";
        if (rv.contour.error_estimate > 1e-6)
            std::cout << "note: contour truncation tail exceeds 1e-6 at this height\n";
        return kExitPass;
    }
    throw CLI::ValidationError("--route must be closed|contour|fd|all");
}

int cmd_verify(long long d, const std::string& fn_spec, double height, double tol,
               const fs::path& cache_dir, const std::string& out_path, bool compute_missing) {
    iqf::FieldSpec field = parse_field_argument(d);
    if (!field.class_number_one) {
        std::cerr << "error: field with D = " << field.D
                  << " has class number > 1; verification is restricted to the nine "
                     "class-number-one imaginary quadratic fields\n";
        return kExitUnsupportedField;
    }
    iqf::TestFunction f = iqf::parse_test_function(fn_spec);
    iqf::ZeroList zz = load_or_compute(iqf::zeta_id(), height, cache_dir, compute_missing);
    iqf::ZeroList lz =
        load_or_compute(iqf::dirichlet_id(field.D), height, cache_dir, compute_missing);
    iqf::VerificationReport rep = iqf::verify(field, f, height, tol, zz, lz);
    std::string json = iqf::report_to_json(rep);
    if (out_path == "-") {
        std::cout << json;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        out << json;
        std::cout << "report written to " << out_path << "\n";
    }
    std::cout << "lhs_total    = " << num12(rep.lhs_total) << "\n";
    std::cout << "rhs_total    = " << num12(rep.rhs_zero_sum - rep.mellin_at_0 - rep.mellin_at_1)
              << "\n";
    std::cout << "discrepancy  = " << num12(rep.discrepancy) << "\n";
    std::cout << "tail bound   = " << num12(rep.tail_estimate) << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << " (|discrepancy| <= tol + tail: " << num12(tol)
              << " + " << num12(rep.tail_estimate) << ")\n";
    return rep.pass ? kExitPass : kExitNumericFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit-formula toolkit for imaginary quadratic fields"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags win over file entries");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string cache_dir_s = "zero_cache";
    app.add_option("--cache-dir", cache_dir_s, "zero cache directory")
        ->envname("IQF_CACHE_DIR")
        ->capture_default_str();

    // field
    auto* field_cmd = app.add_subcommand("field", "discriminant data and prime splitting");
    long long field_d = 0;
    long long field_bound = 50;
    field_cmd->add_option("--d", field_d, "squarefree negative d of Q(sqrt(d))")->required();
    field_cmd->add_option("--bound", field_bound, "list splitting of primes up to this bound")
        ->capture_default_str();

    // local
    auto* local_cmd = app.add_subcommand("local", "local generator W_v(f)");
    long long local_d = -1;
    long long local_p = 0;
    std::string local_place = "finite";
    std::string local_fn;
    std::string local_route = "closed";
    double local_sigma = 0.5, local_T = 200.0;
    local_cmd->add_option("--d", local_d, "field (needed for finite places)");
    local_cmd->add_option("--prime", local_p, "rational prime below the place");
    local_cmd->add_option("--place", local_place, "'finite' (default) or 'complex'");
    local_cmd->add_option("--fn", local_fn, "test function, e.g. bump:center=2,radius=0.5")
        ->required();
    local_cmd->add_option("--route", local_route, "closed|contour|fd|all")->capture_default_str();
    local_cmd->add_option("--sigma", local_sigma, "contour abscissa")->capture_default_str();
    local_cmd->add_option("--height", local_T, "contour truncation height")->capture_default_str();

    // zeros
    auto* zeros_cmd = app.add_subcommand("zeros", "zero cache operations");
    zeros_cmd->require_subcommand(1);
    std::string z_kind = "zeta";
    long long z_conductor = 0;
    double z_height = 120.0;
    std::string z_file;
    auto add_id_opts = [&](CLI::App* c, bool need_height) {
        c->add_option("--kind", z_kind, "zeta|dirichlet")->capture_default_str();
        c->add_option("--conductor", z_conductor, "|D| for dirichlet");
        if (need_height) c->add_option("--height", z_height, "height T")->capture_default_str();
    };
    auto* z_compute = zeros_cmd->add_subcommand("compute", "locate and certify zeros up to T");
    add_id_opts(z_compute, true);
    auto* z_import = zeros_cmd->add_subcommand("import", "validate a cache file and store it");
    z_import->add_option("--file", z_file, "file to import")->required();
    auto* z_export = zeros_cmd->add_subcommand("export", "write a cache entry to a file");
    add_id_opts(z_export, false);
    z_export->add_option("--file", z_file, "destination (default: print path)");
    auto* z_certify = zeros_cmd->add_subcommand("certify", "re-certify a cached list");
    add_id_opts(z_certify, false);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "global explicit-formula verification");
    long long v_d = 0;
    std::string v_fn;
    double v_height = 120.0, v_tol = 1e-4;
    std::string v_out = "-";
    bool v_compute_missing = false;
    verify_cmd->add_option("--d", v_d, "squarefree negative d")->required();
    verify_cmd->add_option("--fn", v_fn, "test function spec")->required();
    verify_cmd->add_option("--height", v_height, "zero-sum truncation height T")
        ->capture_default_str();
    verify_cmd->add_option("--tol", v_tol, "tolerance")->capture_default_str();
    verify_cmd->add_option("--out", v_out, "report path ('-' for stdout)")->capture_default_str();
    verify_cmd->add_flag("--compute-missing", v_compute_missing,
                         "compute and cache missing zero lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    fs::path cache_dir(cache_dir_s);
    try {
        if (*field_cmd) return cmd_field(field_d, field_bound);
        if (*local_cmd) {
            if (local_place != "complex" && local_p == 0)
                throw CLI::ValidationError("--prime is required for finite places");
            return cmd_local(local_d, local_place, local_p, local_fn, local_route, local_sigma,
                             local_T);
        }
        if (*zeros_cmd) {
            auto make_id = [&]() {
                if (z_kind == "zeta") return iqf::zeta_id();
                if (z_kind == "dirichlet") {
                    if (z_conductor <= 0)
                        throw CLI::ValidationError("--conductor required for dirichlet");
                    return iqf::dirichlet_id(-z_conductor);
                }
                throw CLI::ValidationError("--kind must be zeta or dirichlet");
            };
            if (*z_compute) {
                iqf::LFunctionId id = make_id();
                iqf::ZeroList list = iqf::find_zeros(id, z_height);
                fs::create_directories(cache_dir);
                fs::path file = iqf::zero_cache_path(cache_dir, id);
                iqf::export_zeros(list, file);
                std::cout << list.ordinates.size() << " zeros up to " << num12(z_height)
                          << ", certified=" << (list.certified ? 1 : 0) << ", cache "
                          << file.string() << "\n";
                return list.certified ? kExitPass : kExitNumericFail;
            }
            if (*z_import) {
                iqf::ZeroList list = iqf::import_zeros(z_file); // throws before any write
                fs::create_directories(cache_dir);
                iqf::export_zeros(list, iqf::zero_cache_path(cache_dir, list.id));
                std::cout << "imported " << list.ordinates.size() << " ordinates for "
                          << list.id.name() << " (uncertified until 'zeros certify')\n";
                return kExitPass;
            }
            if (*z_export) {
                iqf::LFunctionId id = make_id();
                iqf::ZeroList list = iqf::import_zeros(iqf::zero_cache_path(cache_dir, id));
                if (z_file.empty()) {
                    std::cout << serialize_zero_list(list);
                } else {
                    iqf::export_zeros(list, z_file);
                    std::cout << "wrote " << z_file << "\n";
                }
                return kExitPass;
            }
            if (*z_certify) {
                iqf::LFunctionId id = make_id();
                fs::path file = iqf::zero_cache_path(cache_dir, id);
                iqf::ZeroList list = iqf::import_zeros(file);
                bool ok = iqf::certify(list);
                iqf::export_zeros(list, file);
                std::cout << id.name() << ": certified=" << (ok ? 1 : 0) << " ("
                          << list.ordinates.size() << " ordinates up to " << num12(list.height)
                          << ")\n";
                return ok ? kExitPass : kExitNumericFail;
            }
        }
        if (*verify_cmd)
            return cmd_verify(v_d, v_fn, v_height, v_tol, cache_dir, v_out, v_compute_missing);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFail;
    }
    return kExitUsage;
}
