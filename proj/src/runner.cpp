#include "diagrec/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "diagrec/csv.hpp"
#include "diagrec/errors.hpp"
#include "diagrec/floquet.hpp"
#include "diagrec/genfunc.hpp"
#include "diagrec/hicks.hpp"
#include "diagrec/lattice.hpp"
#include "diagrec/recurrence.hpp"
#include "diagrec/way.hpp"

namespace diagrec {

namespace {

using nlohmann::json;

json complex_json(Complex v) {
    return json{{"re", v.real()}, {"im", v.imag()}, {"modulus", std::abs(v)}};
}

json term_list_json(const BivariatePoly<Rational>& p) {
    json out = json::array();
    for (const auto& [m, n, coeff] : p.grlex_terms())
        out.push_back(json{{"m", m}, {"n", n}, {"coeff", rational_to_string(coeff)}});
    return out;
}

std::string out_path(const RunOptions& opts, const std::string& name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
}

void write_report(const RunOptions& opts, const json& report) {
    std::ofstream os(out_path(opts, "report.json"), std::ios::binary | std::ios::trunc);
    if (!os)
        throw ValidationError("cannot write report.json under '" + opts.out_dir + "'");
    os << report.dump(2) << '\n';
}

// Every point of the window whose diagonal level is zero.
std::vector<MultiIndex> window_bases(int m, std::span<const std::uint64_t> window) {
    std::vector<MultiIndex> bases;
    std::vector<std::uint64_t> t(static_cast<std::size_t>(m), 0);
    while (true) {
        if (*std::min_element(t.begin(), t.end()) == 0) bases.emplace_back(t);
        int axis = m - 1;
        for (; axis >= 0; --axis) {
            const auto a = static_cast<std::size_t>(axis);
            if (++t[a] < window[a]) break;
            t[a] = 0;
        }
        if (axis < 0) return bases;
    }
}

const CoefficientProvider& require_coefficients(const JobConfig& cfg) {
    if (!cfg.coefficients)
        throw ValidationError("this command needs a 'coefficients' block");
    return *cfg.coefficients;
}

void require_window(const JobConfig& cfg) {
    if (cfg.window.empty())
        throw ValidationError("this command needs a 'window'");
}

MultiIndex require_at(const JobConfig& cfg) {
    if (!cfg.at)
        throw ValidationError("this command needs an 'at' point");
    return MultiIndex(*cfg.at);
}

DiagonalRecurrence make_recurrence(const JobConfig& cfg) {
    if (!cfg.boundary)
        throw ValidationError("this command needs a 'boundary' block");
    ForcingProvider forcing =
        cfg.forcing ? *cfg.forcing : ForcingProvider::zero(cfg.dimension, cfg.order);
    return DiagonalRecurrence(require_coefficients(cfg), std::move(forcing), *cfg.boundary);
}

int run_check(const JobConfig& cfg, json& report) {
    const auto violations = validate(cfg);
    json list = json::array();
    for (const auto& v : violations) list.push_back(describe(v));
    report["outputs"]["violations"] = list;
    report["outputs"]["valid"] = violations.empty();
    return violations.empty() ? 0 : 1;
}

int run_solve(const JobConfig& cfg, const RunOptions& opts, double tol, json& report) {
    require_window(cfg);
    const DiagonalRecurrence rec = make_recurrence(cfg);
    const SolutionField field = solve_iterative(rec, cfg.window, cfg.sweep, opts.jobs);

    const double residual = recurrence_residual(field, rec.A, &rec.b);
    report["residuals"]["recurrence"] = residual;
    if (residual > tol)
        throw NumericError("recurrence residual " + format_double(residual) +
                           " exceeds tolerance " + format_double(tol));

    if (cfg.at) {
        const MultiIndex t = require_at(cfg);
        if (!field.in_window(t))
            throw ValidationError("'at' point lies outside the window");
        const Vector direct = solve_explicit(rec, t);
        const Vector swept = field.at(t);
        const double diff = (direct - swept).inf_norm() /
                            std::max(1.0, swept.inf_norm());
        report["residuals"]["explicit_vs_iterative"] = diff;
        if (diff > tol)
            throw NumericError("closed form disagrees with the sweep at (" + t.to_string() +
                               ") by " + format_double(diff));
    }

    const std::string csv = out_path(opts, "field.csv");
    write_field_csv(csv, field);
    report["outputs"]["field_csv"] = "field.csv";
    return 0;
}

int run_phi(const JobConfig& cfg, const RunOptions& opts, json& report) {
    const auto& A = require_coefficients(cfg);
    const MultiIndex t = require_at(cfg);
    const Matrix phi = fundamental_matrix(A, t);

    std::ofstream os(out_path(opts, "phi.csv"), std::ios::binary | std::ios::trunc);
    if (!os)
        throw ValidationError("cannot write phi.csv under '" + opts.out_dir + "'");
    os << "row,col,re,im\n";
    for (std::size_t i = 0; i < phi.rows(); ++i)
        for (std::size_t j = 0; j < phi.cols(); ++j)
            os << i << ',' << j << ',' << format_double(phi.at(i, j).real()) << ','
               << format_double(phi.at(i, j).imag()) << '\n';

    report["outputs"]["phi_csv"] = "phi.csv";
    report["outputs"]["mu"] = mu(t);
    return 0;
}

int run_floquet(const JobConfig& cfg, const RunOptions& opts, double tol, json& report) {
    const auto& A = require_coefficients(cfg);
    require_window(cfg);
    if (!cfg.period)
        throw ValidationError("floquet needs a 'period'");
    const int T = *cfg.period;

    const PeriodicityCheck check = check_diagonal_periodicity(A, T, cfg.window);
    report["outputs"]["periodic"] = check.periodic;
    if (!check.periodic) {
        report["outputs"]["counterexample"] = check.counterexample->to_string();
        return 1;
    }

    const FloquetDecomposition dec(A, T);
    const auto bases = window_bases(cfg.dimension, cfg.window);

    std::vector<MultiplierRow> rows;
    for (const auto& base : bases)
        for (const Complex lambda : dec.multipliers(base).flattened())
            rows.push_back({base, lambda});
    write_multipliers_csv(out_path(opts, "multipliers.csv"), rows);
    report["outputs"]["multipliers_csv"] = "multipliers.csv";

    // Factorization residual Phi = P B^mu over the whole window, periodicity
    // of P, and the power identity Phi(t + kT*1) = Phi(t) D(t)^k.
    double reconstruction = 0.0, periodic_factor = 0.0, power_identity = 0.0;
    SolutionField probe(cfg.dimension, cfg.order, cfg.window);
    MultiIndex t = probe.first();
    do {
        const Matrix phi = fundamental_matrix(A, t);
        const Matrix pb = dec.periodic_factor(t) *
                          matrix_power(dec.root(t), static_cast<std::int64_t>(mu(t)));
        reconstruction = std::max(reconstruction, relative_residual(pb, phi));

        bool shifted_inside = true;
        for (int axis = 0; axis < cfg.dimension; ++axis)
            shifted_inside = shifted_inside &&
                             t[axis] + static_cast<std::uint64_t>(T) <
                                 cfg.window[static_cast<std::size_t>(axis)];
        if (shifted_inside) {
            const MultiIndex up = shift(t, T);
            periodic_factor = std::max(
                periodic_factor,
                relative_residual(dec.periodic_factor(up), dec.periodic_factor(t)));
        }
    } while (probe.next(t));
    for (const auto& base : bases)
        for (int k = 1; k <= 2; ++k)
            power_identity = std::max(power_identity, verify_power_identity(A, T, base, k));

    report["residuals"]["reconstruction"] = reconstruction;
    report["residuals"]["periodic_factor"] = periodic_factor;
    report["residuals"]["power_identity"] = power_identity;
    const double worst = std::max({reconstruction, periodic_factor, power_identity});
    if (worst > tol)
        throw NumericError("floquet verification residual " + format_double(worst) +
                           " exceeds tolerance " + format_double(tol));
    return 0;
}

int run_hicks(const JobConfig& cfg, const RunOptions& opts, double tol, json& report) {
    if (!cfg.hicks)
        throw ValidationError("hicks needs a 'hicks' block");
    const HicksParams& params = *cfg.hicks;
    report["outputs"]["period"] = params.period();

    if (params.is_constant()) {
        const HicksClassification cls = classify(params);
        json c;
        c["discriminant"] = cls.discriminant;
        c["root_kind"] = cls.root_kind == RootKind::RealDistinct ? "real-distinct"
                         : cls.root_kind == RootKind::RealDouble ? "real-double"
                                                                 : "complex-pair";
        c["roots"] = json::array({complex_json(cls.roots.roots[0]),
                                  complex_json(cls.roots.roots[1])});
        c["stable"] = cls.stable;
        c["accelerator"] = cls.accelerator == AcceleratorClass::Decelerator ? "decelerator"
                           : cls.accelerator == AcceleratorClass::Keeper    ? "keeper"
                                                                            : "accelerator";
        report["outputs"]["classification"] = c;
    }

    const MultiIndex origin(std::vector<std::uint64_t>(static_cast<std::size_t>(cfg.dimension), 0));
    const Quadratic multipliers = hicks_floquet_multipliers(params, origin);
    report["outputs"]["multipliers"] = json::array(
        {complex_json(multipliers.roots[0]), complex_json(multipliers.roots[1])});

    if (cfg.window.empty() || !cfg.boundary) return 0;

    const SolutionField scalar = solve_second_order(params, *cfg.boundary, cfg.window, opts.jobs);
    write_field_csv(out_path(opts, "hicks_field.csv"), scalar);
    report["outputs"]["hicks_field_csv"] = "hicks_field.csv";

    // Cross-check the scalar fill against the (Y, C) first-order system on a
    // window shrunk by one per axis (the derived boundary tables are one
    // entry shorter than the scalar layers).
    std::vector<std::uint64_t> inner(cfg.window.begin(), cfg.window.end());
    for (auto& e : inner) e = std::max<std::uint64_t>(1, e - 1);
    const DiagonalRecurrence system(periodic_system_provider(params, cfg.dimension),
                                    ForcingProvider::zero(cfg.dimension, 2),
                                    income_consumption_boundary(params, *cfg.boundary));
    const SolutionField yc = solve_iterative(system, inner, cfg.sweep, opts.jobs);

    double cross = 0.0;
    MultiIndex t = yc.first();
    do {
        const double y_scalar = scalar.component(t, 0).real();
        const double y_system = yc.component(t, 0).real();
        cross = std::max(cross, std::abs(y_scalar - y_system) /
                                    std::max(1.0, std::abs(y_scalar)));
    } while (yc.next(t));
    report["residuals"]["formulation_cross_check"] = cross;
    if (cross > tol)
        throw NumericError("scalar and (Y,C) formulations disagree by " + format_double(cross));

    const std::vector<std::string> names{"Y", "C"};
    json warnings = json::array();
    for (const auto& w : economic_warnings(yc, names))
        warnings.push_back(json{{"t", w.t.to_string()},
                                {"variable", w.variable},
                                {"value", w.value}});
    report["outputs"]["warnings"] = warnings;
    return 0;
}

int run_gf(const JobConfig& cfg, const RunOptions& opts, json& report) {
    if (!cfg.gf)
        throw ValidationError("gf needs a 'gf' block");
    const GfBlock& block = *cfg.gf;

    const RationalGF<Rational> gf =
        block.variant == 1 ? build_gf_variant1(block.gamma, block.alpha, block.layers)
                           : build_gf_variant2(block.gamma, block.alpha, block.layers);
    report["outputs"]["variant"] = block.variant;
    report["outputs"]["numerator"] = term_list_json(gf.numerator);
    report["outputs"]["denominator"] = term_list_json(gf.denominator);

    const BivariateSeries<Rational> series = expand(gf, block.expand_x, block.expand_y);
    write_gf_csv(out_path(opts, "gf_coeffs.csv"), to_double_series(series));
    report["outputs"]["gf_coeffs_csv"] = "gf_coeffs.csv";

    const auto residuals =
        verify_functional_equation(block.gamma, block.alpha, block.layers, gf, series);
    report["residuals"]["functional_equation"] = residuals.series_defect;
    report["residuals"]["kernel_identity"] = residuals.kernel_identity;
    if (residuals.series_defect != 0.0 || residuals.kernel_identity != 0.0)
        throw NumericError("exact functional equation left a nonzero residual");

    // Independent route: fill the same grid with the scalar recurrence from
    // the boundary layers and compare cell by cell.
    const double gamma_d = rational_to_double(block.gamma);
    const double alpha_d = rational_to_double(block.alpha);
    const int mx = block.expand_x, ny = block.expand_y;

    FaceTable face_t1_zero{{static_cast<std::uint64_t>(ny) + 1}, {}};
    FaceTable face_t2_zero{{static_cast<std::uint64_t>(mx) + 1}, {}};
    FaceTable face_t1_one{{static_cast<std::uint64_t>(ny) + 1}, {}};
    FaceTable face_t2_one{{static_cast<std::uint64_t>(mx) + 1}, {}};
    for (int n = 0; n <= ny; ++n) {
        face_t1_zero.values.push_back(Vector{rational_to_double(block.layers.at_psi0(n))});
        face_t1_one.values.push_back(Vector{rational_to_double(
            n == 0 ? block.layers.at_phi0(1) : block.layers.at_psi1(n))});
    }
    for (int m = 0; m <= mx; ++m) {
        face_t2_zero.values.push_back(Vector{rational_to_double(block.layers.at_phi0(m))});
        face_t2_one.values.push_back(Vector{rational_to_double(
            m == 0 ? block.layers.at_psi0(1) : block.layers.at_phi1(m))});
    }
    const BoundaryData layers(2, 1, ExtensionPolicy::Strict,
                              {std::move(face_t1_zero), std::move(face_t2_zero)},
                              {std::move(face_t1_one), std::move(face_t2_one)});
    const std::vector<std::uint64_t> window{static_cast<std::uint64_t>(mx) + 1,
                                            static_cast<std::uint64_t>(ny) + 1};
    const SolutionField field = solve_second_order(
        HicksParams::constant(gamma_d, alpha_d), layers, window, opts.jobs);

    double field_diff = 0.0;
    for (int m = 0; m <= mx; ++m)
        for (int n = 0; n <= ny; ++n) {
            const double coeff = rational_to_double(series.at(m, n));
            const double direct =
                field.component(MultiIndex{static_cast<std::uint64_t>(m),
                                           static_cast<std::uint64_t>(n)}, 0)
                    .real();
            field_diff = std::max(field_diff,
                                  std::abs(coeff - direct) / std::max(1.0, std::abs(direct)));
        }
    report["residuals"]["field_cross_check"] = field_diff;
    if (field_diff > 1e-10)
        throw NumericError("series coefficients disagree with the direct fill by " +
                           format_double(field_diff));
    return 0;
}

int run_way(const JobConfig& cfg, const RunOptions& opts, double tol, json& report) {
    if (!cfg.way)
        throw ValidationError("way needs a 'way' block");
    const WayBlock& block = *cfg.way;
    const MultiIndex t(block.t);

    const Vector closed = closed_form_constant(block.a1, block.a2, block.x0, t);
    const PathRecurrence rec{AffineMap::from_linear(block.a1), AffineMap::from_linear(block.a2),
                             block.x0};
    const Vector stepped = solve_path(rec, t);

    const double diff = (closed - stepped).inf_norm() / std::max(1.0, closed.inf_norm());
    report["residuals"]["closed_vs_stepped"] = diff;
    if (diff > tol)
        throw NumericError("path iteration disagrees with the closed form by " +
                           format_double(diff));

    json result = json::array();
    for (std::size_t i = 0; i < closed.size(); ++i) result.push_back(closed[i].real());
    report["outputs"]["result"] = result;
    report["outputs"]["t"] = t.to_string();
    return 0;
}

} // namespace

int run_command(const std::string& command, const JobConfig& cfg, const RunOptions& opts) {
    if (opts.format != "csv")
        throw ValidationError("unsupported output format '" + opts.format + "'");
    if (opts.jobs < 1)
        throw ValidationError("jobs must be at least 1");
    std::filesystem::create_directories(opts.out_dir);
    const double tol = opts.tol.value_or(cfg.tolerance);

    json report;
    report["command"] = command;
    report["inputs"] = {{"dimension", cfg.dimension},
                        {"order", cfg.order},
                        {"tolerance", tol},
                        {"jobs", opts.jobs}};
    if (!cfg.window.empty()) report["inputs"]["window"] = cfg.window;
    if (cfg.period) report["inputs"]["period"] = *cfg.period;
    report["outputs"] = json::object();
    report["residuals"] = json::object();

    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    if (command == "check")
        code = run_check(cfg, report);
    else if (command == "solve")
        code = run_solve(cfg, opts, tol, report);
    else if (command == "phi")
        code = run_phi(cfg, opts, report);
    else if (command == "floquet")
        code = run_floquet(cfg, opts, tol, report);
    else if (command == "hicks")
        code = run_hicks(cfg, opts, tol, report);
    else if (command == "gf")
        code = run_gf(cfg, opts, report);
    else if (command == "way")
        code = run_way(cfg, opts, tol, report);
    else
        throw ValidationError("unknown command '" + command + "'");

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report["wall_time_s"] = elapsed.count();
    write_report(opts, report);
    return code;
}

} // namespace diagrec
