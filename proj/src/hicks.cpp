#include "diagrec/hicks.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "diagrec/floquet.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagrec {

namespace {

double phase_value(const std::vector<double>& phases, std::int64_t k) {
    const auto len = static_cast<std::int64_t>(phases.size());
    const std::int64_t idx = ((k % len) + len) % len;
    return phases[static_cast<std::size_t>(idx)];
}

void validate_params(const HicksParams& p) {
    if (p.gamma.empty() || p.alpha.empty())
        throw ValidationError("hicks parameters need at least one phase value");
    if (p.gamma.size() != p.alpha.size() && p.gamma.size() != 1 && p.alpha.size() != 1)
        throw ValidationError("hicks phase sequence lengths disagree");
    for (double g : p.gamma)
        if (!(g > 0.0 && g < 1.0))
            throw ValidationError("gamma out of (0,1): " + std::to_string(g));
    for (double a : p.alpha)
        if (!(a > 0.0))
            throw ValidationError("alpha must be positive: " + std::to_string(a));
}

} // namespace

HicksParams HicksParams::constant(double gamma, double alpha) {
    HicksParams p{{gamma}, {alpha}};
    validate_params(p);
    return p;
}

HicksParams HicksParams::periodic(std::vector<double> gamma, std::vector<double> alpha) {
    HicksParams p{std::move(gamma), std::move(alpha)};
    validate_params(p);
    return p;
}

bool HicksParams::is_constant() const {
    return gamma.size() == 1 && alpha.size() == 1;
}

int HicksParams::period() const {
    return std::lcm(static_cast<int>(gamma.size()), static_cast<int>(alpha.size()));
}

double HicksParams::gamma_at_phase(std::int64_t k) const { return phase_value(gamma, k); }
double HicksParams::alpha_at_phase(std::int64_t k) const { return phase_value(alpha, k); }

Matrix constant_system_matrix(const HicksParams& params) {
    if (!params.is_constant())
        throw ValidationError("constant_system_matrix needs constant parameters");
    const double g = params.gamma[0];
    const double a = params.alpha[0];
    return Matrix{{g + a, -a / g}, {g, 0.0}};
}

CoefficientProvider periodic_system_provider(const HicksParams& params, int m) {
    validate_params(params);
    const int T = params.period();
    return CoefficientProvider::callback(
        m, 2,
        [params](const MultiIndex& t) {
            const auto k = static_cast<std::int64_t>(mu(t));
            const double g = params.gamma_at_phase(k);
            const double a = params.alpha_at_phase(k);
            const double g_prev = params.gamma_at_phase(k - 1);
            return Matrix{{g + a, -a / g_prev}, {g, 0.0}};
        },
        T);
}

CoefficientProvider companion_provider(const HicksParams& params, int m) {
    validate_params(params);
    const int T = params.period();
    return CoefficientProvider::callback(
        m, 2,
        [params](const MultiIndex& t) {
            const auto k = static_cast<std::int64_t>(mu(t));
            const double g = params.gamma_at_phase(k + 1);
            const double a = params.alpha_at_phase(k + 1);
            return Matrix{{0.0, 1.0}, {-a, g + a}};
        },
        T);
}

HicksClassification classify(const HicksParams& params) {
    if (!params.is_constant())
        throw ValidationError("classification applies to constant parameters");
    const double g = params.gamma[0];
    const double a = params.alpha[0];

    HicksClassification c;
    c.discriminant = (g + a) * (g + a) - 4.0 * a;
    c.root_kind = c.discriminant > 0.0   ? RootKind::RealDistinct
                  : c.discriminant < 0.0 ? RootKind::ComplexPair
                                         : RootKind::RealDouble;
    c.roots = solve_quadratic(1.0, -(g + a), a);
    c.stable = std::abs(c.roots.roots[0]) < 1.0 && std::abs(c.roots.roots[1]) < 1.0;
    c.accelerator = a < 1.0   ? AcceleratorClass::Decelerator
                    : a > 1.0 ? AcceleratorClass::Accelerator
                              : AcceleratorClass::Keeper;
    return c;
}

namespace {

void validate_scalar_layers(const BoundaryData& layers) {
    if (layers.order() != 1)
        throw ValidationError("second-order problems take scalar (n = 1) layers");
    if (!layers.has_layer1())
        throw ValidationError("second-order problems need both layer 0 and layer 1");
    const auto violations = check_compatibility(layers);
    if (!violations.empty())
        throw ValidationError("incompatible layers: " + violations.front().detail);
}

} // namespace

SolutionField solve_second_order(const HicksParams& params, const BoundaryData& layers,
                                 std::span<const std::uint64_t> window, int threads) {
    validate_params(params);
    validate_scalar_layers(layers);

    SolutionField field(layers.dimension(), 1,
                        std::vector<std::uint64_t>(window.begin(), window.end()));

    std::vector<MultiIndex> bases;
    {
        MultiIndex t = field.first();
        do {
            if (mu(t) == 0) bases.push_back(t);
        } while (field.next(t));
    }

    auto fill_diagonal = [&](const MultiIndex& base) {
        const auto axis = layers.boundary_axis(0, base);
        if (!axis)
            throw ValidationError("diagonal base without a zero component: " + base.to_string());
        const double y0 = layers.read(0, *axis, base)[0].real();
        field.set(base, Vector{y0});
        const MultiIndex t1 = shift(base, 1);
        if (!field.in_window(t1)) return;
        const double y1 = layers.read(1, *axis, t1)[0].real();
        field.set(t1, Vector{y1});
        double prev2 = y0, prev1 = y1;
        std::int64_t level = 2;
        for (MultiIndex t = shift(base, 2); field.in_window(t); t = shift(t, 1), ++level) {
            const double g = params.gamma_at_phase(level - 1);
            const double a = params.alpha_at_phase(level - 1);
            const double y = (g + a) * prev1 - a * prev2;
            field.set(t, Vector{y});
            prev2 = prev1;
            prev1 = y;
        }
    };

    const auto count = static_cast<std::int64_t>(bases.size());
#ifdef _OPENMP
    if (threads > 1) {
        std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) num_threads(threads)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                fill_diagonal(bases[static_cast<std::size_t>(i)]);
            } catch (...) {
#pragma omp critical(diagrec_hicks_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return field;
    }
#endif
    (void)threads;
    for (std::int64_t i = 0; i < count; ++i) fill_diagonal(bases[static_cast<std::size_t>(i)]);
    return field;
}

namespace {

// Face tables for a derived two-component system; the value at a face point s
// combines the layer-0 read at s with the layer-1 read at s+1, so the
// derived extents shrink by one against the layer-1 tables.
BoundaryData derive_two_component(const BoundaryData& layers,
                                  const std::function<Vector(double y0, double y1)>& combine) {
    validate_scalar_layers(layers);
    const int m = layers.dimension();
    std::vector<FaceTable> faces;
    for (int axis = 0; axis < m; ++axis) {
        const FaceTable& l0 = layers.face(0, axis);
        const FaceTable& l1 = layers.face(1, axis);
        FaceTable out;
        out.extents.resize(static_cast<std::size_t>(m - 1));
        for (std::size_t i = 0; i < out.extents.size(); ++i)
            out.extents[i] = std::min(l0.extents[i], l1.extents[i] > 0 ? l1.extents[i] - 1 : 0);
        std::size_t total = 1;
        for (auto e : out.extents) total *= static_cast<std::size_t>(e);
        if (std::any_of(out.extents.begin(), out.extents.end(),
                        [](std::uint64_t e) { return e == 0; }))
            total = 0;
        out.values.reserve(total);

        std::vector<std::uint64_t> u(out.extents.size(), 0);
        for (std::size_t count = 0; count < total; ++count) {
            std::vector<std::uint64_t> full(static_cast<std::size_t>(m), 0);
            for (int i = 0, r = 0; i < m; ++i)
                if (i != axis) full[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(r++)];
            const MultiIndex s(full);
            const double y0 = layers.read(0, axis, s)[0].real();
            const double y1 = layers.read(1, axis, shift(s, 1))[0].real();
            out.values.push_back(combine(y0, y1));

            for (std::size_t d = u.size(); d-- > 0;) {
                if (++u[d] < out.extents[d]) break;
                u[d] = 0;
            }
        }
        faces.push_back(std::move(out));
    }
    return BoundaryData(m, 2, layers.policy(), std::move(faces));
}

} // namespace

BoundaryData companion_boundary(const BoundaryData& layers) {
    return derive_two_component(layers, [](double y0, double y1) { return Vector{y0, y1}; });
}

BoundaryData income_consumption_boundary(const HicksParams& params, const BoundaryData& layers) {
    validate_params(params);
    const double g0 = params.gamma_at_phase(0);
    const double a0 = params.alpha_at_phase(0);
    const double g_prev = params.gamma_at_phase(-1);
    return derive_two_component(layers, [=](double y0, double y1) {
        const double c = g_prev * ((g0 + a0) * y0 - y1) / a0;
        return Vector{y0, c};
    });
}

Quadratic hicks_floquet_multipliers(const HicksParams& params, const MultiIndex& t) {
    validate_params(params);
    if (t.dimension() < 2)
        throw ValidationError("multiplier evaluation needs an m >= 2 time point");
    const int T = params.period();
    const CoefficientProvider A = companion_provider(params, t.dimension());
    const Matrix d = monodromy(A, T, t);

    double alpha_product = 1.0;
    for (int k = 0; k < T; ++k) alpha_product *= params.alpha_at_phase(k);
    const Complex det_d = d.at(0, 0) * d.at(1, 1) - d.at(0, 1) * d.at(1, 0);
    if (std::abs(det_d - alpha_product) > 1e-9 * std::max(1.0, std::abs(alpha_product)))
        throw NumericError("monodromy determinant disagrees with the alpha-phase product");

    return solve_quadratic(1.0, -d.trace(), det_d);
}

std::vector<EconomicWarning> economic_warnings(const SolutionField& field,
                                               std::span<const std::string> variable_names) {
    if (static_cast<int>(variable_names.size()) != field.order())
        throw ValidationError("one variable name per component is required");
    std::vector<EconomicWarning> warnings;
    MultiIndex t = field.first();
    do {
        for (int c = 0; c < field.order(); ++c) {
            const Complex v = field.component(t, c);
            if (v.real() < 0.0)
                warnings.push_back({t, variable_names[static_cast<std::size_t>(c)], v.real()});
        }
    } while (field.next(t));
    return warnings;
}

} // namespace diagrec
