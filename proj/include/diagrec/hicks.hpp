#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diagrec/boundary.hpp"
#include "diagrec/eigen.hpp"
#include "diagrec/providers.hpp"
#include "diagrec/recurrence.hpp"

namespace diagrec {

// Multiplier-accelerator parameters: marginal propensity to consume gamma in
// (0,1) and investment coefficient alpha > 0. Each is either constant or a
// phase sequence indexed by the diagonal level mu(t) mod T.
struct HicksParams {
    std::vector<double> gamma, alpha;

    static HicksParams constant(double gamma, double alpha);
    static HicksParams periodic(std::vector<double> gamma, std::vector<double> alpha);

    bool is_constant() const;
    int period() const;  // lcm of the two phase lengths

    double gamma_at_phase(std::int64_t k) const;
    double alpha_at_phase(std::int64_t k) const;
};

enum class RootKind { RealDistinct, RealDouble, ComplexPair };
enum class AcceleratorClass { Decelerator, Keeper, Accelerator };

struct HicksClassification {
    double discriminant;  // (gamma+alpha)^2 - 4 alpha
    RootKind root_kind;
    Quadratic roots;      // of z^2 - (gamma+alpha) z + alpha
    bool stable;          // both |root| < 1
    AcceleratorClass accelerator;
};

// Constant-parameter (Y, C) system matrix [[gamma+alpha, -alpha/gamma],
// [gamma, 0]]; its determinant is alpha.
Matrix constant_system_matrix(const HicksParams& params);

// (Y, C) coefficient family for phase-dependent parameters; the gamma in the
// -alpha(t)/gamma(t-1) entry wraps modulo T at the boundary phase.
CoefficientProvider periodic_system_provider(const HicksParams& params, int m);

// Companion (Y, Z) family with Z(t) = Y(t+1): [[0, 1],
// [-alpha(t+1), gamma(t+1)+alpha(t+1)]].
CoefficientProvider companion_provider(const HicksParams& params, int m);

HicksClassification classify(const HicksParams& params);  // constant params only

// Scalar second-order fill Y(t+2*1) = (gamma+alpha)(t+1*1) Y(t+1*1)
// - alpha(t+1*1) Y(t) from layer-0/layer-1 boundary tables (n = 1, both
// layers present and compatible). Independent diagonals may run on an
// OpenMP team.
SolutionField solve_second_order(const HicksParams& params, const BoundaryData& layers,
                                 std::span<const std::uint64_t> window, int threads = 1);

// (Y, Z) boundary for the companion system, derived from scalar Y layers:
// Z on a face is the layer-1 value one diagonal step up.
BoundaryData companion_boundary(const BoundaryData& layers);

// (Y, C) boundary derived from scalar Y layers by back-substitution
// C(t) = gamma(t-1) ((gamma(t)+alpha(t)) Y(t) - Y(t+1)) / alpha(t).
BoundaryData income_consumption_boundary(const HicksParams& params, const BoundaryData& layers);

// Floquet multipliers of the companion family as the roots of
// z^2 - Tr(D(t)) z + det(D(t)); det(D) is cross-checked against the product
// of the alpha phases before the quadratic is solved.
Quadratic hicks_floquet_multipliers(const HicksParams& params, const MultiIndex& t);

struct EconomicWarning {
    MultiIndex t;
    std::string variable;
    double value;
};

// Negative income/consumption values are economically meaningless but not
// errors; collect them for reporting.
std::vector<EconomicWarning> economic_warnings(const SolutionField& field,
                                               std::span<const std::string> variable_names);

} // namespace diagrec
