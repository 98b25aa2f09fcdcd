#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagrec/boundary.hpp"
#include "diagrec/genfunc.hpp"
#include "diagrec/hicks.hpp"
#include "diagrec/matrix.hpp"
#include "diagrec/providers.hpp"
#include "diagrec/rational.hpp"
#include "diagrec/recurrence.hpp"

namespace diagrec {

// Generating-function job: exact scalars throughout, expansion grid
// truncation per axis.
struct GfBlock {
    Rational gamma, alpha;
    BoundaryLayers<Rational> layers;
    int variant = 1;
    int expand_x = 8, expand_y = 8;
};

// Order-dependent path problem x(t) = A2^t2 A1^t1 x0.
struct WayBlock {
    Matrix a1, a2;
    Vector x0;
    std::vector<std::uint64_t> t;
};

struct JobConfig {
    int dimension = 2;
    int order = 1;
    std::vector<std::uint64_t> window;
    double tolerance = 1e-8;
    std::optional<int> period;
    SweepOrder sweep = SweepOrder::DiagonalLines;

    std::optional<CoefficientProvider> coefficients;
    std::optional<ForcingProvider> forcing;
    std::optional<BoundaryData> boundary;
    std::optional<HicksParams> hicks;
    std::optional<GfBlock> gf;
    std::optional<WayBlock> way;
    std::optional<std::vector<std::uint64_t>> at;
};

// Structural pass: JSON shape, dimensions, provider construction. Malformed
// input is a ValidationError; boundary compatibility is not checked here.
JobConfig parse_structure(const std::string& json_text);

// Semantic pass: boundary face compatibility. Empty result means valid.
std::vector<CompatibilityViolation> validate(const JobConfig& config);

std::string describe(const CompatibilityViolation& v);

// parse_structure + validate; any violation is a ValidationError naming the
// offending face pair.
JobConfig parse_config(const std::string& json_text);
JobConfig parse_config_file(const std::string& path);

} // namespace diagrec
