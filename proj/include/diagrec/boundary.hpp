#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diagrec/lattice.hpp"
#include "diagrec/matrix.hpp"

namespace diagrec {

enum class ExtensionPolicy { Strict, Zero };

// Rectangular table of n-vectors over a window of N^(m-1), row-major.
struct FaceTable {
    std::vector<std::uint64_t> extents;  // exclusive upper bounds, one per reduced axis
    std::vector<Vector> values;          // prod(extents) entries

    bool contains(std::span<const std::uint64_t> reduced) const;
    const Vector& at(std::span<const std::uint64_t> reduced) const;
};

struct CompatibilityViolation {
    int axis_a = 0, axis_b = 0;  // 1-based face axes
    MultiIndex at;               // full m-dimensional point of the mismatch
    std::string detail;
};

// Boundary data for a diagonal recurrence: one face table per axis on the
// layer t^beta = 0, and optionally a second set on t^beta = 1 (needed by
// second-order problems). A face table stores f_beta as a function of the
// m-1 coordinates that remain after dropping axis beta.
class BoundaryData {
public:
    BoundaryData(int m, int n, ExtensionPolicy policy, std::vector<FaceTable> layer0,
                 std::vector<FaceTable> layer1 = {});

    int dimension() const { return m_; }
    int order() const { return n_; }
    ExtensionPolicy policy() const { return policy_; }
    bool has_layer1() const { return !layer1_.empty(); }

    const FaceTable& face(int layer, int axis) const;

    // Value at a full lattice point t with t[axis] == layer; reads the face
    // table at t with that coordinate dropped. Out-of-table reads yield zero
    // under ExtensionPolicy::Zero and throw under Strict.
    Vector read(int layer, int axis, const MultiIndex& t) const;

    // First axis with t[axis] == layer, as used for boundary evaluation.
    std::optional<int> boundary_axis(int layer, const MultiIndex& t) const;

private:
    int m_, n_;
    ExtensionPolicy policy_;
    std::vector<FaceTable> layer0_, layer1_;
};

// Pairwise face agreement on shared sub-faces. For layer-0 faces this is
// f_alpha|t^beta=0 = f_beta|t^alpha=0; when a layer-1 set is present the
// analogous layer-1/layer-1 and layer-0/layer-1 conditions are checked too.
// Comparisons are exact; tables either agree or they do not.
std::vector<CompatibilityViolation> check_compatibility(const BoundaryData& boundary);

} // namespace diagrec
