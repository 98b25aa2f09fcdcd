#include "diagrec/boundary.hpp"

#include <algorithm>

namespace diagrec {

namespace {

std::size_t linear_index(std::span<const std::uint64_t> extents,
                         std::span<const std::uint64_t> reduced) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < extents.size(); ++i)
        idx = idx * static_cast<std::size_t>(extents[i]) + static_cast<std::size_t>(reduced[i]);
    return idx;
}

std::vector<std::uint64_t> drop_axis(const MultiIndex& t, int axis) {
    std::vector<std::uint64_t> reduced;
    reduced.reserve(static_cast<std::size_t>(t.dimension() - 1));
    for (int i = 0; i < t.dimension(); ++i)
        if (i != axis) reduced.push_back(t[i]);
    return reduced;
}

// Position of full-space axis i inside the reduced coordinates of the face
// on `dropped`.
int reduced_position(int i, int dropped) {
    return i < dropped ? i : i - 1;
}

} // namespace

bool FaceTable::contains(std::span<const std::uint64_t> reduced) const {
    if (reduced.size() != extents.size()) return false;
    for (std::size_t i = 0; i < extents.size(); ++i)
        if (reduced[i] >= extents[i]) return false;
    return true;
}

const Vector& FaceTable::at(std::span<const std::uint64_t> reduced) const {
    return values[linear_index(extents, reduced)];
}

BoundaryData::BoundaryData(int m, int n, ExtensionPolicy policy, std::vector<FaceTable> layer0,
                           std::vector<FaceTable> layer1)
    : m_(m), n_(n), policy_(policy), layer0_(std::move(layer0)), layer1_(std::move(layer1)) {
    if (m_ < 1 || n_ < 1)
        throw ValidationError("boundary data needs m >= 1 and n >= 1");
    auto check_layer = [&](const std::vector<FaceTable>& faces, const char* name) {
        if (static_cast<int>(faces.size()) != m_)
            throw ValidationError(std::string(name) + " must have one face table per axis");
        for (const auto& f : faces) {
            if (static_cast<int>(f.extents.size()) != m_ - 1)
                throw ValidationError(std::string(name) + " face tables must have m-1 axes");
            std::size_t expected = 1;
            for (auto e : f.extents) expected *= static_cast<std::size_t>(e);
            if (f.values.size() != expected)
                throw ValidationError(std::string(name) + " face table value count mismatch");
            for (const auto& v : f.values)
                if (static_cast<int>(v.size()) != n_)
                    throw ValidationError(std::string(name) + " face values must be n-vectors");
        }
    };
    check_layer(layer0_, "layer 0");
    if (!layer1_.empty()) check_layer(layer1_, "layer 1");
}

const FaceTable& BoundaryData::face(int layer, int axis) const {
    const auto& faces = layer == 0 ? layer0_ : layer1_;
    if (layer < 0 || layer > 1 || (layer == 1 && layer1_.empty()))
        throw ValidationError("boundary layer " + std::to_string(layer) + " is not available");
    if (axis < 0 || axis >= m_)
        throw ValidationError("boundary face axis out of range");
    return faces[static_cast<std::size_t>(axis)];
}

Vector BoundaryData::read(int layer, int axis, const MultiIndex& t) const {
    if (t.dimension() != m_)
        throw ValidationError("boundary read with a point of the wrong dimension");
    if (t[axis] != static_cast<std::uint64_t>(layer))
        throw ValidationError("boundary read off the requested face");
    const FaceTable& f = face(layer, axis);
    const auto reduced = drop_axis(t, axis);
    if (f.contains(reduced))
        return f.at(reduced);
    if (policy_ == ExtensionPolicy::Zero)
        return Vector::zero(static_cast<std::size_t>(n_));
    throw ValidationError("boundary value unavailable: layer " + std::to_string(layer) +
                          " face t^" + std::to_string(axis + 1) + " has no entry at t=" +
                          t.to_string());
}

std::optional<int> BoundaryData::boundary_axis(int layer, const MultiIndex& t) const {
    for (int i = 0; i < m_; ++i)
        if (t[i] == static_cast<std::uint64_t>(layer)) return i;
    return std::nullopt;
}

namespace {

// Shared sub-face of face (layer_a, axis_a) and face (layer_b, axis_b):
// all t with t[axis_a] = layer_a and t[axis_b] = layer_b that both tables
// cover. Appends a violation per mismatching point.
void check_face_pair(const BoundaryData& b, int layer_a, int axis_a, int layer_b, int axis_b,
                     std::vector<CompatibilityViolation>& out) {
    const int m = b.dimension();
    const FaceTable& fa = b.face(layer_a, axis_a);
    const FaceTable& fb = b.face(layer_b, axis_b);

    // The fixed coordinate of the other face must be inside each table.
    const int pos_b_in_a = reduced_position(axis_b, axis_a);
    const int pos_a_in_b = reduced_position(axis_a, axis_b);
    if (fa.extents[static_cast<std::size_t>(pos_b_in_a)] <= static_cast<std::uint64_t>(layer_b))
        return;
    if (fb.extents[static_cast<std::size_t>(pos_a_in_b)] <= static_cast<std::uint64_t>(layer_a))
        return;

    std::vector<int> free_axes;
    std::vector<std::uint64_t> bounds;
    for (int i = 0; i < m; ++i) {
        if (i == axis_a || i == axis_b) continue;
        const auto ea = fa.extents[static_cast<std::size_t>(reduced_position(i, axis_a))];
        const auto eb = fb.extents[static_cast<std::size_t>(reduced_position(i, axis_b))];
        free_axes.push_back(i);
        bounds.push_back(std::min(ea, eb));
    }
    for (auto bound : bounds)
        if (bound == 0) return;

    std::vector<std::uint64_t> u(free_axes.size(), 0);
    while (true) {
        std::vector<std::uint64_t> full(static_cast<std::size_t>(m), 0);
        full[static_cast<std::size_t>(axis_a)] = static_cast<std::uint64_t>(layer_a);
        full[static_cast<std::size_t>(axis_b)] = static_cast<std::uint64_t>(layer_b);
        for (std::size_t i = 0; i < free_axes.size(); ++i)
            full[static_cast<std::size_t>(free_axes[i])] = u[i];
        MultiIndex t(full);

        const Vector va = b.read(layer_a, axis_a, t);
        const Vector vb = b.read(layer_b, axis_b, t);
        if (!(va == vb)) {
            out.push_back({axis_a + 1, axis_b + 1, t,
                           "layer-" + std::to_string(layer_a) + " face t^" +
                               std::to_string(axis_a + 1) + " and layer-" +
                               std::to_string(layer_b) + " face t^" + std::to_string(axis_b + 1) +
                               " disagree at t=" + t.to_string()});
        }

        // odometer over the free axes
        std::size_t d = u.size();
        while (d > 0) {
            --d;
            if (++u[d] < bounds[d]) break;
            u[d] = 0;
            if (d == 0) return;
        }
        if (u.empty()) return;
    }
}

} // namespace

std::vector<CompatibilityViolation> check_compatibility(const BoundaryData& boundary) {
    std::vector<CompatibilityViolation> out;
    const int m = boundary.dimension();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            check_face_pair(boundary, 0, a, 0, b, out);
    if (boundary.has_layer1()) {
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                check_face_pair(boundary, 1, a, 1, b, out);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b) check_face_pair(boundary, 0, a, 1, b, out);
    }
    return out;
}

} // namespace diagrec
