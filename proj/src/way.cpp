#include "diagrec/way.hpp"

namespace diagrec {

AffineMap AffineMap::from_linear(Matrix m) {
    if (!m.square())
        throw ValidationError("affine maps need a square linear part");
    Vector zero(m.rows());
    return {std::move(m), std::move(zero)};
}

Vector AffineMap::apply(const Vector& x) const {
    return linear * x + offset;
}

Vector solve_path(const PathRecurrence& rec, const MultiIndex& t) {
    const AffineMap steps[] = {rec.step1, rec.step2};
    return solve_path_chained(steps, rec.x0, t);
}

Vector closed_form_constant(const Matrix& a1, const Matrix& a2, const Vector& x0,
                            const MultiIndex& t) {
    if (t.dimension() != 2)
        throw ValidationError("closed_form_constant expects a two-axis time point");
    const Matrix p1 = matrix_power(a1, static_cast<std::int64_t>(t[0]));
    const Matrix p2 = matrix_power(a2, static_cast<std::int64_t>(t[1]));
    return p2 * (p1 * x0);
}

Vector solve_path_chained(std::span<const AffineMap> steps, const Vector& x0,
                          const MultiIndex& t) {
    if (static_cast<int>(steps.size()) != t.dimension())
        throw ValidationError("one affine step per axis is required");
    Vector x = x0;
    for (std::size_t axis = 0; axis < steps.size(); ++axis) {
        if (steps[axis].linear.rows() != x.size())
            throw ValidationError("affine step size does not match the state");
        for (std::uint64_t k = 0; k < t[static_cast<int>(axis)]; ++k)
            x = steps[axis].apply(x);
    }
    return x;
}

} // namespace diagrec
