#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diagrec/errors.hpp"

namespace diagrec {

// A point of N^m used as an m-dimensional time index. Components are
// unsigned 64-bit; arithmetic that would leave N^m is a checked error.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<std::uint64_t> components);
    MultiIndex(std::initializer_list<std::uint64_t> components);

    int dimension() const { return static_cast<int>(comps_.size()); }
    std::uint64_t operator[](int axis) const { return comps_[static_cast<std::size_t>(axis)]; }
    std::uint64_t& operator[](int axis) { return comps_[static_cast<std::size_t>(axis)]; }
    std::span<const std::uint64_t> components() const { return comps_; }

    bool operator==(const MultiIndex&) const = default;
    bool operator<(const MultiIndex& other) const;  // lexicographic

    std::string to_string() const;                  // "3,1,2"
    static MultiIndex parse(std::string_view text);

private:
    std::vector<std::uint64_t> comps_;
};

// Diagonal level: the minimum component of t.
std::uint64_t mu(const MultiIndex& t);

struct DiagonalDecomposition {
    MultiIndex base;      // t - mu(t)*1; has at least one zero component
    std::uint64_t level;  // mu(t)

    MultiIndex reconstruct() const;
};

DiagonalDecomposition diag_decompose(const MultiIndex& t);

// t + k*(1,...,1). Negative k that would underflow any component, or
// overflow of the 64-bit components, is a ValidationError.
MultiIndex shift(const MultiIndex& t, std::int64_t k);

} // namespace diagrec
