#include "diagrec/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace diagrec {

MultiIndex::MultiIndex(std::vector<std::uint64_t> components) : comps_(std::move(components)) {
    if (comps_.empty())
        throw ValidationError("MultiIndex needs at least one component");
}

MultiIndex::MultiIndex(std::initializer_list<std::uint64_t> components)
    : MultiIndex(std::vector<std::uint64_t>(components)) {}

bool MultiIndex::operator<(const MultiIndex& other) const {
    return std::lexicographical_compare(comps_.begin(), comps_.end(),
                                        other.comps_.begin(), other.comps_.end());
}

std::string MultiIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(comps_[i]);
    }
    return out;
}

MultiIndex MultiIndex::parse(std::string_view text) {
    std::vector<std::uint64_t> comps;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p < end) {
        std::uint64_t value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc{} || (next < end && *next != ','))
            throw ValidationError("cannot parse multi-index '" + std::string(text) + "'");
        comps.push_back(value);
        p = next < end ? next + 1 : next;
        if (next < end && next + 1 == end)
            throw ValidationError("trailing comma in multi-index '" + std::string(text) + "'");
    }
    if (comps.empty())
        throw ValidationError("empty multi-index");
    return MultiIndex(std::move(comps));
}

std::uint64_t mu(const MultiIndex& t) {
    std::uint64_t m = t[0];
    for (int i = 1; i < t.dimension(); ++i) m = std::min(m, t[i]);
    return m;
}

MultiIndex DiagonalDecomposition::reconstruct() const {
    return shift(base, static_cast<std::int64_t>(level));
}

DiagonalDecomposition diag_decompose(const MultiIndex& t) {
    const std::uint64_t level = mu(t);
    std::vector<std::uint64_t> base(t.components().begin(), t.components().end());
    for (auto& c : base) c -= level;
    return {MultiIndex(std::move(base)), level};
}

MultiIndex shift(const MultiIndex& t, std::int64_t k) {
    std::vector<std::uint64_t> comps(t.components().begin(), t.components().end());
    for (auto& c : comps) {
        if (k >= 0) {
            const auto step = static_cast<std::uint64_t>(k);
            if (c > std::numeric_limits<std::uint64_t>::max() - step)
                throw ValidationError("multi-index shift overflows component range");
            c += step;
        } else {
            const auto step = static_cast<std::uint64_t>(-(k + 1)) + 1;  // |k| without UB at INT64_MIN
            if (c < step)
                throw ValidationError("multi-index shift by " + std::to_string(k) +
                                      " leaves N^m at t=" + t.to_string());
            c -= step;
        }
    }
    return MultiIndex(std::move(comps));
}

} // namespace diagrec
