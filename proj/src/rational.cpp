#include "diagrec/rational.hpp"

#include <charconv>

namespace diagrec {

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        try {
            boost::multiprecision::cpp_int num(std::string(text.substr(0, slash)));
            boost::multiprecision::cpp_int den(std::string(text.substr(slash + 1)));
            if (den == 0) return std::nullopt;
            return Rational(num, den);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (text.find('.') == std::string_view::npos && text.find('e') == std::string_view::npos &&
        text.find('E') == std::string_view::npos) {
        try {
            return Rational(boost::multiprecision::cpp_int(std::string(text)));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    double v = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || p != end) return std::nullopt;
    return rational_from_double(v);
}

std::string rational_to_string(const Rational& r) {
    return r.str();
}

} // namespace diagrec
