#include "diagrec/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include "diagrec/errors.hpp"

namespace diagrec {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw ValidationError("cannot open '" + path + "' for writing");
    return os;
}

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::uint64_t parse_index_cell(std::string_view cell) {
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || end != cell.data() + cell.size())
        throw ValidationError("bad index cell '" + std::string(cell) + "'");
    return value;
}

double real_part_checked(Complex v) {
    const double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > 1e-9 * scale)
        throw ValidationError("field value " + format_double(v.real()) + "+" +
                              format_double(v.imag()) + "i is not real enough for CSV output");
    return v.real();
}

} // namespace

std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw NumericError("double formatting failed");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
    double value = std::numeric_limits<double>::quiet_NaN();
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw ValidationError("bad numeric cell '" + std::string(text) + "'");
    return value;
}

void write_field_csv(std::ostream& os, const SolutionField& field) {
    for (int axis = 0; axis < field.dimension(); ++axis)
        os << 't' << axis + 1 << ',';
    os << "component,value\n";
    if (field.point_count() == 0) return;
    MultiIndex t = field.first();
    do {
        const Vector v = field.at(t);
        for (int c = 0; c < field.order(); ++c) {
            os << t.to_string() << ',' << c + 1 << ',' << format_double(real_part_checked(v[c]))
               << '\n';
        }
    } while (field.next(t));
}

void write_field_csv(const std::string& path, const SolutionField& field) {
    auto os = open_for_write(path);
    write_field_csv(os, field);
}

SolutionField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ValidationError("field CSV is empty");
    const auto header = split_row(line);
    if (header.size() < 3 || header.back() != "value" || header[header.size() - 2] != "component")
        throw ValidationError("field CSV header must end with component,value");
    const int m = static_cast<int>(header.size()) - 2;
    for (int axis = 0; axis < m; ++axis) {
        const std::string expected = "t" + std::to_string(axis + 1);
        if (header[static_cast<std::size_t>(axis)] != expected)
            throw ValidationError("field CSV header axis " + std::to_string(axis + 1) +
                                  " must be named " + expected);
    }

    std::map<std::vector<std::uint64_t>, std::map<int, double>> rows;
    std::vector<std::uint64_t> window(static_cast<std::size_t>(m), 0);
    int order = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw ValidationError("field CSV row has " + std::to_string(cells.size()) +
                                  " cells, expected " + std::to_string(header.size()));
        std::vector<std::uint64_t> point(static_cast<std::size_t>(m));
        for (int axis = 0; axis < m; ++axis) {
            point[static_cast<std::size_t>(axis)] =
                parse_index_cell(cells[static_cast<std::size_t>(axis)]);
            window[static_cast<std::size_t>(axis)] =
                std::max(window[static_cast<std::size_t>(axis)],
                         point[static_cast<std::size_t>(axis)] + 1);
        }
        const std::uint64_t comp = parse_index_cell(cells[static_cast<std::size_t>(m)]);
        if (comp == 0)
            throw ValidationError("field CSV components are 1-based");
        order = std::max(order, static_cast<int>(comp));
        rows[std::move(point)][static_cast<int>(comp) - 1] =
            parse_double(cells[static_cast<std::size_t>(m) + 1]);
    }
    if (rows.empty())
        throw ValidationError("field CSV has no data rows");

    SolutionField field(m, order, window);
    for (const auto& [point, comps] : rows) {
        Vector v(order);
        for (const auto& [c, value] : comps) v[c] = value;
        field.set(MultiIndex(point), v);
    }
    return field;
}

SolutionField read_field_csv_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ValidationError("cannot open '" + path + "' for reading");
    return read_field_csv(is);
}

void write_gf_csv(std::ostream& os, const BivariateSeries<double>& series) {
    os << "m,n,coeff\n";
    for (int m = 0; m <= series.truncation_x(); ++m)
        for (int n = 0; n <= series.truncation_y(); ++n)
            os << m << ',' << n << ',' << format_double(series.at(m, n)) << '\n';
}

void write_gf_csv(const std::string& path, const BivariateSeries<double>& series) {
    auto os = open_for_write(path);
    write_gf_csv(os, series);
}

void write_multipliers_csv(std::ostream& os, std::span<const MultiplierRow> rows) {
    if (rows.empty())
        throw ValidationError("no multiplier rows to write");
    const int m = rows.front().base.dimension();
    for (int axis = 0; axis < m; ++axis)
        os << "base_t" << axis + 1 << ',';
    os << "re,im,modulus\n";
    for (const auto& row : rows) {
        if (row.base.dimension() != m)
            throw ValidationError("multiplier rows mix base dimensions");
        os << row.base.to_string() << ',' << format_double(row.value.real()) << ','
           << format_double(row.value.imag()) << ',' << format_double(std::abs(row.value))
           << '\n';
    }
}

void write_multipliers_csv(const std::string& path, std::span<const MultiplierRow> rows) {
    auto os = open_for_write(path);
    write_multipliers_csv(os, rows);
}

} // namespace diagrec
