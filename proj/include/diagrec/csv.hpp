#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "diagrec/genfunc.hpp"
#include "diagrec/lattice.hpp"
#include "diagrec/matrix.hpp"
#include "diagrec/recurrence.hpp"

namespace diagrec {

// Shortest decimal that round-trips the exact double, so repeated runs
// produce byte-identical files.
std::string format_double(double v);
double parse_double(std::string_view text);

// Field schema: header "t1,...,tm,component,value", one row per (point,
// component) in lexicographic point order with components 1-based. Values
// must be real up to 1e-9 relative imaginary dust; the real part is written.
void write_field_csv(std::ostream& os, const SolutionField& field);
void write_field_csv(const std::string& path, const SolutionField& field);

// Rebuilds a field from the schema above; the window is the smallest
// rectangle containing every row.
SolutionField read_field_csv(std::istream& is);
SolutionField read_field_csv_file(const std::string& path);

// Generating-function coefficient schema: "m,n,coeff" over the full
// truncation grid in row-major order.
void write_gf_csv(std::ostream& os, const BivariateSeries<double>& series);
void write_gf_csv(const std::string& path, const BivariateSeries<double>& series);

struct MultiplierRow {
    MultiIndex base;
    Complex value;
};

// Multiplier schema: "base_t1,...,base_tm,re,im,modulus", rows in the order
// given by the caller.
void write_multipliers_csv(std::ostream& os, std::span<const MultiplierRow> rows);
void write_multipliers_csv(const std::string& path, std::span<const MultiplierRow> rows);

} // namespace diagrec
