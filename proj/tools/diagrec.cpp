#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diagrec/config.hpp"
#include "diagrec/csv.hpp"
#include "diagrec/errors.hpp"
#include "diagrec/runner.hpp"

namespace {

using nlohmann::json;

json json_from_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw diagrec::ValidationError("cannot open '" + path + "'");
    json parsed;
    try {
        is >> parsed;
    } catch (const json::parse_error& e) {
        throw diagrec::ValidationError("invalid JSON in '" + path + "': " + e.what());
    }
    return parsed;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cell;
    std::istringstream is(text);
    while (std::getline(is, cell, sep)) parts.push_back(cell);
    return parts;
}

// "1,1;0,1" -> [[1,1],[0,1]]
json matrix_arg(const std::string& text) {
    json rows = json::array();
    for (const auto& row : split(text, ';')) {
        json cells = json::array();
        for (const auto& cell : split(row, ','))
            cells.push_back(diagrec::parse_double(cell));
        rows.push_back(cells);
    }
    return rows;
}

json vector_arg(const std::string& text) {
    json cells = json::array();
    for (const auto& cell : split(text, ','))
        cells.push_back(diagrec::parse_double(cell));
    return cells;
}

json index_arg(const std::string& text) {
    json cells = json::array();
    for (const auto& cell : split(text, ',')) {
        const double v = diagrec::parse_double(cell);
        if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
            throw diagrec::ValidationError("'" + text + "' is not an index list");
        cells.push_back(static_cast<std::uint64_t>(v));
    }
    return cells;
}

// Numbers stay numbers, anything else is passed through as a rational string.
json scalar_arg(const std::string& text) {
    if (const auto parsed = diagrec::parse_rational(text); parsed)
        return json(text);
    throw diagrec::ValidationError("'" + text + "' is not a number or p/q rational");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diagonal recurrences on multidimensional time"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir = ".", format = "csv";
    double tol = 0.0;
    int jobs = 1;
    app.add_option("--config", config_path, "JSON job description");
    app.add_option("--out", out_dir, "output directory for CSV files and report.json");
    app.add_option("--format", format, "output format (csv)");
    auto* tol_opt = app.add_option("--tol", tol, "verification tolerance override");
    app.add_option("--jobs", jobs, "worker threads for grid fills");

    std::string at_arg, window_arg;
    std::string way_a1, way_a2, way_x0, way_t;
    std::string hicks_gamma, hicks_alpha;
    std::string gf_gamma, gf_alpha, gf_layers_path, gf_expand;
    int period = 0, variant = 0;

    auto* cmd_check = app.add_subcommand("check", "validate a config and its boundary data");
    auto* cmd_solve = app.add_subcommand("solve", "fill a window and write field.csv");
    cmd_solve->add_option("--at", at_arg, "point for the closed-form cross-check, e.g. 3,5");
    cmd_solve->add_option("--window", window_arg, "window extents, e.g. 8,8");
    auto* cmd_phi = app.add_subcommand("phi", "fundamental matrix at a point");
    cmd_phi->add_option("--at", at_arg, "evaluation point, e.g. 3,5")->required();
    auto* cmd_floquet =
        app.add_subcommand("floquet", "multipliers and verification for a periodic family");
    cmd_floquet->add_option("--period", period, "diagonal period T");
    cmd_floquet->add_option("--window", window_arg, "window extents, e.g. 8,8");
    auto* cmd_hicks = app.add_subcommand("hicks", "multiplier-accelerator model runs");
    cmd_hicks->add_option("--gamma", hicks_gamma, "phase list, e.g. 0.8 or 0.8,0.7");
    cmd_hicks->add_option("--alpha", hicks_alpha, "phase list, e.g. 0.1");
    cmd_hicks->add_option("--window", window_arg, "window extents, e.g. 8,8");
    auto* cmd_gf = app.add_subcommand("gf", "generating-function build and expansion");
    cmd_gf->add_option("--gamma", gf_gamma, "exact scalar, e.g. 4/5");
    cmd_gf->add_option("--alpha", gf_alpha, "exact scalar, e.g. 1/10");
    cmd_gf->add_option("--layers", gf_layers_path, "JSON file with phi0/psi0/phi1/psi1");
    cmd_gf->add_option("--variant", variant, "numerator assembly variant (1 or 2)");
    cmd_gf->add_option("--expand", gf_expand, "truncation grid, e.g. 16x16");
    auto* cmd_way = app.add_subcommand("way", "order-dependent two-step path evaluation");
    cmd_way->add_option("--a1", way_a1, "axis-1 step matrix, rows ;-separated, e.g. 1,1;0,1");
    cmd_way->add_option("--a2", way_a2, "axis-2 step matrix");
    cmd_way->add_option("--x0", way_x0, "start vector, e.g. 1,0");
    cmd_way->add_option("--t", way_t, "target point, e.g. 1,1");

    CLI11_PARSE(app, argc, argv);

    try {
        json root = config_path.empty() ? json::object() : json_from_file(config_path);

        if (!window_arg.empty()) {
            root["window"] = index_arg(window_arg);
            if (!root.contains("dimension"))
                root["dimension"] = root["window"].size();
        }
        if (!at_arg.empty()) root["at"] = index_arg(at_arg);
        if (period > 0) root["period"] = period;

        if (cmd_way->parsed()) {
            if (!way_a1.empty()) root["way"]["a1"] = matrix_arg(way_a1);
            if (!way_a2.empty()) root["way"]["a2"] = matrix_arg(way_a2);
            if (!way_x0.empty()) root["way"]["x0"] = vector_arg(way_x0);
            if (!way_t.empty()) root["way"]["t"] = index_arg(way_t);
        }
        if (cmd_hicks->parsed()) {
            if (!hicks_gamma.empty()) root["hicks"]["gamma"] = vector_arg(hicks_gamma);
            if (!hicks_alpha.empty()) root["hicks"]["alpha"] = vector_arg(hicks_alpha);
        }
        if (cmd_gf->parsed()) {
            if (!gf_gamma.empty()) root["gf"]["gamma"] = scalar_arg(gf_gamma);
            if (!gf_alpha.empty()) root["gf"]["alpha"] = scalar_arg(gf_alpha);
            if (!gf_layers_path.empty()) root["gf"]["layers"] = json_from_file(gf_layers_path);
            if (variant > 0) root["gf"]["variant"] = variant;
            if (!gf_expand.empty()) {
                const auto parts = split(gf_expand, 'x');
                if (parts.size() != 2)
                    throw diagrec::ValidationError("--expand wants MxN, e.g. 16x16");
                root["gf"]["expand"] =
                    json::array({index_arg(parts[0])[0], index_arg(parts[1])[0]});
            }
        }

        const std::string command = cmd_check->parsed()     ? "check"
                                    : cmd_solve->parsed()   ? "solve"
                                    : cmd_phi->parsed()     ? "phi"
                                    : cmd_floquet->parsed() ? "floquet"
                                    : cmd_hicks->parsed()   ? "hicks"
                                    : cmd_gf->parsed()      ? "gf"
                                                            : "way";

        // `check` reports incompatibilities instead of failing on them, so it
        // skips the combined parse that would throw.
        const diagrec::JobConfig cfg = command == "check"
                                           ? diagrec::parse_structure(root.dump())
                                           : diagrec::parse_config(root.dump());

        diagrec::RunOptions opts;
        opts.out_dir = out_dir;
        opts.format = format;
        opts.jobs = jobs;
        if (tol_opt->count() > 0) opts.tol = tol;
        const int code = diagrec::run_command(command, cfg, opts);
        if (code != 0) std::cerr << command << ": input rejected, see report.json\n";
        return code;
    } catch (const diagrec::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const diagrec::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
