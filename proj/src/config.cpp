#include "diagrec/config.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "diagrec/errors.hpp"

namespace diagrec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("config: " + where + ": " + what);
}

const json& member(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.is_object()) fail(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing key '" + key + "'");
    return *it;
}

double number_at(const json& obj, const std::string& where, const std::string& key) {
    const json& v = member(obj, where, key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

int int_at(const json& obj, const std::string& where, const std::string& key) {
    const json& v = member(obj, where, key);
    if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::vector<std::uint64_t> index_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of nonnegative integers");
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            fail(where, "entries must be nonnegative integers");
        out.push_back(e.get<std::uint64_t>());
    }
    return out;
}

std::vector<double> double_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(where, "entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Vector vector_from(const json& v, const std::string& where) {
    const auto values = double_list(v, where);
    Vector out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
    return out;
}

Matrix matrix_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected an array of rows");
    const std::size_t rows = v.size();
    const auto first = double_list(v[0], where + "[0]");
    Matrix out(rows, first.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = double_list(v[i], where + "[" + std::to_string(i) + "]");
        if (row.size() != first.size()) fail(where, "rows have unequal lengths");
        for (std::size_t j = 0; j < row.size(); ++j) out.at(i, j) = row[j];
    }
    return out;
}

Rational rational_from(const json& v, const std::string& where) {
    if (v.is_number()) return rational_from_double(v.get<double>());
    if (v.is_string()) {
        const auto parsed = parse_rational(v.get<std::string>());
        if (!parsed) fail(where, "cannot parse rational '" + v.get<std::string>() + "'");
        return *parsed;
    }
    fail(where, "expected a number or a \"p/q\" string");
}

std::vector<Rational> rational_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    std::vector<Rational> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(rational_from(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

HicksParams hicks_from(const json& v) {
    const json& g = member(v, "hicks", "gamma");
    const json& a = member(v, "hicks", "alpha");
    const auto as_phases = [](const json& e, const std::string& where) {
        if (e.is_number()) return std::vector<double>{e.get<double>()};
        return double_list(e, where);
    };
    return HicksParams::periodic(as_phases(g, "hicks.gamma"), as_phases(a, "hicks.alpha"));
}

CoefficientProvider coefficients_from(const json& v, int m,
                                      const std::optional<HicksParams>& hicks) {
    const json& kind_v = member(v, "coefficients", "kind");
    if (!kind_v.is_string()) fail("coefficients.kind", "expected a string");
    const std::string kind = kind_v.get<std::string>();
    if (kind == "constant")
        return CoefficientProvider::constant(m, matrix_from(member(v, "coefficients", "matrix"),
                                                            "coefficients.matrix"));
    if (kind == "table") {
        const auto periods64 = index_list(member(v, "coefficients", "periods"),
                                          "coefficients.periods");
        std::vector<int> periods;
        for (const auto p : periods64) {
            if (p == 0) fail("coefficients.periods", "periods must be positive");
            periods.push_back(static_cast<int>(p));
        }
        const json& entries_v = member(v, "coefficients", "entries");
        if (!entries_v.is_array()) fail("coefficients.entries", "expected an array of matrices");
        std::vector<Matrix> entries;
        entries.reserve(entries_v.size());
        for (std::size_t i = 0; i < entries_v.size(); ++i)
            entries.push_back(matrix_from(entries_v[i],
                                          "coefficients.entries[" + std::to_string(i) + "]"));
        return CoefficientProvider::table(m, std::move(periods), std::move(entries));
    }
    if (kind == "hicks-system" || kind == "hicks-companion") {
        if (!hicks) fail("coefficients", "kind '" + kind + "' needs a hicks block");
        return kind == "hicks-system" ? periodic_system_provider(*hicks, m)
                                      : companion_provider(*hicks, m);
    }
    fail("coefficients.kind", "unknown kind '" + kind + "'");
}

ForcingProvider forcing_from(const json& v, int m, int n) {
    const json& kind_v = member(v, "forcing", "kind");
    if (!kind_v.is_string()) fail("forcing.kind", "expected a string");
    const std::string kind = kind_v.get<std::string>();
    if (kind == "zero") return ForcingProvider::zero(m, n);
    if (kind == "constant")
        return ForcingProvider::constant(m, vector_from(member(v, "forcing", "vector"),
                                                        "forcing.vector"));
    if (kind == "table") {
        const auto periods64 = index_list(member(v, "forcing", "periods"), "forcing.periods");
        std::vector<int> periods;
        for (const auto p : periods64) {
            if (p == 0) fail("forcing.periods", "periods must be positive");
            periods.push_back(static_cast<int>(p));
        }
        const json& entries_v = member(v, "forcing", "entries");
        if (!entries_v.is_array()) fail("forcing.entries", "expected an array of vectors");
        std::vector<Vector> entries;
        entries.reserve(entries_v.size());
        for (std::size_t i = 0; i < entries_v.size(); ++i)
            entries.push_back(vector_from(entries_v[i],
                                          "forcing.entries[" + std::to_string(i) + "]"));
        return ForcingProvider::table(m, std::move(periods), std::move(entries));
    }
    fail("forcing.kind", "unknown kind '" + kind + "'");
}

std::vector<FaceTable> faces_from(const json& v, int m, int n, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != m)
        fail(where, "expected one face per axis (" + std::to_string(m) + " faces)");
    std::vector<FaceTable> faces;
    faces.reserve(v.size());
    for (int axis = 0; axis < m; ++axis) {
        const std::string fw = where + "[" + std::to_string(axis) + "]";
        const json& fv = v[static_cast<std::size_t>(axis)];
        FaceTable face;
        face.extents = index_list(member(fv, fw, "extents"), fw + ".extents");
        const json& values_v = member(fv, fw, "values");
        if (!values_v.is_array()) fail(fw + ".values", "expected an array of vectors");
        face.values.reserve(values_v.size());
        for (std::size_t i = 0; i < values_v.size(); ++i) {
            Vector value = vector_from(values_v[i], fw + ".values[" + std::to_string(i) + "]");
            if (static_cast<int>(value.size()) != n)
                fail(fw + ".values", "entries must have " + std::to_string(n) + " components");
            face.values.push_back(std::move(value));
        }
        faces.push_back(std::move(face));
    }
    return faces;
}

BoundaryData boundary_from(const json& v, int m, int n) {
    const json& policy_v = member(v, "boundary", "policy");
    if (!policy_v.is_string()) fail("boundary.policy", "expected a string");
    const std::string policy_s = policy_v.get<std::string>();
    ExtensionPolicy policy;
    if (policy_s == "strict")
        policy = ExtensionPolicy::Strict;
    else if (policy_s == "zero")
        policy = ExtensionPolicy::Zero;
    else
        fail("boundary.policy", "unknown policy '" + policy_s + "'");

    auto layer0 = faces_from(member(v, "boundary", "layer0"), m, n, "boundary.layer0");
    std::vector<FaceTable> layer1;
    if (const auto it = v.find("layer1"); it != v.end())
        layer1 = faces_from(*it, m, n, "boundary.layer1");
    return BoundaryData(m, n, policy, std::move(layer0), std::move(layer1));
}

GfBlock gf_from(const json& v) {
    GfBlock block;
    block.gamma = rational_from(member(v, "gf", "gamma"), "gf.gamma");
    block.alpha = rational_from(member(v, "gf", "alpha"), "gf.alpha");

    const json& layers_v = member(v, "gf", "layers");
    block.layers.phi0 = rational_list(member(layers_v, "gf.layers", "phi0"), "gf.layers.phi0");
    block.layers.psi0 = rational_list(member(layers_v, "gf.layers", "psi0"), "gf.layers.psi0");
    block.layers.phi1 = rational_list(member(layers_v, "gf.layers", "phi1"), "gf.layers.phi1");
    block.layers.psi1 = rational_list(member(layers_v, "gf.layers", "psi1"), "gf.layers.psi1");
    if (const auto it = layers_v.find("y00"); it != layers_v.end())
        block.layers.y00 = rational_from(*it, "gf.layers.y00");
    else
        block.layers.y00 = block.layers.at_phi0(0);
    if (const auto it = layers_v.find("y11"); it != layers_v.end())
        block.layers.y11 = rational_from(*it, "gf.layers.y11");
    else
        block.layers.y11 = block.layers.at_phi1(1);
    block.layers.validate();

    if (const auto it = v.find("variant"); it != v.end()) {
        if (!it->is_number_integer() || (it->get<int>() != 1 && it->get<int>() != 2))
            fail("gf.variant", "must be 1 or 2");
        block.variant = it->get<int>();
    }
    if (const auto it = v.find("expand"); it != v.end()) {
        const auto orders = index_list(*it, "gf.expand");
        if (orders.size() != 2) fail("gf.expand", "expected [order_x, order_y]");
        block.expand_x = static_cast<int>(orders[0]);
        block.expand_y = static_cast<int>(orders[1]);
    }
    return block;
}

WayBlock way_from(const json& v) {
    WayBlock block;
    block.a1 = matrix_from(member(v, "way", "a1"), "way.a1");
    block.a2 = matrix_from(member(v, "way", "a2"), "way.a2");
    block.x0 = vector_from(member(v, "way", "x0"), "way.x0");
    block.t = index_list(member(v, "way", "t"), "way.t");
    if (block.t.size() != 2) fail("way.t", "expected a two-axis time point");
    if (!block.a1.square() || !block.a2.square() || block.a1.rows() != block.a2.rows() ||
        block.a1.rows() != block.x0.size())
        fail("way", "a1, a2 and x0 must share one square dimension");
    return block;
}

SweepOrder sweep_from(const json& v) {
    if (!v.is_string()) fail("sweep", "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "by-level") return SweepOrder::ByLevel;
    if (s == "lexicographic") return SweepOrder::Lexicographic;
    if (s == "diagonal-lines") return SweepOrder::DiagonalLines;
    fail("sweep", "unknown sweep order '" + s + "'");
}

} // namespace

JobConfig parse_structure(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("config: top level must be an object");

    JobConfig cfg;
    if (root.contains("dimension")) cfg.dimension = int_at(root, "config", "dimension");
    if (cfg.dimension < 2) throw ValidationError("config: dimension must be at least 2");
    if (root.contains("order")) cfg.order = int_at(root, "config", "order");
    if (cfg.order < 1) throw ValidationError("config: order must be at least 1");

    if (root.contains("window")) {
        cfg.window = index_list(root["window"], "window");
        if (static_cast<int>(cfg.window.size()) != cfg.dimension)
            throw ValidationError("config: window must have one extent per axis");
        for (const auto e : cfg.window)
            if (e == 0) throw ValidationError("config: window extents must be positive");
    }
    if (root.contains("tolerance")) {
        cfg.tolerance = number_at(root, "config", "tolerance");
        if (!(cfg.tolerance > 0)) throw ValidationError("config: tolerance must be positive");
    }
    if (root.contains("period")) {
        cfg.period = int_at(root, "config", "period");
        if (*cfg.period < 1) throw ValidationError("config: period must be positive");
    }
    if (root.contains("sweep")) cfg.sweep = sweep_from(root["sweep"]);

    if (root.contains("hicks")) cfg.hicks = hicks_from(root["hicks"]);
    if (root.contains("coefficients")) {
        cfg.coefficients = coefficients_from(root["coefficients"], cfg.dimension, cfg.hicks);
        if (cfg.coefficients->order() != cfg.order)
            throw ValidationError("config: coefficients are " +
                                  std::to_string(cfg.coefficients->order()) +
                                  "x" + std::to_string(cfg.coefficients->order()) +
                                  " but order is " + std::to_string(cfg.order));
    }
    if (root.contains("forcing")) {
        cfg.forcing = forcing_from(root["forcing"], cfg.dimension, cfg.order);
        if (cfg.forcing->order() != cfg.order)
            throw ValidationError("config: forcing length disagrees with order");
    }
    if (root.contains("boundary"))
        cfg.boundary = boundary_from(root["boundary"], cfg.dimension, cfg.order);
    if (root.contains("gf")) cfg.gf = gf_from(root["gf"]);
    if (root.contains("way")) cfg.way = way_from(root["way"]);
    if (root.contains("at")) {
        cfg.at = index_list(root["at"], "at");
        if (static_cast<int>(cfg.at->size()) != cfg.dimension)
            throw ValidationError("config: 'at' must have one coordinate per axis");
    }
    return cfg;
}

std::vector<CompatibilityViolation> validate(const JobConfig& config) {
    if (!config.boundary) return {};
    return check_compatibility(*config.boundary);
}

std::string describe(const CompatibilityViolation& v) {
    std::ostringstream os;
    os << "faces t" << v.axis_a << " and t" << v.axis_b << " disagree at ("
       << v.at.to_string() << "): " << v.detail;
    return os.str();
}

JobConfig parse_config(const std::string& json_text) {
    JobConfig cfg = parse_structure(json_text);
    const auto violations = validate(cfg);
    if (!violations.empty())
        throw ValidationError("config: incompatible boundary faces: " + describe(violations[0]) +
                              (violations.size() > 1
                                   ? " (+" + std::to_string(violations.size() - 1) + " more)"
                                   : ""));
    return cfg;
}

JobConfig parse_config_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_config(buffer.str());
}

} // namespace diagrec
