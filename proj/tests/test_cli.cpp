#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

int run_cli(const std::string& args) {
    const std::string command =
        std::string(DIAGREC_CLI_PATH) + " " + args + " >cli_tmp/stdout.txt 2>cli_tmp/stderr.txt";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    REQUIRE(os);
    os << text;
}

struct TempDir {
    TempDir() { std::filesystem::create_directories("cli_tmp"); }
    ~TempDir() { std::filesystem::remove_all("cli_tmp"); }
};

} // namespace

TEST_CASE("command line exit codes and artifacts") {
    const TempDir guard;

    SUBCASE("way with inline matrices succeeds") {
        CHECK(run_cli("way --a1 '1,1;0,1' --a2 '1,0;1,1' --x0 1,0 --t 1,1 --out cli_tmp/way") ==
              0);
        CHECK(std::filesystem::exists("cli_tmp/way/report.json"));
    }

    SUBCASE("solve writes the field and the report") {
        write_file("cli_tmp/solve.json", R"({
          "dimension": 2,
          "order": 1,
          "window": [4, 4],
          "coefficients": {"kind": "constant", "matrix": [[2.0]]},
          "boundary": {
            "policy": "zero",
            "layer0": [
              {"extents": [4], "values": [[1], [1], [1], [1]]},
              {"extents": [4], "values": [[1], [1], [1], [1]]}
            ]
          }
        })");
        CHECK(run_cli("solve --config cli_tmp/solve.json --at 2,2 --out cli_tmp/solve") == 0);
        CHECK(std::filesystem::exists("cli_tmp/solve/field.csv"));
        CHECK(std::filesystem::exists("cli_tmp/solve/report.json"));
    }

    SUBCASE("incompatible boundary data fails check with exit 1") {
        write_file("cli_tmp/bad.json", R"({
          "dimension": 2,
          "order": 1,
          "boundary": {
            "policy": "zero",
            "layer0": [
              {"extents": [2], "values": [[7], [1]]},
              {"extents": [2], "values": [[1], [1]]}
            ]
          }
        })");
        CHECK(run_cli("check --config cli_tmp/bad.json --out cli_tmp/check") == 1);
        CHECK(std::filesystem::exists("cli_tmp/check/report.json"));
    }

    SUBCASE("validation failures exit with 1") {
        CHECK(run_cli("way --a1 '1,1;0,1' --a2 '1,0;1,1' --x0 1,0,0 --t 1,1 --out cli_tmp/bad") ==
              1);
        write_file("cli_tmp/broken.json", "{ not json");
        CHECK(run_cli("solve --config cli_tmp/broken.json --out cli_tmp/bad") == 1);
    }

    SUBCASE("numeric failures exit with 2") {
        // The monodromy of a constant Jordan block is defective, so the
        // Floquet root cannot be taken.
        write_file("cli_tmp/defective.json", R"({
          "dimension": 2,
          "order": 2,
          "window": [6, 6],
          "period": 2,
          "coefficients": {"kind": "constant", "matrix": [[1.0, 1.0], [0.0, 1.0]]}
        })");
        CHECK(run_cli("floquet --config cli_tmp/defective.json --out cli_tmp/floq") == 2);
    }

    SUBCASE("a periodicity mismatch is reported with exit 1") {
        write_file("cli_tmp/aperiodic.json", R"({
          "dimension": 2,
          "order": 1,
          "window": [8, 8],
          "period": 2,
          "coefficients": {
            "kind": "table",
            "periods": [3, 1],
            "entries": [[[1.0]], [[2.0]], [[3.0]]]
          }
        })");
        CHECK(run_cli("floquet --config cli_tmp/aperiodic.json --out cli_tmp/aper") == 1);
        CHECK(std::filesystem::exists("cli_tmp/aper/report.json"));
    }

    SUBCASE("gf runs from inline scalars and a layers file") {
        write_file("cli_tmp/layers.json", R"({
          "phi0": ["1", "2"],
          "psi0": ["1", "1/2"],
          "phi1": ["0", "5/3"],
          "psi1": ["0", "5/3"],
          "y11": "5/3"
        })");
        CHECK(run_cli("gf --gamma 4/5 --alpha 1/10 --layers cli_tmp/layers.json "
                      "--variant 2 --expand 8x8 --out cli_tmp/gf") == 0);
        CHECK(std::filesystem::exists("cli_tmp/gf/gf_coeffs.csv"));
    }

    SUBCASE("hicks classification runs without a window") {
        CHECK(run_cli("hicks --gamma 0.8 --alpha 0.1 --out cli_tmp/hicks") == 0);
        CHECK(std::filesystem::exists("cli_tmp/hicks/report.json"));
    }
}
