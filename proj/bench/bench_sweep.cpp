// Compares the serial reference sweep against the diagonal-line kernel on a
// large homogeneous window and reports wall times plus the maximum
// discrepancy between the filled fields (expected: exactly zero).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "diagrec/recurrence.hpp"

using namespace diagrec;

namespace {

Matrix rotation_scaling(double angle, double scale) {
    const double c = scale * std::cos(angle), s = scale * std::sin(angle);
    return Matrix{{c, -s}, {s, c}};
}

Vector edge_value(std::uint64_t t1, std::uint64_t t2) {
    const double a = static_cast<double>(t1), b = static_cast<double>(t2);
    return Vector{std::cos(0.01 * (a + 2.0 * b)), std::sin(0.01 * (a - b))};
}

DiagonalRecurrence make_problem(std::uint64_t extent) {
    std::vector<Matrix> entries;
    for (int k = 0; k < 6; ++k)
        entries.push_back(rotation_scaling(0.2 + 0.05 * k, 0.995 + 0.001 * k));
    auto A = CoefficientProvider::table(2, {2, 3}, std::move(entries));

    FaceTable axis1, axis2;
    axis1.extents = {extent};
    axis2.extents = {extent};
    for (std::uint64_t j = 0; j < extent; ++j) {
        axis1.values.push_back(edge_value(0, j));
        axis2.values.push_back(edge_value(j, 0));
    }
    BoundaryData boundary(2, 2, ExtensionPolicy::Strict, {std::move(axis1), std::move(axis2)});
    return DiagonalRecurrence(std::move(A), ForcingProvider::zero(2, 2), std::move(boundary));
}

double timed(const DiagonalRecurrence& rec, std::span<const std::uint64_t> window,
             SweepOrder order, int threads, SolutionField& out) {
    const auto start = std::chrono::steady_clock::now();
    out = solve_iterative(rec, window, order, threads);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count();
}

double field_diff(const SolutionField& a, const SolutionField& b) {
    double worst = 0.0;
    MultiIndex t = a.first();
    do {
        worst = std::max(worst, (a.at(t) - b.at(t)).inf_norm());
    } while (a.next(t));
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t extent = 1200;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (argc > 1) extent = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) threads = std::atoi(argv[2]);
    if (extent < 2 || threads < 1) {
        std::fprintf(stderr, "usage: bench_sweep [extent >= 2] [threads >= 1]\n");
        return 2;
    }

    const DiagonalRecurrence rec = make_problem(extent);
    const std::vector<std::uint64_t> window{extent, extent};
    std::printf("sweep benchmark: %llux%llu window, order-2 system, diagonal period 6\n",
                static_cast<unsigned long long>(extent), static_cast<unsigned long long>(extent));

    SolutionField by_level(2, 2, {1, 1}), lex(2, 2, {1, 1}), diag1(2, 2, {1, 1}),
        diagn(2, 2, {1, 1});
    const double t_level = timed(rec, window, SweepOrder::ByLevel, 1, by_level);
    std::printf("  by-level (serial reference)   %8.3f s\n", t_level);
    const double t_lex = timed(rec, window, SweepOrder::Lexicographic, 1, lex);
    std::printf("  lexicographic                 %8.3f s\n", t_lex);
    const double t_diag1 = timed(rec, window, SweepOrder::DiagonalLines, 1, diag1);
    std::printf("  diagonal lines, 1 thread      %8.3f s\n", t_diag1);
    const double t_diagn = timed(rec, window, SweepOrder::DiagonalLines, threads, diagn);
    std::printf("  diagonal lines, %2d thread(s)  %8.3f s   speedup vs reference %.2fx\n",
                threads, t_diagn, t_level / t_diagn);

    const double worst =
        std::max({field_diff(by_level, lex), field_diff(by_level, diag1),
                  field_diff(by_level, diagn)});
    std::printf("  max |difference| between fields: %g\n", worst);
    return worst == 0.0 ? 0 : 1;
}
