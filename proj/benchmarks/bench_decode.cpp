#include "gkp/decode.hpp"
#include "gkp/lattice.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

gkp::GkpCode square_code(double d) {
    return gkp::make_code_standard(gkp::lattice_from_basis(
        std::sqrt(d) * Eigen::MatrixXd::Identity(2, 2)));
}

void BM_PeriodizedDensity(benchmark::State &state) {
    auto code = square_code(2.0);
    Eigen::VectorXd v(2);
    v << 0.23, -0.41;
    double sigma = 0.01 * static_cast<double>(state.range(0));
    for (auto _ : state) {
        double f = gkp::periodized_density(code, v, sigma, 1e-12);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_PeriodizedDensity)->Arg(10)->Arg(20)->Arg(50);

void BM_RobustnessMC(benchmark::State &state) {
    auto code = square_code(2.0);
    auto noise = gkp::NoiseModel::gaussian(0.2);
    for (auto _ : state) {
        auto r = gkp::robustness_mc(code, noise, "mld", 5000, 1, 1);
        benchmark::DoNotOptimize(r.estimate);
    }
}
BENCHMARK(BM_RobustnessMC);

void BM_RobustnessQuadrature(benchmark::State &state) {
    auto code = square_code(2.0);
    int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = gkp::robustness_quadrature(code, 0.2, grid, 1);
        benchmark::DoNotOptimize(r.estimate);
    }
}
BENCHMARK(BM_RobustnessQuadrature)->Arg(200)->Arg(400)->Arg(800);

} // namespace
