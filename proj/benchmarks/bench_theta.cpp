#include "gkp/lattice.hpp"
#include "gkp/theta.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

gkp::GkpCode hex_code(double d) {
    double a = std::sqrt(2.0 * d / std::sqrt(3.0));
    Eigen::MatrixXd b(2, 2);
    b << a, a / 2.0, 0.0, a * std::sqrt(3.0) / 2.0;
    return gkp::make_code_standard(gkp::lattice_from_basis(b));
}

void BM_ThetaEval(benchmark::State &state) {
    auto tb = gkp::theta_basis(hex_code(2.0));
    Eigen::VectorXd v(2);
    v << 0.31, -0.17;
    for (auto _ : state) {
        auto z = tb.eval(0, v);
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_ThetaEval);

void BM_ThetaGram(benchmark::State &state) {
    auto tb = gkp::theta_basis(hex_code(2.0));
    int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto g = gkp::theta_gram(tb, grid);
        benchmark::DoNotOptimize(g.entries(0, 0));
    }
}
BENCHMARK(BM_ThetaGram)->Arg(64)->Arg(128)->Arg(256);

void BM_EnvelopeGram(benchmark::State &state) {
    auto tb = gkp::theta_basis(hex_code(2.0));
    for (auto _ : state) {
        auto g = gkp::envelope_gram(tb, 0.2, 128);
        benchmark::DoNotOptimize(g.entries(0, 0));
    }
}
BENCHMARK(BM_EnvelopeGram);

} // namespace
