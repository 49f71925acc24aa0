#include "gkp/lattice.hpp"
#include "gkp/svp.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

gkp::GkpCode hex_code(double d) {
    double a = std::sqrt(2.0 * d / std::sqrt(3.0));
    Eigen::MatrixXd b(2, 2);
    b << a, a / 2.0, 0.0, a * std::sqrt(3.0) / 2.0;
    return gkp::make_code_standard(gkp::lattice_from_basis(b));
}

void BM_EnumerateShort(benchmark::State &state) {
    auto code = hex_code(2.0);
    double radius = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto sv = gkp::enumerate_short(code.lattice.gram_s, radius);
        benchmark::DoNotOptimize(sv.entries.size());
    }
}
BENCHMARK(BM_EnumerateShort)->Arg(2)->Arg(4)->Arg(8);

void BM_SystoleReport(benchmark::State &state) {
    auto d4 = [] {
        Eigen::MatrixXd b(4, 4);
        b << 1.136099267319667, -0.05310784768305406, -0.05310784768305406,
            0.34329452398451963, -0.07510583846181961, -1.0460893818764664,
            -0.5605976101691430, -0.8408964152537145, -0.09176508437466374,
            -0.5260021259964175, 0.9938275196797206, 0.0, 0.33080250828472986,
            -0.20102708140976901, 0.33080250828472986, 0.7676298919328178;
        b *= std::sqrt(2.0);
        return gkp::make_code_standard(gkp::lattice_from_basis(b));
    }();
    for (auto _ : state) {
        auto sys = gkp::systole_report(d4);
        benchmark::DoNotOptimize(sys.count);
    }
}
BENCHMARK(BM_SystoleReport);

void BM_ClosestVector(benchmark::State &state) {
    auto code = hex_code(3.0);
    Eigen::VectorXd t(2);
    t << 0.37, -0.81;
    for (auto _ : state) {
        auto [v, d2] = gkp::closest_vector(code.lattice, t);
        benchmark::DoNotOptimize(d2);
    }
}
BENCHMARK(BM_ClosestVector);

} // namespace
