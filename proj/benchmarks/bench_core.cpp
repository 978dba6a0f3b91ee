#include <benchmark/benchmark.h>

#include "ars3d/classify.hpp"

using namespace ars3d;

namespace {

Ars structure(const ThetaForm& f) {
    Mat2 A = Mat2::zero();
    double c = 0.8;
    for (const Mat2& B : commutant_basis(f)) {
        A = A + B * c;
        c -= 0.5;
    }
    return Ars::create(LinearField(f, {0.4, -0.7}, A), Distribution({1.0, {0.2, 0.0}}, {0.3, {0.5, 1.0}}));
}

void BM_expm2(benchmark::State& state) {
    const Mat2 A{0.3, -1.2, 0.8, 0.1};
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm2(A, t));
        t += 1e-9;
    }
}
BENCHMARK(BM_expm2);

void BM_lambda_op(benchmark::State& state) {
    const Mat2 A{1.0, 1.0, 0.0, 1.0};
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_op(A, t));
        t += 1e-9;
    }
}
BENCHMARK(BM_lambda_op);

void BM_ar_norm(benchmark::State& state) {
    const Ars sigma = structure(ThetaForm::rotation(0.7));
    const GroupPoint p{0.4, {0.3, -1.1}};
    const Eigen::Vector3d z{0.2, 1.0, -0.5};
    for (auto _ : state) benchmark::DoNotOptimize(ar_norm(sigma, p, z));
}
BENCHMARK(BM_ar_norm);

void BM_classify(benchmark::State& state) {
    const Ars sigma = structure(ThetaForm::jordan());
    for (auto _ : state) benchmark::DoNotOptimize(classify(sigma));
}
BENCHMARK(BM_classify)->Unit(benchmark::kMillisecond);

void BM_verify_isometry(benchmark::State& state) {
    const ThetaForm f = ThetaForm::diagonal(-1.0);
    const Ars sigma = structure(f);
    const Automorphism m{-1, Mat2{0.0, 1.5, 0.7, 0.0}, {0.3, -0.2}};
    const Ars pulled = pullback(sigma, m);
    SamplerConfig cfg;
    cfg.points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_isometry(m, pulled, sigma, cfg));
}
BENCHMARK(BM_verify_isometry)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
