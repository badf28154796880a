#include "hopftwist/catalog.hpp"

#include <benchmark/benchmark.h>

using namespace hopftwist;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

const Deformation& taft3() {
    static const Deformation w = taft_deformation(3, CycloNum(1), CycloNum(2));
    return w;
}

const Deformation& order36() {
    static const Deformation w = [] {
        FiniteGroup g = order36_group();
        std::vector<int> f;
        for (int h = 0; h < 9; ++h) f.push_back(4 * h);
        return dual_group_deformation(g, Subgroup(g, f), z3z3_zeta_jk_cocycle());
    }();
    return w;
}

void BM_FingerprintTaft3(benchmark::State& state) {
    FingerprintOptions o;
    o.depth = 2;
    o.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(fingerprint(taft3(), o));
}

void BM_FingerprintOrder36Depth1(benchmark::State& state) {
    FingerprintOptions o;
    o.depth = 1;
    o.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(fingerprint(order36(), o));
}

void BM_StreamingTaft3(benchmark::State& state) {
    FingerprintOptions o;
    o.depth = 2;
    o.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(fingerprint_streaming(taft3(), o));
}

void BM_VerifyHopfOrder36(benchmark::State& state) {
    HopfAlgebraData h = group_algebra(order36_group());
    for (auto _ : state) benchmark::DoNotOptimize(verify_hopf(h, exec_of(state)));
}

void BM_VerifyComoduleOrder36(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_comodule_algebra(order36(), exec_of(state)));
}

void BM_GaloisInverseOrder36(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_galois_inverse(order36(), *order36().inverse_galois, exec_of(state)));
}

void BM_InvertM_Taft4(benchmark::State& state) {
    Deformation w = taft_deformation(4, CycloNum(1), CycloNum(1));
    for (auto _ : state) benchmark::DoNotOptimize(invert_M(w));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_FingerprintTaft3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FingerprintOrder36Depth1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StreamingTaft3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyHopfOrder36)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyComoduleOrder36)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaloisInverseOrder36)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InvertM_Taft4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
