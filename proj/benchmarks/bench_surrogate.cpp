#include <otfs/otfs.hpp>

#include <benchmark/benchmark.h>

using namespace otfs;

namespace {

Dictionary vdp_dictionary(int level) { return generate_dictionary(vdp_dynamics(VdpParams{}), vdp_observation_set(level)); }

Dictionary msd_dictionary(int n) {
    const MsdParams p;
    return generate_dictionary(msd_dynamics(p), msd_observation_set(n, 0, p), msd_space(p));
}

void BM_Linearize_Msd(benchmark::State& state) {
    const DynamicsFn f = msd_dynamics(MsdParams{});
    const Vector x = Vector::Constant(10, 0.3);
    const Vector u = Vector::Constant(1, 0.1);
    const Vector eta(0);
    for (auto _ : state) benchmark::DoNotOptimize(linearize(f, x, u, eta));
}
BENCHMARK(BM_Linearize_Msd);

void BM_Fit(benchmark::State& state) {
    const Dictionary dict = msd_dictionary(static_cast<int>(state.range(0)));
    const PolyBasis basis(dict.dims().d(), 2);
    for (auto _ : state) benchmark::DoNotOptimize(fit(dict, KernelSpec{2.0}, basis));
}
BENCHMARK(BM_Fit)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Loocv_Vdp(benchmark::State& state) {
    const Dictionary dict = vdp_dictionary(static_cast<int>(state.range(0)));
    const PolyBasis basis(2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(loocv_objective(dict, KernelSpec{1.0}, basis));
}
BENCHMARK(BM_Loocv_Vdp)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_SurrogateRhs_Vdp(benchmark::State& state) {
    const Dictionary dict = vdp_dictionary(3);
    const SurrogateModel model = make_interp_model(fit(dict, KernelSpec{1.0}, PolyBasis(2, 2)).interpolant);
    const Vector x{{0.7, -1.1}};
    const Vector none(0);
    for (auto _ : state) benchmark::DoNotOptimize(model.rhs(x, none, none));
}
BENCHMARK(BM_SurrogateRhs_Vdp);

void BM_SurrogateRhs_Msd(benchmark::State& state) {
    const Dictionary dict = msd_dictionary(100);
    const SurrogateModel model =
        make_interp_model(fit(dict, KernelSpec{2.0}, PolyBasis(dict.dims().d(), 2)).interpolant);
    const Vector x = Vector::LinSpaced(10, -1.0, 1.0);
    const Vector u = Vector::Constant(1, 0.2);
    const Vector none(0);
    for (auto _ : state) benchmark::DoNotOptimize(model.rhs(x, u, none));
}
BENCHMARK(BM_SurrogateRhs_Msd);

void BM_Simulate_VdpSurrogate(benchmark::State& state) {
    const Dictionary dict = vdp_dictionary(3);
    const SurrogateModel model = make_interp_model(fit(dict, KernelSpec{1.0}, PolyBasis(2, 2)).interpolant);
    const CtRhs rhs = make_ct_rhs(model, Vector(0), zero_input(0));
    const Vector x0{{-2.0, 2.0}};
    for (auto _ : state) benchmark::DoNotOptimize(integrate_ct(rhs, x0, 0.0, 14.0));
}
BENCHMARK(BM_Simulate_VdpSurrogate)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
