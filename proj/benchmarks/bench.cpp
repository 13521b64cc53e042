#include <benchmark/benchmark.h>

#include <graphlim/cut.hpp>
#include <graphlim/graph.hpp>
#include <graphlim/hf.hpp>
#include <graphlim/kernel.hpp>
#include <graphlim/qr.hpp>

using namespace graphlim;

namespace {

void BM_CountC4(benchmark::State& state) {
    const Graph g = gen_gnp(static_cast<int>(state.range(0)), 0.5, 1);
    const PatternGraph f = pattern_c4();
    for (auto _ : state) {
        auto count = count_subgraphs(f, g, VertexConstraint::unconstrained(), false);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_CountC4)->Arg(64)->Arg(128)->Arg(256);

void BM_CountInducedP3Constrained(benchmark::State& state) {
    const Graph g = gen_gnp(256, 0.5, 1);
    const PatternGraph f = pattern_p3();
    std::vector<int> u;
    for (int v = 0; v < 256; v += 2) u.push_back(v);
    const auto c = VertexConstraint::single(u);
    for (auto _ : state) {
        auto count = count_subgraphs(f, g, c, true);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_CountInducedP3Constrained);

void BM_CutNormExact(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const Graph g = gen_gnp(k, 0.5, 2);
    const StepKernel diff = kernel_difference(
        step_from_graph(g),
        StepKernel(step_from_graph(g).weights(),
                   std::vector<std::vector<double>>(k, std::vector<double>(k, 0.5)),
                   KernelRange::graphon));
    for (auto _ : state) {
        auto res = cut_norm(diff);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_CutNormExact)->Arg(12)->Arg(16)->Arg(20);

void BM_CutNormHeuristic(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const Graph g = gen_gnp(k, 0.5, 3);
    const StepKernel diff = kernel_difference(
        step_from_graph(g),
        StepKernel(step_from_graph(g).weights(),
                   std::vector<std::vector<double>>(k, std::vector<double>(k, 0.5)),
                   KernelRange::graphon));
    CutNormOptions opts;
    opts.exact_threshold = 0;
    for (auto _ : state) {
        auto res = cut_norm(diff, opts);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_CutNormHeuristic)->Arg(40)->Arg(80);

void BM_TDensityC4(benchmark::State& state) {
    const Graph g = gen_gnp(static_cast<int>(state.range(0)), 0.5, 4);
    const StepKernel w = step_from_graph(g);
    for (auto _ : state) {
        double t = t_density(pattern_c4(), w, false);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_TDensityC4)->Arg(8)->Arg(16);

void BM_HfCheckP3(benchmark::State& state) {
    for (auto _ : state) {
        auto verdict = hf_check(pattern_p3(), 0.7, 1e-9);
        benchmark::DoNotOptimize(verdict.status);
    }
}
BENCHMARK(BM_HfCheckP3);

void BM_HfCheckK4(benchmark::State& state) {
    for (auto _ : state) {
        auto verdict = hf_check(pattern_k4(), 0.3, 1e-9);
        benchmark::DoNotOptimize(verdict.status);
    }
}
BENCHMARK(BM_HfCheckK4);

void BM_TwoTypeSearchP3(benchmark::State& state) {
    const auto phi = build_psi_polynomial(pattern_p3(), true, true);
    const double alpha = beta(pattern_p3(), 0.7);
    for (auto _ : state) {
        auto witness = find_two_type_solution(phi, alpha, {1e-9, 41, 0});
        benchmark::DoNotOptimize(witness.has_value());
    }
}
BENCHMARK(BM_TwoTypeSearchP3);

void BM_DevCutSampled(benchmark::State& state) {
    const Graph g = sample_graph(two_type(0.0, 1.0, 0.5, 0.5), 200, 1);
    for (auto _ : state) {
        auto rep = dev_cut(g, 0.5, SizeSpec::all(), {200, 1});
        benchmark::DoNotOptimize(rep.max_dev);
    }
}
BENCHMARK(BM_DevCutSampled);

} // namespace

BENCHMARK_MAIN();
