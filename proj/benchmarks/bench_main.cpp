#include <benchmark/benchmark.h>

#include "gradtet/classify.hpp"
#include "gradtet/conformity.hpp"
#include "gradtet/domains.hpp"
#include "gradtet/fe.hpp"
#include "gradtet/refine.hpp"

using namespace gradtet;

namespace {

std::shared_ptr<const Mesh> prism_at_level(int level, double kappa_e) {
    static std::map<std::pair<int, long long>, std::shared_ptr<const Mesh>> cache;
    const auto key = std::make_pair(level, std::llround(kappa_e * 1e6));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto dom = domains::build_domain("prism");
    const SingularSet S = dom.with_grading(0.5, kappa_e);
    auto mesh = refine_mesh(dom.level0, S, level);
    cache.emplace(key, mesh);
    return mesh;
}

void BM_RefineMesh(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    const auto dom = domains::build_domain("prism");
    const SingularSet S = dom.with_grading(0.5, 0.2);
    const auto base = refine_mesh(dom.level0, S, level);
    for (auto _ : state) {
        auto fine = refine_mesh(base, S);
        benchmark::DoNotOptimize(fine);
    }
    state.SetItemsProcessed(state.iterations() * base->n_tets());
}
BENCHMARK(BM_RefineMesh)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
    const auto mesh = prism_at_level(static_cast<int>(state.range(0)), 0.2);
    for (auto _ : state) {
        auto sys = fem::assemble(*mesh, [](const Point&) { return 1.0; });
        benchmark::DoNotOptimize(sys);
    }
    state.SetItemsProcessed(state.iterations() * mesh->n_tets());
}
BENCHMARK(BM_Assemble)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveCg(benchmark::State& state) {
    const auto mesh = prism_at_level(static_cast<int>(state.range(0)), 0.2);
    const auto sys = fem::assemble(*mesh, [](const Point&) { return 1.0; });
    const auto red = fem::apply_dirichlet(sys);
    for (auto _ : state) {
        auto r = fem::solve_cg(red.A, red.b, 1e-10);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SolveCg)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CheckConformity(benchmark::State& state) {
    const auto mesh = prism_at_level(static_cast<int>(state.range(0)), 0.2);
    for (auto _ : state) {
        auto rep = check_conformity(*mesh);
        benchmark::DoNotOptimize(rep);
    }
    state.SetItemsProcessed(state.iterations() * mesh->n_tets());
}
BENCHMARK(BM_CheckConformity)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ClassifyTet(benchmark::State& state) {
    const auto dom = domains::build_domain("prism");
    const SingularSet S = dom.with_grading(0.5, 0.2);
    const auto mesh = prism_at_level(2, 0.2);
    std::int64_t i = 0;
    for (auto _ : state) {
        auto c = classify_tet(mesh->tet_points(i % mesh->n_tets()), S);
        benchmark::DoNotOptimize(c);
        ++i;
    }
}
BENCHMARK(BM_ClassifyTet);

}  // namespace

BENCHMARK_MAIN();
