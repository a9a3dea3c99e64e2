// Micro-benchmarks for the hot paths: geometric-map evaluation, system
// assembly (serial and threaded), and both linear-solver backends.

#include <benchmark/benchmark.h>

#include <isodg/assembly.hpp>
#include <isodg/solver.hpp>
#include <isodg/study.hpp>

using namespace isodg;

namespace {

struct Fixture {
    DomainGeometry geometry = DomainGeometry::circle(Eigen::Vector2d::Zero(), 0.5);
    Mesh mesh;
    GeometricMap map;
    DGSpace space;
    TransportProblem problem;

    explicit Fixture(int level, int degree)
        : mesh(generate_disc_mesh(level, geometry)),
          map(mesh, degree, geometry),
          space(mesh, map, degree),
          problem(make_disc2d_problem()) {}
};

void bm_map_jacobian(benchmark::State& state) {
    const Fixture fx(2, 2);
    Eigen::VectorXd xhat(2);
    xhat << 0.3, 0.3;
    double det = 0.0;
    for (auto _ : state) {
        for (int e = 0; e < fx.mesh.num_elements(); ++e) {
            benchmark::DoNotOptimize(fx.map.jacobian(e, xhat, &det));
        }
    }
    state.SetItemsProcessed(state.iterations() * fx.mesh.num_elements());
}
BENCHMARK(bm_map_jacobian);

void bm_assemble(benchmark::State& state) {
    const Fixture fx(static_cast<int>(state.range(0)), 2);
    AssemblyOptions options;
    options.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(fx.space, fx.problem, options));
    }
    state.SetItemsProcessed(state.iterations() * fx.mesh.num_elements());
}
BENCHMARK(bm_assemble)->Args({2, 1})->Args({2, 4})->Args({3, 1})->Args({3, 4});

void bm_solve_direct(benchmark::State& state) {
    const Fixture fx(static_cast<int>(state.range(0)), 2);
    const SparseSystem system = assemble(fx.space, fx.problem);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(system));
    }
}
BENCHMARK(bm_solve_direct)->Arg(2)->Arg(3);

void bm_solve_gmres(benchmark::State& state) {
    const Fixture fx(static_cast<int>(state.range(0)), 2);
    const SparseSystem system = assemble(fx.space, fx.problem);
    SolverConfig config;
    config.method = SolverConfig::Method::Gmres;
    config.tolerance = 1e-10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(system, config));
    }
}
BENCHMARK(bm_solve_gmres)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
