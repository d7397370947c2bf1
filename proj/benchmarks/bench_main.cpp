#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "swarmcast/forecaster.hpp"
#include "swarmcast/market_data.hpp"
#include "swarmcast/neural_net.hpp"
#include "swarmcast/normalize.hpp"
#include "swarmcast/pso.hpp"

namespace {

using namespace swarmcast;

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> out(n);
    for (double& x : out) x = u(gen);
    return out;
}

void BM_forward(benchmark::State& state) {
    int hidden = static_cast<int>(state.range(0));
    nn::NetworkTopology t{{4, hidden, 1}, nn::Transfer::sigmoid, nn::Transfer::linear};
    auto weights = random_vector(nn::dimension(t), 1);
    auto input = random_vector(4, 2);
    nn::ForwardScratch scratch;
    for (auto _ : state) {
        auto out = nn::forward(t, weights, input, scratch);
        benchmark::DoNotOptimize(out[0]);
    }
}
BENCHMARK(BM_forward)->Arg(8)->Arg(32)->Arg(128);

void BM_fitness_mse(benchmark::State& state) {
    int window_count = static_cast<int>(state.range(0));
    nn::NetworkTopology t{{4, 8, 1}, nn::Transfer::sigmoid, nn::Transfer::linear};
    auto series = random_vector(static_cast<std::size_t>(window_count) + 4, 7);
    auto windows = make_windows(series, 4);
    auto weights = random_vector(nn::dimension(t), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fitness_mse(weights, t, windows));
    }
}
BENCHMARK(BM_fitness_mse)->Arg(40)->Arg(200);

void BM_pso_step_sphere(benchmark::State& state) {
    pso::PsoConfig config;
    config.dim = static_cast<int>(state.range(0));
    config.swarm_size = 30;
    auto fitness = pso::benchmark_fitness("sphere");
    pso::SeededRandom rng(9);
    pso::Swarm swarm = pso::initialize(config, fitness, rng);
    for (auto _ : state) {
        pso::step(swarm, fitness, config, rng);
        benchmark::DoNotOptimize(swarm.best_fitness);
    }
}
BENCHMARK(BM_pso_step_sphere)->Arg(10)->Arg(49);

void BM_pso_step_training_fitness(benchmark::State& state) {
    nn::NetworkTopology t{{4, 8, 1}, nn::Transfer::sigmoid, nn::Transfer::linear};
    auto series = random_vector(44, 7);
    auto fitness = make_mse_fitness(t, make_windows(series, 4));

    pso::PsoConfig config;
    config.dim = static_cast<int>(nn::dimension(t));
    config.swarm_size = 30;
    pso::SeededRandom rng(9);
    pso::Swarm swarm = pso::initialize(config, fitness, rng);
    for (auto _ : state) {
        pso::step(swarm, fitness, config, rng);
        benchmark::DoNotOptimize(swarm.best_fitness);
    }
}
BENCHMARK(BM_pso_step_training_fitness);

void BM_optimize_sphere(benchmark::State& state) {
    pso::PsoConfig config;
    config.dim = 10;
    config.max_iterations = static_cast<int>(state.range(0));
    auto fitness = pso::benchmark_fitness("sphere");
    for (auto _ : state) {
        auto result = pso::optimize(config, fitness);
        benchmark::DoNotOptimize(result.best_fitness);
    }
}
BENCHMARK(BM_optimize_sphere)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_normalize_roundtrip(benchmark::State& state) {
    NormalizationSpec spec{NormMethod::target_range, 17448.71, 21483.74, 0.1, 0.9};
    double y = 19859.22;
    for (auto _ : state) {
        benchmark::DoNotOptimize(denormalize(spec, normalize(spec, y)));
    }
}
BENCHMARK(BM_normalize_roundtrip);

} // namespace

BENCHMARK_MAIN();
