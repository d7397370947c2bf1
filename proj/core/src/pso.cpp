#include "swarmcast/pso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmcast/error.hpp"

namespace swarmcast::pso {

std::string to_string(RandomGranularity g) {
    switch (g) {
        case RandomGranularity::per_particle: return "per_particle";
        case RandomGranularity::per_dimension: return "per_dimension";
    }
    throw UsageError("unknown random granularity enum value");
}

RandomGranularity granularity_from_string(std::string_view name) {
    if (name == "per_particle") return RandomGranularity::per_particle;
    if (name == "per_dimension") return RandomGranularity::per_dimension;
    throw UsageError("unknown random granularity '" + std::string(name) +
                     "' (expected per_particle or per_dimension)");
}

void PsoConfig::validate() const {
    if (dim < 1) throw ConfigError("dim must be at least 1");
    if (swarm_size < 1) throw ConfigError("swarm_size must be at least 1");
    if (!(x_max > x_min)) throw ConfigError("x_max must exceed x_min");
    if (!(v_max > 0.0)) throw ConfigError("v_max must be positive");
    if (c1 < 0.0) throw ConfigError("c1 must be non-negative");
    if (c2 < 0.0) throw ConfigError("c2 must be non-negative");
    if (inertia < 0.0) throw ConfigError("inertia must be non-negative");
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

namespace {

double checked_fitness(const FitnessFn& fitness, std::span<const double> x,
                       std::size_t particle, int iteration) {
    double value = fitness(x);
    if (!std::isfinite(value)) {
        std::string where = iteration < 0
                                ? "at initialization"
                                : "at iteration " + std::to_string(iteration);
        throw NumericError("fitness returned a non-finite value for particle " +
                           std::to_string(particle) + " " + where);
    }
    return value;
}

} // namespace

Swarm initialize(const PsoConfig& config, const FitnessFn& fitness, RandomSource& rng) {
    config.validate();
    const auto dim = static_cast<std::size_t>(config.dim);

    Swarm swarm;
    swarm.particles.resize(static_cast<std::size_t>(config.swarm_size));
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        Particle& p = swarm.particles[i];
        p.position.resize(dim);
        for (double& x : p.position) x = rng.uniform(config.x_min, config.x_max);
        p.velocity.resize(dim);
        for (double& v : p.velocity)
            v = rng.uniform(-config.v_max / 3.0, config.v_max / 3.0);
        p.best_position = p.position;
        p.best_fitness = checked_fitness(fitness, p.position, i, -1);
    }

    // Scan for the swarm best, starting from the +inf sentinel so the first
    // particle always wins; strict < keeps ties with the lowest index.
    for (const Particle& p : swarm.particles) {
        if (p.best_fitness < swarm.best_fitness) {
            swarm.best_fitness = p.best_fitness;
            swarm.best_position = p.best_position;
        }
    }
    swarm.iteration = 0;
    return swarm;
}

std::vector<double> velocity_update(const Particle& p,
                                    std::span<const double> gbest,
                                    const PsoConfig& config,
                                    std::span<const double> r1,
                                    std::span<const double> r2) {
    const std::size_t dim = p.position.size();
    std::vector<double> out(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        double v = config.inertia * p.velocity[d] +
                   config.c1 * r1[d] * (p.best_position[d] - p.position[d]) +
                   config.c2 * r2[d] * (gbest[d] - p.position[d]);
        out[d] = std::clamp(v, -config.v_max, config.v_max);
    }
    return out;
}

std::vector<double> position_update(std::span<const double> x,
                                    std::span<const double> v,
                                    const PsoConfig& config) {
    std::vector<double> out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d)
        out[d] = std::clamp(x[d] + v[d], config.x_min, config.x_max);
    return out;
}

void step(Swarm& swarm, const FitnessFn& fitness, const PsoConfig& config,
          RandomSource& rng) {
    // Pass 1: reconcile every particle best, then the swarm best.
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        Particle& p = swarm.particles[i];
        double fx = checked_fitness(fitness, p.position, i, swarm.iteration);
        if (fx < p.best_fitness) {
            p.best_fitness = fx;
            p.best_position = p.position;
        }
        if (p.best_fitness < swarm.best_fitness) {
            swarm.best_fitness = p.best_fitness;
            swarm.best_position = p.best_position;
        }
    }

    // Pass 2: move everything.
    const auto dim = static_cast<std::size_t>(config.dim);
    std::vector<double> r1(dim), r2(dim);
    for (Particle& p : swarm.particles) {
        if (config.r_granularity == RandomGranularity::per_particle) {
            std::fill(r1.begin(), r1.end(), rng.next());
            std::fill(r2.begin(), r2.end(), rng.next());
        } else {
            for (std::size_t d = 0; d < dim; ++d) {
                r1[d] = rng.next();
                r2[d] = rng.next();
            }
        }
        p.velocity = velocity_update(p, swarm.best_position, config, r1, r2);
        p.position = position_update(p.position, p.velocity, config);
    }
    ++swarm.iteration;
}

OptimizeResult optimize(const PsoConfig& config, const FitnessFn& fitness,
                        const StepObserver& observer) {
    config.validate();
    SeededRandom rng(config.seed);
    Swarm swarm = initialize(config, fitness, rng);

    OptimizeResult result;
    result.history.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
    result.history.push_back(swarm.best_fitness);
    if (observer) observer(swarm);

    for (int t = 0; t < config.max_iterations; ++t) {
        step(swarm, fitness, config, rng);
        result.history.push_back(swarm.best_fitness);
        if (observer) observer(swarm);
    }

    result.best_position = swarm.best_position;
    result.best_fitness = swarm.best_fitness;
    return result;
}

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

double rosenbrock(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t d = 0; d + 1 < x.size(); ++d) {
        double a = x[d + 1] - x[d] * x[d];
        double b = 1.0 - x[d];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x)
        sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi_v<double> * v);
    return sum;
}

FitnessFn benchmark_fitness(std::string_view name) {
    if (name == "sphere") return [](std::span<const double> x) { return sphere(x); };
    if (name == "rosenbrock")
        return [](std::span<const double> x) { return rosenbrock(x); };
    if (name == "rastrigin")
        return [](std::span<const double> x) { return rastrigin(x); };
    throw UsageError("unknown benchmark function '" + std::string(name) +
                     "' (expected sphere, rosenbrock or rastrigin)");
}

} // namespace swarmcast::pso
