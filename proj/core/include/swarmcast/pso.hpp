#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmcast::pso {

/// Source of uniform draws. Virtual so tests can inject recorded sequences.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Next uniform draw in [0, 1).
    virtual double next() = 0;

    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
};

/// mt19937_64-backed source. next() keeps the top 53 bits so every value is
/// exactly representable and runs replay bit-identically everywhere.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed) : gen_(seed) {}

    double next() override {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 gen_;
};

/// How many stochastic coefficients each velocity update draws: one r1/r2
/// pair per particle (the update equation's r_1^t, r_2^t read as scalars) or
/// an independent pair per dimension. The scalar reading is the default; see
/// the convergence notes in the README.
enum class RandomGranularity { per_particle, per_dimension };

std::string to_string(RandomGranularity g);
RandomGranularity granularity_from_string(std::string_view name); // throws UsageError

struct PsoConfig {
    int dim = 10;
    int swarm_size = 30;
    double c1 = 1.4962;
    double c2 = 1.4962;
    double inertia = 1.0;
    double x_min = -5.12;
    double x_max = 5.12;
    double v_max = 5.12;
    int max_iterations = 1000;
    std::uint64_t seed = 1;
    RandomGranularity r_granularity = RandomGranularity::per_particle;

    void validate() const; // throws ConfigError
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
};

struct Swarm {
    std::vector<Particle> particles;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    int iteration = 0;
};

/// Pure minimization objective: same position must always yield the same
/// finite score.
using FitnessFn = std::function<double(std::span<const double>)>;

/// Called once after initialization and once after every step.
using StepObserver = std::function<void(const Swarm&)>;

/// Draws positions uniformly from [x_min, x_max] and velocities from
/// [-v_max/3, +v_max/3], per particle position first then velocity. Each
/// particle's best starts at its initial position with its evaluated fitness;
/// the swarm best is then scanned from those (starting from a +inf sentinel,
/// ties won by the lowest particle index). Throws NumericError when fitness
/// returns a non-finite value.
Swarm initialize(const PsoConfig& config, const FitnessFn& fitness, RandomSource& rng);

/// One particle's new velocity:
///   v' = w*v + c1*r1_d*(pbest_d - x_d) + c2*r2_d*(gbest_d - x_d)
/// per dimension, clamped to [-v_max, +v_max]. r1/r2 supply one entry per
/// dimension, each in [0, 1].
std::vector<double> velocity_update(const Particle& p,
                                    std::span<const double> gbest,
                                    const PsoConfig& config,
                                    std::span<const double> r1,
                                    std::span<const double> r2);

/// x' = x + v per dimension, clamped to [x_min, x_max]. The velocity is not
/// touched when the position hits a bound.
std::vector<double> position_update(std::span<const double> x,
                                    std::span<const double> v,
                                    const PsoConfig& config);

/// One iteration, two passes: first every particle's best and the swarm best
/// are reconciled (strict improvement only), then every velocity and position
/// move. Increments swarm.iteration. Throws NumericError (naming particle and
/// iteration) when fitness goes non-finite.
void step(Swarm& swarm, const FitnessFn& fitness, const PsoConfig& config,
          RandomSource& rng);

struct OptimizeResult {
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    /// Swarm best after initialization and after each iteration;
    /// length max_iterations + 1.
    std::vector<double> history;
};

/// initialize + exactly max_iterations steps, seeded from config.seed.
OptimizeResult optimize(const PsoConfig& config, const FitnessFn& fitness,
                        const StepObserver& observer = {});

double sphere(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);

/// Looks up one of {sphere, rosenbrock, rastrigin}; throws UsageError for
/// anything else.
FitnessFn benchmark_fitness(std::string_view name);

} // namespace swarmcast::pso
