#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "fuzzyts/errors.hpp"

namespace fuzzyts {

/// Particle swarm parameters. Velocity and position are clamped componentwise
/// to [v_min, v_max] and [pos_min, pos_max]; the search stops as soon as the
/// global best fitness drops to target_fitness or below.
struct PsoConfig {
    double inertia = 1.4;
    double c1 = 2.0;  // pull toward the particle's own best
    double c2 = 2.0;  // pull toward the swarm's best
    double v_min = -0.01;
    double v_max = 0.01;
    double pos_min = 0.0;
    double pos_max = 1.0;
    int n_particles = 5;
    int max_iterations = 500;
    double target_fitness = 3.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = 0.0;
};

struct SwarmResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    int iterations_used = 0;
    bool converged = false;
};

using FitnessFn = std::function<double(const std::vector<double>&)>;

/// inertia * v + c1 * r1 * (p_best - x) + c2 * r2 * (g_best - x), clamped to
/// [v_min, v_max]. r1 and r2 are scalars shared across the components of one
/// update. Throws DimensionMismatchError.
std::vector<double> updateVelocity(const PsoConfig& config, std::span<const double> v,
                                   std::span<const double> x, std::span<const double> p_best,
                                   std::span<const double> g_best, double r1, double r2);

/// x + v, clamped to [pos_min, pos_max]. Throws DimensionMismatchError.
std::vector<double> updatePosition(std::span<const double> x, std::span<const double> v,
                                   const PsoConfig& config);

/// Deterministic 64-bit stream mixer used to derive independent sub-seeds
/// (per rule, per restart) from a master seed.
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t salt);

/// 53-bit uniform draw in [0, 1) on top of mt19937_64. The engine is fully
/// specified by the standard and the mapping avoids std::uniform_real_
/// distribution, so seeded streams replay identically everywhere.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// The swarm state, stepped one iteration at a time. Within an iteration each
/// particle in turn draws fresh scalars r1, r2, updates velocity then
/// position, and personal/global bests improve under strict less-than, so an
/// improvement is visible to the particles that follow in the same pass.
class Swarm {
public:
    /// Throws ConfigError unless the initial lists hold n_particles vectors of
    /// the given dimension within bounds.
    Swarm(const PsoConfig& config, int dim, const std::vector<std::vector<double>>& initial_positions,
          const std::vector<std::vector<double>>& initial_velocities, FitnessFn fitness);

    void step();

    const std::vector<Particle>& particles() const { return particles_; }
    const std::vector<double>& bestPosition() const { return best_position_; }
    double bestFitness() const { return best_fitness_; }
    bool converged() const { return best_fitness_ <= config_.target_fitness; }
    int iterationsUsed() const { return iterations_; }

    SwarmResult result() const;

private:
    PsoConfig config_;
    int dim_;
    FitnessFn fitness_;
    std::vector<Particle> particles_;
    std::vector<double> best_position_;
    double best_fitness_ = 0.0;
    int iterations_ = 0;
    UniformSource rng_;
};

/// Runs the swarm until the target fitness is reached or max_iterations pass.
/// Deterministic given config.seed.
SwarmResult optimize(const PsoConfig& config, int dim,
                     const std::vector<std::vector<double>>& initial_positions,
                     const std::vector<std::vector<double>>& initial_velocities,
                     const FitnessFn& fitness);

} // namespace fuzzyts
