#include "fuzzyts/pso.hpp"

#include <algorithm>
#include <string>

namespace fuzzyts {

void PsoConfig::validate() const {
    if (!(v_min < v_max)) throw ConfigError("v_min must be below v_max");
    if (!(pos_min < pos_max)) throw ConfigError("pos_min must be below pos_max");
    if (n_particles < 1) throw ConfigError("n_particles must be at least 1");
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

void requireSameDim(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionMismatchError("vector dimensions differ: " + std::to_string(a) + " vs " +
                                     std::to_string(b));
    }
}

} // namespace

std::vector<double> updateVelocity(const PsoConfig& config, std::span<const double> v,
                                   std::span<const double> x, std::span<const double> p_best,
                                   std::span<const double> g_best, double r1, double r2) {
    requireSameDim(v.size(), x.size());
    requireSameDim(v.size(), p_best.size());
    requireSameDim(v.size(), g_best.size());
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double raw = config.inertia * v[j] + config.c1 * r1 * (p_best[j] - x[j]) +
                           config.c2 * r2 * (g_best[j] - x[j]);
        out[j] = std::clamp(raw, config.v_min, config.v_max);
    }
    return out;
}

std::vector<double> updatePosition(std::span<const double> x, std::span<const double> v,
                                   const PsoConfig& config) {
    requireSameDim(x.size(), v.size());
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = std::clamp(x[j] + v[j], config.pos_min, config.pos_max);
    }
    return out;
}

Swarm::Swarm(const PsoConfig& config, int dim,
             const std::vector<std::vector<double>>& initial_positions,
             const std::vector<std::vector<double>>& initial_velocities, FitnessFn fitness)
    : config_(config), dim_(dim), fitness_(std::move(fitness)), rng_(config.seed) {
    config_.validate();
    if (dim < 1) throw ConfigError("dimension must be at least 1");
    const auto n = static_cast<std::size_t>(config_.n_particles);
    if (initial_positions.size() != n || initial_velocities.size() != n) {
        throw ConfigError("need exactly n_particles initial positions and velocities");
    }
    particles_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = initial_positions[i];
        const auto& v = initial_velocities[i];
        if (x.size() != static_cast<std::size_t>(dim) || v.size() != static_cast<std::size_t>(dim)) {
            throw ConfigError("initial vectors must have the stated dimension");
        }
        for (double c : x) {
            if (c < config_.pos_min || c > config_.pos_max) {
                throw ConfigError("initial position outside [pos_min, pos_max]");
            }
        }
        for (double c : v) {
            if (c < config_.v_min || c > config_.v_max) {
                throw ConfigError("initial velocity outside [v_min, v_max]");
            }
        }
        Particle p;
        p.position = x;
        p.velocity = v;
        p.best_position = x;
        p.best_fitness = fitness_(x);
        particles_.push_back(std::move(p));
    }
    best_fitness_ = particles_.front().best_fitness;
    best_position_ = particles_.front().best_position;
    for (const Particle& p : particles_) {
        if (p.best_fitness < best_fitness_) {
            best_fitness_ = p.best_fitness;
            best_position_ = p.best_position;
        }
    }
}

void Swarm::step() {
    ++iterations_;
    for (Particle& p : particles_) {
        const double r1 = rng_.next();
        const double r2 = rng_.next();
        p.velocity = updateVelocity(config_, p.velocity, p.position, p.best_position,
                                    best_position_, r1, r2);
        p.position = updatePosition(p.position, p.velocity, config_);
        const double f = fitness_(p.position);
        if (f < p.best_fitness) {
            p.best_fitness = f;
            p.best_position = p.position;
        }
        if (f < best_fitness_) {
            best_fitness_ = f;
            best_position_ = p.position;
        }
    }
}

SwarmResult Swarm::result() const {
    return SwarmResult{best_position_, best_fitness_, iterations_, converged()};
}

SwarmResult optimize(const PsoConfig& config, int dim,
                     const std::vector<std::vector<double>>& initial_positions,
                     const std::vector<std::vector<double>>& initial_velocities,
                     const FitnessFn& fitness) {
    Swarm swarm(config, dim, initial_positions, initial_velocities, fitness);
    while (!swarm.converged() && swarm.iterationsUsed() < config.max_iterations) {
        swarm.step();
    }
    return swarm.result();
}

} // namespace fuzzyts
