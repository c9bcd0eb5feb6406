#include "fuzzyts/trainer.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace fuzzyts {

double defuzzify(std::span<const double> weights, std::span<const double> actuals) {
    if (weights.size() != actuals.size()) {
        throw DimensionMismatchError("weights and actuals differ in length: " +
                                     std::to_string(weights.size()) + " vs " +
                                     std::to_string(actuals.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) sum += actuals[i] * weights[i];
    return sum;
}

double squaredError(double forecast, double actual) {
    const double diff = forecast - actual;
    return diff * diff;
}

std::vector<double> initialWeightLadder(int order) {
    std::vector<double> ladder(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        ladder[static_cast<std::size_t>(i)] = std::max(0.75 - 0.25 * i, 0.05);
    }
    return ladder;
}

namespace {

/// Lagged actual values at an anchor, most recent first.
std::vector<double> laggedActuals(const TimeSeries& series, long long anchor, int order) {
    std::vector<double> lags(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
        lags[static_cast<std::size_t>(k - 1)] = series.valueAt(anchor - k);
    }
    return lags;
}

std::vector<long long> trainableAnchors(const ForecastRule& rule, const TimeSeries& series) {
    std::vector<long long> anchors;
    for (long long t : rule.anchor_ts) {
        if (t >= series.firstTime() + rule.order() && t <= series.lastTime()) {
            anchors.push_back(t);
        }
    }
    return anchors;
}

} // namespace

RuleTraining trainRule(const ForecastRule& rule, const TimeSeries& series,
                       const TrainingConfig& config, std::uint64_t rule_seed) {
    const int order = rule.order();
    const std::vector<long long> anchors = trainableAnchors(rule, series);
    if (anchors.empty()) {
        throw UntrainableRuleError("rule " + std::to_string(rule.label) +
                                   " has no anchor with an actual value");
    }

    std::vector<std::pair<std::vector<double>, double>> cases;  // (lags, target)
    cases.reserve(anchors.size());
    for (long long t : anchors) {
        cases.emplace_back(laggedActuals(series, t, order), series.valueAt(t));
    }
    FitnessFn fitness = [&cases](const std::vector<double>& w) {
        double total = 0.0;
        for (const auto& [lags, target] : cases) {
            total += squaredError(defuzzify(w, lags), target);
        }
        return total;
    };

    PsoConfig pso = config.pso;
    pso.seed = mixSeed(rule_seed, 1);
    const std::vector<double> ladder = initialWeightLadder(order);
    std::vector<std::vector<double>> positions(static_cast<std::size_t>(pso.n_particles), ladder);

    UniformSource velocity_rng(mixSeed(rule_seed, 0));
    std::vector<std::vector<double>> velocities(static_cast<std::size_t>(pso.n_particles));
    for (auto& v : velocities) {
        v.resize(static_cast<std::size_t>(order));
        for (double& c : v) c = velocity_rng.next() * pso.v_max;
    }

    const SwarmResult result = optimize(pso, order, positions, velocities, fitness);
    return RuleTraining{result.best_position, result.best_fitness, result.iterations_used,
                        result.converged};
}

TrainedModel trainAll(const Partitioning& partitioning, const FuzzificationStats& stats,
                      const RuleBase& rulebase, const TimeSeries& series,
                      const TrainingConfig& config) {
    TrainedModel model;
    model.partitioning = partitioning;
    model.stats = stats;
    model.rulebase = rulebase;
    model.config = config;
    model.seed = config.pso.seed;

    for (ForecastRule& rule : model.rulebase.rules) {
        if (trainableAnchors(rule, series).empty()) continue;  // end-of-series rule stays weightless

        RuleFit fit;
        RuleTraining best;
        bool have_best = false;
        for (int restart = 0; restart < config.runs; ++restart) {
            const std::uint64_t rule_seed =
                mixSeed(mixSeed(config.pso.seed, static_cast<std::uint64_t>(rule.label)),
                        static_cast<std::uint64_t>(restart));
            RuleTraining attempt = trainRule(rule, series, config, rule_seed);
            if (!have_best || attempt.fitness < best.fitness) {
                best = std::move(attempt);
                fit.best_restart = restart;
                have_best = true;
            }
        }
        rule.weights = best.weights;
        fit.fitness = best.fitness;
        fit.iterations_used = best.iterations_used;
        fit.converged = best.converged;
        model.rule_fits[rule.label] = fit;
    }
    return model;
}

std::vector<Forecast> forecastInSample(const TrainedModel& model, const TimeSeries& series) {
    const std::vector<FuzzifiedObservation> fuzzified = fuzzify(series, model.partitioning);
    std::vector<Forecast> forecasts;
    for (long long t = series.firstTime() + 2; t <= series.lastTime(); ++t) {
        const ForecastRule* rule = nullptr;
        try {
            rule = &matchRule(model.rulebase, fuzzified, t);
        } catch (const NoMatchError&) {
            continue;  // out-of-sample pattern: a gap, not a failure
        }
        if (!rule->weights) continue;  // matched an untrained rule: also a gap
        const std::vector<double> lags = laggedActuals(series, t, rule->order());
        forecasts.push_back({t, defuzzify(*rule->weights, lags), rule->label});
    }
    return forecasts;
}

} // namespace fuzzyts
