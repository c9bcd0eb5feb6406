#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fuzzyts/errors.hpp"
#include "fuzzyts/fuzzifier.hpp"
#include "fuzzyts/pso.hpp"
#include "fuzzyts/rules.hpp"
#include "fuzzyts/series.hpp"

namespace fuzzyts {

/// Weight-tuning parameters: the swarm settings plus the number of restarts
/// (the best restart's weights win).
struct TrainingConfig {
    PsoConfig pso{};
    int runs = 10;
};

/// Outcome of tuning one rule.
struct RuleTraining {
    std::vector<double> weights;
    double fitness = 0.0;
    int iterations_used = 0;
    bool converged = false;
};

/// Per-rule provenance kept alongside the trained rulebase.
struct RuleFit {
    double fitness = 0.0;
    int iterations_used = 0;
    bool converged = false;
    int best_restart = 0;
};

/// The persisted artifact: partitioning, weighted rules and everything needed
/// to reproduce the run.
struct TrainedModel {
    Partitioning partitioning;
    FuzzificationStats stats;
    RuleBase rulebase;
    TrainingConfig config;
    std::uint64_t series_fingerprint = 0;
    std::uint64_t seed = 0;
    std::map<int, RuleFit> rule_fits;  // keyed by rule label; absent for untrained rules
};

/// A defuzzified value for one time point.
struct Forecast {
    long long t = 0;
    double value = 0.0;
    int rule_label = 0;
};

/// Weighted sum of lagged actual values, sum of actuals[i] * weights[i] with
/// actuals ordered most recent first. Deliberately not an averaging operator:
/// the result may leave the min-max envelope of its inputs.
/// Throws DimensionMismatchError.
double defuzzify(std::span<const double> weights, std::span<const double> actuals);

/// Squared error of a single forecast.
double squaredError(double forecast, double actual);

/// Initial position shared by every particle when tuning a rule of the given
/// order: 0.75, 0.50, 0.25, then 0.05 from the fourth weight on, so recent
/// observations start with the stronger pull.
std::vector<double> initialWeightLadder(int order);

/// Tunes one rule with a single swarm run: dimension = rule order, fitness =
/// total squared error over the rule's anchors, positions seeded from the
/// ladder, velocities drawn uniformly from [0, v_max]. Deterministic given
/// rule_seed. Throws UntrainableRuleError when no anchor has an actual value.
RuleTraining trainRule(const ForecastRule& rule, const TimeSeries& series,
                       const TrainingConfig& config, std::uint64_t rule_seed);

/// Tunes every trainable rule, keeping the best of config.runs restarts per
/// rule. Restart seeds derive from (config.pso.seed, rule label, restart), so
/// results do not depend on scheduling. Untrainable end-of-series rules are
/// kept weightless rather than failing the batch.
TrainedModel trainAll(const Partitioning& partitioning, const FuzzificationStats& stats,
                      const RuleBase& rulebase, const TimeSeries& series,
                      const TrainingConfig& config);

/// Matches each in-range time point against the rulebase and defuzzifies with
/// the matched rule's weights over actual lagged values. Points with no
/// matching or no trained rule become gaps, not errors.
std::vector<Forecast> forecastInSample(const TrainedModel& model, const TimeSeries& series);

} // namespace fuzzyts
