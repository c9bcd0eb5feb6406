#include <doctest.h>

#include "fuzzyts/evaluator.hpp"
#include "fuzzyts/model_io.hpp"
#include "fuzzyts/rules.hpp"
#include "fuzzyts/trainer.hpp"
#include "testutil.hpp"

using namespace fuzzyts;

namespace {

TrainedModel smallTrainedModel(std::uint64_t seed) {
    const TimeSeries series = testutil::enrollmentSeries();
    const Partitioning partitioning = buildPartitioning(series);
    const FuzzificationStats stats = revisedAverageDistance(series.values());
    const auto fz = fuzzify(series, partitioning);
    const RuleBase base =
        toRules(disambiguate(establishGroups(fz), fz), partitioningFingerprint(partitioning));
    TrainingConfig cfg;
    cfg.pso.seed = seed;
    cfg.runs = 2;  // fast but real training
    TrainedModel model = trainAll(partitioning, stats, base, series, cfg);
    model.series_fingerprint = seriesFingerprint(series);
    return model;
}

} // namespace

TEST_CASE("fingerprints discriminate series and partitionings") {
    const TimeSeries a = testutil::enrollmentSeries();
    const TimeSeries b =
        TimeSeries::fromObservations({{1971, 13055}, {1972, 13563}, {1973, 13868}});
    CHECK(seriesFingerprint(a) == seriesFingerprint(testutil::enrollmentSeries()));
    CHECK(seriesFingerprint(a) != seriesFingerprint(b));

    const Partitioning pa = buildPartitioning(a);
    Partitioning pb = pa;
    pb.sets[3].c += 1.0;
    CHECK(partitioningFingerprint(pa) != partitioningFingerprint(pb));
}

TEST_CASE("a model survives a save and load round trip") {
    const TimeSeries series = testutil::enrollmentSeries();
    const TrainedModel model = smallTrainedModel(99);
    const TrainedModel loaded = loadModel(saveModel(model));

    CHECK(loaded.seed == model.seed);
    CHECK(loaded.series_fingerprint == model.series_fingerprint);
    CHECK(loaded.stats.revised_avg_distance == model.stats.revised_avg_distance);
    REQUIRE(loaded.partitioning.sets.size() == model.partitioning.sets.size());
    for (std::size_t i = 0; i < model.partitioning.sets.size(); ++i) {
        CHECK(loaded.partitioning.sets[i].a == model.partitioning.sets[i].a);
        CHECK(loaded.partitioning.sets[i].d == model.partitioning.sets[i].d);
    }
    REQUIRE(loaded.rulebase.rules.size() == model.rulebase.rules.size());
    for (std::size_t i = 0; i < model.rulebase.rules.size(); ++i) {
        CHECK(loaded.rulebase.rules[i].weights == model.rulebase.rules[i].weights);
        CHECK(loaded.rulebase.rules[i].anchor_ts == model.rulebase.rules[i].anchor_ts);
    }

    // and reproduces identical forecasts
    const auto original = forecastInSample(model, series);
    const auto reloaded = forecastInSample(loaded, series);
    REQUIRE(original.size() == reloaded.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(original[i].t == reloaded[i].t);
        CHECK(original[i].value == reloaded[i].value);
        CHECK(original[i].rule_label == reloaded[i].rule_label);
    }
}

TEST_CASE("serialization is stable across a round trip") {
    const TrainedModel model = smallTrainedModel(4321);
    const std::string once = saveModel(model);
    CHECK(once == saveModel(loadModel(once)));
}

TEST_CASE("loadModel rejects malformed documents") {
    CHECK_THROWS_AS(loadModel("this is not json"), ModelFormatError);
    CHECK_THROWS_AS(loadModel("{}"), ModelFormatError);
    CHECK_THROWS_AS(loadModel(R"({"format": "something-else"})"), ModelFormatError);
    CHECK_THROWS_AS(loadModelFile("/nonexistent/model.json"), ModelFormatError);
}
