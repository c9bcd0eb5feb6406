#pragma once

#include <cstdint>
#include <string>

#include "fuzzyts/errors.hpp"
#include "fuzzyts/series.hpp"
#include "fuzzyts/trainer.hpp"

namespace fuzzyts {

/// Order-independent 64-bit digest of the observations; ties a model file to
/// the exact series it was trained on.
std::uint64_t seriesFingerprint(const TimeSeries& series);

/// 64-bit digest of the universe, breakpoints and segment length.
std::uint64_t partitioningFingerprint(const Partitioning& partitioning);

/// Serializes the model as a JSON document with sorted keys, so identical
/// models produce identical bytes. The schema is described in
/// docs/model_format.md.
std::string saveModel(const TrainedModel& model);
void saveModelFile(const TrainedModel& model, const std::string& path);

/// Parses a model document. Throws ModelFormatError on anything malformed.
TrainedModel loadModel(const std::string& json_text);
TrainedModel loadModelFile(const std::string& path);

} // namespace fuzzyts
