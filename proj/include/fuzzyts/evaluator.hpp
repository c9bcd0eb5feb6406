#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyts/errors.hpp"
#include "fuzzyts/series.hpp"
#include "fuzzyts/trainer.hpp"

namespace fuzzyts {

/// Mean squared error over (forecast, actual) pairs. Throws EmptyInputError.
double mse(const std::vector<std::pair<double, double>>& pairs);

/// Mean absolute percentage error, in percent. Throws EmptyInputError and
/// ZeroActualError.
double mape(const std::vector<std::pair<double, double>>& pairs);

struct ReportRow {
    long long t = 0;
    double actual = 0.0;
    std::optional<double> forecast;  // absent = gap (no rule applied)
    std::optional<int> rule_label;
};

/// Aligned forecast report. For whole-number series the headline metrics are
/// computed on integer-rounded forecasts (the scale the data is quoted in)
/// and the full-precision metrics ride along; otherwise the two coincide.
/// Metrics are absent when nothing was evaluated.
struct EvaluationReport {
    std::vector<ReportRow> rows;
    int n_evaluated = 0;
    bool integer_scaled = false;
    std::optional<double> mse;
    std::optional<double> mape;
    std::optional<double> mse_full;
    std::optional<double> mape_full;
};

/// Aligns forecasts with the series, leaving gaps where no forecast exists.
/// Throws AlignmentError for a forecast at a time the series does not have.
EvaluationReport buildReport(const TimeSeries& series, const std::vector<Forecast>& forecasts);

/// Plain-text table: one row per series point plus the metric footer.
std::string renderText(const EvaluationReport& report);

/// CSV with columns t,actual,forecast,abs_error,pct_error and footer rows
/// MSE and MAPE. Gap rows leave the last three fields empty.
std::string renderCsv(const EvaluationReport& report);

/// A published model's forecasts of the same series, for the comparison
/// table.
struct ReferenceModel {
    std::string name;
    std::map<long long, double> forecasts;
    double reported_mse = 0.0;
    double reported_mape = 0.0;
};

/// Published per-year forecasts of the enrollment series from seven earlier
/// models, shipped as static data for report rendering.
const std::vector<ReferenceModel>& enrollmentReferenceModels();

/// Side-by-side table of this run against the published reference models
/// (only rendered when the report's years overlap the reference data).
std::string renderComparison(const EvaluationReport& report);

} // namespace fuzzyts
