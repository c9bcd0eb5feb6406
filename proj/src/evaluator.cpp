#include "fuzzyts/evaluator.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace fuzzyts {

double mse(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) throw EmptyInputError("no forecast/actual pairs");
    double sum = 0.0;
    for (const auto& [forecast, actual] : pairs) {
        const double diff = forecast - actual;
        sum += diff * diff;
    }
    return sum / static_cast<double>(pairs.size());
}

double mape(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) throw EmptyInputError("no forecast/actual pairs");
    double sum = 0.0;
    for (const auto& [forecast, actual] : pairs) {
        if (actual == 0.0) throw ZeroActualError("actual value is zero");
        sum += std::abs(forecast - actual) / actual;
    }
    return sum / static_cast<double>(pairs.size()) * 100.0;
}

EvaluationReport buildReport(const TimeSeries& series, const std::vector<Forecast>& forecasts) {
    std::map<long long, const Forecast*> by_t;
    for (const Forecast& f : forecasts) {
        if (f.t < series.firstTime() || f.t > series.lastTime() || !by_t.emplace(f.t, &f).second) {
            throw AlignmentError("forecast at unknown or duplicate t=" + std::to_string(f.t));
        }
    }

    EvaluationReport report;
    report.integer_scaled = series.integerValued();
    std::vector<std::pair<double, double>> full_pairs;
    std::vector<std::pair<double, double>> scaled_pairs;
    for (const Observation& obs : series.observations()) {
        ReportRow row;
        row.t = obs.t;
        row.actual = obs.value;
        auto it = by_t.find(obs.t);
        if (it != by_t.end()) {
            row.forecast = it->second->value;
            row.rule_label = it->second->rule_label;
            full_pairs.emplace_back(it->second->value, obs.value);
            scaled_pairs.emplace_back(report.integer_scaled ? std::round(it->second->value)
                                                            : it->second->value,
                                      obs.value);
        }
        report.rows.push_back(row);
    }
    report.n_evaluated = static_cast<int>(full_pairs.size());

    try {
        report.mse_full = mse(full_pairs);
        report.mse = mse(scaled_pairs);
    } catch (const EmptyInputError&) {
    }
    try {
        report.mape_full = mape(full_pairs);
        report.mape = mape(scaled_pairs);
    } catch (const Error&) {  // empty input or a zero actual: metrics stay absent
    }
    return report;
}

namespace {

std::string formatValue(double v, bool integer_scaled) {
    std::ostringstream os;
    if (integer_scaled) {
        os << static_cast<long long>(std::llround(v));
    } else {
        os << std::fixed << std::setprecision(4) << v;
    }
    return os.str();
}

std::string formatMetric(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

std::string renderText(const EvaluationReport& report) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "t" << std::right << std::setw(12) << "actual"
       << std::setw(12) << "forecast" << std::setw(12) << "abs_error" << std::setw(12)
       << "pct_error" << std::setw(8) << "rule" << '\n';
    for (const ReportRow& row : report.rows) {
        os << std::left << std::setw(8) << row.t << std::right << std::setw(12)
           << formatValue(row.actual, report.integer_scaled);
        if (row.forecast) {
            const double shown = report.integer_scaled ? std::round(*row.forecast) : *row.forecast;
            std::ostringstream pct;
            pct << std::fixed << std::setprecision(4)
                << std::abs(shown - row.actual) / row.actual * 100.0;
            os << std::setw(12) << formatValue(shown, report.integer_scaled) << std::setw(12)
               << formatValue(std::abs(shown - row.actual), report.integer_scaled) << std::setw(12)
               << pct.str() << std::setw(8) << *row.rule_label;
        } else {
            os << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-"
               << std::setw(8) << "-";
        }
        os << '\n';
    }
    os << '\n'
       << "evaluated " << report.n_evaluated << " of " << report.rows.size() << " points\n";
    if (report.mse) {
        os << "MSE  " << formatMetric(*report.mse);
        if (report.integer_scaled) os << "  (full precision " << formatMetric(*report.mse_full) << ")";
        os << '\n';
    }
    if (report.mape) {
        os << "MAPE " << formatMetric(*report.mape) << " %";
        if (report.integer_scaled) os << "  (full precision " << formatMetric(*report.mape_full) << " %)";
        os << '\n';
    }
    return os.str();
}

std::string renderCsv(const EvaluationReport& report) {
    std::ostringstream os;
    os << "t,actual,forecast,abs_error,pct_error\n";
    for (const ReportRow& row : report.rows) {
        os << row.t << ',' << formatValue(row.actual, report.integer_scaled) << ',';
        if (row.forecast) {
            const double shown = report.integer_scaled ? std::round(*row.forecast) : *row.forecast;
            std::ostringstream pct;
            pct << std::setprecision(6) << std::abs(shown - row.actual) / row.actual * 100.0;
            os << formatValue(shown, report.integer_scaled) << ','
               << formatValue(std::abs(shown - row.actual), report.integer_scaled) << ','
               << pct.str();
        } else {
            os << ",,";
        }
        os << '\n';
    }
    if (report.mse) os << "MSE," << formatMetric(*report.mse) << ",,,\n";
    if (report.mape) os << "MAPE," << formatMetric(*report.mape) << ",,,\n";
    return os.str();
}

const std::vector<ReferenceModel>& enrollmentReferenceModels() {
    static const std::vector<ReferenceModel> models = {
        {"Chen (order 3)",
         {{1974, 14500}, {1975, 15500}, {1976, 15500}, {1977, 15500}, {1978, 15500},
          {1979, 16500}, {1980, 16500}, {1981, 16500}, {1982, 15500}, {1983, 15500},
          {1984, 15500}, {1985, 15500}, {1986, 15500}, {1987, 16500}, {1988, 18500},
          {1989, 18500}, {1990, 19500}, {1991, 19500}, {1992, 18500}},
         86694, 1.53},
        {"Li and Cheng",
         {{1972, 13500}, {1973, 13500}, {1974, 14500}, {1975, 15500}, {1976, 15500},
          {1977, 15500}, {1978, 15500}, {1979, 16500}, {1980, 16500}, {1981, 16500},
          {1982, 15500}, {1983, 15500}, {1984, 15500}, {1985, 15500}, {1986, 15500},
          {1987, 16500}, {1988, 18500}, {1989, 18500}, {1990, 19500}, {1991, 19500},
          {1992, 18500}},
         85040, 1.53},
        {"Sing (order 3)",
         {{1974, 14750}, {1975, 15750}, {1976, 15500}, {1977, 15500}, {1978, 15500},
          {1979, 16500}, {1980, 16500}, {1981, 16500}, {1982, 15500}, {1983, 15500},
          {1984, 15250}, {1985, 15500}, {1986, 15500}, {1987, 16500}, {1988, 18500},
          {1989, 18500}, {1990, 19500}, {1991, 19500}, {1992, 18750}},
         76509, 1.41},
        {"Stevenson and Porter",
         {{1972, 13410}, {1973, 13932}, {1974, 14664}, {1975, 15423}, {1976, 15847},
          {1977, 15580}, {1978, 15877}, {1979, 16773}, {1980, 16897}, {1981, 16341},
          {1982, 15671}, {1983, 15507}, {1984, 15200}, {1985, 15218}, {1986, 16035},
          {1987, 16903}, {1988, 17953}, {1989, 18879}, {1990, 19303}, {1991, 19432},
          {1992, 18966}},
         21575, 0.57},
        {"Chen and Hsu",
         {{1972, 13750}, {1973, 13875}, {1974, 14750}, {1975, 15375}, {1976, 15313},
          {1977, 15625}, {1978, 15813}, {1979, 16834}, {1980, 16834}, {1981, 16416},
          {1982, 15375}, {1983, 15375}, {1984, 15125}, {1985, 15125}, {1986, 15938},
          {1987, 16834}, {1988, 18250}, {1989, 18875}, {1990, 19250}, {1991, 19250},
          {1992, 18875}},
         5611, 0.36},
        {"Chen and Chung (order 9)",
         {{1979, 16846}, {1980, 16846}, {1981, 16420}, {1982, 15462}, {1983, 15462},
          {1984, 15153}, {1985, 15153}, {1986, 15977}, {1987, 16846}, {1988, 18133},
          {1989, 18910}, {1990, 19334}, {1991, 19334}, {1992, 18910}},
         1101, 0.15},
        {"Kuo et al (order 9)",
         {{1980, 16890}, {1981, 16395}, {1982, 15434}, {1983, 15505}, {1984, 15153},
          {1985, 15153}, {1986, 15971}, {1987, 16890}, {1988, 18124}, {1989, 18971},
          {1990, 19337}, {1991, 19337}, {1992, 18882}},
         234, 0.014},
    };
    return models;
}

std::string renderComparison(const EvaluationReport& report) {
    const auto& references = enrollmentReferenceModels();
    std::ostringstream os;
    os << std::left << std::setw(8) << "t" << std::right << std::setw(10) << "actual";
    for (const ReferenceModel& m : references) {
        os << std::setw(12) << m.name.substr(0, 11);
    }
    os << std::setw(12) << "this run" << '\n';
    for (const ReportRow& row : report.rows) {
        os << std::left << std::setw(8) << row.t << std::right << std::setw(10)
           << formatValue(row.actual, report.integer_scaled);
        for (const ReferenceModel& m : references) {
            auto it = m.forecasts.find(row.t);
            if (it != m.forecasts.end()) {
                os << std::setw(12) << formatValue(it->second, true);
            } else {
                os << std::setw(12) << "-";
            }
        }
        if (row.forecast) {
            const double shown = report.integer_scaled ? std::round(*row.forecast) : *row.forecast;
            os << std::setw(12) << formatValue(shown, report.integer_scaled);
        } else {
            os << std::setw(12) << "-";
        }
        os << '\n';
    }
    os << std::left << std::setw(8) << "MSE" << std::right << std::setw(10) << "";
    for (const ReferenceModel& m : references) os << std::setw(12) << formatMetric(m.reported_mse);
    os << std::setw(12) << (report.mse ? formatMetric(*report.mse) : "-") << '\n';
    os << std::left << std::setw(8) << "MAPE" << std::right << std::setw(10) << "";
    for (const ReferenceModel& m : references) os << std::setw(12) << formatMetric(m.reported_mape);
    os << std::setw(12) << (report.mape ? formatMetric(*report.mape) : "-") << '\n';
    return os.str();
}

} // namespace fuzzyts
