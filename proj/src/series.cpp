#include "fuzzyts/series.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fuzzyts {

namespace {

bool parseLongLong(const std::string& text, long long& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parseDouble(const std::string& text, double& out) {
    if (text.empty()) return false;
    try {
        std::size_t consumed = 0;
        out = std::stod(text, &consumed);
        return consumed == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

TimeSeries::TimeSeries(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
    integer_valued_ = std::all_of(observations_.begin(), observations_.end(),
                                  [](const Observation& o) { return o.value == std::round(o.value); });
}

TimeSeries TimeSeries::fromObservations(std::vector<Observation> observations) {
    for (const Observation& o : observations) {
        if (!std::isfinite(o.value)) {
            throw NonFiniteError("non-finite value at t=" + std::to_string(o.t));
        }
    }
    std::sort(observations.begin(), observations.end(),
              [](const Observation& a, const Observation& b) { return a.t < b.t; });
    if (observations.size() < 3) {
        throw TooShortError("series needs at least 3 observations, got " +
                            std::to_string(observations.size()));
    }
    for (std::size_t i = 1; i < observations.size(); ++i) {
        if (observations[i].t != observations[i - 1].t + 1) {
            throw GapError("time indices must advance by 1: t=" +
                           std::to_string(observations[i - 1].t) + " is followed by t=" +
                           std::to_string(observations[i].t));
        }
    }
    return TimeSeries(std::move(observations));
}

double TimeSeries::valueAt(long long t) const {
    if (t < firstTime() || t > lastTime()) {
        throw OutOfRangeError("t=" + std::to_string(t) + " outside [" +
                              std::to_string(firstTime()) + ", " + std::to_string(lastTime()) + "]");
    }
    return observations_[static_cast<std::size_t>(t - firstTime())].value;
}

std::vector<double> TimeSeries::values() const {
    std::vector<double> v;
    v.reserve(observations_.size());
    for (const Observation& o : observations_) v.push_back(o.value);
    return v;
}

TimeSeries loadCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }

    std::vector<Observation> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;

        std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError("row " + std::to_string(line_no) + ": expected exactly two fields");
        }
        std::string t_field = trimmed(line.substr(0, comma));
        std::string v_field = trimmed(line.substr(comma + 1));

        long long t = 0;
        if (!parseLongLong(t_field, t)) {
            if (first_content_line) {
                // header row, detected by the non-numeric first field
                first_content_line = false;
                continue;
            }
            throw ParseError("row " + std::to_string(line_no) + ": time index '" + t_field +
                             "' is not an integer");
        }
        first_content_line = false;

        double value = 0.0;
        if (!parseDouble(v_field, value)) {
            throw ParseError("row " + std::to_string(line_no) + ": value '" + v_field +
                             "' is not a number");
        }
        if (!std::isfinite(value)) {
            throw NonFiniteError("row " + std::to_string(line_no) + ": value is not finite");
        }
        rows.push_back({t, value});
    }
    return TimeSeries::fromObservations(std::move(rows));
}

} // namespace fuzzyts
