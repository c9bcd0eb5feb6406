#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzyts/errors.hpp"

namespace fuzzyts {

/// One observation of a univariate series: an integer time index (a calendar
/// year, or any unit-step ordinal) and a real value.
struct Observation {
    long long t = 0;
    double value = 0.0;
};

/// An immutable, gap-free univariate time series. Time indices are strictly
/// increasing with unit step and there are at least 3 observations. Safe to
/// share read-only across threads.
class TimeSeries {
public:
    /// Validates and normalizes a batch of observations (sorted by t).
    /// Throws NonFiniteError, GapError or TooShortError.
    static TimeSeries fromObservations(std::vector<Observation> observations);

    const std::vector<Observation>& observations() const { return observations_; }
    std::size_t size() const { return observations_.size(); }
    long long firstTime() const { return observations_.front().t; }
    long long lastTime() const { return observations_.back().t; }

    /// Value at time index t. Throws OutOfRangeError outside [firstTime, lastTime].
    double valueAt(long long t) const;

    std::vector<double> values() const;

    /// True when every value is a whole number; drives the integer-rounding
    /// behavior of the fuzzifier and the evaluator.
    bool integerValued() const { return integer_valued_; }

private:
    explicit TimeSeries(std::vector<Observation> observations);

    std::vector<Observation> observations_;
    bool integer_valued_ = false;
};

/// Loads a two-column CSV (`t,value`, optional header detected by a
/// non-numeric first field, LF or CRLF endings). Rows may appear in any
/// order; the result is normalized to ascending t.
/// Throws ParseError (with the offending row number), NonFiniteError,
/// GapError or TooShortError.
TimeSeries loadCsv(const std::string& path);

} // namespace fuzzyts
