#pragma once

#include <optional>
#include <vector>

#include "fuzzyts/errors.hpp"
#include "fuzzyts/series.hpp"

namespace fuzzyts {

/// Gap statistics of the sorted value list. For whole-number input all three
/// figures are rounded to the nearest integer, which is what makes the
/// generated breakpoints land on whole numbers too.
struct FuzzificationStats {
    double avg_distance = 0.0;          // mean |gap| between consecutive sorted values
    double std_dev = 0.0;               // population std dev of those gaps
    double revised_avg_distance = 0.0;  // mean of the gaps surviving the outlier cut
};

/// Closed interval the fuzzy sets are defined on: data extent widened by the
/// revised average distance on both sides.
struct Universe {
    double lower = 0.0;
    double upper = 0.0;
    double range() const { return upper - lower; }
};

/// One trapezoidal fuzzy set, membership 1 on the core [b, c], linear on
/// [a, b] and [c, d], 0 outside.
struct TrapezoidalSet {
    int index = 0;  // 1-based position within the partitioning
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

/// Piecewise-linear trapezoid evaluation; total over all x, always in [0, 1].
/// A vertical edge (a == b or c == d) is 1 on [b, c] and 0 strictly outside.
double membership(const TrapezoidalSet& set, double x);

/// An ordered chain of overlapping trapezoids covering the universe.
/// Adjacent sets share breakpoints (sets[i].c == sets[i+1].a and
/// sets[i].d == sets[i+1].b), the first core starts at the data minimum and
/// the last core ends at the data maximum.
struct Partitioning {
    Universe universe;
    std::vector<TrapezoidalSet> sets;
    double segment_length = 0.0;  // adapted segment between consecutive breakpoints
    int nSets() const { return static_cast<int>(sets.size()); }
};

/// A value labeled with the set of maximal membership. When exactly two sets
/// tie at 0.5 both are recorded, primary being the lower-indexed one.
struct FuzzifiedObservation {
    long long t = 0;
    int primary_set = 0;
    std::optional<int> secondary_set;
    double membership_primary = 0.0;
    std::optional<double> membership_secondary;
};

/// Mean absolute distance between consecutive values of the ascending
/// permutation. Throws TooFewValuesError for fewer than 2 values.
double averageDistance(const std::vector<double>& values);

/// Population standard deviation of the sorted-gap list around avg,
/// sqrt((1/m) * sum (g_i - avg)^2) over the m = n-1 gaps.
double stdDevOfGaps(const std::vector<double>& values, double avg);

/// Full gap statistics: computes the average distance and its std dev,
/// discards gaps outside the closed band [avg - std, avg + std], and averages
/// the survivors. Falls back to the unrevised average when nothing survives
/// or the survivor mean is not positive, so the pipeline stays total.
FuzzificationStats revisedAverageDistance(const std::vector<double>& values);

/// [d_min - AD_R, d_max + AD_R]. Throws DegenerateSeriesError when
/// d_min == d_max.
Universe universeOf(const FuzzificationStats& stats, double d_min, double d_max);

/// Number of sets n = round((range - segment) / (2 * segment)), at least 1.
/// Half-way cases round up. Throws InvalidSegmentError unless
/// 0 < segment < range.
int numberOfSets(double range, double segment);

/// Lays out the n trapezoids. Interior breakpoints sit on an adapted segment
/// S' = (d_max - d_min) / (2n - 1) so that the first core starts exactly at
/// d_min and the last core ends exactly at d_max; only the outermost spreads
/// use the universe bounds. Breakpoints are rounded to whole numbers when
/// d_min, d_max and the revised average distance are all whole numbers.
Partitioning buildPartitioning(const FuzzificationStats& stats, double d_min, double d_max);

/// One-call form: gap statistics and partitioning straight from a series.
Partitioning buildPartitioning(const TimeSeries& series);

/// Labels every observation with its maximal-membership set. Throws
/// OutOfUniverseError if a value falls outside the universe, which cannot
/// happen for the series the partitioning was built from.
std::vector<FuzzifiedObservation> fuzzify(const TimeSeries& series, const Partitioning& partitioning);

} // namespace fuzzyts
