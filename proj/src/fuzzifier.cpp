#include "fuzzyts/fuzzifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fuzzyts {

namespace {

std::vector<double> sortedGaps(const std::vector<double>& values) {
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> gaps;
    gaps.reserve(sorted.size() - 1);
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        gaps.push_back(std::abs(sorted[i] - sorted[i - 1]));
    }
    return gaps;
}

bool wholeNumber(double x) { return x == std::round(x); }

bool allWholeNumbers(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(), wholeNumber);
}

double roundHalfUp(double x) { return std::floor(x + 0.5); }

} // namespace

double averageDistance(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw TooFewValuesError("need at least 2 values, got " + std::to_string(values.size()));
    }
    const std::vector<double> gaps = sortedGaps(values);
    double sum = 0.0;
    for (double g : gaps) sum += g;
    return sum / static_cast<double>(gaps.size());
}

double stdDevOfGaps(const std::vector<double>& values, double avg) {
    if (values.size() < 2) {
        throw TooFewValuesError("need at least 2 values, got " + std::to_string(values.size()));
    }
    const std::vector<double> gaps = sortedGaps(values);
    double sum_sq = 0.0;
    for (double g : gaps) sum_sq += (g - avg) * (g - avg);
    return std::sqrt(sum_sq / static_cast<double>(gaps.size()));
}

FuzzificationStats revisedAverageDistance(const std::vector<double>& values) {
    const bool integral = allWholeNumbers(values);
    FuzzificationStats stats;
    stats.avg_distance = averageDistance(values);
    stats.std_dev = stdDevOfGaps(values, stats.avg_distance);
    if (integral) {
        stats.avg_distance = roundHalfUp(stats.avg_distance);
        stats.std_dev = roundHalfUp(stats.std_dev);
    }

    const double lo = stats.avg_distance - stats.std_dev;
    const double hi = stats.avg_distance + stats.std_dev;
    double sum = 0.0;
    std::size_t kept = 0;
    for (double g : sortedGaps(values)) {
        if (g >= lo && g <= hi) {
            sum += g;
            ++kept;
        }
    }

    double revised = kept > 0 ? sum / static_cast<double>(kept) : stats.avg_distance;
    if (revised <= 0.0) revised = stats.avg_distance;  // all-equal survivors; skip the revision
    stats.revised_avg_distance = integral ? roundHalfUp(revised) : revised;
    return stats;
}

Universe universeOf(const FuzzificationStats& stats, double d_min, double d_max) {
    if (!(d_min < d_max)) {
        throw DegenerateSeriesError("data minimum must be below data maximum");
    }
    return Universe{d_min - stats.revised_avg_distance, d_max + stats.revised_avg_distance};
}

int numberOfSets(double range, double segment) {
    if (!(segment > 0.0) || !(range > segment)) {
        throw InvalidSegmentError("need 0 < segment < range");
    }
    const int n = static_cast<int>(roundHalfUp((range - segment) / (2.0 * segment)));
    return std::max(n, 1);
}

double membership(const TrapezoidalSet& set, double x) {
    if (x >= set.b && x <= set.c) return 1.0;
    if (x >= set.a && x < set.b) return set.b > set.a ? (x - set.a) / (set.b - set.a) : 0.0;
    if (x > set.c && x <= set.d) return set.d > set.c ? (set.d - x) / (set.d - set.c) : 0.0;
    return 0.0;
}

Partitioning buildPartitioning(const FuzzificationStats& stats, double d_min, double d_max) {
    const Universe universe = universeOf(stats, d_min, d_max);
    const int n = numberOfSets(universe.range(), stats.revised_avg_distance);
    const double segment = (d_max - d_min) / static_cast<double>(2 * n - 1);
    const bool integral = wholeNumber(d_min) && wholeNumber(d_max) &&
                          wholeNumber(stats.revised_avg_distance);

    // Shared breakpoint grid: set i uses points 2i-3, 2i-2, 2i-1, 2i, so
    // adjacent sets overlap exactly. Pinning the endpoints keeps the first
    // core at d_min and the last at d_max regardless of rounding.
    std::vector<double> grid(static_cast<std::size_t>(2 * n + 2));
    for (int k = -1; k <= 2 * n; ++k) {
        grid[static_cast<std::size_t>(k + 1)] = d_min + static_cast<double>(k) * segment;
    }
    grid[static_cast<std::size_t>(2 * n)] = d_max;  // index 2n-1 of the k-grid
    if (integral) {
        for (double& g : grid) g = roundHalfUp(g);
    }
    auto at = [&grid](int k) { return grid[static_cast<std::size_t>(k + 1)]; };

    Partitioning out;
    out.universe = universe;
    out.segment_length = segment;
    out.sets.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        TrapezoidalSet set;
        set.index = i;
        set.a = i == 1 ? universe.lower : at(2 * i - 3);
        set.b = at(2 * i - 2);
        set.c = at(2 * i - 1);
        set.d = i == n ? universe.upper : at(2 * i);
        out.sets.push_back(set);
    }
    return out;
}

Partitioning buildPartitioning(const TimeSeries& series) {
    const std::vector<double> values = series.values();
    const FuzzificationStats stats = revisedAverageDistance(values);
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    return buildPartitioning(stats, *min_it, *max_it);
}

std::vector<FuzzifiedObservation> fuzzify(const TimeSeries& series, const Partitioning& partitioning) {
    std::vector<FuzzifiedObservation> out;
    out.reserve(series.size());
    for (const Observation& obs : series.observations()) {
        if (obs.value < partitioning.universe.lower || obs.value > partitioning.universe.upper) {
            throw OutOfUniverseError("value " + std::to_string(obs.value) + " at t=" +
                                     std::to_string(obs.t) + " lies outside the universe");
        }
        int best = 0;
        int second = 0;
        double best_mu = -1.0;
        double second_mu = -1.0;
        for (const TrapezoidalSet& set : partitioning.sets) {
            const double mu = membership(set, obs.value);
            if (mu > best_mu) {
                second = best;
                second_mu = best_mu;
                best = set.index;
                best_mu = mu;
            } else if (mu > second_mu) {
                second = set.index;
                second_mu = mu;
            }
        }
        FuzzifiedObservation fo;
        fo.t = obs.t;
        fo.primary_set = best;
        fo.membership_primary = best_mu;
        if (second != 0 && second_mu == best_mu && best_mu == 0.5) {
            // the 0.5/0.5 overlap tie; by construction best has the lower index
            fo.secondary_set = second;
            fo.membership_secondary = second_mu;
        }
        out.push_back(fo);
    }
    return out;
}

} // namespace fuzzyts
