#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fuzzyts/errors.hpp"
#include "fuzzyts/fuzzifier.hpp"

namespace fuzzyts {

/// A historical pattern of fuzzy-set labels, oldest first, describing the
/// history of the time point anchor_t. Starts as the pair preceding the
/// anchor and grows backward while the pattern collides with another group's.
struct FuzzySetGroup {
    int label = 0;                 // chronological id, 1-based
    std::vector<int> pattern;      // set indices, oldest first
    long long anchor_t = 0;        // the t this group's history leads up to
    int order() const { return static_cast<int>(pattern.size()); }
};

/// One conjunct of a rule: the set label required at lag steps before the
/// forecast time.
struct RuleCondition {
    int lag = 0;   // 1 = most recent
    int set = 0;
};

/// An if-then forecast rule: conditions are the source pattern in reversed
/// (most-recent-first) order; weights appear once the rule is trained.
struct ForecastRule {
    int label = 0;
    std::vector<RuleCondition> conditions;
    std::optional<std::vector<double>> weights;
    std::vector<long long> anchor_ts;
    int order() const { return static_cast<int>(conditions.size()); }
};

struct RuleBase {
    std::vector<ForecastRule> rules;
    std::uint64_t partitioning_fingerprint = 0;
};

/// One order-2 group per consecutive pair of labeled observations, in
/// chronological order; the group over the final pair is anchored one step
/// past the series end. Tie-labeled observations contribute their primary
/// set. Throws TooShortError for fewer than 3 observations.
std::vector<FuzzySetGroup> establishGroups(const std::vector<FuzzifiedObservation>& fuzzified);

/// Repeatedly finds groups sharing an identical pattern and extends every
/// such group one step further back in history, until all patterns are unique
/// or the colliding groups have no history left. Group count and anchors are
/// unchanged.
std::vector<FuzzySetGroup> disambiguate(std::vector<FuzzySetGroup> groups,
                                        const std::vector<FuzzifiedObservation>& fuzzified);

/// Converts groups to rules with reversed condition order. Groups left with
/// an identical pattern (history exhausted on both) coalesce into one rule
/// carrying all their anchors.
RuleBase toRules(const std::vector<FuzzySetGroup>& groups,
                 std::uint64_t partitioning_fingerprint = 0);

/// The rule whose conditions all hold at t, longest order winning when
/// several hold. A condition (lag k, set) holds iff the primary label k steps
/// before t is that set. Throws NoMatchError when no rule applies and
/// AmbiguousMatchError if two rules of equal maximal order apply (impossible
/// for a rulebase built from the same data).
const ForecastRule& matchRule(const RuleBase& rulebase,
                              const std::vector<FuzzifiedObservation>& fuzzified, long long t);

} // namespace fuzzyts
