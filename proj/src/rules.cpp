#include "fuzzyts/rules.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace fuzzyts {

namespace {

class LabelLookup {
public:
    explicit LabelLookup(const std::vector<FuzzifiedObservation>& fuzzified)
        : fuzzified_(fuzzified), first_t_(fuzzified.empty() ? 0 : fuzzified.front().t) {}

    bool has(long long t) const {
        return !fuzzified_.empty() && t >= first_t_ &&
               t < first_t_ + static_cast<long long>(fuzzified_.size());
    }

    int primaryAt(long long t) const {
        return fuzzified_[static_cast<std::size_t>(t - first_t_)].primary_set;
    }

    long long firstTime() const { return first_t_; }

private:
    const std::vector<FuzzifiedObservation>& fuzzified_;
    long long first_t_;
};

} // namespace

std::vector<FuzzySetGroup> establishGroups(const std::vector<FuzzifiedObservation>& fuzzified) {
    if (fuzzified.size() < 3) {
        throw TooShortError("need at least 3 labeled observations, got " +
                            std::to_string(fuzzified.size()));
    }
    std::vector<FuzzySetGroup> groups;
    groups.reserve(fuzzified.size() - 1);
    for (std::size_t i = 1; i < fuzzified.size(); ++i) {
        FuzzySetGroup g;
        g.label = static_cast<int>(i);
        g.pattern = {fuzzified[i - 1].primary_set, fuzzified[i].primary_set};
        g.anchor_t = fuzzified[i].t + 1;
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<FuzzySetGroup> disambiguate(std::vector<FuzzySetGroup> groups,
                                        const std::vector<FuzzifiedObservation>& fuzzified) {
    const LabelLookup lookup(fuzzified);
    while (true) {
        std::map<std::vector<int>, std::vector<std::size_t>> by_pattern;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            by_pattern[groups[i].pattern].push_back(i);
        }
        bool extended = false;
        for (const auto& [pattern, members] : by_pattern) {
            if (members.size() < 2) continue;
            for (std::size_t i : members) {
                FuzzySetGroup& g = groups[i];
                const long long prepend_t = g.anchor_t - g.order() - 1;
                if (!lookup.has(prepend_t)) continue;  // history exhausted for this one
                g.pattern.insert(g.pattern.begin(), lookup.primaryAt(prepend_t));
                extended = true;
            }
        }
        if (!extended) break;  // all unique, or only inextensible collisions remain
    }
    return groups;
}

RuleBase toRules(const std::vector<FuzzySetGroup>& groups, std::uint64_t partitioning_fingerprint) {
    RuleBase base;
    base.partitioning_fingerprint = partitioning_fingerprint;
    std::map<std::vector<int>, std::size_t> seen;
    for (const FuzzySetGroup& g : groups) {
        auto it = seen.find(g.pattern);
        if (it != seen.end()) {
            // inextensible duplicate: one rule, trained against all its anchors
            base.rules[it->second].anchor_ts.push_back(g.anchor_t);
            continue;
        }
        ForecastRule rule;
        rule.label = g.label;
        rule.conditions.reserve(g.pattern.size());
        for (int lag = 1; lag <= g.order(); ++lag) {
            rule.conditions.push_back({lag, g.pattern[static_cast<std::size_t>(g.order() - lag)]});
        }
        rule.anchor_ts = {g.anchor_t};
        seen.emplace(g.pattern, base.rules.size());
        base.rules.push_back(std::move(rule));
    }
    return base;
}

const ForecastRule& matchRule(const RuleBase& rulebase,
                              const std::vector<FuzzifiedObservation>& fuzzified, long long t) {
    const LabelLookup lookup(fuzzified);
    const ForecastRule* best = nullptr;
    bool tie = false;
    for (const ForecastRule& rule : rulebase.rules) {
        bool holds = true;
        for (const RuleCondition& cond : rule.conditions) {
            const long long when = t - cond.lag;
            if (!lookup.has(when) || lookup.primaryAt(when) != cond.set) {
                holds = false;
                break;
            }
        }
        if (!holds) continue;
        if (best == nullptr || rule.order() > best->order()) {
            best = &rule;
            tie = false;
        } else if (rule.order() == best->order()) {
            tie = true;
        }
    }
    if (best == nullptr) {
        throw NoMatchError("no rule matches the history at t=" + std::to_string(t));
    }
    if (tie) {
        throw AmbiguousMatchError("two rules of equal order match at t=" + std::to_string(t));
    }
    return *best;
}

} // namespace fuzzyts
