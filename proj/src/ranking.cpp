#include "wccmine/ranking.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

// Total order over scored rules for one measure: score descending, then
// cf(X u Y) descending, then canonical rule order. Total because a rule
// appears at most once.
bool ranks_before(const ScoredRule& l, const ScoredRule& r, Measure measure) {
    const double ls = l.scores.at(measure);
    const double rs = r.scores.at(measure);
    if (ls != rs)
        return ls > rs;
    if (l.freq.cf_xy() != r.freq.cf_xy())
        return l.freq.cf_xy() > r.freq.cf_xy();
    if (l.rule.antecedent() != r.rule.antecedent())
        return l.rule.antecedent() < r.rule.antecedent();
    return l.rule.consequent() < r.rule.consequent();
}

// Uniform integer in [0, n) by rejection, avoiding both modulo bias and
// the unspecified stdlib distribution algorithms.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = rng();
    while (v >= limit)
        v = rng();
    return v % n;
}

} // namespace

std::string_view to_string(ListLabel label) {
    switch (label) {
    case ListLabel::OnlyA: return "only_a";
    case ListLabel::OnlyB: return "only_b";
    case ListLabel::Both: return "both";
    }
    throw UsageError("invalid list label");
}

RankedList top_k(const std::vector<ScoredRule>& rules, Measure measure,
                 int k) {
    if (k < 1)
        throw UsageError("top_k: k must be >= 1");
    for (const ScoredRule& r : rules)
        if (!r.scores.contains(measure))
            throw UsageError("top_k: rule lacks a score for measure '" +
                             std::string(to_string(measure)) + "'");
    std::vector<ScoredRule> sorted = rules;
    std::sort(sorted.begin(), sorted.end(),
              [measure](const ScoredRule& l, const ScoredRule& r) {
        return ranks_before(l, r, measure);
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].rule == sorted[i - 1].rule)
            throw UsageError("top_k: duplicate rule in input");
    if (sorted.size() > static_cast<std::size_t>(k))
        sorted.erase(sorted.begin() + k, sorted.end());
    return RankedList{measure, std::move(sorted)};
}

ComparisonResult compare_lists(const RankedList& a, const RankedList& b) {
    struct Membership {
        ScoredRule rule;
        bool in_a = false;
        bool in_b = false;
    };
    std::map<Rule, Membership> by_rule;
    for (const ScoredRule& r : a.entries) {
        auto [it, inserted] = by_rule.try_emplace(r.rule, Membership{r, true, false});
        if (!inserted)
            throw UsageError("compare_lists: duplicate rule in list a");
    }
    for (const ScoredRule& r : b.entries) {
        auto [it, inserted] = by_rule.try_emplace(r.rule, Membership{r, false, true});
        if (!inserted) {
            if (it->second.in_b)
                throw UsageError("compare_lists: duplicate rule in list b");
            it->second.in_b = true;
            // Carry scores the other list has and this one lacks.
            it->second.rule.scores.insert(r.scores.begin(), r.scores.end());
        }
    }
    ComparisonResult result;
    result.rules.reserve(by_rule.size());
    for (auto& [rule, m] : by_rule) {
        const ListLabel label = m.in_a && m.in_b ? ListLabel::Both
                                : m.in_a         ? ListLabel::OnlyA
                                                 : ListLabel::OnlyB;
        if (label == ListLabel::Both)
            ++result.intersection_size;
        result.rules.push_back(LabeledRule{std::move(m.rule), label});
    }
    result.union_size = result.rules.size();
    return result;
}

std::pair<LabeledRule, LabeledRule>
sample_rule_pair(const std::vector<LabeledRule>& union_rules,
                 std::uint64_t seed) {
    std::vector<std::pair<std::size_t, std::size_t>> differing;
    for (std::size_t i = 0; i < union_rules.size(); ++i)
        for (std::size_t j = i + 1; j < union_rules.size(); ++j)
            if (union_rules[i].label != union_rules[j].label)
                differing.emplace_back(i, j);
    if (differing.empty())
        throw DataError("sample_rule_pair: need at least two distinct labels");
    std::mt19937_64 rng(seed);
    const auto [i, j] = differing[uniform_index(rng, differing.size())];
    return {union_rules[i], union_rules[j]};
}

} // namespace wccmine
