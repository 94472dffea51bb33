#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "wccmine/rule.hpp"

namespace wccmine {

struct RankedList {
    Measure measure;
    std::vector<ScoredRule> entries;
};

// The top k rules under the given measure. Ordering is total: score
// descending, then cf(X u Y) descending, then antecedent, then consequent,
// so equal inputs always rank identically. Returns fewer than k entries
// when fewer rules exist. Every input rule must carry a score for the
// requested measure and no rule may appear twice.
RankedList top_k(const std::vector<ScoredRule>& rules, Measure measure, int k);

enum class ListLabel { OnlyA, OnlyB, Both };

std::string_view to_string(ListLabel label);

struct LabeledRule {
    ScoredRule rule;
    ListLabel label;
};

struct ComparisonResult {
    // Union of both lists in canonical rule order, each rule labeled by
    // which list(s) contained it. Scores are merged across the lists.
    std::vector<LabeledRule> rules;
    std::size_t intersection_size = 0;
    std::size_t union_size = 0;
};

ComparisonResult compare_lists(const RankedList& a, const RankedList& b);

// Picks one pair of rules with different labels, uniformly at random over
// all such pairs, using the seed's deterministic stream. Errors when the
// union holds fewer than two distinct labels.
std::pair<LabeledRule, LabeledRule>
sample_rule_pair(const std::vector<LabeledRule>& union_rules,
                 std::uint64_t seed);

} // namespace wccmine
