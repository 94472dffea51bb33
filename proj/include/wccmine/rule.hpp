#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "wccmine/item.hpp"

namespace wccmine {

// An association rule X => Y. Both sides are non-empty and disjoint.
class Rule {
public:
    Rule(ItemSet antecedent, ItemSet consequent);

    const ItemSet& antecedent() const { return antecedent_; }
    const ItemSet& consequent() const { return consequent_; }

    auto operator<=>(const Rule&) const = default;
    bool operator==(const Rule&) const = default;

private:
    ItemSet antecedent_;
    ItemSet consequent_;
};

// The observed counts a measure needs: cf(X), cf(Y), cf(X u Y) and the
// database size n. Complement counts follow by inclusion-exclusion.
class RuleFrequencies {
public:
    RuleFrequencies(int cf_x, int cf_y, int cf_xy, int n);

    int cf_x() const { return cf_x_; }
    int cf_y() const { return cf_y_; }
    int cf_xy() const { return cf_xy_; }
    int n() const { return n_; }

    int cf_not_x() const { return n_ - cf_x_; }
    int cf_not_x_not_y() const { return n_ - cf_x_ - cf_y_ + cf_xy_; }

    auto operator<=>(const RuleFrequencies&) const = default;
    bool operator==(const RuleFrequencies&) const = default;

private:
    int cf_x_;
    int cf_y_;
    int cf_xy_;
    int n_;
};

enum class Measure { Conf, ConfLower, CasualConf, Wcc };

std::string_view to_string(Measure m);
Measure measure_from_string(std::string_view s);

// Parameters shared by the interestingness measures: the credibility level
// alpha of the conservative bound and the antecedent weight w.
struct MeasureConfig {
    double alpha = 0.01;
    double w = 1.6;

    void validate() const;
};

// A rule together with its counts and the scores assigned to it.
struct ScoredRule {
    Rule rule;
    RuleFrequencies freq;
    std::map<Measure, double> scores;
};

} // namespace wccmine
